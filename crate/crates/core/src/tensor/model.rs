//! Model wrapper over sparse tensors and the dense Curie-Weiss tensor.
//! The ordered-tuple Hamiltonian H(x) = Σ J_{i₁…i_p} x_{i₁}…x_{i_p} and the
//! local fields m_i(x) = Σ J_{i i₂…i_p} x_{i₂}…x_{i_p} satisfy the
//! tuple-counting identity Σ_i x_i m_i(x) = H(x) exactly.

use crate::error::{Error, Result};
use crate::tensor::sparse::{SparseTensor, SpinVector};

/// Dense Curie-Weiss tensor: J ≡ n^{1-p} on every index tuple, diagonals
/// included, so H(x) = n x̄^p and m_i(x) = x̄^{p-1} exactly.
#[derive(Debug, Clone, Copy)]
pub struct DenseCw {
    pub p: u32,
    pub n: usize,
}

impl DenseCw {
    pub fn new(p: u32, n: usize) -> Result<Self> {
        if p < 2 || n < 1 {
            return Err(Error::spec("DenseCw needs p >= 2 and n >= 1"));
        }
        Ok(DenseCw { p, n })
    }
}

fn factorial(k: u32) -> f64 {
    (1..=k as u64).map(|v| v as f64).product()
}

#[derive(Debug, Clone)]
pub enum Model {
    Sparse(SparseTensor),
    Cw(DenseCw),
}

impl Model {
    pub fn order(&self) -> u32 {
        match self {
            Model::Sparse(t) => t.order(),
            Model::Cw(c) => c.p,
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Model::Sparse(t) => t.size(),
            Model::Cw(c) => c.n,
        }
    }

    fn check_dims(&self, x: &SpinVector) -> Result<()> {
        if x.len() != self.size() {
            return Err(Error::DimensionMismatch {
                expected: self.size(),
                got: x.len(),
            });
        }
        Ok(())
    }

    /// Ordered-tuple Hamiltonian: p! Σ_e c_e Π_{j∈e} x_j for sparse
    /// tensors, n x̄^p for the dense Curie-Weiss tensor.
    pub fn hamiltonian(&self, x: &SpinVector) -> Result<f64> {
        self.check_dims(x)?;
        Ok(match self {
            Model::Sparse(t) => {
                let mult = factorial(t.order());
                let mut total = 0.0;
                for e in t.edges() {
                    let prod: i32 = e.verts.iter().map(|&v| x.get(v as usize) as i32).product();
                    total += e.coeff * prod as f64;
                }
                mult * total
            }
            Model::Cw(c) => c.n as f64 * x.mean().powi(c.p as i32),
        })
    }

    /// Local field m_i(x) = (p-1)! Σ_{e ∋ i} c_e Π_{j∈e\{i}} x_j; the
    /// zero-diagonal convention makes it independent of x_i. DenseCw keeps
    /// its diagonal tuples, giving exactly x̄^{p-1}.
    pub fn local_field(&self, x: &SpinVector, i: usize) -> Result<f64> {
        self.check_dims(x)?;
        if i >= self.size() {
            return Err(Error::IndexOutOfRange {
                index: i,
                size: self.size(),
            });
        }
        Ok(match self {
            Model::Sparse(t) => {
                let mult = factorial(t.order() - 1);
                let mut total = 0.0;
                for &e in t.incident_edges(i) {
                    let edge = &t.edges()[e as usize];
                    let prod: i32 = edge
                        .verts
                        .iter()
                        .filter(|&&v| v as usize != i)
                        .map(|&v| x.get(v as usize) as i32)
                        .product();
                    total += edge.coeff * prod as f64;
                }
                mult * total
            }
            Model::Cw(c) => x.mean().powi(c.p as i32 - 1),
        })
    }

    /// All local fields in one pass over the edges.
    pub fn local_fields(&self, x: &SpinVector) -> Result<Vec<f64>> {
        self.check_dims(x)?;
        Ok(match self {
            Model::Sparse(t) => {
                let mult = factorial(t.order() - 1);
                let mut fields = vec![0.0; t.size()];
                for e in t.edges() {
                    let prod: i32 = e.verts.iter().map(|&v| x.get(v as usize) as i32).product();
                    for &v in &e.verts {
                        // Π over e\{v} = (Π over e) * x_v for ±1 spins.
                        fields[v as usize] += e.coeff * (prod * x.get(v as usize) as i32) as f64;
                    }
                }
                fields.iter_mut().for_each(|f| *f *= mult);
                fields
            }
            Model::Cw(c) => vec![x.mean().powi(c.p as i32 - 1); c.n],
        })
    }
}
