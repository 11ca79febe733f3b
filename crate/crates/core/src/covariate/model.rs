//! Ising model with node covariates: binary outcomes coupled through a
//! symmetric zero-diagonal network A and biased by linear projections of
//! per-node covariates, P(x) ∝ exp(θᵀ Σ x_i Z_i + (β/2) xᵀA x).

use crate::error::{Error, Result};
use crate::tensor::SpinVector;

#[derive(Debug, Clone)]
pub struct CovariateModel {
    n: usize,
    d: usize,
    /// Adjacency lists (both directions), zero diagonal.
    rows: Vec<Vec<(u32, f64)>>,
    /// Covariates, n×d row-major.
    z: Vec<f64>,
    /// Data-generating parameters used by the sampler.
    pub beta: f64,
    pub theta: Vec<f64>,
}

impl CovariateModel {
    pub fn new(
        n: usize,
        edges: &[(usize, usize, f64)],
        z: Vec<f64>,
        beta: f64,
        theta: Vec<f64>,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::spec("need at least one node"));
        }
        if z.len() % n != 0 || z.is_empty() {
            return Err(Error::spec("covariate matrix length must be n*d"));
        }
        let d = z.len() / n;
        if theta.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: theta.len(),
            });
        }
        let mut rows = vec![Vec::new(); n];
        for &(i, j, w) in edges {
            if i == j {
                return Err(Error::spec(format!("self-loop at node {i} (zero diagonal)")));
            }
            if i >= n || j >= n {
                return Err(Error::IndexOutOfRange {
                    index: i.max(j),
                    size: n,
                });
            }
            rows[i].push((j as u32, w));
            rows[j].push((i as u32, w));
        }
        Ok(CovariateModel {
            n,
            d,
            rows,
            z,
            beta,
            theta,
        })
    }

    pub fn nodes(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn covariate(&self, i: usize, j: usize) -> f64 {
        self.z[i * self.d + j]
    }

    pub fn covariate_row(&self, i: usize) -> &[f64] {
        &self.z[i * self.d..(i + 1) * self.d]
    }

    pub fn neighbors(&self, i: usize) -> &[(u32, f64)] {
        &self.rows[i]
    }

    /// Network effect m_i(x) = Σ_j A_ij x_j.
    pub fn network_field(&self, x: &SpinVector, i: usize) -> f64 {
        self.rows[i]
            .iter()
            .map(|&(j, w)| w * x.get(j as usize) as f64)
            .sum()
    }

    pub fn network_fields(&self, x: &SpinVector) -> Result<Vec<f64>> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: x.len(),
            });
        }
        Ok((0..self.n).map(|i| self.network_field(x, i)).collect())
    }

    /// Max absolute row sum ‖A‖_∞.
    pub fn a_inf_norm(&self) -> f64 {
        self.rows
            .iter()
            .map(|r| r.iter().map(|&(_, w)| w.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Squared Frobenius norm of A.
    pub fn a_frobenius_sq(&self) -> f64 {
        // rows store each undirected edge twice
        self.rows
            .iter()
            .flat_map(|r| r.iter().map(|&(_, w)| w * w))
            .sum()
    }

    /// ‖A‖₂ by power iteration on the adjacency lists.
    pub fn a_spectral_norm(&self) -> f64 {
        crate::tensor::power_iteration_norm(
            self.n,
            |v| {
                (0..self.n)
                    .map(|i| {
                        self.rows[i]
                            .iter()
                            .map(|&(j, w)| w * v[j as usize])
                            .sum::<f64>()
                    })
                    .collect()
            },
            1000,
        )
    }
}

/// Parse a symmetric edge list "i j w" (one edge per line, '#' comments).
/// Returns the edges and the implied minimum node count.
pub fn parse_edge_list(text: &str) -> Result<(usize, Vec<(usize, usize, f64)>)> {
    let mut edges = Vec::new();
    let mut max_idx = 0usize;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let lineno = lineno + 1;
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(Error::parse(lineno, "expected \"i j w\""));
        }
        let i: usize = fields[0]
            .parse()
            .map_err(|_| Error::parse(lineno, format!("bad index: {}", fields[0])))?;
        let j: usize = fields[1]
            .parse()
            .map_err(|_| Error::parse(lineno, format!("bad index: {}", fields[1])))?;
        let w: f64 = fields[2]
            .parse()
            .map_err(|_| Error::parse(lineno, format!("bad weight: {}", fields[2])))?;
        if i == j {
            return Err(Error::parse(lineno, "self-loops are not allowed"));
        }
        max_idx = max_idx.max(i).max(j);
        edges.push((i, j, w));
    }
    Ok((max_idx + 1, edges))
}

/// Parse a headerless CSV of n rows × d columns.
pub fn parse_covariates_csv(text: &str) -> Result<(usize, usize, Vec<f64>)> {
    let mut data = Vec::new();
    let mut d = None;
    let mut n = 0usize;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let lineno = lineno + 1;
        if line.is_empty() {
            continue;
        }
        let row: Vec<f64> = line
            .split(',')
            .map(|f| {
                f.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::parse(lineno, format!("bad value: {f}")))
            })
            .collect::<Result<_>>()?;
        match d {
            None => d = Some(row.len()),
            Some(width) if width != row.len() => {
                return Err(Error::parse(
                    lineno,
                    format!("row has {} columns, expected {width}", row.len()),
                ));
            }
            _ => {}
        }
        data.extend(row);
        n += 1;
    }
    let d = d.ok_or_else(|| Error::parse(0, "empty covariate file"))?;
    Ok((n, d, data))
}

/// Parse a single column of ±1 responses.
pub fn parse_responses(text: &str) -> Result<SpinVector> {
    let mut spins = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        match line {
            "1" | "+1" => spins.push(1i8),
            "-1" => spins.push(-1i8),
            other => {
                return Err(Error::parse(
                    lineno + 1,
                    format!("responses must be ±1, got: {other}"),
                ));
            }
        }
    }
    SpinVector::new(spins)
}
