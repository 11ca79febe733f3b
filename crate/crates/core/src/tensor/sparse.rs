//! Symmetric p-tensors stored as unordered hyperedges. Each canonical edge
//! (strictly increasing vertex tuple) carries the common coefficient of all
//! its index permutations; ordered-sum quantities pick up the multiplicities
//! p! (Hamiltonian) and (p-1)! (local fields) explicitly.

use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct Hyperedge {
    pub verts: Vec<u32>,
    pub coeff: f64,
}

/// Sparse symmetric p-tensor with zero diagonals.
#[derive(Debug, Clone)]
pub struct SparseTensor {
    p: u32,
    n: usize,
    edges: Vec<Hyperedge>,
    /// Edge indices incident to each vertex.
    incidence: Vec<Vec<u32>>,
}

impl SparseTensor {
    pub fn new(p: u32, n: usize, edges: Vec<(Vec<u32>, f64)>) -> Result<Self> {
        if p < 2 {
            return Err(Error::spec("tensor order p must be at least 2"));
        }
        let mut incidence = vec![Vec::new(); n];
        let mut out = Vec::with_capacity(edges.len());
        for (idx, (verts, coeff)) in edges.into_iter().enumerate() {
            if verts.len() != p as usize {
                return Err(Error::spec(format!(
                    "edge {idx} has {} vertices, expected {p}",
                    verts.len()
                )));
            }
            if !verts.windows(2).all(|w| w[0] < w[1]) {
                return Err(Error::spec(format!(
                    "edge {idx} is not strictly increasing: {verts:?}"
                )));
            }
            if let Some(&v) = verts.last() {
                if v as usize >= n {
                    return Err(Error::IndexOutOfRange {
                        index: v as usize,
                        size: n,
                    });
                }
            }
            if !coeff.is_finite() {
                return Err(Error::spec(format!("edge {idx} has non-finite coefficient")));
            }
            for &v in &verts {
                incidence[v as usize].push(idx as u32);
            }
            out.push(Hyperedge { verts, coeff });
        }
        Ok(SparseTensor {
            p,
            n,
            edges: out,
            incidence,
        })
    }

    pub fn empty(p: u32, n: usize) -> Self {
        SparseTensor::new(p, n, Vec::new()).expect("empty tensor is valid")
    }

    pub fn order(&self) -> u32 {
        self.p
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Hyperedge] {
        &self.edges
    }

    pub fn incident_edges(&self, v: usize) -> &[u32] {
        &self.incidence[v]
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Weighted degree Σ_{e ∋ i} |c_e|.
    pub fn degree(&self, v: usize) -> f64 {
        self.incidence[v]
            .iter()
            .map(|&e| self.edges[e as usize].coeff.abs())
            .sum()
    }

    /// Parse the hyperedge text format: first line "p n", then one edge per
    /// line as p strictly increasing 0-based indices followed by the
    /// coefficient; '#' lines are comments.
    pub fn parse(text: &str) -> Result<Self> {
        let mut header: Option<(u32, usize)> = None;
        let mut edges: Vec<(Vec<u32>, f64)> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let lineno = lineno + 1;
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            match header {
                None => {
                    if fields.len() != 2 {
                        return Err(Error::parse(lineno, "expected header \"p n\""));
                    }
                    let p: u32 = fields[0]
                        .parse()
                        .map_err(|_| Error::parse(lineno, format!("bad p: {}", fields[0])))?;
                    let n: usize = fields[1]
                        .parse()
                        .map_err(|_| Error::parse(lineno, format!("bad n: {}", fields[1])))?;
                    header = Some((p, n));
                }
                Some((p, _)) => {
                    if fields.len() != p as usize + 1 {
                        return Err(Error::parse(
                            lineno,
                            format!("expected {} indices and a coefficient", p),
                        ));
                    }
                    let mut verts = Vec::with_capacity(p as usize);
                    for f in &fields[..p as usize] {
                        let v: u32 = f
                            .parse()
                            .map_err(|_| Error::parse(lineno, format!("bad index: {f}")))?;
                        verts.push(v);
                    }
                    if !verts.windows(2).all(|w| w[0] < w[1]) {
                        return Err(Error::parse(lineno, "indices must be strictly increasing"));
                    }
                    let coeff: f64 = fields[p as usize]
                        .parse()
                        .map_err(|_| Error::parse(lineno, format!("bad coefficient: {}", fields[p as usize])))?;
                    edges.push((verts, coeff));
                }
            }
        }
        let (p, n) = header.ok_or_else(|| Error::parse(0, "empty model file"))?;
        SparseTensor::new(p, n, edges)
    }

    /// Serialize back to the hyperedge text format.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.p, self.n);
        for e in &self.edges {
            for v in &e.verts {
                s.push_str(&v.to_string());
                s.push(' ');
            }
            s.push_str(&format!("{}\n", e.coeff));
        }
        s
    }
}

/// Spin configuration in {-1, +1}^n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpinVector {
    spins: Vec<i8>,
}

impl SpinVector {
    pub fn new(spins: Vec<i8>) -> Result<Self> {
        if !spins.iter().all(|&s| s == 1 || s == -1) {
            return Err(Error::spec("spins must be ±1"));
        }
        Ok(SpinVector { spins })
    }

    pub fn all_up(n: usize) -> Self {
        SpinVector { spins: vec![1; n] }
    }

    pub fn random(n: usize, rng: &mut impl rand::Rng) -> Self {
        SpinVector {
            spins: (0..n).map(|_| if rng.random::<bool>() { 1 } else { -1 }).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.spins.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spins.is_empty()
    }

    pub fn get(&self, i: usize) -> i8 {
        self.spins[i]
    }

    pub fn flip(&mut self, i: usize) {
        self.spins[i] = -self.spins[i];
    }

    pub fn set(&mut self, i: usize, s: i8) {
        debug_assert!(s == 1 || s == -1);
        self.spins[i] = s;
    }

    pub fn spins(&self) -> &[i8] {
        &self.spins
    }

    pub fn mean(&self) -> f64 {
        let total: i64 = self.spins.iter().map(|&s| s as i64).sum();
        total as f64 / self.spins.len() as f64
    }

    /// Parse a whitespace-separated ±1 line.
    pub fn parse_line(line: &str, lineno: usize) -> Result<Self> {
        let mut spins = Vec::new();
        for f in line.split_whitespace() {
            match f {
                "1" | "+1" => spins.push(1i8),
                "-1" => spins.push(-1i8),
                other => {
                    return Err(Error::parse(lineno, format!("bad spin value: {other}")));
                }
            }
        }
        if spins.is_empty() {
            return Err(Error::parse(lineno, "empty spin row"));
        }
        Ok(SpinVector { spins })
    }

    pub fn to_line(&self) -> String {
        self.spins
            .iter()
            .map(|s| s.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_unsorted_edges() {
        assert!(SparseTensor::new(3, 5, vec![(vec![2, 1, 3], 1.0)]).is_err());
        assert!(SparseTensor::new(3, 5, vec![(vec![1, 1, 3], 1.0)]).is_err());
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(SparseTensor::new(2, 3, vec![(vec![1, 3], 1.0)]).is_err());
    }

    #[test]
    fn parse_round_trip() {
        let text = "# triangle plus pendant edge\n3 4\n0 1 2 1.5\n1 2 3 -0.25\n";
        let t = SparseTensor::parse(text).unwrap();
        assert_eq!(t.order(), 3);
        assert_eq!(t.size(), 4);
        assert_eq!(t.edge_count(), 2);
        let again = SparseTensor::parse(&t.to_text()).unwrap();
        assert_eq!(again.edge_count(), 2);
        assert_eq!(again.edges()[1].coeff, -0.25);
    }

    #[test]
    fn parse_reports_line_numbers() {
        let text = "3 4\n0 1 2 1.5\n0 2 oops 1.0\n";
        match SparseTensor::parse(text) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn spin_vector_mean() {
        let x = SpinVector::new(vec![1, 1, -1, 1]).unwrap();
        assert_eq!(x.mean(), 0.5);
        assert!(SpinVector::new(vec![1, 0]).is_err());
    }

    #[test]
    fn spin_line_round_trip() {
        let x = SpinVector::parse_line("1 -1 +1 -1", 1).unwrap();
        assert_eq!(x.spins(), &[1, -1, 1, -1]);
        assert_eq!(x.to_line(), "1 -1 1 -1");
    }
}
