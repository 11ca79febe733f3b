//! Random interaction tensors: the p-spin Sherrington-Kirkpatrick model,
//! Erdős–Rényi and stochastic-block hypergraphs, p-partite hypergraphs, and
//! the triangle indicator tensor of a pairwise graph. All generators draw
//! one decision per candidate tuple in lexicographic order, so edge sets
//! are a pure function of (spec, seed).

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::rng::rng_from_seed;
use crate::tensor::SparseTensor;

/// Iterate strictly increasing p-tuples over 0..n in lexicographic order.
struct Subsets {
    n: u32,
    tuple: Vec<u32>,
    done: bool,
}

impl Subsets {
    fn new(p: u32, n: usize) -> Self {
        let done = (p as usize) > n;
        Subsets {
            n: n as u32,
            tuple: (0..p).collect(),
            done,
        }
    }
}

impl Iterator for Subsets {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        if self.done {
            return None;
        }
        let current = self.tuple.clone();
        let p = self.tuple.len();
        let mut k = p;
        loop {
            if k == 0 {
                self.done = true;
                break;
            }
            k -= 1;
            if self.tuple[k] < self.n - (p - k) as u32 {
                self.tuple[k] += 1;
                for j in k + 1..p {
                    self.tuple[j] = self.tuple[j - 1] + 1;
                }
                break;
            }
        }
        Some(current)
    }
}

/// p-spin SK tensor: one coefficient N^{(1-p)/2} g_e per unordered p-subset
/// with i.i.d. standard normal g_e.
pub fn gen_sk(p: u32, n: usize, seed: u64) -> Result<SparseTensor> {
    if (p as usize) > n {
        return Err(Error::spec("gen_sk needs n >= p"));
    }
    let mut rng = rng_from_seed(seed);
    let scale = (n as f64).powf((1.0 - p as f64) / 2.0);
    let edges: Vec<(Vec<u32>, f64)> = Subsets::new(p, n)
        .map(|verts| {
            let g: f64 = StandardNormal.sample(&mut rng);
            (verts, scale * g)
        })
        .collect();
    SparseTensor::new(p, n, edges)
}

/// Hypergraph stochastic block model spec: community proportions λ and a
/// symmetric K-way probability tensor Θ (stored dense, row-major).
#[derive(Debug, Clone)]
pub struct HsbmSpec {
    p: u32,
    k: usize,
    lambda: Vec<f64>,
    theta: Vec<f64>,
}

impl HsbmSpec {
    pub fn new(p: u32, lambda: Vec<f64>, theta: Vec<f64>) -> Result<Self> {
        if p < 2 {
            return Err(Error::spec("p must be at least 2"));
        }
        let k = lambda.len();
        if k == 0 {
            return Err(Error::spec("need at least one community"));
        }
        if lambda.iter().any(|&l| !(l > 0.0)) {
            return Err(Error::spec("proportions must be positive"));
        }
        let total: f64 = lambda.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::spec(format!("proportions sum to {total}, not 1")));
        }
        let expect = k.pow(p);
        if theta.len() != expect {
            return Err(Error::spec(format!(
                "theta needs {expect} entries (K^p), got {}",
                theta.len()
            )));
        }
        if theta.iter().any(|&t| !(0.0..=1.0).contains(&t)) {
            return Err(Error::spec("theta entries must lie in [0, 1]"));
        }
        let theta = symmetrize(p, k, &theta);
        Ok(HsbmSpec { p, k, lambda, theta })
    }

    pub fn order(&self) -> u32 {
        self.p
    }

    pub fn communities(&self) -> usize {
        self.k
    }

    pub fn lambda(&self) -> &[f64] {
        &self.lambda
    }

    /// Θ at a block signature (indices in 0..K, any order).
    pub fn theta_at(&self, sig: &[usize]) -> f64 {
        debug_assert_eq!(sig.len(), self.p as usize);
        let mut idx = 0usize;
        for &j in sig {
            idx = idx * self.k + j;
        }
        self.theta[idx]
    }

    /// Erdős–Rényi special case: K = 1, uniform edge probability θ.
    pub fn erdos_renyi(p: u32, theta: f64) -> Result<Self> {
        HsbmSpec::new(p, vec![1.0], vec![theta])
    }

    /// Parse the plain-text spec: "p K", a line of K proportions, then
    /// K^p θ-entries in row-major order (whitespace separated, any line
    /// breaks); '#' lines are comments.
    pub fn parse(text: &str) -> Result<Self> {
        let mut tokens: Vec<(usize, &str)> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            for tok in line.split_whitespace() {
                tokens.push((lineno + 1, tok));
            }
        }
        let mut pos = 0usize;
        let mut next = |what: &str| -> Result<(usize, &str)> {
            let t = tokens
                .get(pos)
                .copied()
                .ok_or_else(|| Error::parse(tokens.last().map_or(0, |t| t.0), format!("missing {what}")))?;
            pos += 1;
            Ok(t)
        };
        let (l, tok) = next("p")?;
        let p: u32 = tok.parse().map_err(|_| Error::parse(l, format!("bad p: {tok}")))?;
        let (l, tok) = next("K")?;
        let k: usize = tok.parse().map_err(|_| Error::parse(l, format!("bad K: {tok}")))?;
        let mut lambda = Vec::with_capacity(k);
        for _ in 0..k {
            let (l, tok) = next("proportion")?;
            lambda.push(
                tok.parse::<f64>()
                    .map_err(|_| Error::parse(l, format!("bad proportion: {tok}")))?,
            );
        }
        let mut theta = Vec::with_capacity(k.pow(p));
        for _ in 0..k.pow(p) {
            let (l, tok) = next("theta entry")?;
            theta.push(
                tok.parse::<f64>()
                    .map_err(|_| Error::parse(l, format!("bad theta entry: {tok}")))?,
            );
        }
        if pos != tokens.len() {
            let (l, tok) = tokens[pos];
            return Err(Error::parse(l, format!("unexpected trailing token: {tok}")));
        }
        HsbmSpec::new(p, lambda, theta)
    }

    /// Contiguous block of a 0-based vertex: B_j covers (N Σ_{i<j} λ_i,
    /// N Σ_{i≤j} λ_i] in 1-based labels.
    pub fn block_of(&self, v: usize, n: usize) -> usize {
        let label = (v + 1) as f64;
        let mut cum = 0.0;
        for j in 0..self.k {
            cum += self.lambda[j] * n as f64;
            if label <= cum + 1e-9 {
                return j;
            }
        }
        self.k - 1
    }
}

fn symmetrize(p: u32, k: usize, theta: &[f64]) -> Vec<f64> {
    let size = k.pow(p);
    let mut out = vec![0.0; size];
    let mut sig = vec![0usize; p as usize];
    for (idx, slot) in out.iter_mut().enumerate() {
        let mut rest = idx;
        for pos in (0..p as usize).rev() {
            sig[pos] = rest % k;
            rest /= k;
        }
        let mut sorted = sig.clone();
        sorted.sort_unstable();
        // average over all distinct permutations of the sorted signature
        let mut sum = 0.0;
        let mut count = 0usize;
        permute_accumulate(&mut sorted.clone(), 0, k, theta, &mut sum, &mut count);
        let _ = sorted;
        *slot = sum / count as f64;
    }
    out
}

fn permute_accumulate(
    sig: &mut [usize],
    start: usize,
    k: usize,
    theta: &[f64],
    sum: &mut f64,
    count: &mut usize,
) {
    if start == sig.len() {
        let mut idx = 0usize;
        for &j in sig.iter() {
            idx = idx * k + j;
        }
        *sum += theta[idx];
        *count += 1;
        return;
    }
    let mut seen = Vec::new();
    for i in start..sig.len() {
        if seen.contains(&sig[i]) {
            continue;
        }
        seen.push(sig[i]);
        sig.swap(start, i);
        permute_accumulate(sig, start + 1, k, theta, sum, count);
        sig.swap(start, i);
    }
}

/// HSBM draw: each increasing tuple appears independently with the Θ value
/// of its block signature; coefficients are 1/n^{p-1}.
pub fn gen_hsbm(spec: &HsbmSpec, n: usize, seed: u64) -> Result<SparseTensor> {
    let p = spec.order();
    if (p as usize) > n {
        return Err(Error::spec("gen_hsbm needs n >= p"));
    }
    let mut rng = rng_from_seed(seed);
    let coeff = 1.0 / (n as f64).powi(p as i32 - 1);
    let blocks: Vec<usize> = (0..n).map(|v| spec.block_of(v, n)).collect();
    let mut sig = vec![0usize; p as usize];
    let mut edges = Vec::new();
    for verts in Subsets::new(p, n) {
        for (slot, &v) in sig.iter_mut().zip(&verts) {
            *slot = blocks[v as usize];
        }
        let theta = spec.theta_at(&sig);
        let u: f64 = rng.random();
        if u < theta {
            edges.push((verts, coeff));
        }
    }
    SparseTensor::new(p, n, edges)
}

/// Random p-partite p-uniform hypergraph: parts are contiguous index
/// ranges of the given sizes; only transversal tuples (one vertex per
/// part) are eligible, each present with probability θ. Coefficients are
/// 1/n^{p-1} as in the block-model convention.
pub fn gen_partite(p: u32, sizes: &[usize], theta: f64, seed: u64) -> Result<SparseTensor> {
    if sizes.len() != p as usize {
        return Err(Error::spec("need exactly p part sizes"));
    }
    if sizes.iter().any(|&s| s == 0) {
        return Err(Error::spec("part sizes must be positive"));
    }
    if !(0.0..=1.0).contains(&theta) {
        return Err(Error::spec("theta must lie in [0, 1]"));
    }
    let n: usize = sizes.iter().sum();
    let mut starts = Vec::with_capacity(p as usize);
    let mut acc = 0usize;
    for &s in sizes {
        starts.push(acc);
        acc += s;
    }
    let coeff = 1.0 / (n as f64).powi(p as i32 - 1);
    let mut rng = rng_from_seed(seed);
    let mut edges = Vec::new();
    let mut counters = vec![0usize; p as usize];
    'outer: loop {
        let verts: Vec<u32> = counters
            .iter()
            .zip(&starts)
            .map(|(&c, &s)| (s + c) as u32)
            .collect();
        let u: f64 = rng.random();
        if u < theta {
            edges.push((verts, coeff));
        }
        let mut pos = p as usize;
        loop {
            if pos == 0 {
                break 'outer;
            }
            pos -= 1;
            counters[pos] += 1;
            if counters[pos] < sizes[pos] {
                break;
            }
            counters[pos] = 0;
        }
    }
    SparseTensor::new(p, n, edges)
}

/// Triangle indicator 3-tensor of a pairwise graph: each triangle of the
/// graph becomes a hyperedge with the supplied coefficient.
pub fn triangle_tensor(graph: &SparseTensor, scale: f64) -> Result<SparseTensor> {
    if graph.order() != 2 {
        return Err(Error::spec("triangle_tensor needs a pairwise graph"));
    }
    let n = graph.size();
    let mut adj = vec![Vec::new(); n];
    for e in graph.edges() {
        if e.coeff != 0.0 {
            let (a, b) = (e.verts[0] as usize, e.verts[1] as usize);
            adj[a].push(b as u32);
            adj[b].push(a as u32);
        }
    }
    for list in adj.iter_mut() {
        list.sort_unstable();
    }
    let mut edges = Vec::new();
    for a in 0..n {
        for (ai, &b) in adj[a].iter().enumerate() {
            if (b as usize) <= a {
                continue;
            }
            for &c in &adj[a][ai + 1..] {
                if adj[b as usize].binary_search(&c).is_ok() {
                    edges.push((vec![a as u32, b, c], scale));
                }
            }
        }
    }
    SparseTensor::new(3, n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: usize, p: usize) -> usize {
        let mut c = 1usize;
        for i in 0..p {
            c = c * (n - i) / (i + 1);
        }
        c
    }

    #[test]
    fn sk_edge_count_and_mean() {
        let t = gen_sk(3, 12, 7).unwrap();
        assert_eq!(t.edge_count(), binom(12, 3));
        let scale = 12.0f64.powf(-1.0);
        let mean: f64 =
            t.edges().iter().map(|e| e.coeff / scale).sum::<f64>() / t.edge_count() as f64;
        assert!(mean.abs() < 3.0 / (t.edge_count() as f64).sqrt());
    }

    #[test]
    fn sk_deterministic_per_seed() {
        let a = gen_sk(2, 20, 99).unwrap();
        let b = gen_sk(2, 20, 99).unwrap();
        assert_eq!(a.to_text(), b.to_text());
        let c = gen_sk(2, 20, 100).unwrap();
        assert_ne!(a.to_text(), c.to_text());
    }

    #[test]
    fn complete_hypergraph_from_unit_theta() {
        let spec = HsbmSpec::erdos_renyi(3, 1.0).unwrap();
        let t = gen_hsbm(&spec, 9, 1).unwrap();
        assert_eq!(t.edge_count(), binom(9, 3));
    }

    #[test]
    fn er_edge_count_concentrates() {
        let spec = HsbmSpec::erdos_renyi(2, 0.3).unwrap();
        let t = gen_hsbm(&spec, 400, 5).unwrap();
        let total = binom(400, 2) as f64;
        let expect = 0.3 * total;
        let sd = (total * 0.3 * 0.7).sqrt();
        assert!((t.edge_count() as f64 - expect).abs() < 4.0 * sd);
    }

    #[test]
    fn block_structure_cross_fraction() {
        let spec = HsbmSpec::new(
            2,
            vec![0.5, 0.5],
            vec![0.5, 0.05, 0.05, 0.5], // diagonal-heavy
        )
        .unwrap();
        let n = 400;
        let t = gen_hsbm(&spec, n, 11).unwrap();
        let mut cross = 0usize;
        for e in t.edges() {
            let ba = spec.block_of(e.verts[0] as usize, n);
            let bb = spec.block_of(e.verts[1] as usize, n);
            if ba != bb {
                cross += 1;
            }
        }
        // 200·200 cross pairs at rate 0.05
        let expect = 200.0 * 200.0 * 0.05;
        let sd = (200.0f64 * 200.0 * 0.05 * 0.95).sqrt();
        assert!((cross as f64 - expect).abs() < 4.0 * sd, "cross = {cross}");
    }

    #[test]
    fn hsbm_spec_parse_and_symmetrize() {
        let text = "2 2\n0.5 0.5\n0.8 0.2\n0.4 0.6\n";
        let spec = HsbmSpec::parse(text).unwrap();
        // (0,1) and (1,0) average to 0.3 after symmetrization
        assert!((spec.theta_at(&[0, 1]) - 0.3).abs() < 1e-15);
        assert!((spec.theta_at(&[1, 0]) - 0.3).abs() < 1e-15);
        assert_eq!(spec.theta_at(&[0, 0]), 0.8);
    }

    #[test]
    fn partite_complete_and_counts() {
        let t = gen_partite(3, &[2, 2, 2], 1.0, 3).unwrap();
        assert_eq!(t.edge_count(), 8);
        let t = gen_partite(2, &[10, 10], 0.5, 3).unwrap();
        let sd = (100.0f64 * 0.25).sqrt();
        assert!((t.edge_count() as f64 - 50.0).abs() < 4.0 * sd);
    }

    #[test]
    fn partite_edges_are_transversal() {
        let sizes = [3usize, 4, 5];
        let t = gen_partite(3, &sizes, 1.0, 9).unwrap();
        for e in t.edges() {
            assert!(e.verts[0] < 3);
            assert!((3..7).contains(&e.verts[1]));
            assert!((7..12).contains(&e.verts[2]));
        }
    }

    #[test]
    fn triangles_of_a_cycle_with_chords() {
        // circulant graph i ~ i±1, i ~ i±2 has triangles (i, i+1, i+2)
        let n = 8u32;
        let mut edges = Vec::new();
        for i in 0..n {
            for d in [1u32, 2] {
                let j = (i + d) % n;
                let (a, b) = (i.min(j), i.max(j));
                edges.push((vec![a, b], 1.0));
            }
        }
        edges.sort_by(|a, b| a.0.cmp(&b.0));
        edges.dedup_by(|a, b| a.0 == b.0);
        let g = SparseTensor::new(2, n as usize, edges).unwrap();
        let t = triangle_tensor(&g, 0.5).unwrap();
        assert_eq!(t.edge_count(), n as usize);
        assert!(t.edges().iter().all(|e| e.coeff == 0.5));
    }
}
