//! Histogram records for replication experiments. Counts always conserve
//! the number of replications: non-finite estimates land in a dedicated
//! bucket instead of being dropped.

use serde::Serialize;

use crate::numeric::{compensated_sum, sample_moments};

#[derive(Debug, Clone, Serialize)]
pub struct HistogramReport {
    /// bins + 1 edges, increasing.
    pub edges: Vec<f64>,
    pub counts: Vec<u64>,
    /// Replications whose statistic was ±inf or NaN.
    pub non_finite: u64,
    pub replications: u64,
    pub mean: f64,
    pub sd: f64,
    pub skewness: f64,
    pub excess_kurtosis: f64,
    /// Optional reference density evaluated at bin centers.
    pub ref_density: Option<Vec<f64>>,
}

impl HistogramReport {
    pub fn from_samples(values: &[f64], bins: usize) -> Self {
        assert!(bins >= 1);
        let finite: Vec<f64> = values.iter().cloned().filter(|v| v.is_finite()).collect();
        let non_finite = (values.len() - finite.len()) as u64;
        let (lo, hi) = finite
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| {
                (a.min(v), b.max(v))
            });
        let (lo, hi) = if finite.is_empty() {
            (0.0, 1.0)
        } else if lo == hi {
            (lo - 0.5, hi + 0.5)
        } else {
            (lo, hi)
        };
        Self::with_range(values, bins, lo, hi, non_finite)
    }

    fn with_range(values: &[f64], bins: usize, lo: f64, hi: f64, non_finite: u64) -> Self {
        let width = (hi - lo) / bins as f64;
        let edges: Vec<f64> = (0..=bins).map(|i| lo + i as f64 * width).collect();
        let mut counts = vec![0u64; bins];
        let finite: Vec<f64> = values.iter().cloned().filter(|v| v.is_finite()).collect();
        for &v in &finite {
            let idx = ((v - lo) / width).floor() as isize;
            let idx = idx.clamp(0, bins as isize - 1) as usize;
            counts[idx] += 1;
        }
        let (mean, sd, skewness, excess_kurtosis) = if finite.len() >= 2 {
            let m = sample_moments(&finite);
            (m.mean, m.variance.sqrt(), m.skewness, m.excess_kurtosis)
        } else {
            let m = finite.first().copied().unwrap_or(f64::NAN);
            (m, f64::NAN, f64::NAN, f64::NAN)
        };
        HistogramReport {
            edges,
            counts,
            non_finite,
            replications: values.len() as u64,
            mean,
            sd,
            skewness,
            excess_kurtosis,
            ref_density: None,
        }
    }

    pub fn bin_centers(&self) -> Vec<f64> {
        self.edges
            .windows(2)
            .map(|w| 0.5 * (w[0] + w[1]))
            .collect()
    }

    pub fn attach_ref_density(&mut self, density: impl Fn(f64) -> f64) {
        self.ref_density = Some(self.bin_centers().iter().map(|&c| density(c)).collect());
    }

    /// Empirical density of a bin (count / (n · width)).
    pub fn empirical_density(&self, bin: usize) -> f64 {
        let width = self.edges[bin + 1] - self.edges[bin];
        let total = compensated_sum(self.counts.iter().map(|&c| c as f64));
        self.counts[bin] as f64 / (total * width)
    }

    /// TSV rows: bin_left, bin_right, count, ref_density ("nan" when absent).
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("# bin_left\tbin_right\tcount\tref_density\n");
        for i in 0..self.counts.len() {
            let rd = self
                .ref_density
                .as_ref()
                .map_or(f64::NAN, |r| r[i]);
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\n",
                self.edges[i],
                self.edges[i + 1],
                self.counts[i],
                rd
            ));
        }
        out
    }
}
