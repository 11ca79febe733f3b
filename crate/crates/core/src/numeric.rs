//! Shared numeric kernels: compensated sums, log-domain helpers, 1-D
//! optimization and root finding, quadrature, and sample statistics.

use statrs::distribution::ContinuousCDF;
use statrs::function::gamma::ln_gamma;

/// Neumaier-compensated sum; keeps log-sum-exp errors near machine epsilon
/// even for long term lists.
pub fn compensated_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Max-shifted log(Σ exp(x_i)). Returns -inf on an empty slice.
pub fn log_sum_exp(terms: &[f64]) -> f64 {
    let m = terms.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if !m.is_finite() {
        return m;
    }
    let s = compensated_sum(terms.iter().map(|&x| (x - m).exp()));
    m + s.ln()
}

/// log C(n, k). Exact (via f64 integer arithmetic) for n ≤ 52, log-gamma
/// otherwise; both paths carry relative error well below 1e-13.
pub fn ln_binomial(n: u64, k: u64) -> f64 {
    assert!(k <= n, "ln_binomial: k > n");
    if n <= 52 {
        // Multiplicative Pascal recurrence stays exact below 2^53.
        let k = k.min(n - k);
        let mut c = 1.0f64;
        for i in 0..k {
            c = c * (n - i) as f64 / (i + 1) as f64;
        }
        c.round().ln()
    } else {
        ln_gamma(n as f64 + 1.0) - ln_gamma(k as f64 + 1.0) - ln_gamma((n - k) as f64 + 1.0)
    }
}

/// Numerically stable logistic function.
pub fn sigmoid(x: f64) -> f64 {
    if x >= 0.0 {
        1.0 / (1.0 + (-x).exp())
    } else {
        let e = x.exp();
        e / (1.0 + e)
    }
}

/// Standard normal quantile z_q.
pub fn normal_quantile(q: f64) -> f64 {
    let n = statrs::distribution::Normal::new(0.0, 1.0).unwrap();
    n.inverse_cdf(q)
}

/// Standard normal CDF.
pub fn normal_cdf(x: f64) -> f64 {
    let n = statrs::distribution::Normal::new(0.0, 1.0).unwrap();
    n.cdf(x)
}

/// Golden-section maximization of a unimodal-enough `f` on [a, b].
/// Returns (argmax, max). Tolerance is on the x-interval.
pub fn golden_section_max(f: impl Fn(f64) -> f64, a: f64, b: f64, tol_x: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let (mut a, mut b) = (a, b);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a).abs() > tol_x {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

/// Bisection for a root of `f` on a bracket with f(lo) and f(hi) of opposite
/// sign. Panics if the bracket does not actually change sign.
pub fn bisect_root(f: impl Fn(f64) -> f64, lo: f64, hi: f64, tol_x: f64) -> f64 {
    let (mut lo, mut hi) = (lo, hi);
    let mut flo = f(lo);
    let fhi = f(hi);
    assert!(
        flo == 0.0 || fhi == 0.0 || (flo < 0.0) != (fhi < 0.0),
        "bisect_root: bracket does not change sign"
    );
    if flo == 0.0 {
        return lo;
    }
    if fhi == 0.0 {
        return hi;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
        if (hi - lo).abs() <= tol_x {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// Adaptive Simpson quadrature of `f` over [a, b] to absolute tolerance.
pub fn adaptive_simpson(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson(fa: f64, fm: f64, fb: f64, a: f64, b: f64) -> f64 {
        (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse(
        f: &impl Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = simpson(fa, flm, fm, a, m);
        let right = simpson(fm, frm, fb, m, b);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
                + recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
        }
    }
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = simpson(fa, fm, fb, a, b);
    recurse(f, a, b, fa, fm, fb, whole, tol, 48)
}

/// Mean, variance (unbiased), skewness and excess kurtosis of a sample.
#[derive(Debug, Clone, Copy)]
pub struct SampleMoments {
    pub n: usize,
    pub mean: f64,
    pub variance: f64,
    pub skewness: f64,
    pub excess_kurtosis: f64,
}

pub fn sample_moments(xs: &[f64]) -> SampleMoments {
    let n = xs.len();
    assert!(n >= 2, "sample_moments: need at least two points");
    let nf = n as f64;
    let mean = compensated_sum(xs.iter().cloned()) / nf;
    let m2 = compensated_sum(xs.iter().map(|x| (x - mean).powi(2))) / nf;
    let m3 = compensated_sum(xs.iter().map(|x| (x - mean).powi(3))) / nf;
    let m4 = compensated_sum(xs.iter().map(|x| (x - mean).powi(4))) / nf;
    SampleMoments {
        n,
        mean,
        variance: m2 * nf / (nf - 1.0),
        skewness: m3 / m2.powf(1.5),
        excess_kurtosis: m4 / (m2 * m2) - 3.0,
    }
}

/// One-sample Kolmogorov-Smirnov distance between `xs` and the CDF `cdf`.
pub fn ks_distance(xs: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let mut sorted: Vec<f64> = xs.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = sorted.len() as f64;
    let mut d = 0.0f64;
    for (i, &x) in sorted.iter().enumerate() {
        let fx = cdf(x);
        let above = ((i + 1) as f64 / n - fx).abs();
        let below = (fx - i as f64 / n).abs();
        d = d.max(above).max(below);
    }
    d
}
