//! Classification of parameter points by the global maximizers of H:
//! regular (one maximizer, negative curvature), special (one maximizer,
//! vanishing curvature), weakly critical (two maximizers) and strongly
//! critical (three maximizers, even p, symmetric). Also the thermodynamic
//! threshold β̃_p and the closed-form special point (β̌_p, ȟ_p).

use crate::cw::hfun::HFunction;
use crate::error::{Error, Result};
use crate::numeric::golden_section_max;

pub const DEFAULT_GRID: usize = 100_000;
pub const DEFAULT_TOL_X: f64 = 1e-6;
pub const DEFAULT_TOL_F: f64 = 1e-9;
/// |H''(m*)| below this counts as a vanishing second derivative.
pub const SPECIAL_CURVATURE_TOL: f64 = 1e-7;
const EDGE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointKind {
    Regular,
    Special,
    WeaklyCritical,
    StronglyCritical,
}

/// A polished global maximizer with its curvature.
#[derive(Debug, Clone, Copy)]
pub struct Maximizer {
    pub location: f64,
    pub h2: f64,
}

#[derive(Debug, Clone)]
pub struct PointClass {
    pub kind: PointKind,
    /// Global maximizers, strictly increasing, all interior.
    pub maximizers: Vec<Maximizer>,
    /// Mixture weights of the limiting law of X̄; sums to one.
    pub weights: Vec<f64>,
}

impl PointClass {
    pub fn locations(&self) -> Vec<f64> {
        self.maximizers.iter().map(|m| m.location).collect()
    }
}

/// Newton polish of a stationary point of H' starting from a grid-local
/// maximum. Degenerate curvature (special points) starves Newton, so the
/// fallback bisects H' on the surrounding cells: its sign still localizes
/// the root where H itself is flat to machine precision.
fn polish(f: &HFunction, x0: f64, cell: f64) -> f64 {
    let lo = (x0 - 2.0 * cell).max(-1.0 + EDGE);
    let hi = (x0 + 2.0 * cell).min(1.0 - EDGE);
    let mut x = x0;
    for _ in 0..50 {
        let g = f.d1(x);
        let h2 = f.d2(x);
        if h2 == 0.0 {
            break;
        }
        let step = g / h2;
        let nx = (x - step).clamp(lo, hi);
        if (nx - x).abs() < 1e-13 {
            return nx;
        }
        x = nx;
    }
    if f.d1(lo) > 0.0 && f.d1(hi) < 0.0 {
        return crate::numeric::bisect_root(|t| f.d1(t), lo, hi, 1e-16);
    }
    // Boundary-hugging seed without a bracketed crossing: take the best
    // value on the cell directly.
    let (gx, _) = golden_section_max(|t| f.value(t), lo, hi, 1e-14);
    if f.value(gx) > f.value(x) {
        gx
    } else {
        x
    }
}

/// Locate all global maximizers of H on [-1, 1] by dense grid scan plus
/// Newton polish, then classify the point. Two maxima are distinct when
/// separated by more than `tol_x`; they tie for the supremum when their
/// H-values are within `tol_f * max(1, |sup H|)`.
pub fn classify_point(beta: f64, h: f64, p: u32, tol_x: f64, tol_f: f64) -> Result<PointClass> {
    if !(tol_x > 0.0) || !(tol_f > 0.0) {
        return Err(Error::domain("tolerances must be positive"));
    }
    let f = HFunction::new(beta, h, p)?;
    let grid = DEFAULT_GRID;
    let step = (2.0 - 2.0 * EDGE) / (grid - 1) as f64;
    let xs: Vec<f64> = (0..grid).map(|i| -1.0 + EDGE + i as f64 * step).collect();
    let hs: Vec<f64> = xs.iter().map(|&x| f.value(x)).collect();

    // Grid-local maxima (endpoints of the grid included: H' blows up toward
    // ±1 so true maximizers are interior, but the first/last grid point can
    // still be the best seed for a maximizer close to the edge).
    let mut seeds = Vec::new();
    for i in 0..grid {
        let left_ok = i == 0 || hs[i] >= hs[i - 1];
        let right_ok = i + 1 == grid || hs[i] >= hs[i + 1];
        if left_ok && right_ok {
            seeds.push(xs[i]);
        }
    }

    let mut candidates: Vec<(f64, f64)> = seeds
        .into_iter()
        .map(|x0| {
            let x = polish(&f, x0, step);
            (x, f.value(x))
        })
        .collect();
    candidates.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());

    // Merge near-duplicates, keeping the better H value.
    let mut merged: Vec<(f64, f64)> = Vec::new();
    for (x, v) in candidates {
        match merged.last_mut() {
            Some(last) if (x - last.0).abs() <= tol_x => {
                if v > last.1 {
                    *last = (x, v);
                }
            }
            _ => merged.push((x, v)),
        }
    }

    let sup = merged
        .iter()
        .map(|&(_, v)| v)
        .fold(f64::NEG_INFINITY, f64::max);
    let tol_f_abs = tol_f * sup.abs().max(1.0);
    let ties: Vec<(f64, f64)> = merged
        .into_iter()
        .filter(|&(_, v)| v >= sup - tol_f_abs)
        .collect();

    // Distinct global maximizers must be separated by a genuine valley;
    // a flat quartic top (special points) yields several polished
    // candidates on one hill, which collapse into one group here. The
    // valley scale sits well below the tie tolerance but above H's
    // evaluation noise.
    let valley_tol = (0.1 * tol_f_abs).max(1e-13 * sup.abs().max(1.0));
    struct Group {
        lo: f64,
        hi: f64,
        best_x: f64,
        best_v: f64,
    }
    let mut groups: Vec<Group> = Vec::new();
    for (x, v) in ties {
        match groups.last_mut() {
            Some(g) if !has_valley(&f, g.best_x, x, valley_tol) => {
                g.hi = x;
                if v > g.best_v {
                    g.best_x = x;
                    g.best_v = v;
                }
            }
            _ => groups.push(Group {
                lo: x,
                hi: x,
                best_x: x,
                best_v: v,
            }),
        }
    }
    // Re-polish each group across its whole span: the sign of H' localizes
    // the maximizer far below the resolution of H values on a flat top.
    let mut maximizers: Vec<Maximizer> = groups
        .into_iter()
        .map(|g| {
            let lo = (g.lo - 2.0 * step).max(-1.0 + EDGE);
            let hi = (g.hi + 2.0 * step).min(1.0 - EDGE);
            let x = if f.d1(lo) > 0.0 && f.d1(hi) < 0.0 {
                crate::numeric::bisect_root(|t| f.d1(t), lo, hi, 1e-16)
            } else {
                g.best_x
            };
            Maximizer {
                location: x,
                h2: f.d2(x),
            }
        })
        .collect();
    maximizers.sort_by(|a, b| a.location.partial_cmp(&b.location).unwrap());

    let k = maximizers.len();
    let kind = match k {
        1 => {
            if maximizers[0].h2.abs() < SPECIAL_CURVATURE_TOL {
                PointKind::Special
            } else {
                PointKind::Regular
            }
        }
        2 => PointKind::WeaklyCritical,
        3 => {
            let symmetric = (maximizers[0].location + maximizers[2].location).abs() < 1e-4
                && maximizers[1].location.abs() < 1e-4;
            if p % 2 == 0 && symmetric {
                PointKind::StronglyCritical
            } else {
                PointKind::WeaklyCritical
            }
        }
        _ => {
            return Err(Error::solver(format!(
                "found {k} tied maximizers; tolerances tol_x={tol_x}, tol_f={tol_f} are degenerate"
            )))
        }
    };

    let weights = mixture_weights(&maximizers);
    Ok(PointClass {
        kind,
        maximizers,
        weights,
    })
}

/// True when H dips below both endpoint values by more than `depth`
/// somewhere strictly between a and b.
fn has_valley(f: &HFunction, a: f64, b: f64, depth: f64) -> bool {
    let floor = f.value(a).min(f.value(b)) - depth;
    let samples = 256;
    (1..samples).any(|i| {
        let x = a + (b - a) * i as f64 / samples as f64;
        f.value(x) < floor
    })
}

/// Mixture weights p_k ∝ [(m_k² - 1) H''(m_k)]^{-1/2} of the limiting
/// discrete law of the sample mean at critical points.
pub fn mixture_weights(maximizers: &[Maximizer]) -> Vec<f64> {
    if maximizers.len() == 1 {
        return vec![1.0];
    }
    let raw: Vec<f64> = maximizers
        .iter()
        .map(|m| {
            let q = (m.location * m.location - 1.0) * m.h2;
            1.0 / q.max(1e-300).sqrt()
        })
        .collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|w| w / total).collect()
}

/// Maximum of H_{β,0,p} over (0, 1), by grid scan plus golden polish.
fn interior_sup_h0(beta: f64, p: u32) -> f64 {
    let f = HFunction::new(beta, 0.0, p).expect("valid parameters");
    let grid = 4096;
    let mut best_x = 0.5;
    let mut best = f64::NEG_INFINITY;
    for i in 1..grid {
        let x = i as f64 / grid as f64;
        let v = f.value((x).min(1.0 - EDGE));
        if v > best {
            best = v;
            best_x = x;
        }
    }
    let w = 2.0 / grid as f64;
    let (_, v) = golden_section_max(
        |x| f.value(x),
        (best_x - w).max(EDGE),
        (best_x + w).min(1.0 - EDGE),
        1e-14,
    );
    v.max(best)
}

/// Thermodynamic threshold β̃_p: the smallest β ≥ 0 at which
/// sup_{x∈[0,1]} H_{β,0,p}(x) becomes positive. Lies in [0.5, ln 2].
pub fn beta_tilde(p: u32, tol: f64) -> f64 {
    assert!(p >= 2);
    assert!(tol > 0.0);
    let positive = |beta: f64| interior_sup_h0(beta, p) > 0.0;
    let mut lo = 0.3f64;
    let mut hi = 0.75f64;
    debug_assert!(!positive(lo) && positive(hi));
    while hi - lo > tol.min(1e-3) {
        let mid = 0.5 * (lo + hi);
        if positive(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// The p-special point(s): β̌_p and ȟ_p in closed form (for even p the
/// mirror point (β̌_p, -ȟ_p) is special as well).
pub fn special_point(p: u32) -> Result<(f64, f64)> {
    if p < 3 {
        return Err(Error::domain("special points are defined for p >= 3"));
    }
    let pf = p as f64;
    let beta = (pf / (pf - 2.0)).powf((pf - 2.0) / 2.0) / (2.0 * (pf - 1.0));
    let m = ((pf - 2.0) / pf).sqrt();
    let h = m.atanh() - beta * pf * ((pf - 2.0) / pf).powf((pf - 1.0) / 2.0);
    Ok((beta, h))
}
