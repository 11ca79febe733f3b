//! Locating the critical curve h = φ_p(β). For β > β̌_p the function H''
//! is positive between two inflection points 0 < a₁ < a₂ < 1, splitting the
//! stationary structure into a low branch (maximizer below a₁) and a high
//! branch (maximizer above a₂). The curve is where the two branch maxima
//! tie; the gap V_hi - V_lo is strictly increasing in both h and β, so a
//! 1-D bisection locates the boundary.

use crate::cw::classify::special_point;
use crate::cw::hfun::HFunction;
use crate::error::{Error, Result};
use crate::numeric::{bisect_root, golden_section_max};

const EDGE: f64 = 1e-12;
pub const CURVE_TOL: f64 = 1e-8;

/// Positive roots a₁ < a₂ of H'' (h-independent). None when H is concave
/// on [0, 1], i.e. β ≤ β̌_p.
fn inflection_pair(beta: f64, p: u32) -> Option<(f64, f64)> {
    let f = HFunction::new(beta, 0.0, p).ok()?;
    let grid = 20_000;
    let mut first = None;
    let mut last = None;
    let mut prev_x = EDGE;
    let mut prev = f.d2(prev_x);
    for i in 1..grid {
        let x = i as f64 / grid as f64 * (1.0 - 2.0 * EDGE);
        let cur = f.d2(x);
        if prev < 0.0 && cur >= 0.0 {
            first.get_or_insert((prev_x, x));
        }
        if prev >= 0.0 && cur < 0.0 {
            last = Some((prev_x, x));
        }
        prev = cur;
        prev_x = x;
    }
    let (lo1, hi1) = first?;
    let (lo2, hi2) = last?;
    let a1 = bisect_root(|x| f.d2(x), lo1, hi1, 1e-14);
    let a2 = bisect_root(|x| f.d2(x), lo2, hi2, 1e-14);
    Some((a1, a2))
}

/// Maximum of H over [lo, hi]; None when the maximum sits on an endpoint,
/// meaning the branch has no interior local maximizer.
fn branch_max(f: &HFunction, lo: f64, hi: f64) -> Option<(f64, f64)> {
    let (x, v) = golden_section_max(|t| f.value(t), lo, hi, 1e-13);
    let span = hi - lo;
    if x - lo < 1e-7 * span.max(1.0) || hi - x < 1e-7 * span.max(1.0) {
        return None;
    }
    Some((x, v))
}

/// Height gap V_hi - V_lo between the two branch maxima of H_{β,h,p};
/// ±inf when one branch has lost its interior maximizer.
fn branch_gap(beta: f64, h: f64, p: u32, a1: f64, a2: f64) -> f64 {
    let f = HFunction::new(beta, h, p).expect("valid parameters");
    // H is concave between the inflection points, so the low branch lives
    // on (-a1, a1) for even p (its maximizer sits at 0 when h = 0) and on
    // (-1, a1) for odd p.
    let lo_left = if p % 2 == 0 { -a1 } else { -1.0 + 1e-9 };
    let low = branch_max(&f, lo_left, a1);
    let high = branch_max(&f, a2, 1.0 - 1e-9);
    match (low, high) {
        (Some((_, vl)), Some((_, vh))) => vh - vl,
        (Some(_), None) => f64::NEG_INFINITY,
        (None, Some(_)) => f64::INFINITY,
        (None, None) => f64::NEG_INFINITY,
    }
}

/// The nonnegative-h arm of the critical curve at fixed β for even p, or
/// the single arm for odd p. None when β ≤ β̌_p (no critical field).
pub fn critical_field(p: u32, beta: f64, tol: f64) -> Result<Option<f64>> {
    if p == 2 {
        // Known matrix-case structure: the critical set is {h = 0, β > 1/2}.
        return Ok(if beta > 0.5 { Some(0.0) } else { None });
    }
    let Some((a1, a2)) = inflection_pair(beta, p) else {
        return Ok(None);
    };
    let gap = |h: f64| branch_gap(beta, h, p, a1, a2);

    // Bracket the sign change of the gap in h.
    let mut lo;
    let mut hi;
    if p % 2 == 0 {
        if gap(0.0) >= 0.0 {
            // At or above the thermodynamic threshold the arms have met h=0.
            return Ok(Some(0.0));
        }
        lo = 0.0;
        hi = 0.25;
        let mut steps = 0;
        while gap(hi) < 0.0 {
            hi *= 2.0;
            steps += 1;
            if steps > 40 {
                return Err(Error::solver("critical field bracket failed (even p)"));
            }
        }
    } else {
        lo = -0.25;
        hi = 0.25;
        let mut steps = 0;
        while gap(lo) > 0.0 {
            lo *= 2.0;
            steps += 1;
            if steps > 40 {
                return Err(Error::solver("critical field bracket failed (low side)"));
            }
        }
        steps = 0;
        while gap(hi) < 0.0 {
            hi *= 2.0;
            steps += 1;
            if steps > 40 {
                return Err(Error::solver("critical field bracket failed (high side)"));
            }
        }
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if gap(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(Some(0.5 * (lo + hi)))
}

/// S_p(β): the set of fields h with (β, h) on the closed critical curve
/// (critical points plus their special limit points). Empty, a singleton,
/// or a symmetric pair.
pub fn critical_field_set(p: u32, beta: f64) -> Result<Vec<f64>> {
    if p == 2 {
        return Ok(if beta >= 0.5 { vec![0.0] } else { vec![] });
    }
    let (beta_check, h_check) = special_point(p)?;
    if beta < beta_check - 1e-12 {
        return Ok(vec![]);
    }
    if (beta - beta_check).abs() <= 1e-9 {
        return Ok(if p % 2 == 0 {
            vec![-h_check, h_check]
        } else {
            vec![h_check]
        });
    }
    match critical_field(p, beta, CURVE_TOL)? {
        None => Ok(vec![]),
        Some(h) if p % 2 == 0 => {
            if h > CURVE_TOL {
                Ok(vec![-h, h])
            } else {
                Ok(vec![0.0])
            }
        }
        Some(h) => Ok(vec![h]),
    }
}

/// T_p(h): the set of β ≥ 0 with (β, h) on the closed critical curve, for
/// h ≠ 0. Either empty or a singleton (the curve is a strictly monotone
/// graph over β).
pub fn critical_beta_set(p: u32, h: f64) -> Result<Vec<f64>> {
    if h == 0.0 {
        return Err(Error::domain("critical_beta_set requires h != 0"));
    }
    if p == 2 {
        return Ok(vec![]);
    }
    let (beta_check, h_check) = special_point(p)?;
    // Even p is symmetric in h; the odd-p curve covers fields below ȟ_p.
    let target = if p % 2 == 0 { h.abs() } else { h };
    if target > h_check + 1e-12 {
        return Ok(vec![]);
    }
    if (target - h_check).abs() <= 1e-9 {
        return Ok(vec![beta_check]);
    }

    let gap_at = |beta: f64| -> f64 {
        match inflection_pair(beta, p) {
            None => f64::NEG_INFINITY,
            Some((a1, a2)) => branch_gap(beta, target, p, a1, a2),
        }
    };
    let mut lo = beta_check;
    let mut hi = beta_check.max(0.5) * 2.0;
    let mut steps = 0;
    while gap_at(hi) < 0.0 {
        hi *= 2.0;
        steps += 1;
        if steps > 40 {
            return Err(Error::solver("critical beta bracket failed"));
        }
    }
    while hi - lo > CURVE_TOL {
        let mid = 0.5 * (lo + hi);
        if gap_at(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(vec![0.5 * (lo + hi)])
}
