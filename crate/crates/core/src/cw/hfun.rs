//! The variational function H(x) = βx^p + hx - I(x) on [-1, 1] and its
//! derivatives up to order four. The locations and curvatures of its global
//! maximizers control every limit theorem in this module.

use crate::error::{Error, Result};

/// Binary entropy I(x) = ((1+x)ln(1+x) + (1-x)ln(1-x))/2, with I(±1) = ln 2.
pub fn binary_entropy(x: f64) -> f64 {
    debug_assert!((-1.0..=1.0).contains(&x));
    let term = |u: f64| if u == 0.0 { 0.0 } else { u * u.ln() };
    0.5 * (term(1.0 + x) + term(1.0 - x))
}

/// Parameters of H_{β,h,p}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HFunction {
    pub beta: f64,
    pub h: f64,
    pub p: u32,
}

impl HFunction {
    pub fn new(beta: f64, h: f64, p: u32) -> Result<Self> {
        if !(beta >= 0.0) {
            return Err(Error::domain("beta must be nonnegative"));
        }
        if p < 2 {
            return Err(Error::domain("interaction order p must be at least 2"));
        }
        Ok(HFunction { beta, h, p })
    }

    /// d^k/dx^k of x^p, as p!/(p-k)! x^{p-k}; zero once k > p.
    fn monomial_deriv(&self, x: f64, k: u32) -> f64 {
        let p = self.p;
        if k > p {
            return 0.0;
        }
        let mut coeff = 1.0f64;
        for j in 0..k {
            coeff *= (p - j) as f64;
        }
        let e = (p - k) as i32;
        if e == 0 {
            coeff
        } else {
            coeff * x.powi(e)
        }
    }

    /// H and derivatives. Orders >= 1 are defined on the open interval only.
    pub fn eval(&self, x: f64, order: u32) -> Result<f64> {
        if !(-1.0..=1.0).contains(&x) {
            return Err(Error::domain(format!("x = {x} outside [-1, 1]")));
        }
        if order > 4 {
            return Err(Error::domain("derivative order must be 0..=4"));
        }
        if order >= 1 && x.abs() == 1.0 {
            return Err(Error::domain(
                "derivatives of H are unbounded at the endpoints",
            ));
        }
        let (beta, h) = (self.beta, self.h);
        let v = match order {
            0 => beta * self.monomial_deriv(x, 0) + h * x - binary_entropy(x),
            1 => beta * self.monomial_deriv(x, 1) + h - x.atanh(),
            2 => beta * self.monomial_deriv(x, 2) - 1.0 / (1.0 - x * x),
            3 => {
                let d = 1.0 - x * x;
                beta * self.monomial_deriv(x, 3) - 2.0 * x / (d * d)
            }
            _ => {
                let d = 1.0 - x * x;
                beta * self.monomial_deriv(x, 4) - (2.0 + 6.0 * x * x) / (d * d * d)
            }
        };
        Ok(v)
    }

    /// Infallible H(x) for interior-safe call sites.
    pub fn value(&self, x: f64) -> f64 {
        self.eval(x, 0).expect("x within [-1, 1]")
    }

    pub fn d1(&self, x: f64) -> f64 {
        self.eval(x, 1).expect("interior x")
    }

    pub fn d2(&self, x: f64) -> f64 {
        self.eval(x, 2).expect("interior x")
    }
}
