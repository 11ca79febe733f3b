//! Phase-diagram grids: classify every (β, h) node and emit TSV with kind
//! codes. The critical set shows up as a one-dimensional curve ending at
//! the special point(s).

use rayon::prelude::*;
use serde::Serialize;

use crate::cw::{classify_point, DEFAULT_TOL_F, DEFAULT_TOL_X};
use crate::error::{Error, Result};
use crate::mc::experiment::kind_code;

#[derive(Debug, Clone, Serialize)]
pub struct PhaseDiagram {
    pub p: u32,
    pub betas: Vec<f64>,
    pub hs: Vec<f64>,
    /// Row-major kinds[bi * hs.len() + hi]: 0 regular, 1 special,
    /// 2 weakly critical, 3 strongly critical.
    pub kinds: Vec<u8>,
}

impl PhaseDiagram {
    pub fn kind_at(&self, bi: usize, hi: usize) -> u8 {
        self.kinds[bi * self.hs.len() + hi]
    }

    /// TSV rows: beta, h, kind.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("# beta\th\tkind\n");
        for (bi, &b) in self.betas.iter().enumerate() {
            for (hi, &h) in self.hs.iter().enumerate() {
                out.push_str(&format!("{}\t{}\t{}\n", b, h, self.kind_at(bi, hi)));
            }
        }
        out
    }
}

fn linspace(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    if count == 1 {
        return vec![lo];
    }
    (0..count)
        .map(|i| lo + (hi - lo) * i as f64 / (count - 1) as f64)
        .collect()
}

/// Classify a (β, h) grid. `grid` points per axis, at least 2.
pub fn phase_diagram(
    p: u32,
    beta_range: (f64, f64),
    h_range: (f64, f64),
    grid: (usize, usize),
) -> Result<PhaseDiagram> {
    if grid.0 < 2 || grid.1 < 2 {
        return Err(Error::domain("need at least 2 grid points per axis"));
    }
    if !(beta_range.0 >= 0.0 && beta_range.1 > beta_range.0) || !(h_range.1 > h_range.0) {
        return Err(Error::domain("invalid parameter ranges"));
    }
    let betas = linspace(beta_range.0, beta_range.1, grid.0);
    let hs = linspace(h_range.0, h_range.1, grid.1);
    let kinds: Vec<u8> = betas
        .par_iter()
        .flat_map_iter(|&b| {
            let hs = hs.clone();
            hs.into_iter().map(move |h| {
                classify_point(b, h, p, DEFAULT_TOL_X, DEFAULT_TOL_F)
                    .map(|c| kind_code(c.kind))
                    .unwrap_or(0)
            })
        })
        .collect();
    Ok(PhaseDiagram {
        p,
        betas,
        hs,
        kinds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cw::special_point;

    #[test]
    fn diagram_symmetric_in_h_for_even_p() {
        let d = phase_diagram(4, (0.05, 0.8), (-0.5, 0.5), (10, 11)).unwrap();
        // h grid symmetric: node hi mirrors node (len-1-hi)
        for bi in 0..d.betas.len() {
            for hi in 0..d.hs.len() {
                assert_eq!(d.kind_at(bi, hi), d.kind_at(bi, d.hs.len() - 1 - hi));
            }
        }
    }

    #[test]
    fn all_regular_below_special_beta() {
        let (beta_check, _) = special_point(4).unwrap();
        let d = phase_diagram(4, (0.01, beta_check - 0.01), (-0.6, 0.6), (6, 7)).unwrap();
        assert!(d.kinds.iter().all(|&k| k == 0));
    }

    #[test]
    fn special_point_detected_on_node() {
        // Put the p = 5 special point on a grid node; no other node should
        // classify as special.
        let (bc, hc) = special_point(5).unwrap();
        let d = phase_diagram(5, (bc - 0.1, bc + 0.1), (hc - 0.1, hc + 0.1), (3, 3)).unwrap();
        let specials: Vec<usize> = d
            .kinds
            .iter()
            .enumerate()
            .filter(|&(_, &k)| k == 1)
            .map(|(i, _)| i)
            .collect();
        assert_eq!(specials, vec![4]); // the center node
    }

    #[test]
    fn classification_stable_under_refinement() {
        // Kinds at shared nodes are unchanged when the grid doubles, away
        // from the critical curve.
        let coarse = phase_diagram(4, (0.05, 0.3), (0.05, 0.3), (5, 5)).unwrap();
        let fine = phase_diagram(4, (0.05, 0.3), (0.05, 0.3), (9, 9)).unwrap();
        for bi in 0..5 {
            for hi in 0..5 {
                assert_eq!(coarse.kind_at(bi, hi), fine.kind_at(2 * bi, 2 * hi));
            }
        }
    }

    #[test]
    fn tsv_shape() {
        let d = phase_diagram(3, (0.1, 0.5), (-0.2, 0.2), (3, 4)).unwrap();
        let tsv = d.to_tsv();
        let lines: Vec<&str> = tsv.lines().collect();
        assert_eq!(lines.len(), 1 + 12);
        assert!(lines[1].split('\t').count() == 3);
    }
}
