//! Box-constrained maximisation over selected entries of an action matrix:
//! an optional joint coarse grid, then cyclic coordinate ascent where each
//! coordinate is scanned on a grid and polished by golden-section search.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Controls for the action search.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchOptions {
    /// Actions are searched in `[−a_max, a_max]` entrywise.
    pub a_max: f64,
    /// Points of the per-coordinate scan grid.
    pub coarse_points: usize,
    /// Golden-section bracket width and coordinate-change threshold.
    pub tol: f64,
    pub max_sweeps: usize,
    /// Upper bound on the size of the joint starting grid.
    pub joint_budget: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            a_max: 3.0,
            coarse_points: 61,
            tol: 1e-10,
            max_sweeps: 100,
            joint_budget: 200_000,
        }
    }
}

impl SearchOptions {
    pub fn validate(&self) -> Result<()> {
        if !(self.a_max.is_finite() && self.a_max > 0.0) {
            return Err(Error::InvalidParameter(format!("a_max must be > 0, got {}", self.a_max)));
        }
        if self.coarse_points < 3 {
            return Err(Error::InvalidParameter("coarse grid needs at least 3 points".into()));
        }
        if !(self.tol > 0.0) {
            return Err(Error::InvalidParameter(format!("tol must be > 0, got {}", self.tol)));
        }
        Ok(())
    }

    fn grid(&self, points: usize) -> impl Iterator<Item = f64> + '_ {
        let step = 2.0 * self.a_max / (points - 1) as f64;
        (0..points).map(move |i| -self.a_max + i as f64 * step)
    }
}

const INV_PHI: f64 = 0.618_033_988_749_894_8;

fn finite(v: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Model(format!("objective evaluated to {v}")))
    }
}

fn golden_max<F: FnMut(f64) -> Result<f64>>(mut f: F, mut lo: f64, mut hi: f64, tol: f64) -> Result<(f64, f64)> {
    let mut c = hi - INV_PHI * (hi - lo);
    let mut d = lo + INV_PHI * (hi - lo);
    let mut fc = finite(f(c)?)?;
    let mut fd = finite(f(d)?)?;
    while hi - lo > tol {
        if fc >= fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - INV_PHI * (hi - lo);
            fc = finite(f(c)?)?;
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + INV_PHI * (hi - lo);
            fd = finite(f(d)?)?;
        }
    }
    Ok(if fc >= fd { (c, fc) } else { (d, fd) })
}

/// Scan-and-polish maximisation of one entry; returns the new value and
/// objective if it improves on the current one.
fn improve_coordinate<F>(objective: &F, a: &mut DMatrix<f64>, entry: (usize, usize), opts: &SearchOptions) -> Result<f64>
where
    F: Fn(&DMatrix<f64>) -> f64,
{
    let original = a[entry];
    let current = finite(objective(a))?;
    let eval = |v: f64, a: &mut DMatrix<f64>| {
        a[entry] = v;
        finite(objective(a))
    };

    let step = 2.0 * opts.a_max / (opts.coarse_points - 1) as f64;
    let mut best = (original, current);
    for v in opts.grid(opts.coarse_points) {
        let fv = eval(v, a)?;
        if fv > best.1 {
            best = (v, fv);
        }
    }
    let lo = (best.0 - step).max(-opts.a_max);
    let hi = (best.0 + step).min(opts.a_max);
    let polished = golden_max(|v| eval(v, a), lo, hi, opts.tol)?;
    if polished.1 > best.1 {
        best = polished;
    }
    // Only accept improvements beyond rounding so reruns from an optimum
    // leave it bit-identical.
    let slack = 4.0 * f64::EPSILON * (1.0 + current.abs());
    if best.1 > current + slack {
        a[entry] = best.0;
        Ok(best.1)
    } else {
        a[entry] = original;
        Ok(current)
    }
}

/// Maximises `objective` over the listed entries of `start`, keeping the
/// other entries fixed. Returns the maximiser and its value.
pub(crate) fn maximize_entries<F>(
    objective: &F,
    start: DMatrix<f64>,
    entries: &[(usize, usize)],
    joint_grid: bool,
    opts: &SearchOptions,
) -> Result<(DMatrix<f64>, f64)>
where
    F: Fn(&DMatrix<f64>) -> f64,
{
    opts.validate()?;
    let mut a = start;
    let mut value = finite(objective(&a))?;

    if joint_grid && !entries.is_empty() {
        let per_dim = (opts.joint_budget as f64).powf(1.0 / entries.len() as f64).floor() as usize;
        let per_dim = per_dim.min(opts.coarse_points);
        if per_dim >= 3 {
            let grid: Vec<f64> = opts.grid(per_dim).collect();
            let total = per_dim.pow(entries.len() as u32);
            let mut trial = a.clone();
            for idx in 0..total {
                let mut rest = idx;
                for &entry in entries {
                    trial[entry] = grid[rest % per_dim];
                    rest /= per_dim;
                }
                let v = finite(objective(&trial))?;
                if v > value {
                    value = v;
                    a.copy_from(&trial);
                }
            }
        }
    }

    for _ in 0..opts.max_sweeps {
        let before = a.clone();
        for &entry in entries {
            value = improve_coordinate(objective, &mut a, entry, opts)?;
        }
        let change = (&a - &before).abs().max();
        if change < opts.tol {
            return Ok((a, value));
        }
    }
    Ok((a, value))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_section_finds_parabola_peak() {
        let (x, fx) = golden_max(|x| Ok(-(x - 0.3f64).powi(2)), -1.0, 1.0, 1e-10).unwrap();
        assert!((x - 0.3).abs() < 1e-9);
        assert!(fx.abs() < 1e-18);
    }

    #[test]
    fn coupled_concave_objective() {
        // max −(x − 1)² − (y + 0.5)² − 0.5 x y
        let f = |a: &DMatrix<f64>| {
            let (x, y) = (a[(0, 0)], a[(0, 1)]);
            -(x - 1.0).powi(2) - (y + 0.5).powi(2) - 0.5 * x * y
        };
        let (a, _) = maximize_entries(&f, DMatrix::zeros(1, 2), &[(0, 0), (0, 1)], true, &SearchOptions::default())
            .unwrap();
        // Stationary point of the quadratic: 2(x−1) + 0.5y = 0, 2(y+0.5) + 0.5x = 0.
        let x = (2.0 + 0.25) / (2.0 - 0.125);
        let y = -0.5 - 0.25 * x;
        assert!((a[(0, 0)] - x).abs() < 1e-7, "{}", a[(0, 0)]);
        assert!((a[(0, 1)] - y).abs() < 1e-7);
    }

    #[test]
    fn non_finite_objective_is_a_model_error() {
        let f = |a: &DMatrix<f64>| if a[(0, 0)] > 0.5 { f64::NAN } else { a[(0, 0)] };
        let r = maximize_entries(&f, DMatrix::zeros(1, 1), &[(0, 0)], false, &SearchOptions::default());
        assert!(matches!(r, Err(Error::Model(_))));
    }
}
