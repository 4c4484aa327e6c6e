//! Planner versus no-Planner: when the Nash equilibrium is itself Pareto
//! optimal, which Planner weights leave the Principal better off, and the
//! data behind the comparison plot.

use serde::Serialize;

use super::closed_form::{g_na, g_pareto_curve, weak_pareto_values, z_nash, z_pareto};
use super::types::{LqParams, ParetoWeight};
use crate::numfmt::format_significant;
use crate::{Error, Result};

/// Only weight for which the Nash loadings can reproduce a Pareto action:
/// the solution of `(1 + R_P k12)/(1 + R_P k11) = (1 − λ)/λ`.
pub fn nash_pareto_candidate(p: &LqParams) -> f64 {
    let r = p.r_p();
    (1.0 + r * p.cost_coeff(0, 0)) / (2.0 + r * (p.cost_coeff(0, 0) + p.cost_coeff(0, 1)))
}

/// Residuals of the four conditions under which the Nash effort equals the
/// Planner's effort with weight `λ`:
/// `z_NA^{j,i} = (λ-aggregate of z_Pe row j) / λ_i`.
pub fn nash_pareto_residuals(p: &LqParams, w: ParetoWeight) -> [f64; 4] {
    let z_na = z_nash(p);
    // Every optimal cooperative loading has aggregate 1/2 on each row.
    let aggregates = if w.is_cooperative() {
        [0.5, 0.5]
    } else {
        let z = z_pareto(w, p).expect("non-cooperative weight");
        [z.aggregate(0, w), z.aggregate(1, w)]
    };
    [
        z_na.get(0, 0) - aggregates[0] / w.of(0),
        z_na.get(0, 1) - aggregates[0] / w.of(1),
        z_na.get(1, 0) - aggregates[1] / w.of(0),
        z_na.get(1, 1) - aggregates[1] / w.of(1),
    ]
}

/// Returns the weight `λ*` for which the Nash equilibrium coincides with a
/// Pareto optimum, or `None` if no weight satisfies the conditions within
/// `tol`.
pub fn nash_pareto_check(p: &LqParams, tol: f64) -> Result<Option<f64>> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!("tolerance must be > 0, got {tol}")));
    }
    let candidate = nash_pareto_candidate(p);
    let w = ParetoWeight::new(candidate)?;
    let ok = nash_pareto_residuals(p, w).iter().all(|r| r.abs() <= tol);
    Ok(ok.then_some(candidate))
}

/// A maximal interval of Planner weights; `0` and `1` bounds are open.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Interval {
    pub lower: f64,
    pub upper: f64,
}

impl Interval {
    pub fn contains(&self, x: f64) -> bool {
        self.lower <= x && x <= self.upper
    }
}

/// Weights for which adding the Planner does not hurt the Principal.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LambdaSet {
    pub intervals: Vec<Interval>,
    pub g_na_value: f64,
    /// Whether the unimodal bisection path was used (otherwise a dense scan).
    pub unimodal: bool,
}

impl LambdaSet {
    pub fn contains(&self, lambda: f64) -> bool {
        self.intervals.iter().any(|i| i.contains(lambda))
    }
}

const UNIMODAL_SCAN: usize = 1000;
const DENSE_SCAN: usize = 10_000;

/// `Λ = {λ ∈ (0, 1) : g(λ, z*(λ)) ≥ g_NA(z_NA, R_P)}` with boundaries
/// located by bisection to `tol`.
pub fn lambda_improvement_set(p: &LqParams, tol: f64) -> Result<LambdaSet> {
    if p.r_p() == 0.0 {
        return Err(Error::RiskNeutralPrincipal);
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!("tolerance must be > 0, got {tol}")));
    }
    let g_na_value = g_na(&z_nash(p), p);
    let excess = |lambda: f64| g_pareto_curve(lambda, p).map(|g| g - g_na_value);

    if is_unimodal(p)? {
        let mut intervals = Vec::new();
        if excess(0.5)? >= 0.0 {
            let lower = if excess(0.0)? >= 0.0 {
                0.0
            } else {
                bisect_boundary(&excess, 0.0, 0.5, tol)?
            };
            let upper = if excess(1.0)? >= 0.0 {
                1.0
            } else {
                bisect_boundary(&excess, 1.0, 0.5, tol)?
            };
            intervals.push(Interval { lower, upper });
        }
        return Ok(LambdaSet { intervals, g_na_value, unimodal: true });
    }

    let grid: Vec<f64> = (0..=DENSE_SCAN).map(|i| i as f64 / DENSE_SCAN as f64).collect();
    let inside = grid
        .iter()
        .map(|&l| excess(l).map(|e| e >= 0.0))
        .collect::<Result<Vec<bool>>>()?;
    let mut intervals = Vec::new();
    let mut start: Option<f64> = None;
    for i in 0..grid.len() {
        match (inside[i], start) {
            (true, None) => {
                start = Some(if i == 0 {
                    0.0
                } else {
                    bisect_boundary(&excess, grid[i - 1], grid[i], tol)?
                });
            }
            (false, Some(lower)) => {
                let upper = bisect_boundary(&excess, grid[i], grid[i - 1], tol)?;
                intervals.push(Interval { lower, upper });
                start = None;
            }
            _ => {}
        }
    }
    if let Some(lower) = start {
        intervals.push(Interval { lower, upper: 1.0 });
    }
    Ok(LambdaSet { intervals, g_na_value, unimodal: false })
}

fn is_unimodal(p: &LqParams) -> Result<bool> {
    let values = (1..UNIMODAL_SCAN)
        .map(|i| g_pareto_curve(i as f64 / UNIMODAL_SCAN as f64, p))
        .collect::<Result<Vec<f64>>>()?;
    let half = UNIMODAL_SCAN / 2 - 1;
    let slack = 1e-14;
    let rising = values[..=half].windows(2).all(|w| w[1] >= w[0] - slack);
    let falling = values[half..].windows(2).all(|w| w[1] <= w[0] + slack);
    Ok(rising && falling)
}

/// Bisection between `outside` (excess < 0) and `inside` (excess ≥ 0);
/// returns the midpoint of the final bracket.
fn bisect_boundary<F>(excess: &F, mut outside: f64, mut inside: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    while (inside - outside).abs() > tol {
        let mid = 0.5 * (inside + outside);
        if mid == inside || mid == outside {
            break;
        }
        if excess(mid)? >= 0.0 {
            inside = mid;
        } else {
            outside = mid;
        }
    }
    Ok(0.5 * (inside + outside))
}

/// One named series of the comparison plot.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Series {
    /// `λ ↦ g(λ, z*(λ))` on the open grid.
    GPareto,
    /// Weak optimum at `λ = 0`.
    GWeak0,
    /// Weak optimum at `λ = 1`.
    GWeak1,
    /// Constant no-Planner value for one risk aversion.
    GNa(f64),
}

impl Series {
    pub fn name(&self) -> String {
        match self {
            Series::GPareto => "g_pareto".into(),
            Series::GWeak0 => "g_weak_0".into(),
            Series::GWeak1 => "g_weak_1".into(),
            Series::GNa(r) => format!("g_na_R={}", format_significant(*r, 12)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FigureRow {
    pub series: String,
    pub x: f64,
    pub y: f64,
}

/// Rows sorted by `(series, x)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Figure1Table {
    pub rows: Vec<FigureRow>,
}

impl Figure1Table {
    pub fn series(&self, name: &str) -> impl Iterator<Item = &FigureRow> + '_ {
        let name = name.to_string();
        self.rows.iter().filter(move |r| r.series == name)
    }
}

/// Data for the Planner-versus-Nash plot: the Pareto curve on the grid
/// `i / (grid_size + 1)`, the two weak endpoints, and one constant
/// `g_NA(z_NA(R), R)` series per `R` in `r_list` spanning `[0, 1]`.
pub fn figure1_data(p: &LqParams, r_list: &[f64], grid_size: usize) -> Result<Figure1Table> {
    if grid_size < 3 {
        return Err(Error::InvalidParameter(format!("grid_size must be >= 3, got {grid_size}")));
    }
    if let Some(r) = r_list.iter().find(|r| !(r.is_finite() && **r > 0.0)) {
        return Err(Error::InvalidParameter(format!("risk aversions must be > 0, got {r}")));
    }
    let grid: Vec<f64> = (1..=grid_size).map(|i| i as f64 / (grid_size + 1) as f64).collect();
    let mut rows = Vec::with_capacity(grid_size * (r_list.len() + 1) + 2);
    for &lambda in &grid {
        rows.push(FigureRow { series: Series::GPareto.name(), x: lambda, y: g_pareto_curve(lambda, p)? });
    }
    let (g0, g1) = weak_pareto_values(p);
    rows.push(FigureRow { series: Series::GWeak0.name(), x: 0.0, y: g0 });
    rows.push(FigureRow { series: Series::GWeak1.name(), x: 1.0, y: g1 });

    let mut seen = Vec::new();
    for &r in r_list {
        let name = Series::GNa(r).name();
        if seen.contains(&name) {
            continue;
        }
        seen.push(name.clone());
        let pr = p.with_r_p(r)?;
        let y = g_na(&z_nash(&pr), &pr);
        for &x in std::iter::once(&0.0).chain(grid.iter()).chain(std::iter::once(&1.0)) {
            rows.push(FigureRow { series: name.clone(), x, y });
        }
    }
    rows.sort_by(|a, b| a.series.cmp(&b.series).then(a.x.total_cmp(&b.x)));
    Ok(Figure1Table { rows })
}
