//! The numerical acceptance checks, shared by the `verify` command and the
//! `acceptance` test target. Every tolerance is pinned in [`tolerances`].

use std::f64::consts::E;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::akr::{akr_node, remainder_r, NodeTable};
use crate::asymptotics::{
    decomposition, drift_2d, extrapolate, extrapolate_values, residual_series_with_workers,
    voronovskaja_rhs_2d, DerivativePolicy, OperatorKind, Schedule, Subject,
};
use crate::bernstein::BasisContext;
use crate::catalog::lookup;
use crate::error::Result;
use crate::fixed_point_error;
use crate::function::SquarePoint;
use crate::numeric::CompensatedSum;
use crate::parallel::ordered_map;

pub mod tolerances {
    /// Fixed-point reproduction of `e_0` and `e_j`.
    pub const FIXED_POINT: f64 = 1e-12;
    /// Slack on `R(n, k) >= 0` and on the node bracket `0 <= k/n - t <= 1/n`.
    pub const REMAINDER_SLACK: f64 = 1e-15;
    /// `R(n, 0) = -1/(2n)`, in units in the last place.
    pub const REMAINDER_AT_ZERO_ULPS: f64 = 1.0;
    /// Lower bound on every lemma-sum value.
    pub const LEMMA_FLOOR: f64 = -1e-13;
    /// Absolute bound on the extrapolated lemma-sum limit.
    pub const LEMMA_LIMIT: f64 = 1e-2;
    /// Relative agreement of the 1D AKR limit for `e_1`.
    pub const AKR_1D_REL: f64 = 1e-2;
    /// Relative agreement of the 2D AKR limit.
    pub const THEOREM_REL: f64 = 2e-2;
    /// Relative agreement of the drift limit.
    pub const DRIFT_REL: f64 = 2e-2;
    /// Recomputed total against `E + F + G`.
    pub const DECOMPOSITION_TOTAL: f64 = 1e-10;
    pub const EXTRAP_FIRST_ORDER_LIMIT: f64 = 1e-10;
    pub const EXTRAP_FIRST_ORDER_RATE: f64 = 1e-6;
    pub const EXTRAP_HALF_ORDER_LIMIT: f64 = 1e-6;
    pub const EXTRAP_HALF_ORDER_RATE: f64 = 1e-3;
}

/// Largest degree swept by the remainder check.
pub const REMAINDER_SWEEP_MAX_N: usize = 4096;

/// Relative error, measured absolutely when the target is exactly zero.
pub fn relative_error(estimate: f64, target: f64) -> f64 {
    let scale = if target == 0.0 { 1.0 } else { target.abs() };
    (estimate - target).abs() / scale
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CriterionOutcome {
    pub id: u8,
    pub title: String,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub budget: Duration,
}

impl CriterionOutcome {
    pub fn within_budget(&self) -> bool {
        self.elapsed <= self.budget
    }
}

type Check = fn(usize) -> Result<(bool, String)>;

#[derive(Clone, Copy)]
pub struct Criterion {
    pub id: u8,
    pub title: &'static str,
    pub budget: Duration,
    check: Check,
}

impl std::fmt::Debug for Criterion {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Criterion").field("id", &self.id).field("title", &self.title).finish()
    }
}

impl Criterion {
    /// Runs the check; an evaluation error counts as a failure.
    pub fn run(&self, workers: usize) -> CriterionOutcome {
        let start = Instant::now();
        let (passed, detail) = match (self.check)(workers) {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        CriterionOutcome {
            id: self.id,
            title: self.title.to_owned(),
            passed,
            detail,
            elapsed: start.elapsed(),
            budget: self.budget,
        }
    }
}

pub fn criteria() -> Vec<Criterion> {
    vec![
        Criterion { id: 1, title: "fixed points e0 and ej", budget: Duration::from_secs(1), check: fixed_points },
        Criterion { id: 2, title: "remainder properties", budget: Duration::from_secs(10), check: remainder_properties },
        Criterion { id: 3, title: "lemma sum vanishes", budget: Duration::from_secs(30), check: lemma },
        Criterion { id: 4, title: "1D AKR limit for e1", budget: Duration::from_secs(10), check: akr_1d_limit },
        Criterion { id: 5, title: "2D AKR Voronovskaja limit", budget: Duration::from_secs(180), check: theorem },
        Criterion { id: 6, title: "drift identity", budget: Duration::from_secs(180), check: drift },
        Criterion { id: 7, title: "E/F/G decomposition", budget: Duration::from_secs(30), check: decomposition_check },
        Criterion { id: 8, title: "extrapolator oracles", budget: Duration::from_secs(1), check: extrapolator },
    ]
}

pub fn run_all(workers: usize) -> Vec<CriterionOutcome> {
    criteria().iter().map(|c| c.run(workers)).collect()
}

fn fixed_points(_: usize) -> Result<(bool, String)> {
    let mut worst: f64 = 0.0;
    for j in [2, 3] {
        for n in [16, 64, 256] {
            worst = worst.max(fixed_point_error(n, j, 101)?);
        }
    }
    Ok((worst <= tolerances::FIXED_POINT, format!("max error {worst:.3e}")))
}

fn remainder_properties(workers: usize) -> Result<(bool, String)> {
    #[derive(Default)]
    struct Worst {
        at_zero_ulps: f64,
        min_r: f64,
        min_gap: f64,
        max_gap_excess: f64,
    }
    let degrees: Vec<usize> = (2..=REMAINDER_SWEEP_MAX_N).collect();
    let per_n = ordered_map(&degrees, workers, |&n| -> Result<Worst> {
        let nf = n as f64;
        let r0 = remainder_r(n, 0)?;
        let exact = -1.0 / (2.0 * nf);
        let mut w = Worst {
            at_zero_ulps: (r0 - exact).abs() / (exact.abs() * f64::EPSILON),
            min_r: f64::INFINITY,
            min_gap: f64::INFINITY,
            max_gap_excess: f64::NEG_INFINITY,
        };
        for k in 0..=n {
            if k >= 1 {
                w.min_r = w.min_r.min(remainder_r(n, k)?);
            }
            let gap = k as f64 / nf - akr_node(n, k, 2)?;
            w.min_gap = w.min_gap.min(gap);
            w.max_gap_excess = w.max_gap_excess.max(gap - 1.0 / nf);
        }
        Ok(w)
    });
    let mut total = Worst {
        at_zero_ulps: 0.0,
        min_r: f64::INFINITY,
        min_gap: f64::INFINITY,
        max_gap_excess: f64::NEG_INFINITY,
    };
    for w in per_n {
        let w = w?;
        total.at_zero_ulps = total.at_zero_ulps.max(w.at_zero_ulps);
        total.min_r = total.min_r.min(w.min_r);
        total.min_gap = total.min_gap.min(w.min_gap);
        total.max_gap_excess = total.max_gap_excess.max(w.max_gap_excess);
    }
    let slack = tolerances::REMAINDER_SLACK;
    let passed = total.at_zero_ulps <= tolerances::REMAINDER_AT_ZERO_ULPS
        && total.min_r >= -slack
        && total.min_gap >= -slack
        && total.max_gap_excess <= slack;
    Ok((
        passed,
        format!(
            "R(n,0) off by {:.1} ulp; min R = {:.3e}; min gap = {:.3e}; max gap - 1/n = {:.3e}",
            total.at_zero_ulps, total.min_r, total.min_gap, total.max_gap_excess
        ),
    ))
}

fn lemma(workers: usize) -> Result<(bool, String)> {
    let mut passed = true;
    let mut notes = Vec::new();
    for x in [0.1, 0.25, 0.5, 0.75, 1.0] {
        let s = residual_series_with_workers(OperatorKind::LemmaSum, 2, Subject::Point(x), Schedule::DEFAULT, workers)?;
        let values = s.values();
        let floor_ok = values.iter().all(|&v| v >= tolerances::LEMMA_FLOOR);
        let limit = extrapolate(&s)?.limit_estimate;
        let ok = if x == 1.0 {
            floor_ok && values.iter().all(|&v| v == 0.0)
        } else {
            floor_ok && limit.abs() <= tolerances::LEMMA_LIMIT
        };
        passed &= ok;
        notes.push(format!("x={x}: last={:.3e} limit={limit:.3e}", values.last().copied().unwrap_or(f64::NAN)));
    }
    Ok((passed, notes.join("; ")))
}

fn akr_1d_limit(workers: usize) -> Result<(bool, String)> {
    let entry = lookup("e1")?;
    let f = entry.as_1d()?;
    let mut passed = true;
    let mut notes = Vec::new();
    for x in [0.3, 0.5, 0.9] {
        let s = residual_series_with_workers(OperatorKind::Akr1d, 2, Subject::Line(f, x), Schedule::DEFAULT, workers)?;
        let limit = extrapolate(&s)?.limit_estimate;
        let target = -(1.0 - x) / 2.0;
        let err = relative_error(limit, target);
        passed &= err <= tolerances::AKR_1D_REL;
        notes.push(format!("x={x}: limit={limit:.7} target={target} rel={err:.1e}"));
    }
    Ok((passed, notes.join("; ")))
}

const THEOREM_FUNCTIONS: [&str; 2] = ["exp-sum", "runge-2d"];
const THEOREM_POINTS: [(f64, f64); 2] = [(0.5, 0.5), (0.7, 0.3)];

fn square_limit_check(
    workers: usize,
    kind: OperatorKind,
    tol: f64,
    target: fn(&crate::Function2D, SquarePoint) -> Result<f64>,
) -> Result<(bool, String)> {
    let mut passed = true;
    let mut notes = Vec::new();
    for name in THEOREM_FUNCTIONS {
        let entry = lookup(name)?;
        let f = entry.as_2d()?;
        for (x, y) in THEOREM_POINTS {
            let p = SquarePoint::new(x, y)?;
            let s = residual_series_with_workers(kind, 2, Subject::Square(f, p), Schedule::DEFAULT, workers)?;
            let r = extrapolate(&s)?;
            let t = target(f, p)?;
            let err = relative_error(r.limit_estimate, t);
            passed &= err <= tol;
            notes.push(format!(
                "{name}@({x},{y}): limit={:.7} target={t:.7} rel={err:.1e} rate={}",
                r.limit_estimate,
                r.rate_estimate.map_or("-".into(), |p| format!("{p:.2}"))
            ));
        }
    }
    Ok((passed, notes.join("; ")))
}

fn theorem(workers: usize) -> Result<(bool, String)> {
    let exp_sum = lookup("exp-sum")?;
    let centre = SquarePoint::new(0.5, 0.5)?;
    let t = voronovskaja_rhs_2d(exp_sum.as_2d()?, centre, DerivativePolicy::ExactOnly)?;
    let target_ok = (t + 0.25 * E).abs() <= 1e-14;
    let (passed, detail) = square_limit_check(workers, OperatorKind::Akr2d, tolerances::THEOREM_REL, |f, p| {
        voronovskaja_rhs_2d(f, p, DerivativePolicy::ExactOnly)
    })?;
    Ok((passed && target_ok, detail))
}

fn drift(workers: usize) -> Result<(bool, String)> {
    square_limit_check(workers, OperatorKind::AkrMinusBernstein2d, tolerances::DRIFT_REL, |f, p| {
        drift_2d(f, p, DerivativePolicy::ExactOnly)
    })
}

/// `n * sum_k sum_l p_k(x) p_l(y) [f(t_k, t_l) - f(k/n, l/n)]`, summed
/// term by term rather than as a difference of two operator values.
fn direct_total(f: &crate::Function2D, n: usize, p: SquarePoint) -> Result<f64> {
    let ctx = BasisContext::new(n)?;
    let table = NodeTable::new(n, 2)?;
    let (wx, wy) = (ctx.weights(p.x)?, ctx.weights(p.y)?);
    let nf = n as f64;
    let mut acc = CompensatedSum::new();
    for k in 0..=n {
        for l in 0..=n {
            let w = wx[k] * wy[l];
            if w != 0.0 {
                let (sk, sl) = (k as f64 / nf, l as f64 / nf);
                acc.add(w * (f.eval(table.get(k), table.get(l)) - f.eval(sk, sl)));
            }
        }
    }
    Ok(nf * acc.value())
}

fn decomposition_check(workers: usize) -> Result<(bool, String)> {
    let entry = lookup("exp-sum")?;
    let f = entry.as_2d()?;
    let cases: Vec<(usize, (f64, f64))> = [64, 256, 1024]
        .into_iter()
        .flat_map(|n| THEOREM_POINTS.into_iter().map(move |p| (n, p)))
        .collect();
    let results = ordered_map(&cases, workers, |&(n, (x, y))| -> Result<(bool, String)> {
        let p = SquarePoint::new(x, y)?;
        let d = decomposition(f, n, p)?;
        let recomputed = direct_total(f, n, p)?;
        let sum = d.e_term + d.f_term + d.g_residual;
        let bound = 4.0 * E * E / (2.0 * n as f64);
        let ok = (recomputed - sum).abs() <= tolerances::DECOMPOSITION_TOTAL && d.g_residual.abs() <= bound;
        Ok((ok, format!("n={n}@({x},{y}): |dT|={:.1e} G={:.3e} bound={bound:.3e}", (recomputed - sum).abs(), d.g_residual)))
    });
    let mut passed = true;
    let mut notes = Vec::new();
    for r in results {
        let (ok, note) = r?;
        passed &= ok;
        notes.push(note);
    }
    Ok((passed, notes.join("; ")))
}

fn extrapolator(_: usize) -> Result<(bool, String)> {
    let constant = extrapolate_values(&[0.75; 4])?;
    let first: Vec<f64> = (0..8).map(|m| 1.0 + (-(m as f64)).exp2()).collect();
    let half: Vec<f64> = (0..8).map(|m| 3.0 + (-(m as f64) / 2.0).exp2()).collect();
    let a = extrapolate_values(&first)?;
    let b = extrapolate_values(&half)?;
    let rate = |r: &crate::ExtrapolationResult| r.rate_estimate.unwrap_or(f64::NAN);
    let passed = constant.limit_estimate == 0.75
        && constant.residual_tail == 0.0
        && (a.limit_estimate - 1.0).abs() <= tolerances::EXTRAP_FIRST_ORDER_LIMIT
        && (rate(&a) - 1.0).abs() <= tolerances::EXTRAP_FIRST_ORDER_RATE
        && (b.limit_estimate - 3.0).abs() <= tolerances::EXTRAP_HALF_ORDER_LIMIT
        && (rate(&b) - 0.5).abs() <= tolerances::EXTRAP_HALF_ORDER_RATE;
    Ok((
        passed,
        format!(
            "1+2^-m: L={:.12} p={:.6}; 3+2^-m/2: L={:.9} p={:.5}",
            a.limit_estimate,
            rate(&a),
            b.limit_estimate,
            rate(&b)
        ),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relative_error_falls_back_to_absolute_at_zero() {
        assert_eq!(relative_error(0.01, 0.0), 0.01);
        assert!((relative_error(1.01, 1.0) - 0.01).abs() < 1e-12);
        assert!((relative_error(-0.99, -1.0) - 0.01).abs() < 1e-12);
    }

    #[test]
    fn criteria_are_numbered_in_order() {
        let ids: Vec<u8> = criteria().iter().map(|c| c.id).collect();
        assert_eq!(ids, (1..=8).collect::<Vec<_>>());
    }

    #[test]
    fn cheap_criteria_pass() {
        for c in criteria().into_iter().filter(|c| [1, 8].contains(&c.id)) {
            let o = c.run(1);
            assert!(o.passed, "{o:?}");
        }
    }
}
