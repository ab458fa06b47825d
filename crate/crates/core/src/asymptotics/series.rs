//! Scaled residual sequences `a_n = n (Op_n f - f)(point)` along a
//! degree-doubling schedule.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::lemma::lemma_sum;
use super::voronovskaja::{
    classical_rhs_1d, classical_rhs_2d, drift_2d, voronovskaja_rhs_1d, voronovskaja_rhs_2d,
    DerivativePolicy,
};
use crate::akr::{akr_apply_with, NodeTable};
use crate::bernstein::{bernstein_apply_with, BasisContext};
use crate::error::{check_open_unit, check_unit, domain, Error, Result};
use crate::function::{Function1D, Function2D, SquarePoint};
use crate::parallel::ordered_map;
use crate::tensor::{tensor_akr_apply_with, tensor_bernstein_apply_with, PointWeights};

/// Which scaled residual a series tracks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OperatorKind {
    /// `n (B_n f - f)`
    #[serde(rename = "bernstein-1d")]
    Bernstein1d,
    /// `n (B_{n,j} f - f)`
    #[serde(rename = "akr-1d")]
    Akr1d,
    /// `n (B_n^[2] f - f)`
    #[serde(rename = "bernstein-2d")]
    Bernstein2d,
    /// `n (B_{n,j}^[2] f - f)`
    #[serde(rename = "akr-2d")]
    Akr2d,
    /// `n (B_{n,j}^[2] f - B_n^[2] f)`
    #[serde(rename = "akr-minus-bernstein-2d")]
    AkrMinusBernstein2d,
    /// `n sum_{k>=1} p_{n,k}(x) R(n,k)`
    LemmaSum,
}

impl OperatorKind {
    pub const ALL: [OperatorKind; 6] = [
        Self::Bernstein1d,
        Self::Akr1d,
        Self::Bernstein2d,
        Self::Akr2d,
        Self::AkrMinusBernstein2d,
        Self::LemmaSum,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Bernstein1d => "bernstein-1d",
            Self::Akr1d => "akr-1d",
            Self::Bernstein2d => "bernstein-2d",
            Self::Akr2d => "akr-2d",
            Self::AkrMinusBernstein2d => "akr-minus-bernstein-2d",
            Self::LemmaSum => "lemma-sum",
        }
    }

    pub fn is_2d(self) -> bool {
        matches!(self, Self::Bernstein2d | Self::Akr2d | Self::AkrMinusBernstein2d)
    }

    pub fn uses_akr_nodes(self) -> bool {
        matches!(self, Self::Akr1d | Self::Akr2d | Self::AkrMinusBernstein2d | Self::LemmaSum)
    }
}

impl fmt::Display for OperatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for OperatorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| domain(format!("unknown operator kind `{s}`")))
    }
}

/// Degrees `n0, 2 n0, ..., 2^doublings n0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Schedule {
    pub n0: usize,
    pub doublings: u32,
}

impl Schedule {
    /// `n0 = 64` with seven doublings, so the last degree is 8192.
    pub const DEFAULT: Schedule = Schedule { n0: 64, doublings: 7 };

    /// Fewest doublings that leave [`super::extrapolate`] four entries.
    pub const MIN_DOUBLINGS: u32 = 3;

    pub fn new(n0: usize, doublings: u32) -> Self {
        Self { n0, doublings }
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..=self.doublings).map(|m| self.n0 << m).collect()
    }

    fn validate(&self, j: usize) -> Result<()> {
        let min_n0 = j.max(2);
        if self.n0 < min_n0 {
            return Err(domain(format!("n0 = {} must be at least {min_n0}", self.n0)));
        }
        if self.doublings < Self::MIN_DOUBLINGS {
            return Err(domain(format!(
                "schedule with {} doublings is too short to extrapolate (need at least {})",
                self.doublings,
                Self::MIN_DOUBLINGS
            )));
        }
        if self.doublings > 20 || self.n0.checked_shl(self.doublings).map_or(true, |n| n >> self.doublings != self.n0) {
            return Err(domain("schedule overflows the degree range"));
        }
        Ok(())
    }
}

impl Default for Schedule {
    fn default() -> Self {
        Self::DEFAULT
    }
}

/// What a series is evaluated on.
#[derive(Debug, Clone, Copy)]
pub enum Subject<'a> {
    Line(&'a Function1D, f64),
    Square(&'a Function2D, SquarePoint),
    /// Only the point; used by [`OperatorKind::LemmaSum`].
    Point(f64),
}

/// Evaluation point recorded with a series: a number in 1D, a pair in 2D.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EvalPoint {
    Line(f64),
    Square([f64; 2]),
}

impl Subject<'_> {
    fn point(&self) -> EvalPoint {
        match *self {
            Subject::Line(_, x) | Subject::Point(x) => EvalPoint::Line(x),
            Subject::Square(_, p) => EvalPoint::Square([p.x, p.y]),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesEntry {
    pub n: usize,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceSeries {
    pub kind: OperatorKind,
    pub j: usize,
    pub point: EvalPoint,
    entries: Vec<SeriesEntry>,
}

impl ConvergenceSeries {
    /// Checks that degrees double and values are finite.
    pub fn new(kind: OperatorKind, j: usize, point: EvalPoint, entries: Vec<SeriesEntry>) -> Result<Self> {
        if entries.is_empty() {
            return Err(domain("series has no entries"));
        }
        for w in entries.windows(2) {
            if w[1].n != 2 * w[0].n {
                return Err(domain(format!("degree {} does not double {}", w[1].n, w[0].n)));
            }
        }
        if let Some(e) = entries.iter().find(|e| !e.value.is_finite()) {
            return Err(domain(format!("non-finite value {} at n = {}", e.value, e.n)));
        }
        Ok(Self { kind, j, point, entries })
    }

    pub fn entries(&self) -> &[SeriesEntry] {
        &self.entries
    }

    pub fn values(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.value).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `a_m - a_{m-1}`, `None` for the first entry.
    pub fn differences(&self) -> Vec<Option<f64>> {
        std::iter::once(None)
            .chain(self.entries.windows(2).map(|w| Some(w[1].value - w[0].value)))
            .collect()
    }

    /// Local rate `log2(d_{m-1} / d_m)` for each entry where both
    /// differences exist, share a sign and shrink.
    pub fn local_rates(&self) -> Vec<Option<f64>> {
        let d = self.differences();
        (0..d.len())
            .map(|m| match (m.checked_sub(1).and_then(|i| d[i]), d[m]) {
                (Some(prev), Some(cur)) => super::extrapolate::local_rate(prev, cur),
                _ => None,
            })
            .collect()
    }
}

fn check_subject(kind: OperatorKind, j: usize, subject: &Subject<'_>) -> Result<()> {
    let shape_ok = match (kind, subject) {
        (OperatorKind::LemmaSum, Subject::Point(_)) => true,
        (OperatorKind::Bernstein1d | OperatorKind::Akr1d, Subject::Line(..)) => true,
        (k, Subject::Square(..)) => k.is_2d(),
        _ => false,
    };
    if !shape_ok {
        return Err(domain(format!("operator kind {kind} does not match the supplied function/point")));
    }
    if kind == OperatorKind::LemmaSum && j != 2 {
        return Err(domain("the lemma sum is defined for j = 2 only"));
    }
    if kind.uses_akr_nodes() && j < 2 {
        return Err(domain(format!("exponent j = {j} must be at least 2")));
    }
    let strict = kind.uses_akr_nodes();
    let check = |name: &str, v: f64| if strict { check_open_unit(name, v) } else { check_unit(name, v) };
    match *subject {
        Subject::Line(_, x) | Subject::Point(x) => check("x", x),
        Subject::Square(_, p) => check("x", p.x).and(check("y", p.y)),
    }
}

/// One scaled residual `a_n`.
pub fn residual_value(kind: OperatorKind, j: usize, subject: &Subject<'_>, n: usize) -> Result<f64> {
    check_subject(kind, j, subject)?;
    let nf = n as f64;
    if let Subject::Point(x) = *subject {
        return lemma_sum(n, x);
    }
    let ctx = BasisContext::new(n)?;
    let table = if kind.uses_akr_nodes() { Some(NodeTable::new(n, j)?) } else { None };
    let value = match (*subject, table) {
        (Subject::Line(f, x), None) => nf * (bernstein_apply_with(&ctx, f, x)? - f.eval(x)),
        (Subject::Line(f, x), Some(t)) => nf * (akr_apply_with(&ctx, &t, f, x)? - f.eval(x)),
        (Subject::Square(f, p), table) => {
            let w = PointWeights::new(&ctx, p)?;
            match (kind, table) {
                (OperatorKind::Bernstein2d, _) => nf * (tensor_bernstein_apply_with(f, &w) - f.eval(p.x, p.y)),
                (OperatorKind::Akr2d, Some(t)) => nf * (tensor_akr_apply_with(f, &t, &w) - f.eval(p.x, p.y)),
                (OperatorKind::AkrMinusBernstein2d, Some(t)) => {
                    nf * (tensor_akr_apply_with(f, &t, &w) - tensor_bernstein_apply_with(f, &w))
                }
                _ => unreachable!("subject shape checked above"),
            }
        }
        (Subject::Point(_), _) => unreachable!("handled above"),
    };
    Ok(value)
}

/// Evaluates the residual series sequentially.
pub fn residual_series(
    kind: OperatorKind,
    j: usize,
    subject: Subject<'_>,
    schedule: Schedule,
) -> Result<ConvergenceSeries> {
    residual_series_with_workers(kind, j, subject, schedule, 1)
}

/// Evaluates schedule entries on up to `workers` threads; entries are
/// assembled in schedule order.
pub fn residual_series_with_workers(
    kind: OperatorKind,
    j: usize,
    subject: Subject<'_>,
    schedule: Schedule,
    workers: usize,
) -> Result<ConvergenceSeries> {
    check_subject(kind, j, &subject)?;
    schedule.validate(if kind.uses_akr_nodes() { j } else { 2 })?;
    let degrees = schedule.degrees();
    let values = ordered_map(&degrees, workers, |&n| residual_value(kind, j, &subject, n));
    let entries = degrees
        .iter()
        .zip(values)
        .map(|(&n, v)| v.map(|value| SeriesEntry { n, value }))
        .collect::<Result<Vec<_>>>()?;
    ConvergenceSeries::new(kind, j, subject.point(), entries)
}

/// The proven limit of the series, where one is known. `None` for AKR kinds
/// with `j > 2`: no closed-form limit is asserted for those.
pub fn limit_target(
    kind: OperatorKind,
    j: usize,
    subject: &Subject<'_>,
    policy: DerivativePolicy,
) -> Result<Option<f64>> {
    check_subject(kind, j, subject)?;
    if kind.uses_akr_nodes() && j != 2 {
        return Ok(None);
    }
    let v = match (kind, *subject) {
        (OperatorKind::LemmaSum, _) => 0.0,
        (OperatorKind::Bernstein1d, Subject::Line(f, x)) => classical_rhs_1d(f, x, policy)?,
        (OperatorKind::Akr1d, Subject::Line(f, x)) => voronovskaja_rhs_1d(f, x, policy)?,
        (OperatorKind::Bernstein2d, Subject::Square(f, p)) => classical_rhs_2d(f, p, policy)?,
        (OperatorKind::Akr2d, Subject::Square(f, p)) => voronovskaja_rhs_2d(f, p, policy)?,
        (OperatorKind::AkrMinusBernstein2d, Subject::Square(f, p)) => drift_2d(f, p, policy)?,
        _ => unreachable!("subject shape checked above"),
    };
    Ok(Some(v))
}
