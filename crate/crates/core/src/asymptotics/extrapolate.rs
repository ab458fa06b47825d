//! Empirical rate estimation and one-step Richardson extrapolation for
//! series on a doubling schedule.
//!
//! With `a_m ~ L + c 2^(-p m)` successive differences shrink by `2^p`, so
//! `p = log2(d_{m-1} / d_m)`, and one Richardson step on the last pair gives
//! `L ~ a_last + d_last / (2^p - 1)`.

use serde::{Deserialize, Serialize};

use super::series::ConvergenceSeries;
use crate::error::{domain, Result};

/// How many trailing difference pairs feed the rate average.
const RATE_WINDOW: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExtrapolationResult {
    pub limit_estimate: f64,
    /// Exponent `p` in `a_n ~ L + c n^(-p)`; `None` when no trailing pair of
    /// differences admits an estimate (e.g. a constant series).
    pub rate_estimate: Option<f64>,
    /// `|a_last - a_prev|`.
    pub residual_tail: f64,
    /// The last three differences share a sign (zeros are neutral).
    pub monotone_tail: bool,
}

/// `log2(prev / cur)` when both differences are nonzero, share a sign and
/// shrink.
pub fn local_rate(prev: f64, cur: f64) -> Option<f64> {
    if prev == 0.0 || cur == 0.0 || prev.signum() != cur.signum() {
        return None;
    }
    let ratio = prev / cur;
    (ratio > 1.0 && ratio.is_finite()).then(|| ratio.log2())
}

pub fn extrapolate(series: &ConvergenceSeries) -> Result<ExtrapolationResult> {
    extrapolate_values(&series.values())
}

/// [`extrapolate`] on raw values `a_0, a_1, ...` taken at doubling degrees.
pub fn extrapolate_values(values: &[f64]) -> Result<ExtrapolationResult> {
    if values.len() < 4 {
        return Err(domain(format!(
            "extrapolation needs at least 4 entries, got {}",
            values.len()
        )));
    }
    if let Some(v) = values.iter().find(|v| !v.is_finite()) {
        return Err(domain(format!("non-finite series value {v}")));
    }
    let diffs: Vec<f64> = values.windows(2).map(|w| w[1] - w[0]).collect();
    let last = *values.last().expect("length checked");
    let d_last = *diffs.last().expect("length checked");

    let tail = &diffs[diffs.len() - 3..];
    let has_pos = tail.iter().any(|&d| d > 0.0);
    let has_neg = tail.iter().any(|&d| d < 0.0);
    let monotone_tail = !(has_pos && has_neg);

    let rates: Vec<f64> = diffs
        .windows(2)
        .rev()
        .take(RATE_WINDOW)
        .filter_map(|w| local_rate(w[0], w[1]))
        .collect();
    let rate_estimate = (!rates.is_empty()).then(|| rates.iter().sum::<f64>() / rates.len() as f64);

    let limit_estimate = match rate_estimate {
        Some(p) if monotone_tail && d_last != 0.0 => last + d_last / (p.exp2() - 1.0),
        _ => last,
    };
    Ok(ExtrapolationResult {
        limit_estimate,
        rate_estimate,
        residual_tail: d_last.abs(),
        monotone_tail,
    })
}
