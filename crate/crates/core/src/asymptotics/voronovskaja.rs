//! Limit differential operators of `n (Op_n f - f)`.
//!
//! | operator                 | limit                                                  |
//! |--------------------------|--------------------------------------------------------|
//! | `B_n`                    | `x(1-x)/2 f''`                                         |
//! | `B_{n,2}`                | `x(1-x)/2 f'' - (1-x)/2 f'`                            |
//! | `B_n^[2]`                | `x(1-x)/2 f_xx + y(1-y)/2 f_yy`                        |
//! | `B_{n,2}^[2]`            | the above `- (1-x)/2 f_x - (1-y)/2 f_y`                |
//! | `B_{n,2}^[2] - B_n^[2]`  | `-(1-x)/2 f_x - (1-y)/2 f_y` (drift)                   |

use serde::{Deserialize, Serialize};

use super::finite_diff::{
    derivative_1d, finite_difference_partials, second_derivative_1d, DiffOrder, Partials,
};
use crate::error::{check_open_unit, check_unit, Error, Result};
use crate::function::{Function1D, Function2D, SquarePoint};

/// Where derivative values may come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum DerivativePolicy {
    /// Only exact derivatives carried by the function.
    ExactOnly,
    /// Exact derivatives when present, finite differences otherwise.
    #[default]
    AllowFiniteDifference,
}

fn missing(what: &str) -> Error {
    Error::Capability(format!(
        "{what} not available and finite differences are disabled"
    ))
}

fn first_and_second_1d(f: &Function1D, x: f64, policy: DerivativePolicy) -> Result<(f64, f64)> {
    let fd = policy == DerivativePolicy::AllowFiniteDifference;
    let eval = |t: f64| f.eval(t);
    let d1 = match f.d1(x) {
        Some(v) => v,
        None if fd => derivative_1d(&eval, x)?,
        None => return Err(missing("first derivative")),
    };
    let d2 = match f.d2(x) {
        Some(v) => v,
        None if fd => second_derivative_1d(&eval, x)?,
        None => return Err(missing("second derivative")),
    };
    Ok((d1, d2))
}

/// All five partials at `p`, exact where available.
pub fn resolve_partials(f: &Function2D, p: SquarePoint, policy: DerivativePolicy) -> Result<Partials> {
    let (x, y) = (p.x, p.y);
    let exact = [f.fx(x, y), f.fy(x, y), f.fxx(x, y), f.fxy(x, y), f.fyy(x, y)];
    if exact.iter().all(Option::is_some) {
        return Ok(Partials {
            fx: exact[0].unwrap(),
            fy: exact[1].unwrap(),
            fxx: exact[2],
            fxy: exact[3],
            fyy: exact[4],
        });
    }
    if policy == DerivativePolicy::ExactOnly {
        return Err(missing("partial derivatives"));
    }
    let fd = finite_difference_partials(&|s, t| f.eval(s, t), p, DiffOrder::Second);
    Ok(Partials {
        fx: exact[0].unwrap_or(fd.fx),
        fy: exact[1].unwrap_or(fd.fy),
        fxx: exact[2].or(fd.fxx),
        fxy: exact[3].or(fd.fxy),
        fyy: exact[4].or(fd.fyy),
    })
}

/// `x(1-x)/2 f''(x)`, the limit for the classical Bernstein operator.
pub fn classical_rhs_1d(f: &Function1D, x: f64, policy: DerivativePolicy) -> Result<f64> {
    check_unit("x", x)?;
    let (_, d2) = first_and_second_1d(f, x, policy)?;
    Ok(x * (1.0 - x) / 2.0 * d2)
}

/// `x(1-x)/2 f''(x) - (1-x)/2 f'(x)`, the limit for `B_{n,2}`.
pub fn voronovskaja_rhs_1d(f: &Function1D, x: f64, policy: DerivativePolicy) -> Result<f64> {
    check_open_unit("x", x)?;
    let (d1, d2) = first_and_second_1d(f, x, policy)?;
    Ok(x * (1.0 - x) / 2.0 * d2 - (1.0 - x) / 2.0 * d1)
}

/// `x(1-x)/2 f_xx + y(1-y)/2 f_yy`, the limit for `B_n^[2]`.
pub fn classical_rhs_2d(f: &Function2D, p: SquarePoint, policy: DerivativePolicy) -> Result<f64> {
    let d = resolve_partials(f, p, policy)?;
    let (x, y) = (p.x, p.y);
    Ok(x * (1.0 - x) / 2.0 * d.fxx.unwrap_or(f64::NAN) + y * (1.0 - y) / 2.0 * d.fyy.unwrap_or(f64::NAN))
}

/// `-(1-x)/2 f_x - (1-y)/2 f_y`, the limit of `n (B_{n,2}^[2] f - B_n^[2] f)`.
pub fn drift_2d(f: &Function2D, p: SquarePoint, policy: DerivativePolicy) -> Result<f64> {
    check_open_unit("x", p.x)?;
    check_open_unit("y", p.y)?;
    let d = resolve_partials(f, p, policy)?;
    Ok(-(1.0 - p.x) / 2.0 * d.fx - (1.0 - p.y) / 2.0 * d.fy)
}

/// Limit of `n (B_{n,2}^[2] f - f)`: the classical operator plus the drift.
pub fn voronovskaja_rhs_2d(f: &Function2D, p: SquarePoint, policy: DerivativePolicy) -> Result<f64> {
    check_open_unit("x", p.x)?;
    check_open_unit("y", p.y)?;
    let d = resolve_partials(f, p, policy)?;
    let (x, y) = (p.x, p.y);
    Ok(x * (1.0 - x) / 2.0 * d.fxx.unwrap_or(f64::NAN)
        + y * (1.0 - y) / 2.0 * d.fyy.unwrap_or(f64::NAN)
        - (1.0 - x) / 2.0 * d.fx
        - (1.0 - y) / 2.0 * d.fy)
}
