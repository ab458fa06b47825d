//! Finite-difference partial derivatives on the unit interval and square.
//!
//! First derivatives use a step of `eps^(1/3)`, second (and mixed)
//! derivatives `eps^(1/4)`, both scaled by `max(1, |coordinate|)`. Points
//! closer than one step to the boundary switch to second-order one-sided
//! stencils so the function is never sampled outside `[0, 1]`.

use serde::{Deserialize, Serialize};

use crate::error::{check_unit, domain, Result};
use crate::function::SquarePoint;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DiffOrder {
    First,
    Second,
}

impl TryFrom<u8> for DiffOrder {
    type Error = crate::Error;

    fn try_from(v: u8) -> Result<Self> {
        match v {
            1 => Ok(Self::First),
            2 => Ok(Self::Second),
            _ => Err(domain(format!("derivative order must be 1 or 2, got {v}"))),
        }
    }
}

fn first_step(c: f64) -> f64 {
    f64::EPSILON.cbrt() * c.abs().max(1.0)
}

fn second_step(c: f64) -> f64 {
    f64::EPSILON.sqrt().sqrt() * c.abs().max(1.0)
}

/// Rounds `h` so that `c + h` is exactly representable as an offset.
fn representable(c: f64, h: f64) -> f64 {
    (c + h) - c
}

fn d1_with_step(f: &dyn Fn(f64) -> f64, c: f64, h: f64) -> f64 {
    let h = representable(c, h);
    // Stencils are written in differences against f(c) so that a
    // constant function yields exactly zero.
    if c - h >= 0.0 && c + h <= 1.0 {
        (f(c + h) - f(c - h)) / (2.0 * h)
    } else {
        let s = if c + 2.0 * h <= 1.0 { h } else { -h };
        let f0 = f(c);
        (4.0 * (f(c + s) - f0) - (f(c + 2.0 * s) - f0)) / (2.0 * s)
    }
}

fn d2_with_step(f: &dyn Fn(f64) -> f64, c: f64, h: f64) -> f64 {
    let h = representable(c, h);
    let h2 = h * h;
    let f0 = f(c);
    if c - h >= 0.0 && c + h <= 1.0 {
        ((f(c + h) - f0) + (f(c - h) - f0)) / h2
    } else {
        let s = if c + 3.0 * h <= 1.0 { h } else { -h };
        let d = |i: f64| f(c + i * s) - f0;
        (-5.0 * d(1.0) + 4.0 * d(2.0) - d(3.0)) / h2
    }
}

/// `f'(x)` by finite differences.
pub fn derivative_1d(f: &dyn Fn(f64) -> f64, x: f64) -> Result<f64> {
    check_unit("x", x)?;
    Ok(d1_with_step(f, x, first_step(x)))
}

/// `f''(x)` by finite differences.
pub fn second_derivative_1d(f: &dyn Fn(f64) -> f64, x: f64) -> Result<f64> {
    check_unit("x", x)?;
    Ok(d2_with_step(f, x, second_step(x)))
}

/// Finite-difference partials at a point. The Hessian entries are only
/// populated for [`DiffOrder::Second`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Partials {
    pub fx: f64,
    pub fy: f64,
    pub fxx: Option<f64>,
    pub fxy: Option<f64>,
    pub fyy: Option<f64>,
}

pub fn finite_difference_partials(
    f: &dyn Fn(f64, f64) -> f64,
    p: SquarePoint,
    order: DiffOrder,
) -> Partials {
    let (x, y) = (p.x, p.y);
    let fx = d1_with_step(&|s| f(s, y), x, first_step(x));
    let fy = d1_with_step(&|t| f(x, t), y, first_step(y));
    let mut out = Partials { fx, fy, fxx: None, fxy: None, fyy: None };
    if order == DiffOrder::Second {
        let (hx, hy) = (second_step(x), second_step(y));
        out.fxx = Some(d2_with_step(&|s| f(s, y), x, hx));
        out.fyy = Some(d2_with_step(&|t| f(x, t), y, hy));
        // Nested first-difference stencils; in the interior this is the
        // four-point cross stencil.
        out.fxy = Some(d1_with_step(&|s| d1_with_step(&|t| f(s, t), y, hy), x, hx));
    }
    out
}
