//! Exact split of `n (B_{n,2}^[2] f - B_n^[2] f)` into a first-order `x`
//! term, a first-order `y` term and the Taylor remainder.
//!
//! The remainder involves intermediate points that cannot be constructed,
//! so it is realised as `total - e_term - f_term`.

use serde::{Deserialize, Serialize};

use crate::akr::NodeTable;
use crate::bernstein::BasisContext;
use crate::error::{domain, Error, Result};
use crate::function::{Function2D, SquarePoint};
use crate::tensor::{double_sum, tensor_akr_apply_with, tensor_bernstein_apply_with, PointWeights};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Decomposition {
    pub n: usize,
    pub e_term: f64,
    pub f_term: f64,
    pub g_residual: f64,
    pub total: f64,
}

impl Decomposition {
    /// `(M_xx + 2 M_xy + M_yy) / (2n)` when `f` declares sup bounds.
    pub fn g_bound(&self, f: &Function2D) -> Option<f64> {
        f.sup_bounds().map(|b| b.taylor_remainder_bound(self.n))
    }
}

pub fn decomposition(f: &Function2D, n: usize, p: SquarePoint) -> Result<Decomposition> {
    if n < 2 {
        return Err(domain(format!("degree n = {n} must be at least 2")));
    }
    if !f.has_gradient() {
        return Err(Error::Capability(
            "decomposition needs exact first partials f_x and f_y".into(),
        ));
    }
    let table = NodeTable::new(n, 2)?;
    let ctx = BasisContext::new(n)?;
    let w = PointWeights::new(&ctx, p)?;
    let nf = n as f64;
    let grid = |k: usize| k as f64 / nf;
    let shift: Vec<f64> = (0..=n).map(|k| table.get(k) - grid(k)).collect();

    let e_term = nf
        * double_sum(&w, |k, l| {
            if shift[k] == 0.0 {
                0.0
            } else {
                shift[k] * f.fx(grid(k), grid(l)).unwrap_or(f64::NAN)
            }
        });
    let f_term = nf
        * double_sum(&w, |k, l| {
            if shift[l] == 0.0 {
                0.0
            } else {
                shift[l] * f.fy(grid(k), grid(l)).unwrap_or(f64::NAN)
            }
        });
    let total = nf * (tensor_akr_apply_with(f, &table, &w) - tensor_bernstein_apply_with(f, &w));
    Ok(Decomposition { n, e_term, f_term, g_residual: total - e_term - f_term, total })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::{Function1D, SecondPartialBounds};

    fn pt(x: f64, y: f64) -> SquarePoint {
        SquarePoint::new(x, y).unwrap()
    }

    #[test]
    fn constant_function_splits_to_zero() {
        let one = Function2D::new(|_, _| 1.0)
            .with_gradient(|_, _| 0.0, |_, _| 0.0)
            .with_hessian(|_, _| 0.0, |_, _| 0.0, |_, _| 0.0);
        for p in [pt(0.2, 0.7), pt(0.5, 0.5), pt(1.0, 1.0)] {
            let d = decomposition(&one, 16, p).unwrap();
            for v in [d.e_term, d.f_term, d.g_residual, d.total] {
                assert!(v.abs() < 1e-12, "{d:?}");
            }
        }
    }

    #[test]
    fn linear_in_x_has_no_remainder() {
        let s = Function2D::new(|s, _| s)
            .with_gradient(|_, _| 1.0, |_, _| 0.0)
            .with_hessian(|_, _| 0.0, |_, _| 0.0, |_, _| 0.0);
        let d = decomposition(&s, 8, pt(0.5, 0.5)).unwrap();
        assert!(d.f_term.abs() < 1e-12);
        assert!(d.g_residual.abs() < 1e-12);
        assert!((d.e_term - d.total).abs() < 1e-12);
    }

    #[test]
    fn exp_sum_remainder_within_bound() {
        let e = Function1D::new(f64::exp).with_d1(f64::exp).with_d2(f64::exp);
        let e2 = std::f64::consts::E.powi(2);
        let f = Function2D::separable(e.clone(), e)
            .with_sup_bounds(SecondPartialBounds { xx: e2, xy: e2, yy: e2 });
        let d = decomposition(&f, 64, pt(0.5, 0.5)).unwrap();
        let bound = 4.0 * e2 / (2.0 * 64.0);
        assert_eq!(d.g_bound(&f), Some(bound));
        assert!(d.g_residual.abs() <= bound, "{d:?}");
        assert!((d.e_term + d.f_term + d.g_residual - d.total).abs() <= 4.0 * f64::EPSILON * d.total.abs());
    }

    #[test]
    fn needs_gradient() {
        let bare = Function2D::new(|s, t| s * t);
        assert!(matches!(decomposition(&bare, 8, pt(0.5, 0.5)), Err(Error::Capability(_))));
        let s = Function2D::new(|s, _| s).with_gradient(|_, _| 1.0, |_, _| 0.0);
        assert!(decomposition(&s, 1, pt(0.5, 0.5)).is_err());
    }
}
