//! Real functions on the unit interval and the unit square, optionally
//! carrying exact derivatives.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{check_unit, Result};

type Map1 = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
type Map2 = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

/// A function on `[0, 1]` with optional first and second derivatives.
#[derive(Clone)]
pub struct Function1D {
    eval: Map1,
    d1: Option<Map1>,
    d2: Option<Map1>,
}

impl Function1D {
    pub fn new(eval: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self { eval: Arc::new(eval), d1: None, d2: None }
    }

    pub fn with_d1(mut self, d1: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        self.d1 = Some(Arc::new(d1));
        self
    }

    pub fn with_d2(mut self, d2: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        self.d2 = Some(Arc::new(d2));
        self
    }

    pub fn constant(c: f64) -> Self {
        Self::new(move |_| c).with_d1(|_| 0.0).with_d2(|_| 0.0)
    }

    /// The monomial `t^p`.
    pub fn monomial(p: u32) -> Self {
        let p_i = p as i32;
        let pf = p as f64;
        Self::new(move |t| t.powi(p_i))
            .with_d1(move |t| if p == 0 { 0.0 } else { pf * t.powi(p_i - 1) })
            .with_d2(move |t| if p < 2 { 0.0 } else { pf * (pf - 1.0) * t.powi(p_i - 2) })
    }

    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        (self.eval)(x)
    }

    pub fn d1(&self, x: f64) -> Option<f64> {
        self.d1.as_ref().map(|d| d(x))
    }

    pub fn d2(&self, x: f64) -> Option<f64> {
        self.d2.as_ref().map(|d| d(x))
    }

    pub fn has_derivatives(&self) -> bool {
        self.d1.is_some() && self.d2.is_some()
    }
}

impl fmt::Debug for Function1D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Function1D")
            .field("d1", &self.d1.is_some())
            .field("d2", &self.d2.is_some())
            .finish()
    }
}

/// Sup-norms of the second partials over `[0, 1]^2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SecondPartialBounds {
    pub xx: f64,
    pub xy: f64,
    pub yy: f64,
}

impl SecondPartialBounds {
    /// Upper bound on the Taylor remainder term of the E/F/G split at degree `n`:
    /// `(M_xx + 2 M_xy + M_yy) / (2n)`.
    pub fn taylor_remainder_bound(&self, n: usize) -> f64 {
        (self.xx + 2.0 * self.xy + self.yy) / (2.0 * n as f64)
    }
}

/// A point of the closed unit square.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SquarePoint {
    pub x: f64,
    pub y: f64,
}

impl SquarePoint {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        check_unit("x", x)?;
        check_unit("y", y)?;
        Ok(Self { x, y })
    }
}

/// A function on `[0, 1]^2` with optional partials up to order two.
///
/// When built with [`Function2D::separable`] the factors are kept, and the
/// tensor-product operators evaluate it as a product of two 1D sums.
#[derive(Clone)]
pub struct Function2D {
    eval: Map2,
    fx: Option<Map2>,
    fy: Option<Map2>,
    fxx: Option<Map2>,
    fxy: Option<Map2>,
    fyy: Option<Map2>,
    sup_bounds: Option<SecondPartialBounds>,
    factors: Option<(Function1D, Function1D)>,
}

impl Function2D {
    pub fn new(eval: impl Fn(f64, f64) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            eval: Arc::new(eval),
            fx: None,
            fy: None,
            fxx: None,
            fxy: None,
            fyy: None,
            sup_bounds: None,
            factors: None,
        }
    }

    pub fn with_gradient(
        mut self,
        fx: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
        fy: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        self.fx = Some(Arc::new(fx));
        self.fy = Some(Arc::new(fy));
        self
    }

    pub fn with_hessian(
        mut self,
        fxx: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
        fxy: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
        fyy: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        self.fxx = Some(Arc::new(fxx));
        self.fxy = Some(Arc::new(fxy));
        self.fyy = Some(Arc::new(fyy));
        self
    }

    pub fn with_sup_bounds(mut self, bounds: SecondPartialBounds) -> Self {
        self.sup_bounds = Some(bounds);
        self
    }

    /// `f(s, t) = g(s) h(t)`. Partials are populated from the factors'
    /// derivatives when both factors carry them.
    pub fn separable(g: Function1D, h: Function1D) -> Self {
        let (g0, h0) = (g.clone(), h.clone());
        let mut f = Self::new(move |s, t| g0.eval(s) * h0.eval(t));
        if g.has_derivatives() && h.has_derivatives() {
            let (ga, ha) = (g.clone(), h.clone());
            let (gb, hb) = (g.clone(), h.clone());
            let (gc, hc) = (g.clone(), h.clone());
            let (gd, hd) = (g.clone(), h.clone());
            let (ge, he) = (g.clone(), h.clone());
            f = f
                .with_gradient(
                    move |s, t| ga.d1(s).unwrap_or(f64::NAN) * ha.eval(t),
                    move |s, t| gb.eval(s) * hb.d1(t).unwrap_or(f64::NAN),
                )
                .with_hessian(
                    move |s, t| gc.d2(s).unwrap_or(f64::NAN) * hc.eval(t),
                    move |s, t| gd.d1(s).unwrap_or(f64::NAN) * hd.d1(t).unwrap_or(f64::NAN),
                    move |s, t| ge.eval(s) * he.d2(t).unwrap_or(f64::NAN),
                );
        }
        f.factors = Some((g, h));
        f
    }

    /// Drops the separability declaration so operators take the general
    /// double-sum path.
    pub fn without_factors(mut self) -> Self {
        self.factors = None;
        self
    }

    #[inline]
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        (self.eval)(x, y)
    }

    pub fn fx(&self, x: f64, y: f64) -> Option<f64> {
        self.fx.as_ref().map(|d| d(x, y))
    }

    pub fn fy(&self, x: f64, y: f64) -> Option<f64> {
        self.fy.as_ref().map(|d| d(x, y))
    }

    pub fn fxx(&self, x: f64, y: f64) -> Option<f64> {
        self.fxx.as_ref().map(|d| d(x, y))
    }

    pub fn fxy(&self, x: f64, y: f64) -> Option<f64> {
        self.fxy.as_ref().map(|d| d(x, y))
    }

    pub fn fyy(&self, x: f64, y: f64) -> Option<f64> {
        self.fyy.as_ref().map(|d| d(x, y))
    }

    pub fn has_gradient(&self) -> bool {
        self.fx.is_some() && self.fy.is_some()
    }

    pub fn has_hessian(&self) -> bool {
        self.fxx.is_some() && self.fxy.is_some() && self.fyy.is_some()
    }

    pub fn sup_bounds(&self) -> Option<SecondPartialBounds> {
        self.sup_bounds
    }

    pub fn factors(&self) -> Option<(&Function1D, &Function1D)> {
        self.factors.as_ref().map(|(g, h)| (g, h))
    }
}

impl fmt::Debug for Function2D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Function2D")
            .field("gradient", &self.has_gradient())
            .field("hessian", &self.has_hessian())
            .field("sup_bounds", &self.sup_bounds)
            .field("separable", &self.factors.is_some())
            .finish()
    }
}
