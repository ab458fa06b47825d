//! Named test functions with exact derivatives and sup-norm metadata.
//!
//! The names are part of the command-line contract:
//!
//! | name             | arity | f                                      |
//! |------------------|-------|----------------------------------------|
//! | `const1`         | 1     | `1`                                    |
//! | `e1`, `e2`, `e3` | 1     | `t`, `t^2`, `t^3`                      |
//! | `monomial(p,q)`  | 2     | `s^p t^q`                              |
//! | `exp-sum`        | 2     | `exp(s + t)`                           |
//! | `sinpix-cospiy`  | 2     | `sin(pi s) cos(pi t)`                  |
//! | `runge-2d`       | 2     | `1 / (1 + 25 (s - 1/2)^2 + 25 (t - 1/2)^2)` |
//!
//! New entries go in [`lookup`]; an expression parser would slot in beside
//! [`parse_name`].

use std::f64::consts::{E, PI};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::function::{Function1D, Function2D, SecondPartialBounds};

/// Documented names, in display order.
pub const CATALOG_NAMES: [&str; 8] = [
    "const1",
    "e1",
    "e2",
    "e3",
    "monomial(p,q)",
    "exp-sum",
    "sinpix-cospiy",
    "runge-2d",
];

/// Largest exponent accepted by `monomial(p,q)`.
pub const MAX_MONOMIAL_DEGREE: u32 = 64;

/// A parsed catalog name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CatalogName {
    Const1,
    /// `t^j` for `j` in 1..=3.
    Power(u32),
    Monomial(u32, u32),
    ExpSum,
    SinPiXCosPiY,
    Runge2d,
}

impl fmt::Display for CatalogName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Const1 => f.write_str("const1"),
            Self::Power(j) => write!(f, "e{j}"),
            Self::Monomial(p, q) => write!(f, "monomial({p},{q})"),
            Self::ExpSum => f.write_str("exp-sum"),
            Self::SinPiXCosPiY => f.write_str("sinpix-cospiy"),
            Self::Runge2d => f.write_str("runge-2d"),
        }
    }
}

fn unknown(name: &str) -> Error {
    Error::UnknownFunction { name: name.to_owned(), valid: CATALOG_NAMES.join(", ") }
}

fn parse_exponent(s: &str, name: &str) -> Result<u32> {
    let s = s.trim();
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(unknown(name));
    }
    match s.parse::<u32>() {
        Ok(v) if v <= MAX_MONOMIAL_DEGREE => Ok(v),
        _ => Err(domain(format!(
            "monomial exponent `{s}` exceeds {MAX_MONOMIAL_DEGREE}"
        ))),
    }
}

/// Parses a catalog identifier. Whitespace is allowed only inside the
/// parentheses of `monomial(p,q)`.
pub fn parse_name(name: &str) -> Result<CatalogName> {
    Ok(match name {
        "const1" => CatalogName::Const1,
        "e1" => CatalogName::Power(1),
        "e2" => CatalogName::Power(2),
        "e3" => CatalogName::Power(3),
        "exp-sum" => CatalogName::ExpSum,
        "sinpix-cospiy" => CatalogName::SinPiXCosPiY,
        "runge-2d" => CatalogName::Runge2d,
        other => {
            let args = other
                .strip_prefix("monomial(")
                .and_then(|r| r.strip_suffix(')'))
                .ok_or_else(|| unknown(other))?;
            let (p, q) = args.split_once(',').ok_or_else(|| unknown(other))?;
            CatalogName::Monomial(parse_exponent(p, other)?, parse_exponent(q, other)?)
        }
    })
}

#[derive(Debug, Clone)]
pub enum CatalogFunction {
    Line(Function1D),
    Square(Function2D),
}

/// Sup-norm of `f''` in 1D, of the three second partials in 2D.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum SupBounds {
    Line(f64),
    Square(SecondPartialBounds),
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: CatalogName,
    pub function: CatalogFunction,
    pub sup_bounds: SupBounds,
}

impl CatalogEntry {
    pub fn arity(&self) -> u8 {
        match self.function {
            CatalogFunction::Line(_) => 1,
            CatalogFunction::Square(_) => 2,
        }
    }

    pub fn as_1d(&self) -> Result<&Function1D> {
        match &self.function {
            CatalogFunction::Line(f) => Ok(f),
            CatalogFunction::Square(_) => Err(domain(format!("`{}` is a function of two variables", self.name))),
        }
    }

    pub fn as_2d(&self) -> Result<&Function2D> {
        match &self.function {
            CatalogFunction::Square(f) => Ok(f),
            CatalogFunction::Line(_) => Err(domain(format!("`{}` is a function of one variable", self.name))),
        }
    }

    /// Separable entries carry their factors (see [`Function2D::factors`]).
    pub fn separable(&self) -> bool {
        matches!(&self.function, CatalogFunction::Square(f) if f.factors().is_some())
    }
}

fn line(name: CatalogName, f: Function1D, sup: f64) -> CatalogEntry {
    CatalogEntry { name, function: CatalogFunction::Line(f), sup_bounds: SupBounds::Line(sup) }
}

fn square(name: CatalogName, f: Function2D) -> CatalogEntry {
    let b = f.sup_bounds().expect("catalog 2D entries declare sup bounds");
    CatalogEntry { name, function: CatalogFunction::Square(f), sup_bounds: SupBounds::Square(b) }
}

fn exp_1d() -> Function1D {
    Function1D::new(f64::exp).with_d1(f64::exp).with_d2(f64::exp)
}

fn runge() -> Function2D {
    // D = 1 + 25 u^2 + 25 v^2 with u = s - 1/2, v = t - 1/2.
    fn denom(s: f64, t: f64) -> f64 {
        let (u, v) = (s - 0.5, t - 0.5);
        1.0 + 25.0 * (u * u + v * v)
    }
    Function2D::new(|s, t| 1.0 / denom(s, t))
        .with_gradient(
            |s, t| -50.0 * (s - 0.5) / denom(s, t).powi(2),
            |s, t| -50.0 * (t - 0.5) / denom(s, t).powi(2),
        )
        .with_hessian(
            |s, t| {
                let (d, u) = (denom(s, t), s - 0.5);
                (-50.0 * d + 5000.0 * u * u) / d.powi(3)
            },
            |s, t| 5000.0 * (s - 0.5) * (t - 0.5) / denom(s, t).powi(3),
            |s, t| {
                let (d, v) = (denom(s, t), t - 0.5);
                (-50.0 * d + 5000.0 * v * v) / d.powi(3)
            },
        )
        // |f_xx| peaks at the centre; |f_xy| peaks where 25u^2 = 25v^2 = 1/4,
        // at 200 (1/4) / (3/2)^3 = 14.8148...
        .with_sup_bounds(SecondPartialBounds { xx: 50.0, xy: 14.815, yy: 50.0 })
}

/// Resolves a catalog name to a fully populated entry.
pub fn lookup(name: &str) -> Result<CatalogEntry> {
    let parsed = parse_name(name)?;
    Ok(match parsed {
        CatalogName::Const1 => line(parsed, Function1D::constant(1.0), 0.0),
        CatalogName::Power(j) => {
            let sup = (j * j.saturating_sub(1)) as f64;
            line(parsed, Function1D::monomial(j), sup)
        }
        CatalogName::Monomial(p, q) => {
            let (pf, qf) = (p as f64, q as f64);
            let bounds = SecondPartialBounds {
                xx: pf * (pf - 1.0).max(0.0),
                xy: pf * qf,
                yy: qf * (qf - 1.0).max(0.0),
            };
            let f = Function2D::separable(Function1D::monomial(p), Function1D::monomial(q))
                .with_sup_bounds(bounds);
            square(parsed, f)
        }
        CatalogName::ExpSum => {
            let e2 = E * E;
            let f = Function2D::separable(exp_1d(), exp_1d())
                .with_sup_bounds(SecondPartialBounds { xx: e2, xy: e2, yy: e2 });
            square(parsed, f)
        }
        CatalogName::SinPiXCosPiY => {
            let sin = Function1D::new(|s: f64| (PI * s).sin())
                .with_d1(|s: f64| PI * (PI * s).cos())
                .with_d2(|s: f64| -PI * PI * (PI * s).sin());
            let cos = Function1D::new(|t: f64| (PI * t).cos())
                .with_d1(|t: f64| -PI * (PI * t).sin())
                .with_d2(|t: f64| -PI * PI * (PI * t).cos());
            let p2 = PI * PI;
            let f = Function2D::separable(sin, cos)
                .with_sup_bounds(SecondPartialBounds { xx: p2, xy: p2, yy: p2 });
            square(parsed, f)
        }
        CatalogName::Runge2d => square(parsed, runge()),
    })
}

/// Concrete names used to exercise the catalog (`monomial` instantiated).
pub fn sample_names() -> Vec<String> {
    let mut v: Vec<String> = CATALOG_NAMES
        .iter()
        .filter(|n| !n.starts_with("monomial"))
        .map(|s| s.to_string())
        .collect();
    v.extend(["monomial(0,0)", "monomial(1,0)", "monomial(2,3)", "monomial(4,1)"].map(String::from));
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn documented_examples() {
        let c = lookup("const1").unwrap();
        let f = c.as_1d().unwrap();
        assert_eq!(f.eval(0.3), 1.0);
        assert_eq!((f.d1(0.3), f.d2(0.3)), (Some(0.0), Some(0.0)));

        let e2 = lookup("e2").unwrap();
        let f = e2.as_1d().unwrap();
        assert_eq!(f.eval(0.5), 0.25);
        assert_eq!(f.d2(0.9), Some(2.0));

        let es = lookup("exp-sum").unwrap();
        let f = es.as_2d().unwrap();
        let v = (0.3f64 + 0.4).exp();
        for d in [f.fx(0.3, 0.4), f.fy(0.3, 0.4), f.fxx(0.3, 0.4), f.fxy(0.3, 0.4), f.fyy(0.3, 0.4)] {
            assert!((d.unwrap() - v).abs() < 1e-15);
        }
        assert_eq!(es.sup_bounds, SupBounds::Square(SecondPartialBounds { xx: E * E, xy: E * E, yy: E * E }));
        assert!(es.separable());
        assert!(!lookup("runge-2d").unwrap().separable());
    }

    #[test]
    fn names_round_trip() {
        for name in sample_names() {
            let entry = lookup(&name).unwrap();
            assert_eq!(entry.name.to_string(), name);
        }
        assert_eq!(parse_name("monomial( 2 , 3 )").unwrap(), CatalogName::Monomial(2, 3));
    }

    #[test]
    fn unknown_names_list_valid_ones() {
        for bad in ["", "e4", "exp", "monomial(1)", "monomial(a,b)", "monomial(1,2", " e1", "monomial(-1,2)"] {
            match lookup(bad) {
                Err(Error::UnknownFunction { valid, .. }) => assert!(valid.contains("runge-2d")),
                other => panic!("{bad:?}: {other:?}"),
            }
        }
        assert!(matches!(lookup("monomial(65,0)"), Err(Error::Domain(_))));
        assert!(matches!(lookup("monomial(99999999999,0)"), Err(Error::Domain(_))));
    }

    #[test]
    fn arity_accessors() {
        assert_eq!(lookup("e3").unwrap().arity(), 1);
        assert!(lookup("e3").unwrap().as_2d().is_err());
        assert_eq!(lookup("runge-2d").unwrap().arity(), 2);
        assert!(lookup("runge-2d").unwrap().as_1d().is_err());
    }
}
