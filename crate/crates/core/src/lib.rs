//! Bernstein and Aldaz-Kounchev-Render (AKR) operators on `[0, 1]` and
//! `[0, 1]^2`, and numerical checks of their Voronovskaja-type asymptotics.
//!
//! ```
//! use akr_core::{akr_apply, Function1D};
//!
//! // B_{n,2} reproduces t^2.
//! let sq = Function1D::monomial(2);
//! let v = akr_apply(&sq, 16, 2, 0.4).unwrap();
//! assert!((v - 0.16).abs() < 1e-12);
//! ```

pub mod akr;
pub mod asymptotics;
pub mod bernstein;
pub mod catalog;
mod error;
pub mod function;
pub mod numeric;
pub mod parallel;
pub mod tensor;
pub mod verification;

pub use akr::{akr_apply, akr_node, build_node_table, fixed_point_error, remainder_r, NodeTable, Remainder};
pub use asymptotics::{
    classical_rhs_2d, decomposition, extrapolate, lemma_sum, residual_series, voronovskaja_rhs_1d,
    voronovskaja_rhs_2d, ConvergenceSeries, Decomposition, DerivativePolicy, ExtrapolationResult,
    OperatorKind, Schedule, Subject,
};
pub use bernstein::{basis_weight, bernstein_apply, BasisContext};
pub use catalog::{lookup, CatalogEntry};
pub use error::{Error, Result};
pub use function::{Function1D, Function2D, SecondPartialBounds, SquarePoint};
pub use tensor::{tensor_akr_apply, tensor_bernstein_apply};
