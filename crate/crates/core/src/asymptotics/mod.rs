//! Asymptotic machinery: the remainder sum, the limit differential
//! operators, the E/F/G split, residual series and their extrapolation.

mod decomposition;
mod extrapolate;
mod finite_diff;
mod lemma;
mod series;
mod voronovskaja;

pub use decomposition::{decomposition, Decomposition};
pub use extrapolate::{extrapolate, extrapolate_values, local_rate, ExtrapolationResult};
pub use finite_diff::{
    derivative_1d, finite_difference_partials, second_derivative_1d, DiffOrder, Partials,
};
pub use lemma::lemma_sum;
pub use series::{
    limit_target, residual_series, residual_series_with_workers, residual_value,
    ConvergenceSeries, EvalPoint, OperatorKind, Schedule, SeriesEntry, Subject,
};
pub use voronovskaja::{
    classical_rhs_1d, classical_rhs_2d, drift_2d, resolve_partials, voronovskaja_rhs_1d,
    voronovskaja_rhs_2d, DerivativePolicy,
};
