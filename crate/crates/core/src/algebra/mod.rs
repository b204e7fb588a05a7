//! Exact arithmetic: complex rationals, symbolic prefactors and truncated
//! multivariate Laurent series.

mod complex_rational;
mod series;
mod symbolic;
pub mod wire;

pub use complex_rational::ComplexRational;
pub(crate) use complex_rational::rational_to_f64;
pub use series::{Exponent, LaurentSeries, EXACT};
pub use symbolic::SymbolicConstant;
