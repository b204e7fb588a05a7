//! Integrals over symplectic and hyperkähler quotients from fixed-point data.
//!
//! The crate evaluates quotient integrals exactly by Atiyah–Bott
//! localization followed by Laurent-coefficient extraction, and carries an
//! independent floating-point oracle (Gaussian-mollified Fourier limits and
//! Cauchy contour integrals) for cross-checking the exact results.
//!
//! * [`algebra`]: complex rationals, symbolic prefactors, Laurent series.
//! * [`geometry`]: fixed-point atlases, validation, builtin examples.
//! * [`localization`]: the fixed-point sum.
//! * [`reduction`]: quotient-integration engines behind a named registry.
//! * [`oracle`]: numeric verification.
//! * [`corpus`]: the bundled golden example files.

pub mod algebra;
pub mod corpus;
pub mod error;
pub mod geometry;
pub mod localization;
pub mod oracle;
pub mod reduction;

pub use algebra::{ComplexRational, LaurentSeries, SymbolicConstant};
pub use error::{AlgebraError, AtlasError, EngineError, Error, OracleError};
pub use geometry::{FixedPointAtlas, FixedPointDatum, GroupSpec, RootSystemData};
pub use reduction::{ConventionProfile, ReductionReport};
