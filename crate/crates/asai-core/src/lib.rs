//! Exact computation of classical and p-adic Asai L-function data attached
//! to Hilbert modular eigenforms over real quadratic fields.
//!
//! The crate is organised around an exact-arithmetic substrate (rationals,
//! cyclotomic numbers, truncated formal series, rational functions, finite
//! precision p-adics) on top of which sit the eigenform data model, the
//! local factor assembly, the local zeta-integral engine, and the
//! finite-precision Iwasawa-algebra measure toolkit.

pub mod scalar;
pub mod rational;
pub mod series;
pub mod poly;
pub mod ratfunc;
pub mod mpoly;
pub mod cyclotomic;
pub mod padic;
pub mod dirichlet;
pub mod hilbert;
pub mod asai;
pub mod localzeta;
pub mod iwasawa;

pub use cyclotomic::Cyclotomic;
pub use mpoly::{MPoly, VarSet};
pub use rational::Rational;
pub use scalar::{FieldScalar, Scalar};

/// Formal power series over the exact rationals.
pub type SeriesQ = series::FormalSeries<Rational>;
/// Formal power series with cyclotomic coefficients.
pub type SeriesCyc = series::FormalSeries<Cyclotomic>;
/// Formal power series with multivariate Laurent-polynomial coefficients.
pub type SeriesPoly = series::FormalSeries<MPoly>;
/// Rational functions in one variable over the rationals.
pub type RatFuncQ = ratfunc::RationalFunction<Rational>;
/// Rational functions in one variable over Laurent polynomials.
pub type RatFuncPoly = ratfunc::RationalFunction<MPoly>;
