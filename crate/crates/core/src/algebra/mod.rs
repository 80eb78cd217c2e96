//! Exact arithmetic substrate: rationals, truncated polynomial rings,
//! Laurent polynomials, truncated power series and matrices over Q.

pub mod laurent;
pub mod matrix;
pub mod qring;
pub mod rational;
pub mod series;

pub use laurent::LaurentPolynomial;
pub use matrix::{matrix_rank, RationalMatrix, SparseMatrix};
pub use qring::{qring_multiply, Exponents, QuotientRingElement, RingDescriptor, VarImage};
pub use rational::{parse_rational, rat, ratio, to_canonical, Rational};
pub use series::{series_reciprocal, SeriesCoefficient, TruncatedSeries, DEFAULT_ORDER};
