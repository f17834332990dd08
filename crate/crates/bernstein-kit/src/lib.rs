//! Generalized Bernstein basis functions `Y[k,n](x; a, b, m)` over an
//! arbitrary interval `[a, b]` with a normalization exponent `m` decoupled
//! from the degree, together with the identities the family satisfies:
//! recurrences, derivatives, subdivision and composition, polynomial algebra
//! in Bernstein form, the binomial/Poisson distribution view, Szasz-Mirakjan
//! type basis functions, and a pointwise-orthogonality (dual-basis) verifier.
//!
//! Everything algebraic is generic over a [`Scalar`] with an exact rational
//! backend, so the identity suites in [`verify`] assert equalities with zero
//! tolerance; `f64` backs the transcendental operations.

pub mod basis;
pub mod calculus;
pub mod curve;
pub mod duality;
pub mod error;
pub mod genfun;
pub mod poly;
pub mod scalar;
pub mod stochastic;
pub mod verify;

pub use basis::{BasisIndex, Interval};
pub use curve::BezierCurve;
pub use error::Error;
pub use poly::BernsteinPoly;
pub use scalar::{Rational, Scalar};
