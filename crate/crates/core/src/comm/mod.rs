//! The commutative side: polynomials over ℚ, exterior forms of degree at most
//! three, derivations and exact linear algebra.

mod derivation;
mod form;
pub mod linalg;
mod poly;

pub use derivation::{apply_derivation, span_rank, PolyDerivation};
pub use form::{comm_d, wedge, CommForm, MAX_DEGREE};
pub use linalg::rank;
pub use poly::{Monomial, PolyRing, Polynomial};

/// Antisymmetric matrix of a 2-form evaluated at `point`:
/// `M[i][j]` is the coefficient of `dx_i ∧ dx_j` for `i < j`.
pub fn skew_matrix(omega: &CommForm, point: &[crate::Rational]) -> crate::Result<Vec<Vec<crate::Rational>>> {
    omega.skew_matrix(point)
}
