//! Exact noncommutative differential calculus on path algebras of quivers.
//!
//! The crate is organised bottom-up:
//!
//! * [`algebra`]: quivers, paths, path-algebra arithmetic, necklaces.
//! * [`forms`]: noncommutative differential forms relative to the vertex
//!   subalgebra and the Karoubi–de Rham quotient.
//! * [`dder`]: double derivations, (reduced) contraction and the
//!   bi-symplectic decision procedure.
//! * [`comm`]: sparse polynomials over ℚ, exterior forms of low degree,
//!   exact rank.
//! * [`rep`]: the representation ring, the universal representation, traces,
//!   the Van den Bergh functor on free bimodules and the end-to-end
//!   verifier that bi-symplectic forms induce symplectic forms.
//! * [`syntax`]: quiver files and the form expression language.
//!
//! All coefficients are arbitrary precision rationals.

pub mod algebra;
pub mod comm;
pub mod dder;
mod error;
pub mod lincomb;
pub mod forms;
pub mod par;
pub mod rep;
pub mod sample;
pub mod syntax;

pub use error::{Error, Result};

/// Exact coefficient type used throughout.
pub type Rational = num::BigRational;

#[cfg(test)]
pub(crate) fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Formats a rational as `p` or `p/q`.
pub fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Joins `coefficient * monomial` terms as `a - 2*b + 1/3*c`. An empty
/// monomial string stands for a bare scalar.
pub(crate) fn format_sum<'a>(terms: impl IntoIterator<Item = (String, &'a Rational)>) -> String {
    use num::{One, Signed};
    let mut out = String::new();
    for (mono, c) in terms {
        let neg = c.is_negative();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let a = c.abs();
        if mono.is_empty() {
            out.push_str(&fmt_rational(&a));
        } else if a.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&fmt_rational(&a));
            out.push('*');
            out.push_str(&mono);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
