//! Exact arithmetic: rationals, Laurent polynomials in `t`, rational
//! functions (an exact subfield of `K = C((t))`), the quadratic extension
//! `L = K[j]`, dense matrices, and normal forms over `Z` and over `O = C[[t]]`.
//!
//! The coefficient field is `Q`. Every element of `K` that the library
//! produces or consumes is either a Laurent polynomial or a quotient of one
//! by a polynomial with nonzero constant term, so all valuations, truncations
//! and normal forms are computed without approximation.

mod ext;
mod hermite;
mod laurent;
mod linsolve;
mod matrix;
mod ratfunc;
mod snf;

pub use ext::ExtElem;
pub use hermite::{hermite_columns, hermite_over_o, solve_integral_preimage};
pub use laurent::{LaurentPoly, ParseLaurentError};
pub use linsolve::{AffineSolution, LinearSystem};
pub use matrix::{Field, IntMat, MatK, Matrix, QMat, Ring};
pub use ratfunc::RatFunc;
pub use snf::{smith_normal_form, SmithForm};

use num_bigint::BigInt;
use num_rational::BigRational;

/// Arbitrary precision rational number, always in lowest terms.
pub type Rational = BigRational;

/// Shorthand for an integer rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `p/q`.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Formats a rational as `"p/q"` or `"p"` when the denominator is one.
pub fn fmt_rational(q: &Rational) -> String {
    if q.denom() == &BigInt::from(1) {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `"p/q"`, `"p"`, or a decimal-free integer string.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q == BigInt::from(0) {
            return None;
        }
        Some(Rational::new(p, q))
    } else {
        let p: BigInt = s.parse().ok()?;
        Some(Rational::from_integer(p))
    }
}

/// Error raised by the normal-form routines over `O`.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("not a lattice basis")]
    NotALatticeBasis,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}
