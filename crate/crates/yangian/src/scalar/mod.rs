//! Exact scalar arithmetic: rationals, dense polynomials, rational functions.

mod poly;
mod ratfun;

pub use poly::Polynomial;
pub use ratfun::{laurent_expand, pade_reconstruct, RationalFunction};

use alloc::string::String;
use num_bigint::BigInt;

/// Exact rational scalar; always stored reduced with positive denominator.
pub type Rat = num_rational::BigRational;

/// Rational from an integer.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Rational `p/q`. Panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Renders a rational as `p` or `p/q`, matching the `FromStr` grammar.
pub fn rat_to_string(x: &Rat) -> String {
    use alloc::string::ToString;
    x.to_string()
}
