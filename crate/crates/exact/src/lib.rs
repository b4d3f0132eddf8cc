//! Exact scalar layer for the localization engine.
//!
//! Everything here is exact: rationals are `num_rational::BigRational` kept in
//! lowest terms, localization weights are single Laurent monomials in the
//! equivariant parameter α, and one-dimensional fixed families are carried as
//! `a + bψ` with ψ² = 0.

mod factored;
mod monomial;
mod primes;
mod psi;

pub use factored::{
    format_factored, parse_factored, parse_factored_parts, FactoredRational, FormatError,
    ParseError,
};
pub use monomial::{mono_mul, AlphaMonomial};
pub use primes::{factorize, is_prime};
pub use psi::{alpha_flip, PsiLinear};

pub use num_bigint::{BigInt, BigUint};
pub use num_rational::BigRational;

/// Builds `n/d` as a `BigRational`. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Builds the integer `n` as a `BigRational`.
pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}
