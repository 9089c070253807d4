//! Exact rational scalars and sparse polynomials in the fundamental weights
//! `λ_1..λ_l` and the quantum parameters `q_1..q_l`.
//!
//! The grading is fixed globally: `deg λ_i = 2` and `deg q_i = 4`.

mod linear;
mod monomial;
mod parse;
mod polynomial;

pub use linear::{LinearForm, LinearMap};
pub use monomial::Monomial;
pub use parse::{parse_polynomial, Environment};
pub use polynomial::{Polynomial, TermJson};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Scalar = num_rational::BigRational;

/// Grading weight of a `λ` variable.
pub const LAMBDA_WEIGHT: u32 = 2;
/// Grading weight of a `q` variable.
pub const Q_WEIGHT: u32 = 4;

pub fn scalar(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

/// Renders a scalar as an exact `num/den` string (the denominator is always
/// written, `3` becomes `3/1`).
pub fn format_scalar(s: &Scalar) -> String {
    format!("{}/{}", s.numer(), s.denom())
}

/// Renders a scalar compactly: integers without a denominator.
pub fn display_scalar(s: &Scalar) -> String {
    if s.denom().is_one() {
        s.numer().to_string()
    } else {
        format!("{}/{}", s.numer(), s.denom())
    }
}

/// Parses `n`, `-n` or `n/d`.
pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let text = text.trim();
    let bad = || Error::Parse(format!("invalid rational `{text}`"));
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Scalar::new(n, d))
        }
        None => {
            let n: BigInt = text.parse().map_err(|_| bad())?;
            Ok(Scalar::from_integer(n))
        }
    }
}

pub fn is_integer(s: &Scalar) -> bool {
    s.denom().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_text_round_trip() {
        for s in [ratio(3, 4), ratio(-6, 8), scalar(0), scalar(5)] {
            assert_eq!(parse_scalar(&format_scalar(&s)).unwrap(), s);
        }
        assert_eq!(format_scalar(&ratio(-6, 8)), "-3/4");
        assert_eq!(format_scalar(&scalar(0)), "0/1");
        assert_eq!(display_scalar(&scalar(7)), "7");
    }

    #[test]
    fn scalar_rejects_garbage() {
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("x").is_err());
    }
}
