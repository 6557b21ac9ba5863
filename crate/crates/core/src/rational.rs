//! Exact rational scalars: arbitrary-precision fractions in canonical reduced form.
//!
//! Every value is kept with a positive denominator and `gcd(|num|, den) = 1`,
//! so structural equality is valid everywhere downstream. The textual form is
//! `p/q` (reduced, `q >= 1`) or a bare integer `p`; the parser also accepts
//! unreduced input and normalizes it.

use std::str::FromStr;

use num_traits::{Signed, Zero};
use thiserror::Error;

pub use num_bigint::BigInt;

/// The scalar field: an exact fraction of arbitrary-precision integers.
///
/// `num_rational::BigRational` already maintains the canonical form this
/// library relies on (positive denominator, fully reduced, zero as `0/1`),
/// so it is used directly rather than re-implemented.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NumberError {
    #[error("denominator is zero")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid rational literal {0:?}")]
    Parse(String),
}

/// Builds the canonical reduced rational `num/den`.
pub fn normalized(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Rational, NumberError> {
    let den = den.into();
    if den.is_zero() {
        return Err(NumberError::ZeroDenominator);
    }
    Ok(Rational::new(num.into(), den))
}

/// Convenience constructor for small literals; panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    normalized(num, den).expect("nonzero denominator")
}

/// The integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Exact division with an explicit error instead of a panic when `b == 0`.
pub fn checked_div(a: &Rational, b: &Rational) -> Result<Rational, NumberError> {
    if b.is_zero() {
        return Err(NumberError::DivisionByZero);
    }
    Ok(a / b)
}

/// Parses `p/q` or a bare integer `p`, accepting unreduced input.
pub fn parse_rational(s: &str) -> Result<Rational, NumberError> {
    let raw = s.trim();
    let bad = || NumberError::Parse(s.to_string());
    match raw.split_once('/') {
        Some((num, den)) => {
            let num = BigInt::from_str(num).map_err(|_| bad())?;
            let den = BigInt::from_str(den).map_err(|_| bad())?;
            if den.is_zero() {
                return Err(NumberError::ZeroDenominator);
            }
            Ok(Rational::new(num, den))
        }
        None => {
            let num = BigInt::from_str(raw).map_err(|_| bad())?;
            Ok(Rational::from_integer(num))
        }
    }
}

/// Total bit length of a value: bits of |numerator| plus bits of denominator.
///
/// Used as the pivot-selection measure in elimination (smaller is better) and
/// as the coefficient-growth statistic reported by benchmarks.
pub fn bit_length(r: &Rational) -> u64 {
    r.numer().abs().bits() + r.denom().bits()
}

/// Approximate decimal rendering, for diagnostics only; never used in math.
pub fn to_decimal(r: &Rational) -> f64 {
    let numer = r.numer().to_string().parse::<f64>().unwrap_or(f64::NAN);
    let denom = r.denom().to_string().parse::<f64>().unwrap_or(f64::NAN);
    numer / denom
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;
    use num_traits::One;
    use proptest::prelude::*;

    fn is_canonical(r: &Rational) -> bool {
        r.denom().is_positive() && r.numer().gcd(r.denom()).is_one()
    }

    #[test]
    fn normalized_reduces() {
        assert_eq!(normalized(6, 4).unwrap(), rat(3, 2));
        assert_eq!(normalized(-2, -4).unwrap(), rat(1, 2));
        let zero = normalized(0, 7).unwrap();
        assert_eq!(zero.numer(), &BigInt::from(0));
        assert_eq!(zero.denom(), &BigInt::from(1));
    }

    #[test]
    fn normalized_rejects_zero_denominator() {
        assert_eq!(normalized(1, 0), Err(NumberError::ZeroDenominator));
    }

    #[test]
    fn field_op_examples() {
        assert_eq!(rat(1, 3) + rat(1, 6), rat(1, 2));
        assert_eq!(rat(2, 3) * rat(3, 2), int(1));
        assert_eq!(
            checked_div(&rat(1, 3), &int(0)),
            Err(NumberError::DivisionByZero)
        );
        assert_eq!(checked_div(&rat(1, 3), &rat(1, 6)).unwrap(), int(2));
    }

    #[test]
    fn parse_accepts_reduced_unreduced_and_integers() {
        assert_eq!(parse_rational("3/2").unwrap(), rat(3, 2));
        assert_eq!(parse_rational("6/4").unwrap(), rat(3, 2));
        assert_eq!(parse_rational("-2/-4").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert_eq!(parse_rational(" -5 ").unwrap(), int(-5));
        assert_eq!(parse_rational("1/0"), Err(NumberError::ZeroDenominator));
        assert!(matches!(parse_rational("a/b"), Err(NumberError::Parse(_))));
        assert!(matches!(parse_rational(""), Err(NumberError::Parse(_))));
        assert!(matches!(parse_rational("1/2/3"), Err(NumberError::Parse(_))));
    }

    #[test]
    fn display_is_reduced_with_bare_integers() {
        assert_eq!(rat(3, 2).to_string(), "3/2");
        assert_eq!(rat(-3, 2).to_string(), "-3/2");
        assert_eq!(int(5).to_string(), "5");
        assert_eq!(int(0).to_string(), "0");
        assert_eq!(normalized(4, 2).unwrap().to_string(), "2");
    }

    #[test]
    fn decimal_display_is_close_but_never_used_in_math() {
        assert_eq!(to_decimal(&rat(1, 2)), 0.5);
        assert!((to_decimal(&rat(1, 3)) - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(to_decimal(&int(-7)), -7.0);
    }

    #[test]
    fn bit_length_counts_both_parts() {
        assert_eq!(bit_length(&int(0)), 1); // 0 bits + denominator 1
        assert_eq!(bit_length(&rat(3, 2)), 4);
        assert_eq!(bit_length(&rat(-255, 16)), 13);
    }

    prop_compose! {
        fn arb_rational()(num in -1000i64..1000, den in 1i64..1000) -> Rational {
            rat(num, den)
        }
    }

    proptest! {
        #[test]
        fn results_stay_canonical(a in arb_rational(), b in arb_rational()) {
            prop_assert!(is_canonical(&(&a + &b)));
            prop_assert!(is_canonical(&(&a - &b)));
            prop_assert!(is_canonical(&(&a * &b)));
            if !b.is_zero() {
                prop_assert!(is_canonical(&(&a / &b)));
            }
        }

        #[test]
        fn field_axioms(a in arb_rational(), b in arb_rational(), c in arb_rational()) {
            prop_assert_eq!(&a + (&b + &c), (&a + &b) + &c);
            prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
            prop_assert_eq!(&a + &b, &b + &a);
        }

        #[test]
        fn scaling_does_not_change_value(num in -100i64..100, den in 1i64..100, k in 1i64..50) {
            prop_assert_eq!(rat(num * k, den * k), rat(num, den));
            prop_assert_eq!(rat(num * -k, den * -k), rat(num, den));
        }

        #[test]
        fn parse_display_round_trip(a in arb_rational()) {
            prop_assert_eq!(parse_rational(&a.to_string()).unwrap(), a);
        }
    }
}
