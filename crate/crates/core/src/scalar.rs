//! Numeric scalars for probabilities and possibility grades.
//!
//! Evaluators are generic over [`Scalar`], so the same code runs on `f64`
//! (compared with an absolute tolerance) and on [`BigRational`] (compared
//! exactly).

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

pub trait Scalar:
    Clone + Debug + Display + PartialOrd + Num + Signed + FromPrimitive + ToPrimitive
{
    /// Absolute tolerance used by [`Scalar::approx_eq`]; zero for exact types.
    fn tolerance() -> Self;

    fn is_exact() -> bool;

    fn approx_eq(&self, other: &Self) -> bool {
        (self.clone() - other.clone()).abs() <= Self::tolerance()
    }

    /// `num / den` as a scalar. `den` must be nonzero.
    fn ratio(num: u64, den: u64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_u64(num).expect("u64 fits every scalar")
            / Self::from_u64(den).expect("u64 fits every scalar")
    }

    fn min_of(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    fn max_of(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Parses a numeric literal: `"p/q"`, an integer, or a decimal.
    /// Exact scalars read decimals exactly.
    fn parse_literal(text: &str) -> Option<Self>;
}

impl Scalar for f32 {
    fn parse_literal(text: &str) -> Option<Self> {
        match parse_rational(text) {
            Some(r) => r.to_f32(),
            None => text.trim().parse().ok().filter(|x: &f32| x.is_finite()),
        }
    }

    fn tolerance() -> Self {
        1e-6
    }

    fn is_exact() -> bool {
        false
    }
}

impl Scalar for f64 {
    fn parse_literal(text: &str) -> Option<Self> {
        match parse_rational(text) {
            Some(r) => r.to_f64(),
            None => text.trim().parse().ok().filter(|x: &f64| x.is_finite()),
        }
    }

    fn tolerance() -> Self {
        1e-12
    }

    fn is_exact() -> bool {
        false
    }
}

impl Scalar for BigRational {
    fn parse_literal(text: &str) -> Option<Self> {
        parse_rational(text).or_else(|| parse_decimal(text))
    }

    fn tolerance() -> Self {
        BigRational::from_integer(BigInt::from(0))
    }

    fn is_exact() -> bool {
        true
    }
}

/// Parses `"p/q"` or an integer string into an exact rational.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((num, den)) => {
            let num: BigInt = num.trim().parse().ok()?;
            let den: BigInt = den.trim().parse().ok()?;
            if den == BigInt::from(0) {
                return None;
            }
            Some(BigRational::new(num, den))
        }
        None => text.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

/// Parses a decimal such as `-0.125` or `2.5e-3` into an exact rational.
pub fn parse_decimal(text: &str) -> Option<BigRational> {
    let text = text.trim();
    let (mantissa, exponent) = match text.find(['e', 'E']) {
        Some(i) => (&text[..i], text[i + 1..].parse::<i32>().ok()?),
        None => (text, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    let (negative, int_digits) = match int_part.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, int_part.strip_prefix('+').unwrap_or(int_part)),
    };
    let digits = format!("{int_digits}{frac_part}");
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let mut numer: BigInt = digits.parse().ok()?;
    if negative {
        numer = -numer;
    }
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    Some(if scale >= 0 {
        BigRational::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(numer, num_traits::pow(ten, (-scale) as usize))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn float_tolerance_is_absolute() {
        assert!(0.1f64.approx_eq(&(0.1 + 1e-13)));
        assert!(!0.1f64.approx_eq(&(0.1 + 1e-9)));
    }

    #[test]
    fn rationals_compare_exactly() {
        let third = BigRational::ratio(1, 3);
        let sum = third.clone() + third.clone() + third;
        assert_eq!(sum, BigRational::one());
        assert!(BigRational::is_exact());
    }

    #[test]
    fn parses_rational_literals() {
        assert_eq!(parse_rational("2/4"), Some(BigRational::ratio(1, 2)));
        assert_eq!(parse_rational(" 1 "), Some(BigRational::ratio(1, 1)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("0.5"), None);
    }

    #[test]
    fn parses_decimals_exactly() {
        assert_eq!(
            BigRational::parse_literal("0.1"),
            Some(BigRational::ratio(1, 10))
        );
        assert_eq!(
            BigRational::parse_literal("-2.5e-1"),
            Some(-BigRational::ratio(1, 4))
        );
        assert_eq!(
            BigRational::parse_literal("3/4"),
            Some(BigRational::ratio(3, 4))
        );
        assert_eq!(
            BigRational::parse_literal("1e2"),
            Some(BigRational::ratio(100, 1))
        );
        assert_eq!(BigRational::parse_literal("abc"), None);
        assert_eq!(f64::parse_literal("1/4"), Some(0.25));
        assert_eq!(f64::parse_literal("0.3"), Some(0.3));
        assert_eq!(f64::parse_literal("nan"), None);
    }
}
