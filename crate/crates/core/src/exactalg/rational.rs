use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// The base field. Always in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    BigRational::from_integer(BigInt::from(value))
}

/// Canonical text form: `p` for integers, `p/q` otherwise.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `[+-]digits[/digits]`. No surrounding whitespace is accepted.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = |msg: &str| Error::parse(format!("rational {s:?}"), msg);
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let numer = parse_int(num).ok_or_else(|| bad("invalid numerator"))?;
    let denom = match den {
        Some(d) => {
            if d.starts_with(['+', '-']) {
                return Err(bad("signed denominator"));
            }
            parse_int(d).ok_or_else(|| bad("invalid denominator"))?
        }
        None => BigInt::from(1),
    };
    if denom.is_zero() {
        return Err(bad("zero denominator"));
    }
    Ok(BigRational::new(numer, denom))
}

fn parse_int(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Positive generator of the subgroup of (Q, +) generated by `a` and `b`:
/// gcd(p1 q2, p2 q1) / (q1 q2), reduced. Zero only if both inputs are zero.
pub fn rational_gcd(a: &Rational, b: &Rational) -> Rational {
    let num = (a.numer() * b.denom()).gcd(&(b.numer() * a.denom()));
    BigRational::new(num, a.denom() * b.denom()).abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("3").unwrap(), int(3));
        assert_eq!(parse_rational("-6/4").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational("+5/7").unwrap(), rat(5, 7));
        assert_eq!(format_rational(&rat(-3, 2)), "-3/2");
        assert_eq!(format_rational(&rat(8, 4)), "2");
        assert_eq!(format_rational(&int(0)), "0");
        for bad in ["", "1/0", "a", "1/-2", " 1", "1/", "/2", "--1", "1.5"] {
            assert!(parse_rational(bad).is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn huge_values_survive() {
        let s = "123456789012345678901234567891/7";
        assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
    }

    #[test]
    fn gcd_of_rationals() {
        assert_eq!(rational_gcd(&rat(2, 3), &rat(4, 3)), rat(2, 3));
        assert_eq!(rational_gcd(&rat(1, 2), &rat(1, 3)), rat(1, 6));
        assert_eq!(rational_gcd(&rat(-4, 1), &int(6)), int(2));
        assert_eq!(rational_gcd(&int(0), &rat(-5, 7)), rat(5, 7));
        assert!(rational_gcd(&int(0), &int(0)).is_zero());
    }
}
