//! Exact rational scalars.
//!
//! Every weight and every coefficient in the calculus is a reduced fraction
//! backed by arbitrary-precision integers. There is no floating point.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::Error;

pub type Rational = num_rational::BigRational;

/// Builds `num / den`. Panics when `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn one() -> Rational {
    Rational::one()
}

pub fn zero() -> Rational {
    Rational::zero()
}

/// Parses `p`, `p/q`, `+p/q` or `-p/q` with decimal integers.
pub fn parse_rational(text: &str) -> Result<Rational, Error> {
    let s = text.trim();
    let bad = || Error::Parse(format!("not a rational number: {text:?}"));
    let (sign, body) = match s.as_bytes().first() {
        Some(b'-') => (-1, &s[1..]),
        Some(b'+') => (1, &s[1..]),
        _ => (1, s),
    };
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (n, d),
        None => (body, "1"),
    };
    let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    if !digits(num) || !digits(den) {
        return Err(bad());
    }
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {text:?}")));
    }
    Ok(Rational::new(num * sign, den))
}

/// Parses a comma-separated weight list. The empty string is the empty list.
pub fn parse_rational_list(text: &str) -> Result<Vec<Rational>, Error> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',').map(parse_rational).collect()
}

/// `p/q`, or `p` for integers.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn format_rational_list(rs: &[Rational]) -> String {
    rs.iter().map(format_rational).collect::<Vec<_>>().join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_signed_fractions() {
        assert_eq!(parse_rational("3/4").unwrap(), rat(3, 4));
        assert_eq!(parse_rational("-6/8").unwrap(), rat(-3, 4));
        assert_eq!(parse_rational("+2").unwrap(), int(2));
        assert_eq!(parse_rational(" 5 ").unwrap(), int(5));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("0.5").is_err());
        assert!(parse_rational("a/b").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("1/-2").is_err());
    }

    #[test]
    fn lists() {
        assert!(parse_rational_list("").unwrap().is_empty());
        assert_eq!(
            parse_rational_list("1/2,1").unwrap(),
            vec![rat(1, 2), int(1)]
        );
        assert_eq!(format_rational_list(&[rat(1, 2), int(1)]), "1/2,1");
    }
}
