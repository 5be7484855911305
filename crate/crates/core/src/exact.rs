//! Helpers for exact rational values: decimal parsing, rendering and rounding.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Parses `"12"`, `"44.17"`, `"-3.5"` or `"7/3"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::parse(None, format!("not a number: {s:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    let (neg, body) = match s.as_bytes()[0] {
        b'-' => (true, &s[1..]),
        b'+' => (false, &s[1..]),
        _ => (false, s),
    };
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !whole
        .bytes()
        .chain(frac.bytes())
        .all(|b| b.is_ascii_digit())
    {
        return Err(bad());
    }
    let digits = format!("{whole}{frac}");
    let num: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().map_err(|_| bad())?
    };
    let den = num_traits::pow(BigInt::from(10), frac.len());
    let r = BigRational::new(num, den);
    Ok(if neg { -r } else { r })
}

/// Renders a rational as a terminating decimal when possible, otherwise as `p/q`.
/// The output is accepted by [`parse_rational`] and round-trips exactly.
pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        return r.to_integer().to_string();
    }
    let mut den = r.denom().clone();
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    let mut twos = 0usize;
    let mut fives = 0usize;
    while den.is_even() {
        den /= &two;
        twos += 1;
    }
    while (&den % &five).is_zero() {
        den /= &five;
        fives += 1;
    }
    if !den.is_one() {
        return format!("{}/{}", r.numer(), r.denom());
    }
    let places = twos.max(fives);
    let scale = num_traits::pow(BigInt::from(10), places);
    let scaled = (r * BigRational::from_integer(scale)).to_integer();
    let neg = scaled.is_negative();
    let digits = scaled.abs().to_string();
    let digits = format!("{digits:0>width$}", width = places + 1);
    let (w, f) = digits.split_at(digits.len() - places);
    format!("{}{w}.{f}", if neg { "-" } else { "" })
}

pub fn floor(r: &BigRational) -> BigInt {
    r.floor().to_integer()
}

pub fn ceil(r: &BigRational) -> BigInt {
    r.ceil().to_integer()
}

/// Nearest integer, ties away from zero.
pub fn round_half_away(r: &BigRational) -> BigInt {
    r.round().to_integer()
}

pub fn to_u64(i: &BigInt) -> Result<u64> {
    i.to_u64()
        .ok_or_else(|| Error::domain(format!("{i} is not a representable count")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_parsing_is_exact() {
        assert_eq!(parse_rational("44.17").unwrap(), ratio(4417, 100));
        assert_eq!(parse_rational("217.4").unwrap(), ratio(2174, 10));
        assert_eq!(parse_rational("0").unwrap(), int(0));
        assert_eq!(parse_rational(".5").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("-2.5").unwrap(), ratio(-5, 2));
        assert_eq!(parse_rational("2/6").unwrap(), ratio(1, 3));
        for bad in ["", "1.2.3", "abc", "1e5", "3/0", ".", "-"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn formatting_round_trips() {
        for r in [
            ratio(4417, 100),
            ratio(1, 3),
            int(576),
            ratio(-1, 8),
            ratio(1, 40),
        ] {
            assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
        }
        assert_eq!(format_rational(&ratio(1, 40)), "0.025");
        assert_eq!(format_rational(&ratio(2174, 10)), "217.4");
    }

    #[test]
    fn rounding() {
        assert_eq!(round_half_away(&ratio(2174, 10)), BigInt::from(217));
        assert_eq!(round_half_away(&ratio(435, 2)), BigInt::from(218));
        assert_eq!(floor(&ratio(1232, 10)), BigInt::from(123));
        assert_eq!(ceil(&ratio(1232, 10)), BigInt::from(124));
    }
}
