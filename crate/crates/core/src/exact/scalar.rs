//! Exact rational scalars and the small helpers the rest of the crate leans on.

use num::bigint::{BigInt, Sign};
use num::rational::BigRational;
use num::traits::{One, Signed, ToPrimitive, Zero};
use std::str::FromStr;

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

/// `base^e` for any integer exponent. Panics on `0^e` with `e < 0`.
pub fn pow(base: &Scalar, e: i64) -> Scalar {
    base.pow(e as i32)
}

pub fn checked_div(a: &Scalar, b: &Scalar) -> Result<Scalar> {
    if b.is_zero() {
        Err(Error::DivisionByZero)
    } else {
        Ok(a / b)
    }
}

pub fn checked_inv(a: &Scalar) -> Result<Scalar> {
    checked_div(&one(), a)
}

/// Parses `"p/q"`, `"p"`, a finite decimal such as `"0.25"` or scientific
/// notation such as `"1e-24"`, exactly.
pub fn parse(s: &str) -> Result<Scalar> {
    let s = s.trim();
    let bad = || Error::InvalidParams(format!("cannot parse rational from {s:?}"));
    if !s.contains('/') {
        if let Some((m, e)) = s.split_once(['e', 'E']) {
            let e: i64 = e.parse().map_err(|_| bad())?;
            return Ok(parse(m)? * pow(&int(10), e));
        }
    }
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::InvalidParams(format!("zero denominator in {s:?}")));
        }
        return Ok(Scalar::new(n, d));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        let neg = ip.starts_with('-');
        let digits = format!("{}{}", ip.trim_start_matches(['-', '+']), fp);
        if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let n = BigInt::from_str(&digits).map_err(|_| bad())?;
        let d = num::pow(BigInt::from(10), fp.len());
        let r = Scalar::new(n, d);
        return Ok(if neg { -r } else { r });
    }
    Ok(Scalar::from_integer(
        BigInt::from_str(s).map_err(|_| bad())?,
    ))
}

/// `"num/den"` with the denominator always printed.
pub fn format(r: &Scalar) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn to_f64(r: &Scalar) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Too large for a direct conversion; go through the exponent.
        let n = r.numer().bits() as i64;
        let d = r.denom().bits() as i64;
        let shift = n - d;
        let scaled = if shift > 0 {
            r / Scalar::from_integer(BigInt::one() << shift as usize)
        } else {
            r * Scalar::from_integer(BigInt::one() << (-shift) as usize)
        };
        scaled.to_f64().unwrap_or(0.0) * 2f64.powi(shift as i32)
    })
}

/// Rounds `r` to `bits` significant binary digits (round half away from zero).
pub fn round_bits(r: &Scalar, bits: u64) -> Scalar {
    if r.is_zero() {
        return zero();
    }
    let e = r.numer().bits() as i64 - r.denom().bits() as i64;
    let shift = bits as i64 - e;
    let scale = |s: i64| -> Scalar {
        if s >= 0 {
            Scalar::from_integer(BigInt::one() << s as usize)
        } else {
            Scalar::new(BigInt::one(), BigInt::one() << (-s) as usize)
        }
    };
    let scaled = r * scale(shift);
    scaled.round() * scale(-shift)
}

/// Decimal scientific notation with `digits` significant digits, e.g. `-1.2345e-3`.
pub fn to_sci(r: &Scalar, digits: usize) -> String {
    if r.is_zero() {
        return format!("0.{}e0", "0".repeat(digits.saturating_sub(1)));
    }
    let neg = r.is_negative();
    let a = r.abs();
    let ten = Scalar::from_integer(BigInt::from(10));
    let est = ((a.numer().bits() as f64 - a.denom().bits() as f64) * std::f64::consts::LOG10_2)
        .floor() as i64;
    let mut exp = est;
    let mut m = &a / pow(&ten, exp);
    while m >= ten {
        m /= &ten;
        exp += 1;
    }
    while m < one() {
        m *= &ten;
        exp -= 1;
    }
    let mut mant = (m * pow(&ten, digits as i64 - 1)).round().to_integer();
    if mant >= num::pow(BigInt::from(10), digits) {
        mant /= 10;
        exp += 1;
    }
    let s = mant.to_str_radix(10);
    let (head, tail) = s.split_at(1);
    let sign = if neg && mant.sign() != Sign::NoSign {
        "-"
    } else {
        ""
    };
    if tail.is_empty() {
        format!("{sign}{head}e{exp}")
    } else {
        format!("{sign}{head}.{tail}e{exp}")
    }
}

/// Binomial coefficient `n choose 2` as a signed integer.
pub fn binom2(n: i64) -> i64 {
    n * (n - 1) / 2
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse("1/2").unwrap(), ratio(1, 2));
        assert_eq!(parse(" -3/6 ").unwrap(), ratio(-1, 2));
        assert_eq!(parse("7").unwrap(), int(7));
        assert_eq!(parse("0.25").unwrap(), ratio(1, 4));
        assert_eq!(parse("-1.5").unwrap(), ratio(-3, 2));
        assert_eq!(parse("1e-3").unwrap(), ratio(1, 1000));
        assert_eq!(parse("2.5E2").unwrap(), int(250));
        assert!(parse("1/0").is_err());
        assert!(parse("abc").is_err());
    }

    #[test]
    fn format_round_trips() {
        for s in ["1/2", "-5/16", "0/1", "12345678901234567890/7"] {
            assert_eq!(format(&parse(s).unwrap()), s);
        }
    }

    #[test]
    fn division_by_zero_is_error() {
        assert_eq!(checked_div(&one(), &zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn rounding_keeps_bits() {
        let third = ratio(1, 3);
        let r = round_bits(&third, 64);
        let err = (&r - &third).abs();
        assert!(err < pow(&int(2), -64));
        assert!(r.denom().bits() <= 66);
    }

    #[test]
    fn sci_formatting() {
        assert_eq!(to_sci(&ratio(1, 8), 3), "1.25e-1");
        assert_eq!(to_sci(&int(-1234), 2), "-1.2e3");
        assert_eq!(to_sci(&int(999), 2), "1.0e3");
    }
}
