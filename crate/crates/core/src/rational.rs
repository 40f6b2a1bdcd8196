//! Exact rational scalars.
//!
//! `Rational` is `num_rational::BigRational`, which already keeps
//! `gcd(|num|, den) = 1` and `den > 0`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

/// `num / den` as a reduced rational. Panics on `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // numerator/denominator too large for a direct conversion
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Largest integer `k` with `k <= r`.
pub fn floor_i64(r: &Rational) -> i64 {
    r.floor().to_integer().to_i64().expect("knot index out of i64 range")
}

/// Decimal numerator/denominator strings, the canonical wire form.
pub fn to_strings(r: &Rational) -> [String; 2] {
    [r.numer().to_string(), r.denom().to_string()]
}

pub fn from_strings(num: &str, den: &str) -> Option<Rational> {
    let n: BigInt = num.trim().parse().ok()?;
    let d: BigInt = den.trim().parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(BigRational::new(n, d))
}

/// Parses `"3"`, `"-1/2"` or a short decimal such as `"0.25"`.
pub fn parse(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        return from_strings(n, d);
    }
    if let Some((ip, fp)) = s.split_once('.') {
        let neg = ip.starts_with('-');
        let ip_abs = ip.trim_start_matches(['-', '+']);
        let digits = format!("{}{}", if ip_abs.is_empty() { "0" } else { ip_abs }, fp);
        let n: BigInt = digits.parse().ok()?;
        let d = num_traits::pow(BigInt::from(10), fp.len());
        let r = BigRational::new(n, d);
        return Some(if neg { -r } else { r });
    }
    let n: BigInt = s.parse().ok()?;
    Some(BigRational::from_integer(n))
}

pub fn display(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}
