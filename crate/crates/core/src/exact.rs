//! Small helpers around exact rationals and their text form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// `"num/den"`, or just `"num"` for integers.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::InvalidArgument(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn floor_to_i64(r: &Rational) -> Result<i64> {
    r.floor()
        .to_integer()
        .to_i64()
        .ok_or(Error::Overflow("floor"))
}

/// Common denominator of a slice of rationals together with the scaled
/// integer numerators, `values[i] = scaled[i] / denom`.
pub fn common_scale(values: &[Rational]) -> Result<(Vec<i128>, i128)> {
    let mut denom = BigInt::one();
    for v in values {
        denom = denom.lcm(v.denom());
    }
    let scaled = values
        .iter()
        .map(|v| {
            (v.numer() * (&denom / v.denom()))
                .to_i128()
                .ok_or(Error::Overflow("rational scaling"))
        })
        .collect::<Result<Vec<_>>>()?;
    let denom = denom.to_i128().ok_or(Error::Overflow("rational scaling"))?;
    Ok((scaled, denom))
}

pub fn from_scaled(num: i128, den: i128) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}

/// Rounds to `digits` significant decimal digits.
pub fn round_significant(x: f64, digits: usize) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", digits.saturating_sub(1), x)
        .parse()
        .unwrap_or(x)
}

#[cfg(test)]
pub(crate) fn div_floor(a: i128, b: i128) -> i128 {
    Integer::div_floor(&a, &b)
}

pub(crate) fn div_ceil(a: i128, b: i128) -> i128 {
    -Integer::div_floor(&-a, &b)
}
