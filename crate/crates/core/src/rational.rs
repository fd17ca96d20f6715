//! Exact rational helpers shared across the crate.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// `num / den` as an exact rational.
pub fn q(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn parse(s: &str) -> Result<Rational> {
    let s = s.trim();
    s.parse::<Rational>()
        .map_err(|_| Error::Parse(format!("not an exact rational: {s:?}")))
        .and_then(|r| {
            if r.denom().is_zero() {
                Err(Error::Parse(format!("zero denominator: {s:?}")))
            } else {
                Ok(r)
            }
        })
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

/// Integer value of an integral rational, if it fits in `i64`.
pub fn to_i64(r: &Rational) -> Option<i64> {
    if is_integer(r) {
        r.numer().to_i64()
    } else {
        None
    }
}

pub fn floor_i64(r: &Rational) -> i64 {
    r.floor()
        .to_integer()
        .to_i64()
        .expect("floor out of i64 range")
}

pub fn ceil_i64(r: &Rational) -> i64 {
    r.ceil()
        .to_integer()
        .to_i64()
        .expect("ceil out of i64 range")
}

/// Numerator and denominator as machine integers.
pub fn parts(r: &Rational) -> (i64, i64) {
    (
        r.numer().to_i64().expect("numerator out of range"),
        r.denom().to_i64().expect("denominator out of range"),
    )
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}

/// Canonical text form, `p/q` or `p`.
pub fn fmt(r: &Rational) -> String {
    r.to_string()
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}
