//! Exact scalars: arbitrary-precision integers and rationals, the `Coeff`
//! abstraction over them, and the `"a/b"` text form used at every boundary.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision integer.
pub type Integer = BigInt;

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator (`0/1` for zero).
pub type Rational = BigRational;

/// Coefficient ring of a polynomial.
///
/// The recursions only ever produce integer coefficients, so they run over
/// [`Integer`]; evaluation, series extraction and probabilities need
/// [`Rational`].
pub trait Coeff:
    Clone + fmt::Debug + fmt::Display + PartialEq + Eq + Zero + One + Send + Sync + 'static
{
    fn from_i64(v: i64) -> Self;
    fn from_integer(v: &Integer) -> Self;
    fn add_assign_ref(&mut self, other: &Self);
    fn sub_assign_ref(&mut self, other: &Self);
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn mul_i64(&self, k: i64) -> Self;

    /// `self += a * b`
    fn add_mul(&mut self, a: &Self, b: &Self) {
        let prod = a.mul_ref(b);
        self.add_assign_ref(&prod);
    }

    /// `self -= k * src`, with `scratch` as reusable temporary storage.
    fn sub_mul_small(&mut self, src: &Self, k: u32, scratch: &mut Self) {
        if k == 1 {
            self.sub_assign_ref(src);
        } else {
            *scratch = src.mul_i64(k as i64);
            self.sub_assign_ref(scratch);
        }
    }

    fn to_rational(&self) -> Rational;
}

impl Coeff for Integer {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn from_integer(v: &Integer) -> Self {
        v.clone()
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn sub_assign_ref(&mut self, other: &Self) {
        *self -= other;
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn mul_i64(&self, k: i64) -> Self {
        self * k
    }
    fn sub_mul_small(&mut self, src: &Self, k: u32, scratch: &mut Self) {
        if k == 1 {
            *self -= src;
        } else {
            scratch.clone_from(src);
            *scratch *= k;
            *self -= &*scratch;
        }
    }
    fn to_rational(&self) -> Rational {
        Rational::from_integer(self.clone())
    }
}

impl Coeff for Rational {
    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }
    fn from_integer(v: &Integer) -> Self {
        Rational::from_integer(v.clone())
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn sub_assign_ref(&mut self, other: &Self) {
        *self -= other;
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn mul_i64(&self, k: i64) -> Self {
        self * Rational::from_integer(BigInt::from(k))
    }
    fn to_rational(&self) -> Rational {
        self.clone()
    }
}

/// Builds `num/den` in lowest terms. Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Formats as `"a/b"`, or `"a"` when the denominator is 1.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `"a/b"` or `"a"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = BigInt::from_str(den).map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(num, den))
}

/// Lossy conversion for the Monte Carlo side only.
pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// serde adapter: rationals as `"a/b"` strings.
pub mod serde_rational {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// Integers as decimal strings.
pub mod serde_integer {
    use super::*;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(v: &Integer, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_form_round_trips() {
        for s in ["0", "1", "-3", "2/3", "-7/12"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(format_rational(&parse_rational("4/6").unwrap()), "2/3");
        assert_eq!(format_rational(&parse_rational("3/-6").unwrap()), "-1/2");
        assert_eq!(format_rational(&parse_rational("0/5").unwrap()), "0");
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("a/b").is_err());
        assert!(parse_rational("0.5").is_err());
    }

    #[test]
    fn float_conversion() {
        assert_eq!(rational_to_f64(&ratio(3, 10)), 0.3);
        assert_eq!(rational_to_f64(&ratio(-1, 4)), -0.25);
    }
}
