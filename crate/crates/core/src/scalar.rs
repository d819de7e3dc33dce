//! Numbers that stay exact rationals for as long as they can.
//!
//! Probabilities built from rational parameters and integer payoffs keep an
//! exact [`Rational`] alongside the `f64` value. Arithmetic that overflows
//! `i128` or touches an inexact operand silently degrades to `f64` only.

use core::cmp::Ordering;
use core::fmt;

use num_traits::{CheckedAdd, CheckedMul, CheckedSub, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::Ratio<i128>;

pub(crate) fn rational_to_f64(r: &Rational) -> f64 {
    // numer/denom can exceed 2^53; the division still rounds once per operand.
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) => n / d,
        _ => f64::NAN,
    }
}

#[derive(Clone, Copy, PartialEq)]
pub struct Scalar {
    approx: f64,
    exact: Option<Rational>,
}

impl Scalar {
    pub const ZERO: Scalar = Scalar {
        approx: 0.0,
        exact: None,
    };

    pub fn exact(r: Rational) -> Self {
        Scalar {
            approx: rational_to_f64(&r),
            exact: Some(r),
        }
    }

    pub fn ratio(numer: i128, denom: i128) -> Result<Self> {
        if denom == 0 {
            return Err(Error::OutOfRange {
                name: "denominator",
                value: 0.0,
            });
        }
        Ok(Self::exact(Rational::new(numer, denom)))
    }

    pub fn integer(i: i64) -> Self {
        Self::exact(Rational::from_integer(i as i128))
    }

    pub fn approx(x: f64) -> Self {
        Scalar {
            approx: x,
            exact: None,
        }
    }

    pub fn zero() -> Self {
        Self::integer(0)
    }

    pub fn one() -> Self {
        Self::integer(1)
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.approx
    }

    pub fn as_exact(&self) -> Option<Rational> {
        self.exact
    }

    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }

    pub fn is_zero(&self) -> bool {
        match &self.exact {
            Some(r) => r.is_zero(),
            None => self.approx == 0.0,
        }
    }

    fn combine(
        self,
        other: Scalar,
        exact: impl FnOnce(&Rational, &Rational) -> Option<Rational>,
        approx: impl FnOnce(f64, f64) -> f64,
    ) -> Scalar {
        match (&self.exact, &other.exact) {
            (Some(a), Some(b)) => match exact(a, b) {
                Some(r) => Scalar::exact(r),
                None => Scalar::approx(approx(self.approx, other.approx)),
            },
            _ => Scalar::approx(approx(self.approx, other.approx)),
        }
    }

    /// Exact comparison when both sides are exact, `f64` comparison otherwise.
    pub fn compare(&self, other: &Scalar) -> Ordering {
        match (&self.exact, &other.exact) {
            (Some(a), Some(b)) => a.cmp(b),
            _ => self.approx.total_cmp(&other.approx),
        }
    }

    /// Parses `"3"`, `"-1/4"`, `"0.25"` exactly and anything else `f64`
    /// understands (`"1e-3"`, `"inf"` is rejected) approximately.
    pub fn parse(text: &str) -> Result<Scalar> {
        let s = text.trim();
        let bad = || Error::Parse(alloc::string::String::from(text));
        if let Some((n, d)) = s.split_once('/') {
            let n: i128 = n.trim().parse().map_err(|_| bad())?;
            let d: i128 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            return Ok(Scalar::exact(Rational::new(n, d)));
        }
        if let Ok(i) = s.parse::<i128>() {
            return Ok(Scalar::exact(Rational::from_integer(i)));
        }
        if let Some(r) = parse_plain_decimal(s) {
            return Ok(Scalar::exact(r));
        }
        let x: f64 = s.parse().map_err(|_| bad())?;
        if !x.is_finite() {
            return Err(bad());
        }
        Ok(Scalar::approx(x))
    }
}

fn parse_plain_decimal(s: &str) -> Option<Rational> {
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.')?;
    if frac.is_empty() && int.is_empty() {
        return None;
    }
    if !int.bytes().all(|b| b.is_ascii_digit()) || !frac.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    if frac.len() > 30 {
        return None;
    }
    let mut numer: i128 = 0;
    for b in int.bytes().chain(frac.bytes()) {
        numer = numer.checked_mul(10)?.checked_add((b - b'0') as i128)?;
    }
    let denom = 10i128.checked_pow(frac.len() as u32)?;
    let r = Rational::new(numer, denom);
    Some(if neg { -r } else { r })
}

impl From<f64> for Scalar {
    fn from(x: f64) -> Self {
        Scalar::approx(x)
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::exact(r)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.exact {
            Some(r) => write!(f, "{r} (~{})", self.approx),
            None => write!(f, "~{}", self.approx),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.exact {
            Some(r) => write!(f, "{r}"),
            None => write!(f, "{}", self.approx),
        }
    }
}

impl core::ops::Add for Scalar {
    type Output = Scalar;

    fn add(self, other: Scalar) -> Scalar {
        self.combine(other, |a, b| a.checked_add(b), |a, b| a + b)
    }
}

impl core::ops::Sub for Scalar {
    type Output = Scalar;

    fn sub(self, other: Scalar) -> Scalar {
        self.combine(other, |a, b| a.checked_sub(b), |a, b| a - b)
    }
}

impl core::ops::Mul for Scalar {
    type Output = Scalar;

    fn mul(self, other: Scalar) -> Scalar {
        self.combine(other, |a, b| a.checked_mul(b), |a, b| a * b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals_exactly() {
        assert_eq!(
            Scalar::parse("1/4").unwrap().as_exact(),
            Some(Rational::new(1, 4))
        );
        assert_eq!(
            Scalar::parse(" -3 ").unwrap().as_exact(),
            Some(Rational::from_integer(-3))
        );
        assert_eq!(
            Scalar::parse("0.25").unwrap().as_exact(),
            Some(Rational::new(1, 4))
        );
        assert_eq!(
            Scalar::parse("-.5").unwrap().as_exact(),
            Some(Rational::new(-1, 2))
        );
        let e = Scalar::parse("1e-3").unwrap();
        assert!(!e.is_exact());
        assert_eq!(e.value(), 1e-3);
        assert!(Scalar::parse("1/0").is_err());
        assert!(Scalar::parse("abc").is_err());
        assert!(Scalar::parse("inf").is_err());
    }

    #[test]
    fn arithmetic_stays_exact() {
        let a = Scalar::ratio(1, 3).unwrap();
        let b = Scalar::ratio(1, 6).unwrap();
        let s = a + b;
        assert_eq!(s.as_exact(), Some(Rational::new(1, 2)));
        assert_eq!(s.value(), 0.5);
        assert_eq!((a * b).as_exact(), Some(Rational::new(1, 18)));
        assert_eq!((a - a).value(), 0.0);
    }

    #[test]
    fn mixing_with_approx_degrades() {
        let a = Scalar::ratio(1, 3).unwrap();
        let b = Scalar::approx(0.5);
        let s = a + b;
        assert!(!s.is_exact());
        assert!((s.value() - (1.0 / 3.0 + 0.5)).abs() < 1e-15);
    }

    #[test]
    fn overflow_degrades_instead_of_panicking() {
        let big = Scalar::exact(Rational::new(i128::MAX / 2, 1));
        let p = big * big;
        assert!(!p.is_exact());
        assert!(p.value() > 1e70);
    }

    #[test]
    fn comparison_is_exact_when_possible() {
        let third = Scalar::ratio(1, 3).unwrap();
        let also = Scalar::ratio(2, 6).unwrap();
        assert_eq!(third.compare(&also), Ordering::Equal);
        assert_eq!(third.compare(&Scalar::ratio(1, 2).unwrap()), Ordering::Less);
    }
}
