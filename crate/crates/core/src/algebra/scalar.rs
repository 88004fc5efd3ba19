//! Coefficient domains shared by every matrix and chain computation.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Exact rational number used throughout the symbolic engine.
pub type Rational = BigRational;

/// A commutative ring with unit that can absorb rational constants.
///
/// Implemented for `f64`, [`Rational`], [`Complex64`], [`MultiPoly`](super::MultiPoly),
/// [`RationalFunction`](super::RationalFunction) and [`Dual`](super::Dual).
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_rational(r: &Rational) -> Self;

    fn from_int(v: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(v)))
    }
}

/// A [`Scalar`] with exact or floating division.
pub trait Field: Scalar + Div<Output = Self> {}

impl Scalar for f64 {
    fn from_rational(r: &Rational) -> Self {
        rational_to_f64(r)
    }

    fn from_int(v: i64) -> Self {
        v as f64
    }
}

impl Field for f64 {}

impl Scalar for Rational {
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
}

impl Field for Rational {}

impl Scalar for Complex64 {
    fn from_rational(r: &Rational) -> Self {
        Complex64::new(rational_to_f64(r), 0.0)
    }
}

impl Field for Complex64 {}

/// Correctly scaled conversion (numerator and denominator may each overflow `f64`).
pub fn rational_to_f64(r: &Rational) -> f64 {
    ratio_to_f64(r.numer(), r.denom())
}

/// `n / d` for arbitrarily large integers.
pub(crate) fn ratio_to_f64(n: &BigInt, d: &BigInt) -> f64 {
    if let (Some(nf), Some(df)) = (n.to_f64(), d.to_f64()) {
        if nf.is_finite() && df.is_finite() {
            return nf / df;
        }
    }
    // Keep the top 64 bits of each part; the quotient is then accurate to
    // well under an ulp before the power-of-two rescale.
    let top = |v: &BigInt| -> (f64, i64) {
        let extra = v.bits().saturating_sub(64);
        ((v >> extra).to_f64().unwrap_or(0.0), extra as i64)
    };
    let (nf, en) = top(n);
    let (df, ed) = top(d);
    let e = en - ed;
    let half = (e / 2).clamp(-2000, 2000) as i32;
    let rest = (e - e / 2).clamp(-2000, 2000) as i32;
    nf / df * 2f64.powi(half) * 2f64.powi(rest)
}

/// Exact rational conversion of a finite `f64` (every finite double is a dyadic rational).
pub fn f64_to_rational(v: f64) -> Option<Rational> {
    Rational::from_float(v)
}

/// Parse `"3/8"`, `"-2"`, or a decimal such as `"0.95"` into an exact rational.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let s = text.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Rational::new(n, d));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all: BigInt = format!("{int_part}{frac_part}").parse().ok()?;
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut value = if scale >= 0 {
        Rational::from_integer(all * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(all, num_traits::pow(ten, (-scale) as usize))
    };
    if neg {
        value = -value;
    }
    Some(value)
}

/// `"num/den"`, or just `"num"` for integers.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Integer power by repeated squaring for any [`Scalar`].
pub fn pow<T: Scalar>(base: &T, mut exp: u32) -> T {
    let mut result = T::one();
    let mut acc = base.clone();
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * acc.clone();
        }
        exp >>= 1;
        if exp > 0 {
            acc = acc.clone() * acc;
        }
    }
    result
}
