//! Quotients of multivariate polynomials.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::{MultiPoly, Var};
use super::scalar::{Field, Rational, Scalar};
use crate::error::{Error, Result};

/// `num / den` with `den` not identically zero.
///
/// Construction normalizes by the constant term of `den` in `x` when that
/// term is a nonzero rational, so generating functions read `D(0) = 1`.
/// No gcd cancellation happens automatically; see [`simplify`](Self::simplify).
#[derive(Clone)]
pub struct RationalFunction {
    num: MultiPoly,
    den: MultiPoly,
}

impl RationalFunction {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::InvalidSpec("zero denominator".into()));
        }
        Ok(Self::normalized(num, den))
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        RationalFunction {
            num: p,
            den: MultiPoly::one(),
        }
    }

    fn normalized(num: MultiPoly, den: MultiPoly) -> Self {
        if num.is_zero() {
            return RationalFunction {
                num,
                den: MultiPoly::one(),
            };
        }
        let x = Var::x();
        let low = den
            .coeffs_in(&x)
            .into_iter()
            .find(|c| !c.is_zero())
            .and_then(|c| c.constant_value());
        let scale = match low {
            Some(c) => c,
            None => den.monic_factor(),
        };
        if scale.is_one() {
            return RationalFunction { num, den };
        }
        let inv = scale.recip();
        RationalFunction {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    /// Cancel the polynomial gcd of numerator and denominator.
    pub fn simplify(&self) -> Self {
        let g = self.num.gcd(&self.den);
        if g.is_constant() {
            return Self::normalized(self.num.clone(), self.den.clone());
        }
        let num = self.num.div_exact(&g).expect("gcd divides numerator");
        let den = self.den.div_exact(&g).expect("gcd divides denominator");
        Self::normalized(num, den)
    }

    /// Coefficients of `var^0 .. var^k` of the formal power series.
    pub fn series_coefficients(&self, var: &Var, k: usize) -> Result<Vec<MultiPoly>> {
        let d = self.den.coeffs_in(var);
        let n = self.num.coeffs_in(var);
        let d0 = d[0].clone();
        if d0.is_zero() {
            return Err(Error::SeriesUndefined(self.den.to_text()));
        }
        let inv0 = d0.constant_value().map(|c| c.recip());
        let mut out: Vec<MultiPoly> = Vec::with_capacity(k + 1);
        for m in 0..=k {
            let mut acc = n.get(m).cloned().unwrap_or_else(MultiPoly::zero);
            for j in 1..d.len().min(m + 1) {
                acc = &acc - &(&d[j] * &out[m - j]);
            }
            let term = match &inv0 {
                Some(inv) => acc.scale(inv),
                None => acc
                    .div_exact(&d0)
                    .ok_or_else(|| Error::SeriesUndefined(self.den.to_text()))?,
            };
            out.push(term);
        }
        Ok(out)
    }

    /// Evaluate in a field with values for every variable.
    pub fn eval<T: Field>(&self, bindings: &[(Var, T)]) -> Result<T> {
        Ok(self.num.eval(bindings)? / self.den.eval(bindings)?)
    }

    pub fn substitute(&self, v: &Var, value: &MultiPoly) -> Result<Self> {
        Self::new(self.num.substitute(v, value), self.den.substitute(v, value))
    }

    /// `(num, den)` rendered in the polynomial text format.
    pub fn to_text(&self) -> String {
        if self.den.is_one() {
            return self.num.to_text();
        }
        format!("({}) / ({})", self.num.to_text(), self.den.to_text())
    }
}

impl MultiPoly {
    /// Lexicographically leading coefficient (1 for the zero polynomial).
    fn monic_factor(&self) -> Rational {
        self.terms()
            .last()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::one)
    }
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({})", self.to_text())
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl Zero for RationalFunction {
    fn zero() -> Self {
        Self::from_poly(MultiPoly::zero())
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RationalFunction {
    fn one() -> Self {
        Self::from_poly(MultiPoly::one())
    }
}

impl Add for RationalFunction {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        if self.den == rhs.den {
            return Self::normalized(&self.num + &rhs.num, self.den);
        }
        Self::normalized(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for RationalFunction {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul for RationalFunction {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for RationalFunction {
    type Output = Self;
    /// Panics when dividing by the zero function.
    fn div(self, rhs: Self) -> Self {
        assert!(!rhs.num.is_zero(), "division by zero rational function");
        Self::normalized(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl Neg for RationalFunction {
    type Output = Self;
    fn neg(self) -> Self {
        RationalFunction {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Scalar for RationalFunction {
    fn from_rational(r: &Rational) -> Self {
        Self::from_poly(MultiPoly::constant(r.clone()))
    }
}

impl Field for RationalFunction {}
