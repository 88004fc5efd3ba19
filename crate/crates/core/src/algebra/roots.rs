//! Complex roots of univariate polynomials with exact rational coefficients.
//!
//! Simultaneous Aberth–Ehrlich iteration in `f64`, continued with the
//! polynomial evaluated in double-double arithmetic (coefficients converted
//! exactly to two doubles), then a Newton polish.

use num_complex::Complex64;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::scalar::{ratio_to_f64, rational_to_f64, Rational};
use crate::par::{self, Exec};

/// Unevaluated sum `hi + lo` with `|lo| ≤ ulp(hi)/2`.
#[derive(Clone, Copy, Debug, PartialEq)]
struct DD {
    hi: f64,
    lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn quick_two_sum(a: f64, b: f64) -> DD {
    let s = a + b;
    DD {
        hi: s,
        lo: b - (s - a),
    }
}

impl DD {
    const ZERO: DD = DD { hi: 0.0, lo: 0.0 };

    fn from_f64(v: f64) -> Self {
        DD { hi: v, lo: 0.0 }
    }

    fn from_rational(r: &Rational) -> Self {
        let hi = rational_to_f64(r);
        let rest = match Rational::from_float(hi) {
            Some(h) => rational_to_f64(&(r - h)),
            None => 0.0,
        };
        quick_two_sum(hi, rest)
    }

    fn add(self, o: DD) -> DD {
        let (s, e) = two_sum(self.hi, o.hi);
        quick_two_sum(s, e + self.lo + o.lo)
    }

    fn neg(self) -> DD {
        DD {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    fn mul(self, o: DD) -> DD {
        let p = self.hi * o.hi;
        let e = self.hi.mul_add(o.hi, -p) + (self.hi * o.lo + self.lo * o.hi);
        quick_two_sum(p, e)
    }

    fn scale(self, k: f64) -> DD {
        self.mul(DD::from_f64(k))
    }

    fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

#[derive(Clone, Copy, Debug)]
struct ComplexDd {
    re: DD,
    im: DD,
}

impl ComplexDd {
    fn from_complex(z: Complex64) -> Self {
        ComplexDd {
            re: DD::from_f64(z.re),
            im: DD::from_f64(z.im),
        }
    }

    fn add(self, o: ComplexDd) -> ComplexDd {
        ComplexDd {
            re: self.re.add(o.re),
            im: self.im.add(o.im),
        }
    }

    fn mul(self, o: ComplexDd) -> ComplexDd {
        ComplexDd {
            re: self.re.mul(o.re).add(self.im.mul(o.im).neg()),
            im: self.re.mul(o.im).add(self.im.mul(o.re)),
        }
    }

    fn to_complex(self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }
}

/// Roots with diagnostics.
#[derive(Clone, Debug)]
pub struct RootReport {
    pub roots: Vec<Complex64>,
    /// `max |f(z)|` over the roots for `f` scaled to unit max coefficient.
    pub residual: f64,
    pub converged: bool,
}

/// Polynomial prepared for repeated evaluation (coefficients low → high).
struct Prepared {
    exact: ExactPoly,
    float: Vec<f64>,
    dd: Vec<DD>,
}

impl Prepared {
    fn new(coeffs: &[Rational]) -> Self {
        let max = coeffs
            .iter()
            .map(|c| rational_to_f64(c).abs())
            .fold(0.0, f64::max);
        let inv = if max > 0.0 { 1.0 / max } else { 1.0 };
        let dd: Vec<DD> = coeffs
            .iter()
            .map(|c| DD::from_rational(c).scale(inv))
            .collect();
        Prepared {
            exact: ExactPoly::new(coeffs),
            float: dd.iter().map(|d| d.to_f64()).collect(),
            dd,
        }
    }

    fn degree(&self) -> usize {
        self.float.len() - 1
    }

    /// `(f(z), f'(z))` in double precision.
    fn eval(&self, z: Complex64) -> (Complex64, Complex64) {
        let mut f = Complex64::zero();
        let mut df = Complex64::zero();
        for c in self.float.iter().rev() {
            df = df * z + f;
            f = f * z + c;
        }
        (f, df)
    }

    /// Bound on the rounding error of [`Self::eval`] at `z`; below it `f(z)`
    /// carries no information.
    fn rounding_bound(&self, z: Complex64) -> f64 {
        let r = z.norm();
        let mut acc = 0.0;
        for c in self.float.iter().rev() {
            acc = acc * r + c.abs();
        }
        4.0 * (self.float.len() as f64) * f64::EPSILON * acc
    }

    /// Rounding bound of [`Self::eval_dd`], as for [`Self::rounding_bound`].
    fn rounding_bound_dd(&self, z: Complex64) -> f64 {
        self.rounding_bound(z) * f64::EPSILON
    }

    /// `(f(z), f'(z))` in double-double precision.
    fn eval_dd(&self, z: Complex64) -> (Complex64, Complex64) {
        let zz = ComplexDd::from_complex(z);
        let zero = ComplexDd {
            re: DD::ZERO,
            im: DD::ZERO,
        };
        let (mut f, mut df) = (zero, zero);
        for c in self.dd.iter().rev() {
            df = df.mul(zz).add(f);
            f = f.mul(zz).add(ComplexDd { re: *c, im: DD::ZERO });
        }
        (f.to_complex(), df.to_complex())
    }
}

/// Integer-coefficient copy of the polynomial for exact evaluation at
/// binary floating-point points.
struct ExactPoly {
    coeffs: Vec<BigInt>,
    deriv: Vec<BigInt>,
    max_abs: BigInt,
}

impl ExactPoly {
    fn new(coeffs: &[Rational]) -> Self {
        let lcm = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let coeffs: Vec<BigInt> = coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let deriv = coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect();
        let max_abs = coeffs.iter().map(|c| c.abs()).max().unwrap_or_else(BigInt::one);
        ExactPoly {
            coeffs,
            deriv,
            max_abs,
        }
    }

    /// `2^{k·deg}·f(z)` as integers, where `z = (X + iY)/2^k`.
    fn horner(coeffs: &[BigInt], x: &BigInt, y: &BigInt, k: u64) -> (BigInt, BigInt) {
        let d = coeffs.len() - 1;
        let mut re = coeffs[d].clone();
        let mut im = BigInt::zero();
        for j in (0..d).rev() {
            let next_re = &re * x - &im * y;
            im = &re * y + &im * x;
            re = next_re + (&coeffs[j] << (k * (d - j) as u64));
        }
        (re, im)
    }

    /// Newton step `f(z)/f'(z)` and `|f(z)|/max|c|`, both from exact values.
    fn newton(&self, z: Complex64) -> (Option<Complex64>, f64) {
        let (x, y, k) = dyadic_pair(z);
        let d = (self.coeffs.len() - 1) as u64;
        let (fr, fi) = Self::horner(&self.coeffs, &x, &y, k);
        let scale = &self.max_abs << (k * d);
        let residual = ratio_to_f64(&fr, &scale).hypot(ratio_to_f64(&fi, &scale));
        if fr.is_zero() && fi.is_zero() {
            return (None, 0.0);
        }
        if self.deriv.is_empty() {
            return (None, residual);
        }
        // f/f' = (F/2^{kd}) / (G/2^{k(d-1)}) = F·conj(G) / (|G|²·2^k).
        let (gr, gi) = Self::horner(&self.deriv, &x, &y, k);
        let den = (&gr * &gr + &gi * &gi) << k;
        if den.is_zero() {
            return (None, residual);
        }
        let nr = &fr * &gr + &fi * &gi;
        let ni = &fi * &gr - &fr * &gi;
        let w = Complex64::new(ratio_to_f64(&nr, &den), ratio_to_f64(&ni, &den));
        (Some(w), residual)
    }
}

/// `z = (X + iY)/2^k` exactly.
fn dyadic_pair(z: Complex64) -> (BigInt, BigInt, u64) {
    let parts = |v: f64| {
        let r = Rational::from_float(v).unwrap_or_else(Rational::zero);
        let k = r.denom().bits() - 1;
        (r.numer().clone(), k)
    };
    let (x, kx) = parts(z.re);
    let (y, ky) = parts(z.im);
    let k = kx.max(ky);
    (x << (k - kx), y << (k - ky), k)
}

const MAX_ITER: usize = 2000;

/// All complex roots of `Σ coeffs[k]·z^k`; leading zero coefficients are ignored.
pub fn polynomial_roots(coeffs: &[Rational], exec: Exec) -> RootReport {
    let mut coeffs = coeffs.to_vec();
    while coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
    if coeffs.len() <= 1 {
        return RootReport {
            roots: Vec::new(),
            residual: 0.0,
            converged: true,
        };
    }
    let poly = Prepared::new(&coeffs);
    let d = poly.degree();
    let (roots, converged_f64) = aberth(&poly);
    // Double precision stalls on clustered or badly scaled roots; keep the
    // simultaneous iteration going with double-double evaluation, and with
    // exact evaluation where even that cancels to noise.
    let newton_dd = |z: Complex64| {
        let (f, df) = poly.eval_dd(z);
        (f.norm() > poly.rounding_bound_dd(z)).then(|| f / df)
    };
    let (roots, mut converged) = aberth_sweeps(roots, MAX_ITER_DD, exec, newton_dd);
    converged |= converged_f64;
    let roots = par::map(exec, &roots, |z| polish(&poly, *z));
    let unresolved = roots
        .iter()
        .any(|z| poly.eval_dd(*z).0.norm() <= poly.rounding_bound_dd(*z));
    let roots = if unresolved {
        let newton_exact = |z: Complex64| poly.exact.newton(z).0;
        let (roots, ok) = aberth_sweeps(roots, MAX_ITER_EXACT, exec, newton_exact);
        converged = ok;
        roots
    } else {
        roots
    };
    let residual = par::map(exec, &roots, |z| poly.exact.newton(*z).1)
        .into_iter()
        .fold(0.0, f64::max);
    debug_assert_eq!(roots.len(), d);
    RootReport {
        roots,
        residual,
        converged,
    }
}

fn aberth(poly: &Prepared) -> (Vec<Complex64>, bool) {
    let d = poly.degree();
    let lead = poly.float[d].abs();
    let tail = poly
        .float
        .iter()
        .position(|c| *c != 0.0)
        .expect("nonzero polynomial");
    let radius = if tail == d {
        1.0
    } else {
        (poly.float[tail].abs() / lead).powf(1.0 / (d - tail) as f64)
    };
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / d as f64 + 0.4;
            Complex64::from_polar(radius, theta)
        })
        .collect();
    let mut done = vec![false; d];
    for _ in 0..MAX_ITER {
        for i in 0..d {
            if done[i] {
                continue;
            }
            let (f, df) = poly.eval(z[i]);
            if f.norm() <= poly.rounding_bound(z[i]) {
                done[i] = true;
                continue;
            }
            let w = f / df;
            let mut s = Complex64::zero();
            for j in 0..d {
                if j != i {
                    s += (z[i] - z[j]).inv();
                }
            }
            let corr = w / (Complex64::new(1.0, 0.0) - w * s);
            if !corr.is_finite() {
                continue;
            }
            z[i] -= corr;
            if corr.norm() <= 1e-15 * z[i].norm().max(1e-300) {
                done[i] = true;
            }
        }
        if done.iter().all(|x| *x) {
            return (z, true);
        }
    }
    (z, false)
}

const MAX_ITER_DD: usize = 200;
const MAX_ITER_EXACT: usize = 60;

/// Jacobi-style Aberth sweeps driven by a Newton-step oracle that returns
/// `None` once `f(z)` is indistinguishable from zero.
fn aberth_sweeps<F>(mut z: Vec<Complex64>, max_iter: usize, exec: Exec, newton: F) -> (Vec<Complex64>, bool)
where
    F: Fn(Complex64) -> Option<Complex64> + Sync,
{
    let d = z.len();
    for _ in 0..max_iter {
        let steps: Vec<Option<Complex64>> = par::map(exec, &z, |zi| newton(*zi));
        let mut moved = false;
        for i in 0..d {
            let Some(w) = steps[i].filter(|w| w.is_finite()) else {
                continue;
            };
            let mut s = Complex64::zero();
            for j in 0..d {
                if j != i {
                    s += (z[i] - z[j]).inv();
                }
            }
            let corr = w / (Complex64::new(1.0, 0.0) - w * s);
            if !corr.is_finite() {
                continue;
            }
            if corr.norm() > 2.0 * f64::EPSILON * z[i].norm() {
                moved = true;
            }
            z[i] -= corr;
        }
        if !moved {
            return (z, true);
        }
    }
    (z, false)
}

fn polish(poly: &Prepared, mut z: Complex64) -> Complex64 {
    let mut best = poly.eval_dd(z).0.norm();
    for _ in 0..8 {
        let (f, df) = poly.eval_dd(z);
        if df == Complex64::zero() {
            break;
        }
        let next = z - f / df;
        let r = poly.eval_dd(next).0.norm();
        if !(r < best) {
            break;
        }
        best = r;
        z = next;
    }
    z
}
