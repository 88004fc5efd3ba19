//! Uniform-(p, ρ) eigenvalue solutions, closed-form reliabilities, and
//! failure-order expansions.

use num_complex::Complex64;

use crate::algebra::{MultiPoly, Var};
use crate::error::{Error, Result};
use crate::model::{LadderSpec, TerminalConfig};
use crate::transfer;

/// Below this modulus the discriminant is treated as zero (`x₊ = x₋`).
pub const DEGENERATE_DISC: f64 = 1e-10;

/// Eigenvalues of the reduced uniform cell (`x₀ = 1 − pρ`, `x±`).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EigenTriple {
    pub x0: Complex64,
    pub x_plus: Complex64,
    pub x_minus: Complex64,
    /// `1 + 4p²ρ − 8p³ρ² + 4p⁴ρ²`.
    pub discriminant: Complex64,
}

impl EigenTriple {
    pub fn is_degenerate(&self) -> bool {
        self.discriminant.norm() < DEGENERATE_DISC
    }
}

/// `x± = (1 + 2p(1−p)ρ ± √disc)/2` with the principal square root.
pub fn eigen_uniform(p: Complex64, rho: Complex64) -> EigenTriple {
    let one = Complex64::new(1.0, 0.0);
    let disc = one + 4.0 * p * p * rho - 8.0 * p.powu(3) * rho * rho
        + 4.0 * p.powu(4) * rho * rho;
    let root = disc.sqrt();
    let trace = one + 2.0 * p * (one - p) * rho;
    EigenTriple {
        x0: one - p * rho,
        x_plus: (trace + root) / 2.0,
        x_minus: (trace - root) / 2.0,
        discriminant: disc,
    }
}

pub fn eigen_uniform_real(p: f64, rho: f64) -> EigenTriple {
    eigen_uniform(Complex64::new(p, 0.0), Complex64::new(rho, 0.0))
}

/// `λ_i = pρ·x_i`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LambdaTriple {
    pub l0: Complex64,
    pub l_plus: Complex64,
    pub l_minus: Complex64,
}

pub fn lambdas(p: f64, rho: f64) -> LambdaTriple {
    let e = eigen_uniform_real(p, rho);
    let k = p * rho;
    LambdaTriple {
        l0: e.x0 * k,
        l_plus: e.x_plus * k,
        l_minus: e.x_minus * k,
    }
}

/// `λ₊`, the per-cell scaling of reliability for long ladders.
pub fn dominant_scaling(p: f64, rho: f64) -> f64 {
    lambdas(p, rho).l_plus.re
}

/// `(x₊^m − x₋^m)/(x₊ − x₋)`; a direct sum when the two are close.
fn divided_difference(xp: Complex64, xm: Complex64, m: u32) -> Complex64 {
    if m == 0 {
        return Complex64::new(0.0, 0.0);
    }
    let scale = xp.norm().max(xm.norm());
    if (xp - xm).norm() > 1e-4 * scale {
        return (xp.powu(m) - xm.powu(m)) / (xp - xm);
    }
    if xm.norm() == 0.0 {
        return xp.powu(m - 1);
    }
    let ratio = xp / xm;
    let mut term = xm.powu(m - 1);
    let mut acc = Complex64::new(0.0, 0.0);
    for _ in 0..m {
        acc += term;
        term *= ratio;
    }
    acc
}

/// Closed-form value with a note of whether the chain fallback was used.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClosedFormValue {
    pub value: f64,
    pub used_chain_fallback: bool,
}

/// Closed-form uniform two-terminal reliability (complex parameters allowed).
///
/// Returns `None` when the eigenvalues coincide.
pub fn rel2_closed_complex(
    config: TerminalConfig,
    n: usize,
    p: Complex64,
    rho: Complex64,
) -> Result<Option<Complex64>> {
    let e = eigen_uniform(p, rho);
    if e.is_degenerate() {
        return Ok(None);
    }
    let one = Complex64::new(1.0, 0.0);
    let n32 = n as u32;
    let pr = p * rho;
    let pref = p.powu(n32) * rho.powu(n32 + 1);
    let dd = |m: u32| divided_difference(e.x_plus, e.x_minus, m);
    let value = match config {
        TerminalConfig::S0ToTn | TerminalConfig::S0ToSn => {
            let sign = if config == TerminalConfig::S0ToTn { -1.0 } else { 1.0 };
            let bracket = sign * e.x0.powu(n32 + 1) + (one + pr) * dd(n32 + 1)
                - pr * (one - 2.0 * p + pr) * dd(n32);
            pref * bracket / 2.0
        }
        TerminalConfig::S0ToUn => {
            if n == 0 {
                return Err(Error::SymmetricLadderTooShort);
            }
            pref * ((2.0 - p) * dd(n32) + p * (one - 2.0 * rho + pr) * dd(n32 - 1))
        }
        TerminalConfig::AllTerminal => {
            return Err(Error::UnsupportedConfig(config.to_string()));
        }
    };
    Ok(Some(value))
}

/// Closed-form uniform two-terminal reliability; falls back to the transfer
/// chain when the discriminant is numerically zero.
pub fn rel2_closed(config: TerminalConfig, n: usize, p: f64, rho: f64) -> Result<ClosedFormValue> {
    let c = |v: f64| Complex64::new(v, 0.0);
    match rel2_closed_complex(config, n, c(p), c(rho))? {
        Some(v) => Ok(ClosedFormValue {
            value: v.re,
            used_chain_fallback: false,
        }),
        None => {
            let spec = LadderSpec::uniform(n, p, rho, config)?;
            Ok(ClosedFormValue {
                value: transfer::rel2_chain(&spec)?,
                used_chain_fallback: true,
            })
        }
    }
}

/// Eigenvalues `ζ± = p²(4 − 3p ± √(12 − 20p + 9p²))/2` of the uniform all-terminal cell.
pub fn zetas(p: f64) -> (f64, f64) {
    let root = (12.0 - 20.0 * p + 9.0 * p * p).sqrt();
    let base = 4.0 - 3.0 * p;
    (p * p * (base + root) / 2.0, p * p * (base - root) / 2.0)
}

/// `ℛ_n = (ζ₊^{n+1} − ζ₋^{n+1}) / (p·√(12 − 20p + 9p²))`, evaluated as
/// `p^{2n+1}` times a divided difference so small `p` stays accurate.
pub fn rel_a_closed(n: usize, p: f64) -> f64 {
    if p == 0.0 {
        return 0.0;
    }
    let root = (12.0 - 20.0 * p + 9.0 * p * p).sqrt();
    let base = 4.0 - 3.0 * p;
    let zp = Complex64::new((base + root) / 2.0, 0.0);
    let zm = Complex64::new((base - root) / 2.0, 0.0);
    p.powi(2 * n as i32 + 1) * divided_difference(zp, zm, n as u32 + 1).re
}

/// Failure expansion with a flag for indices outside the stated window.
#[derive(Clone, Debug, PartialEq)]
pub struct Expansion {
    /// `1 − Rel` in `q = 1 − p`, `eta = 1 − ρ`, truncated at total degree `max_order`.
    pub poly: MultiPoly,
    /// Set when `n < 4`, where the generic coefficient pattern does not yet hold.
    pub outside_window: bool,
}

/// Exact expansion of the uniform unreliability about `q = η = 0` (no `η`
/// for the all-terminal chain, which ignores nodes).
pub fn unreliability_expansion(
    config: TerminalConfig,
    n: usize,
    max_order: u32,
) -> Result<Expansion> {
    let spec = LadderSpec::symbolic_uniform(n, config)?;
    let rel = transfer::reliability(&spec)?;
    let one = MultiPoly::constant(crate::algebra::int(1));
    let q = &one - &MultiPoly::var(Var::q());
    let eta = &one - &MultiPoly::var(Var::eta());
    let shifted = rel.substitute(&Var::p(), &q).substitute(&Var::rho(), &eta);
    Ok(Expansion {
        poly: (&one - &shifted).truncate_total(max_order),
        outside_window: n < 4,
    })
}
