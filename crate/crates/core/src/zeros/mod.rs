//! Zeros of uniform reliability polynomials in `p` and the curves they
//! accumulate on as `n → ∞`.

mod curves;
mod render;

pub use curves::{
    dominant_moduli, equal_modulus_gap, limiting_curve, root_curve_distance, u_minus_dominated,
    Branch, CurveFamily, CurvePoint, DistanceReport, LimitingCurve,
};
pub use render::{to_csv, to_svg};

use num_complex::Complex64;

use crate::algebra::{polynomial_roots, MultiPoly, Rational, Var, Zero};
use crate::error::{Error, Result};
use crate::model::{LadderSpec, TerminalConfig};
use crate::par::Exec;
use crate::transfer;

/// Uniform reliability as an exact polynomial in `p` with `ρ` fixed.
///
/// The all-terminal chain ignores nodes, so `rho` has no effect there.
pub fn reliability_poly_in_p(config: TerminalConfig, n: usize, rho: &Rational) -> Result<MultiPoly> {
    let spec = LadderSpec::uniform(
        n,
        MultiPoly::var(Var::p()),
        MultiPoly::constant(rho.clone()),
        config,
    )?;
    transfer::reliability(&spec)
}

#[derive(Clone, Debug)]
pub struct RootSet {
    pub polynomial: MultiPoly,
    /// Multiplicity of the root `p = 0`, removed before root-finding.
    pub deflated_trivial_degree: u32,
    pub roots: Vec<Complex64>,
    /// Largest `|f(z)|` of the cofactor scaled to unit max coefficient.
    pub residual: f64,
    pub converged: bool,
}

/// Roots of a univariate polynomial in `p`, with the `p^k` factor deflated.
pub fn find_roots(poly: &MultiPoly, exec: Exec) -> Result<RootSet> {
    let p = Var::p();
    if poly.vars().iter().any(|v| *v != p) {
        return Err(Error::NotUnivariate("p".into()));
    }
    if poly.is_zero() || poly.degree_in(&p) == 0 {
        return Err(Error::InvalidSpec(format!(
            "root-finding needs degree at least 1, got {}",
            poly.to_text()
        )));
    }
    let coeffs = poly.univariate_coeffs(&p)?;
    let k = coeffs.iter().take_while(|c| c.is_zero()).count();
    let report = polynomial_roots(&coeffs[k..], exec);
    Ok(RootSet {
        polynomial: poly.clone(),
        deflated_trivial_degree: k as u32,
        roots: report.roots,
        residual: report.residual,
        converged: report.converged,
    })
}
