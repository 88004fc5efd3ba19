//! Component sensitivities `s_θ = ∂Rel/∂θ`.
//!
//! Reliability is affine in every component, so the derivative equals
//! `Rel(θ=1) − Rel(θ=0)`. The primary route instead swaps the single chain
//! factor that contains θ for its θ-derivative.

use crate::algebra::{Dual, Matrix, MultiPoly, One, RationalFunction, Scalar, Var};
use crate::closed_form::eigen_uniform_real;
use crate::error::{Error, Result};
use crate::genfun::{generating_function, GenFunFamily};
use crate::model::{Component, LadderSpec, TerminalConfig};
use crate::par::{self, Exec};
use crate::transfer::{self, ChainKind};

#[derive(Clone, Debug, PartialEq)]
pub struct SensitivityResult<T> {
    pub component: Component,
    pub value: T,
}

/// Where a component enters the chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Factor {
    Boundary,
    Cell(usize),
}

fn factor_of(kind: ChainKind, n: usize, comp: Component) -> Factor {
    // Rail cells M_k read a_k and the (k−1)-th b, c, S, T; the other two
    // chains read c_k and the (k−1)-th a, b (and nodes).
    let lagged = |j: usize| {
        if j < n {
            Factor::Cell(j + 1)
        } else {
            Factor::Boundary
        }
    };
    match (kind, comp) {
        (ChainKind::Rail, Component::A(k)) => Factor::Cell(k),
        (ChainKind::Rail, Component::B(j) | Component::C(j) | Component::S(j) | Component::T(j)) => {
            lagged(j)
        }
        (_, Component::C(k)) => Factor::Cell(k),
        (_, Component::A(j) | Component::B(j) | Component::S(j) | Component::T(j)) => lagged(j),
    }
}

fn check_component<T: Scalar>(spec: &LadderSpec<T>, comp: Component) -> Result<()> {
    spec.get(comp)?;
    if spec.is_forced(comp) {
        return Err(Error::InvalidComponent(format!(
            "{comp} is fixed to 1 in the {} configuration",
            spec.config()
        )));
    }
    if spec.config() == TerminalConfig::AllTerminal && comp.is_node() {
        return Err(Error::InvalidComponent(format!(
            "{comp}: node sensitivities are not defined for the all-terminal chain"
        )));
    }
    Ok(())
}

fn boundary<T: Scalar>(spec: &LadderSpec<T>, kind: ChainKind) -> Vec<T> {
    match kind {
        ChainKind::Rail => transfer::boundary_t(spec),
        ChainKind::SameRail => transfer::boundary_s(spec),
        ChainKind::Spanning => transfer::boundary_all(spec),
    }
}

fn cell<T: Scalar>(spec: &LadderSpec<T>, kind: ChainKind, k: usize) -> Result<Matrix<T>> {
    match kind {
        ChainKind::Rail => transfer::build_m(spec, k),
        ChainKind::SameRail => transfer::build_mtilde(spec, k),
        ChainKind::Spanning => transfer::build_mhat(spec, k),
    }
}

fn seeded<T: Scalar>(spec: &LadderSpec<T>, comp: Component) -> Result<LadderSpec<Dual<T>>> {
    let value = spec.get(comp)?.clone();
    spec.map(|v| Dual::constant(v.clone()))
        .with(comp, Dual::variable(value))
}

/// θ-derivative of the cell matrix containing `comp`, or `None` when the
/// component sits in the boundary row.
pub fn derivative_matrix<T: Scalar>(
    spec: &LadderSpec<T>,
    comp: Component,
) -> Result<Option<Matrix<T>>> {
    check_component(spec, comp)?;
    let kind = ChainKind::of(spec.config());
    match factor_of(kind, spec.n(), comp) {
        Factor::Boundary => Ok(None),
        Factor::Cell(k) => {
            let dual = seeded(spec, comp)?;
            Ok(Some(cell(&dual, kind, k)?.map(|d| d.eps.clone())))
        }
    }
}

/// Sensitivity by inserting the derivative factor into the chain.
pub fn sensitivity<T: Scalar>(
    spec: &LadderSpec<T>,
    comp: Component,
) -> Result<SensitivityResult<T>> {
    check_component(spec, comp)?;
    let kind = ChainKind::of(spec.config());
    let n = spec.n();
    let (row, mut mats) = transfer::chain_factors(spec, kind)?;
    let dual = seeded(spec, comp)?;
    let value = match factor_of(kind, n, comp) {
        Factor::Boundary => {
            let drow = boundary(&dual, kind).into_iter().map(|d| d.eps).collect();
            transfer::contract(drow, &mats)?
        }
        Factor::Cell(k) => {
            mats[n - k] = cell(&dual, kind, k)?.map(|d| d.eps.clone());
            transfer::contract(row, &mats)?
        }
    };
    Ok(SensitivityResult {
        component: comp,
        value,
    })
}

/// `Rel(θ=1) − Rel(θ=0)`.
pub fn sensitivity_by_difference<T: Scalar>(
    spec: &LadderSpec<T>,
    comp: Component,
) -> Result<SensitivityResult<T>> {
    check_component(spec, comp)?;
    let up = transfer::reliability(&spec.with(comp, T::one())?)?;
    let down = transfer::reliability(&spec.with(comp, T::zero())?)?;
    Ok(SensitivityResult {
        component: comp,
        value: up - down,
    })
}

/// Sensitivities of every free component, in `free_components` order.
pub fn sensitivity_table<T: Scalar>(
    spec: &LadderSpec<T>,
    exec: Exec,
) -> Result<Vec<SensitivityResult<T>>> {
    let comps = spec.free_components();
    par::map(exec, &comps, |&c| sensitivity(spec, c))
        .into_iter()
        .collect()
}

/// Rung whose sensitivity the generating functions track in a `2n` ladder.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rung {
    /// `b₀`, the access rung.
    First,
    /// `b_n`, the middle rung.
    Central,
}

/// `s_{b₀}` or `s_{b_n}` of the uniform `S₀ → T_{2n}` ladder with `ρ = 1`,
/// as a polynomial in `p`.
pub fn uniform_rung_sensitivity(rung: Rung, n: usize) -> Result<MultiPoly> {
    let spec = LadderSpec::uniform(
        2 * n,
        MultiPoly::var(Var::p()),
        MultiPoly::one(),
        TerminalConfig::S0ToTn,
    )?;
    let comp = match rung {
        Rung::First => Component::B(0),
        Rung::Central => Component::B(n),
    };
    Ok(sensitivity(&spec, comp)?.value)
}

pub fn sens_genfun(rung: Rung) -> Result<RationalFunction> {
    generating_function(match rung {
        Rung::First => GenFunFamily::SensB0,
        Rung::Central => GenFunFamily::SensBcentral,
    })
}

/// `(1 − 2p²)/√(1 + 4p²(1−p)²)`.
fn asymmetry(p: f64) -> f64 {
    (1.0 - 2.0 * p * p) / (1.0 + 4.0 * p * p * (1.0 - p) * (1.0 - p)).sqrt()
}

/// Closed form of the rung sensitivity in the uniform `2n` ladder (`ρ = 1`).
pub fn sens_closed(rung: Rung, n: usize, p: f64) -> f64 {
    let e = eigen_uniform_real(p, 1.0);
    let (xp, xm) = (e.x_plus.re, e.x_minus.re);
    let r = asymmetry(p);
    let m = 2 * n as i32;
    let q = 1.0 - p;
    let inner = match rung {
        Rung::First => q.powi(m) + xp.powi(m) / 2.0 * (1.0 + r) + xm.powi(m) / 2.0 * (1.0 - r),
        Rung::Central => {
            let cross = 4.0 * p * p * q / (1.0 + 4.0 * p * p * q * q) * (p * q).powi(n as i32);
            q.powi(m)
                + cross
                + xp.powi(m) / 4.0 * (1.0 + r).powi(2)
                + xm.powi(m) / 4.0 * (1.0 - r).powi(2)
        }
    };
    0.5 * p.powi(m) * inner
}

/// Large-`n` limit of `s_{b_central}/s_{b₀}`.
pub fn sens_ratio_limit(p: f64) -> f64 {
    0.5 * (1.0 + asymmetry(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, Rational};

    fn p() -> MultiPoly {
        MultiPoly::var(Var::p())
    }

    fn poly(s: &str) -> MultiPoly {
        MultiPoly::parse(s).unwrap()
    }

    #[test]
    fn derivative_matrix_for_a_rung() {
        let spec = LadderSpec::uniform(4, p(), MultiPoly::one(), TerminalConfig::S0ToTn).unwrap();
        let d = derivative_matrix(&spec, Component::B(2)).unwrap().unwrap();
        let expected = Matrix::from_rows(vec![
            vec![poly("0"), poly("p^2"), poly("p^2")],
            vec![poly("1"), poly("0"), poly("p")],
            vec![poly("-p"), poly("-p^2"), poly("-2*p^2")],
        ])
        .unwrap();
        assert_eq!(d, expected);
        assert!(derivative_matrix(&spec, Component::B(4)).unwrap().is_none());
    }

    #[test]
    fn six_rung_sensitivities() {
        let spec = LadderSpec::uniform(6, p(), MultiPoly::one(), TerminalConfig::S0ToTn).unwrap();
        let s = |j| sensitivity(&spec, Component::B(j)).unwrap().value;
        let b0 = poly(
            "(1-p)*p^6*(1+p+15*p^2+4*p^3-18*p^4-55*p^5+p^6+116*p^7+24*p^8-200*p^9+144*p^10-32*p^11)",
        );
        let b3 = poly(
            "(1-p)^2*p^6*(1+2*p+16*p^2+14*p^3-15*p^4-60*p^5-20*p^6+88*p^7+40*p^8-96*p^9+32*p^10)",
        );
        assert_eq!(s(0), b0);
        assert_eq!(s(3), b3);
        assert_eq!(s(1), s(5));
        assert_eq!(s(2), s(4));
        assert_eq!(s(6), s(0));
    }

    #[test]
    fn routes_agree_on_distinct_symbols() {
        for config in [
            TerminalConfig::S0ToTn,
            TerminalConfig::S0ToSn,
            TerminalConfig::S0ToUn,
            TerminalConfig::AllTerminal,
        ] {
            let spec = LadderSpec::symbolic_distinct(2, config).unwrap();
            for comp in spec.free_components() {
                let a = sensitivity(&spec, comp).unwrap().value;
                let b = sensitivity_by_difference(&spec, comp).unwrap().value;
                assert_eq!(a, b, "{config} {comp}");
            }
        }
    }

    #[test]
    fn invalid_components() {
        let spec = LadderSpec::uniform(3, rat(1, 2), rat(1, 1), TerminalConfig::S0ToUn).unwrap();
        assert!(matches!(
            sensitivity(&spec, Component::B(0)),
            Err(Error::InvalidComponent(_))
        ));
        assert!(sensitivity(&spec, Component::A(4)).is_err());
        let all: LadderSpec<Rational> = spec.with_config(TerminalConfig::AllTerminal).unwrap();
        assert!(sensitivity(&all, Component::S(1)).is_err());
    }

    #[test]
    fn closed_forms_match_exact_values() {
        for n in 1..=5 {
            for rung in [Rung::First, Rung::Central] {
                let exact = uniform_rung_sensitivity(rung, n).unwrap();
                for (num, den) in [(1, 10), (9, 20), (4, 5), (97, 100)] {
                    let pv = num as f64 / den as f64;
                    let want: Rational = exact.eval(&[(Var::p(), rat(num, den))]).unwrap();
                    let want = crate::algebra::rational_to_f64(&want);
                    let got = sens_closed(rung, n, pv);
                    assert!((want - got).abs() < 1e-12, "{rung:?} n={n} p={pv}");
                }
            }
        }
    }

    #[test]
    fn ratio_limit_ends() {
        assert!((sens_ratio_limit(0.0) - 1.0).abs() < 1e-15);
        assert!(sens_ratio_limit(1.0).abs() < 1e-15);
    }
}
