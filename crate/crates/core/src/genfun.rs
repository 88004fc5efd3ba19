//! Ordinary generating functions `𝒢(x) = Σ Rel_n xⁿ` of the uniform ladder
//! families, and their numeric partial fractions.
//!
//! Denominators come from the characteristic polynomial of the cell matrix.
//! Numerators are the product of the leading series terms with the
//! denominator, truncated, followed by gcd cancellation.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::algebra::{
    f64_to_rational, polynomial_roots, rational_to_f64, Matrix, MultiPoly, One, Rational,
    RationalFunction, Var, Zero,
};
use crate::error::{Error, Result};
use crate::model::{LadderSpec, TerminalConfig};
use crate::par::Exec;
use crate::sensitivity::{uniform_rung_sensitivity, Rung};
use crate::transfer;

/// Poles closer than this are treated as repeated.
pub const POLE_SEPARATION: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GenFunFamily {
    /// `S₀ → T_n`, series from `n = 0`.
    TUniform,
    /// `S₀ → S_n`, series from `n = 0`.
    SUniform,
    /// Symmetric ladder; the `x¹` coefficient is the `n = 1` network.
    UUniform,
    /// `S₀ → T_n` with per-type edge reliabilities `a, b, c`.
    TAbc,
    /// All-terminal with perfect nodes.
    AllTerminalUniform,
    /// `s_{b₀}` in the `S₀ → T_{2n}` ladder at `ρ = 1`.
    SensB0,
    /// `s_{b_n}` in the `S₀ → T_{2n}` ladder at `ρ = 1`.
    SensBcentral,
}

impl GenFunFamily {
    pub const ALL: [GenFunFamily; 7] = [
        GenFunFamily::TUniform,
        GenFunFamily::SUniform,
        GenFunFamily::UUniform,
        GenFunFamily::TAbc,
        GenFunFamily::AllTerminalUniform,
        GenFunFamily::SensB0,
        GenFunFamily::SensBcentral,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GenFunFamily::TUniform => "T_uniform",
            GenFunFamily::SUniform => "S_uniform",
            GenFunFamily::UUniform => "U_uniform",
            GenFunFamily::TAbc => "T_abc",
            GenFunFamily::AllTerminalUniform => "AllTerminal_uniform",
            GenFunFamily::SensB0 => "Sens_b0",
            GenFunFamily::SensBcentral => "Sens_bcentral",
        }
    }

    /// Variables the generating function is written in.
    pub fn vars(self) -> Vec<Var> {
        match self {
            GenFunFamily::TUniform | GenFunFamily::SUniform | GenFunFamily::UUniform => {
                vec![Var::p(), Var::rho(), Var::x()]
            }
            GenFunFamily::TAbc => vec![
                Var::new("a"),
                Var::new("b"),
                Var::new("c"),
                Var::rho(),
                Var::x(),
            ],
            GenFunFamily::AllTerminalUniform | GenFunFamily::SensB0 | GenFunFamily::SensBcentral => {
                vec![Var::p(), Var::x()]
            }
        }
    }

    /// Smallest index with a network behind it; lower coefficients are 0.
    pub fn first_index(self) -> usize {
        match self {
            GenFunFamily::UUniform => 1,
            _ => 0,
        }
    }

    /// Matrix whose powers generate the series.
    pub fn transfer_matrix(self) -> Result<Matrix<MultiPoly>> {
        let sym = |config| LadderSpec::symbolic_uniform(2, config);
        match self {
            GenFunFamily::TUniform | GenFunFamily::UUniform => {
                transfer::build_m(&sym(TerminalConfig::S0ToTn)?, 2)
            }
            GenFunFamily::SUniform => transfer::build_mtilde(&sym(TerminalConfig::S0ToSn)?, 2),
            GenFunFamily::TAbc => transfer::build_m(&abc_spec(2)?, 2),
            GenFunFamily::AllTerminalUniform => {
                transfer::build_mhat(&sym(TerminalConfig::AllTerminal)?, 2)
            }
            GenFunFamily::SensB0 | GenFunFamily::SensBcentral => {
                let m = transfer::build_m(&unit_rho_spec(2)?, 2)?;
                if self == GenFunFamily::SensB0 {
                    m.mul(&m)
                } else {
                    Ok(m.transpose().kronecker(&m))
                }
            }
        }
    }

    /// Coefficient of `xⁿ`, computed from a transfer chain.
    pub fn series_term(self, n: usize) -> Result<MultiPoly> {
        match self {
            GenFunFamily::TUniform => {
                transfer::rel2_chain(&LadderSpec::symbolic_uniform(n, TerminalConfig::S0ToTn)?)
            }
            GenFunFamily::SUniform => {
                transfer::rel2_chain(&LadderSpec::symbolic_uniform(n, TerminalConfig::S0ToSn)?)
            }
            GenFunFamily::UUniform if n == 0 => Ok(MultiPoly::zero()),
            GenFunFamily::UUniform => {
                transfer::rel2_chain(&LadderSpec::symbolic_uniform(n, TerminalConfig::S0ToUn)?)
            }
            GenFunFamily::TAbc => transfer::rel2_chain(&abc_spec(n)?),
            GenFunFamily::AllTerminalUniform => transfer::rel_a_chain(&LadderSpec::symbolic_uniform(
                n,
                TerminalConfig::AllTerminal,
            )?),
            GenFunFamily::SensB0 => uniform_rung_sensitivity(Rung::First, n),
            GenFunFamily::SensBcentral => uniform_rung_sensitivity(Rung::Central, n),
        }
    }
}

impl fmt::Display for GenFunFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GenFunFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        let family = match lower.as_str() {
            "t" | "t_uniform" => GenFunFamily::TUniform,
            "s" | "s_uniform" => GenFunFamily::SUniform,
            "u" | "u_uniform" => GenFunFamily::UUniform,
            "abc" | "t_abc" => GenFunFamily::TAbc,
            "all" | "allterminal" | "allterminal_uniform" => GenFunFamily::AllTerminalUniform,
            "sens_b0" | "b0" => GenFunFamily::SensB0,
            "sens_bcentral" | "bcentral" => GenFunFamily::SensBcentral,
            _ => return Err(Error::Parse(format!("unknown generating-function family '{s}'"))),
        };
        Ok(family)
    }
}

fn abc_spec(n: usize) -> Result<LadderSpec<MultiPoly>> {
    let (a, b, c) = (MultiPoly::named("a"), MultiPoly::named("b"), MultiPoly::named("c"));
    let rho = MultiPoly::var(Var::rho());
    LadderSpec::new(
        n,
        vec![a; n],
        vec![b; n + 1],
        vec![c; n],
        vec![rho.clone(); n + 1],
        vec![rho; n + 1],
        TerminalConfig::S0ToTn,
    )
}

fn unit_rho_spec(n: usize) -> Result<LadderSpec<MultiPoly>> {
    LadderSpec::uniform(
        n,
        MultiPoly::var(Var::p()),
        MultiPoly::one(),
        TerminalConfig::S0ToTn,
    )
}

/// `det(I − x·M) = 1 + c₁x + … + c_d x^d`.
pub fn denominator_from_matrix(m: &Matrix<MultiPoly>) -> MultiPoly {
    MultiPoly::from_coeffs_in(&Var::x(), &m.charpoly_coeffs())
}

/// Numerator `(Σ_{n<k} tₙxⁿ)·D mod x^k` over the denominator, simplified.
pub fn from_leading_terms(den: MultiPoly, terms: &[MultiPoly]) -> Result<RationalFunction> {
    let x = Var::x();
    let series = MultiPoly::from_coeffs_in(&x, terms);
    let num = (&series * &den).truncate_in(&x, terms.len().saturating_sub(1) as u32);
    Ok(RationalFunction::new(num, den)?.simplify())
}

pub fn generating_function(family: GenFunFamily) -> Result<RationalFunction> {
    let m = family.transfer_matrix()?;
    let den = denominator_from_matrix(&m);
    // The sequences follow the recurrence of M from index 1 at the latest.
    let terms = (0..=m.dim())
        .map(|n| family.series_term(n))
        .collect::<Result<Vec<_>>>()?;
    from_leading_terms(den, &terms)
}

/// `𝒢_S − 𝒢_T`, simplified.
pub fn gs_minus_gt_identity() -> Result<RationalFunction> {
    let gs = generating_function(GenFunFamily::SUniform)?;
    let gt = generating_function(GenFunFamily::TUniform)?;
    Ok((gs - gt).simplify())
}

/// One term `α/(1 − λx)` of a partial-fraction decomposition.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PoleTerm {
    /// Root of the denominator.
    pub pole: Complex64,
    /// `1/pole`.
    pub lambda: Complex64,
    pub alpha: Complex64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PartialFractions {
    pub terms: Vec<PoleTerm>,
    /// Polynomial part, ascending in `x` (empty for proper functions).
    pub polynomial: Vec<Complex64>,
}

impl PartialFractions {
    /// Coefficient of `x^k` reconstructed from the poles.
    pub fn coefficient(&self, k: usize) -> Complex64 {
        let poly = self.polynomial.get(k).copied().unwrap_or_default();
        self.terms
            .iter()
            .fold(poly, |acc, t| acc + t.alpha * t.lambda.powu(k as u32))
    }
}

fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

/// Split `num/den` (ascending complex coefficients) into quotient and remainder.
fn poly_divmod(num: &[Complex64], den: &[Complex64]) -> (Vec<Complex64>, Vec<Complex64>) {
    let dd = den.len() - 1;
    if num.len() <= dd {
        return (Vec::new(), num.to_vec());
    }
    let mut rem = num.to_vec();
    let mut quot = vec![Complex64::new(0.0, 0.0); num.len() - dd];
    for i in (0..quot.len()).rev() {
        let q = rem[i + dd] / den[dd];
        quot[i] = q;
        for (j, &d) in den.iter().enumerate() {
            rem[i + j] -= q * d;
        }
    }
    rem.truncate(dd);
    (quot, rem)
}

/// Numeric decomposition `g(x) = poly(x) + Σ αᵢ/(1 − λᵢx)` with every
/// variable except `x` bound.
pub fn partial_fractions_numeric(
    g: &RationalFunction,
    bindings: &[(Var, f64)],
) -> Result<PartialFractions> {
    let x = Var::x();
    let exact = bindings
        .iter()
        .map(|(v, val)| {
            f64_to_rational(*val)
                .map(|r| (v.clone(), MultiPoly::constant(r)))
                .ok_or_else(|| Error::Parse(format!("non-finite binding for {}", v.name())))
        })
        .collect::<Result<Vec<_>>>()?;
    let bind = |p: &MultiPoly| -> Result<Vec<Rational>> {
        let mut out = p.clone();
        for (v, val) in &exact {
            out = out.substitute(v, val);
        }
        out.univariate_coeffs(&x)
    };
    let num_q = bind(g.num())?;
    let mut den_q = bind(g.den())?;
    while den_q.len() > 1 && den_q.last().is_some_and(|c| c.is_zero()) {
        den_q.pop();
    }
    if den_q.first().is_none_or(|c| c.is_zero()) {
        return Err(Error::SeriesUndefined(g.den().to_text()));
    }
    let to_c = |v: &[crate::algebra::Rational]| -> Vec<Complex64> {
        v.iter()
            .map(|c| Complex64::new(rational_to_f64(c), 0.0))
            .collect()
    };
    let (num_c, den_c) = (to_c(&num_q), to_c(&den_q));
    let (polynomial, rem) = poly_divmod(&num_c, &den_c);
    if den_q.len() == 1 {
        return Ok(PartialFractions {
            terms: Vec::new(),
            polynomial,
        });
    }
    let den_exact = MultiPoly::from_univariate(&x, &den_q);
    if !den_exact.gcd(&den_exact.derivative(&x)).is_constant() {
        return Err(Error::DegeneratePoles(0.0));
    }
    let report = polynomial_roots(&den_q, Exec::Sequential);
    let poles = report.roots;
    let mut sep = f64::INFINITY;
    for i in 0..poles.len() {
        for j in i + 1..poles.len() {
            sep = sep.min((poles[i] - poles[j]).norm());
        }
    }
    if sep < POLE_SEPARATION {
        return Err(Error::DegeneratePoles(sep));
    }
    let dprime: Vec<Complex64> = den_c
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, &c)| c * k as f64)
        .collect();
    let terms = poles
        .iter()
        .map(|&r| {
            let residue = horner(&rem, r) / horner(&dprime, r);
            PoleTerm {
                pole: r,
                lambda: r.inv(),
                alpha: -residue / r,
            }
        })
        .collect();
    Ok(PartialFractions { terms, polynomial })
}
