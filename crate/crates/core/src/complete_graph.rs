//! Reliability polynomials of the complete graph `Kₙ` with identical edges,
//! by recurrence over the size of the component containing a fixed vertex.

use num_bigint::BigInt;
use num_integer::binomial;

use crate::algebra::{MultiPoly, One, Rational, Var, Zero};
use crate::error::{Error, Result};

fn choose(n: usize, k: usize) -> MultiPoly {
    MultiPoly::constant(Rational::from_integer(binomial(BigInt::from(n), BigInt::from(k))))
}

fn q_powers(max_exp: usize) -> Vec<MultiPoly> {
    let q = MultiPoly::one() - MultiPoly::var(Var::p());
    let mut out = Vec::with_capacity(max_exp + 1);
    out.push(MultiPoly::one());
    for k in 1..=max_exp {
        out.push(&out[k - 1] * &q);
    }
    out
}

fn need(n: usize, min: usize, what: &str) -> Result<()> {
    if n < min {
        return Err(Error::InvalidSpec(format!("{what} needs n ≥ {min}, got {n}")));
    }
    Ok(())
}

/// `[A₁, …, A_nmax]`, all-terminal reliability of `Kₙ` with perfect nodes.
pub fn kn_all_terminal(nmax: usize) -> Result<Vec<MultiPoly>> {
    need(nmax, 1, "all-terminal table")?;
    let qp = q_powers(nmax * nmax / 4);
    let mut a: Vec<MultiPoly> = Vec::with_capacity(nmax);
    for n in 1..=nmax {
        let mut an = MultiPoly::one();
        for j in 1..n {
            an = &an - &(&(&choose(n - 1, j - 1) * &a[j - 1]) * &qp[j * (n - j)]);
        }
        a.push(an);
    }
    Ok(a)
}

/// `[T₂, …, T_nmax]`, two-terminal reliability of `Kₙ` with perfect nodes.
pub fn kn_two_terminal_perfect(nmax: usize) -> Result<Vec<MultiPoly>> {
    need(nmax, 2, "two-terminal table")?;
    let a = kn_all_terminal(nmax)?;
    let qp = q_powers(nmax * nmax / 4);
    Ok((2..=nmax)
        .map(|n| {
            (2..=n).fold(MultiPoly::zero(), |acc, j| {
                &acc + &(&(&choose(n - 2, j - 2) * &a[j - 1]) * &qp[j * (n - j)])
            })
        })
        .collect())
}

/// `[𝒫₁, …, 𝒫_jmax]`: `𝒫_j` is the part of `T_{j+1}` carried by paths through
/// exactly `j − 1` intermediate vertices.
pub fn kn_p_polynomials(jmax: usize) -> Result<Vec<MultiPoly>> {
    need(jmax, 1, "path-polynomial table")?;
    let t = kn_two_terminal_perfect(jmax + 1)?;
    Ok((1..=jmax)
        .map(|j| {
            (1..=j).fold(MultiPoly::zero(), |acc, k| {
                let term = &choose(j - 1, k - 1) * &t[k - 1];
                if (j + k) % 2 == 0 {
                    &acc + &term
                } else {
                    &acc - &term
                }
            })
        })
        .collect())
}

/// `T_n(p, ρ)` with every vertex, terminals included, of reliability `ρ`.
pub fn kn_two_terminal_imperfect(n: usize) -> Result<MultiPoly> {
    need(n, 2, "two-terminal polynomial")?;
    let pj = kn_p_polynomials(n - 1)?;
    let rho = MultiPoly::var(Var::rho());
    let sum = (1..n).fold(MultiPoly::zero(), |acc, j| {
        &acc + &(&(&choose(n - 2, j - 1) * &rho.pow(j as u32 - 1)) * &pj[j - 1])
    });
    Ok(&sum * &rho.pow(2))
}

/// All-terminal reliability with every vertex of reliability `ρ`: all `n`
/// vertices must be up, so `A_n·ρⁿ`.
pub fn kn_all_terminal_imperfect(n: usize) -> Result<MultiPoly> {
    let a = kn_all_terminal(n)?;
    Ok(&a[n - 1] * &MultiPoly::var(Var::rho()).pow(n as u32))
}

/// The three tables for `K₂ … Kₙ`.
#[derive(Clone, Debug, PartialEq)]
pub struct KnTable {
    /// `A₁ … A_n`.
    pub all_terminal: Vec<MultiPoly>,
    /// `T₂ … T_n`.
    pub two_terminal: Vec<MultiPoly>,
    /// `𝒫₁ … 𝒫_{n−1}`.
    pub paths: Vec<MultiPoly>,
}

pub fn kn_table(n: usize) -> Result<KnTable> {
    need(n, 2, "table")?;
    Ok(KnTable {
        all_terminal: kn_all_terminal(n)?,
        two_terminal: kn_two_terminal_perfect(n)?,
        paths: kn_p_polynomials(n - 1)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(s: &str) -> MultiPoly {
        MultiPoly::parse(s).unwrap()
    }

    #[test]
    fn first_tables() {
        let a = kn_all_terminal(3).unwrap();
        assert_eq!(a[0], MultiPoly::one());
        assert_eq!(a[1], poly("p"));
        assert_eq!(a[2], poly("3*p^2 - 2*p^3"));
        let t = kn_two_terminal_perfect(3).unwrap();
        assert_eq!(t[0], poly("p"));
        assert_eq!(t[1], poly("p + p^2 - p^3"));
    }

    #[test]
    fn path_polynomials() {
        let pj = kn_p_polynomials(3).unwrap();
        assert_eq!(pj[0], poly("p"));
        assert_eq!(pj[1], poly("p^2 - p^3"));
        assert_eq!(pj[2], poly("2*p^3 - 7*p^4 + 7*p^5 - 2*p^6"));
    }

    #[test]
    fn imperfect_two_terminal() {
        assert_eq!(kn_two_terminal_imperfect(2).unwrap(), poly("p*rho^2"));
        assert_eq!(
            kn_two_terminal_imperfect(3).unwrap(),
            poly("p*rho^2 + p^2*rho^3 - p^3*rho^3")
        );
        assert_eq!(
            kn_two_terminal_imperfect(4).unwrap(),
            poly("p*rho^2 + 2*p^2*rho^3 - 7*p^4*rho^4 + 7*p^5*rho^4 - 2*p^6*rho^4 + p^3*(-2*rho^3 + 2*rho^4)")
        );
    }

    #[test]
    fn unit_reliability_and_rho_one() {
        let t = kn_two_terminal_perfect(6).unwrap();
        let one = MultiPoly::one();
        for (i, a) in kn_all_terminal(6).unwrap().iter().enumerate() {
            assert_eq!(a.substitute(&Var::p(), &one), one, "A_{}", i + 1);
        }
        for n in 2..=6 {
            let tr = kn_two_terminal_imperfect(n).unwrap();
            assert_eq!(tr.substitute(&Var::rho(), &one), t[n - 2], "n={n}");
            assert_eq!(tr.substitute(&Var::p(), &one).substitute(&Var::rho(), &one), one);
        }
        assert!(kn_all_terminal(0).is_err());
        assert!(!kn_all_terminal_imperfect(3).unwrap().is_zero());
    }
}
