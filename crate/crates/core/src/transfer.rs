//! Transfer-matrix chains for ladder reliabilities, and the delta-wye
//! transformation with unreliable nodes.
//!
//! Two-terminal reliabilities are sandwiches `row · M_n ⋯ M_1 · e₁` of 3×3
//! matrices; all-terminal reliability uses a 2×2 chain. Chains are
//! accumulated as row vectors from the left.

use crate::algebra::{rat, Field, Matrix, Scalar};
use crate::error::{Error, Result};
use crate::model::{LadderSpec, TerminalConfig};

fn check_k(k: usize, max: usize, what: &'static str) -> Result<()> {
    if k == 0 || k > max {
        return Err(Error::OutOfRange {
            what,
            index: k,
            max,
        });
    }
    Ok(())
}

/// Cell matrix `M_k` for the `S_0 → T_n` chain, `1 ≤ k ≤ n+1`.
///
/// Uses `a_k, b_{k−1}, c_{k−1}, S_{k−1}, T_{k−1}` with `c_0 = 0` and, for
/// `k = n+1`, `a_{n+1} = 0` (only the middle row survives there).
pub fn build_m<T: Scalar>(spec: &LadderSpec<T>, k: usize) -> Result<Matrix<T>> {
    let n = spec.n();
    check_k(k, n + 1, "transfer matrix M")?;
    let a = if k <= n { spec.a(k).clone() } else { T::zero() };
    let b = spec.b(k - 1).clone();
    let c = if k >= 2 { spec.c(k - 1).clone() } else { T::zero() };
    let s = spec.node_s(k - 1).clone();
    let t = spec.node_t(k - 1).clone();
    let st = s.clone() * t.clone();
    let abcst = a.clone() * b.clone() * c.clone() * st.clone();
    let one_2b = T::one() - T::from_int(2) * b.clone();
    Matrix::from_rows(vec![
        vec![a.clone() * s.clone(), abcst.clone(), abcst.clone()],
        vec![
            b.clone() * st.clone(),
            c.clone() * t,
            b.clone() * c.clone() * st.clone(),
        ],
        vec![
            -(a.clone() * b * st.clone()),
            -abcst,
            a * one_2b * c * st,
        ],
    ])
}

/// Cell matrix `M̃_k` for the `S_0 → S_n` chain, `1 ≤ k ≤ n+1`.
///
/// Uses `a_{k−1}, b_{k−1}, c_k, S_{k−1}, T_{k−1}` with `a_0 = 1` and, for
/// `k = n+1`, `c_{n+1} = 0`.
pub fn build_mtilde<T: Scalar>(spec: &LadderSpec<T>, k: usize) -> Result<Matrix<T>> {
    let n = spec.n();
    check_k(k, n + 1, "transfer matrix M-tilde")?;
    let a = if k >= 2 { spec.a(k - 1).clone() } else { T::one() };
    let b = spec.b(k - 1).clone();
    let c = if k <= n { spec.c(k).clone() } else { T::zero() };
    let s = spec.node_s(k - 1).clone();
    let t = spec.node_t(k - 1).clone();
    let st = s.clone() * t.clone();
    let abcst = a.clone() * b.clone() * c.clone() * st.clone();
    let one_2b = T::one() - T::from_int(2) * b.clone();
    Matrix::from_rows(vec![
        vec![
            a.clone() * s,
            b.clone() * st.clone(),
            a.clone() * b.clone() * st.clone(),
        ],
        vec![abcst.clone(), c.clone() * t, abcst.clone()],
        vec![-abcst, -(b * c.clone() * st.clone()), a * one_2b * c * st],
    ])
}

/// Cell matrix `M̂_k` for the all-terminal chain, `1 ≤ k ≤ n`, with `a_0 = 0`.
pub fn build_mhat<T: Scalar>(spec: &LadderSpec<T>, k: usize) -> Result<Matrix<T>> {
    check_k(k, spec.n(), "transfer matrix M-hat")?;
    let a = if k >= 2 { spec.a(k - 1).clone() } else { T::zero() };
    let b = spec.b(k - 1).clone();
    let c = spec.c(k).clone();
    let one = T::one();
    let a_plus_b = a.clone() + b.clone();
    Matrix::from_rows(vec![
        vec![
            a_plus_b.clone() * c.clone(),
            a.clone() * b.clone() * c.clone(),
        ],
        vec![
            a_plus_b * (one.clone() - T::from_int(2) * c.clone())
                + c.clone() * (one.clone() - b.clone()),
            a * (c.clone() + b * (one - T::from_int(3) * c)),
        ],
    ])
}

/// Left boundary row `T_n·(b_nS_n, c_n, b_nc_nS_n)` of the `S_0 → T_n` chain.
pub fn boundary_t<T: Scalar>(spec: &LadderSpec<T>) -> Vec<T> {
    let n = spec.n();
    let (b, s, t) = (spec.b(n), spec.node_s(n), spec.node_t(n));
    let c = if n >= 1 { spec.c(n).clone() } else { T::zero() };
    vec![
        t.clone() * b.clone() * s.clone(),
        t.clone() * c.clone(),
        t.clone() * b.clone() * c * s.clone(),
    ]
}

/// Left boundary row `S_n·(a_n, b_nT_n, a_nb_nT_n)` of the `S_0 → S_n` chain (`a_0 = 1`).
pub fn boundary_s<T: Scalar>(spec: &LadderSpec<T>) -> Vec<T> {
    let n = spec.n();
    let (b, s, t) = (spec.b(n), spec.node_s(n), spec.node_t(n));
    let a = if n >= 1 { spec.a(n).clone() } else { T::one() };
    vec![
        s.clone() * a.clone(),
        s.clone() * b.clone() * t.clone(),
        s.clone() * a * b.clone() * t.clone(),
    ]
}

/// Left boundary row `(a_n + b_n, a_nb_n)` of the all-terminal chain (`a_0 = 0`).
pub fn boundary_all<T: Scalar>(spec: &LadderSpec<T>) -> Vec<T> {
    let n = spec.n();
    let b = spec.b(n).clone();
    let a = if n >= 1 { spec.a(n).clone() } else { T::zero() };
    vec![a.clone() + b.clone(), a * b]
}

/// Which chain a configuration uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChainKind {
    /// `M_k` matrices (`S_0 → T_n` and the symmetric ladder).
    Rail,
    /// `M̃_k` matrices (`S_0 → S_n`).
    SameRail,
    /// `M̂_k` matrices (all-terminal).
    Spanning,
}

impl ChainKind {
    pub fn of(config: TerminalConfig) -> Self {
        match config {
            TerminalConfig::S0ToTn | TerminalConfig::S0ToUn => ChainKind::Rail,
            TerminalConfig::S0ToSn => ChainKind::SameRail,
            TerminalConfig::AllTerminal => ChainKind::Spanning,
        }
    }
}

/// Boundary row and the cell matrices in product order `[X_n, …, X_1]`.
pub fn chain_factors<T: Scalar>(
    spec: &LadderSpec<T>,
    kind: ChainKind,
) -> Result<(Vec<T>, Vec<Matrix<T>>)> {
    let n = spec.n();
    let (row, build): (Vec<T>, fn(&LadderSpec<T>, usize) -> Result<Matrix<T>>) = match kind {
        ChainKind::Rail => (boundary_t(spec), build_m),
        ChainKind::SameRail => (boundary_s(spec), build_mtilde),
        ChainKind::Spanning => (boundary_all(spec), build_mhat),
    };
    let mats = (1..=n).rev().map(|k| build(spec, k)).collect::<Result<_>>()?;
    Ok((row, mats))
}

/// `row · X_n ⋯ X_1 · e₁`.
pub fn contract<T: Scalar>(row: Vec<T>, mats: &[Matrix<T>]) -> Result<T> {
    let mut v = row;
    for m in mats {
        v = m.apply_left(&v)?;
    }
    Ok(v.into_iter().next().expect("nonempty row"))
}

/// Two-terminal reliability for the spec's configuration (T, S or U).
pub fn rel2_chain<T: Scalar>(spec: &LadderSpec<T>) -> Result<T> {
    let kind = ChainKind::of(spec.config());
    if kind == ChainKind::Spanning {
        return Err(Error::UnsupportedConfig(spec.config().to_string()));
    }
    let (row, mats) = chain_factors(spec, kind)?;
    contract(row, &mats)
}

/// All-terminal reliability of the ladder's edges; node reliabilities are
/// ignored (multiply by their product for imperfect nodes).
pub fn rel_a_chain<T: Scalar>(spec: &LadderSpec<T>) -> Result<T> {
    let (row, mats) = chain_factors(spec, ChainKind::Spanning)?;
    contract(row, &mats)
}

/// Reliability for whatever configuration the spec carries.
pub fn reliability<T: Scalar>(spec: &LadderSpec<T>) -> Result<T> {
    match spec.config() {
        TerminalConfig::AllTerminal => rel_a_chain(spec),
        _ => rel2_chain(spec),
    }
}

/// Star replacing a triangle: edges `p_A, p_B, p_C` to a new node `O`.
#[derive(Clone, Debug, PartialEq)]
pub struct DeltaWyeResult<F> {
    pub p_a: F,
    pub p_b: F,
    pub p_c: F,
    pub o: F,
}

/// Triangle `A, B, C` (node reliabilities) with edges `c = AB`, `a = BC`,
/// `b = AC`, mapped to an equivalent star.
pub fn delta_wye<F: Field>(
    a: &F,
    b: &F,
    c: &F,
    node_a: &F,
    node_b: &F,
    node_c: &F,
) -> Result<DeltaWyeResult<F>> {
    let [ac, ab, bc, abc] = compatibility_rhs(a, b, c, node_a, node_b, node_c);
    if ac.is_zero() || ab.is_zero() || bc.is_zero() || abc.is_zero() {
        return Err(Error::DegenerateTriangle);
    }
    let o = bc.clone() * ac.clone() * ab.clone() / (abc.clone() * abc.clone());
    Ok(DeltaWyeResult {
        p_a: abc.clone() / bc,
        p_b: abc.clone() / ac,
        p_c: abc / ab,
        o,
    })
}

/// Right-hand sides of the four compatibility relations: connection
/// probabilities of `A–C`, `A–B`, `B–C` and of all three nodes.
pub fn compatibility_rhs<F: Scalar>(a: &F, b: &F, c: &F, na: &F, nb: &F, nc: &F) -> [F; 4] {
    let abc = a.clone() * b.clone() * c.clone();
    [
        b.clone() + a.clone() * c.clone() * nb.clone() - abc.clone() * nb.clone(),
        c.clone() + a.clone() * b.clone() * nc.clone() - abc.clone() * nc.clone(),
        a.clone() + b.clone() * c.clone() * na.clone() - abc.clone() * na.clone(),
        a.clone() * b.clone() + b.clone() * c.clone() + a.clone() * c.clone()
            - F::from_rational(&rat(2, 1)) * abc,
    ]
}

/// Star-side values of the same four quantities.
pub fn star_lhs<F: Scalar>(r: &DeltaWyeResult<F>) -> [F; 4] {
    [
        r.p_a.clone() * r.o.clone() * r.p_c.clone(),
        r.p_a.clone() * r.o.clone() * r.p_b.clone(),
        r.p_b.clone() * r.o.clone() * r.p_c.clone(),
        r.p_a.clone() * r.o.clone() * r.p_b.clone() * r.p_c.clone(),
    ]
}
