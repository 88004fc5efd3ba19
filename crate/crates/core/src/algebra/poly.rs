//! Sparse multivariate polynomials with exact rational coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::scalar::{format_rational, parse_rational, Rational, Scalar};
use crate::error::{Error, Result};

/// A polynomial indeterminate.
///
/// Variables order canonically as `p, rho, x, a, b, c, q, eta, y`, then any
/// other name alphabetically; exponent vectors follow that order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Var(Arc<str>);

const CANONICAL: [&str; 9] = ["p", "rho", "x", "a", "b", "c", "q", "eta", "y"];

impl Var {
    pub fn new(name: &str) -> Self {
        let name = match name {
            "ρ" => "rho",
            "η" => "eta",
            other => other,
        };
        Var(Arc::from(name))
    }

    pub fn name(&self) -> &str {
        &self.0
    }

    fn rank(&self) -> usize {
        CANONICAL
            .iter()
            .position(|c| *c == &*self.0)
            .unwrap_or(CANONICAL.len())
    }

    pub fn p() -> Self {
        Var::new("p")
    }
    pub fn rho() -> Self {
        Var::new("rho")
    }
    pub fn x() -> Self {
        Var::new("x")
    }
    pub fn q() -> Self {
        Var::new("q")
    }
    pub fn eta() -> Self {
        Var::new("eta")
    }
    pub fn y() -> Self {
        Var::new("y")
    }
}

impl Ord for Var {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank()
            .cmp(&other.rank())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Var {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

type Exps = Vec<u32>;

/// Sparse polynomial over the rationals.
///
/// Invariants: no zero coefficient is stored and every listed variable occurs
/// with a positive exponent in some term, so `==` is structural equality.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct MultiPoly {
    vars: Vec<Var>,
    terms: BTreeMap<Exps, Rational>,
}

impl MultiPoly {
    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        MultiPoly {
            vars: Vec::new(),
            terms,
        }
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(Rational::one(), &[(v, 1)])
    }

    pub fn named(name: &str) -> Self {
        Self::var(Var::new(name))
    }

    /// `coeff * Π v^e`; repeated variables multiply.
    pub fn monomial(coeff: Rational, powers: &[(Var, u32)]) -> Self {
        let mut vars: Vec<Var> = powers
            .iter()
            .filter(|(_, e)| *e > 0)
            .map(|(v, _)| v.clone())
            .collect();
        vars.sort();
        vars.dedup();
        let mut exps = vec![0u32; vars.len()];
        for (v, e) in powers {
            if let Ok(i) = vars.binary_search(v) {
                exps[i] += e;
            }
        }
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exps, coeff);
        }
        MultiPoly { vars, terms }.normalized()
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms as `(exponent vector aligned with [`vars`](Self::vars), coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn is_constant(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.vars.is_empty() {
            Some(self.terms.get(&Vec::new()).cloned().unwrap_or_else(Rational::zero))
        } else {
            None
        }
    }

    /// Coefficient of the monomial `Π v^e` (absent variables have exponent 0).
    pub fn coeff(&self, powers: &[(Var, u32)]) -> Rational {
        let mut exps = vec![0u32; self.vars.len()];
        for (v, e) in powers {
            match self.vars.binary_search(v) {
                Ok(i) => exps[i] = *e,
                Err(_) if *e > 0 => return Rational::zero(),
                Err(_) => {}
            }
        }
        self.terms.get(&exps).cloned().unwrap_or_else(Rational::zero)
    }

    fn var_index(&self, v: &Var) -> Option<usize> {
        self.vars.binary_search(v).ok()
    }

    pub fn degree_in(&self, v: &Var) -> u32 {
        match self.var_index(v) {
            Some(i) => self.terms.keys().map(|e| e[i]).max().unwrap_or(0),
            None => 0,
        }
    }

    /// Smallest exponent of `v` over all terms (0 for the zero polynomial).
    pub fn low_degree_in(&self, v: &Var) -> u32 {
        match self.var_index(v) {
            Some(i) => self.terms.keys().map(|e| e[i]).min().unwrap_or(0),
            None => 0,
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    fn normalized(mut self) -> Self {
        self.terms.retain(|_, c| !c.is_zero());
        let used: Vec<bool> = (0..self.vars.len())
            .map(|i| self.terms.keys().any(|e| e[i] > 0))
            .collect();
        if used.iter().all(|u| *u) {
            return self;
        }
        let vars = self
            .vars
            .iter()
            .zip(&used)
            .filter(|(_, u)| **u)
            .map(|(v, _)| v.clone())
            .collect();
        let terms = self
            .terms
            .into_iter()
            .map(|(e, c)| {
                let e = e
                    .into_iter()
                    .zip(&used)
                    .filter(|(_, u)| **u)
                    .map(|(x, _)| x)
                    .collect();
                (e, c)
            })
            .collect();
        MultiPoly { vars, terms }
    }

    fn union_vars(a: &[Var], b: &[Var]) -> Vec<Var> {
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i] < b[j]) {
                out.push(a[i].clone());
                i += 1;
            } else if i == a.len() || b[j] < a[i] {
                out.push(b[j].clone());
                j += 1;
            } else {
                out.push(a[i].clone());
                i += 1;
                j += 1;
            }
        }
        out
    }

    /// Terms re-expressed over the (super)set `vars`.
    fn aligned(&self, vars: &[Var]) -> BTreeMap<Exps, Rational> {
        if self.vars.as_slice() == vars {
            return self.terms.clone();
        }
        let pos: Vec<usize> = self
            .vars
            .iter()
            .map(|v| vars.binary_search(v).expect("superset"))
            .collect();
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut ne = vec![0u32; vars.len()];
                for (k, x) in e.iter().enumerate() {
                    ne[pos[k]] = *x;
                }
                (ne, c.clone())
            })
            .collect()
    }

    fn combine(&self, other: &Self, sign: i8) -> Self {
        let vars = Self::union_vars(&self.vars, &other.vars);
        let mut terms = self.aligned(&vars);
        for (e, c) in other.aligned(&vars) {
            let entry = terms.entry(e).or_insert_with(Rational::zero);
            if sign > 0 {
                *entry += c;
            } else {
                *entry -= c;
            }
        }
        MultiPoly { vars, terms }.normalized()
    }

    fn product(&self, other: &Self) -> Self {
        if self.terms.is_empty() || other.terms.is_empty() {
            return MultiPoly::zero();
        }
        let vars = Self::union_vars(&self.vars, &other.vars);
        let a = self.aligned(&vars);
        let b = other.aligned(&vars);
        let mut terms: BTreeMap<Exps, Rational> = BTreeMap::new();
        for (ea, ca) in &a {
            for (eb, cb) in &b {
                let e: Exps = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let prod = ca * cb;
                match terms.get_mut(&e) {
                    Some(slot) => *slot += prod,
                    None => {
                        terms.insert(e, prod);
                    }
                }
            }
        }
        MultiPoly { vars, terms }.normalized()
    }

    pub fn scale(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        super::scalar::pow(self, exp)
    }

    /// Evaluate with values supplied per variable by `lookup`.
    pub fn eval_with<T: Scalar>(&self, lookup: impl Fn(&Var) -> Option<T>) -> Result<T> {
        let values: Vec<T> = self
            .vars
            .iter()
            .map(|v| lookup(v).ok_or_else(|| Error::UnboundVariable(v.name().to_string())))
            .collect::<Result<_>>()?;
        if values.len() == 1 {
            // Horner in the single variable.
            let d = self.degree_in(&self.vars[0]) as usize;
            let mut coeffs = vec![Rational::zero(); d + 1];
            for (e, c) in &self.terms {
                coeffs[e[0] as usize] = c.clone();
            }
            let mut acc = T::zero();
            for c in coeffs.iter().rev() {
                acc = acc * values[0].clone() + T::from_rational(c);
            }
            return Ok(acc);
        }
        let mut powers: Vec<Vec<T>> = Vec::with_capacity(values.len());
        for (i, v) in values.iter().enumerate() {
            let d = self.terms.keys().map(|e| e[i]).max().unwrap_or(0) as usize;
            let mut row = Vec::with_capacity(d + 1);
            row.push(T::one());
            for k in 1..=d {
                let next = row[k - 1].clone() * v.clone();
                row.push(next);
            }
            powers.push(row);
        }
        let mut acc = T::zero();
        for (e, c) in &self.terms {
            let mut term = T::from_rational(c);
            for (i, x) in e.iter().enumerate() {
                if *x > 0 {
                    term = term * powers[i][*x as usize].clone();
                }
            }
            acc = acc + term;
        }
        Ok(acc)
    }

    /// Evaluate with a slice of `(variable, value)` bindings.
    pub fn eval<T: Scalar>(&self, bindings: &[(Var, T)]) -> Result<T> {
        self.eval_with(|v| bindings.iter().find(|(b, _)| b == v).map(|(_, t)| t.clone()))
    }

    /// Coefficients with respect to `v`: `self = Σ_k out[k] · v^k`.
    pub fn coeffs_in(&self, v: &Var) -> Vec<MultiPoly> {
        let Some(i) = self.var_index(v) else {
            return vec![self.clone()];
        };
        let d = self.degree_in(v) as usize;
        let rest: Vec<Var> = self
            .vars
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i)
            .map(|(_, v)| v.clone())
            .collect();
        let mut buckets: Vec<BTreeMap<Exps, Rational>> = vec![BTreeMap::new(); d + 1];
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            let k = ne.remove(i) as usize;
            buckets[k].insert(ne, c.clone());
        }
        buckets
            .into_iter()
            .map(|terms| {
                MultiPoly {
                    vars: rest.clone(),
                    terms,
                }
                .normalized()
            })
            .collect()
    }

    /// Inverse of [`coeffs_in`](Self::coeffs_in).
    pub fn from_coeffs_in(v: &Var, coeffs: &[MultiPoly]) -> Self {
        let x = MultiPoly::var(v.clone());
        let mut acc = MultiPoly::zero();
        for c in coeffs.iter().rev() {
            acc = &(&acc * &x) + c;
        }
        acc
    }

    /// Univariate coefficient list in `v` (errors if any other variable occurs).
    pub fn univariate_coeffs(&self, v: &Var) -> Result<Vec<Rational>> {
        if self.vars.iter().any(|w| w != v) {
            return Err(Error::NotUnivariate(v.name().to_string()));
        }
        self.coeffs_in(v)
            .into_iter()
            .map(|c| c.constant_value().ok_or_else(|| Error::NotUnivariate(v.name().to_string())))
            .collect()
    }

    pub fn from_univariate(v: &Var, coeffs: &[Rational]) -> Self {
        let mut terms = BTreeMap::new();
        for (k, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                terms.insert(vec![k as u32], c.clone());
            }
        }
        MultiPoly {
            vars: vec![v.clone()],
            terms,
        }
        .normalized()
    }

    /// Replace `v` by the polynomial `value`.
    pub fn substitute(&self, v: &Var, value: &MultiPoly) -> Self {
        if self.var_index(v).is_none() {
            return self.clone();
        }
        let coeffs = self.coeffs_in(v);
        let mut acc = MultiPoly::zero();
        for c in coeffs.iter().rev() {
            acc = &(&acc * value) + c;
        }
        acc
    }

    pub fn derivative(&self, v: &Var) -> Self {
        let Some(i) = self.var_index(v) else {
            return MultiPoly::zero();
        };
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut ne = e.clone();
                ne[i] -= 1;
                terms.insert(ne, c * Rational::from_integer(e[i].into()));
            }
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms,
        }
        .normalized()
    }

    /// Drop every term whose exponent of `v` exceeds `max_degree`.
    pub fn truncate_in(&self, v: &Var, max_degree: u32) -> Self {
        let Some(i) = self.var_index(v) else {
            return self.clone();
        };
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e[i] <= max_degree)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
        .normalized()
    }

    /// Drop every term of total degree above `max_degree`.
    pub fn truncate_total(&self, max_degree: u32) -> Self {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() <= max_degree)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
        .normalized()
    }

    /// Lexicographically leading term `(exponents, coefficient)`.
    fn leading(&self) -> Option<(&Exps, &Rational)> {
        self.terms.last_key_value()
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(MultiPoly::zero());
        }
        if let Some(c) = divisor.constant_value() {
            return Some(self.scale(&c.recip()));
        }
        let vars = Self::union_vars(&self.vars, &divisor.vars);
        if vars.len() != self.vars.len() {
            return None;
        }
        let mut rem = self.aligned(&vars);
        let div = divisor.aligned(&vars);
        let (lead_e, lead_c) = div.last_key_value().map(|(e, c)| (e.clone(), c.clone()))?;
        let mut quot: BTreeMap<Exps, Rational> = BTreeMap::new();
        while let Some((e, c)) = rem.last_key_value() {
            if e.iter().zip(&lead_e).any(|(a, b)| a < b) {
                return None;
            }
            let qe: Exps = e.iter().zip(&lead_e).map(|(a, b)| a - b).collect();
            let qc = c / &lead_c;
            for (de, dc) in &div {
                let te: Exps = de.iter().zip(&qe).map(|(a, b)| a + b).collect();
                let prod = dc * &qc;
                let slot = rem.entry(te.clone()).or_insert_with(Rational::zero);
                *slot -= prod;
                if slot.is_zero() {
                    rem.remove(&te);
                }
            }
            quot.insert(qe, qc);
        }
        Some(MultiPoly { vars, terms: quot }.normalized())
    }

    /// Scale so that the lexicographically leading coefficient is 1.
    pub fn monic(&self) -> MultiPoly {
        match self.leading() {
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
            None => MultiPoly::zero(),
        }
    }

    /// Pseudo-remainder of `a` by `b` viewed as polynomials in `v`.
    fn prem(a: &[MultiPoly], b: &[MultiPoly]) -> Vec<MultiPoly> {
        let k = b.len() - 1;
        let lb = &b[k];
        let mut r: Vec<MultiPoly> = a.to_vec();
        let mut e = (a.len() as i64) - (b.len() as i64) + 1;
        trim(&mut r);
        while !r.is_empty() && r.len() > k {
            let d = r.len() - 1;
            let lr = r[d].clone();
            let shift = d - k;
            for c in r.iter_mut() {
                *c = &*c * lb;
            }
            for (j, bc) in b.iter().enumerate() {
                let t = &lr * bc;
                r[j + shift] = &r[j + shift] - &t;
            }
            trim(&mut r);
            e -= 1;
        }
        if e > 0 {
            let f = lb.pow(e as u32);
            for c in r.iter_mut() {
                *c = &*c * &f;
            }
        }
        r
    }

    fn content_in(&self, v: &Var) -> MultiPoly {
        let mut g = MultiPoly::zero();
        for c in self.coeffs_in(v) {
            if c.is_zero() {
                continue;
            }
            g = g.gcd(&c);
            if g.is_constant() {
                return MultiPoly::one();
            }
        }
        g
    }

    fn primitive_in(&self, v: &Var) -> MultiPoly {
        let c = self.content_in(v);
        self.div_exact(&c).expect("content divides")
    }

    /// Greatest common divisor, normalised to a lexicographically monic polynomial.
    ///
    /// Recursive primitive remainder sequence: the main variable is chosen per
    /// level and contents are computed recursively in the remaining variables.
    pub fn gcd(&self, other: &MultiPoly) -> MultiPoly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if self.is_constant() || other.is_constant() {
            return MultiPoly::one();
        }
        let union = Self::union_vars(&self.vars, &other.vars);
        let v = union
            .iter()
            .filter(|v| self.degree_in(v) > 0 && other.degree_in(v) > 0)
            .min_by_key(|v| self.degree_in(v).max(other.degree_in(v)))
            .cloned();
        let Some(v) = v else {
            // No shared variable: any common factor divides the contents.
            let w = self.vars[0].clone();
            return self.content_in(&w).gcd(other);
        };
        let (ca, cb) = (self.content_in(&v), other.content_in(&v));
        let mut r0 = self.div_exact(&ca).expect("content divides").coeffs_in(&v);
        let mut r1 = other.div_exact(&cb).expect("content divides").coeffs_in(&v);
        if r0.len() < r1.len() {
            std::mem::swap(&mut r0, &mut r1);
        }
        loop {
            let r = Self::prem(&r0, &r1);
            if r.is_empty() {
                break;
            }
            if r.len() == 1 {
                r1 = vec![MultiPoly::one()];
                break;
            }
            r0 = r1;
            r1 = Self::from_coeffs_in(&v, &r).primitive_in(&v).coeffs_in(&v);
        }
        let pp = Self::from_coeffs_in(&v, &r1).primitive_in(&v);
        (&ca.gcd(&cb) * &pp).monic()
    }

    /// Render in the text format: `coeff*p^i*rho^j*x^k` terms sorted by total
    /// degree, then lexicographically by exponent vector.
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut ordered: Vec<(&Exps, &Rational)> = self.terms.iter().collect();
        ordered.sort_by(|(a, _), (b, _)| {
            let (da, db) = (a.iter().sum::<u32>(), b.iter().sum::<u32>());
            da.cmp(&db).then_with(|| a.cmp(b))
        });
        let mut out = String::new();
        for (idx, (e, c)) in ordered.into_iter().enumerate() {
            let neg = c.is_negative();
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mag = c.abs();
            let mut factors: Vec<String> = Vec::new();
            let has_vars = e.iter().any(|x| *x > 0);
            if !has_vars || !mag.is_one() {
                factors.push(format_rational(&mag));
            }
            for (v, x) in self.vars.iter().zip(e.iter()) {
                match *x {
                    0 => {}
                    1 => factors.push(v.name().to_string()),
                    k => factors.push(format!("{}^{}", v.name(), k)),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }

    /// Parse an arithmetic expression over integers, decimals, rationals and
    /// variable names with `+ - * ^ ( )`; `/` is allowed by constants only.
    pub fn parse(text: &str) -> Result<MultiPoly> {
        let tokens = tokenize(text)?;
        let mut parser = Parser { tokens, pos: 0 };
        let value = parser.expr()?;
        if parser.pos != parser.tokens.len() {
            return Err(Error::Parse(format!(
                "unexpected trailing input at token {}",
                parser.pos
            )));
        }
        Ok(value)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(PolyJson::from(self)).expect("serializable")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<MultiPoly> {
        let wire: PolyJson =
            serde_json::from_value(value.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        MultiPoly::try_from(wire)
    }
}

fn trim(v: &mut Vec<MultiPoly>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

/// JSON wire form `{"vars":[…],"terms":[[[exps…],"num/den"],…]}`.
#[derive(Serialize, Deserialize)]
struct PolyJson {
    vars: Vec<String>,
    terms: Vec<(Vec<u32>, String)>,
}

impl From<&MultiPoly> for PolyJson {
    fn from(p: &MultiPoly) -> Self {
        PolyJson {
            vars: p.vars.iter().map(|v| v.name().to_string()).collect(),
            terms: p
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), format_rational(c)))
                .collect(),
        }
    }
}

impl TryFrom<PolyJson> for MultiPoly {
    type Error = Error;

    fn try_from(wire: PolyJson) -> Result<Self> {
        let vars: Vec<Var> = wire.vars.iter().map(|n| Var::new(n)).collect();
        let mut acc = MultiPoly::zero();
        for (exps, coeff) in wire.terms {
            if exps.len() != vars.len() {
                return Err(Error::Parse("exponent vector length mismatch".into()));
            }
            let c = parse_rational(&coeff)
                .ok_or_else(|| Error::Parse(format!("bad coefficient `{coeff}`")))?;
            let powers: Vec<(Var, u32)> = vars.iter().cloned().zip(exps).collect();
            acc = &acc + &MultiPoly::monomial(c, &powers);
        }
        Ok(acc)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(Rational),
    Ident(String),
    Op(char),
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let ch = chars[i];
        if ch.is_whitespace() {
            i += 1;
        } else if ch.is_ascii_digit() || ch == '.' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            let r = parse_rational(&s).ok_or_else(|| Error::Parse(format!("bad number `{s}`")))?;
            out.push(Token::Num(r));
        } else if ch.is_alphabetic() || ch == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(ch) {
            out.push(Token::Op(ch));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character `{ch}`")));
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek_op(&self) -> Option<char> {
        match self.tokens.get(self.pos) {
            Some(Token::Op(c)) => Some(*c),
            _ => None,
        }
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut negate = false;
        match self.peek_op() {
            Some('-') => {
                negate = true;
                self.pos += 1;
            }
            Some('+') => self.pos += 1,
            _ => {}
        }
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        while let Some(op @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == '+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.power()?;
        while let Some(op @ ('*' | '/')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.power()?;
            if op == '*' {
                acc = &acc * &rhs;
            } else {
                let c = rhs
                    .constant_value()
                    .filter(|c| !c.is_zero())
                    .ok_or_else(|| Error::Parse("division by a non-constant or zero".into()))?;
                acc = acc.scale(&c.recip());
            }
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        if self.peek_op() == Some('^') {
            self.pos += 1;
            match self.tokens.get(self.pos) {
                Some(Token::Num(r)) if r.is_integer() && !r.is_negative() => {
                    let e: u32 = r
                        .to_integer()
                        .try_into()
                        .map_err(|_| Error::Parse("exponent too large".into()))?;
                    self.pos += 1;
                    return Ok(base.pow(e));
                }
                _ => return Err(Error::Parse("expected a non-negative integer exponent".into())),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        match self.tokens.get(self.pos).cloned() {
            Some(Token::Num(r)) => {
                self.pos += 1;
                Ok(MultiPoly::constant(r))
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                Ok(MultiPoly::named(&name))
            }
            Some(Token::Op('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek_op() != Some(')') {
                    return Err(Error::Parse("missing `)`".into()));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(Token::Op('-')) => {
                self.pos += 1;
                Ok(-self.power()?)
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({})", self.to_text())
    }
}

impl Zero for MultiPoly {
    fn zero() -> Self {
        MultiPoly::default()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for MultiPoly {
    fn one() -> Self {
        MultiPoly::constant(Rational::one())
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.combine(rhs, 1)
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.combine(rhs, -1)
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.product(rhs)
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: MultiPoly) -> MultiPoly {
        self.combine(&rhs, 1)
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        self.combine(&rhs, -1)
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        self.product(&rhs)
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(mut self) -> MultiPoly {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -self.clone()
    }
}

impl Scalar for MultiPoly {
    fn from_rational(r: &Rational) -> Self {
        MultiPoly::constant(r.clone())
    }
}
