//! Ladder networks, terminal configurations, and the generic graph view.
//!
//! Nodes are `S_0..S_n` (one rail) and `T_0..T_n` (the other). Edge `a_i`
//! joins `S_{i-1}–S_i`, rung `b_i` joins `S_i–T_i`, and `c_i` joins
//! `T_{i-1}–T_i`.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{parse_rational, rational_to_f64, MultiPoly, Rational, Scalar};
use crate::error::{Error, Result};

/// Which reliability is asked of the ladder.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TerminalConfig {
    #[serde(rename = "S0_to_Tn", alias = "t", alias = "T")]
    S0ToTn,
    #[serde(rename = "S0_to_Sn", alias = "s", alias = "S")]
    S0ToSn,
    /// Symmetric ladder: `T_0 = S_n = b_0 = b_n = 1`, source `S_0`, terminal `T_n`.
    #[serde(rename = "S0_to_Un", alias = "u", alias = "U")]
    S0ToUn,
    #[serde(rename = "AllTerminal", alias = "all", alias = "A")]
    AllTerminal,
}

impl TerminalConfig {
    pub const ALL: [TerminalConfig; 4] = [
        TerminalConfig::S0ToTn,
        TerminalConfig::S0ToSn,
        TerminalConfig::S0ToUn,
        TerminalConfig::AllTerminal,
    ];

    pub fn short_name(self) -> &'static str {
        match self {
            TerminalConfig::S0ToTn => "t",
            TerminalConfig::S0ToSn => "s",
            TerminalConfig::S0ToUn => "u",
            TerminalConfig::AllTerminal => "all",
        }
    }

    pub fn is_two_terminal(self) -> bool {
        self != TerminalConfig::AllTerminal
    }
}

impl fmt::Display for TerminalConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TerminalConfig::S0ToTn => "S0_to_Tn",
            TerminalConfig::S0ToSn => "S0_to_Sn",
            TerminalConfig::S0ToUn => "S0_to_Un",
            TerminalConfig::AllTerminal => "AllTerminal",
        };
        f.write_str(s)
    }
}

impl FromStr for TerminalConfig {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "t" | "T" | "S0_to_Tn" => Ok(TerminalConfig::S0ToTn),
            "s" | "S" | "S0_to_Sn" => Ok(TerminalConfig::S0ToSn),
            "u" | "U" | "S0_to_Un" => Ok(TerminalConfig::S0ToUn),
            "all" | "A" | "AllTerminal" => Ok(TerminalConfig::AllTerminal),
            other => Err(Error::Parse(format!("unknown configuration `{other}`"))),
        }
    }
}

/// One edge or node of a ladder, e.g. `a3`, `b0`, `S2`, `T4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Component {
    A(usize),
    B(usize),
    C(usize),
    S(usize),
    T(usize),
}

impl Component {
    pub fn is_node(self) -> bool {
        matches!(self, Component::S(_) | Component::T(_))
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Component::A(i) => write!(f, "a{i}"),
            Component::B(i) => write!(f, "b{i}"),
            Component::C(i) => write!(f, "c{i}"),
            Component::S(i) => write!(f, "S{i}"),
            Component::T(i) => write!(f, "T{i}"),
        }
    }
}

impl FromStr for Component {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidComponent(s.to_string());
        let mut chars = s.chars();
        let kind = chars.next().ok_or_else(bad)?;
        let index: usize = chars.as_str().parse().map_err(|_| bad())?;
        match kind {
            'a' => Ok(Component::A(index)),
            'b' => Ok(Component::B(index)),
            'c' => Ok(Component::C(index)),
            'S' => Ok(Component::S(index)),
            'T' => Ok(Component::T(index)),
            _ => Err(bad()),
        }
    }
}

/// Common reliabilities for uniform ladders.
#[derive(Clone, Debug, PartialEq)]
pub struct UniformParams<T> {
    pub p: T,
    pub rho: T,
}

/// A ladder of index `n` with per-component reliabilities.
///
/// `a[i-1] = a_i` and `c[i-1] = c_i` for `i = 1..=n`; `b[i] = b_i`,
/// `s[i] = S_i`, `t[i] = T_i` for `i = 0..=n`. `c_0` is never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct LadderSpec<T> {
    n: usize,
    a: Vec<T>,
    b: Vec<T>,
    c: Vec<T>,
    s: Vec<T>,
    t: Vec<T>,
    config: TerminalConfig,
}

impl<T: Scalar> LadderSpec<T> {
    /// Validates lengths; for [`TerminalConfig::S0ToUn`] overwrites
    /// `T_0, S_n, b_0, b_n` with 1.
    pub fn new(
        n: usize,
        a: Vec<T>,
        b: Vec<T>,
        c: Vec<T>,
        s: Vec<T>,
        t: Vec<T>,
        config: TerminalConfig,
    ) -> Result<Self> {
        let check = |name: &str, v: &[T], want: usize| {
            if v.len() == want {
                Ok(())
            } else {
                Err(Error::InvalidSpec(format!(
                    "`{name}` has {} entries, expected {want}",
                    v.len()
                )))
            }
        };
        check("a", &a, n)?;
        check("b", &b, n + 1)?;
        check("c", &c, n)?;
        check("S", &s, n + 1)?;
        check("T", &t, n + 1)?;
        let mut spec = LadderSpec {
            n,
            a,
            b,
            c,
            s,
            t,
            config,
        };
        if config == TerminalConfig::S0ToUn {
            if n == 0 {
                return Err(Error::SymmetricLadderTooShort);
            }
            spec.t[0] = T::one();
            spec.s[n] = T::one();
            spec.b[0] = T::one();
            spec.b[n] = T::one();
        }
        Ok(spec)
    }

    /// Every edge `p`, every node `rho` (subject to the U forcing).
    pub fn uniform(n: usize, p: T, rho: T, config: TerminalConfig) -> Result<Self> {
        Self::new(
            n,
            vec![p.clone(); n],
            vec![p.clone(); n + 1],
            vec![p; n],
            vec![rho.clone(); n + 1],
            vec![rho; n + 1],
            config,
        )
    }

    pub fn from_params(n: usize, params: &UniformParams<T>, config: TerminalConfig) -> Result<Self> {
        Self::uniform(n, params.p.clone(), params.rho.clone(), config)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn config(&self) -> TerminalConfig {
        self.config
    }

    /// Same parameters read under another configuration (U forcing reapplied).
    pub fn with_config(&self, config: TerminalConfig) -> Result<Self> {
        Self::new(
            self.n,
            self.a.clone(),
            self.b.clone(),
            self.c.clone(),
            self.s.clone(),
            self.t.clone(),
            config,
        )
    }

    /// `a_i` for `1 ≤ i ≤ n`.
    pub fn a(&self, i: usize) -> &T {
        &self.a[i - 1]
    }

    pub fn b(&self, i: usize) -> &T {
        &self.b[i]
    }

    /// `c_i` for `1 ≤ i ≤ n`.
    pub fn c(&self, i: usize) -> &T {
        &self.c[i - 1]
    }

    pub fn node_s(&self, i: usize) -> &T {
        &self.s[i]
    }

    pub fn node_t(&self, i: usize) -> &T {
        &self.t[i]
    }

    fn check_range(&self, comp: Component) -> Result<()> {
        let n = self.n;
        let (what, i, lo, hi) = match comp {
            Component::A(i) => ("edge a", i, 1, n),
            Component::B(i) => ("rung b", i, 0, n),
            Component::C(i) => ("edge c", i, 1, n),
            Component::S(i) => ("node S", i, 0, n),
            Component::T(i) => ("node T", i, 0, n),
        };
        if i < lo || i > hi {
            return Err(Error::OutOfRange {
                what,
                index: i,
                max: hi,
            });
        }
        Ok(())
    }

    pub fn get(&self, comp: Component) -> Result<&T> {
        self.check_range(comp)?;
        Ok(match comp {
            Component::A(i) => &self.a[i - 1],
            Component::B(i) => &self.b[i],
            Component::C(i) => &self.c[i - 1],
            Component::S(i) => &self.s[i],
            Component::T(i) => &self.t[i],
        })
    }

    /// Copy with one component replaced. The U forcing is not reapplied, so
    /// callers can probe a forced component deliberately.
    pub fn with(&self, comp: Component, value: T) -> Result<Self> {
        self.check_range(comp)?;
        let mut out = self.clone();
        match comp {
            Component::A(i) => out.a[i - 1] = value,
            Component::B(i) => out.b[i] = value,
            Component::C(i) => out.c[i - 1] = value,
            Component::S(i) => out.s[i] = value,
            Component::T(i) => out.t[i] = value,
        }
        Ok(out)
    }

    /// Components pinned to 1 by the symmetric-ladder wiring.
    pub fn is_forced(&self, comp: Component) -> bool {
        if self.config != TerminalConfig::S0ToUn {
            return false;
        }
        matches!(comp, Component::T(0) | Component::B(0))
            || comp == Component::S(self.n)
            || comp == Component::B(self.n)
    }

    /// Every component of the ladder, edges first.
    pub fn components(&self) -> Vec<Component> {
        let n = self.n;
        let mut out: Vec<Component> = (1..=n).map(Component::A).collect();
        out.extend((0..=n).map(Component::B));
        out.extend((1..=n).map(Component::C));
        out.extend((0..=n).map(Component::S));
        out.extend((0..=n).map(Component::T));
        out
    }

    /// Components whose reliability actually influences the configured
    /// reliability: excludes the forced U entries and, for all-terminal, nodes.
    pub fn free_components(&self) -> Vec<Component> {
        self.components()
            .into_iter()
            .filter(|c| !self.is_forced(*c))
            .filter(|c| self.config.is_two_terminal() || !c.is_node())
            .collect()
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> LadderSpec<U> {
        LadderSpec {
            n: self.n,
            a: self.a.iter().map(&f).collect(),
            b: self.b.iter().map(&f).collect(),
            c: self.c.iter().map(&f).collect(),
            s: self.s.iter().map(&f).collect(),
            t: self.t.iter().map(&f).collect(),
            config: self.config,
        }
    }

    /// Vertices `S_0..S_n` then `T_0..T_n`; edges `b_0`, then `a_i, b_i, c_i`
    /// for `i = 1..=n`.
    pub fn to_generic_graph(&self) -> GenericGraph<T> {
        let n = self.n;
        let s_id = |i: usize| i;
        let t_id = |i: usize| n + 1 + i;
        let mut vertices: Vec<Vertex<T>> = (0..=n)
            .map(|i| Vertex::new(format!("S{i}"), self.s[i].clone()))
            .collect();
        vertices.extend((0..=n).map(|i| Vertex::new(format!("T{i}"), self.t[i].clone())));
        let mut edges = vec![Edge::new("b0", s_id(0), t_id(0), self.b[0].clone())];
        for i in 1..=n {
            edges.push(Edge::new(format!("a{i}"), s_id(i - 1), s_id(i), self.a[i - 1].clone()));
            edges.push(Edge::new(format!("b{i}"), s_id(i), t_id(i), self.b[i].clone()));
            edges.push(Edge::new(format!("c{i}"), t_id(i - 1), t_id(i), self.c[i - 1].clone()));
        }
        let terminals = match self.config {
            TerminalConfig::S0ToTn | TerminalConfig::S0ToUn => vec![s_id(0), t_id(n)],
            TerminalConfig::S0ToSn => vec![s_id(0), s_id(n)],
            TerminalConfig::AllTerminal => (0..vertices.len()).collect(),
        };
        GenericGraph {
            vertices,
            edges,
            terminals,
        }
    }

    /// JSON object `{"n","a","b","c","S","T","config"}` with values rendered by `f`.
    pub fn to_json_with(&self, f: impl Fn(&T) -> Value) -> Value {
        let arr = |v: &[T]| Value::Array(v.iter().map(&f).collect());
        json!({
            "n": self.n,
            "a": arr(&self.a),
            "b": arr(&self.b),
            "c": arr(&self.c),
            "S": arr(&self.s),
            "T": arr(&self.t),
            "config": self.config.to_string(),
        })
    }
}

impl LadderSpec<MultiPoly> {
    /// Uniform ladder in the symbols `p` and `rho`.
    pub fn symbolic_uniform(n: usize, config: TerminalConfig) -> Result<Self> {
        Self::uniform(n, MultiPoly::named("p"), MultiPoly::named("rho"), config)
    }

    /// Ladder with a distinct symbol per component (`a1`, `b0`, `S0`, …).
    pub fn symbolic_distinct(n: usize, config: TerminalConfig) -> Result<Self> {
        let sym = |prefix: &str, range: std::ops::RangeInclusive<usize>| -> Vec<MultiPoly> {
            range.map(|i| MultiPoly::named(&format!("{prefix}{i}"))).collect()
        };
        Self::new(
            n,
            sym("a", 1..=n),
            sym("b", 0..=n),
            sym("c", 1..=n),
            sym("S", 0..=n),
            sym("T", 0..=n),
            config,
        )
    }

    /// Parse the JSON form; entries may be numbers, rational strings such as
    /// `"9/10"`, or polynomial expressions such as `"1 - q"`.
    pub fn from_json(value: &Value) -> Result<Self> {
        let obj = value
            .as_object()
            .ok_or_else(|| Error::Parse("ladder spec must be a JSON object".into()))?;
        let n = obj
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("missing integer field `n`".into()))? as usize;
        let list = |key: &str| -> Result<Vec<MultiPoly>> {
            let arr = obj
                .get(key)
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Parse(format!("missing array field `{key}`")))?;
            arr.iter().map(json_entry).collect()
        };
        let config = match obj.get("config") {
            None => TerminalConfig::S0ToTn,
            Some(Value::String(s)) => s.parse()?,
            Some(_) => return Err(Error::Parse("`config` must be a string".into())),
        };
        Self::new(n, list("a")?, list("b")?, list("c")?, list("S")?, list("T")?, config)
    }

    pub fn to_json(&self) -> Value {
        self.to_json_with(|p| Value::String(p.to_text()))
    }

    /// Constant specs only.
    pub fn to_rational(&self) -> Result<LadderSpec<Rational>> {
        let all = [&self.a, &self.b, &self.c, &self.s, &self.t];
        if let Some(bad) = all.iter().flat_map(|v| v.iter()).find(|p| !p.is_constant()) {
            return Err(Error::InvalidSpec(format!(
                "entry `{bad}` is not a numeric constant"
            )));
        }
        Ok(self.map(|p| p.constant_value().expect("checked constant")))
    }
}

fn json_entry(v: &Value) -> Result<MultiPoly> {
    match v {
        Value::Number(num) => parse_rational(&num.to_string())
            .map(MultiPoly::constant)
            .ok_or_else(|| Error::Parse(format!("bad number {num}"))),
        Value::String(s) => MultiPoly::parse(s),
        other => Err(Error::Parse(format!("unsupported entry {other}"))),
    }
}

impl LadderSpec<Rational> {
    pub fn from_json(value: &Value) -> Result<Self> {
        let spec = LadderSpec::<MultiPoly>::from_json(value)?.to_rational()?;
        spec.validate_unit_interval()?;
        Ok(spec)
    }

    pub fn to_json(&self) -> Value {
        self.to_json_with(|r| Value::String(crate::algebra::format_rational(r)))
    }

    /// Every stored reliability in `[0, 1]`.
    pub fn validate_unit_interval(&self) -> Result<()> {
        for comp in self.components() {
            let v = self.get(comp)?;
            if v < &Rational::zero() || v > &Rational::one() {
                return Err(Error::InvalidSpec(format!(
                    "{comp} = {} lies outside [0, 1]",
                    crate::algebra::format_rational(v)
                )));
            }
        }
        Ok(())
    }

    pub fn to_f64(&self) -> LadderSpec<f64> {
        self.map(rational_to_f64)
    }
}

impl LadderSpec<f64> {
    pub fn validate_unit_interval(&self) -> Result<()> {
        for comp in self.components() {
            let v = *self.get(comp)?;
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::InvalidSpec(format!("{comp} = {v} lies outside [0, 1]")));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Vertex<T> {
    pub label: String,
    pub reliability: T,
}

impl<T> Vertex<T> {
    pub fn new(label: impl Into<String>, reliability: T) -> Self {
        Vertex {
            label: label.into(),
            reliability,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Edge<T> {
    pub label: String,
    pub u: usize,
    pub v: usize,
    pub reliability: T,
}

impl<T> Edge<T> {
    pub fn new(label: impl Into<String>, u: usize, v: usize, reliability: T) -> Self {
        Edge {
            label: label.into(),
            u,
            v,
            reliability,
        }
    }
}

/// Undirected multigraph with unreliable vertices and edges.
#[derive(Clone, Debug, PartialEq)]
pub struct GenericGraph<T> {
    pub vertices: Vec<Vertex<T>>,
    pub edges: Vec<Edge<T>>,
    pub terminals: Vec<usize>,
}

impl<T: Scalar> GenericGraph<T> {
    pub fn new(vertices: Vec<Vertex<T>>, edges: Vec<Edge<T>>, terminals: Vec<usize>) -> Result<Self> {
        let nv = vertices.len();
        for e in &edges {
            if e.u >= nv || e.v >= nv {
                return Err(Error::InvalidSpec(format!("edge {} has a missing endpoint", e.label)));
            }
            if e.u == e.v {
                return Err(Error::InvalidSpec(format!("edge {} is a self-loop", e.label)));
            }
        }
        if let Some(t) = terminals.iter().find(|t| **t >= nv) {
            return Err(Error::InvalidSpec(format!("terminal {t} is not a vertex")));
        }
        Ok(GenericGraph {
            vertices,
            edges,
            terminals,
        })
    }

    /// Complete graph `K_n`, every edge `p`, every vertex `rho`, terminals `0` and `1`.
    pub fn complete(n: usize, p: T, rho: T) -> Self {
        let vertices = (0..n).map(|i| Vertex::new(format!("v{i}"), rho.clone())).collect();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                edges.push(Edge::new(format!("e{i}_{j}"), i, j, p.clone()));
            }
        }
        GenericGraph {
            vertices,
            edges,
            terminals: (0..n.min(2)).collect(),
        }
    }

    pub fn num_components(&self) -> usize {
        self.vertices.len() + self.edges.len()
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> GenericGraph<U> {
        GenericGraph {
            vertices: self
                .vertices
                .iter()
                .map(|v| Vertex::new(v.label.clone(), f(&v.reliability)))
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|e| Edge::new(e.label.clone(), e.u, e.v, f(&e.reliability)))
                .collect(),
            terminals: self.terminals.clone(),
        }
    }
}
