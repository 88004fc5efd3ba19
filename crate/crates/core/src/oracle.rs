//! Brute-force reliability by enumerating every component state.
//!
//! Components with reliability exactly 1 are fixed up; the remaining `m`
//! components are enumerated over all `2^m` masks (edges first, then
//! vertices). The connectivity indicator of each mask is computed with a
//! fresh union-find. The indicator table is then turned into the integer
//! coefficients of the multilinear reliability polynomial
//! `Σ_S c_S Π_{i∈S} θ_i` by an in-place subset-difference transform, so one
//! table can be evaluated for any parameter values in any coefficient domain.

use crate::algebra::{MultiPoly, Scalar};
use crate::error::{Error, Result};
use crate::model::GenericGraph;
use crate::par::{self, Exec};

/// Enumeration cap for numeric evaluation.
pub const NUMERIC_CAP: usize = 26;
/// Enumeration cap for symbolic evaluation.
pub const SYMBOLIC_CAP: usize = 18;
const MAX_VERTICES: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleMode {
    /// Exactly two terminals must be up and connected.
    TwoTerminal,
    /// Every vertex must be up and all of them connected.
    AllTerminal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Slot {
    Edge(usize),
    Vertex(usize),
}

/// Multilinear coefficients of a graph's reliability over its free components.
#[derive(Clone, Debug)]
pub struct OracleTable {
    free: Vec<Slot>,
    coeffs: Vec<(u32, i32)>,
}

impl OracleTable {
    /// Enumerate the state space of `graph`. Components whose reliability is
    /// exactly one are treated as always up.
    pub fn build<T: Scalar>(
        graph: &GenericGraph<T>,
        mode: OracleMode,
        cap: usize,
        exec: Exec,
    ) -> Result<Self> {
        let one = T::one();
        let mut free = Vec::new();
        for (i, e) in graph.edges.iter().enumerate() {
            if e.reliability != one {
                free.push(Slot::Edge(i));
            }
        }
        for (i, v) in graph.vertices.iter().enumerate() {
            if v.reliability != one {
                free.push(Slot::Vertex(i));
            }
        }
        if free.len() > cap {
            return Err(Error::TooManyComponents {
                components: free.len(),
                cap,
            });
        }
        let m = free.len();
        let mut table = indicator(graph, mode, &free, exec)?;
        subset_difference_transform(&mut table, m, exec);
        let coeffs = table
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(|(mask, c)| (mask as u32, *c))
            .collect();
        Ok(OracleTable { free, coeffs })
    }

    pub fn num_free(&self) -> usize {
        self.free.len()
    }

    /// Number of nonzero multilinear coefficients.
    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// Reliability at the parameters of `graph`, which must have the same
    /// structure and the same perfect components as the graph the table was
    /// built from.
    pub fn eval<T: Scalar>(&self, graph: &GenericGraph<T>, exec: Exec) -> T {
        let theta: Vec<T> = self.free.iter().map(|s| slot_value(graph, *s)).collect();
        let chunks: Vec<&[(u32, i32)]> = self.coeffs.chunks(4096).collect();
        let partial = par::map(exec, &chunks, |chunk| {
            let mut acc = T::zero();
            for &(mask, c) in chunk.iter() {
                let mut term = T::from_int(i64::from(c));
                let mut bits = mask;
                while bits != 0 {
                    let b = bits.trailing_zeros() as usize;
                    term = term * theta[b].clone();
                    bits &= bits - 1;
                }
                acc = acc + term;
            }
            acc
        });
        partial.into_iter().fold(T::zero(), |a, b| a + b)
    }
}

/// `[connected]` for every mask over `free` (other components up).
fn indicator<T: Scalar>(
    graph: &GenericGraph<T>,
    mode: OracleMode,
    free: &[Slot],
    exec: Exec,
) -> Result<Vec<i32>> {
    let nv = graph.vertices.len();
    if nv == 0 {
        return Err(Error::TerminalMismatch("graph has no vertices".into()));
    }
    if nv > MAX_VERTICES {
        return Err(Error::TooManyComponents {
            components: nv,
            cap: MAX_VERTICES,
        });
    }
    let terminals = match mode {
        OracleMode::TwoTerminal => {
            if graph.terminals.len() != 2 {
                return Err(Error::TerminalMismatch(format!(
                    "two-terminal mode needs 2 terminals, got {}",
                    graph.terminals.len()
                )));
            }
            [graph.terminals[0], graph.terminals[1]]
        }
        OracleMode::AllTerminal => [0, 0],
    };
    let mut edge_bit = vec![None; graph.edges.len()];
    let mut vertex_bit = vec![None; nv];
    for (bit, slot) in free.iter().enumerate() {
        match slot {
            Slot::Edge(i) => edge_bit[*i] = Some(bit),
            Slot::Vertex(i) => vertex_bit[*i] = Some(bit),
        }
    }
    let edges: Vec<(usize, usize, Option<usize>)> = graph
        .edges
        .iter()
        .zip(&edge_bit)
        .map(|(e, b)| (e.u, e.v, *b))
        .collect();
    let up = |mask: usize, bit: Option<usize>| bit.is_none_or(|b| mask >> b & 1 == 1);
    let connected = |mask: usize| -> bool {
        let vertex_up = |v: usize| up(mask, vertex_bit[v]);
        match mode {
            OracleMode::TwoTerminal => {
                if !vertex_up(terminals[0]) || !vertex_up(terminals[1]) {
                    return false;
                }
                if terminals[0] == terminals[1] {
                    return true;
                }
            }
            OracleMode::AllTerminal => {
                if !(0..nv).all(vertex_up) {
                    return false;
                }
            }
        }
        let mut parent = [0u8; MAX_VERTICES];
        for (v, slot) in parent.iter_mut().enumerate().take(nv) {
            *slot = v as u8;
        }
        let find = |parent: &mut [u8; MAX_VERTICES], mut x: usize| -> usize {
            while parent[x] as usize != x {
                let next = parent[parent[x] as usize];
                parent[x] = next;
                x = next as usize;
            }
            x
        };
        let mut groups = nv;
        for &(u, v, bit) in &edges {
            if up(mask, bit) && vertex_up(u) && vertex_up(v) {
                let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
                if ru != rv {
                    parent[ru] = rv as u8;
                    groups -= 1;
                }
            }
        }
        match mode {
            OracleMode::TwoTerminal => find(&mut parent, terminals[0]) == find(&mut parent, terminals[1]),
            OracleMode::AllTerminal => groups == 1,
        }
    };
    let mut table = vec![0i32; 1usize << free.len()];
    par::fill(exec, &mut table, |mask| i32::from(connected(mask)));
    Ok(table)
}

/// `c[S] = Σ_{R⊆S} (−1)^{|S∖R|} f[R]`, in place.
fn subset_difference_transform(table: &mut [i32], m: usize, exec: Exec) {
    for bit in 0..m {
        let half = 1usize << bit;
        let step = |block: &mut [i32]| {
            let (lo, hi) = block.split_at_mut(half);
            for (h, l) in hi.iter_mut().zip(lo.iter()) {
                *h -= *l;
            }
        };
        match exec {
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                table.par_chunks_mut(2 * half).for_each(step);
            }
            _ => table.chunks_mut(2 * half).for_each(step),
        }
    }
}

/// Exact reliability of `graph` (numeric cap).
pub fn oracle_rel<T: Scalar>(graph: &GenericGraph<T>, mode: OracleMode, exec: Exec) -> Result<T> {
    let table = OracleTable::build(graph, mode, NUMERIC_CAP, exec)?;
    Ok(table.eval(graph, exec))
}

/// Exact reliability polynomial of a graph with polynomial reliabilities.
pub fn oracle_rel_symbolic(
    graph: &GenericGraph<MultiPoly>,
    mode: OracleMode,
    exec: Exec,
) -> Result<MultiPoly> {
    let table = OracleTable::build(graph, mode, SYMBOLIC_CAP, exec)?;
    Ok(table.eval(graph, exec))
}

/// Direct state sum `Σ_mask Π(θ or 1−θ)·[connected]`, without the coefficient
/// transform. Sequential; kept as an independent cross-check for small graphs.
pub fn oracle_rel_naive<T: Scalar>(graph: &GenericGraph<T>, mode: OracleMode) -> Result<T> {
    let free: Vec<Slot> = (0..graph.edges.len())
        .map(Slot::Edge)
        .chain((0..graph.vertices.len()).map(Slot::Vertex))
        .collect();
    if free.len() > SYMBOLIC_CAP {
        return Err(Error::TooManyComponents {
            components: free.len(),
            cap: SYMBOLIC_CAP,
        });
    }
    let table = indicator(graph, mode, &free, Exec::Sequential)?;
    let theta: Vec<T> = free.iter().map(|s| slot_value(graph, *s)).collect();
    let mut total = T::zero();
    for (mask, f) in table.iter().enumerate() {
        if *f == 0 {
            continue;
        }
        let mut w = T::one();
        for (b, t) in theta.iter().enumerate() {
            w = if mask >> b & 1 == 1 {
                w * t.clone()
            } else {
                w * (T::one() - t.clone())
            };
        }
        total = total + w;
    }
    Ok(total)
}

fn slot_value<T: Scalar>(graph: &GenericGraph<T>, slot: Slot) -> T {
    match slot {
        Slot::Edge(i) => graph.edges[i].reliability.clone(),
        Slot::Vertex(i) => graph.vertices[i].reliability.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat, One, Rational};
    use crate::model::{Edge, Vertex};

    fn poly(s: &str) -> MultiPoly {
        MultiPoly::parse(s).unwrap()
    }

    #[test]
    fn single_edge_with_unreliable_ends() {
        let g = GenericGraph::new(
            vec![Vertex::new("s", poly("rho")), Vertex::new("t", poly("rho"))],
            vec![Edge::new("e", 0, 1, poly("p"))],
            vec![0, 1],
        )
        .unwrap();
        let r = oracle_rel_symbolic(&g, OracleMode::TwoTerminal, Exec::Sequential).unwrap();
        assert_eq!(r, poly("p*rho^2"));
    }

    #[test]
    fn parallel_edges() {
        let g = GenericGraph::new(
            vec![Vertex::new("s", MultiPoly::one()), Vertex::new("t", MultiPoly::one())],
            vec![Edge::new("e1", 0, 1, poly("p")), Edge::new("e2", 0, 1, poly("p"))],
            vec![0, 1],
        )
        .unwrap();
        let r = oracle_rel_symbolic(&g, OracleMode::TwoTerminal, Exec::Sequential).unwrap();
        assert_eq!(r, poly("2*p - p^2"));
    }

    #[test]
    fn merged_terminals_with_perfect_vertices() {
        let g = GenericGraph::new(
            vec![Vertex::new("v", int(1)), Vertex::new("w", int(1))],
            vec![Edge::new("e", 0, 1, rat(1, 3))],
            vec![0, 0],
        )
        .unwrap();
        assert_eq!(oracle_rel(&g, OracleMode::TwoTerminal, Exec::Sequential).unwrap(), int(1));
    }

    #[test]
    fn four_cycle_all_terminal() {
        let p = poly("p");
        let vs = (0..4).map(|i| Vertex::new(format!("v{i}"), MultiPoly::one())).collect();
        let es = (0..4).map(|i| Edge::new(format!("e{i}"), i, (i + 1) % 4, p.clone())).collect();
        let g = GenericGraph::new(vs, es, vec![0, 1, 2, 3]).unwrap();
        let r = oracle_rel_symbolic(&g, OracleMode::AllTerminal, Exec::Sequential).unwrap();
        assert_eq!(r, poly("4*p^3 - 3*p^4"));
    }

    #[test]
    fn transform_and_naive_sums_agree() {
        let vals = [rat(1, 2), rat(2, 3), rat(3, 5), rat(1, 7), rat(5, 6)];
        let vs: Vec<Vertex<Rational>> =
            (0..4).map(|i| Vertex::new(format!("v{i}"), vals[i].clone())).collect();
        let es = vec![
            Edge::new("e0", 0, 1, rat(1, 3)),
            Edge::new("e1", 1, 2, rat(3, 4)),
            Edge::new("e2", 2, 3, rat(2, 5)),
            Edge::new("e3", 0, 2, rat(4, 9)),
            Edge::new("e4", 1, 3, rat(1, 8)),
        ];
        let g = GenericGraph::new(vs, es, vec![0, 3]).unwrap();
        for mode in [OracleMode::TwoTerminal, OracleMode::AllTerminal] {
            let fast = oracle_rel(&g, mode, Exec::Parallel).unwrap();
            let slow = oracle_rel_naive(&g, mode).unwrap();
            assert_eq!(fast, slow);
        }
    }

    #[test]
    fn caps_and_terminal_arity() {
        let g: GenericGraph<f64> = GenericGraph::complete(8, 0.5, 0.5);
        assert!(matches!(
            oracle_rel(&g, OracleMode::TwoTerminal, Exec::Sequential),
            Err(Error::TooManyComponents { .. })
        ));
        let mut g: GenericGraph<f64> = GenericGraph::complete(3, 0.5, 1.0);
        g.terminals = vec![0];
        assert!(matches!(
            oracle_rel(&g, OracleMode::TwoTerminal, Exec::Sequential),
            Err(Error::TerminalMismatch(_))
        ));
    }
}
