use relladder::algebra::{rat, MultiPoly, One, Rational, Var};
use relladder::complete_graph::{
    kn_all_terminal, kn_all_terminal_imperfect, kn_two_terminal_imperfect, kn_two_terminal_perfect,
};
use relladder::model::GenericGraph;
use relladder::oracle::{oracle_rel, oracle_rel_symbolic, OracleMode};
use relladder::par::Exec;

fn p() -> MultiPoly {
    MultiPoly::var(Var::p())
}

fn rho() -> MultiPoly {
    MultiPoly::var(Var::rho())
}

#[test]
fn perfect_nodes_match_enumeration() {
    let a = kn_all_terminal(5).unwrap();
    let t = kn_two_terminal_perfect(5).unwrap();
    for n in 2..=5 {
        let g = GenericGraph::complete(n, p(), MultiPoly::one());
        let two = oracle_rel_symbolic(&g, OracleMode::TwoTerminal, Exec::default()).unwrap();
        let all = oracle_rel_symbolic(&g, OracleMode::AllTerminal, Exec::default()).unwrap();
        assert_eq!(two, t[n - 2], "T{n}");
        assert_eq!(all, a[n - 1], "A{n}");
    }
}

#[test]
fn imperfect_nodes_match_enumeration() {
    for n in 2..=5 {
        let g = GenericGraph::complete(n, p(), rho());
        let two = oracle_rel_symbolic(&g, OracleMode::TwoTerminal, Exec::default()).unwrap();
        assert_eq!(two, kn_two_terminal_imperfect(n).unwrap(), "T{n}(p,rho)");
    }
    for n in 2..=4 {
        let g = GenericGraph::complete(n, p(), rho());
        let all = oracle_rel_symbolic(&g, OracleMode::AllTerminal, Exec::default()).unwrap();
        assert_eq!(all, kn_all_terminal_imperfect(n).unwrap(), "A{n} rho^{n}");
    }
}

#[test]
fn numeric_spot_values() {
    let eval = |poly: &MultiPoly, pv: Rational, rv: Rational| -> Rational {
        poly.eval(&[(Var::p(), pv), (Var::rho(), rv)]).unwrap()
    };
    let t4 = &kn_two_terminal_perfect(4).unwrap()[2];
    let g = GenericGraph::complete(4, rat(9, 10), rat(1, 1));
    let want: Rational = oracle_rel(&g, OracleMode::TwoTerminal, Exec::default()).unwrap();
    assert_eq!(eval(t4, rat(9, 10), rat(1, 1)), want);

    let t4r = kn_two_terminal_imperfect(4).unwrap();
    let g = GenericGraph::complete(4, rat(1, 3), rat(1, 2));
    let want: Rational = oracle_rel(&g, OracleMode::TwoTerminal, Exec::default()).unwrap();
    assert_eq!(eval(&t4r, rat(1, 3), rat(1, 2)), want);
}
