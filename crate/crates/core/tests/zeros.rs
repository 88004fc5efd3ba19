use num_complex::Complex64;

use relladder::algebra::rat;
use relladder::model::TerminalConfig;
use relladder::par::Exec;
use relladder::zeros::{find_roots, limiting_curve, reliability_poly_in_p, root_curve_distance, CurveFamily};

fn roots(config: TerminalConfig, n: usize) -> Vec<Complex64> {
    let poly = reliability_poly_in_p(config, n, &rat(1, 1)).unwrap();
    let set = find_roots(&poly, Exec::default()).unwrap();
    assert!(set.residual < 1e-8, "{config} n={n}: residual {}", set.residual);
    set.roots
}

#[test]
fn roots_approach_the_limiting_curve() {
    for (config, family) in [
        (TerminalConfig::S0ToUn, CurveFamily::U),
        (TerminalConfig::S0ToTn, CurveFamily::T),
    ] {
        let curve = limiting_curve(family, 2000).unwrap();
        let dist: Vec<f64> = [10, 20, 30]
            .iter()
            .map(|&n| root_curve_distance(&roots(config, n), &curve, Exec::default()).max)
            .collect();
        assert!(dist[0] > dist[1] && dist[1] > dist[2], "{config}: {dist:?}");
    }
}

#[test]
fn right_half_plane_converges_faster_for_t() {
    let curve = limiting_curve(CurveFamily::T, 2000).unwrap();
    let z = roots(TerminalConfig::S0ToTn, 10);
    let report = root_curve_distance(&z, &curve, Exec::default());
    let mean = |pred: fn(&Complex64) -> bool| {
        let d: Vec<f64> = z
            .iter()
            .zip(&report.per_root)
            .filter(|(r, _)| pred(r))
            .map(|(_, d)| *d)
            .collect();
        d.iter().sum::<f64>() / d.len() as f64
    };
    assert!(mean(|r| r.re > 0.0) < mean(|r| r.re < 0.0));
}

#[test]
fn u_and_t_roots_share_the_right_half_plane_limit() {
    let curve_u = limiting_curve(CurveFamily::U, 2000).unwrap();
    let right: Vec<Complex64> = roots(TerminalConfig::S0ToTn, 30)
        .into_iter()
        .filter(|z| z.re > 0.6)
        .collect();
    assert!(!right.is_empty());
    let d = root_curve_distance(&right, &curve_u, Exec::default());
    assert!(d.max < 0.05, "{}", d.max);
}
