use std::fmt::Write;

use num_complex::Complex64;

use super::curves::LimitingCurve;

/// `re,im,kind` rows: roots first, then curve samples.
pub fn to_csv(roots: &[Complex64], curve: Option<&LimitingCurve>) -> String {
    let mut out = String::from("re,im,kind\n");
    for z in roots {
        let _ = writeln!(out, "{},{},root", z.re, z.im);
    }
    if let Some(c) = curve {
        for cp in &c.points {
            let _ = writeln!(
                out,
                "{},{},curve_branch_{}",
                cp.point.re,
                cp.point.im,
                c.branch_index(cp.branch)
            );
        }
    }
    out
}

/// Scatter of the roots over the curve polylines, in the fixed window
/// `[−1, 1.6] × [−0.8, 0.8]`.
pub fn to_svg(roots: &[Complex64], curve: Option<&LimitingCurve>) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="-1 -0.8 2.6 1.6" width="780" height="480">"#
    );
    let _ = writeln!(
        out,
        r##"<g stroke="#999" stroke-width="0.003"><line x1="-1" y1="0" x2="1.6" y2="0"/><line x1="0" y1="-0.8" x2="0" y2="0.8"/></g>"##
    );
    if let Some(c) = curve {
        for (i, &branch) in c.family.branches().iter().enumerate() {
            let pts: Vec<String> = c
                .branch_points(branch)
                .iter()
                .map(|z| format!("{:.6},{:.6}", z.re, -z.im))
                .collect();
            let colour = if i == 0 { "#1f77b4" } else { "#2ca02c" };
            let _ = writeln!(
                out,
                r#"<polyline fill="none" stroke="{colour}" stroke-width="0.006" points="{}"/>"#,
                pts.join(" ")
            );
        }
    }
    for z in roots {
        let _ = writeln!(
            out,
            r##"<circle cx="{:.6}" cy="{:.6}" r="0.012" fill="#d62728"/>"##,
            z.re, -z.im
        );
    }
    out.push_str("</svg>\n");
    out
}
