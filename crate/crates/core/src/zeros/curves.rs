use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::closed_form::eigen_uniform;
use crate::error::{Error, Result};
use crate::par::{self, Exec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CurveFamily {
    /// Symmetric ladder: both arcs where `|x₊| = |x₋|`.
    U,
    /// `S₀ → T_n`: the outer U arc plus the branch where `|x₀|` ties a dominant `x±`.
    T,
    /// All-terminal: the arc where `|ζ₊| = |ζ₋|`.
    AllTerminal,
}

impl CurveFamily {
    pub fn branches(self) -> &'static [Branch] {
        match self {
            CurveFamily::U => &[Branch::UPlus, Branch::UMinus],
            CurveFamily::T => &[Branch::UPlus, Branch::TExtra],
            CurveFamily::AllTerminal => &[Branch::AllTerminal],
        }
    }
}

impl fmt::Display for CurveFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CurveFamily::U => "U_curve",
            CurveFamily::T => "T_extra_curve",
            CurveFamily::AllTerminal => "AllTerminal_curve",
        })
    }
}

impl FromStr for CurveFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "u" | "u_curve" => Ok(CurveFamily::U),
            "t" | "t_curve" | "t_extra_curve" => Ok(CurveFamily::T),
            "all" | "allterminal" | "allterminal_curve" => Ok(CurveFamily::AllTerminal),
            _ => Err(Error::Parse(format!("unknown curve family '{s}'"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    /// `p = (1 + √(1+2e^{iφ}))/2`, `|φ| ≤ π/2`.
    UPlus,
    /// `p = (1 − √(1+2e^{iφ}))/2`, `|φ| ≤ π/2`.
    UMinus,
    /// `p = ½(1 − √(1+(1−cos θ)²) + i sin θ)`, `|θ| ≤ π`.
    TExtra,
    /// `p = 1 + e^{iφ}/3`, `cos φ ≥ 1/3`.
    AllTerminal,
}

impl Branch {
    /// Parameter interval; its ends are the curve endpoints.
    pub fn param_range(self) -> (f64, f64) {
        match self {
            Branch::UPlus | Branch::UMinus => (-FRAC_PI_2, FRAC_PI_2),
            Branch::TExtra => (-PI, PI),
            Branch::AllTerminal => {
                let m = (1.0f64 / 3.0).acos();
                (-m, m)
            }
        }
    }

    pub fn point(self, t: f64) -> Complex64 {
        let one = Complex64::new(1.0, 0.0);
        let e = Complex64::from_polar(1.0, t);
        match self {
            Branch::UPlus => (one + (one + 2.0 * e).sqrt()) / 2.0,
            Branch::UMinus => (one - (one + 2.0 * e).sqrt()) / 2.0,
            Branch::TExtra => {
                let c = 1.0 - t.cos();
                Complex64::new(0.5 * (1.0 - (1.0 + c * c).sqrt()), 0.5 * t.sin())
            }
            Branch::AllTerminal => one + e / 3.0,
        }
    }
}

impl Branch {
    pub fn endpoints(self) -> (Complex64, Complex64) {
        let (lo, hi) = self.param_range();
        (self.point(lo), self.point(hi))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurvePoint {
    pub branch: Branch,
    pub param: f64,
    pub point: Complex64,
}

#[derive(Clone, Debug)]
pub struct LimitingCurve {
    pub family: CurveFamily,
    /// Branch by branch, each in increasing parameter order.
    pub points: Vec<CurvePoint>,
    /// Largest equal-modulus defect over the samples.
    pub max_gap: f64,
}

impl LimitingCurve {
    pub fn branch_points(&self, branch: Branch) -> Vec<Complex64> {
        self.points
            .iter()
            .filter(|c| c.branch == branch)
            .map(|c| c.point)
            .collect()
    }

    /// 1-based position of a branch within the family.
    pub fn branch_index(&self, branch: Branch) -> usize {
        self.family
            .branches()
            .iter()
            .position(|b| *b == branch)
            .map_or(0, |i| i + 1)
    }
}

/// Eigenvalue moduli `(|x₀|, |x₊|, |x₋|)` at `ρ = 1`.
fn moduli(p: Complex64) -> (f64, f64, f64) {
    let e = eigen_uniform(p, Complex64::new(1.0, 0.0));
    (e.x0.norm(), e.x_plus.norm(), e.x_minus.norm())
}

/// `|x₀|, |x₊|, |x₋|` sorted in decreasing order.
pub fn dominant_moduli(p: Complex64) -> [f64; 3] {
    let (a, b, c) = moduli(p);
    let mut m = [a, b, c];
    m.sort_by(|x, y| y.total_cmp(x));
    m
}

/// Defect of the equal-modulus condition that defines the branch.
pub fn equal_modulus_gap(branch: Branch, p: Complex64) -> f64 {
    match branch {
        Branch::UPlus | Branch::UMinus => {
            let (_, xp, xm) = moduli(p);
            (xp - xm).abs()
        }
        Branch::TExtra => {
            // x± labels swap with the square-root branch; x₀ must tie one of them.
            let (x0, xp, xm) = moduli(p);
            (x0 - xp).abs().min((x0 - xm).abs())
        }
        Branch::AllTerminal => {
            let disc = (12.0 - 20.0 * p + 9.0 * p * p).sqrt();
            let base = 4.0 - 3.0 * p;
            (((base + disc) / 2.0).norm() - ((base - disc) / 2.0).norm()).abs()
        }
    }
}

/// Whether `x₀` strictly dominates both `x±` on every sampled point of the
/// inner U arc, which removes that arc from the `S₀ → T_n` limit set.
pub fn u_minus_dominated(num_samples: usize) -> bool {
    let (lo, hi) = Branch::UMinus.param_range();
    (0..num_samples).all(|i| {
        let t = lo + (hi - lo) * i as f64 / (num_samples - 1).max(1) as f64;
        let (x0, xp, xm) = moduli(Branch::UMinus.point(t));
        x0 > xp.max(xm)
    })
}

pub fn limiting_curve(family: CurveFamily, num_samples: usize) -> Result<LimitingCurve> {
    if num_samples < 2 {
        return Err(Error::InvalidSpec(format!(
            "a curve needs at least 2 samples, got {num_samples}"
        )));
    }
    let mut points = Vec::with_capacity(num_samples * family.branches().len());
    let mut max_gap = 0.0f64;
    for &branch in family.branches() {
        let (lo, hi) = branch.param_range();
        // Cell midpoints: the interval ends are square-root branch points,
        // where the moduli difference is only resolved to ~√ε.
        for i in 0..num_samples {
            let param = lo + (hi - lo) * (i as f64 + 0.5) / num_samples as f64;
            let point = branch.point(param);
            max_gap = max_gap.max(equal_modulus_gap(branch, point));
            points.push(CurvePoint {
                branch,
                param,
                point,
            });
        }
    }
    Ok(LimitingCurve {
        family,
        points,
        max_gap,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct DistanceReport {
    /// Distance of each root to the nearest curve segment.
    pub per_root: Vec<f64>,
    pub max: f64,
    pub mean: f64,
}

fn segment_distance(z: Complex64, a: Complex64, b: Complex64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (z - a).norm();
    }
    let t = ((z - a) * ab.conj()).re / len2;
    (z - (a + ab * t.clamp(0.0, 1.0))).norm()
}

/// Distance from each root to the curve's polylines (one per branch).
pub fn root_curve_distance(roots: &[Complex64], curve: &LimitingCurve, exec: Exec) -> DistanceReport {
    let lines: Vec<Vec<Complex64>> = curve
        .family
        .branches()
        .iter()
        .map(|&b| curve.branch_points(b))
        .collect();
    let per_root = par::map(exec, roots, |&z| {
        lines
            .iter()
            .flat_map(|l| {
                if l.len() == 1 {
                    vec![(z - l[0]).norm()]
                } else {
                    l.windows(2).map(|w| segment_distance(z, w[0], w[1])).collect()
                }
            })
            .fold(f64::INFINITY, f64::min)
    });
    let max = per_root.iter().copied().fold(0.0, f64::max);
    let mean = if per_root.is_empty() {
        0.0
    } else {
        per_root.iter().sum::<f64>() / per_root.len() as f64
    };
    DistanceReport {
        per_root,
        max,
        mean,
    }
}
