//! `relladder`: command-line front end for the ladder reliability engine.

mod output;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use relladder::algebra::{
    format_rational, parse_rational, rational_to_f64, MultiPoly, One, Rational, Var, Zero,
};
use relladder::closed_form::{rel2_closed, rel_a_closed, unreliability_expansion};
use relladder::complete_graph::{kn_table, kn_two_terminal_imperfect};
use relladder::genfun::{generating_function, partial_fractions_numeric, GenFunFamily};
use relladder::model::{Component, GenericGraph, LadderSpec, TerminalConfig};
use relladder::oracle::{oracle_rel, OracleMode};
use relladder::par::Exec;
use relladder::sensitivity::{sensitivity, sensitivity_table, SensitivityResult};
use relladder::transfer::{self, delta_wye};
use relladder::zeros::{
    find_roots, limiting_curve, reliability_poly_in_p, root_curve_distance, to_csv, to_svg,
    CurveFamily,
};

use output::{fmt_float, Table};

#[derive(Parser, Debug)]
#[command(name = "relladder", version, about = "Exact reliability of ladder networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Two-terminal reliability (configs t, s, u).
    Rel2(RelArgs),
    /// All-terminal reliability of the ladder's edges.
    Rela(RelArgs),
    /// Exact reliability polynomial.
    Poly(PolyArgs),
    /// Generating function of a uniform family.
    Genfun(GenfunArgs),
    /// Zeros of the uniform polynomial in p, optionally with the limiting curve.
    Zeros(ZerosArgs),
    /// Component sensitivities.
    Sens(SensArgs),
    /// Unreliability expansion in q = 1 - p and eta = 1 - rho.
    Expand(ExpandArgs),
    /// Complete-graph reliability tables.
    Kn(KnArgs),
    /// Brute-force enumeration on the ladder or on a complete graph.
    Oracle(OracleArgs),
    /// Delta-wye transformation with unreliable nodes.
    Deltawye(DeltaWyeArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
    Svg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ConfigArg {
    T,
    S,
    U,
    All,
}

impl From<ConfigArg> for TerminalConfig {
    fn from(c: ConfigArg) -> Self {
        match c {
            ConfigArg::T => TerminalConfig::S0ToTn,
            ConfigArg::S => TerminalConfig::S0ToSn,
            ConfigArg::U => TerminalConfig::S0ToUn,
            ConfigArg::All => TerminalConfig::AllTerminal,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Chain,
    Closed,
    Oracle,
}

#[derive(Args, Debug)]
struct LadderArgs {
    /// Number of cells.
    #[arg(long, default_value_t = 1)]
    n: usize,
    /// Edge reliability (decimal or num/den).
    #[arg(long, default_value = "0.9")]
    p: String,
    /// Node reliability (decimal or num/den).
    #[arg(long, default_value = "1")]
    rho: String,
    #[arg(long, value_enum, default_value_t = ConfigArg::T)]
    config: ConfigArg,
    /// JSON file with a full heterogeneous ladder; overrides --n/--p/--rho.
    #[arg(long)]
    spec: Option<PathBuf>,
    /// Sweep p over start:stop:step (inclusive).
    #[arg(long)]
    grid: Option<String>,
    /// Print exact rationals as num/den.
    #[arg(long)]
    exact: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Debug)]
struct RelArgs {
    #[command(flatten)]
    ladder: LadderArgs,
    #[arg(long, value_enum, default_value_t = Method::Chain)]
    method: Method,
}

#[derive(Args, Debug)]
struct PolyArgs {
    #[arg(long, default_value_t = 1)]
    n: usize,
    #[arg(long, value_enum, default_value_t = ConfigArg::T)]
    config: ConfigArg,
    /// Substitute a rational node reliability; symbolic in rho if absent.
    #[arg(long)]
    rho: Option<String>,
    /// Use one symbol per component (a1, b0, S0, ...).
    #[arg(long)]
    distinct: bool,
    /// JSON ladder whose entries may be polynomial strings.
    #[arg(long)]
    spec: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Debug)]
struct GenfunArgs {
    /// t, s, u, abc, all, sens_b0, sens_bcentral.
    #[arg(long, default_value = "t")]
    family: String,
    /// Also print series coefficients 0..=k.
    #[arg(long)]
    order: Option<usize>,
    /// Numeric partial fractions at these p, rho.
    #[arg(long)]
    poles: bool,
    #[arg(long, default_value = "0.9")]
    p: String,
    #[arg(long, default_value = "1")]
    rho: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Debug)]
struct ZerosArgs {
    #[arg(long, default_value_t = 10)]
    n: usize,
    #[arg(long, value_enum, default_value_t = ConfigArg::U)]
    config: ConfigArg,
    #[arg(long, default_value = "1")]
    rho: String,
    /// Add the n -> infinity limiting curve (rho = 1 only).
    #[arg(long)]
    curve: bool,
    #[arg(long, default_value_t = 400)]
    samples: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args, Debug)]
struct SensArgs {
    #[command(flatten)]
    ladder: LadderArgs,
    /// Component id such as b0, a3, S2; all free components if absent.
    #[arg(long)]
    component: Option<String>,
    /// Polynomials in p and rho instead of numbers.
    #[arg(long)]
    symbolic: bool,
}

#[derive(Args, Debug)]
struct ExpandArgs {
    #[arg(long, default_value_t = 5)]
    n: usize,
    #[arg(long, value_enum, default_value_t = ConfigArg::T)]
    config: ConfigArg,
    /// Total degree kept in q and eta.
    #[arg(long, default_value_t = 3)]
    order: u32,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Debug)]
struct KnArgs {
    #[arg(long, default_value_t = 4)]
    n: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Debug)]
struct OracleArgs {
    #[command(flatten)]
    ladder: LadderArgs,
    /// Enumerate K_m instead of the ladder (terminals 0 and 1, or all with --config all).
    #[arg(long)]
    complete: Option<usize>,
}

#[derive(Args, Debug)]
struct DeltaWyeArgs {
    /// Edge B-C.
    #[arg(long)]
    a: String,
    /// Edge A-C.
    #[arg(long)]
    b: String,
    /// Edge A-B.
    #[arg(long)]
    c: String,
    #[arg(long, default_value = "1")]
    node_a: String,
    #[arg(long, default_value = "1")]
    node_b: String,
    #[arg(long, default_value = "1")]
    node_c: String,
    #[arg(long)]
    exact: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

/// Failure of a command; usage errors exit with 2, computation errors with 1.
enum Failure {
    Usage(String),
    Compute(String),
}

impl From<relladder::Error> for Failure {
    fn from(e: relladder::Error) -> Self {
        Failure::Compute(e.to_string())
    }
}

type CmdResult = Result<String, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn parse_prob(name: &str, text: &str) -> Result<Rational, Failure> {
    let r = parse_rational(text)
        .ok_or_else(|| usage(format!("--{name}: cannot parse '{text}' as a number")))?;
    if r < Rational::zero() || r > Rational::one() {
        return Err(usage(format!("--{name}: {text} is outside [0, 1]")));
    }
    Ok(r)
}

fn parse_grid(text: &str) -> Result<Vec<Rational>, Failure> {
    let parts: Vec<&str> = text.split(':').collect();
    let bad = || usage(format!("--grid: expected start:stop:step, got '{text}'"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let start = parse_rational(parts[0]).ok_or_else(bad)?;
    let stop = parse_rational(parts[1]).ok_or_else(bad)?;
    let step = parse_rational(parts[2]).ok_or_else(bad)?;
    if step <= Rational::zero() {
        return Err(usage("--grid: step must be positive"));
    }
    let mut out = Vec::new();
    let mut v = start;
    while v <= stop {
        out.push(v.clone());
        v += &step;
    }
    Ok(out)
}

/// Ladder specs to evaluate: one per grid point, or the single requested one.
fn ladders(args: &LadderArgs) -> Result<Vec<(Option<Rational>, LadderSpec<Rational>)>, Failure> {
    let config: TerminalConfig = args.config.into();
    if let Some(path) = &args.spec {
        if args.grid.is_some() {
            return Err(usage("--grid cannot be combined with --spec"));
        }
        let text = fs::read_to_string(path)
            .map_err(|e| usage(format!("--spec {}: {e}", path.display())))?;
        let value: Value = serde_json::from_str(&text)
            .map_err(|e| usage(format!("--spec {}: {e}", path.display())))?;
        let spec = LadderSpec::<Rational>::from_json(&value)
            .map_err(|e| usage(format!("--spec {}: {e}", path.display())))?;
        return Ok(vec![(None, spec)]);
    }
    let rho = parse_prob("rho", &args.rho)?;
    let points = match &args.grid {
        Some(g) => parse_grid(g)?.into_iter().map(Some).collect(),
        None => vec![None],
    };
    points
        .into_iter()
        .map(|pt| {
            let p = match &pt {
                Some(v) => v.clone(),
                None => parse_prob("p", &args.p)?,
            };
            Ok((pt, LadderSpec::uniform(args.n, p, rho.clone(), config)?))
        })
        .collect()
}

enum Number {
    Exact(Rational),
    Float(f64),
}

impl Number {
    fn text(&self) -> String {
        match self {
            Number::Exact(r) => format_rational(r),
            Number::Float(v) => fmt_float(*v),
        }
    }

    fn json(&self) -> Value {
        match self {
            Number::Exact(r) => Value::String(format_rational(r)),
            Number::Float(v) => output::json_float(*v),
        }
    }
}

fn evaluate(spec: &LadderSpec<Rational>, method: Method, exact: bool, all: bool) -> Result<Number, Failure> {
    let value = match method {
        Method::Chain if exact => Number::Exact(if all {
            transfer::rel_a_chain(spec)?
        } else {
            transfer::rel2_chain(spec)?
        }),
        Method::Chain => {
            let f = spec.to_f64();
            Number::Float(if all {
                transfer::rel_a_chain(&f)?
            } else {
                transfer::rel2_chain(&f)?
            })
        }
        Method::Closed => {
            if exact {
                return Err(usage("--exact is not available with --method closed"));
            }
            let (p, rho) = uniform_params(spec)
                .ok_or_else(|| usage("--method closed needs a uniform ladder"))?;
            Number::Float(if all {
                rel_a_closed(spec.n(), p)
            } else {
                rel2_closed(spec.config(), spec.n(), p, rho)?.value
            })
        }
        Method::Oracle => {
            let mut graph = spec.to_generic_graph();
            let mode = if all {
                // The all-terminal chain ignores nodes; match it.
                for v in &mut graph.vertices {
                    v.reliability = Rational::one();
                }
                OracleMode::AllTerminal
            } else {
                OracleMode::TwoTerminal
            };
            let r = oracle_rel(&graph, mode, Exec::default())?;
            if exact {
                Number::Exact(r)
            } else {
                Number::Float(rational_to_f64(&r))
            }
        }
    };
    Ok(value)
}

fn uniform_params(spec: &LadderSpec<Rational>) -> Option<(f64, f64)> {
    let comps = spec.free_components();
    let p = comps.iter().find(|c| !c.is_node()).and_then(|&c| spec.get(c).ok())?.clone();
    let rho = comps
        .iter()
        .find(|c| c.is_node())
        .and_then(|&c| spec.get(c).ok())
        .cloned()
        .unwrap_or_else(Rational::one);
    let uniform = comps.iter().all(|&c| {
        let v = spec.get(c).expect("listed component");
        if c.is_node() {
            *v == rho
        } else {
            *v == p
        }
    });
    uniform.then(|| (rational_to_f64(&p), rational_to_f64(&rho)))
}

fn cmd_rel(args: &RelArgs, all: bool) -> CmdResult {
    let config: TerminalConfig = args.ladder.config.into();
    if !all && config == TerminalConfig::AllTerminal {
        return Err(usage("rel2 takes --config t, s or u; use `rela` for all-terminal"));
    }
    let runs = ladders(&args.ladder)?;
    let mut rows = Vec::with_capacity(runs.len());
    for (pt, spec) in &runs {
        let spec = if all {
            spec.with_config(TerminalConfig::AllTerminal)?
        } else {
            spec.clone()
        };
        rows.push((pt.clone(), evaluate(&spec, args.method, args.ladder.exact, all)?));
    }
    Ok(render_values(rows, args.ladder.format, args.ladder.grid.is_some()))
}

fn render_values(rows: Vec<(Option<Rational>, Number)>, format: Format, grid: bool) -> String {
    if !grid {
        let v = &rows[0].1;
        return match format {
            Format::Json => output::json_line(&json!({ "value": v.json() })),
            Format::Csv => format!("value\n{}\n", v.text()),
            _ => format!("{}\n", v.text()),
        };
    }
    let p_text = |p: &Option<Rational>| p.as_ref().map(format_rational).unwrap_or_default();
    match format {
        Format::Json => {
            let items: Vec<Value> = rows
                .iter()
                .map(|(p, v)| json!({ "p": p_text(p), "value": v.json() }))
                .collect();
            output::json_line(&json!({ "rows": items }))
        }
        _ => {
            let mut t = Table::new(&["p", "value"]);
            for (p, v) in &rows {
                t.row(vec![p_text(p), v.text()]);
            }
            t.csv()
        }
    }
}

fn read_symbolic_spec(path: &PathBuf) -> Result<LadderSpec<MultiPoly>, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| usage(format!("--spec {}: {e}", path.display())))?;
    let value: Value =
        serde_json::from_str(&text).map_err(|e| usage(format!("--spec {}: {e}", path.display())))?;
    Ok(LadderSpec::<MultiPoly>::from_json(&value)?)
}

fn poly_output(poly: &MultiPoly, format: Format) -> String {
    match format {
        Format::Json => output::json_line(&json!({
            "text": poly.to_text(),
            "polynomial": poly.to_json(),
        })),
        _ => format!("{}\n", poly.to_text()),
    }
}

fn cmd_poly(args: &PolyArgs) -> CmdResult {
    let config: TerminalConfig = args.config.into();
    let poly = if let Some(path) = &args.spec {
        transfer::reliability(&read_symbolic_spec(path)?)?
    } else if args.distinct {
        transfer::reliability(&LadderSpec::symbolic_distinct(args.n, config)?)?
    } else if let Some(rho) = &args.rho {
        reliability_poly_in_p(config, args.n, &parse_prob("rho", rho)?)?
    } else {
        transfer::reliability(&LadderSpec::symbolic_uniform(args.n, config)?)?
    };
    Ok(poly_output(&poly, args.format))
}

fn cmd_genfun(args: &GenfunArgs) -> CmdResult {
    let family: GenFunFamily = args.family.parse().map_err(|e: relladder::Error| usage(e.to_string()))?;
    let g = generating_function(family)?;
    let series = match args.order {
        Some(k) => Some(g.series_coefficients(&Var::x(), k)?),
        None => None,
    };
    let poles = if args.poles {
        let p = rational_to_f64(&parse_prob("p", &args.p)?);
        let rho = rational_to_f64(&parse_prob("rho", &args.rho)?);
        let mut bindings = vec![(Var::p(), p)];
        if family.vars().contains(&Var::rho()) {
            bindings.push((Var::rho(), rho));
        }
        if family == GenFunFamily::TAbc {
            bindings = ["a", "b", "c"].iter().map(|v| (Var::new(v), p)).collect();
            bindings.push((Var::rho(), rho));
        }
        Some(partial_fractions_numeric(&g, &bindings)?)
    } else {
        None
    };
    match args.format {
        Format::Json => {
            let mut obj = json!({
                "family": family.name(),
                "numerator": g.num().to_text(),
                "denominator": g.den().to_text(),
            });
            if let Some(s) = &series {
                obj["series"] = s.iter().map(|c| Value::String(c.to_text())).collect();
            }
            if let Some(pf) = &poles {
                obj["poles"] = pf
                    .terms
                    .iter()
                    .map(|t| {
                        let (l, a) = (output::snap(t.lambda), output::snap(t.alpha));
                        json!({
                            "lambda": [output::json_float(l.re), output::json_float(l.im)],
                            "alpha": [output::json_float(a.re), output::json_float(a.im)],
                        })
                    })
                    .collect();
            }
            Ok(output::json_line(&obj))
        }
        _ => {
            let mut out = format!("{}\n", g.to_text());
            if let Some(s) = &series {
                for (k, c) in s.iter().enumerate() {
                    out.push_str(&format!("x^{k}: {}\n", c.to_text()));
                }
            }
            if let Some(pf) = &poles {
                let mut t = Table::new(&["lambda_re", "lambda_im", "alpha_re", "alpha_im"]);
                for term in &pf.terms {
                    let (l, a) = (output::snap(term.lambda), output::snap(term.alpha));
                    t.row(vec![
                        fmt_float(l.re),
                        fmt_float(l.im),
                        fmt_float(a.re),
                        fmt_float(a.im),
                    ]);
                }
                out.push_str(&t.csv());
            }
            Ok(out)
        }
    }
}

fn cmd_zeros(args: &ZerosArgs) -> CmdResult {
    let config: TerminalConfig = args.config.into();
    let rho = parse_prob("rho", &args.rho)?;
    let poly = reliability_poly_in_p(config, args.n, &rho)?;
    let exec = Exec::default();
    let roots = find_roots(&poly, exec)?;
    let curve = if args.curve {
        if !rho.is_one() {
            return Err(usage("--curve is only defined for rho = 1"));
        }
        let family = match config {
            TerminalConfig::S0ToUn => CurveFamily::U,
            TerminalConfig::AllTerminal => CurveFamily::AllTerminal,
            _ => CurveFamily::T,
        };
        Some(limiting_curve(family, args.samples)?)
    } else {
        None
    };
    let pts = &roots.roots;
    Ok(match args.format {
        Format::Csv => to_csv(pts, curve.as_ref()),
        Format::Svg => to_svg(pts, curve.as_ref()),
        Format::Json => {
            let mut obj = json!({
                "trivial_degree": roots.deflated_trivial_degree,
                "roots": pts.iter().map(|z| json!([output::json_float(z.re), output::json_float(z.im)])).collect::<Vec<_>>(),
                "residual": output::json_float(roots.residual),
                "converged": roots.converged,
            });
            if let Some(c) = &curve {
                let d = root_curve_distance(pts, c, exec);
                obj["distance"] = json!({
                    "max": output::json_float(d.max),
                    "mean": output::json_float(d.mean),
                });
            }
            output::json_line(&obj)
        }
        Format::Text => {
            let mut out = format!(
                "trivial degree {}, {} roots, residual {}\n",
                roots.deflated_trivial_degree,
                pts.len(),
                fmt_float(roots.residual)
            );
            for z in pts {
                out.push_str(&format!("{} {}\n", fmt_float(z.re), fmt_float(z.im)));
            }
            if let Some(c) = &curve {
                let d = root_curve_distance(pts, c, exec);
                out.push_str(&format!(
                    "distance to curve: max {} mean {}\n",
                    fmt_float(d.max),
                    fmt_float(d.mean)
                ));
            }
            out
        }
    })
}

fn cmd_sens(args: &SensArgs) -> CmdResult {
    let parse_comp = |s: &str| -> Result<Component, Failure> {
        s.parse().map_err(|e: relladder::Error| usage(e.to_string()))
    };
    let rows: Vec<(String, String, Value)> = if args.symbolic {
        let l = &args.ladder;
        let spec = match &l.spec {
            Some(path) => read_symbolic_spec(path)?,
            None => LadderSpec::symbolic_uniform(l.n, l.config.into())?,
        };
        let results: Vec<SensitivityResult<MultiPoly>> = match &args.component {
            Some(c) => vec![sensitivity(&spec, parse_comp(c)?)?],
            None => sensitivity_table(&spec, Exec::default())?,
        };
        results
            .into_iter()
            .map(|r| {
                let t = r.value.to_text();
                (r.component.to_string(), t.clone(), Value::String(t))
            })
            .collect()
    } else {
        if args.ladder.grid.is_some() {
            return Err(usage("sens does not take --grid"));
        }
        let (_, spec) = ladders(&args.ladder)?.remove(0);
        let results: Vec<SensitivityResult<Rational>> = match &args.component {
            Some(c) => vec![sensitivity(&spec, parse_comp(c)?)?],
            None => sensitivity_table(&spec, Exec::default())?,
        };
        results
            .into_iter()
            .map(|r| {
                let n = if args.ladder.exact {
                    Number::Exact(r.value)
                } else {
                    Number::Float(rational_to_f64(&r.value))
                };
                (r.component.to_string(), n.text(), n.json())
            })
            .collect()
    };
    Ok(match args.ladder.format {
        Format::Json => {
            let items: Vec<Value> = rows
                .into_iter()
                .map(|(c, _, v)| json!({ "component": c, "value": v }))
                .collect();
            output::json_line(&json!({ "sensitivities": items }))
        }
        _ => {
            let mut t = Table::new(&["component", "value"]);
            for (c, text, _) in rows {
                t.row(vec![c, text]);
            }
            t.csv()
        }
    })
}

fn cmd_expand(args: &ExpandArgs) -> CmdResult {
    let e = unreliability_expansion(args.config.into(), args.n, args.order)?;
    Ok(match args.format {
        Format::Json => output::json_line(&json!({
            "text": e.poly.to_text(),
            "polynomial": e.poly.to_json(),
            "outside_window": e.outside_window,
        })),
        _ => format!("{}\n", e.poly.to_text()),
    })
}

fn cmd_kn(args: &KnArgs) -> CmdResult {
    let table = kn_table(args.n)?;
    let imperfect = (2..=args.n)
        .map(kn_two_terminal_imperfect)
        .collect::<relladder::Result<Vec<_>>>()?;
    let named = |prefix: &str, start: usize, polys: &[MultiPoly]| -> Vec<(String, String)> {
        polys
            .iter()
            .enumerate()
            .map(|(i, p)| (format!("{prefix}{}", i + start), p.to_text()))
            .collect()
    };
    let sections = [
        ("all_terminal", named("A", 1, &table.all_terminal)),
        ("two_terminal", named("T", 2, &table.two_terminal)),
        ("paths", named("P", 1, &table.paths)),
        ("two_terminal_imperfect", named("T", 2, &imperfect)),
    ];
    Ok(match args.format {
        Format::Json => {
            let mut obj = serde_json::Map::new();
            for (key, entries) in &sections {
                let inner: serde_json::Map<String, Value> = entries
                    .iter()
                    .map(|(k, v)| (k.clone(), Value::String(v.clone())))
                    .collect();
                obj.insert(key.to_string(), Value::Object(inner));
            }
            output::json_line(&Value::Object(obj))
        }
        _ => {
            let mut out = String::new();
            for (key, entries) in &sections {
                let suffix = if *key == "two_terminal_imperfect" { "(p,rho)" } else { "" };
                for (k, v) in entries {
                    out.push_str(&format!("{k}{suffix} = {v}\n"));
                }
            }
            out
        }
    })
}

fn cmd_oracle(args: &OracleArgs) -> CmdResult {
    let l = &args.ladder;
    let all = TerminalConfig::from(l.config) == TerminalConfig::AllTerminal;
    let mode = if all {
        OracleMode::AllTerminal
    } else {
        OracleMode::TwoTerminal
    };
    let graphs: Vec<(Option<Rational>, GenericGraph<Rational>)> = match args.complete {
        Some(m) => {
            let rho = parse_prob("rho", &l.rho)?;
            let ps = match &l.grid {
                Some(g) => parse_grid(g)?.into_iter().map(Some).collect(),
                None => vec![None],
            };
            ps.into_iter()
                .map(|pt| {
                    let p = match &pt {
                        Some(v) => v.clone(),
                        None => parse_prob("p", &l.p)?,
                    };
                    let mut g = GenericGraph::complete(m, p, rho.clone());
                    if all {
                        g.terminals = (0..m).collect();
                    }
                    Ok((pt, g))
                })
                .collect::<Result<_, Failure>>()?
        }
        None => ladders(l)?
            .into_iter()
            .map(|(pt, s)| (pt, s.to_generic_graph()))
            .collect(),
    };
    let mut rows = Vec::with_capacity(graphs.len());
    for (pt, g) in graphs {
        let r = oracle_rel(&g, mode, Exec::default())?;
        rows.push((
            pt,
            if l.exact {
                Number::Exact(r)
            } else {
                Number::Float(rational_to_f64(&r))
            },
        ));
    }
    Ok(render_values(rows, l.format, l.grid.is_some()))
}

fn cmd_deltawye(args: &DeltaWyeArgs) -> CmdResult {
    let get = |name: &str, text: &str| parse_prob(name, text);
    let (a, b, c) = (get("a", &args.a)?, get("b", &args.b)?, get("c", &args.c)?);
    let (na, nb, nc) = (
        get("node-a", &args.node_a)?,
        get("node-b", &args.node_b)?,
        get("node-c", &args.node_c)?,
    );
    let r = delta_wye(&a, &b, &c, &na, &nb, &nc)?;
    let entries = [("p_A", r.p_a), ("p_B", r.p_b), ("p_C", r.p_c), ("O", r.o)];
    let num = |v: Rational| {
        if args.exact {
            Number::Exact(v)
        } else {
            Number::Float(rational_to_f64(&v))
        }
    };
    let entries: Vec<(&str, Number)> = entries.into_iter().map(|(k, v)| (k, num(v))).collect();
    Ok(match args.format {
        Format::Json => {
            let obj: serde_json::Map<String, Value> = entries
                .iter()
                .map(|(k, v)| (k.to_string(), v.json()))
                .collect();
            output::json_line(&Value::Object(obj))
        }
        Format::Csv => {
            let mut t = Table::new(&["name", "value"]);
            for (k, v) in &entries {
                t.row(vec![k.to_string(), v.text()]);
            }
            t.csv()
        }
        _ => entries
            .iter()
            .map(|(k, v)| format!("{k} = {}\n", v.text()))
            .collect(),
    })
}

fn configure_threads() {
    if let Some(n) = std::env::var("RELLADDER_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
    {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

fn run(cli: &Cli) -> CmdResult {
    match &cli.command {
        Command::Rel2(a) => cmd_rel(a, false),
        Command::Rela(a) => cmd_rel(a, true),
        Command::Poly(a) => cmd_poly(a),
        Command::Genfun(a) => cmd_genfun(a),
        Command::Zeros(a) => cmd_zeros(a),
        Command::Sens(a) => cmd_sens(a),
        Command::Expand(a) => cmd_expand(a),
        Command::Kn(a) => cmd_kn(a),
        Command::Oracle(a) => cmd_oracle(a),
        Command::Deltawye(a) => cmd_deltawye(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    configure_threads();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}\n\nUsage: relladder <COMMAND> [OPTIONS]; see `relladder --help`");
            ExitCode::from(2)
        }
        Err(Failure::Compute(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
