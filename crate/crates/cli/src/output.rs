//! Number formatting and small table/JSON helpers shared by the subcommands.

use num_complex::Complex64;
use serde_json::Value;

/// `v` rounded to 15 significant digits, in the shortest form that reads back
/// to the rounded value.
pub fn round15(v: f64) -> f64 {
    if !v.is_finite() {
        return v;
    }
    format!("{v:.14e}").parse().unwrap_or(v)
}

pub fn fmt_float(v: f64) -> String {
    let r = round15(v);
    if r == 0.0 {
        // Avoid "-0".
        return "0".to_string();
    }
    r.to_string()
}

pub fn json_float(v: f64) -> Value {
    let r = round15(v);
    serde_json::Number::from_f64(if r == 0.0 { 0.0 } else { r })
        .map(Value::Number)
        .unwrap_or(Value::Null)
}

/// Drops a real or imaginary part that is rounding noise next to the other.
pub fn snap(z: Complex64) -> Complex64 {
    let tol = 1e-13 * z.norm();
    Complex64::new(
        if z.re.abs() <= tol { 0.0 } else { z.re },
        if z.im.abs() <= tol { 0.0 } else { z.im },
    )
}

pub fn json_line(v: &Value) -> String {
    format!("{v}\n")
}

/// Comma-separated table with a header row.
pub struct Table {
    lines: Vec<String>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table {
            lines: vec![header.join(",")],
        }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        let cells: Vec<String> = cells.into_iter().map(escape).collect();
        self.lines.push(cells.join(","));
    }

    pub fn csv(&self) -> String {
        let mut out = self.lines.join("\n");
        out.push('\n');
        out
    }
}

fn escape(cell: String) -> String {
    if cell.contains([',', '"', '\n']) {
        format!("\"{}\"", cell.replace('"', "\"\""))
    } else {
        cell
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fifteen_digits() {
        assert_eq!(fmt_float(0.1 + 0.2), "0.3");
        assert_eq!(fmt_float(0.322265625), "0.322265625");
        assert_eq!(fmt_float(-0.0), "0");
        assert_eq!(fmt_float(1.0 / 3.0), "0.333333333333333");
    }

    #[test]
    fn csv_quotes_commas() {
        let mut t = Table::new(&["a", "b"]);
        t.row(vec!["x,y".into(), "1".into()]);
        assert_eq!(t.csv(), "a,b\n\"x,y\",1\n");
    }
}
