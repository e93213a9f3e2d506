//! Bit-stable file formats: `x,value` CSV with 17 significant digits and
//! JSON with sorted keys and every float written as `{:.12e}`.

use crate::error::{Error, Result};
use crate::numcore::{Grid1D, SampledFunction, Spectrum};
use crate::susy2d::Field2D;
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::path::Path;

pub fn csv_string(f: &SampledFunction) -> String {
    let mut s = String::with_capacity(48 * f.len());
    s.push_str("x,value\n");
    for i in 0..f.len() {
        let _ = writeln!(s, "{:.16e},{:.16e}", f.grid().x(i), f.at(i));
    }
    s
}

pub fn write_csv(f: &SampledFunction, path: &Path) -> Result<()> {
    std::fs::write(path, csv_string(f))?;
    Ok(())
}

/// `q0,q1,value`, `q0` varying slowest.
pub fn field_csv_string(f: &Field2D) -> String {
    let g = f.grid();
    let (n0, n1) = g.shape();
    let mut s = String::with_capacity(72 * f.values().len());
    s.push_str("q0,q1,value\n");
    for i in 0..n0 {
        for j in 0..n1 {
            let _ = writeln!(s, "{:.16e},{:.16e},{:.16e}", g.q0.x(i), g.q1.x(j), f.at(i, j));
        }
    }
    s
}

pub fn write_field_csv(f: &Field2D, path: &Path) -> Result<()> {
    std::fs::write(path, field_csv_string(f))?;
    Ok(())
}

/// Reads an `x,value` CSV written on a uniform grid.
pub fn parse_csv(text: &str) -> Result<SampledFunction> {
    let mut xs = Vec::new();
    let mut vs = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || (ln == 0 && line.starts_with('x')) {
            continue;
        }
        let mut parts = line.split(',');
        let (Some(a), Some(b), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(Error::Parse(format!("line {}: expected two columns", ln + 1)));
        };
        let num = |t: &str| {
            t.trim()
                .parse::<f64>()
                .map_err(|e| Error::Parse(format!("line {}: {e}", ln + 1)))
        };
        xs.push(num(a)?);
        vs.push(num(b)?);
    }
    if xs.len() < 2 {
        return Err(Error::Parse("fewer than two data rows".into()));
    }
    let n = xs.len();
    let grid = Grid1D::new(xs[0], xs[n - 1], n)?;
    let tol = 1e-9 * (xs[n - 1] - xs[0]).abs().max(1.0);
    if let Some(i) = (0..n).find(|&i| (xs[i] - grid.x(i)).abs() > tol) {
        return Err(Error::InvalidGrid(format!("node {i} at {} breaks uniform spacing", xs[i])));
    }
    SampledFunction::new(grid, vs)
}

pub fn read_csv(path: &Path) -> Result<SampledFunction> {
    parse_csv(&std::fs::read_to_string(path)?)
}

/// `{"levels": [{"E": …, "psi_file": …}]}`; `psi_files` may be shorter than
/// the level list, in which case the rest get `null`.
pub fn spectrum_json(spec: &Spectrum, psi_files: &[String]) -> Value {
    let levels: Vec<Value> = spec
        .levels
        .iter()
        .enumerate()
        .map(|(i, l)| json!({ "E": l.energy, "psi_file": psi_files.get(i) }))
        .collect();
    json!({ "levels": levels, "requested": spec.requested, "truncated": spec.truncated })
}

/// Writes `<stem>_psi<i>.csv` per level and `<stem>.json`.
pub fn write_spectrum(spec: &Spectrum, dir: &Path, stem: &str) -> Result<()> {
    let mut names = Vec::with_capacity(spec.levels.len());
    for (i, l) in spec.levels.iter().enumerate() {
        let name = format!("{stem}_psi{i}.csv");
        write_csv(&l.psi, &dir.join(&name))?;
        names.push(name);
    }
    write_json(&spectrum_json(spec, &names), &dir.join(format!("{stem}.json")))
}

fn float(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.12e}")
    } else {
        "null".into()
    }
}

fn escape(s: &str) -> String {
    serde_json::to_string(s).expect("string serialization cannot fail")
}

fn write_value(v: &Value, indent: usize, out: &mut String) {
    let pad = |n: usize| "  ".repeat(n);
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                let _ = write!(out, "{i}");
            } else if let Some(u) = n.as_u64() {
                let _ = write!(out, "{u}");
            } else {
                out.push_str(&float(n.as_f64().unwrap_or(f64::NAN)));
            }
        }
        Value::String(s) => out.push_str(&escape(s)),
        Value::Array(a) if a.is_empty() => out.push_str("[]"),
        Value::Array(a) => {
            out.push_str("[\n");
            for (k, item) in a.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_value(item, indent + 1, out);
                out.push_str(if k + 1 < a.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        Value::Object(m) if m.is_empty() => out.push_str("{}"),
        Value::Object(m) => {
            // serde_json's default map is a BTreeMap, but sort anyway so the
            // output does not depend on that feature flag
            let mut keys: Vec<&String> = m.keys().collect();
            keys.sort();
            out.push_str("{\n");
            for (k, key) in keys.iter().enumerate() {
                let _ = write!(out, "{}{}: ", pad(indent + 1), escape(key));
                write_value(&m[*key], indent + 1, out);
                out.push_str(if k + 1 < keys.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
    }
}

/// Deterministic JSON text. Floats are written as `{:.12e}` (integers stay
/// integers), non-finite floats as `null`.
pub fn canonical_json(v: &Value) -> String {
    let mut s = String::new();
    write_value(v, 0, &mut s);
    s.push('\n');
    s
}

pub fn write_json(v: &Value, path: &Path) -> Result<()> {
    std::fs::write(path, canonical_json(v))?;
    Ok(())
}

/// `serde_json` cannot hold NaN or infinities; they become `null`.
pub fn num(v: f64) -> Value {
    serde_json::Number::from_f64(v).map(Value::Number).unwrap_or(Value::Null)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_roundtrip_is_exact() {
        let g = Grid1D::new(-1.0, 2.0, 31).unwrap();
        let f = SampledFunction::from_fn(g, |x| (3.0 * x).sin() / 7.0).unwrap();
        let text = csv_string(&f);
        assert!(text.starts_with("x,value\n"));
        assert!(!text.contains('\r'));
        let back = parse_csv(&text).unwrap();
        assert_eq!(back.values(), f.values());
    }

    #[test]
    fn csv_rejects_uneven_spacing() {
        assert!(parse_csv("x,value\n0,1\n1,2\n3,4\n").is_err());
        assert!(parse_csv("x,value\n0,1\n").is_err());
        assert!(parse_csv("x,value\n0,1,2\n1,2,3\n").is_err());
    }

    #[test]
    fn json_is_sorted_and_fixed_format() {
        let v = json!({ "b": 1.5, "a": [2, -0.25], "c": null, "d": true });
        let s = canonical_json(&v);
        assert_eq!(
            s,
            "{\n  \"a\": [\n    2,\n    -2.500000000000e-1\n  ],\n  \"b\": 1.500000000000e0,\n  \"c\": null,\n  \"d\": true\n}\n"
        );
        let back: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(back["b"], json!(1.5));
        assert_eq!(num(f64::NAN), Value::Null);
    }

    #[test]
    fn field_csv_layout() {
        let g = crate::susy2d::Grid2D::square(0.0, 1.0, 16).unwrap();
        let f = Field2D::from_fn(g, |a, b| a - b).unwrap();
        let text = field_csv_string(&f);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 1 + 256);
        assert_eq!(lines[0], "q0,q1,value");
        assert!(lines[2].starts_with("0.0000000000000000e0,6.6666666666666666e-2,"));
    }
}
