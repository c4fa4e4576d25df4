//! Plain-text rendering of reports.

use std::fmt::Write;

use serde_json::{Map, Value};

use crate::report::{as_extension, Report};

pub fn report(r: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "command: {}", r.command);
    let _ = writeln!(out, "input digest: {}", r.input_digest);
    let _ = writeln!(out, "result:");
    if r.command == "fixtures" {
        table(&r.result, &mut out);
    } else {
        value(&r.result, 1, &mut out);
    }
    if !r.notes.is_empty() {
        let _ = writeln!(out, "notes:");
        for n in &r.notes {
            let _ = writeln!(out, "  - {n}");
        }
    }
    out
}

/// The golden table of the fixture corpus.
fn table(v: &Value, out: &mut String) {
    let cols = ["name", "expected", "found", "ok", "tree"];
    let rows: Vec<Vec<String>> = v
        .as_array()
        .map(|a| {
            a.iter()
                .map(|r| cols.iter().map(|c| inline(&r[*c]).unwrap_or_default()).collect())
                .collect()
        })
        .unwrap_or_default();
    let width: Vec<usize> = (0..cols.len())
        .map(|i| rows.iter().map(|r| r[i].len()).chain([cols[i].len()]).max().unwrap_or(0))
        .collect();
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells.iter().zip(&width).map(|(c, w)| format!("{c:<w$}")).collect();
        format!("  {}", padded.join("  ").trim_end())
    };
    let _ = writeln!(out, "{}", line(cols.to_vec()));
    for r in &rows {
        let _ = writeln!(out, "{}", line(r.iter().map(String::as_str).collect()));
    }
}

fn pad(depth: usize) -> String {
    "  ".repeat(depth)
}

/// Single-line form of numbers, strings, scalars and short vectors.
fn inline(v: &Value) -> Option<String> {
    if let Some((a, b, d)) = as_extension(v) {
        return Some(format!("{} + {}*sqrt({d})", inline(a)?, inline(b)?));
    }
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) if !s.contains('\n') => Some(s.clone()),
        Value::Array(a) if a.is_empty() => Some("[]".into()),
        Value::Array(a) if a.len() <= 4 && a.iter().all(atom) => {
            let parts: Option<Vec<String>> = a.iter().map(inline).collect();
            Some(format!("[{}]", parts?.join(", ")))
        }
        _ => None,
    }
}

fn atom(v: &Value) -> bool {
    match v {
        Value::String(s) => !s.contains(char::is_whitespace),
        Value::Array(_) => false,
        Value::Object(_) => as_extension(v).is_some(),
        _ => true,
    }
}

fn is_tree(m: &Map<String, Value>) -> bool {
    m.contains_key("vertices") && m.contains_key("parent") && m.contains_key("charge")
}

fn tree(m: &Map<String, Value>, depth: usize, out: &mut String) {
    let parent = |v: &str| m["parent"].get(v).and_then(Value::as_str).map(String::from);
    let vertices: Vec<String> = m["vertices"]
        .as_array()
        .map(|a| a.iter().filter_map(|v| v.as_str().map(String::from)).collect())
        .unwrap_or_default();
    fn walk(
        v: &str,
        level: usize,
        vertices: &[String],
        parent: &dyn Fn(&str) -> Option<String>,
        charge: &Value,
        out: &mut String,
    ) {
        let c = charge.get(v).map(Value::to_string).unwrap_or_default();
        let _ = writeln!(out, "{}{v} [{c}]", pad(level));
        for w in vertices.iter().filter(|w| parent(w).as_deref() == Some(v)) {
            walk(w, level + 1, vertices, parent, charge, out);
        }
    }
    for root in vertices.iter().filter(|v| parent(v).is_none()) {
        walk(root, depth, &vertices, &parent, &m["charge"], out);
    }
}

fn value(v: &Value, depth: usize, out: &mut String) {
    if let Some(s) = inline(v) {
        let _ = writeln!(out, "{}{s}", pad(depth));
        return;
    }
    match v {
        Value::String(s) => {
            for line in s.lines() {
                let _ = writeln!(out, "{}{line}", pad(depth));
            }
        }
        Value::Array(a) if a.iter().all(|x| inline(x).is_some()) => {
            for x in a {
                let _ = writeln!(out, "{}{}", pad(depth), inline(x).expect("checked"));
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                let _ = writeln!(out, "{}- [{i}]", pad(depth));
                value(x, depth + 1, out);
            }
        }
        Value::Object(m) if is_tree(m) => tree(m, depth, out),
        Value::Object(m) => {
            for (k, x) in m {
                match inline(x) {
                    Some(s) => {
                        let _ = writeln!(out, "{}{k}: {s}", pad(depth));
                    }
                    None => {
                        let _ = writeln!(out, "{}{k}:", pad(depth));
                        value(x, depth + 1, out);
                    }
                }
            }
        }
        _ => unreachable!("primitive values render inline"),
    }
}
