//! Facet-list text format and its JSON equivalent.
//!
//! Text format: one facet per line as whitespace-separated vertex labels.
//! `#` starts a comment. An optional `vertices:` line declares the full
//! vertex set, which is how ghost vertices are written:
//!
//! ```text
//! # pentagon with a ghost vertex g
//! vertices: 1 2 3 4 5 g
//! 1 2
//! 2 3
//! 3 4
//! 4 5
//! 5 1
//! ```
//!
//! Without a header the vertex set is every label used, in order of first
//! appearance. JSON: `{"vertices": [...], "facets": [[...], ...]}`; labels
//! may be strings or integers.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::simplicial::SimplicialComplex;

/// Parses either format, deciding by the first non-blank character.
pub fn parse_complex(input: &str) -> Result<SimplicialComplex> {
    if input.trim_start().starts_with('{') {
        parse_json(input)
    } else {
        parse_facet_list(input)
    }
}

pub fn parse_facet_list(input: &str) -> Result<SimplicialComplex> {
    let mut declared: Option<(usize, Vec<String>)> = None;
    let mut facets: Vec<(usize, Vec<String>)> = Vec::new();
    for (n, raw) in input.lines().enumerate() {
        let line_no = n + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("vertices:") {
            if declared.is_some() {
                return Err(Error::Parse { line: line_no, message: "second `vertices:` header".into() });
            }
            let labels: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
            check_distinct(&labels, line_no, "vertex")?;
            declared = Some((line_no, labels));
            continue;
        }
        let labels: Vec<String> = line.split_whitespace().map(str::to_string).collect();
        check_distinct(&labels, line_no, "facet vertex")?;
        facets.push((line_no, labels));
    }

    let vertices = match declared {
        Some((_, labels)) => {
            for (line_no, facet) in &facets {
                if let Some(l) = facet.iter().find(|l| !labels.contains(l)) {
                    return Err(Error::Parse { line: *line_no, message: format!("undeclared vertex `{l}`") });
                }
            }
            labels
        }
        None => {
            let mut labels: Vec<String> = Vec::new();
            for (_, facet) in &facets {
                for l in facet {
                    if !labels.contains(l) {
                        labels.push(l.clone());
                    }
                }
            }
            labels
        }
    };
    let facets: Vec<Vec<String>> = facets.into_iter().map(|(_, f)| f).collect();
    SimplicialComplex::from_facets(&vertices, &facets)
}

fn check_distinct(labels: &[String], line: usize, what: &str) -> Result<()> {
    for (i, l) in labels.iter().enumerate() {
        if labels[..i].contains(l) {
            return Err(Error::Parse { line, message: format!("repeated {what} `{l}`") });
        }
    }
    Ok(())
}

fn label_of(v: &Value) -> Result<String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        other => Err(Error::Json(format!("vertex label must be a string or integer, got {other}"))),
    }
}

pub fn parse_json(input: &str) -> Result<SimplicialComplex> {
    let value: Value = serde_json::from_str(input).map_err(|e| Error::Json(e.to_string()))?;
    let facets = value
        .get("facets")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Json("missing `facets` array".into()))?;
    let facets: Vec<Vec<String>> = facets
        .iter()
        .map(|f| {
            f.as_array()
                .ok_or_else(|| Error::Json("facet must be an array".into()))?
                .iter()
                .map(label_of)
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let vertices: Vec<String> = match value.get("vertices") {
        Some(v) => v
            .as_array()
            .ok_or_else(|| Error::Json("`vertices` must be an array".into()))?
            .iter()
            .map(label_of)
            .collect::<Result<_>>()?,
        None => {
            let mut labels: Vec<String> = Vec::new();
            for l in facets.iter().flatten() {
                if !labels.contains(l) {
                    labels.push(l.clone());
                }
            }
            labels
        }
    };
    SimplicialComplex::from_facets(&vertices, &facets)
}

/// Text form with an explicit `vertices:` header.
pub fn to_facet_list(k: &SimplicialComplex) -> String {
    let mut out = format!("vertices: {}\n", k.labels().join(" "));
    for f in k.facets() {
        out.push_str(&k.subset_labels(*f).join(" "));
        out.push('\n');
    }
    out
}

pub fn to_json(k: &SimplicialComplex) -> Value {
    let facets: Vec<Vec<String>> = k.facets().iter().map(|f| k.subset_labels(*f)).collect();
    json!({ "vertices": k.labels(), "facets": facets })
}
