//! Bernstein coefficient matrices `M_k[i][j]` rendered as markdown or LaTeX.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::bernstein::BernsteinTensor;
use crate::error::{Error, Result};
use crate::rational::{as_string_vec, Rational};

/// One `k`-layer of a three-variable tensor: rows `i` (first variable), columns `j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixTable {
    pub objective: String,
    pub k: usize,
    pub rows: Vec<Row>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Row(#[serde(with = "as_string_vec")] pub Vec<Rational>);

impl MatrixTable {
    pub fn new(objective: &str, k: usize, rows: Vec<Vec<Rational>>) -> Self {
        MatrixTable {
            objective: objective.to_string(),
            k,
            rows: rows.into_iter().map(Row).collect(),
        }
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        &self.rows[i].0[j]
    }

    pub fn matrix(&self) -> Vec<Vec<Rational>> {
        self.rows.iter().map(|r| r.0.clone()).collect()
    }
}

/// All `k`-layers of a three-variable tensor.
pub fn layers(objective: &str, tensor: &BernsteinTensor) -> Vec<MatrixTable> {
    (0..=tensor.degrees()[2])
        .map(|k| MatrixTable::new(objective, k, tensor.layer(k)))
        .collect()
}

pub fn render_markdown(tables: &[MatrixTable]) -> String {
    let mut s = String::new();
    for t in tables {
        let cols = t.rows.first().map_or(0, |r| r.0.len());
        let _ = writeln!(s, "### {} M_{}\n", t.objective, t.k);
        let head: Vec<String> = (0..cols).map(|j| format!("j={j}")).collect();
        let _ = writeln!(s, "| i | {} |", head.join(" | "));
        let _ = writeln!(s, "|---|{}", "---|".repeat(cols));
        for (i, row) in t.rows.iter().enumerate() {
            let cells: Vec<String> = row.0.iter().map(|r| r.to_string()).collect();
            let _ = writeln!(s, "| {i} | {} |", cells.join(" | "));
        }
        s.push('\n');
    }
    s
}

fn latex_entry(r: &Rational) -> String {
    if r.is_integer() {
        return r.numer().to_string();
    }
    let sign = if r.is_negative() { "-" } else { "" };
    format!("{sign}\\frac{{{}}}{{{}}}", r.numer().abs(), r.denom())
}

/// One `pmatrix` per layer, preceded by a `% objective M_k` comment that
/// [`parse_latex`] uses to recover the labels.
pub fn render_latex(tables: &[MatrixTable]) -> String {
    let mut s = String::new();
    for t in tables {
        let _ = writeln!(s, "% {} M_{}", t.objective, t.k);
        let _ = writeln!(s, "\\[ M_{{{}}} = \\begin{{pmatrix}}", t.k);
        for (i, row) in t.rows.iter().enumerate() {
            let cells: Vec<String> = row.0.iter().map(latex_entry).collect();
            let end = if i + 1 < t.rows.len() { " \\\\" } else { "" };
            let _ = writeln!(s, "{}{end}", cells.join(" & "));
        }
        let _ = writeln!(s, "\\end{{pmatrix}} \\]\n");
    }
    s
}

fn latex_err(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(format!("latex table: {}", msg.into()))
}

fn parse_int(s: &str) -> Result<BigInt> {
    s.trim().parse().map_err(|_| latex_err(format!("bad integer {s:?}")))
}

fn parse_latex_entry(cell: &str) -> Result<Rational> {
    let cell = cell.trim();
    let (neg, body) = match cell.strip_prefix('-') {
        Some(rest) => (true, rest.trim()),
        None => (false, cell),
    };
    let value = if let Some(frac) = body.strip_prefix("\\frac{") {
        let (num, rest) = frac.split_once("}{").ok_or_else(|| latex_err(format!("bad fraction {cell:?}")))?;
        let den = rest.strip_suffix('}').ok_or_else(|| latex_err(format!("bad fraction {cell:?}")))?;
        let den = parse_int(den)?;
        if den == BigInt::from(0) {
            return Err(Error::ZeroDenominator);
        }
        Rational::new(parse_int(num)?, den)
    } else {
        Rational::from_integer(parse_int(body)?)
    };
    Ok(if neg { -value } else { value })
}

/// Inverse of [`render_latex`].
pub fn parse_latex(src: &str) -> Result<Vec<MatrixTable>> {
    let mut out = Vec::new();
    let mut label: Option<(String, usize)> = None;
    let mut body: Option<String> = None;
    for line in src.lines() {
        let line = line.trim();
        if let Some(b) = body.as_mut() {
            if let Some(last) = line.strip_suffix("\\end{pmatrix} \\]") {
                b.push_str(last);
                let (objective, k) = label.take().ok_or_else(|| latex_err("matrix without a label"))?;
                let rows = b
                    .split("\\\\")
                    .map(str::trim)
                    .filter(|r| !r.is_empty())
                    .map(|r| r.split('&').map(parse_latex_entry).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                out.push(MatrixTable::new(&objective, k, rows));
                body = None;
            } else {
                b.push_str(line);
                b.push(' ');
            }
        } else if let Some(rest) = line.strip_prefix("% ") {
            let (objective, m) = rest.rsplit_once(" M_").ok_or_else(|| latex_err(format!("bad label {rest:?}")))?;
            let k = m.parse().map_err(|_| latex_err(format!("bad layer index {m:?}")))?;
            label = Some((objective.to_string(), k));
        } else if line.ends_with("\\begin{pmatrix}") {
            body = Some(String::new());
        } else if !line.is_empty() {
            return Err(latex_err(format!("unexpected line {line:?}")));
        }
    }
    if body.is_some() {
        return Err(latex_err("unterminated matrix"));
    }
    Ok(out)
}
