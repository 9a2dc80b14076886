//! Human-readable tables. JSON is the stable format; these are for reading.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde_json::{json, Value};

use cwlin::resolution::linearity::Verdict;
use cwlin::resolution::polymatroid::Exchange;
use cwlin::resolution::quotients::QuotientCheck;
use cwlin::{BettiTable, CwlReport, Monomial, MonomialIdeal, OrderedGenerators};

const WIDTH: usize = 80;

/// Joins `items` with ", ", breaking lines before column 80.
fn wrap(indent: &str, items: impl IntoIterator<Item = String>) -> String {
    let mut out = String::new();
    let mut line = String::from(indent);
    for item in items {
        let sep = if line.len() > indent.len() { ", " } else { "" };
        if line.len() + sep.len() + item.len() + 1 > WIDTH && line.len() > indent.len() {
            out.push_str(&line);
            out.push_str(",\n");
            line = format!("{indent}{item}");
        } else {
            line.push_str(sep);
            line.push_str(&item);
        }
    }
    if line.len() > indent.len() {
        out.push_str(&line);
        out.push('\n');
    }
    out
}

fn monomials<'a>(ms: impl IntoIterator<Item = &'a Monomial>) -> Vec<String> {
    ms.into_iter().map(ToString::to_string).collect()
}

pub fn gens(label: &str, t: Option<u32>, ideal: &MonomialIdeal) -> String {
    let mut out = String::new();
    match t {
        Some(t) => writeln!(out, "{label}, t = {t}: {} generators", ideal.len()),
        None => writeln!(out, "{label}: {} generators", ideal.len()),
    }
    .unwrap();
    for (d, count) in ideal.degree_histogram() {
        writeln!(out, "degree {d} ({count}):").unwrap();
        let row = ideal.generators().iter().filter(|g| g.degree() == d);
        out.push_str(&wrap("  ", monomials(row)));
    }
    out
}

pub fn cwl(label: &str, report: &CwlReport) -> String {
    let mut out = format!("{label} over {}\n", report.field);
    if report.vacuous {
        out.push_str("zero ideal: componentwise linear (vacuous)\n");
        return out;
    }
    for d in &report.degrees {
        let verdict = match d.verdict {
            Verdict::Zero => "zero".to_string(),
            Verdict::Linear => "linear".to_string(),
            Verdict::NotLinear => {
                let e = d.offending.expect("failures carry an entry");
                format!("not linear, beta_{{{},{}}} != 0", e.i, e.j)
            }
        };
        writeln!(out, "  degree {:>3} ({:>4} generators): {verdict}", d.degree, d.generators).unwrap();
    }
    match report.failing_degree() {
        None => out.push_str("componentwise linear\n"),
        Some(d) => writeln!(out, "not componentwise linear: degree {d} component fails").unwrap(),
    }
    if let Some(cert) = &report.certificate {
        out.push_str("linear quotients in deglex order:\n");
        out.push_str(&wrap("  ", cert.iter().cloned()));
    }
    out
}

/// Rows are `j - i`, columns `i`, as in the usual Betti diagram.
pub fn betti(table: &BettiTable, multigraded: bool) -> String {
    let coarse = table.coarse();
    let mut out = format!("field {}\n", table.field().tag());
    if coarse.is_empty() {
        out.push_str("all Betti numbers vanish\n");
        return out;
    }
    let cols = table.projective_dimension().unwrap_or(0) + 1;
    let mut rows: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    let mut totals = vec![0usize; cols];
    for (&(i, j), &r) in &coarse {
        rows.entry(j as i64 - i as i64).or_insert_with(|| vec![0; cols])[i] = r;
        totals[i] += r;
    }
    let cell = |r: usize| if r == 0 { ".".to_string() } else { r.to_string() };
    let width = totals.iter().map(|t| t.to_string().len()).max().unwrap_or(1).max(cols.to_string().len()) + 1;
    write!(out, "{:>7}", "").unwrap();
    for i in 0..cols {
        write!(out, "{i:>width$}").unwrap();
    }
    out.push('\n');
    write!(out, "{:>7}", "total:").unwrap();
    for &t in &totals {
        write!(out, "{:>width$}", cell(t)).unwrap();
    }
    out.push('\n');
    for (shift, row) in &rows {
        write!(out, "{:>7}", format!("{shift}:")).unwrap();
        for &r in row {
            write!(out, "{:>width$}", cell(r)).unwrap();
        }
        out.push('\n');
    }
    if multigraded {
        out.push_str("multigraded:\n");
        let value = table.to_json();
        for row in value["multigraded"].as_array().into_iter().flatten() {
            let i = row[0].as_u64().unwrap_or(0);
            let exps: Vec<u32> = row[1]
                .as_array()
                .into_iter()
                .flatten()
                .map(|e| e.as_u64().unwrap_or(0) as u32)
                .collect();
            writeln!(out, "  beta_{{{i},{}}} = {}", Monomial::new(exps), row[2]).unwrap();
        }
    }
    out
}

pub fn quotients_json(order: &OrderedGenerators, check: &QuotientCheck) -> Value {
    json!({
        "holds": check.is_linear(),
        "order": monomials(order.as_slice()),
        "steps": check.steps.iter().map(|s| json!({
            "index": s.index,
            "generator": s.generator.to_string(),
            "colon": monomials(s.colon.generators()),
        })).collect::<Vec<_>>(),
        "failure": check.failure,
    })
}

pub fn quotients(order: &OrderedGenerators, check: &QuotientCheck) -> String {
    let mut out = String::from("order:\n");
    out.push_str(&wrap("  ", monomials(order.as_slice())));
    for s in &check.steps {
        let colon = monomials(s.colon.generators()).join(", ");
        writeln!(out, "  step {:>3}: {} -> <{colon}>", s.index, s.generator).unwrap();
    }
    match &check.failure {
        None => out.push_str("linear quotients\n"),
        Some(f) => writeln!(
            out,
            "fails at step {}: colon by {} has generator {} of degree != 1",
            f.index, f.generator, f.offending
        )
        .unwrap(),
    }
    out
}

pub fn polymatroidal(label: &str, rows: &[(u32, usize, Exchange)]) -> String {
    let mut out = format!("{label}\n");
    for (d, n, e) in rows {
        let verdict = match e {
            Exchange::Holds => "exchange holds".to_string(),
            Exchange::Violated(w) => format!("violated by u = {}, v = {}, i = x{}", w.u, w.v, w.i + 1),
        };
        writeln!(out, "  degree {d:>3} ({n:>4} generators): {verdict}").unwrap();
    }
    out
}
