//! Exhaustive sweeps over small labeled graphs.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::{cover_ideal, is_chordal, CoverMethod, SimpleGraph};
use crate::resolution::linearity::{is_componentwise_linear_with, CwlOptions};
use crate::resolution::{Engine, Limits};
use crate::scalar::FieldChoice;

pub const MAX_SWEEP_VERTICES: usize = 6;
pub const MAX_SWEEP_T: u32 = 6;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepConfig {
    pub n_min: usize,
    pub n_max: usize,
    pub t_set: BTreeSet<u32>,
    pub chordal_only: bool,
    pub connected_only: bool,
    pub complete_only: bool,
    pub field: FieldChoice,
    pub engine: Engine,
    pub row_budget: Duration,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            n_min: 1,
            n_max: 4,
            t_set: BTreeSet::from([1]),
            chordal_only: false,
            connected_only: false,
            complete_only: false,
            field: FieldChoice::Rationals,
            engine: Engine::Auto,
            row_budget: Duration::from_secs(30),
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_min < 1 || self.n_min > self.n_max || self.n_max > MAX_SWEEP_VERTICES {
            return Err(Error::Invalid(format!(
                "vertex range must satisfy 1 <= n_min <= n_max <= {MAX_SWEEP_VERTICES}, got {}..={}",
                self.n_min, self.n_max
            )));
        }
        if self.t_set.is_empty() {
            return Err(Error::Invalid("at least one t is required".into()));
        }
        if let Some(bad) = self.t_set.iter().find(|&&t| t == 0 || t > MAX_SWEEP_T) {
            return Err(Error::Invalid(format!("t must lie in 1..={MAX_SWEEP_T}, got {bad}")));
        }
        Ok(())
    }
}

/// Edges of `K_n` in lexicographic order; bit `k` of a mask selects edge `k`.
fn edge_slots(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).collect()
}

fn graph_from_mask(n: usize, slots: &[(usize, usize)], mask: u32) -> SimpleGraph {
    let edges: Vec<_> = slots
        .iter()
        .enumerate()
        .filter(|(k, _)| mask >> k & 1 == 1)
        .map(|(_, &e)| e)
        .collect();
    SimpleGraph::from_edges(n, &edges).expect("slots are distinct non-loop edges")
}

fn edge_mask(g: &SimpleGraph) -> u32 {
    let slots = edge_slots(g.n_vertices());
    slots
        .iter()
        .enumerate()
        .filter(|(_, &(u, v))| g.has_edge(u, v))
        .fold(0, |m, (k, _)| m | 1 << k)
}

/// Labeled graphs in range, by `n` and then ascending edge mask.
pub fn enumerate_graphs(config: &SweepConfig) -> Result<Vec<SimpleGraph>> {
    config.validate()?;
    let mut out = Vec::new();
    for n in config.n_min..=config.n_max {
        let slots = edge_slots(n);
        for mask in 0u32..1 << slots.len() {
            let g = graph_from_mask(n, &slots, mask);
            if config.complete_only && !g.is_complete() {
                continue;
            }
            if config.connected_only && !g.is_connected() {
                continue;
            }
            if config.chordal_only && is_chordal(&g).is_none() {
                continue;
            }
            out.push(g);
        }
    }
    Ok(out)
}

/// Least edge mask over all vertex relabelings.
pub fn canonical_mask(g: &SimpleGraph) -> u32 {
    let n = g.n_vertices();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = edge_mask(g);
    // Heap's algorithm over all n! relabelings.
    let mut c = vec![0usize; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            best = best.min(edge_mask(&g.permute(&perm)));
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    best
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub n: usize,
    pub t: u32,
    /// 1-based edges.
    pub edges: Vec<[usize; 2]>,
    pub chordal: bool,
    /// `None` when the row was skipped.
    pub cwl: Option<bool>,
    pub failing_degree: Option<u32>,
    pub gens: usize,
    pub ms: u64,
    /// `ok`, `skipped: budget`, or `error: ...`.
    pub status: String,
}

impl SweepRecord {
    pub fn graph(&self) -> SimpleGraph {
        let edges: Vec<_> = self.edges.iter().map(|[u, v]| (u - 1, v - 1)).collect();
        SimpleGraph::from_edges(self.n, &edges).expect("records hold valid graphs")
    }

    pub fn edges_text(&self) -> String {
        self.edges
            .iter()
            .map(|[u, v]| format!("{u}-{v}"))
            .collect::<Vec<_>>()
            .join(";")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FailingClass {
    pub n: usize,
    /// Edges of the canonical representative, 1-based.
    pub canonical_edges: Vec<[usize; 2]>,
    pub labelings: usize,
    pub failing_degree: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TSummary {
    pub t: u32,
    pub rows: usize,
    pub cwl: usize,
    pub not_cwl: usize,
    pub skipped: usize,
    pub failing_classes: Vec<FailingClass>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepSummary {
    pub per_t: Vec<TSummary>,
    pub warnings: Vec<String>,
}

impl SweepSummary {
    pub fn failures(&self) -> usize {
        self.per_t.iter().map(|s| s.not_cwl).sum()
    }

    pub fn skipped(&self) -> usize {
        self.per_t.iter().map(|s| s.skipped).sum()
    }
}

fn run_row(g: &SimpleGraph, t: u32, config: &SweepConfig) -> SweepRecord {
    let start = Instant::now();
    let chordal = is_chordal(g).is_some();
    let limits = Limits {
        deadline: Some(start + config.row_budget),
        ..Limits::default()
    };
    let options = CwlOptions {
        field: config.field,
        engine: config.engine,
        extra_degrees: 0,
        limits,
        certificate: false,
    };
    let mut gens = 0;
    let outcome = cover_ideal(g, t, CoverMethod::TCovers).and_then(|ideal| {
        gens = ideal.len();
        is_componentwise_linear_with(&ideal, &options)
    });
    let (cwl, failing_degree, status) = match outcome {
        Ok(report) => (Some(report.overall), report.failing_degree(), "ok".to_string()),
        Err(Error::Budget) => (None, None, "skipped: budget".to_string()),
        Err(e) => (None, None, format!("error: {e}")),
    };
    SweepRecord {
        n: g.n_vertices(),
        t,
        edges: g.edges().into_iter().map(|(u, v)| [u + 1, v + 1]).collect(),
        chordal,
        cwl,
        failing_degree,
        gens,
        ms: start.elapsed().as_millis() as u64,
        status,
    }
}

/// One record per `(graph, t)` in enumeration order, plus a summary.
pub fn sweep(config: &SweepConfig) -> Result<(Vec<SweepRecord>, SweepSummary)> {
    let graphs = enumerate_graphs(config)?;
    let tasks: Vec<(&SimpleGraph, u32)> = graphs
        .iter()
        .flat_map(|g| config.t_set.iter().map(move |&t| (g, t)))
        .collect();
    let records: Vec<SweepRecord> = tasks.par_iter().map(|&(g, t)| run_row(g, t, config)).collect();
    let summary = summarize(&records, &config.t_set);
    Ok((records, summary))
}

pub fn summarize(records: &[SweepRecord], t_set: &BTreeSet<u32>) -> SweepSummary {
    let mut warnings = Vec::new();
    let per_t = t_set
        .iter()
        .map(|&t| {
            let rows: Vec<&SweepRecord> = records.iter().filter(|r| r.t == t).collect();
            let mut classes: BTreeMap<(usize, u32), FailingClass> = BTreeMap::new();
            for r in rows.iter().filter(|r| r.cwl == Some(false)) {
                let canon = canonical_mask(&r.graph());
                let slots = edge_slots(r.n);
                let entry = classes.entry((r.n, canon)).or_insert_with(|| FailingClass {
                    n: r.n,
                    canonical_edges: graph_from_mask(r.n, &slots, canon)
                        .edges()
                        .into_iter()
                        .map(|(u, v)| [u + 1, v + 1])
                        .collect(),
                    labelings: 0,
                    failing_degree: r.failing_degree,
                });
                entry.labelings += 1;
                if t == 1 && r.chordal {
                    warnings.push(format!(
                        "chordal graph {} failed at t = 1; this contradicts a known theorem and points to a bug",
                        r.edges_text()
                    ));
                }
            }
            TSummary {
                t,
                rows: rows.len(),
                cwl: rows.iter().filter(|r| r.cwl == Some(true)).count(),
                not_cwl: rows.iter().filter(|r| r.cwl == Some(false)).count(),
                skipped: rows.iter().filter(|r| r.cwl.is_none()).count(),
                failing_classes: classes.into_values().collect(),
            }
        })
        .collect();
    SweepSummary { per_t, warnings }
}

fn record_json(r: &SweepRecord, timing: bool) -> Value {
    let mut v = serde_json::to_value(r).expect("plain data");
    if !timing {
        v.as_object_mut().expect("record is an object").remove("ms");
    }
    v
}

/// JSON lines: one record per line, then `{"summary": ...}`.
pub fn to_jsonl(records: &[SweepRecord], summary: &SweepSummary, timing: bool) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(&record_json(r, timing).to_string());
        out.push('\n');
    }
    out.push_str(&json!({ "summary": summary }).to_string());
    out.push('\n');
    out
}

pub const CSV_HEADER: [&str; 8] = ["n", "t", "edges", "chordal", "cwl", "failing_degree", "gens", "ms"];

/// CSV rows under [`CSV_HEADER`], then the summary as one JSON line.
pub fn to_csv(records: &[SweepRecord], summary: &SweepSummary, timing: bool) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Invalid(format!("csv: {e}"));
    w.write_record(CSV_HEADER).map_err(io)?;
    for r in records {
        let opt = |v: Option<String>| v.unwrap_or_default();
        w.write_record([
            r.n.to_string(),
            r.t.to_string(),
            r.edges_text(),
            r.chordal.to_string(),
            opt(r.cwl.map(|c| c.to_string())),
            opt(r.failing_degree.map(|d| d.to_string())),
            r.gens.to_string(),
            if timing { r.ms.to_string() } else { String::new() },
        ])
        .map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Invalid(format!("csv: {e}")))?;
    let mut out = String::from_utf8(bytes).expect("csv output is utf-8");
    out.push_str(&json!({ "summary": summary }).to_string());
    out.push('\n');
    Ok(out)
}
