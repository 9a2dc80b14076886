//! Multigraded Betti numbers of monomial ideals.
//!
//! Two independent engines:
//!
//! * [`taylor_strand_betti`] reduces the Taylor complex modulo the maximal
//!   ideal and takes homology one lcm-multidegree at a time. A term `e_S`
//!   survives in multidegree `a` only if `lcm(S) = a`, and its boundary keeps
//!   the faces `S \ j` with the same lcm. Cost is `2^g` in the generator count.
//! * [`koszul_betti`] walks the lcm lattice and, for each multidegree `a`,
//!   takes reduced homology of the upper Koszul complex
//!   `{ squarefree b ⊆ supp(a) : x^(a-b) ∈ I }`; `β_{i,a} = dim H̃_{i-1}`.
//!   These complexes live on at most `n` vertices.

use std::collections::{BTreeMap, HashMap, HashSet};

use rayon::prelude::*;
use serde_json::{json, Value};

use super::homology::{face_sign, homology_dims, rank, reduced_homology_over, SimplicialComplexOnVars, SparseColumn};
use super::{Engine, Limits};
use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal};
use crate::scalar::{Coefficient, FieldChoice};

/// Nonzero multigraded ranks keyed by `(homological index, multidegree)`.
pub type MultigradedRanks = BTreeMap<(usize, Monomial), usize>;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BettiTable {
    field: FieldChoice,
    nvars: usize,
    multigraded: MultigradedRanks,
}

impl BettiTable {
    pub fn new(field: FieldChoice, nvars: usize, mut multigraded: MultigradedRanks) -> Self {
        multigraded.retain(|_, r| *r > 0);
        BettiTable {
            field,
            nvars,
            multigraded,
        }
    }

    pub fn field(&self) -> FieldChoice {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn multigraded(&self) -> &MultigradedRanks {
        &self.multigraded
    }

    /// `β_{i,a}`.
    pub fn get(&self, i: usize, a: &Monomial) -> usize {
        self.multigraded.get(&(i, a.clone())).copied().unwrap_or(0)
    }

    /// Coarse table `β_{i,j}`: sums over multidegrees of total degree `j`.
    pub fn coarse(&self) -> BTreeMap<(usize, u32), usize> {
        let mut out = BTreeMap::new();
        for ((i, a), r) in &self.multigraded {
            *out.entry((*i, a.degree())).or_insert(0) += r;
        }
        out
    }

    pub fn coarse_get(&self, i: usize, j: u32) -> usize {
        self.coarse().get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn projective_dimension(&self) -> Option<usize> {
        self.multigraded.keys().map(|(i, _)| *i).max()
    }

    /// Relabels variables by `perm`; ranks move with their multidegrees.
    pub fn permute(&self, perm: &[usize]) -> BettiTable {
        let multigraded = self
            .multigraded
            .iter()
            .map(|((i, a), r)| ((*i, a.permute(perm)), *r))
            .collect();
        BettiTable::new(self.field, self.nvars, multigraded)
    }

    fn sorted_multigraded(&self) -> Vec<(usize, &Monomial, usize)> {
        let mut rows: Vec<_> = self.multigraded.iter().map(|((i, a), r)| (*i, a, *r)).collect();
        rows.sort_by(|x, y| {
            (x.0, x.1.degree(), x.1.exponents()).cmp(&(y.0, y.1.degree(), y.1.exponents()))
        });
        rows
    }

    /// `{"field", "coarse": [[i, j, rank]], "multigraded": [[i, [a..], rank]]}`,
    /// rows sorted by `(i, j, multidegree lexicographic)`.
    pub fn to_json(&self) -> Value {
        let coarse: Vec<Value> = self
            .coarse()
            .iter()
            .map(|((i, j), r)| json!([i, j, r]))
            .collect();
        let multigraded: Vec<Value> = self
            .sorted_multigraded()
            .into_iter()
            .map(|(i, a, r)| json!([i, a.exponents(), r]))
            .collect();
        json!({ "field": self.field.tag(), "coarse": coarse, "multigraded": multigraded })
    }

    /// Inverse of [`to_json`](Self::to_json); the coarse part is recomputed and checked.
    pub fn from_json(value: &Value) -> Result<Self> {
        let bad = |what: &str| Error::Invalid(format!("malformed Betti table JSON: {what}"));
        let field: FieldChoice = value["field"]
            .as_str()
            .ok_or_else(|| bad("field"))?
            .parse()?;
        let rows = value["multigraded"].as_array().ok_or_else(|| bad("multigraded"))?;
        let mut multigraded = BTreeMap::new();
        let mut nvars = None;
        for row in rows {
            let i = row[0].as_u64().ok_or_else(|| bad("index"))? as usize;
            let a: Vec<u32> = row[1]
                .as_array()
                .ok_or_else(|| bad("multidegree"))?
                .iter()
                .map(|e| e.as_u64().map(|e| e as u32))
                .collect::<Option<_>>()
                .ok_or_else(|| bad("exponent"))?;
            let r = row[2].as_u64().ok_or_else(|| bad("rank"))? as usize;
            if *nvars.get_or_insert(a.len()) != a.len() {
                return Err(bad("inconsistent arity"));
            }
            multigraded.insert((i, Monomial::new(a)), r);
        }
        let table = BettiTable::new(field, nvars.unwrap_or(0), multigraded);
        if table.to_json()["coarse"] != value["coarse"] {
            return Err(bad("coarse entries disagree with multigraded entries"));
        }
        Ok(table)
    }
}

fn check_deadline(limits: &Limits) -> Result<()> {
    match limits.deadline {
        Some(d) if std::time::Instant::now() >= d => Err(Error::Budget),
        _ => Ok(()),
    }
}

/// Taylor-strand Betti numbers over the coefficient ring `F`.
pub fn taylor_betti_over<F: Coefficient>(ideal: &MonomialIdeal, limits: &Limits) -> Result<MultigradedRanks> {
    let gens = ideal.generators();
    let g = gens.len();
    if g > limits.taylor_generators {
        return Err(Error::Capacity {
            what: "generator count for the Taylor engine",
            limit: limits.taylor_generators,
            actual: g,
            hint: "; use the Koszul engine",
        });
    }
    if g == 0 {
        return Ok(BTreeMap::new());
    }
    let subsets = 1usize << g;
    let mut lcm_id = vec![0usize; subsets];
    let mut lattice: Vec<Monomial> = Vec::new();
    let mut ids: HashMap<Monomial, usize> = HashMap::new();
    let mut lcms: Vec<Option<Monomial>> = vec![None; subsets];
    for mask in 1..subsets {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        let l = match &lcms[rest] {
            Some(m) => m.lcm(&gens[low]),
            None => gens[low].clone(),
        };
        let next = lattice.len();
        let id = *ids.entry(l.clone()).or_insert(next);
        if id == next {
            lattice.push(l.clone());
        }
        lcm_id[mask] = id;
        lcms[mask] = Some(l);
    }
    drop(lcms);
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); lattice.len()];
    for mask in 1..subsets {
        groups[lcm_id[mask]].push(mask);
    }

    let per_group: Vec<Vec<(usize, usize)>> = groups
        .par_iter()
        .map(|members| {
            check_deadline(limits)?;
            Ok(strand_homology::<F>(members, g))
        })
        .collect::<Result<_>>()?;

    let mut out = BTreeMap::new();
    for (id, ranks) in per_group.into_iter().enumerate() {
        for (i, r) in ranks {
            out.insert((i, lattice[id].clone()), r);
        }
    }
    Ok(out)
}

/// Homology of one lcm strand; returns nonzero `(i, dim H_i)` with `|S| = i + 1`.
fn strand_homology<F: Coefficient>(members: &[usize], g: usize) -> Vec<(usize, usize)> {
    let mut by_size: Vec<Vec<usize>> = vec![Vec::new(); g + 1];
    for &m in members {
        by_size[m.count_ones() as usize].push(m);
    }
    let index: Vec<HashMap<usize, usize>> = by_size
        .iter()
        .map(|ms| ms.iter().enumerate().map(|(i, &m)| (m, i)).collect())
        .collect();
    // Chain group C_i holds subsets of size i + 1.
    let dims: Vec<usize> = by_size[1..].iter().map(Vec::len).collect();
    let mut boundary_ranks = vec![0usize; dims.len()];
    for size in 2..=g {
        if by_size[size].is_empty() || by_size[size - 1].is_empty() {
            continue;
        }
        let cols = by_size[size]
            .iter()
            .map(|&s| {
                let mut entries = Vec::new();
                let mut rest = s;
                let mut pos = 0;
                while rest != 0 {
                    let bit = rest & rest.wrapping_neg();
                    rest &= rest - 1;
                    if let Some(&row) = index[size - 1].get(&(s & !bit)) {
                        entries.push((row, face_sign::<F>(pos)));
                    }
                    pos += 1;
                }
                SparseColumn::from_entries(entries)
            })
            .collect();
        boundary_ranks[size - 1] = rank(cols);
    }
    homology_dims(&dims, &boundary_ranks)
        .into_iter()
        .enumerate()
        .filter(|(_, r)| *r > 0)
        .collect()
}

/// All lcms of nonempty subsets of the generators.
pub fn lcm_lattice(ideal: &MonomialIdeal, limits: &Limits) -> Result<Vec<Monomial>> {
    let gens = ideal.generators();
    let mut seen: HashSet<Monomial> = gens.iter().cloned().collect();
    let mut frontier: Vec<Monomial> = gens.to_vec();
    while !frontier.is_empty() {
        check_deadline(limits)?;
        let mut next = Vec::new();
        for x in &frontier {
            for g in gens {
                let l = x.lcm(g);
                if !seen.contains(&l) {
                    seen.insert(l.clone());
                    next.push(l);
                }
            }
        }
        frontier = next;
    }
    let mut lattice: Vec<Monomial> = seen.into_iter().collect();
    lattice.sort_unstable();
    Ok(lattice)
}

/// The upper Koszul complex of `ideal` at multidegree `a`.
pub fn upper_koszul_complex(ideal: &MonomialIdeal, a: &Monomial) -> SimplicialComplexOnVars {
    let support = a.support();
    if !ideal.contains(a) {
        return SimplicialComplexOnVars::void(support);
    }
    let mut faces = Vec::new();
    let mut b = support;
    loop {
        let mut exps = a.exponents().to_vec();
        for (i, e) in exps.iter_mut().enumerate() {
            if b >> i & 1 == 1 {
                *e -= 1;
            }
        }
        if ideal.contains(&Monomial::new(exps)) {
            faces.push(b);
        }
        if b == 0 {
            break;
        }
        b = (b - 1) & support;
    }
    SimplicialComplexOnVars::from_faces(support, faces).expect("upper Koszul complexes are downward closed")
}

/// Upper-Koszul Betti numbers over the coefficient ring `F`.
pub fn koszul_betti_over<F: Coefficient>(ideal: &MonomialIdeal, limits: &Limits) -> Result<MultigradedRanks> {
    let lattice = lcm_lattice(ideal, limits)?;
    let per_degree: Vec<Vec<(usize, usize)>> = lattice
        .par_iter()
        .map(|a| {
            check_deadline(limits)?;
            let h = reduced_homology_over::<F>(&upper_koszul_complex(ideal, a));
            // ranks()[k] is dimension k - 1, which is homological index k
            Ok(h.ranks().iter().copied().enumerate().filter(|(_, r)| *r > 0).collect())
        })
        .collect::<Result<_>>()?;
    let mut out = BTreeMap::new();
    for (a, ranks) in lattice.into_iter().zip(per_degree) {
        for (i, r) in ranks {
            out.insert((i, a.clone()), r);
        }
    }
    Ok(out)
}

pub fn taylor_strand_betti(ideal: &MonomialIdeal, field: FieldChoice) -> Result<BettiTable> {
    taylor_strand_betti_with(ideal, field, &Limits::default())
}

pub fn taylor_strand_betti_with(ideal: &MonomialIdeal, field: FieldChoice, limits: &Limits) -> Result<BettiTable> {
    let ranks = crate::with_coefficient!(field, F => taylor_betti_over::<F>(ideal, limits))??;
    Ok(BettiTable::new(field, ideal.nvars(), ranks))
}

pub fn koszul_betti(ideal: &MonomialIdeal, field: FieldChoice) -> Result<BettiTable> {
    koszul_betti_with(ideal, field, &Limits::default())
}

pub fn koszul_betti_with(ideal: &MonomialIdeal, field: FieldChoice, limits: &Limits) -> Result<BettiTable> {
    let ranks = crate::with_coefficient!(field, F => koszul_betti_over::<F>(ideal, limits))??;
    Ok(BettiTable::new(field, ideal.nvars(), ranks))
}

/// Betti table by the chosen engine; `Auto` uses Taylor up to its generator cap.
pub fn betti_table(ideal: &MonomialIdeal, field: FieldChoice, engine: Engine, limits: &Limits) -> Result<BettiTable> {
    match engine {
        Engine::Taylor => taylor_strand_betti_with(ideal, field, limits),
        Engine::Koszul => koszul_betti_with(ideal, field, limits),
        Engine::Auto if ideal.len() <= limits.taylor_generators => taylor_strand_betti_with(ideal, field, limits),
        Engine::Auto => koszul_betti_with(ideal, field, limits),
    }
}
