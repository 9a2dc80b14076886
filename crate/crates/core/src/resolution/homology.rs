//! Exact ranks of sparse integer matrices and reduced simplicial homology.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::scalar::{Coefficient, FieldChoice};

/// A sparse column with strictly increasing row indices and nonzero values.
#[derive(Clone, Debug)]
pub struct SparseColumn<F> {
    rows: Vec<usize>,
    vals: Vec<F>,
}

impl<F: Coefficient> SparseColumn<F> {
    /// Builds a column from `(row, value)` pairs; zero values are dropped.
    pub fn from_entries(mut entries: Vec<(usize, F)>) -> Self {
        entries.sort_by_key(|(r, _)| *r);
        let mut rows = Vec::with_capacity(entries.len());
        let mut vals: Vec<F> = Vec::with_capacity(entries.len());
        for (r, v) in entries {
            if rows.last() == Some(&r) {
                let last = vals.pop().expect("paired with rows");
                rows.pop();
                let sum = last + v;
                if !sum.is_zero() {
                    rows.push(r);
                    vals.push(sum);
                }
            } else if !v.is_zero() {
                rows.push(r);
                vals.push(v);
            }
        }
        SparseColumn { rows, vals }
    }

    fn low(&self) -> Option<(usize, &F)> {
        self.rows.last().map(|&r| (r, self.vals.last().expect("paired with rows")))
    }

    /// `a * self - b * other`, merged row by row.
    fn combine(&self, a: &F, other: &SparseColumn<F>, b: &F) -> SparseColumn<F> {
        let mut rows = Vec::with_capacity(self.rows.len() + other.rows.len());
        let mut vals = Vec::with_capacity(rows.capacity());
        let (mut i, mut j) = (0, 0);
        while i < self.rows.len() || j < other.rows.len() {
            let take_left = j == other.rows.len() || (i < self.rows.len() && self.rows[i] < other.rows[j]);
            let take_right = i == self.rows.len() || (j < other.rows.len() && other.rows[j] < self.rows[i]);
            let (r, v) = if take_left {
                i += 1;
                (self.rows[i - 1], a.clone() * self.vals[i - 1].clone())
            } else if take_right {
                j += 1;
                (other.rows[j - 1], F::zero() - b.clone() * other.vals[j - 1].clone())
            } else {
                i += 1;
                j += 1;
                (
                    self.rows[i - 1],
                    a.clone() * self.vals[i - 1].clone() - b.clone() * other.vals[j - 1].clone(),
                )
            };
            if !v.is_zero() {
                rows.push(r);
                vals.push(v);
            }
        }
        F::normalize(&mut vals);
        SparseColumn { rows, vals }
    }
}

/// Rank of the matrix with the given columns, by fraction-free column reduction.
///
/// Each column is reduced against earlier pivots (keyed by lowest nonzero
/// row) with `p·col − c·pivot_col`, which stays inside the coefficient ring.
pub fn rank<F: Coefficient>(columns: Vec<SparseColumn<F>>) -> usize {
    let mut pivots: HashMap<usize, usize> = HashMap::new();
    let mut reduced: Vec<SparseColumn<F>> = Vec::new();
    for mut col in columns {
        while let Some((low, c)) = col.low() {
            match pivots.get(&low) {
                Some(&k) => {
                    let pivot = &reduced[k];
                    let p = pivot.low().expect("pivot columns are nonzero").1.clone();
                    let c = c.clone();
                    col = col.combine(&p, pivot, &c);
                }
                None => {
                    pivots.insert(low, reduced.len());
                    reduced.push(col);
                    break;
                }
            }
        }
    }
    reduced.len()
}

/// Homology dimensions of a chain complex `C_0 ← C_1 ← ...` given the size
/// of each chain group and the rank of each boundary map `∂_k : C_k → C_{k-1}`
/// (`boundary_ranks[k]`, with `boundary_ranks[0]` the map out of `C_0`).
pub(crate) fn homology_dims(group_dims: &[usize], boundary_ranks: &[usize]) -> Vec<usize> {
    (0..group_dims.len())
        .map(|k| {
            let out = boundary_ranks.get(k).copied().unwrap_or(0);
            let into = boundary_ranks.get(k + 1).copied().unwrap_or(0);
            group_dims[k] - out - into
        })
        .collect()
}

/// Sign of removing the element at `position` (0-based, in increasing order).
pub(crate) fn face_sign<F: Coefficient>(position: u32) -> F {
    F::from_i64(if position.is_multiple_of(2) { 1 } else { -1 })
}

/// A simplicial complex on a subset of the variables, faces as bitmasks.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SimplicialComplexOnVars {
    ground: u64,
    faces: BTreeSet<u64>,
}

impl SimplicialComplexOnVars {
    /// The complex with no faces at all; its reduced homology vanishes.
    pub fn void(ground: u64) -> Self {
        SimplicialComplexOnVars {
            ground,
            faces: BTreeSet::new(),
        }
    }

    /// The complex `{∅}`, whose only reduced homology is in dimension −1.
    pub fn empty(ground: u64) -> Self {
        SimplicialComplexOnVars {
            ground,
            faces: BTreeSet::from([0]),
        }
    }

    /// Validates that `faces` lie in `ground` and are closed under subsets.
    pub fn from_faces(ground: u64, faces: impl IntoIterator<Item = u64>) -> Result<Self> {
        let faces: BTreeSet<u64> = faces.into_iter().collect();
        for &f in &faces {
            if f & !ground != 0 {
                return Err(Error::Contract(format!("face {f:#b} leaves the ground set {ground:#b}")));
            }
            let mut rest = f;
            while rest != 0 {
                let v = rest & rest.wrapping_neg();
                rest &= rest - 1;
                if !faces.contains(&(f & !v)) {
                    return Err(Error::Contract(format!("face {f:#b} is missing a facet")));
                }
            }
        }
        Ok(SimplicialComplexOnVars { ground, faces })
    }

    /// The downward closure of `facets`.
    pub fn from_facets(ground: u64, facets: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut faces = BTreeSet::new();
        for facet in facets {
            if facet & !ground != 0 {
                return Err(Error::Contract(format!("facet {facet:#b} leaves the ground set")));
            }
            if facet.count_ones() > 24 {
                return Err(Error::Capacity {
                    what: "facet size",
                    limit: 24,
                    actual: facet.count_ones() as usize,
                    hint: "",
                });
            }
            // all submasks of the facet
            let mut sub = facet;
            loop {
                faces.insert(sub);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & facet;
            }
        }
        Ok(SimplicialComplexOnVars { ground, faces })
    }

    pub fn ground(&self) -> u64 {
        self.ground
    }

    pub fn faces(&self) -> &BTreeSet<u64> {
        &self.faces
    }

    pub fn is_void(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn dimension(&self) -> Option<isize> {
        self.faces.iter().map(|f| f.count_ones() as isize - 1).max()
    }
}

/// Reduced homology ranks indexed from dimension −1.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ReducedHomology {
    ranks: Vec<usize>,
}

impl ReducedHomology {
    pub fn rank_in(&self, dim: isize) -> usize {
        usize::try_from(dim + 1)
            .ok()
            .and_then(|i| self.ranks.get(i).copied())
            .unwrap_or(0)
    }

    /// Ranks for dimensions −1, 0, 1, ... up to the complex dimension.
    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn is_acyclic(&self) -> bool {
        self.ranks.iter().all(|&r| r == 0)
    }
}

/// Reduced homology over the coefficient ring `F`.
pub fn reduced_homology_over<F: Coefficient>(complex: &SimplicialComplexOnVars) -> ReducedHomology {
    let Some(top) = complex.dimension() else {
        return ReducedHomology::default();
    };
    // by_size[s] lists the faces with s vertices, i.e. dimension s - 1
    let mut by_size: Vec<Vec<u64>> = vec![Vec::new(); (top + 2) as usize];
    for &f in &complex.faces {
        by_size[f.count_ones() as usize].push(f);
    }
    let index: Vec<HashMap<u64, usize>> = by_size
        .iter()
        .map(|fs| fs.iter().enumerate().map(|(i, &f)| (f, i)).collect())
        .collect();
    let mut ranks_of_boundary = vec![0usize; by_size.len()];
    for s in 1..by_size.len() {
        let cols = by_size[s]
            .iter()
            .map(|&f| {
                let mut entries = Vec::with_capacity(s);
                let mut rest = f;
                let mut pos = 0;
                while rest != 0 {
                    let v = rest & rest.wrapping_neg();
                    rest &= rest - 1;
                    if let Some(&row) = index[s - 1].get(&(f & !v)) {
                        entries.push((row, face_sign::<F>(pos)));
                    }
                    pos += 1;
                }
                SparseColumn::from_entries(entries)
            })
            .collect();
        ranks_of_boundary[s] = rank(cols);
    }
    let dims: Vec<usize> = by_size.iter().map(Vec::len).collect();
    ReducedHomology {
        ranks: homology_dims(&dims, &ranks_of_boundary),
    }
}

/// Reduced homology ranks over the chosen field.
pub fn simplicial_homology_ranks(
    complex: &SimplicialComplexOnVars,
    field: FieldChoice,
) -> Result<ReducedHomology> {
    crate::with_coefficient!(field, F => reduced_homology_over::<F>(complex))
}
