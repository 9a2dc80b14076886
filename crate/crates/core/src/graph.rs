//! Simple graphs and the monomial ideals attached to them.
//!
//! Vertices are 0-based in the API; text formats and reports use `1..=n`.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal, OrderedGenerators, DEFAULT_EXPONENT_CAP};

/// Adjacency is kept as one bitmask per vertex.
pub const MAX_VERTICES: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SimpleGraph {
    n: usize,
    adj: Vec<u64>,
}

impl SimpleGraph {
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_VERTICES {
            return Err(Error::Invalid(format!(
                "graph needs between 1 and {MAX_VERTICES} vertices, got {n}"
            )));
        }
        Ok(SimpleGraph { n, adj: vec![0; n] })
    }

    /// Builds a graph from 0-based edges. Loops and repeated edges are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Invalid(format!(
                    "edge {{{}, {}}} outside vertices 1..{n}",
                    u + 1,
                    v + 1
                )));
            }
            if u == v {
                return Err(Error::Invalid(format!("loop at vertex {}", u + 1)));
            }
            if g.has_edge(u, v) {
                return Err(Error::Invalid(format!("duplicate edge {{{}, {}}}", u + 1, v + 1)));
            }
            g.adj[u] |= 1 << v;
            g.adj[v] |= 1 << u;
        }
        Ok(g)
    }

    pub fn n_vertices(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    /// Edges `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|i| ((i + 1)..self.n).filter(move |&j| self.has_edge(i, j)).map(move |j| (i, j)))
            .collect()
    }

    pub fn n_edges(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = 1u64;
        let mut frontier = 1u64;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let new = self.adj[v] & !seen;
            seen |= new;
            frontier |= new;
        }
        seen.count_ones() as usize == self.n
    }

    pub fn is_complete(&self) -> bool {
        self.n_edges() == self.n * (self.n - 1) / 2
    }

    pub fn is_clique(&self, set: u64) -> bool {
        let mut rest = set;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if set & !(1 << v) & !self.adj[v] != 0 {
                return false;
            }
        }
        true
    }

    /// Relabels vertices: `v` becomes `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> SimpleGraph {
        let edges: Vec<_> = self.edges().into_iter().map(|(u, v)| (perm[u], perm[v])).collect();
        SimpleGraph::from_edges(self.n, &edges).expect("a permutation preserves simplicity")
    }

    /// Parses the graph file format: `graph <n>` then one 1-based `u v` pair per line.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (first_no, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "missing `graph <n>` header"))?;
        let n: usize = header
            .strip_prefix("graph")
            .and_then(|r| r.trim().parse().ok())
            .ok_or_else(|| Error::parse(first_no, "expected `graph <n>`"))?;
        let mut edges = Vec::new();
        for (no, line) in lines {
            let parts: Vec<&str> = line.split_whitespace().collect();
            let (u, v) = match parts.as_slice() {
                [u, v] => (u.parse::<usize>(), v.parse::<usize>()),
                _ => return Err(Error::parse(no, "expected `u v`")),
            };
            match (u, v) {
                (Ok(u), Ok(v)) if u >= 1 && v >= 1 => edges.push((u - 1, v - 1)),
                _ => return Err(Error::parse(no, "vertices are positive integers")),
            }
        }
        Self::from_edges(n, &edges)
    }

    pub fn to_file_string(&self) -> String {
        let mut out = format!("graph {}\n", self.n);
        for (u, v) in self.edges() {
            out.push_str(&format!("{} {}\n", u + 1, v + 1));
        }
        out
    }
}

impl fmt::Display for SimpleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self
            .edges()
            .iter()
            .map(|(u, v)| format!("{}-{}", u + 1, v + 1))
            .collect();
        write!(f, "G{}[{}]", self.n, edges.join(";"))
    }
}

/// `K_n`.
pub fn complete_graph(n: usize) -> Result<SimpleGraph> {
    let edges: Vec<_> = (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).collect();
    SimpleGraph::from_edges(n, &edges)
}

/// The chordal graph on `a, b, c, d` (= `x1..x4`) with edges
/// `ab, ac, bc, bd, cd`, whose cover ideals fail componentwise linearity for `t > 1`.
pub fn counterexample_graph() -> SimpleGraph {
    SimpleGraph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]).expect("fixed graph")
}

/// Maximum cardinality search, returning the reversed visit order
/// (a perfect elimination order exactly when the graph is chordal).
fn mcs_order(g: &SimpleGraph) -> Vec<usize> {
    let mut weight = vec![0usize; g.n];
    let mut numbered = 0u64;
    let mut visit = Vec::with_capacity(g.n);
    for _ in 0..g.n {
        let v = (0..g.n)
            .filter(|&v| numbered >> v & 1 == 0)
            .max_by(|&a, &b| weight[a].cmp(&weight[b]).then(b.cmp(&a)))
            .expect("an unnumbered vertex remains");
        numbered |= 1 << v;
        visit.push(v);
        let mut nb = g.adj[v] & !numbered;
        while nb != 0 {
            let u = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            weight[u] += 1;
        }
    }
    visit.reverse();
    visit
}

/// True if in `order` every vertex's later neighbors form a clique.
pub fn is_perfect_elimination_order(g: &SimpleGraph, order: &[usize]) -> bool {
    if order.len() != g.n {
        return false;
    }
    let mut eliminated = 0u64;
    for &v in order {
        if eliminated >> v & 1 == 1 {
            return false;
        }
        if !g.is_clique(g.adj[v] & !eliminated) {
            return false;
        }
        eliminated |= 1 << v;
    }
    true
}

/// Chordality test. On success returns a verified perfect elimination order.
pub fn is_chordal(g: &SimpleGraph) -> Option<Vec<usize>> {
    let order = mcs_order(g);
    is_perfect_elimination_order(g, &order).then_some(order)
}

/// All inclusion-minimal vertex covers, as bitmasks in ascending numeric order.
pub fn minimal_vertex_covers(g: &SimpleGraph) -> Result<Vec<u64>> {
    const LIMIT: usize = 24;
    if g.n > LIMIT {
        return Err(Error::Capacity {
            what: "vertex count for cover enumeration",
            limit: LIMIT,
            actual: g.n,
            hint: "",
        });
    }
    let edges = g.edges();
    let covers = |s: u64| edges.iter().all(|&(u, v)| s >> u & 1 == 1 || s >> v & 1 == 1);
    Ok((0u64..1 << g.n)
        .filter(|&s| covers(s))
        .filter(|&s| {
            let mut rest = s;
            while rest != 0 {
                let v = rest.trailing_zeros();
                rest &= rest - 1;
                if covers(s & !(1 << v)) {
                    return false;
                }
            }
            true
        })
        .collect())
}

/// A vector `a` with `a_i + a_j >= t` on every edge.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct CoverVector {
    pub values: Vec<u32>,
    pub order: u32,
}

impl CoverVector {
    pub fn is_cover_of(&self, g: &SimpleGraph) -> bool {
        self.values.len() == g.n
            && g.edges()
                .iter()
                .all(|&(u, v)| self.values[u] + self.values[v] >= self.order)
    }

    /// No single positive entry can be lowered.
    pub fn is_minimal_for(&self, g: &SimpleGraph) -> bool {
        self.is_cover_of(g) && is_tight(g, &self.values, self.order)
    }

    pub fn monomial(&self) -> Monomial {
        Monomial::new(self.values.clone())
    }
}

fn is_tight(g: &SimpleGraph, a: &[u32], t: u32) -> bool {
    (0..g.n).all(|i| {
        if a[i] == 0 {
            return true;
        }
        let mut nb = g.adj[i];
        while nb != 0 {
            let j = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            if a[i] + a[j] == t {
                return true;
            }
        }
        false
    })
}

/// All componentwise-minimal `t`-covers, sorted by the deglex order of `x^a`.
///
/// Depth-first scan of `{0..t}^n`: each coordinate starts at the smallest
/// value compatible with its already-assigned neighbors, so every leaf is a
/// cover; leaves are then filtered for pointwise minimality. The first
/// coordinate is split across threads.
pub fn minimal_t_covers(g: &SimpleGraph, t: u32) -> Result<Vec<CoverVector>> {
    if t == 0 {
        return Err(Error::Invalid("cover order t must be positive".into()));
    }
    if t > DEFAULT_EXPONENT_CAP {
        return Err(Error::ExponentCap {
            exponent: t as u64,
            cap: DEFAULT_EXPONENT_CAP,
        });
    }
    fn descend(g: &SimpleGraph, t: u32, a: &mut Vec<u32>, pos: usize, out: &mut Vec<Vec<u32>>) {
        if pos == g.n {
            if is_tight(g, a, t) {
                out.push(a.clone());
            }
            return;
        }
        let earlier = g.adj[pos] & ((1u64 << pos) - 1);
        let mut lower = 0;
        let mut nb = earlier;
        while nb != 0 {
            let j = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            lower = lower.max(t.saturating_sub(a[j]));
        }
        // Without later neighbors nothing can make a value above `lower` tight.
        let upper = if g.adj[pos] >> pos >> 1 == 0 { lower } else { t };
        for v in lower..=upper {
            a[pos] = v;
            descend(g, t, a, pos + 1, out);
        }
    }
    let first_upper = if g.adj[0] == 0 { 0 } else { t };
    let mut found: Vec<Vec<u32>> = (0..=first_upper)
        .into_par_iter()
        .flat_map_iter(|v0| {
            let mut a = vec![0; g.n];
            a[0] = v0;
            let mut out = Vec::new();
            descend(g, t, &mut a, 1, &mut out);
            out
        })
        .collect();
    found.sort_by(|x, y| Monomial::new(x.clone()).cmp(&Monomial::new(y.clone())));
    Ok(found
        .into_iter()
        .map(|values| CoverVector { values, order: t })
        .collect())
}

/// `I(G) = ⟨x_i x_j : {i, j} ∈ E⟩`.
pub fn edge_ideal(g: &SimpleGraph) -> MonomialIdeal {
    let gens = g.edges().into_iter().map(|(u, v)| {
        let mut e = vec![0; g.n];
        e[u] = 1;
        e[v] = 1;
        Monomial::new(e)
    });
    MonomialIdeal::minimalize(g.n, gens).expect("graph has at least one vertex")
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum CoverMethod {
    /// Exhaustive minimal t-cover enumeration.
    #[default]
    TCovers,
    /// Fold `∩ ⟨x_i, x_j⟩^t` over the edges.
    IteratedIntersection,
}

/// `∩_{ {i,j} ∈ E } ⟨x_i, x_j⟩^t`; the unit ideal for an edgeless graph.
pub fn cover_ideal(g: &SimpleGraph, t: u32, method: CoverMethod) -> Result<MonomialIdeal> {
    if t == 0 {
        return Err(Error::Invalid("cover order t must be positive".into()));
    }
    match method {
        CoverMethod::TCovers => {
            let covers = minimal_t_covers(g, t)?;
            MonomialIdeal::minimalize(g.n, covers.into_iter().map(|c| c.monomial()))
        }
        CoverMethod::IteratedIntersection => {
            let mut acc = MonomialIdeal::unit(g.n)?;
            for (u, v) in g.edges() {
                let p = MonomialIdeal::prime_pair(g.n, u, v)?.power(t)?;
                acc = acc.intersect(&p)?;
            }
            Ok(acc)
        }
    }
}

fn check_knt_args(n: usize, t: u32) -> Result<()> {
    if n < 3 {
        return Err(Error::Invalid(format!("closed form needs n >= 3, got {n}")));
    }
    if n > MAX_VERTICES {
        return Err(Error::Invalid(format!("closed form supports n <= {MAX_VERTICES}")));
    }
    if t == 0 {
        return Err(Error::Invalid("t must be positive".into()));
    }
    if t > DEFAULT_EXPONENT_CAP {
        return Err(Error::ExponentCap {
            exponent: t as u64,
            cap: DEFAULT_EXPONENT_CAP,
        });
    }
    Ok(())
}

/// Generators of `K_n^(t)` in display order: for even `t = 2m` the balanced
/// monomial `∏ x_i^m` first, then rows `x_j^{low} ∏_{i≠j} x_i^{t-low}` with
/// `low` descending from `⌈t/2⌉ - 1` to `0`, each row running `j = 1..n`.
pub fn theorem_order(n: usize, t: u32) -> Result<OrderedGenerators> {
    check_knt_args(n, t)?;
    let m = t / 2;
    let mut gens = Vec::new();
    if t.is_multiple_of(2) {
        gens.push(Monomial::new(vec![m; n]));
    }
    let top_low = if t.is_multiple_of(2) { m - 1 } else { m };
    // for t = 2 with m = 1 there is one row, low = 0
    for low in (0..=top_low).rev() {
        for j in 0..n {
            let mut e = vec![t - low; n];
            e[j] = low;
            gens.push(Monomial::new(e));
        }
    }
    OrderedGenerators::new(n, gens)
}

/// `K_n^(t)` from its closed-form generator families.
pub fn knt_closed_form(n: usize, t: u32) -> Result<MonomialIdeal> {
    Ok(theorem_order(n, t)?.to_ideal())
}
