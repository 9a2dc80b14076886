//! Brute-force oracles. They share no code with the library beyond the
//! plain data types, so agreement is evidence rather than tautology.
#![allow(dead_code)]

use std::collections::BTreeSet;

use cwlin::{Monomial, MonomialIdeal, SimpleGraph};

pub type Exps = Vec<u32>;

pub fn exps_of(ideal: &MonomialIdeal) -> BTreeSet<Exps> {
    ideal.generators().iter().map(|g| g.exponents().to_vec()).collect()
}

pub fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn member(gens: &BTreeSet<Exps>, m: &[u32]) -> bool {
    gens.iter().any(|g| divides(g, m))
}

/// Every vector in `[0, bound]^n`.
pub fn boxed_vectors(n: usize, bound: u32) -> Vec<Exps> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=bound).map(move |e| {
                    let mut w = v.clone();
                    w.push(e);
                    w
                })
            })
            .collect();
    }
    out
}

/// Every exponent vector of total degree `d` in `n` variables.
pub fn vectors_of_degree(n: usize, d: u32) -> Vec<Exps> {
    boxed_vectors(n, d).into_iter().filter(|v| v.iter().sum::<u32>() == d).collect()
}

pub fn minimal_elements(set: &[Exps]) -> BTreeSet<Exps> {
    set.iter()
        .filter(|a| !set.iter().any(|b| b != *a && divides(b, a)))
        .cloned()
        .collect()
}

/// `∩ ⟨x_i, x_j⟩^t`: an exponent vector lies in it iff `a_i + a_j ≥ t` on
/// every edge, and minimal generators never exceed `t` in any coordinate.
pub fn cover_ideal_oracle(g: &SimpleGraph, t: u32) -> BTreeSet<Exps> {
    let n = g.n_vertices();
    let edges = g.edges();
    let covers: Vec<Exps> = boxed_vectors(n, t)
        .into_iter()
        .filter(|a| edges.iter().all(|&(i, j)| a[i] + a[j] >= t))
        .collect();
    minimal_elements(&covers)
}

/// Degree-`d` monomials lying in the ideal generated by `gens`.
pub fn component_oracle(gens: &BTreeSet<Exps>, n: usize, d: u32) -> BTreeSet<Exps> {
    vectors_of_degree(n, d).into_iter().filter(|m| member(gens, m)).collect()
}

/// Chordal iff no vertex subset of size ≥ 4 induces a cycle.
pub fn chordal_oracle(g: &SimpleGraph) -> bool {
    let n = g.n_vertices();
    for set in 0u64..1 << n {
        if set.count_ones() < 4 {
            continue;
        }
        let vs: Vec<usize> = (0..n).filter(|&v| set >> v & 1 == 1).collect();
        let deg = |v: usize| vs.iter().filter(|&&w| g.has_edge(v, w)).count();
        if vs.iter().all(|&v| deg(v) == 2) && induced_connected(g, &vs) {
            return false;
        }
    }
    true
}

fn induced_connected(g: &SimpleGraph, vs: &[usize]) -> bool {
    let mut seen = vec![vs[0]];
    let mut stack = vec![vs[0]];
    while let Some(v) = stack.pop() {
        for &w in vs {
            if g.has_edge(v, w) && !seen.contains(&w) {
                seen.push(w);
                stack.push(w);
            }
        }
    }
    seen.len() == vs.len()
}

/// Exchange condition on an explicit generator set; returns a witness `(u, v, i)`.
pub fn exchange_oracle(gens: &BTreeSet<Exps>) -> Option<(Exps, Exps, usize)> {
    for u in gens {
        for v in gens {
            for i in 0..u.len() {
                if u[i] <= v[i] {
                    continue;
                }
                let ok = (0..u.len()).filter(|&j| u[j] < v[j]).any(|j| {
                    let mut w = u.clone();
                    w[i] -= 1;
                    w[j] += 1;
                    gens.contains(&w)
                });
                if !ok {
                    return Some((u.clone(), v.clone(), i));
                }
            }
        }
    }
    None
}

pub fn ideal(nvars: usize, gens: &[&[u32]]) -> MonomialIdeal {
    MonomialIdeal::minimalize(nvars, gens.iter().map(|g| Monomial::new(g.to_vec()))).unwrap()
}

pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in all_permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Monomial ideals from the worked examples, paired with a short label.
pub fn paper_corpus() -> Vec<(String, MonomialIdeal)> {
    use cwlin::{counterexample_graph, cover_ideal, knt_closed_form, CoverMethod};
    let mut out = Vec::new();
    for t in 1..=3 {
        let i = cover_ideal(&counterexample_graph(), t, CoverMethod::TCovers).unwrap();
        for d in i.min_degree().unwrap()..=i.max_degree().unwrap() {
            out.push((format!("I_4^({t}) degree {d}"), i.component(d).unwrap()));
        }
        out.push((format!("I_4^({t})"), i));
    }
    for n in 3..=4 {
        for t in 1..=3 {
            let k = knt_closed_form(n, t).unwrap();
            for d in k.min_degree().unwrap()..=k.max_degree().unwrap() {
                out.push((format!("K_{n}^({t}) degree {d}"), k.component(d).unwrap()));
            }
            out.push((format!("K_{n}^({t})"), k));
        }
    }
    out
}
