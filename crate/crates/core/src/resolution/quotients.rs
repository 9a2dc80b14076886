//! Linear quotients: orders `f_1, ..., f_r` whose colon ideals
//! `⟨f_1, ..., f_{k-1}⟩ : f_k` are generated by variables.

use std::collections::HashSet;

use serde::Serialize;

use super::Limits;
use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal, OrderedGenerators};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuotientStep {
    /// 1-based position `k` of `f_k`.
    pub index: usize,
    pub generator: Monomial,
    pub colon: MonomialIdeal,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct QuotientFailure {
    pub index: usize,
    pub generator: String,
    /// A minimal generator of the colon ideal of degree other than 1.
    pub offending: String,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuotientCheck {
    /// Steps `k = 2, ...` up to and including the first failing one.
    pub steps: Vec<QuotientStep>,
    pub failure: Option<QuotientFailure>,
}

impl QuotientCheck {
    pub fn is_linear(&self) -> bool {
        self.failure.is_none()
    }
}

fn colon_step(placed: &[Monomial], f: &Monomial, nvars: usize) -> MonomialIdeal {
    MonomialIdeal::minimalize(nvars, placed.iter().map(|g| g.colon(f))).expect("generators share the ring")
}

/// Checks every colon step of `gens`, stopping at the first failure.
pub fn linear_quotients_check(gens: &OrderedGenerators) -> QuotientCheck {
    let list = gens.as_slice();
    let mut steps = Vec::new();
    for k in 1..list.len() {
        let colon = colon_step(&list[..k], &list[k], gens.nvars());
        let bad = colon.generators().iter().find(|g| g.degree() != 1).cloned();
        steps.push(QuotientStep {
            index: k + 1,
            generator: list[k].clone(),
            colon,
        });
        if let Some(bad) = bad {
            return QuotientCheck {
                steps,
                failure: Some(QuotientFailure {
                    index: k + 1,
                    generator: list[k].to_string(),
                    offending: bad.to_string(),
                }),
            };
        }
    }
    QuotientCheck { steps, failure: None }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum OrderStrategy {
    /// Test the deglex order once.
    #[default]
    Deglex,
    /// Search all degree-nondecreasing orders.
    Backtracking,
}

/// Looks for an order with linear quotients; `Ok(None)` when none is found.
pub fn find_linear_quotient_order(
    ideal: &MonomialIdeal,
    strategy: OrderStrategy,
    limits: &Limits,
) -> Result<Option<OrderedGenerators>> {
    if ideal.is_zero() {
        return Err(Error::Contract("the zero ideal has no generators to order".into()));
    }
    match strategy {
        OrderStrategy::Deglex => {
            let order = OrderedGenerators::deglex(ideal);
            Ok(linear_quotients_check(&order).is_linear().then_some(order))
        }
        OrderStrategy::Backtracking => backtrack(ideal, limits),
    }
}

fn backtrack(ideal: &MonomialIdeal, limits: &Limits) -> Result<Option<OrderedGenerators>> {
    let gens = ideal.generators();
    let g = gens.len();
    if g > limits.backtracking_generators {
        return Err(Error::Capacity {
            what: "generator count for backtracking order search",
            limit: limits.backtracking_generators,
            actual: g,
            hint: "",
        });
    }
    struct Search<'a> {
        gens: &'a [Monomial],
        nvars: usize,
        full: u32,
        dead: HashSet<u32>,
        order: Vec<usize>,
        limits: &'a Limits,
    }
    impl Search<'_> {
        // Whether f can follow the generators in `placed`; depends only on the set.
        fn admissible(&self, placed: u32, f: &Monomial) -> bool {
            let before: Vec<Monomial> = (0..self.gens.len())
                .filter(|&i| placed >> i & 1 == 1)
                .map(|i| self.gens[i].clone())
                .collect();
            colon_step(&before, f, self.nvars).generators().iter().all(|m| m.degree() == 1)
        }

        fn run(&mut self, placed: u32) -> Result<bool> {
            if placed == self.full {
                return Ok(true);
            }
            if self.dead.contains(&placed) {
                return Ok(false);
            }
            if let Some(d) = self.limits.deadline {
                if std::time::Instant::now() >= d {
                    return Err(Error::Budget);
                }
            }
            let remaining = (0..self.gens.len()).filter(|&i| placed >> i & 1 == 0);
            let min_degree = remaining.clone().map(|i| self.gens[i].degree()).min().expect("not full");
            // gens are deglex-sorted, so candidates come in deglex order
            let candidates: Vec<usize> = remaining.filter(|&i| self.gens[i].degree() == min_degree).collect();
            for c in candidates {
                if self.admissible(placed, &self.gens[c]) {
                    self.order.push(c);
                    if self.run(placed | 1 << c)? {
                        return Ok(true);
                    }
                    self.order.pop();
                }
            }
            self.dead.insert(placed);
            Ok(false)
        }
    }
    let mut search = Search {
        gens,
        nvars: ideal.nvars(),
        full: if g == 32 { u32::MAX } else { (1u32 << g) - 1 },
        dead: HashSet::new(),
        order: Vec::with_capacity(g),
        limits,
    };
    if !search.run(0)? {
        return Ok(None);
    }
    let order = search.order.iter().map(|&i| gens[i].clone()).collect();
    OrderedGenerators::new(ideal.nvars(), order).map(Some)
}
