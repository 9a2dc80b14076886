//! The polymatroidal exchange condition on equigenerated monomial ideals.

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal};

/// Generators `u`, `v` and a variable `i` (0-based) with `deg_i u > deg_i v`
/// for which no admissible exchange `x_j u / x_i` is a generator.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExchangeWitness {
    pub u: Monomial,
    pub v: Monomial,
    pub i: usize,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Exchange {
    Holds,
    Violated(ExchangeWitness),
}

impl Exchange {
    pub fn holds(&self) -> bool {
        matches!(self, Exchange::Holds)
    }
}

#[derive(Serialize)]
struct WitnessJson {
    u: String,
    v: String,
    i: String,
}

impl ExchangeWitness {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(WitnessJson {
            u: self.u.to_string(),
            v: self.v.to_string(),
            i: format!("x{}", self.i + 1),
        })
        .expect("plain data")
    }
}

/// For all generators `u ≠ v` and every `i` with `deg_i u > deg_i v` there
/// must be a `j` with `deg_j u < deg_j v` and `x_j · u / x_i` a generator.
pub fn polymatroidal_check(ideal: &MonomialIdeal) -> Result<Exchange> {
    if !ideal.is_zero() && ideal.equigenerated_degree().is_none() {
        return Err(Error::Contract(
            "the exchange condition applies to equigenerated ideals only".into(),
        ));
    }
    let gens = ideal.generators();
    let set: HashSet<&Monomial> = gens.iter().collect();
    let n = ideal.nvars();
    for u in gens {
        for v in gens {
            if u == v {
                continue;
            }
            let (ue, ve) = (u.exponents(), v.exponents());
            for i in (0..n).filter(|&i| ue[i] > ve[i]) {
                let exchanged = (0..n).filter(|&j| ue[j] < ve[j]).any(|j| {
                    let mut w = ue.to_vec();
                    w[i] -= 1;
                    w[j] += 1;
                    set.contains(&Monomial::new(w))
                });
                if !exchanged {
                    return Ok(Exchange::Violated(ExchangeWitness {
                        u: u.clone(),
                        v: v.clone(),
                        i,
                    }));
                }
            }
        }
    }
    Ok(Exchange::Holds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::knt_closed_form;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn single_generator() {
        let k = knt_closed_form(3, 2).unwrap().component(3).unwrap();
        assert_eq!(k.generators(), &[m(&[1, 1, 1])]);
        assert!(polymatroidal_check(&k).unwrap().holds());
    }

    #[test]
    fn squares_violate_exchange() {
        let i = MonomialIdeal::minimalize(2, [m(&[2, 0]), m(&[0, 2])]).unwrap();
        assert_eq!(
            polymatroidal_check(&i).unwrap(),
            Exchange::Violated(ExchangeWitness {
                u: m(&[0, 2]),
                v: m(&[2, 0]),
                i: 1
            })
        );
    }

    #[test]
    fn powers_of_the_maximal_ideal() {
        let i = MonomialIdeal::minimalize(3, [m(&[1, 0, 0]), m(&[0, 1, 0]), m(&[0, 0, 1])])
            .unwrap()
            .power(3)
            .unwrap();
        assert!(polymatroidal_check(&i).unwrap().holds());
    }

    #[test]
    fn mixed_degrees_rejected() {
        let i = MonomialIdeal::minimalize(2, [m(&[1, 0]), m(&[0, 2])]).unwrap();
        assert!(matches!(polymatroidal_check(&i), Err(Error::Contract(_))));
    }
}
