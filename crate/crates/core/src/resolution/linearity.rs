//! Linear resolutions and the componentwise-linearity decision.

use serde::Serialize;
use serde_json::Value;

use super::betti::{betti_table, BettiTable};
use super::quotients::{find_linear_quotient_order, OrderStrategy};
use super::{Engine, Limits};
use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal};
use crate::scalar::FieldChoice;

/// A coarse Betti position `β_{i,j}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct BettiEntry {
    pub i: usize,
    pub j: u32,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Linearity {
    Linear,
    /// The first nonzero `β_{i,j}` (in `(i, j)` order) with `j ≠ i + d`.
    NotLinear(BettiEntry),
}

impl Linearity {
    pub fn is_linear(&self) -> bool {
        matches!(self, Linearity::Linear)
    }
}

/// Reads linearity off a Betti table of an ideal equigenerated in degree `d`.
pub fn linearity_of_table(table: &BettiTable, d: u32) -> Linearity {
    table
        .coarse()
        .into_iter()
        .find(|((i, j), _)| *j as usize != i + d as usize)
        .map_or(Linearity::Linear, |((i, j), _)| Linearity::NotLinear(BettiEntry { i, j }))
}

pub fn has_linear_resolution(ideal: &MonomialIdeal, field: FieldChoice) -> Result<Linearity> {
    has_linear_resolution_with(ideal, field, Engine::Auto, &Limits::default())
}

/// Whether an equigenerated ideal has a linear resolution. The zero ideal is
/// vacuously linear; mixed generator degrees are a contract violation.
pub fn has_linear_resolution_with(
    ideal: &MonomialIdeal,
    field: FieldChoice,
    engine: Engine,
    limits: &Limits,
) -> Result<Linearity> {
    if ideal.is_zero() {
        return Ok(Linearity::Linear);
    }
    let d = ideal.equigenerated_degree().ok_or_else(|| {
        Error::Contract(format!(
            "linear resolution test needs an equigenerated ideal, found degrees {}..{}",
            ideal.min_degree().unwrap_or(0),
            ideal.max_degree().unwrap_or(0)
        ))
    })?;
    let table = betti_table(ideal, field, engine, limits)?;
    Ok(linearity_of_table(&table, d))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Zero,
    Linear,
    NotLinear,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct DegreeVerdict {
    pub degree: u32,
    pub verdict: Verdict,
    /// Minimal generator count of `I_⟨d⟩`.
    pub generators: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub offending: Option<BettiEntry>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CwlReport {
    pub field: String,
    pub degrees: Vec<DegreeVerdict>,
    pub overall: bool,
    pub vacuous: bool,
    /// A deglex order with linear quotients, when one exists.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Vec<String>>,
}

impl CwlReport {
    pub fn first_failure(&self) -> Option<&DegreeVerdict> {
        self.degrees.iter().find(|d| d.verdict == Verdict::NotLinear)
    }

    pub fn failing_degree(&self) -> Option<u32> {
        self.first_failure().map(|d| d.degree)
    }

    pub fn verdict_at(&self, degree: u32) -> Option<&DegreeVerdict> {
        self.degrees.iter().find(|d| d.degree == degree)
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report is plain data")
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct CwlOptions {
    pub field: FieldChoice,
    pub engine: Engine,
    /// Degrees checked beyond the largest generator degree.
    pub extra_degrees: u32,
    pub limits: Limits,
    /// Also search for a deglex linear-quotients certificate.
    pub certificate: bool,
}

pub fn is_componentwise_linear(ideal: &MonomialIdeal, field: FieldChoice) -> Result<CwlReport> {
    is_componentwise_linear_with(
        ideal,
        &CwlOptions {
            field,
            certificate: true,
            ..CwlOptions::default()
        },
    )
}

/// Tests `I_⟨d⟩` for linearity for every `d` between the smallest and
/// largest generator degree (plus `extra_degrees`). Beyond the largest
/// degree each component is the maximal ideal times the previous one, which
/// preserves linear resolutions.
pub fn is_componentwise_linear_with(ideal: &MonomialIdeal, options: &CwlOptions) -> Result<CwlReport> {
    let field = options.field.tag();
    let (Some(lo), Some(hi)) = (ideal.min_degree(), ideal.max_degree()) else {
        return Ok(CwlReport {
            field,
            degrees: Vec::new(),
            overall: true,
            vacuous: true,
            certificate: None,
        });
    };
    let mut degrees = Vec::new();
    for d in lo..=hi + options.extra_degrees {
        let component = ideal.component_capped(d, options.limits.exponent_cap)?;
        let verdict = if component.is_zero() {
            DegreeVerdict {
                degree: d,
                verdict: Verdict::Zero,
                generators: 0,
                offending: None,
            }
        } else {
            let lin = has_linear_resolution_with(&component, options.field, options.engine, &options.limits)?;
            DegreeVerdict {
                degree: d,
                verdict: if lin.is_linear() { Verdict::Linear } else { Verdict::NotLinear },
                generators: component.len(),
                offending: match lin {
                    Linearity::Linear => None,
                    Linearity::NotLinear(e) => Some(e),
                },
            }
        };
        degrees.push(verdict);
    }
    let overall = degrees.iter().all(|d| d.verdict != Verdict::NotLinear);
    let certificate = if options.certificate {
        find_linear_quotient_order(ideal, OrderStrategy::Deglex, &options.limits)?
            .map(|o| o.as_slice().iter().map(Monomial::to_string).collect())
    } else {
        None
    };
    Ok(CwlReport {
        field,
        degrees,
        overall,
        vacuous: false,
        certificate,
    })
}

/// `deg lcm(f, g)` over unordered pairs of distinct generators, sorted.
/// These are the degrees of the first Taylor syzygies.
pub fn first_syzygy_degrees(ideal: &MonomialIdeal) -> Vec<u32> {
    let gens = ideal.generators();
    let mut out: Vec<u32> = gens
        .iter()
        .enumerate()
        .flat_map(|(i, f)| gens[i + 1..].iter().map(move |g| f.lcm(g).degree()))
        .collect();
    out.sort_unstable();
    out
}
