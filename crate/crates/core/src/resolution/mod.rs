//! Betti numbers, linearity tests and componentwise-linearity certificates.

pub mod betti;
pub mod homology;
pub mod linearity;
pub mod polymatroid;
pub mod quotients;

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::monomial::DEFAULT_EXPONENT_CAP;

/// Which Betti engine to run.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Taylor,
    Koszul,
    #[default]
    Auto,
}

impl std::str::FromStr for Engine {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "taylor" => Ok(Engine::Taylor),
            "koszul" => Ok(Engine::Koszul),
            "auto" => Ok(Engine::Auto),
            other => Err(crate::Error::Invalid(format!("unknown engine `{other}`"))),
        }
    }
}

/// Size and time limits shared by the expensive routines.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub exponent_cap: u32,
    /// The Taylor engine builds `2^g` chains.
    pub taylor_generators: usize,
    pub backtracking_generators: usize,
    pub deadline: Option<Instant>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            exponent_cap: DEFAULT_EXPONENT_CAP,
            taylor_generators: 14,
            backtracking_generators: 20,
            deadline: None,
        }
    }
}
