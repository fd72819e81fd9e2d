//! Reference values, stored as exact rational strings.

use std::path::Path;

use anyhow::{Context, Result};
use serde::Deserialize;

pub const DEFAULT: &str = include_str!("../fixtures/default.json");

/// Sum of the listed cases, as a multiple of `π h'(0) Ω_{n-1}`.
#[derive(Clone, Debug, Deserialize)]
pub struct BoundaryFixture {
    pub id: String,
    pub n: usize,
    pub pairing: String,
    pub cases: Vec<String>,
    pub re: String,
    pub im: String,
}

#[derive(Clone, Debug, Deserialize)]
pub struct InteriorFixture {
    pub id: String,
    pub n: usize,
    pub which: String,
    pub prefactor: String,
    pub pi_pow: u32,
    pub coefficients: std::collections::BTreeMap<String, String>,
}

#[derive(Clone, Debug, Default, Deserialize)]
pub struct Fixtures {
    #[serde(default)]
    pub boundary: Vec<BoundaryFixture>,
    #[serde(default)]
    pub interior: Vec<InteriorFixture>,
    /// Dimensions in which the whole trace-identity suite must hold.
    #[serde(default)]
    pub identities: Vec<usize>,
}

impl Fixtures {
    pub fn embedded() -> Self {
        serde_json::from_str(DEFAULT).expect("embedded fixtures are valid")
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).context("malformed fixture file")
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
        Self::parse(&text)
    }
}
