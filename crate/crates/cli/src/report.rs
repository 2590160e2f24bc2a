//! Serialisable report payloads. Every JSON file wraps one of these in an
//! [`Envelope`] carrying the schema version and the resolved configuration.

use serde::{Deserialize, Serialize};

use crate::config::{Convention, RunConfig};

/// Semantic version of every JSON and CSV layout emitted by the tool.
pub const SCHEMA_VERSION: &str = "1.0.0";

pub fn report_schema_version() -> &'static str {
    SCHEMA_VERSION
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Envelope<T> {
    pub schema: String,
    pub config: RunConfig,
    #[serde(flatten)]
    pub payload: T,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub n: usize,
    pub d: usize,
    pub blocks: Vec<BlockReport>,
    pub n_irreps: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlockReport {
    pub alpha: Vec<usize>,
    pub dim: usize,
    pub dim_phi: usize,
    pub q: Vec<Vec<f64>>,
    /// Kept eigenvalues of `q`, one per basis vector.
    pub eigenvalues: Vec<f64>,
    /// Branching label of each basis vector.
    pub labels: Vec<Vec<usize>>,
    pub dropped: Option<Vec<usize>>,
    pub z: Vec<Vec<f64>>,
    /// `generators[a - 1]` represents the partially transposed `(a n)`.
    pub generators: Vec<Vec<Vec<f64>>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegionReport {
    pub n: usize,
    pub d: usize,
    pub blocks: Vec<RegionBlock>,
    pub n_point: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegionBlock {
    pub alpha: Vec<usize>,
    pub points: Vec<Vec<f64>>,
    pub states: Vec<Vec<f64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HullReport {
    pub n: usize,
    pub d: usize,
    pub n_point: Vec<f64>,
    pub hull: HullData,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HullData {
    pub dim: usize,
    pub vertices: Vec<Vec<f64>>,
    /// Block label such as `(2,1)`, or `N` for the N-point.
    pub sources: Vec<String>,
    pub facets: Vec<FacetData>,
    pub volume: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FacetData {
    pub normal: Vec<f64>,
    pub offset: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub n: usize,
    pub d: usize,
    pub passed: bool,
    pub checks: Vec<CheckItem>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckItem {
    pub name: String,
    pub passed: bool,
    pub max_error: f64,
    pub tolerance: f64,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChannelsReport {
    pub n: usize,
    pub d: usize,
    pub n_point_convention: Convention,
    pub channels: Vec<ChannelRow>,
    pub inside: usize,
    pub boundary: usize,
    pub outside: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChannelRow {
    pub seed: u64,
    pub fidelities: Vec<f64>,
    pub verdict: String,
    pub margin: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymmetricReport {
    pub n: usize,
    pub d: usize,
    /// Largest `t` with `(t, ..., t)` in the region (singlet fraction).
    pub symmetric_max: f64,
    /// The same optimum as a clone fidelity.
    pub clone_fidelity: f64,
    /// Werner's optimal clone fidelity `(2N + d - 1) / (N (d + 1))`.
    pub werner_fidelity: f64,
    pub werner_singlet: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvertReport {
    pub d: usize,
    pub singlet: f64,
    pub clone_fidelity: f64,
}
