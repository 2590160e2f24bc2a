use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use nalgebra::DVector;

use super::sphere::{sphere_states, SphereScheme};
use crate::error::{invalid, Result};
use crate::irreps::IrrepBlock;
use crate::symgroup::Partition;

const RANGE_SLACK: f64 = 1e-12;

/// `(F_12, ..., F_1n)`; coordinate `k - 2` holds the singlet fraction of clone `k`.
#[derive(Clone, Debug, PartialEq)]
pub struct FidelityVector(Vec<f64>);

impl FidelityVector {
    /// Checks every coordinate lies in `[0, 1]` up to `1e-12`.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(invalid!("a fidelity vector needs at least one clone"));
        }
        if let Some(bad) = values.iter().find(|v| !(-RANGE_SLACK..=1.0 + RANGE_SLACK).contains(*v)) {
            return Err(invalid!("fidelity {} outside [0, 1]", bad));
        }
        Ok(FidelityVector(values))
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn into_values(self) -> Vec<f64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn dot(&self, w: &[f64]) -> f64 {
        self.0.iter().zip(w).map(|(a, b)| a * b).sum()
    }
}

/// Where a region point comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    Block(Partition),
    NIdeal,
}

impl Source {
    pub fn label(&self) -> String {
        alloc::format!("{}", self)
    }
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Source::Block(alpha) => write!(f, "{}", alpha),
            Source::NIdeal => write!(f, "N"),
        }
    }
}

/// `F_1k = (1/d) psi^T B_{k-1} psi` for a real unit vector `psi`.
pub fn fidelity_vector(block: &IrrepBlock, psi: &[f64]) -> Result<FidelityVector> {
    if psi.len() != block.dim() {
        return Err(invalid!("state of length {} for a block of dimension {}", psi.len(), block.dim()));
    }
    let norm2: f64 = psi.iter().map(|x| x * x).sum();
    if (norm2 - 1.0).abs() > 1e-10 {
        return Err(invalid!("state has squared norm {}, expected 1", norm2));
    }
    let v = DVector::from_column_slice(psi);
    let inv_d = 1.0 / block.d as f64;
    let values = block.generators.iter().map(|b| inv_d * v.dot(&(b * &v))).collect();
    FidelityVector::new(values)
}

/// Points of one block region together with the states that produced them.
#[derive(Clone, Debug, PartialEq)]
pub struct RegionSample {
    pub source: Source,
    pub points: Vec<FidelityVector>,
    pub states: Option<Vec<Vec<f64>>>,
}

/// Deterministic sample of a block region over real unit states.
pub fn sample_block_region(block: &IrrepBlock, count: usize, scheme: SphereScheme) -> Result<RegionSample> {
    if count == 0 {
        return Err(invalid!("sample count must be at least 1"));
    }
    let states = sphere_states(block.dim(), count, scheme);
    let points = states.iter().map(|s| fidelity_vector(block, s)).collect::<Result<Vec<_>>>()?;
    Ok(RegionSample {
        source: Source::Block(block.alpha.clone()),
        points,
        states: Some(states),
    })
}
