use alloc::vec::Vec;

use super::fidelity::{FidelityVector, Source};
use super::hull::RegionHull;
use super::lp::maximize;
use crate::error::{invalid, Result};

/// `<coefficients, F> = value`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearConstraint {
    pub coefficients: Vec<f64>,
    pub value: f64,
}

impl LinearConstraint {
    pub fn new(coefficients: Vec<f64>, value: f64) -> Self {
        LinearConstraint { coefficients, value }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConstrainedOptimum {
    pub value: f64,
    pub point: FidelityVector,
    /// Hull vertices in the attaining convex combination with their weights.
    pub combination: Vec<(FidelityVector, f64, Source)>,
}

/// Maximises `<objective, F>` over the hull subject to linear equalities.
pub fn constrained_max(hull: &RegionHull, objective: &[f64], constraints: &[LinearConstraint], tol: f64) -> Result<ConstrainedOptimum> {
    let dim = hull.dim;
    if objective.len() != dim {
        return Err(invalid!("objective of length {} for {} clones", objective.len(), dim));
    }
    if let Some(c) = constraints.iter().find(|c| c.coefficients.len() != dim) {
        return Err(invalid!("constraint of length {} for {} clones", c.coefficients.len(), dim));
    }
    let columns: Vec<Vec<f64>> = hull
        .vertices
        .iter()
        .map(|v| constraints.iter().map(|c| v.dot(&c.coefficients)).chain(core::iter::once(1.0)).collect())
        .collect();
    let cost: Vec<f64> = hull.vertices.iter().map(|v| v.dot(objective)).collect();
    let rhs: Vec<f64> = constraints.iter().map(|c| c.value).chain(core::iter::once(1.0)).collect();
    let sol = maximize(&columns, &cost, &rhs, tol)?;

    let mut point = alloc::vec![0.0; dim];
    let mut combination = Vec::with_capacity(sol.support.len());
    for &(j, weight) in &sol.support {
        let v = &hull.vertices[j];
        point.iter_mut().zip(v.values()).for_each(|(p, x)| *p += weight * x);
        combination.push((v.clone(), weight, hull.sources[j].clone()));
    }
    Ok(ConstrainedOptimum {
        value: sol.value,
        point: FidelityVector::new(point.iter().map(|x| x.clamp(0.0, 1.0)).collect())?,
        combination,
    })
}
