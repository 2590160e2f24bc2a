use alloc::vec::Vec;
use core::cell::OnceCell;

use nalgebra::DMatrix;

use super::fidelity::FidelityVector;
use super::sphere::direction_set;
use crate::error::{invalid, Result};
use crate::irreps::{Decomposition, IrrepBlock};
use crate::linalg::max_eigenvalue;

/// Directions tried by [`membership`] before local refinement.
pub const DEFAULT_MEMBERSHIP_DIRECTIONS: usize = 10_000;

/// Position of the point contributed by the ideal `N`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum NPointConvention {
    /// `(1/d, ..., 1/d)`.
    #[default]
    OneOverD,
    /// The origin.
    Zero,
    /// `(1/d^2, ..., 1/d^2)`, the product-state overlap with a unit-norm maximally entangled state.
    OneOverDSquared,
}

impl NPointConvention {
    pub const ALL: [NPointConvention; 3] = [NPointConvention::OneOverD, NPointConvention::Zero, NPointConvention::OneOverDSquared];

    pub fn name(self) -> &'static str {
        match self {
            NPointConvention::OneOverD => "paper_1_over_d",
            NPointConvention::Zero => "zero",
            NPointConvention::OneOverDSquared => "product_1_over_d2",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.name() == name)
    }

    fn coordinate(self, d: usize) -> f64 {
        let df = d as f64;
        match self {
            NPointConvention::OneOverD => 1.0 / df,
            NPointConvention::Zero => 0.0,
            NPointConvention::OneOverDSquared => 1.0 / (df * df),
        }
    }
}

pub fn n_point(n: usize, d: usize) -> Result<FidelityVector> {
    n_point_with(n, d, NPointConvention::OneOverD)
}

pub fn n_point_with(n: usize, d: usize, convention: NPointConvention) -> Result<FidelityVector> {
    if n < 3 {
        return Err(invalid!("n = {} has no clones to compare (need n >= 3)", n));
    }
    if d == 0 {
        return Err(invalid!("local dimension must be positive"));
    }
    FidelityVector::new(alloc::vec![convention.coordinate(d); n - 1])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Membership {
    Inside,
    Boundary,
    Outside,
}

impl Membership {
    pub fn name(self) -> &'static str {
        match self {
            Membership::Inside => "inside",
            Membership::Boundary => "boundary",
            Membership::Outside => "outside",
        }
    }

    pub fn is_contained(self) -> bool {
        self != Membership::Outside
    }
}

/// Outcome of a membership query.
#[derive(Clone, Debug, PartialEq)]
pub struct MembershipReport {
    pub verdict: Membership,
    /// `min_w h(w) - <w, p>` over unit directions: positive inside, negative
    /// outside (then it is minus the distance to the region).
    pub margin: f64,
    /// Direction attaining the margin.
    pub direction: Vec<f64>,
}

/// The fidelity region of a decomposition under a chosen N-point convention.
///
/// Support values on the default direction set are computed once and reused
/// by every membership query.
#[derive(Clone, Debug)]
pub struct Region<'a> {
    dec: &'a Decomposition,
    convention: NPointConvention,
    table: OnceCell<Vec<(Vec<f64>, f64)>>,
}

impl<'a> Region<'a> {
    pub fn new(dec: &'a Decomposition) -> Self {
        Self::with_convention(dec, NPointConvention::default())
    }

    pub fn with_convention(dec: &'a Decomposition, convention: NPointConvention) -> Self {
        Region { dec, convention, table: OnceCell::new() }
    }

    pub fn decomposition(&self) -> &'a Decomposition {
        self.dec
    }

    pub fn convention(&self) -> NPointConvention {
        self.convention
    }

    pub fn dim(&self) -> usize {
        self.dec.clone_count()
    }

    pub fn n_point(&self) -> Result<FidelityVector> {
        n_point_with(self.dec.n, self.dec.d, self.convention)
    }

    fn check_direction(&self, w: &[f64]) -> Result<()> {
        if w.len() != self.dim() {
            return Err(invalid!("direction of length {} for {} clones", w.len(), self.dim()));
        }
        if !w.iter().all(|x| x.is_finite()) || w.iter().all(|x| *x == 0.0) {
            return Err(invalid!("direction must be finite and nonzero"));
        }
        Ok(())
    }

    /// Support of the union of block regions only.
    pub fn block_support(&self, w: &[f64]) -> Result<f64> {
        self.check_direction(w)?;
        Ok(self.block_support_unchecked(w))
    }

    fn block_support_unchecked(&self, w: &[f64]) -> f64 {
        let inv_d = 1.0 / self.dec.d as f64;
        self.dec
            .blocks
            .iter()
            .map(|b| inv_d * max_eigenvalue(&weighted_sum(b, w)))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// `h(w) = max(block support, <w, N-point>)`.
    pub fn support(&self, w: &[f64]) -> Result<f64> {
        self.check_direction(w)?;
        Ok(self.support_unchecked(w))
    }

    fn support_unchecked(&self, w: &[f64]) -> f64 {
        let np = self.convention.coordinate(self.dec.d) * w.iter().sum::<f64>();
        self.block_support_unchecked(w).max(np)
    }

    /// `h(1, ..., 1) / N`.
    pub fn symmetric_max(&self) -> f64 {
        let n = self.dim();
        self.support_unchecked(&alloc::vec![1.0; n]) / n as f64
    }

    /// `h(u) + h(-u)` over the block regions.
    pub fn axis_width(&self, u: &[f64]) -> Result<f64> {
        self.check_direction(u)?;
        let norm = libm::sqrt(u.iter().map(|x| x * x).sum::<f64>());
        if (norm - 1.0).abs() > 1e-9 {
            return Err(invalid!("axis direction must be a unit vector, has norm {}", norm));
        }
        let neg: Vec<f64> = u.iter().map(|x| -x).collect();
        Ok(self.block_support_unchecked(u) + self.block_support_unchecked(&neg))
    }

    /// Dual membership test with the default low-discrepancy direction set.
    pub fn membership(&self, p: &FidelityVector, tol: f64) -> Result<MembershipReport> {
        self.membership_with_directions(p, tol, &[])
    }

    /// As [`Region::membership`], also trying `extra` directions (for example
    /// the facet normals of a sampled hull).
    pub fn membership_with_directions(&self, p: &FidelityVector, tol: f64, extra: &[Vec<f64>]) -> Result<MembershipReport> {
        let dim = self.dim();
        if p.len() != dim {
            return Err(invalid!("point of length {} for {} clones", p.len(), dim));
        }
        if tol.is_nan() || tol < 0.0 {
            return Err(invalid!("tolerance must be non-negative, got {}", tol));
        }
        for w in extra {
            self.check_direction(w)?;
        }
        let gap = |w: &[f64]| self.support_unchecked(w) - p.dot(w);

        let table = self.table.get_or_init(|| {
            direction_set(dim, DEFAULT_MEMBERSHIP_DIRECTIONS)
                .into_iter()
                .map(|w| {
                    let h = self.support_unchecked(&w);
                    (w, h)
                })
                .collect()
        });
        let mut best: Option<(f64, &[f64])> = None;
        for (w, h) in table {
            let g = h - p.dot(w);
            if best.is_none_or(|(b, _)| g < b) {
                best = Some((g, w));
            }
        }
        let (mut margin, best_w) = best.expect("direction set is never empty");
        let mut w = best_w.to_vec();
        for e in extra {
            let e = unit(e);
            let g = gap(&e);
            if g < margin {
                margin = g;
                w = e;
            }
        }

        // Pattern search on the sphere around the best direction.
        let mut step = initial_step(dim);
        while step > 1e-12 && dim > 1 {
            let mut improved = false;
            for t in tangent_basis(&w) {
                for sign in [1.0, -1.0] {
                    let cand = unit(&w.iter().zip(&t).map(|(a, b)| a + sign * step * b).collect::<Vec<_>>());
                    let g = gap(&cand);
                    if g < margin {
                        margin = g;
                        w = cand;
                        improved = true;
                    }
                }
            }
            if !improved {
                step *= 0.5;
            }
        }

        let verdict = if margin > tol {
            Membership::Inside
        } else if margin >= -tol {
            Membership::Boundary
        } else {
            Membership::Outside
        };
        Ok(MembershipReport { verdict, margin, direction: w })
    }
}

fn weighted_sum(block: &IrrepBlock, w: &[f64]) -> DMatrix<f64> {
    let dim = block.dim();
    let mut acc = DMatrix::zeros(dim, dim);
    for (b, &wk) in block.generators.iter().zip(w) {
        if wk != 0.0 {
            acc += b * wk;
        }
    }
    acc
}

fn unit(w: &[f64]) -> Vec<f64> {
    let norm = libm::sqrt(w.iter().map(|x| x * x).sum::<f64>());
    w.iter().map(|x| x / norm).collect()
}

fn initial_step(dim: usize) -> f64 {
    let per_axis = libm::pow(DEFAULT_MEMBERSHIP_DIRECTIONS as f64, 1.0 / (dim.max(2) - 1) as f64);
    4.0 * core::f64::consts::PI / per_axis
}

/// Orthonormal basis of the tangent space at the unit vector `w`.
fn tangent_basis(w: &[f64]) -> Vec<Vec<f64>> {
    let dim = w.len();
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(dim - 1);
    for axis in 0..dim {
        let mut v = alloc::vec![0.0; dim];
        v[axis] = 1.0;
        for b in core::iter::once(w).chain(basis.iter().map(|b| b.as_slice())) {
            let c: f64 = v.iter().zip(b).map(|(x, y)| x * y).sum();
            v.iter_mut().zip(b).for_each(|(x, y)| *x -= c * y);
        }
        let norm = libm::sqrt(v.iter().map(|x| x * x).sum::<f64>());
        if norm > 1e-6 {
            basis.push(v.iter().map(|x| x / norm).collect());
        }
        if basis.len() == dim - 1 {
            break;
        }
    }
    basis
}

pub fn support(dec: &Decomposition, w: &[f64]) -> Result<f64> {
    Region::new(dec).support(w)
}

pub fn symmetric_max(dec: &Decomposition) -> f64 {
    Region::new(dec).symmetric_max()
}

pub fn axis_width(dec: &Decomposition, u: &[f64]) -> Result<f64> {
    Region::new(dec).axis_width(u)
}

pub fn membership(dec: &Decomposition, p: &FidelityVector, tol: f64) -> Result<MembershipReport> {
    Region::new(dec).membership(p, tol)
}
