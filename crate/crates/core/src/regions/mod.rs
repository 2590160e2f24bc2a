//! Geometry of the admissible fidelity region.
//!
//! The region is the convex hull of the per-block regions
//! `{ (1/d) (<psi|B_1|psi>, ..., <psi|B_N|psi>) : |psi| = 1, psi real }` and
//! of a single point contributed by the ideal `N`. Its support function is
//! exact: in direction `w` a block contributes `lambda_max(sum_k w_k B_k) / d`.

mod constrained;
mod experiment;
mod fidelity;
mod hull;
mod lp;
mod sphere;
mod support;

pub use constrained::{constrained_max, ConstrainedOptimum, LinearConstraint};
pub use experiment::{constant_channel_report, ConventionVerdict};
pub use fidelity::{fidelity_vector, sample_block_region, FidelityVector, RegionSample, Source};
pub use hull::{build_hull, build_hull_with, hull_of_points, Facet, RegionHull};
pub use lp::{maximize, LpSolution};
pub use sphere::{direction_set, sphere_states, SphereScheme};
pub use support::{
    axis_width, membership, n_point, n_point_with, support, symmetric_max, Membership, MembershipReport, NPointConvention, Region,
    DEFAULT_MEMBERSHIP_DIRECTIONS,
};
