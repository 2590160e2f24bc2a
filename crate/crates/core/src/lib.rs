//! Irreducible representations of the algebra of partially transposed
//! permutation operators, and the admissible fidelity regions of
//! `1 -> N` universal quantum cloning machines built from them.
//!
//! The crate is `no_std` (it needs `alloc`). It is split into:
//!
//! - [`symgroup`]: partitions, permutations and Young's orthogonal form.
//! - [`irreps`]: the `Q(alpha)` matrices and the irreducible blocks of the
//!   ideal `M`, together with the ideal `N` bookkeeping.
//! - [`oracle`]: brute-force operators on `(C^d)^{⊗n}`, Choi states of
//!   sampled channels and singlet fractions, used to certify the blocks.
//! - [`regions`]: fidelity maps, sphere sampling, exact support
//!   functions, convex hulls, membership and constrained maximisation.
//!
//! Leg 1 is always the reference system and legs `2..=n` are the clones.
//! The fidelity observable of clone `k` is the block image of the
//! transposition `(k-1, n)`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

mod error;
pub mod irreps;
pub mod linalg;
pub mod oracle;
pub mod regions;
pub mod symgroup;

pub use error::{Error, Result};
pub use irreps::{Decomposition, IrrepBlock, QMatrix};
pub use regions::{FidelityVector, NPointConvention, Region, RegionHull};

pub use symgroup::{OrthogonalRep, Partition, Permutation};
