//! Irreducible blocks of the algebra `A'_n(d)` of partially transposed
//! permutation operators.
//!
//! The algebra splits into two ideals. The ideal `M` carries one
//! irreducible block per partition `alpha` of `n - 2` with at most `d` rows;
//! the ideal `N` carries the irreps of `S(n-1)` with at most `d` rows, on
//! which every partially transposed transposition acts as zero.
//!
//! A block is built from the Gram-type matrix `Q(alpha)` on the induced
//! representation `ind_{S(n-2)}^{S(n-1)} phi^alpha`: its eigenvalues are
//! labelled by the partitions `nu` that branch from `alpha`, and the
//! generator `V'(a n)` acts in the reduced basis as
//! `sqrt(L) Z^T P_a Z sqrt(L)`.

mod block;
mod equivalence;
mod fixtures;
mod qmatrix;

pub use block::{build_block, clone_observable, decompose, Decomposition, IrrepBlock, DEFAULT_ZERO_TOL};
pub use equivalence::{blocks_equivalent, sign_conjugation};
pub use fixtures::reference_fixtures;
pub use qmatrix::{admissible_m_irreps, admissible_n_irreps, build_q, build_q_with, induced_matrix, CosetChoice, QMatrix};

/// Largest supported number of systems (`S(n-2)` with `n - 2 <= 8`).
pub const MAX_SYSTEMS: usize = 10;
