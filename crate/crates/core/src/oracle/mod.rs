//! Brute-force ground truth on the full tensor space `(C^d)^{⊗n}`.
//!
//! Basis index of `|i_1 ... i_n>` is `sum_k i_k d^{n-k}`: leg 1 (the
//! reference system) is the most significant digit.

mod channel;
mod operator;
mod rng;
mod spectrum;

pub use channel::{
    choi_state, clone_fidelity_from_singlet, haar_isometry, singlet_fractions, singlet_fractions_with, singlet_from_clone_fidelity,
    special_state, ChannelSample, PsiPlusNorm, SpecialState, MAX_ISOMETRY_DIM,
};
pub use operator::{perm_operator, pt_transposition, DenseOperator, MAX_DENSE_DIM};
pub use rng::GaussianRng;
pub use spectrum::{full_vs_block_spectrum, BlockSpectrum, SpectrumReport};

pub type Complex64 = nalgebra::Complex<f64>;

/// `d^n`, or `None` on overflow.
pub(crate) fn tensor_dim(n: usize, d: usize) -> Option<usize> {
    let mut acc: usize = 1;
    for _ in 0..n {
        acc = acc.checked_mul(d)?;
    }
    Some(acc)
}
