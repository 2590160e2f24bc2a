use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector};

use super::operator::{check_dense, digits, undigits};
use super::{tensor_dim, Complex64, DenseOperator, GaussianRng};
use crate::error::{invalid, Error, Result};
use crate::regions::FidelityVector;

/// Largest `d^N` for a sampled isometry.
pub const MAX_ISOMETRY_DIM: usize = 1 << 16;

/// A channel `X -> W X W^†` given by an isometry `W: C^d -> (C^d)^{⊗N}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChannelSample {
    pub isometry: DMatrix<Complex64>,
    pub d: usize,
    pub clones: usize,
    pub seed: Option<u64>,
}

impl ChannelSample {
    pub fn from_isometry(isometry: DMatrix<Complex64>, d: usize, clones: usize) -> Result<Self> {
        let rows = tensor_dim(clones, d).ok_or_else(|| invalid!("d^N overflows"))?;
        if isometry.shape() != (rows, d) {
            return Err(invalid!("isometry shape {:?}, expected ({}, {})", isometry.shape(), rows, d));
        }
        let gram = isometry.adjoint() * &isometry;
        let err = (gram - DMatrix::<Complex64>::identity(d, d)).iter().fold(0.0f64, |m, z| m.max(libm::hypot(z.re, z.im)));
        if err > 1e-10 {
            return Err(invalid!("isometry columns are not orthonormal (error {:e})", err));
        }
        Ok(ChannelSample { isometry, d, clones, seed: None })
    }
}

/// Haar-random isometry: Gram-Schmidt of a complex Gaussian `d^N x d` matrix.
pub fn haar_isometry(d: usize, clones: usize, seed: u64) -> Result<ChannelSample> {
    if d == 0 || clones == 0 {
        return Err(invalid!("need d >= 1 and N >= 1"));
    }
    let rows = match tensor_dim(clones, d) {
        Some(r) if r <= MAX_ISOMETRY_DIM => r,
        _ => return Err(Error::ResourceLimit(alloc::format!("d^N exceeds {}", MAX_ISOMETRY_DIM))),
    };
    let mut rng = GaussianRng::new(seed);
    let scale = core::f64::consts::FRAC_1_SQRT_2;
    let mut w = DMatrix::<Complex64>::from_fn(rows, d, |_, _| Complex64::new(0.0, 0.0));
    for c in 0..d {
        for r in 0..rows {
            let re = rng.normal();
            let im = rng.normal();
            w[(r, c)] = Complex64::new(re * scale, im * scale);
        }
    }
    // Modified Gram-Schmidt, two passes.
    for c in 0..d {
        for _ in 0..2 {
            for prev in 0..c {
                let proj = w.column(prev).dotc(&w.column(c));
                let shifted = w.column(c) - w.column(prev) * proj;
                w.set_column(c, &shifted);
            }
        }
        let norm = w.column(c).norm();
        let unit = w.column(c) / Complex64::new(norm, 0.0);
        w.set_column(c, &unit);
    }
    Ok(ChannelSample { isometry: w, d, clones, seed: Some(seed) })
}

/// Choi state `(1 ⊗ Λ)(|ψ+><ψ+|)` on `N + 1` legs, leg 1 the reference.
pub fn choi_state(ch: &ChannelSample) -> Result<DenseOperator> {
    let n = ch.clones + 1;
    let dim = check_dense(n, ch.d)?;
    let rows = ch.isometry.nrows();
    let norm = Complex64::new(1.0 / libm::sqrt(ch.d as f64), 0.0);
    let phi = DVector::<Complex64>::from_fn(dim, |idx, _| {
        let (i, r) = (idx / rows, idx % rows);
        ch.isometry[(r, i)] * norm
    });
    DenseOperator::new(n, ch.d, &phi * phi.adjoint())
}

/// Normalisation of the maximally entangled vector in singlet fractions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PsiPlusNorm {
    /// `|ψ+> = d^{-1/2} sum_i |ii>`.
    Unit,
    /// `sum_i |ii>`, giving `d` times the unit-norm value.
    Unnormalized,
}

/// `F_{1k} = <ψ+| tr_{rest}(rho) |ψ+>` for `k = 2..n`.
pub fn singlet_fractions(rho: &DenseOperator) -> Result<FidelityVector> {
    FidelityVector::new(singlet_fractions_with(rho, PsiPlusNorm::Unit)?)
}

pub fn singlet_fractions_with(rho: &DenseOperator, norm: PsiPlusNorm) -> Result<Vec<f64>> {
    let (n, d) = (rho.legs(), rho.local_dim());
    if n < 2 {
        return Err(invalid!("singlet fractions need at least two legs"));
    }
    let rest_legs = n - 2;
    let rest_dim = tensor_dim(rest_legs, d).expect("fits");
    let prefactor = match norm {
        PsiPlusNorm::Unit => 1.0 / d as f64,
        PsiPlusNorm::Unnormalized => 1.0,
    };
    let m = rho.matrix();
    let mut out = Vec::with_capacity(n - 1);
    let mut full = alloc::vec![0; n];
    for k in 2..=n {
        let others: Vec<usize> = (2..=n).filter(|&l| l != k).collect();
        let index = |full: &mut Vec<usize>, a: usize, rest: &[usize]| {
            full[0] = a;
            full[k - 1] = a;
            for (slot, &l) in others.iter().enumerate() {
                full[l - 1] = rest[slot];
            }
            undigits(full, d)
        };
        let mut acc = 0.0;
        for r in 0..rest_dim {
            let rest = digits(r, rest_legs, d);
            for a in 0..d {
                let row = index(&mut full, a, &rest);
                for b in 0..d {
                    let col = index(&mut full, b, &rest);
                    acc += m[(row, col)].re;
                }
            }
        }
        out.push(prefactor * acc);
    }
    Ok(out)
}

/// Fixed reference states used for validation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpecialState {
    /// `(1/d) sum_i (|i><i|)^{⊗n}`: measure and copy.
    ClassicalClone,
    /// `(I/d) ⊗ (I/d)^{⊗(n-1)}`: discard the input.
    Constant,
    /// Choi state of the channel sending the input to clone `j` and `|0>` to
    /// every other clone.
    PerfectToClone(usize),
}

pub fn special_state(kind: SpecialState, n: usize, d: usize) -> Result<DenseOperator> {
    let dim = check_dense(n, d)?;
    if n < 2 {
        return Err(invalid!("special states need n >= 2"));
    }
    let df = d as f64;
    match kind {
        SpecialState::ClassicalClone => {
            let mut m = DMatrix::<Complex64>::zeros(dim, dim);
            for i in 0..d {
                let idx = undigits(&alloc::vec![i; n], d);
                m[(idx, idx)] = Complex64::new(1.0 / df, 0.0);
            }
            DenseOperator::new(n, d, m)
        }
        SpecialState::Constant => Ok(DenseOperator::identity(n, d)?.scale(1.0 / dim as f64)),
        SpecialState::PerfectToClone(j) => {
            if j < 2 || j > n {
                return Err(invalid!("perfect clone index {} outside 2..={}", j, n));
            }
            let clones = n - 1;
            let rows = tensor_dim(clones, d).expect("fits");
            let mut w = DMatrix::<Complex64>::zeros(rows, d);
            for i in 0..d {
                let mut out = alloc::vec![0; clones];
                out[j - 2] = i;
                w[(undigits(&out, d), i)] = Complex64::new(1.0, 0.0);
            }
            choi_state(&ChannelSample::from_isometry(w, d, clones)?)
        }
    }
}

/// Clone fidelity `f = (F d + 1) / (d + 1)` from a singlet fraction `F`.
pub fn clone_fidelity_from_singlet(singlet: f64, d: usize) -> Result<f64> {
    if !(0.0..=1.0).contains(&singlet) || d == 0 {
        return Err(invalid!("singlet fraction {} outside [0, 1] or d = 0", singlet));
    }
    let df = d as f64;
    Ok((singlet * df + 1.0) / (df + 1.0))
}

/// Inverse of [`clone_fidelity_from_singlet`].
pub fn singlet_from_clone_fidelity(fidelity: f64, d: usize) -> Result<f64> {
    let df = d as f64;
    if d == 0 || !(1.0 / (df + 1.0)..=1.0).contains(&fidelity) {
        return Err(invalid!("clone fidelity {} outside [1/(d+1), 1]", fidelity));
    }
    Ok((fidelity * (df + 1.0) - 1.0) / df)
}
