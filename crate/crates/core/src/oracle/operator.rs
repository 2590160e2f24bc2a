use alloc::vec::Vec;

use nalgebra::DMatrix;

use super::{tensor_dim, Complex64};
use crate::error::{invalid, Error, Result};
use crate::symgroup::Permutation;

/// Largest `d^n` materialised as a dense matrix.
pub const MAX_DENSE_DIM: usize = 1 << 12;

/// A complex square matrix on `(C^d)^{⊗n}`.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseOperator {
    n: usize,
    d: usize,
    matrix: DMatrix<Complex64>,
}

pub(crate) fn check_dense(n: usize, d: usize) -> Result<usize> {
    if d == 0 || n == 0 {
        return Err(invalid!("need n >= 1 legs of dimension d >= 1"));
    }
    match tensor_dim(n, d) {
        Some(dim) if dim <= MAX_DENSE_DIM => Ok(dim),
        _ => Err(Error::ResourceLimit(alloc::format!(
            "d^n = {}^{} exceeds the dense operator cap of {}",
            d,
            n,
            MAX_DENSE_DIM
        ))),
    }
}

impl DenseOperator {
    pub fn new(n: usize, d: usize, matrix: DMatrix<Complex64>) -> Result<Self> {
        let dim = tensor_dim(n, d).ok_or_else(|| invalid!("d^n overflows"))?;
        if matrix.nrows() != dim || matrix.ncols() != dim {
            return Err(invalid!("operator of shape {:?} does not act on {} legs of dimension {}", matrix.shape(), n, d));
        }
        Ok(DenseOperator { n, d, matrix })
    }

    pub fn from_real(n: usize, d: usize, matrix: &DMatrix<f64>) -> Result<Self> {
        Self::new(n, d, matrix.map(|x| Complex64::new(x, 0.0)))
    }

    pub fn identity(n: usize, d: usize) -> Result<Self> {
        let dim = check_dense(n, d)?;
        Ok(DenseOperator { n, d, matrix: DMatrix::identity(dim, dim) })
    }

    pub fn legs(&self) -> usize {
        self.n
    }

    pub fn local_dim(&self) -> usize {
        self.d
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<Complex64> {
        self.matrix
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix.trace()
    }

    /// Real part of the matrix; the caller asserts the imaginary part is negligible.
    pub fn real_part(&self) -> DMatrix<f64> {
        self.matrix.map(|z| z.re)
    }

    pub fn max_abs_imag(&self) -> f64 {
        self.matrix.iter().fold(0.0, |m, z| m.max(z.im.abs()))
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        (&self.matrix - self.matrix.adjoint()).iter().all(|z| libm::hypot(z.re, z.im) <= tol)
    }

    pub fn mul(&self, other: &DenseOperator) -> Result<DenseOperator> {
        if self.n != other.n || self.d != other.d {
            return Err(invalid!("operators act on different spaces"));
        }
        Ok(DenseOperator { n: self.n, d: self.d, matrix: &self.matrix * &other.matrix })
    }

    pub fn scale(&self, s: f64) -> DenseOperator {
        DenseOperator { n: self.n, d: self.d, matrix: &self.matrix * Complex64::new(s, 0.0) }
    }

    /// Digits `(i_1, ..., i_n)` of a basis index.
    pub fn digits(&self, index: usize) -> Vec<usize> {
        digits(index, self.n, self.d)
    }

    /// Partial transpose on leg `leg` (1-based).
    pub fn partial_transpose(&self, leg: usize) -> Result<DenseOperator> {
        if leg == 0 || leg > self.n {
            return Err(invalid!("leg {} outside 1..={}", leg, self.n));
        }
        let stride = tensor_dim(self.n - leg, self.d).expect("fits");
        let dim = self.dim();
        let digit = |i: usize| (i / stride) % self.d;
        let out = DMatrix::from_fn(dim, dim, |r, c| {
            let (dr, dc) = (digit(r), digit(c));
            let r2 = r - dr * stride + dc * stride;
            let c2 = c - dc * stride + dr * stride;
            self.matrix[(r2, c2)]
        });
        Ok(DenseOperator { n: self.n, d: self.d, matrix: out })
    }

    /// Partial trace keeping the listed legs (1-based, in the given order).
    pub fn partial_trace_keep(&self, keep: &[usize]) -> Result<DenseOperator> {
        if keep.is_empty() || keep.iter().any(|&l| l == 0 || l > self.n) {
            return Err(invalid!("legs to keep must lie in 1..={}", self.n));
        }
        let mut seen = alloc::vec![false; self.n];
        for &l in keep {
            if core::mem::replace(&mut seen[l - 1], true) {
                return Err(invalid!("leg {} listed twice", l));
            }
        }
        let traced: Vec<usize> = (1..=self.n).filter(|l| !keep.contains(l)).collect();
        let kept_dim = tensor_dim(keep.len(), self.d).expect("fits");
        let traced_dim = tensor_dim(traced.len(), self.d).expect("fits");
        let mut out = DMatrix::<Complex64>::zeros(kept_dim, kept_dim);
        let compose = |kept_idx: usize, traced_idx: usize| -> usize {
            let kd = digits(kept_idx, keep.len(), self.d);
            let td = digits(traced_idx, traced.len(), self.d);
            let mut full = alloc::vec![0; self.n];
            for (slot, &l) in keep.iter().enumerate() {
                full[l - 1] = kd[slot];
            }
            for (slot, &l) in traced.iter().enumerate() {
                full[l - 1] = td[slot];
            }
            undigits(&full, self.d)
        };
        for r in 0..kept_dim {
            for c in 0..kept_dim {
                let mut acc = Complex64::new(0.0, 0.0);
                for t in 0..traced_dim {
                    acc += self.matrix[(compose(r, t), compose(c, t))];
                }
                out[(r, c)] = acc;
            }
        }
        Ok(DenseOperator { n: keep.len(), d: self.d, matrix: out })
    }
}

pub(crate) fn digits(mut index: usize, n: usize, d: usize) -> Vec<usize> {
    let mut out = alloc::vec![0; n];
    for slot in (0..n).rev() {
        out[slot] = index % d;
        index /= d;
    }
    out
}

pub(crate) fn undigits(digits: &[usize], d: usize) -> usize {
    digits.iter().fold(0, |acc, &x| acc * d + x)
}

/// `V(sigma)|i_1 ... i_n> = |i_{sigma^{-1}(1)} ... i_{sigma^{-1}(n)}>`.
pub fn perm_operator(sigma: &Permutation, n: usize, d: usize) -> Result<DenseOperator> {
    if sigma.degree() != n {
        return Err(invalid!("permutation of degree {} on {} legs", sigma.degree(), n));
    }
    let dim = check_dense(n, d)?;
    let mut m = DMatrix::<Complex64>::zeros(dim, dim);
    let mut out = alloc::vec![0; n];
    for col in 0..dim {
        let x = digits(col, n, d);
        for (p, &xp) in x.iter().enumerate() {
            out[sigma.apply(p + 1) - 1] = xp;
        }
        m[(undigits(&out, d), col)] = Complex64::new(1.0, 0.0);
    }
    Ok(DenseOperator { n, d, matrix: m })
}

/// `V^{t_1}((1 k))`: the transposition of legs 1 and `k`, partially
/// transposed on leg 1.
pub fn pt_transposition(k: usize, n: usize, d: usize) -> Result<DenseOperator> {
    if k < 2 || k > n {
        return Err(invalid!("clone leg {} outside 2..={}", k, n));
    }
    perm_operator(&Permutation::transposition(n, 1, k)?, n, d)?.partial_transpose(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::symmetric_eigenvalues;
    use crate::oracle::GaussianRng;

    fn close(a: &DenseOperator, b: &DenseOperator, tol: f64) -> bool {
        (a.matrix() - b.matrix()).iter().all(|z| libm::hypot(z.re, z.im) <= tol)
    }

    #[test]
    fn basic_permutations() {
        let id = perm_operator(&Permutation::identity(2), 2, 2).unwrap();
        assert!(close(&id, &DenseOperator::identity(2, 2).unwrap(), 0.0));
        for d in 2..=4 {
            let swap = perm_operator(&Permutation::transposition(2, 1, 2).unwrap(), 2, d).unwrap();
            assert_eq!(swap.trace().re, d as f64);
        }
        let cycle = perm_operator(&Permutation::from_images(&[2, 3, 1]).unwrap(), 3, 2).unwrap();
        let cube = cycle.mul(&cycle).unwrap().mul(&cycle).unwrap();
        assert!(close(&cube, &DenseOperator::identity(3, 2).unwrap(), 0.0));
    }

    #[test]
    fn leg_convention() {
        // V((1 2)) on |0 1> gives |1 0>: index 1 -> index d.
        let d = 3;
        let swap = perm_operator(&Permutation::transposition(2, 1, 2).unwrap(), 2, d).unwrap();
        assert_eq!(swap.matrix()[(d, 1)].re, 1.0);
        // A 3-cycle moves leg 1's content to leg sigma(1).
        let sigma = Permutation::from_images(&[2, 3, 1]).unwrap();
        let v = perm_operator(&sigma, 3, 2).unwrap();
        // |1 0 0> = index 4 -> |0 1 0> = index 2
        assert_eq!(v.matrix()[(2, 4)].re, 1.0);
    }

    #[test]
    fn homomorphism() {
        let mut rng = GaussianRng::new(11);
        for (n, d) in [(2usize, 3usize), (3, 2), (3, 3), (4, 2), (4, 3)] {
            for _ in 0..100 / 5 {
                let s = rng.permutation(n);
                let t = rng.permutation(n);
                let lhs = perm_operator(&s, n, d).unwrap().mul(&perm_operator(&t, n, d).unwrap()).unwrap();
                let rhs = perm_operator(&s.compose(&t), n, d).unwrap();
                assert!(close(&lhs, &rhs, 1e-12));
            }
        }
    }

    #[test]
    fn pt_transposition_properties() {
        for n in 2..=5 {
            for d in 2..=4 {
                if tensor_dim(n, d).unwrap() > 1024 {
                    continue;
                }
                let df = d as f64;
                for k in 2..=n {
                    let x = pt_transposition(k, n, d).unwrap();
                    assert!(x.is_hermitian(1e-12));
                    assert!(close(&x.mul(&x).unwrap(), &x.scale(df), 1e-12));
                    assert!((x.trace().re - df.powi(n as i32 - 1)).abs() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn pt_transposition_spectrum() {
        for (n, d) in [(3usize, 2usize), (3, 3), (4, 2)] {
            let x = pt_transposition(n, n, d).unwrap().real_part();
            let ev = symmetric_eigenvalues(&x);
            let big = d.pow(n as u32 - 2);
            for (i, v) in ev.iter().enumerate() {
                let expected = if i < big { d as f64 } else { 0.0 };
                assert!((v - expected).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn pt_transposition_is_scaled_max_entangled_projector() {
        let (n, d) = (3, 3);
        for k in 2..=n {
            let x = pt_transposition(k, n, d).unwrap();
            // <i_1 .. i_n| X |j_1 .. j_n> = [i_1 = i_k][j_1 = j_k] prod_{l != 1,k} [i_l = j_l]
            for r in 0..x.dim() {
                for c in 0..x.dim() {
                    let (a, b) = (x.digits(r), x.digits(c));
                    let rest_equal = (1..n).filter(|&l| l != k - 1).all(|l| a[l] == b[l]);
                    let expected = (a[0] == a[k - 1] && b[0] == b[k - 1] && rest_equal) as u8 as f64;
                    assert_eq!(x.matrix()[(r, c)].re, expected);
                }
            }
        }
    }

    #[test]
    fn distinct_pair_traces() {
        for (n, d) in [(3usize, 2usize), (3, 3), (4, 2), (4, 3)] {
            for k in 2..=n {
                for l in 2..=n {
                    if k != l {
                        let t = pt_transposition(k, n, d).unwrap().mul(&pt_transposition(l, n, d).unwrap()).unwrap().trace().re;
                        assert!((t - (d as f64).powi(n as i32 - 2)).abs() < 1e-9);
                    }
                }
            }
        }
    }

    #[test]
    fn partial_trace_of_product() {
        let rho = DenseOperator::identity(3, 2).unwrap().scale(1.0 / 8.0);
        let r1 = rho.partial_trace_keep(&[1]).unwrap();
        assert!(close(&r1, &DenseOperator::identity(1, 2).unwrap().scale(0.5), 1e-15));
        assert!(rho.partial_trace_keep(&[1, 1]).is_err());
        assert!(rho.partial_trace_keep(&[4]).is_err());
    }

    #[test]
    fn dense_cap() {
        assert!(matches!(perm_operator(&Permutation::identity(13), 13, 2), Err(Error::ResourceLimit(_))));
    }
}
