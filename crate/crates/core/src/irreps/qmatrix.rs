use alloc::vec::Vec;

use nalgebra::DMatrix;

use super::MAX_SYSTEMS;
use crate::error::{invalid, Error, Result};
use crate::symgroup::{partitions_of, rep_matrix, young_orthogonal_rep, OrthogonalRep, Partition, Permutation};

/// Choice of left coset representatives `g_a` of `S(n-2)` in `S(n-1)`, with
/// `g_a(n-1) = a`.
///
/// Both choices give the same generator matrices; they differ only by an
/// orthogonal change of basis inside the `a = n-1` block of `Q`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CosetChoice {
    /// `g_a = (a, n-1)` for `a < n-1` and `g_{n-1} = (n-3, n-2)` when
    /// `n >= 4`, so all representatives share the same parity. With this
    /// choice the off-diagonal blocks are `phi((a b))` and `phi((n-3, n-2))`.
    #[default]
    EqualParity,
    /// `g_a = (a, n-1)` and `g_{n-1} = id`, giving
    /// `Q^{ab} = d^{delta_ab} phi[(a n-1)(a b)(b n-1)]` verbatim.
    Literal,
}

fn coset_reps(n: usize, choice: CosetChoice) -> Vec<Permutation> {
    let m = n - 1;
    (1..=m)
        .map(|a| {
            if a < m {
                Permutation::transposition(m, a, m).expect("in range")
            } else if choice == CosetChoice::EqualParity && n >= 4 {
                Permutation::transposition(m, n - 3, n - 2).expect("in range")
            } else {
                Permutation::identity(m)
            }
        })
        .collect()
}

/// The block matrix `Q(alpha)` of size `(n-1) dim(phi^alpha)`.
///
/// Row `(a - 1) * dim + (i - 1)` carries the coset index `a` and the
/// representation index `i`.
#[derive(Clone, Debug, PartialEq)]
pub struct QMatrix {
    pub alpha: Partition,
    pub n: usize,
    pub d: usize,
    pub dim_phi: usize,
    pub choice: CosetChoice,
    pub entries: DMatrix<f64>,
}

impl QMatrix {
    pub fn index(&self, a: usize, i: usize) -> usize {
        (a - 1) * self.dim_phi + (i - 1)
    }

    /// Diagonal block `Q^{ab}`.
    pub fn block(&self, a: usize, b: usize) -> DMatrix<f64> {
        let w = self.dim_phi;
        self.entries.view(((a - 1) * w, (b - 1) * w), (w, w)).into_owned()
    }
}

fn check_systems(n: usize, d: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::Unsupported(alloc::format!("n = {} leaves no clones; need n >= 3", n)));
    }
    if n > MAX_SYSTEMS {
        return Err(Error::Unsupported(alloc::format!("n = {} exceeds the supported maximum {}", n, MAX_SYSTEMS)));
    }
    if d == 0 {
        return Err(invalid!("local dimension must be positive"));
    }
    Ok(())
}

/// Partitions of `n - 2` with at most `d` rows: the labels of the ideal `M`.
pub fn admissible_m_irreps(n: usize, d: usize) -> Result<Vec<Partition>> {
    check_systems(n, d)?;
    Ok(partitions_of(n - 2)?.into_iter().filter(|a| a.height() <= d).collect())
}

/// Partitions of `n - 1` with at most `d` rows: the labels of the ideal `N`.
pub fn admissible_n_irreps(n: usize, d: usize) -> Result<Vec<Partition>> {
    check_systems(n, d)?;
    Ok(partitions_of(n - 1)?.into_iter().filter(|a| a.height() <= d).collect())
}

pub(crate) fn check_alpha(alpha: &Partition, n: usize, d: usize) -> Result<()> {
    check_systems(n, d)?;
    if alpha.size() != n - 2 {
        return Err(invalid!("alpha = {} is not a partition of n - 2 = {}", alpha, n - 2));
    }
    if alpha.height() > d {
        return Err(invalid!("alpha = {} has more than d = {} rows", alpha, d));
    }
    Ok(())
}

/// Matrix of the induced representation `ind_{S(n-2)}^{S(n-1)}(phi)` at
/// `sigma in S(n-1)`: block `(a, b)` is `phi(g_a^{-1} sigma g_b)` when that
/// fixes `n - 1`, zero otherwise.
pub fn induced_matrix(phi: &OrthogonalRep, n: usize, choice: CosetChoice, sigma: &Permutation) -> Result<DMatrix<f64>> {
    let m = n - 1;
    if sigma.degree() != m || phi.degree() != n - 2 {
        return Err(invalid!("induced_matrix: degrees do not match n = {}", n));
    }
    let reps = coset_reps(n, choice);
    let w = phi.dim();
    let mut out = DMatrix::<f64>::zeros(m * w, m * w);
    for a in 0..m {
        let left = reps[a].inverse().compose(sigma);
        for (b, rep) in reps.iter().enumerate() {
            if let Some(h) = left.compose(rep).restrict(n - 2) {
                out.view_mut((a * w, b * w), (w, w)).copy_from(&rep_matrix(phi, &h)?);
            }
        }
    }
    Ok(out)
}

pub fn build_q(alpha: &Partition, n: usize, d: usize) -> Result<QMatrix> {
    build_q_with(alpha, n, d, CosetChoice::default())
}

/// `Q^{ab}_{ij} = d^{delta_ab} phi_ij(g_a^{-1} (a b) g_b)` with `(a a) = id`.
pub fn build_q_with(alpha: &Partition, n: usize, d: usize, choice: CosetChoice) -> Result<QMatrix> {
    check_alpha(alpha, n, d)?;
    let phi = young_orthogonal_rep(alpha);
    let m = n - 1;
    let reps = coset_reps(n, choice);
    let w = phi.dim();
    let mut entries = DMatrix::<f64>::zeros(m * w, m * w);
    for a in 1..=m {
        for b in 1..=m {
            let word = reps[a - 1].inverse().compose(&Permutation::transposition(m, a, b)?).compose(&reps[b - 1]);
            let h = word
                .restrict(n - 2)
                .ok_or_else(|| Error::Inconsistency(alloc::format!("coset word for ({}, {}) moves n - 1", a, b)))?;
            let mut blk = rep_matrix(&phi, &h)?;
            if a == b {
                blk *= d as f64;
            }
            entries.view_mut(((a - 1) * w, (b - 1) * w), (w, w)).copy_from(&blk);
        }
    }
    Ok(QMatrix {
        alpha: alpha.clone(),
        n,
        d,
        dim_phi: w,
        choice,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::symmetric_eigenvalues;
    use alloc::vec;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn admissible_labels() {
        assert_eq!(admissible_m_irreps(3, 2).unwrap(), vec![p(&[1])]);
        assert_eq!(admissible_m_irreps(4, 2).unwrap(), vec![p(&[2]), p(&[1, 1])]);
        assert_eq!(admissible_m_irreps(4, 1).unwrap(), vec![p(&[2])]);
        assert_eq!(admissible_n_irreps(4, 2).unwrap(), vec![p(&[3]), p(&[2, 1])]);
        assert_eq!(admissible_n_irreps(4, 3).unwrap(), vec![p(&[3]), p(&[2, 1]), p(&[1, 1, 1])]);
        assert_eq!(admissible_n_irreps(3, 2).unwrap(), vec![p(&[2]), p(&[1, 1])]);
        assert!(matches!(admissible_m_irreps(2, 2), Err(Error::Unsupported(_))));
    }

    #[test]
    fn q_checkpoints() {
        for d in 1..=6usize {
            let df = d as f64;
            let q = build_q(&p(&[1]), 3, d).unwrap();
            assert_eq!(q.entries, DMatrix::from_row_slice(2, 2, &[df, 1.0, 1.0, df]));
            let q = build_q(&p(&[2]), 4, d).unwrap();
            assert_eq!(q.entries, DMatrix::from_row_slice(3, 3, &[df, 1.0, 1.0, 1.0, df, 1.0, 1.0, 1.0, df]));
            if d >= 2 {
                let q = build_q(&p(&[1, 1]), 4, d).unwrap();
                assert_eq!(q.entries, DMatrix::from_row_slice(3, 3, &[df, -1.0, -1.0, -1.0, df, -1.0, -1.0, -1.0, df]));
            }
        }
    }

    #[test]
    fn literal_cosets_differ_only_by_block_conjugation() {
        let lit = build_q_with(&p(&[1, 1]), 4, 3, CosetChoice::Literal).unwrap();
        assert_eq!(lit.entries, DMatrix::from_row_slice(3, 3, &[3.0, -1.0, 1.0, -1.0, 3.0, 1.0, 1.0, 1.0, 3.0]));
        for alpha in admissible_m_irreps(5, 3).unwrap() {
            let a = symmetric_eigenvalues(&build_q_with(&alpha, 5, 3, CosetChoice::Literal).unwrap().entries);
            let b = symmetric_eigenvalues(&build_q(&alpha, 5, 3).unwrap().entries);
            for (x, y) in a.iter().zip(&b) {
                assert!((x - y).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn q_is_symmetric_with_scaled_identity_diagonal() {
        for n in 3..=6 {
            for d in 2..=4 {
                for alpha in admissible_m_irreps(n, d).unwrap() {
                    let q = build_q(&alpha, n, d).unwrap();
                    assert!((&q.entries - q.entries.transpose()).amax() < 1e-12);
                    for a in 1..n {
                        let blk = q.block(a, a);
                        assert!((blk - DMatrix::identity(q.dim_phi, q.dim_phi) * d as f64).amax() < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn q_commutes_with_induced_representation() {
        for n in 3..=6 {
            for alpha in admissible_m_irreps(n, 3).unwrap() {
                let phi = young_orthogonal_rep(&alpha);
                for choice in [CosetChoice::EqualParity, CosetChoice::Literal] {
                    let q = build_q_with(&alpha, n, 3, choice).unwrap();
                    for i in 1..n - 1 {
                        let s = Permutation::transposition(n - 1, i, i + 1).unwrap();
                        let pi = induced_matrix(&phi, n, choice, &s).unwrap();
                        assert!((&q.entries * &pi - &pi * &q.entries).amax() < 1e-12);
                        assert!((&pi * &pi - DMatrix::identity(pi.nrows(), pi.nrows())).amax() < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_inadmissible_alpha() {
        assert!(build_q(&p(&[1, 1]), 4, 1).is_err());
        assert!(build_q(&p(&[2]), 5, 2).is_err());
    }
}
