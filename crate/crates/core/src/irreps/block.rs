use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector};

use super::qmatrix::{admissible_m_irreps, admissible_n_irreps, build_q, check_alpha, induced_matrix, QMatrix};
use crate::error::{invalid, Error, Result};
use crate::linalg::{cluster_descending, symmetric_eigen};
use crate::symgroup::{young_orthogonal_rep, OrthogonalRep, Partition, Permutation};

/// Eigenvalues below `DEFAULT_ZERO_TOL * d` are treated as zero.
pub const DEFAULT_ZERO_TOL: f64 = 1e-9;

/// Relative gap below which neighbouring eigenvalues are grouped together.
const CLUSTER_REL_GAP: f64 = 1e-6;

/// One irreducible block of the ideal `M`, labelled by `alpha ⊢ n - 2`.
#[derive(Clone, Debug)]
pub struct IrrepBlock {
    pub alpha: Partition,
    pub n: usize,
    pub d: usize,
    /// Kept eigenvalues of `Q(alpha)`, one per basis vector, descending.
    pub eigenvalues: Vec<f64>,
    /// Branching label `nu` of each basis vector.
    pub labels: Vec<Partition>,
    /// Kept eigenvectors of `Q(alpha)` as columns.
    pub z: DMatrix<f64>,
    /// `generators[a - 1]` represents `V'(a n)`, `a = 1..n-1`.
    pub generators: Vec<DMatrix<f64>>,
    /// Label of the eigenvalue removed for being zero, if any.
    pub dropped: Option<Partition>,
    pub q: QMatrix,
}

impl IrrepBlock {
    /// Block dimension, equal to `rank Q(alpha)`.
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn clone_count(&self) -> usize {
        self.n - 1
    }

    /// Distinct `(nu, lambda_nu, multiplicity)` triples in basis order.
    pub fn spectrum(&self) -> Vec<(Partition, f64, usize)> {
        let mut out: Vec<(Partition, f64, usize)> = Vec::new();
        for (nu, &lambda) in self.labels.iter().zip(&self.eigenvalues) {
            match out.last_mut() {
                Some(last) if &last.0 == nu => last.2 += 1,
                _ => out.push((nu.clone(), lambda, 1)),
            }
        }
        out
    }
}

/// The observable of clone `k` (`2 <= k <= n`): the image of `(k-1, n)`.
pub fn clone_observable(block: &IrrepBlock, k: usize) -> Result<&DMatrix<f64>> {
    if k < 2 || k > block.n {
        return Err(invalid!("clone index {} outside 2..={}", k, block.n));
    }
    Ok(&block.generators[k - 2])
}

/// Decomposition of `A'_n(d)` into the blocks of `M` and the labels of `N`.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub n: usize,
    pub d: usize,
    pub blocks: Vec<IrrepBlock>,
    pub n_irreps: Vec<Partition>,
}

impl Decomposition {
    /// `N = n - 1`.
    pub fn clone_count(&self) -> usize {
        self.n - 1
    }

    pub fn block(&self, alpha: &Partition) -> Option<&IrrepBlock> {
        self.blocks.iter().find(|b| &b.alpha == alpha)
    }
}

pub fn decompose(n: usize, d: usize, tol: f64) -> Result<Decomposition> {
    let blocks = admissible_m_irreps(n, d)?
        .iter()
        .map(|alpha| build_block(alpha, n, d, tol))
        .collect::<Result<Vec<_>>>()?;
    Ok(Decomposition {
        n,
        d,
        blocks,
        n_irreps: admissible_n_irreps(n, d)?,
    })
}

struct LabelledSpace {
    nu: Partition,
    value: f64,
    columns: DMatrix<f64>,
}

pub fn build_block(alpha: &Partition, n: usize, d: usize, tol: f64) -> Result<IrrepBlock> {
    check_alpha(alpha, n, d)?;
    if tol.is_nan() || tol <= 0.0 {
        return Err(invalid!("zero tolerance must be positive, got {}", tol));
    }
    let q = build_q(alpha, n, d)?;
    let eig = symmetric_eigen(&q.entries);
    let clusters = cluster_descending(&eig.values, CLUSTER_REL_GAP);

    let branches = alpha.branch_up();
    if clusters.len() != branches.len() {
        return Err(Error::Inconsistency(alloc::format!(
            "Q({}) at n = {}, d = {} has {} distinct eigenvalues but {} branching labels",
            alpha,
            n,
            d,
            clusters.len(),
            branches.len()
        )));
    }
    // Match multiplicities to dim(nu); among equal dimensions the larger
    // eigenvalue takes the label whose added box has the larger content.
    let mut used = alloc::vec![false; branches.len()];
    let mut spaces = Vec::with_capacity(clusters.len());
    for c in &clusters {
        let pick = branches
            .iter()
            .enumerate()
            .filter(|(i, nu)| !used[*i] && nu.dimension() as usize == c.len)
            .max_by_key(|(_, nu)| alpha.added_box_content(nu).expect("branch_up adds one box"))
            .map(|(i, _)| i)
            .ok_or_else(|| {
                Error::Inconsistency(alloc::format!(
                    "eigenvalue {} of Q({}) has multiplicity {} matching no unused branching dimension",
                    c.value,
                    alpha,
                    c.len
                ))
            })?;
        used[pick] = true;
        spaces.push(LabelledSpace {
            nu: branches[pick].clone(),
            value: c.value,
            columns: eig.vectors.columns(c.start, c.len).into_owned(),
        });
    }

    let scale = d as f64;
    if let Some(neg) = spaces.iter().find(|s| s.value < -1e-10 * scale) {
        return Err(Error::Inconsistency(alloc::format!("Q({}) has negative eigenvalue {}", alpha, neg.value)));
    }
    let zero: Vec<usize> = (0..spaces.len()).filter(|&i| spaces[i].value < tol * scale).collect();
    if zero.len() > 1 {
        return Err(Error::Inconsistency(alloc::format!("Q({}) has more than one zero eigenvalue", alpha)));
    }
    let dropped = zero.first().map(|&i| spaces[i].nu.clone());

    let phi = young_orthogonal_rep(alpha);
    let mut eigenvalues = Vec::new();
    let mut labels = Vec::new();
    let mut kept_columns: Vec<DVector<f64>> = Vec::new();
    for (i, space) in spaces.iter().enumerate() {
        if zero.contains(&i) {
            continue;
        }
        let basis = gelfand_tsetlin_basis(&phi, n, &space.nu, &space.columns)?;
        for col in basis.column_iter() {
            kept_columns.push(col.into_owned());
            eigenvalues.push(space.value);
            labels.push(space.nu.clone());
        }
    }
    let z = DMatrix::from_columns(&kept_columns);

    let w = q.dim_phi;
    let sqrt_lambda = DMatrix::from_diagonal(&DVector::from_iterator(eigenvalues.len(), eigenvalues.iter().map(|&l| libm::sqrt(l))));
    let generators = (0..n - 1)
        .map(|a| {
            let rows = z.rows(a * w, w) * &sqrt_lambda;
            let g = rows.transpose() * rows;
            (&g + g.transpose()) * 0.5
        })
        .collect();

    Ok(IrrepBlock {
        alpha: alpha.clone(),
        n,
        d,
        eigenvalues,
        labels,
        z,
        generators,
        dropped,
        q,
    })
}

/// Re-expresses an eigenspace of `Q(alpha)` carrying `psi^nu` in the basis on
/// which `S(n-1)` acts by Young's orthogonal form of `nu`.
///
/// The basis vectors are the joint eigenvectors of the Jucys-Murphy elements
/// `X_k = sum_{j<k} (j k)`; their signs are fixed by requiring positive
/// off-diagonal generator entries, and the overall sign by making the last
/// significant entry of the first vector positive.
fn gelfand_tsetlin_basis(phi: &OrthogonalRep, n: usize, nu: &Partition, space: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let choice = Default::default();
    let m = n - 1;
    let dim = space.ncols();
    let target = young_orthogonal_rep(nu);
    let restricted = |sigma: &Permutation| -> Result<DMatrix<f64>> {
        let full = induced_matrix(phi, n, choice, sigma)?;
        Ok(space.transpose() * full * space)
    };

    let mut basis = if dim == 1 {
        space.clone()
    } else {
        let jm: Vec<DMatrix<f64>> = (2..=m)
            .map(|k| {
                (1..k).try_fold(DMatrix::<f64>::zeros(dim, dim), |acc, j| {
                    Ok::<_, Error>(acc + restricted(&Permutation::transposition(m, j, k)?)?)
                })
            })
            .collect::<Result<_>>()?;
        // Contents lie in [-(m-1), m-1]; a base-(2m) weighting separates
        // distinct content vectors.
        let base = (2 * m) as f64;
        let mut generic = DMatrix::<f64>::zeros(dim, dim);
        let mut weight = 1.0;
        for x in &jm {
            generic += x * weight;
            weight *= base;
        }
        let eig = symmetric_eigen(&generic);
        let mut ordered: Vec<Option<DVector<f64>>> = alloc::vec![None; dim];
        for v in eig.vectors.column_iter() {
            let contents: Vec<i64> = jm.iter().map(|x| libm::round((v.transpose() * x * v)[(0, 0)]) as i64).collect();
            let slot = target
                .tableaux()
                .iter()
                .position(|t| (2..=m).all(|k| t.content(k) == contents[k - 2]))
                .ok_or_else(|| Error::Inconsistency(alloc::format!("no tableau of {} has contents {:?}", nu, contents)))?;
            if ordered[slot].is_some() {
                return Err(Error::Inconsistency(alloc::format!("content vector {:?} repeated in {}", contents, nu)));
            }
            ordered[slot] = Some(v.into_owned());
        }
        let cols: Vec<DVector<f64>> = ordered.into_iter().map(|c| c.expect("every slot filled")).collect();
        let mut basis = DMatrix::from_columns(&cols);

        // Relative signs along the s_i adjacency graph of tableaux.
        let gens: Vec<DMatrix<f64>> = (1..m)
            .map(|i| restricted(&Permutation::transposition(m, i, i + 1)?))
            .collect::<Result<_>>()?;
        let mut signed = alloc::vec![false; dim];
        signed[0] = true;
        let mut queue = alloc::vec![0usize];
        while let Some(t) = queue.pop() {
            for (i, g) in gens.iter().enumerate() {
                let young = target.generator(i + 1);
                for partner in 0..dim {
                    if partner == t || young[(t, partner)] == 0.0 || signed[partner] {
                        continue;
                    }
                    let entry = (basis.column(t).transpose() * g * basis.column(partner))[(0, 0)];
                    if entry < 0.0 {
                        let flipped = -basis.column(partner);
                        basis.set_column(partner, &flipped);
                    }
                    signed[partner] = true;
                    queue.push(partner);
                }
            }
        }
        for (i, g) in gens.iter().enumerate() {
            let got = basis.transpose() * g * &basis;
            let err = (got - target.generator(i + 1)).amax();
            if err > 1e-8 {
                return Err(Error::Inconsistency(alloc::format!("eigenspace {} is not Young-orthogonal (error {:e})", nu, err)));
            }
        }
        space * basis
    };

    let first = basis.column(0);
    let last_significant = first.iter().rev().find(|x| x.abs() > 1e-8).copied().unwrap_or(1.0);
    if last_significant < 0.0 {
        basis.neg_mut();
    }
    Ok(basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symgroup::partitions_of;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn close(a: &DMatrix<f64>, b: &DMatrix<f64>, tol: f64) -> bool {
        a.shape() == b.shape() && (a - b).amax() < tol
    }

    #[test]
    fn three_systems_block() {
        for d in 2..=6usize {
            let df = d as f64;
            let b = build_block(&p(&[1]), 3, d, DEFAULT_ZERO_TOL).unwrap();
            assert!((b.eigenvalues[0] - (df + 1.0)).abs() < 1e-12);
            assert!((b.eigenvalues[1] - (df - 1.0)).abs() < 1e-12);
            assert_eq!(b.labels, alloc::vec![p(&[2]), p(&[1, 1])]);
            let r = libm::sqrt(df * df - 1.0);
            let b1 = DMatrix::from_row_slice(2, 2, &[df + 1.0, -r, -r, df - 1.0]) * 0.5;
            let b2 = DMatrix::from_row_slice(2, 2, &[df + 1.0, r, r, df - 1.0]) * 0.5;
            assert!(close(&b.generators[0], &b1, 1e-12), "{}", b.generators[0]);
            assert!(close(&b.generators[1], &b2, 1e-12));
        }
    }

    #[test]
    fn degenerate_two_dimensional_block() {
        let b = build_block(&p(&[1, 1]), 4, 2, DEFAULT_ZERO_TOL).unwrap();
        assert_eq!(b.dim(), 2);
        assert_eq!(b.dropped, Some(p(&[1, 1, 1])));
        assert!(b.eigenvalues.iter().all(|&l| (l - 3.0).abs() < 1e-12));
    }

    #[test]
    fn algebra_relations() {
        for n in 3..=5 {
            for d in 2..=5usize {
                let df = d as f64;
                for alpha in admissible_m_irreps(n, d).unwrap() {
                    let b = build_block(&alpha, n, d, DEFAULT_ZERO_TOL).unwrap();
                    for g in &b.generators {
                        assert!(close(g, &g.transpose(), 1e-10));
                        assert!(close(&(g * g), &(g * df), 1e-10));
                        assert!((g.trace() - df * alpha.dimension() as f64).abs() < 1e-10);
                    }
                }
            }
        }
    }

    #[test]
    fn multiplicities_follow_branching() {
        for n in 3..=6 {
            for d in 2..=5 {
                for alpha in admissible_m_irreps(n, d).unwrap() {
                    let b = build_block(&alpha, n, d, DEFAULT_ZERO_TOL).unwrap();
                    let mut total = 0;
                    for (nu, _, mult) in b.spectrum() {
                        assert_eq!(mult as u64, nu.dimension());
                        total += mult;
                    }
                    let dropped = b.dropped.as_ref().map_or(0, |t| t.dimension() as usize);
                    assert_eq!(total + dropped, (n - 1) * alpha.dimension() as usize);
                    // Nonsingular Q whenever d > n - 2.
                    if d > n - 2 {
                        assert!(b.dropped.is_none());
                    }
                    // A dropped label is always a diagram with more than d rows.
                    if let Some(theta) = &b.dropped {
                        assert!(theta.height() > d);
                    }
                }
            }
        }
    }

    #[test]
    fn eigenvalues_equal_d_plus_added_content() {
        // Observed closed form, checked rather than used.
        for n in 3..=6 {
            for d in 2..=6 {
                for alpha in admissible_m_irreps(n, d).unwrap() {
                    let b = build_block(&alpha, n, d, DEFAULT_ZERO_TOL).unwrap();
                    for (nu, lambda, _) in b.spectrum() {
                        let c = alpha.added_box_content(&nu).unwrap();
                        assert!((lambda - (d as f64 + c as f64)).abs() < 1e-9);
                    }
                }
            }
        }
    }

    #[test]
    fn z_is_orthonormal_and_diagonalises_q() {
        for n in 3..=6 {
            for d in 2..=4 {
                for alpha in admissible_m_irreps(n, d).unwrap() {
                    let b = build_block(&alpha, n, d, DEFAULT_ZERO_TOL).unwrap();
                    let k = b.dim();
                    assert!(close(&(b.z.transpose() * &b.z), &DMatrix::identity(k, k), 1e-12));
                    let lambda = DMatrix::from_diagonal(&DVector::from_column_slice(&b.eigenvalues));
                    assert!(close(&(b.z.transpose() * &b.q.entries * &b.z), &lambda, 1e-10));
                }
            }
        }
    }

    #[test]
    fn symmetric_group_acts_by_young_form_of_each_label() {
        for n in 3..=6 {
            let d = 3;
            for alpha in admissible_m_irreps(n, d).unwrap() {
                let b = build_block(&alpha, n, d, DEFAULT_ZERO_TOL).unwrap();
                let phi = young_orthogonal_rep(&alpha);
                for i in 1..n - 1 {
                    let s = Permutation::transposition(n - 1, i, i + 1).unwrap();
                    let pi = induced_matrix(&phi, n, Default::default(), &s).unwrap();
                    let reduced = b.z.transpose() * pi * &b.z;
                    let mut offset = 0;
                    for (nu, _, mult) in b.spectrum() {
                        let young = young_orthogonal_rep(&nu);
                        let sub = reduced.view((offset, offset), (mult, mult)).into_owned();
                        assert!(close(&sub, young.generator(i), 1e-9));
                        offset += mult;
                    }
                }
            }
        }
    }

    #[test]
    fn pair_traces_do_not_depend_on_the_pair() {
        for n in 3..=5 {
            for d in 2..=4 {
                for b in decompose(n, d, DEFAULT_ZERO_TOL).unwrap().blocks {
                    let reference = (&b.generators[0] * &b.generators[1]).trace();
                    for x in 0..n - 1 {
                        for y in 0..n - 1 {
                            if x != y {
                                assert!(((&b.generators[x] * &b.generators[y]).trace() - reference).abs() < 1e-10);
                            }
                        }
                    }
                    if n == 3 {
                        assert!((reference - 1.0).abs() < 1e-10);
                    }
                }
            }
        }
    }

    #[test]
    fn decomposition_contents() {
        let dec = decompose(4, 2, DEFAULT_ZERO_TOL).unwrap();
        assert_eq!(dec.blocks.len(), 2);
        assert_eq!(dec.n_irreps, alloc::vec![p(&[3]), p(&[2, 1])]);
        for n in 3..=6 {
            for d in 1..=4 {
                let dec = decompose(n, d, DEFAULT_ZERO_TOL).unwrap();
                assert_eq!(dec.n_irreps[0], p(&[n - 1]));
                let expected: Vec<Partition> = partitions_of(n - 2).unwrap().into_iter().filter(|a| a.height() <= d).collect();
                assert_eq!(dec.blocks.iter().map(|b| b.alpha.clone()).collect::<Vec<_>>(), expected);
            }
        }
    }

    #[test]
    fn clone_observable_mapping() {
        let b = build_block(&p(&[1]), 3, 2, DEFAULT_ZERO_TOL).unwrap();
        assert_eq!(clone_observable(&b, 2).unwrap(), &b.generators[0]);
        assert_eq!(clone_observable(&b, 3).unwrap(), &b.generators[1]);
        assert!(clone_observable(&b, 1).is_err());
        assert!(clone_observable(&b, 4).is_err());
        let b4 = build_block(&p(&[2]), 4, 3, DEFAULT_ZERO_TOL).unwrap();
        assert_eq!(clone_observable(&b4, 4).unwrap(), &b4.generators[2]);
    }

    #[test]
    fn trivial_block_at_d3_traces() {
        let b = build_block(&p(&[2]), 4, 3, DEFAULT_ZERO_TOL).unwrap();
        for g in &b.generators {
            assert!((g.trace() - 3.0).abs() < 1e-10);
            assert!(close(&(g * g), &(g * 3.0), 1e-10));
        }
    }
}
