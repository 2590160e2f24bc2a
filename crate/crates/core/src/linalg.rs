//! Small dense linear-algebra helpers on top of `nalgebra`.

use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector, SymmetricEigen};

/// Eigen-decomposition of a real symmetric matrix with eigenvalues sorted in
/// descending order and eigenvectors as the matching columns.
#[derive(Clone, Debug)]
pub struct SortedEigen {
    pub values: Vec<f64>,
    pub vectors: DMatrix<f64>,
}

pub fn symmetric_eigen(m: &DMatrix<f64>) -> SortedEigen {
    let sym = symmetrized(m);
    let eig = SymmetricEigen::new(sym);
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = DMatrix::from_columns(&order.iter().map(|&i| eig.eigenvectors.column(i).into_owned()).collect::<Vec<DVector<f64>>>());
    SortedEigen { values, vectors }
}

/// Eigenvalues only, descending.
pub fn symmetric_eigenvalues(m: &DMatrix<f64>) -> Vec<f64> {
    let mut values: Vec<f64> = symmetrized(m).symmetric_eigenvalues().iter().copied().collect();
    values.sort_by(|a, b| b.total_cmp(a));
    values
}

/// Largest eigenvalue of a real symmetric matrix.
pub fn max_eigenvalue(m: &DMatrix<f64>) -> f64 {
    match m.nrows() {
        0 => f64::NEG_INFINITY,
        1 => m[(0, 0)],
        2 => {
            let (a, b, c) = (m[(0, 0)], 0.5 * (m[(0, 1)] + m[(1, 0)]), m[(1, 1)]);
            let mean = 0.5 * (a + c);
            let half = 0.5 * (a - c);
            mean + libm::sqrt(half * half + b * b)
        }
        _ => symmetrized(m).symmetric_eigenvalues().max(),
    }
}

pub fn symmetrized(m: &DMatrix<f64>) -> DMatrix<f64> {
    (m + m.transpose()) * 0.5
}

/// A run of (numerically) equal values in a descending sequence.
#[derive(Clone, Debug, PartialEq)]
pub struct Cluster {
    pub value: f64,
    pub start: usize,
    pub len: usize,
}

/// Groups a descending sequence into clusters whose consecutive members differ
/// by at most `rel_gap * max(1, |value|)`.
pub fn cluster_descending(values: &[f64], rel_gap: f64) -> Vec<Cluster> {
    let mut out: Vec<Cluster> = Vec::new();
    for (i, &v) in values.iter().enumerate() {
        match out.last_mut() {
            Some(c) if (values[i - 1] - v).abs() <= rel_gap * v.abs().max(1.0) => c.len += 1,
            _ => out.push(Cluster { value: v, start: i, len: 1 }),
        }
    }
    for c in &mut out {
        c.value = values[c.start..c.start + c.len].iter().sum::<f64>() / c.len as f64;
    }
    out
}
