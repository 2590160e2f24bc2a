use alloc::vec::Vec;

use nalgebra::DMatrix;

use super::{Partition, Permutation};
use crate::error::{invalid, Result};

/// A standard Young tableau stored as the row of each letter (0-based rows,
/// letter `k` at index `k - 1`).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Tableau {
    rows: Vec<usize>,
    cols: Vec<usize>,
}

impl Tableau {
    pub fn row_of(&self, letter: usize) -> usize {
        self.rows[letter - 1]
    }

    pub fn col_of(&self, letter: usize) -> usize {
        self.cols[letter - 1]
    }

    /// Content `col - row` of the box holding `letter`.
    pub fn content(&self, letter: usize) -> i64 {
        self.col_of(letter) as i64 - self.row_of(letter) as i64
    }

    fn swapped(&self, letter: usize) -> Tableau {
        let mut t = self.clone();
        t.rows.swap(letter - 1, letter);
        t.cols.swap(letter - 1, letter);
        t
    }
}

/// All standard tableaux of shape `alpha`, ordered lexicographically by
/// their row words.
pub fn standard_tableaux(alpha: &Partition) -> Vec<Tableau> {
    fn grow(shape: &[usize], lens: &mut Vec<usize>, rows: &mut Vec<usize>, cols: &mut Vec<usize>, out: &mut Vec<Tableau>) {
        if rows.len() == shape.iter().sum::<usize>() {
            out.push(Tableau { rows: rows.clone(), cols: cols.clone() });
            return;
        }
        for r in 0..shape.len() {
            if lens[r] < shape[r] && (r == 0 || lens[r - 1] > lens[r]) {
                rows.push(r);
                cols.push(lens[r]);
                lens[r] += 1;
                grow(shape, lens, rows, cols, out);
                lens[r] -= 1;
                rows.pop();
                cols.pop();
            }
        }
    }
    let shape = alpha.parts();
    let mut out = Vec::new();
    grow(shape, &mut alloc::vec![0; shape.len()], &mut Vec::new(), &mut Vec::new(), &mut out);
    out
}

/// An irreducible representation of `S(m)` in Young's orthogonal form.
///
/// Every generator matrix is real, symmetric and orthogonal.
#[derive(Clone, Debug, PartialEq)]
pub struct OrthogonalRep {
    partition: Partition,
    tableaux: Vec<Tableau>,
    // generators[i - 1] is the image of s_i = (i, i+1)
    generators: Vec<DMatrix<f64>>,
}

impl OrthogonalRep {
    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    /// The `m` of `S(m)`.
    pub fn degree(&self) -> usize {
        self.partition.size()
    }

    pub fn dim(&self) -> usize {
        self.tableaux.len()
    }

    pub fn tableaux(&self) -> &[Tableau] {
        &self.tableaux
    }

    /// Image of `s_i = (i, i+1)`, `1 <= i < m`.
    pub fn generator(&self, i: usize) -> &DMatrix<f64> {
        &self.generators[i - 1]
    }

    pub fn generators(&self) -> &[DMatrix<f64>] {
        &self.generators
    }
}

pub fn young_orthogonal_rep(alpha: &Partition) -> OrthogonalRep {
    let tableaux = standard_tableaux(alpha);
    let dim = tableaux.len();
    let m = alpha.size();
    let generators = (1..m)
        .map(|i| {
            let mut g = DMatrix::<f64>::zeros(dim, dim);
            for (t_idx, t) in tableaux.iter().enumerate() {
                let axial = (t.content(i + 1) - t.content(i)) as f64;
                g[(t_idx, t_idx)] = 1.0 / axial;
                if axial.abs() > 1.0 {
                    let partner = tableaux
                        .binary_search(&t.swapped(i))
                        .expect("swapping non-adjacent letters keeps a tableau standard");
                    g[(t_idx, partner)] = libm::sqrt(1.0 - 1.0 / (axial * axial));
                }
            }
            g
        })
        .collect();
    OrthogonalRep {
        partition: alpha.clone(),
        tableaux,
        generators,
    }
}

/// Representation matrix of `sigma`, multiplied out along its adjacent
/// transposition word.
pub fn rep_matrix(rep: &OrthogonalRep, sigma: &Permutation) -> Result<DMatrix<f64>> {
    if sigma.degree() != rep.degree() {
        return Err(invalid!(
            "permutation of degree {} applied to a representation of S({})",
            sigma.degree(),
            rep.degree()
        ));
    }
    let mut out = DMatrix::<f64>::identity(rep.dim(), rep.dim());
    for i in sigma.adjacent_word() {
        out *= rep.generator(i);
    }
    Ok(out)
}
