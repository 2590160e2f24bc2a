//! Dense two-phase simplex for small equality-constrained programs.

use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector};

use crate::error::{invalid, Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution {
    pub value: f64,
    /// Nonzero variables as `(column, value)`.
    pub support: Vec<(usize, f64)>,
}

const MAX_ITERATIONS: usize = 10_000;

/// Maximises `cost . x` subject to `sum_j x_j columns[j] = rhs`, `x >= 0`.
///
/// Infeasibility is reported when the phase-one residual exceeds `tol`.
pub fn maximize(columns: &[Vec<f64>], cost: &[f64], rhs: &[f64], tol: f64) -> Result<LpSolution> {
    let m = rhs.len();
    let n = columns.len();
    if cost.len() != n {
        return Err(invalid!("{} costs for {} columns", cost.len(), n));
    }
    if m == 0 || columns.iter().any(|c| c.len() != m) {
        return Err(invalid!("every column needs {} entries", m));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(invalid!("tolerance must be positive"));
    }
    // Rows with negative right-hand side are negated so artificials start feasible.
    let signs: Vec<f64> = rhs.iter().map(|&b| if b < 0.0 { -1.0 } else { 1.0 }).collect();
    let b = DVector::from_iterator(m, rhs.iter().zip(&signs).map(|(b, s)| b * s));
    let column = |j: usize| -> DVector<f64> {
        if j < n {
            DVector::from_iterator(m, columns[j].iter().zip(&signs).map(|(a, s)| a * s))
        } else {
            let mut e = DVector::zeros(m);
            e[j - n] = 1.0;
            e
        }
    };
    let mut lp = Simplex { m, n, basis: (n..n + m).collect(), column: &column, b };

    let phase_one: Vec<f64> = (0..n + m).map(|j| if j < n { 0.0 } else { -1.0 }).collect();
    lp.optimize(&phase_one, true)?;
    let residual: f64 = lp.values()?.iter().zip(&lp.basis).filter(|(_, &j)| j >= n).map(|(x, _)| *x).sum();
    if residual > tol {
        return Err(Error::Infeasible(alloc::format!("constraints violated by at least {:.3e}", residual)));
    }
    lp.drive_out_artificials()?;

    let phase_two: Vec<f64> = (0..n + m).map(|j| if j < n { cost[j] } else { 0.0 }).collect();
    lp.optimize(&phase_two, false)?;
    let x = lp.values()?;
    let mut support: Vec<(usize, f64)> = lp.basis.iter().zip(x.iter()).filter(|(&j, &v)| j < n && v > 0.0).map(|(&j, &v)| (j, v)).collect();
    support.sort_by_key(|s| s.0);
    let value = support.iter().map(|&(j, v)| cost[j] * v).sum();
    Ok(LpSolution { value, support })
}

struct Simplex<'a, F: Fn(usize) -> DVector<f64>> {
    m: usize,
    n: usize,
    basis: Vec<usize>,
    column: &'a F,
    b: DVector<f64>,
}

impl<F: Fn(usize) -> DVector<f64>> Simplex<'_, F> {
    fn basis_inverse(&self) -> Result<DMatrix<f64>> {
        let cols: Vec<DVector<f64>> = self.basis.iter().map(|&j| (self.column)(j)).collect();
        DMatrix::from_columns(&cols).try_inverse().ok_or_else(|| Error::Inconsistency("singular simplex basis".into()))
    }

    fn values(&self) -> Result<DVector<f64>> {
        Ok(self.basis_inverse()? * &self.b)
    }

    fn optimize(&mut self, cost: &[f64], allow_artificial: bool) -> Result<()> {
        let limit = if allow_artificial { self.n + self.m } else { self.n };
        let mut degenerate_run = 0;
        for _ in 0..MAX_ITERATIONS {
            let inv = self.basis_inverse()?;
            let x = &inv * &self.b;
            let cb = DVector::from_iterator(self.m, self.basis.iter().map(|&j| cost[j]));
            let y = inv.transpose() * cb;
            let bland = degenerate_run > 50;
            let mut entering: Option<(usize, f64)> = None;
            for (j, &cj) in cost.iter().enumerate().take(limit) {
                if self.basis.contains(&j) {
                    continue;
                }
                let col = (self.column)(j);
                let reduced = cj - y.dot(&col);
                let scale = 1.0 + col.amax();
                if reduced > 1e-12 * scale {
                    if bland {
                        entering = Some((j, reduced));
                        break;
                    }
                    if entering.is_none_or(|(_, r)| reduced > r) {
                        entering = Some((j, reduced));
                    }
                }
            }
            let Some((j, _)) = entering else {
                return Ok(());
            };
            let u = &inv * (self.column)(j);
            let mut leave: Option<(usize, f64)> = None;
            for i in 0..self.m {
                if u[i] > 1e-12 {
                    let ratio = x[i].max(0.0) / u[i];
                    let better = match leave {
                        None => true,
                        Some((k, r)) => ratio < r - 1e-15 || (ratio <= r + 1e-15 && self.basis[i] < self.basis[k]),
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            let Some((row, ratio)) = leave else {
                return Err(Error::Inconsistency("unbounded linear program".into()));
            };
            degenerate_run = if ratio <= 1e-15 { degenerate_run + 1 } else { 0 };
            self.basis[row] = j;
        }
        Err(Error::Inconsistency("simplex iteration limit reached".into()))
    }

    /// Replaces zero-level artificial basics by structural columns where possible.
    fn drive_out_artificials(&mut self) -> Result<()> {
        for row in 0..self.m {
            if self.basis[row] < self.n {
                continue;
            }
            let inv = self.basis_inverse()?;
            let pivot = (0..self.n).filter(|j| !self.basis.contains(j)).find(|&j| (&inv * (self.column)(j))[row].abs() > 1e-9);
            if let Some(j) = pivot {
                self.basis[row] = j;
            }
        }
        Ok(())
    }
}
