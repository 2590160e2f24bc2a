use alloc::vec::Vec;

use nalgebra::DMatrix;

use crate::error::{invalid, Result};

fn check_shapes(x: &[DMatrix<f64>], y: &[DMatrix<f64>]) -> Result<()> {
    if x.len() != y.len() {
        return Err(invalid!("generator families of different length: {} vs {}", x.len(), y.len()));
    }
    for (a, b) in x.iter().zip(y) {
        if a.shape() != b.shape() || a.nrows() != a.ncols() {
            return Err(invalid!("generator shapes differ: {:?} vs {:?}", a.shape(), b.shape()));
        }
    }
    Ok(())
}

/// Compares two generator families through the traces of all words of
/// length one to three. These are invariant under simultaneous orthogonal
/// conjugation.
pub fn blocks_equivalent(x: &[DMatrix<f64>], y: &[DMatrix<f64>], tol: f64) -> Result<bool> {
    check_shapes(x, y)?;
    let k = x.len();
    let agree = |a: f64, b: f64| (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0);
    for a in 0..k {
        if !agree(x[a].trace(), y[a].trace()) {
            return Ok(false);
        }
        for b in 0..k {
            let xab = &x[a] * &x[b];
            let yab = &y[a] * &y[b];
            if !agree(xab.trace(), yab.trace()) {
                return Ok(false);
            }
            for c in 0..k {
                if !agree((&xab * &x[c]).trace(), (&yab * &y[c]).trace()) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Finds signs `s` with `diag(s) X_a diag(s) = Y_a` for every `a`, entrywise
/// within `tol`.
pub fn sign_conjugation(x: &[DMatrix<f64>], y: &[DMatrix<f64>], tol: f64) -> Result<Option<Vec<f64>>> {
    check_shapes(x, y)?;
    let Some(first) = x.first() else {
        return Ok(Some(Vec::new()));
    };
    let size = first.nrows();
    // Entries fix the product s_i s_j wherever they are non-negligible; walk
    // them from index 0, then try both global signs of unconstrained indices.
    let mut signs: Vec<Option<f64>> = alloc::vec![None; size];
    for root in 0..size {
        if signs[root].is_some() {
            continue;
        }
        signs[root] = Some(1.0);
        let mut stack = alloc::vec![root];
        while let Some(i) = stack.pop() {
            for j in 0..size {
                if signs[j].is_some() {
                    continue;
                }
                if let Some((xa, ya)) = x.iter().zip(y).find(|(xa, _)| xa[(i, j)].abs() > tol) {
                    let rel = if (xa[(i, j)] > 0.0) == (ya[(i, j)] > 0.0) { 1.0 } else { -1.0 };
                    signs[j] = Some(signs[i].unwrap() * rel);
                    stack.push(j);
                }
            }
        }
    }
    let s: Vec<f64> = signs.into_iter().map(|v| v.unwrap_or(1.0)).collect();
    let ok = x.iter().zip(y).all(|(xa, ya)| {
        (0..size).all(|i| (0..size).all(|j| (s[i] * s[j] * xa[(i, j)] - ya[(i, j)]).abs() <= tol))
    });
    Ok(ok.then_some(s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::irreps::{build_block, DEFAULT_ZERO_TOL};
    use crate::symgroup::Partition;

    fn n3_block(d: usize) -> Vec<DMatrix<f64>> {
        build_block(&Partition::new(alloc::vec![1]).unwrap(), 3, d, DEFAULT_ZERO_TOL).unwrap().generators
    }

    #[test]
    fn sign_flipped_block_is_equivalent() {
        let x = n3_block(3);
        let flip = DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(&[1.0, -1.0]));
        let y: Vec<_> = x.iter().map(|g| &flip * g * &flip).collect();
        assert!(blocks_equivalent(&x, &y, 1e-10).unwrap());
        assert_eq!(sign_conjugation(&x, &y, 1e-10).unwrap(), Some(alloc::vec![1.0, -1.0]));
    }

    #[test]
    fn different_dimensions_are_not_equivalent() {
        assert!(!blocks_equivalent(&n3_block(2), &n3_block(3), 1e-10).unwrap());
        assert_eq!(sign_conjugation(&n3_block(2), &n3_block(3), 1e-10).unwrap(), None);
    }

    #[test]
    fn shape_mismatch_is_an_error() {
        let x = n3_block(2);
        assert!(blocks_equivalent(&x, &x[..1], 1e-10).is_err());
        let big = alloc::vec![DMatrix::<f64>::identity(3, 3); 2];
        assert!(blocks_equivalent(&x, &big, 1e-10).is_err());
    }
}
