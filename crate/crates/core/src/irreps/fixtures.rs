//! Published generator matrices for three and four systems, kept as
//! regression fixtures.
//!
//! The printed four-system matrices for `d >= 3` read
//! `(1/3) D u u^T D` with unit vectors `u` and `u^T D^2 u = d`. That overall
//! `1/3` contradicts `X^2 = d X`, which every partially transposed
//! transposition satisfies, so the fixtures here are `D u u^T D`. The
//! three-system matrices and the four-system `d = 2` matrices are used as
//! printed.

use alloc::vec::Vec;

use nalgebra::DMatrix;

use crate::error::{invalid, Error, Result};
use crate::symgroup::Partition;

fn sym3(e: [f64; 6]) -> DMatrix<f64> {
    let [a, b, c, d, e_, f] = e;
    DMatrix::from_row_slice(3, 3, &[a, b, c, b, d, e_, c, e_, f])
}

fn sandwich(diag: [f64; 3], inner: DMatrix<f64>) -> DMatrix<f64> {
    let dm = DMatrix::from_diagonal(&nalgebra::DVector::from_row_slice(&diag));
    &dm * inner * &dm
}

pub fn reference_fixtures(n: usize, d: usize) -> Result<Vec<(Partition, Vec<DMatrix<f64>>)>> {
    let df = d as f64;
    let sqrt = libm::sqrt;
    let s2 = sqrt(2.0);
    let s3 = sqrt(3.0);
    let s6 = sqrt(6.0);
    match n {
        3 => {
            if d < 1 {
                return Err(invalid!("d must be positive"));
            }
            let r = sqrt(df * df - 1.0);
            let v13 = DMatrix::from_row_slice(2, 2, &[df + 1.0, -r, -r, df - 1.0]) * 0.5;
            let v23 = DMatrix::from_row_slice(2, 2, &[df + 1.0, r, r, df - 1.0]) * 0.5;
            Ok(alloc::vec![(Partition::new(alloc::vec![1])?, alloc::vec![v13, v23])])
        }
        4 => {
            if d < 2 {
                return Err(invalid!("four-system fixtures need d >= 2"));
            }
            let d1 = [sqrt(df - 1.0), sqrt(df - 1.0), sqrt(df + 2.0)];
            let alpha1 = alloc::vec![
                sandwich(d1, sym3([1.0 / 6.0, -1.0 / (2.0 * s3), 1.0 / (3.0 * s2), 0.5, -1.0 / s6, 1.0 / 3.0])),
                sandwich(d1, sym3([1.0 / 6.0, 1.0 / (2.0 * s3), 1.0 / (3.0 * s2), 0.5, 1.0 / s6, 1.0 / 3.0])),
                sandwich(d1, sym3([2.0 / 3.0, 0.0, -2.0 / (3.0 * s2), 0.0, 0.0, 1.0 / 3.0])),
            ];
            let alpha2 = if d >= 3 {
                let d2 = [sqrt(df + 1.0), sqrt(df + 1.0), sqrt(df - 2.0)];
                alloc::vec![
                    sandwich(d2, sym3([0.5, -1.0 / (2.0 * s3), -1.0 / s6, 1.0 / 6.0, 1.0 / (3.0 * s2), 1.0 / 3.0])),
                    sandwich(d2, sym3([0.5, 1.0 / (2.0 * s3), 1.0 / s6, 1.0 / 6.0, 1.0 / (3.0 * s2), 1.0 / 3.0])),
                    sandwich(d2, sym3([0.0, 0.0, 0.0, 2.0 / 3.0, -s2 / 3.0, 1.0 / 3.0])),
                ]
            } else {
                let m = |b: f64| DMatrix::from_row_slice(2, 2, &[0.5, b, b, 1.0 / 6.0]) * 3.0;
                alloc::vec![
                    m(-1.0 / (2.0 * s3)),
                    m(1.0 / (2.0 * s3)),
                    DMatrix::from_row_slice(2, 2, &[0.0, 0.0, 0.0, 2.0 / 3.0]) * 3.0,
                ]
            };
            Ok(alloc::vec![
                (Partition::new(alloc::vec![2])?, alpha1),
                (Partition::new(alloc::vec![1, 1])?, alpha2),
            ])
        }
        _ => Err(Error::Unsupported(alloc::format!("reference fixtures exist only for n = 3 and n = 4, not {}", n))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::irreps::{blocks_equivalent, build_block, sign_conjugation, DEFAULT_ZERO_TOL};

    #[test]
    fn printed_values() {
        let f = reference_fixtures(3, 2).unwrap();
        let s3 = libm::sqrt(3.0);
        let expected = DMatrix::from_row_slice(2, 2, &[3.0, -s3, -s3, 1.0]) * 0.5;
        assert!((&f[0].1[0] - expected).amax() < 1e-15);
        let f4 = reference_fixtures(4, 2).unwrap();
        assert!((&f4[1].1[2] - DMatrix::from_row_slice(2, 2, &[0.0, 0.0, 0.0, 2.0])).amax() < 1e-15);
        assert!(reference_fixtures(5, 2).is_err());
    }

    #[test]
    fn corrected_fixtures_satisfy_the_algebra() {
        for d in 2..=6usize {
            for (_, mats) in reference_fixtures(4, d).unwrap() {
                for m in mats {
                    assert!((&m * &m - &m * d as f64).amax() < 1e-12);
                }
            }
        }
        // The trivial block at d = 3 has unit-dimensional phi, so tr = d.
        for m in &reference_fixtures(4, 3).unwrap()[0].1 {
            assert!((m.trace() - 3.0).abs() < 1e-12);
        }
    }

    #[test]
    fn built_blocks_match_fixtures() {
        for n in [3usize, 4] {
            for d in 2..=5 {
                for (alpha, mats) in reference_fixtures(n, d).unwrap() {
                    let b = build_block(&alpha, n, d, DEFAULT_ZERO_TOL).unwrap();
                    assert!(blocks_equivalent(&b.generators, &mats, 1e-10).unwrap(), "n={} d={} alpha={}", n, d, alpha);
                }
            }
        }
        let alpha = Partition::new(alloc::vec![1, 1]).unwrap();
        let b = build_block(&alpha, 4, 2, DEFAULT_ZERO_TOL).unwrap();
        let printed = &reference_fixtures(4, 2).unwrap()[1].1;
        assert!(sign_conjugation(&b.generators, printed, 1e-10).unwrap().is_some());
    }
}
