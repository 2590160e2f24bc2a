use alloc::vec::Vec;

use nalgebra::DMatrix;

use super::operator::check_dense;
use super::pt_transposition;
use crate::error::{invalid, Error, Result};
use crate::irreps::Decomposition;
use crate::linalg::symmetric_eigenvalues;
use crate::symgroup::Partition;

#[derive(Clone, Debug, PartialEq)]
pub struct BlockSpectrum {
    pub alpha: Partition,
    /// Nonzero eigenvalues of `sum_k w_{k-1} B_{k-1}`, descending.
    pub eigenvalues: Vec<f64>,
    /// Multiplicity of the block inside the full space, when determined.
    pub r: Option<usize>,
}

/// Comparison of the full-space spectrum of `sum_k w_{k-1} V^{t_1}(1 k)` with
/// the spectra of the irreducible blocks.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumReport {
    pub w: Vec<f64>,
    /// Nonzero full-space eigenvalues with multiplicity, descending.
    pub full_nonzero: Vec<f64>,
    pub blocks: Vec<BlockSpectrum>,
    /// Largest distance from a distinct eigenvalue on one side to the
    /// nearest eigenvalue on the other.
    pub max_abs_gap: f64,
    /// Whether the sets of distinct nonzero eigenvalues agree to `tol`.
    pub sets_match: bool,
}

impl SpectrumReport {
    pub fn passed(&self) -> bool {
        self.sets_match && self.blocks.iter().all(|b| b.r.is_some())
    }
}

struct Group {
    value: f64,
    count: usize,
}

fn group(values: &[f64], tol: f64) -> Vec<Group> {
    let mut out: Vec<Group> = Vec::new();
    for &v in values {
        match out.last_mut() {
            Some(g) if (g.value - v).abs() <= tol => {
                g.value = (g.value * g.count as f64 + v) / (g.count + 1) as f64;
                g.count += 1;
            }
            _ => out.push(Group { value: v, count: 1 }),
        }
    }
    out
}

pub fn full_vs_block_spectrum(dec: &Decomposition, w: &[f64], tol: f64) -> Result<SpectrumReport> {
    let (n, d) = (dec.n, dec.d);
    if w.len() != n - 1 {
        return Err(invalid!("direction has {} entries, expected {}", w.len(), n - 1));
    }
    if w.iter().all(|&x| x == 0.0) {
        return Err(invalid!("direction must be nonzero"));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(invalid!("tolerance must be positive"));
    }
    let dim = check_dense(n, d)?;
    let scale = w.iter().map(|x| x.abs()).sum::<f64>() * d as f64;
    let thr = tol * scale.max(1.0);

    let mut full = DMatrix::<f64>::zeros(dim, dim);
    for (k, &wk) in (2..=n).zip(w) {
        if wk != 0.0 {
            full += pt_transposition(k, n, d)?.real_part() * wk;
        }
    }
    let full_nonzero: Vec<f64> = symmetric_eigenvalues(&full).into_iter().filter(|v| v.abs() > thr).collect();
    let full_groups = group(&full_nonzero, thr);

    let mut blocks: Vec<BlockSpectrum> = Vec::new();
    let mut block_groups: Vec<Vec<Group>> = Vec::new();
    for b in &dec.blocks {
        let mut sum = DMatrix::<f64>::zeros(b.dim(), b.dim());
        for (g, &wk) in b.generators.iter().zip(w) {
            sum += g * wk;
        }
        let ev: Vec<f64> = symmetric_eigenvalues(&sum).into_iter().filter(|v| v.abs() > thr).collect();
        block_groups.push(group(&ev, thr));
        blocks.push(BlockSpectrum { alpha: b.alpha.clone(), eigenvalues: ev, r: None });
    }

    // Distinct-value matching in both directions.
    let nearest = |v: f64, pool: &mut dyn Iterator<Item = f64>| pool.map(|x| (x - v).abs()).fold(f64::INFINITY, f64::min);
    let mut max_abs_gap: f64 = 0.0;
    for g in &full_groups {
        let gap = nearest(g.value, &mut block_groups.iter().flatten().map(|b| b.value));
        max_abs_gap = max_abs_gap.max(gap);
    }
    for g in block_groups.iter().flatten() {
        let gap = nearest(g.value, &mut full_groups.iter().map(|f| f.value));
        max_abs_gap = max_abs_gap.max(gap);
    }
    let sets_match = max_abs_gap <= thr;

    if sets_match {
        // contributions[f] = (block index, block multiplicity) for full group f
        let contributions: Vec<Vec<(usize, usize)>> = full_groups
            .iter()
            .map(|f| {
                block_groups
                    .iter()
                    .enumerate()
                    .filter_map(|(bi, gs)| gs.iter().find(|g| (g.value - f.value).abs() <= thr).map(|g| (bi, g.count)))
                    .collect()
            })
            .collect();
        let mut r: Vec<Option<usize>> = alloc::vec![None; blocks.len()];
        loop {
            let mut progress = false;
            for (f, contrib) in full_groups.iter().zip(&contributions) {
                let unknown: Vec<&(usize, usize)> = contrib.iter().filter(|(bi, _)| r[*bi].is_none()).collect();
                if unknown.len() != 1 {
                    continue;
                }
                let (bi, mult) = *unknown[0];
                let known: usize = contrib.iter().filter_map(|(bj, m)| r[*bj].map(|x| x * m)).sum();
                let remaining = f.count as i64 - known as i64;
                if remaining <= 0 || remaining % mult as i64 != 0 {
                    return Err(Error::Inconsistency(alloc::format!(
                        "block {} has multiplicity ratio {}/{} at eigenvalue {}",
                        blocks[bi].alpha,
                        remaining,
                        mult,
                        f.value
                    )));
                }
                r[bi] = Some((remaining / mult as i64) as usize);
                progress = true;
            }
            if !progress {
                break;
            }
        }
        for (f, contrib) in full_groups.iter().zip(&contributions) {
            if contrib.iter().all(|(bi, _)| r[*bi].is_some()) {
                let total: usize = contrib.iter().map(|(bi, m)| r[*bi].unwrap() * m).sum();
                if total != f.count {
                    return Err(Error::Inconsistency(alloc::format!(
                        "eigenvalue {} appears {} times in the full space but the blocks account for {}",
                        f.value,
                        f.count,
                        total
                    )));
                }
            }
        }
        for (b, ri) in blocks.iter_mut().zip(r) {
            b.r = ri;
        }
    }

    Ok(SpectrumReport {
        w: w.to_vec(),
        full_nonzero,
        blocks,
        max_abs_gap,
        sets_match,
    })
}
