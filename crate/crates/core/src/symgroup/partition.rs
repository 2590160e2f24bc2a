use alloc::vec::Vec;
use core::fmt;

use crate::error::{invalid, Result};

/// An integer partition `(p_1 >= p_2 >= ... >= p_k > 0)`.
///
/// Partitions label the irreducible representations of symmetric groups.
/// The derived ordering is lexicographic on the parts; the canonical order
/// used everywhere in this crate is the reverse of it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<usize>);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PartitionStats {
    pub height: usize,
    pub dimension: u64,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(invalid!("a partition needs at least one part"));
        }
        if parts.contains(&0) {
            return Err(invalid!("partition parts must be positive: {:?}", parts));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(invalid!("partition parts must be weakly decreasing: {:?}", parts));
        }
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Number of rows of the Young diagram.
    pub fn height(&self) -> usize {
        self.0.len()
    }

    /// Hook length of the box in row `row`, column `col` (both 0-based).
    fn hook(&self, row: usize, col: usize) -> usize {
        let arm = self.0[row] - col - 1;
        let leg = self.0[row + 1..].iter().take_while(|&&p| p > col).count();
        arm + leg + 1
    }

    /// Dimension of the irreducible representation, `m! / prod(hooks)`.
    pub fn dimension(&self) -> u64 {
        let m = self.size();
        let mut hooks: Vec<u128> = Vec::with_capacity(m);
        for (row, &len) in self.0.iter().enumerate() {
            for col in 0..len {
                hooks.push(self.hook(row, col) as u128);
            }
        }
        // Interleave the division with the factorial so intermediates stay small.
        let mut numer: u128 = (1..=m as u128).product();
        for h in hooks {
            debug_assert_eq!(numer % h, 0);
            numer /= h;
        }
        numer as u64
    }

    /// Content (column minus row, 0-based) of every box, row by row.
    pub fn contents(&self) -> Vec<i64> {
        let mut out = Vec::with_capacity(self.size());
        for (row, &len) in self.0.iter().enumerate() {
            for col in 0..len {
                out.push(col as i64 - row as i64);
            }
        }
        out
    }

    /// All partitions obtained by adding one box, in canonical order.
    pub fn branch_up(&self) -> Vec<Partition> {
        self.addable_rows()
            .map(|row| {
                let mut parts = self.0.clone();
                if row == parts.len() {
                    parts.push(1);
                } else {
                    parts[row] += 1;
                }
                Partition(parts)
            })
            .collect()
    }

    /// Content of the single box by which `larger` extends `self`, if it does.
    pub fn added_box_content(&self, larger: &Partition) -> Option<i64> {
        if larger.size() != self.size() + 1 || larger.height() < self.height() {
            return None;
        }
        let mut added = None;
        for row in 0..larger.height() {
            let old = self.0.get(row).copied().unwrap_or(0);
            let new = larger.0[row];
            match new.checked_sub(old) {
                Some(0) => {}
                Some(1) if added.is_none() => added = Some(old as i64 - row as i64),
                _ => return None,
            }
        }
        added
    }

    fn addable_rows(&self) -> impl Iterator<Item = usize> + '_ {
        (0..=self.0.len()).filter(move |&row| row == 0 || row == self.0.len() || self.0[row - 1] > self.0[row])
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", p)?;
        }
        write!(f, ")")
    }
}

pub fn partition_stats(alpha: &Partition) -> PartitionStats {
    PartitionStats {
        height: alpha.height(),
        dimension: alpha.dimension(),
    }
}

/// All partitions of `m` in reverse-lexicographic order, `(m)` first.
pub fn partitions_of(m: usize) -> Result<Vec<Partition>> {
    if m == 0 {
        return Err(invalid!("partitions_of requires m >= 1"));
    }
    let mut out = Vec::new();
    let mut current = alloc::vec![m];
    loop {
        out.push(Partition(current.clone()));
        // Rightmost part greater than one; everything after it is ones.
        let Some(pos) = current.iter().rposition(|&p| p > 1) else {
            break;
        };
        let rest: usize = current[pos..].iter().sum();
        let head = current[pos] - 1;
        current.truncate(pos);
        let mut remaining = rest;
        while remaining > 0 {
            let part = head.min(remaining);
            current.push(part);
            remaining -= part;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    // Independent enumeration: all weakly decreasing sequences with parts <= max.
    fn brute_partitions(m: usize, max: usize) -> Vec<Vec<usize>> {
        if m == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for first in (1..=max.min(m)).rev() {
            for mut tail in brute_partitions(m - first, first) {
                tail.insert(0, first);
                out.push(tail);
            }
        }
        out
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(partitions_of(1).unwrap(), vec![p(&[1])]);
        assert_eq!(partitions_of(2).unwrap(), vec![p(&[2]), p(&[1, 1])]);
        assert_eq!(partitions_of(4).unwrap().len(), 5);
        assert!(partitions_of(0).is_err());
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for m in 1..=9 {
            let got: Vec<Vec<usize>> = partitions_of(m).unwrap().into_iter().map(|q| q.0).collect();
            assert_eq!(got, brute_partitions(m, m), "m = {}", m);
        }
    }

    #[test]
    fn stats() {
        assert_eq!(partition_stats(&p(&[2])), PartitionStats { height: 1, dimension: 1 });
        assert_eq!(partition_stats(&p(&[1, 1])), PartitionStats { height: 2, dimension: 1 });
        assert_eq!(partition_stats(&p(&[2, 1])), PartitionStats { height: 2, dimension: 2 });
        assert_eq!(p(&[3, 2]).dimension(), 5);
        assert_eq!(p(&[4, 2, 1, 1]).dimension(), 90);
    }

    #[test]
    fn sum_of_squared_dimensions_is_group_order() {
        for m in 1..=8u64 {
            let total: u64 = partitions_of(m as usize).unwrap().iter().map(|q| q.dimension().pow(2)).sum();
            assert_eq!(total, (1..=m).product::<u64>());
        }
    }

    #[test]
    fn branching() {
        assert_eq!(p(&[1]).branch_up(), vec![p(&[2]), p(&[1, 1])]);
        assert_eq!(p(&[2]).branch_up(), vec![p(&[3]), p(&[2, 1])]);
        assert_eq!(p(&[1, 1]).branch_up(), vec![p(&[2, 1]), p(&[1, 1, 1])]);
        assert_eq!(p(&[2, 2]).branch_up(), vec![p(&[3, 2]), p(&[2, 2, 1])]);
    }

    #[test]
    fn branching_dimensions_match_induction() {
        for m in 1..=5 {
            for alpha in partitions_of(m).unwrap() {
                let total: u64 = alpha.branch_up().iter().map(Partition::dimension).sum();
                assert_eq!(total, (m as u64 + 1) * alpha.dimension(), "alpha = {}", alpha);
            }
        }
    }

    #[test]
    fn added_box_contents() {
        let one = p(&[1]);
        assert_eq!(one.added_box_content(&p(&[2])), Some(1));
        assert_eq!(one.added_box_content(&p(&[1, 1])), Some(-1));
        assert_eq!(p(&[2]).added_box_content(&p(&[2, 1])), Some(-1));
        assert_eq!(p(&[2]).added_box_content(&p(&[1, 1, 1])), None);
    }

    #[test]
    fn rejects_bad_parts() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert!(Partition::new(vec![]).is_err());
    }
}
