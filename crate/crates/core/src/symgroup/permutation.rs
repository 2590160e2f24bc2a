use alloc::vec::Vec;
use core::fmt;

use crate::error::{invalid, Result};

/// A permutation of `{1, ..., m}` in one-line notation.
///
/// Products compose right to left: `p.compose(&q)` maps `x` to `p(q(x))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    // 0-based images
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(m: usize) -> Self {
        Permutation { images: (0..m).collect() }
    }

    /// Builds a permutation from 1-based one-line notation.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let m = images.len();
        let mut seen = alloc::vec![false; m];
        let mut zero_based = Vec::with_capacity(m);
        for &x in images {
            if x == 0 || x > m || seen[x - 1] {
                return Err(invalid!("not a permutation of 1..{}: {:?}", m, images));
            }
            seen[x - 1] = true;
            zero_based.push(x - 1);
        }
        Ok(Permutation { images: zero_based })
    }

    /// The transposition `(a b)` on `{1..m}`; `(a a)` is the identity.
    pub fn transposition(m: usize, a: usize, b: usize) -> Result<Self> {
        if a == 0 || b == 0 || a > m || b > m {
            return Err(invalid!("transposition ({} {}) out of range 1..{}", a, b, m));
        }
        let mut p = Self::identity(m);
        p.images.swap(a - 1, b - 1);
        Ok(p)
    }

    /// Builds a permutation from 0-based images without validation.
    pub(crate) fn from_zero_based(images: Vec<usize>) -> Self {
        debug_assert!({
            let mut sorted = images.clone();
            sorted.sort_unstable();
            sorted.iter().enumerate().all(|(i, &x)| i == x)
        });
        Permutation { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based point `x`.
    pub fn apply(&self, x: usize) -> usize {
        self.images[x - 1] + 1
    }

    /// One-line notation, 1-based.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self ∘ other`. Both must have the same degree.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "composing permutations of different degree");
        Permutation {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = alloc::vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { images: inv }
    }

    /// The same permutation acting on `{1..m}` with `m >= degree`, fixing the new points.
    pub fn extend(&self, m: usize) -> Permutation {
        assert!(m >= self.degree());
        let mut images = self.images.clone();
        images.extend(self.degree()..m);
        Permutation { images }
    }

    /// Restriction to `{1..m}`; `None` unless every point above `m` is fixed.
    pub fn restrict(&self, m: usize) -> Option<Permutation> {
        if m > self.degree() || (m..self.degree()).any(|i| self.images[i] != i) {
            return None;
        }
        Some(Permutation { images: self.images[..m].to_vec() })
    }

    /// Word in adjacent transpositions: returns `[i_1, ..., i_k]` (1-based) with
    /// `self = s_{i_1} s_{i_2} ... s_{i_k}` and `s_i = (i, i+1)`.
    ///
    /// Obtained by bubble sort, so `k` is the inversion number.
    pub fn adjacent_word(&self) -> Vec<usize> {
        // Sorting the one-line array by swapping positions j, j+1 multiplies by
        // s_j on the right; self * s_{j_1} ... s_{j_k} = id.
        let mut work = self.images.clone();
        let mut swaps = Vec::new();
        let m = work.len();
        for pass in 0..m {
            let mut changed = false;
            for j in 0..m.saturating_sub(1 + pass) {
                if work[j] > work[j + 1] {
                    work.swap(j, j + 1);
                    swaps.push(j + 1);
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        swaps.reverse();
        swaps
    }

    pub fn sign(&self) -> i32 {
        if self.adjacent_word().len().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", x + 1)?;
        }
        write!(f, "]")
    }
}
