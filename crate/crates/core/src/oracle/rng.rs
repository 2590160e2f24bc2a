use alloc::vec::Vec;
use core::f64::consts::PI;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::symgroup::Permutation;

/// Seeded source of uniforms and standard normals.
///
/// Uniforms come from ChaCha8 (`seed_from_u64`), 53 bits per draw; normals
/// use the Box-Muller transform and return both values of each pair.
#[derive(Clone, Debug)]
pub struct GaussianRng {
    inner: ChaCha8Rng,
    spare: Option<f64>,
}

impl GaussianRng {
    pub fn new(seed: u64) -> Self {
        GaussianRng {
            inner: ChaCha8Rng::seed_from_u64(seed),
            spare: None,
        }
    }

    /// Uniform in `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        (self.inner.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn normal(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        let u1 = 1.0 - self.uniform(); // (0, 1]
        let u2 = self.uniform();
        let radius = libm::sqrt(-2.0 * libm::log(u1));
        let angle = 2.0 * PI * u2;
        self.spare = Some(radius * libm::sin(angle));
        radius * libm::cos(angle)
    }

    pub fn below(&mut self, bound: usize) -> usize {
        (self.uniform() * bound as f64) as usize % bound.max(1)
    }

    /// Uniformly random permutation of `{1..m}` (Fisher-Yates).
    pub fn permutation(&mut self, m: usize) -> Permutation {
        let mut images: Vec<usize> = (0..m).collect();
        for i in (1..m).rev() {
            let j = self.below(i + 1);
            images.swap(i, j);
        }
        Permutation::from_zero_based(images)
    }

    /// Standard normal vector of length `len`.
    pub fn normal_vector(&mut self, len: usize) -> Vec<f64> {
        (0..len).map(|_| self.normal()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible() {
        let a: Vec<f64> = {
            let mut r = GaussianRng::new(7);
            (0..10).map(|_| r.normal()).collect()
        };
        let b: Vec<f64> = {
            let mut r = GaussianRng::new(7);
            (0..10).map(|_| r.normal()).collect()
        };
        assert_eq!(a, b);
        let mut c = GaussianRng::new(8);
        assert_ne!(a[0], c.normal());
    }

    #[test]
    fn moments() {
        let mut r = GaussianRng::new(1);
        let xs: Vec<f64> = (0..200_000).map(|_| r.normal()).collect();
        let mean = xs.iter().sum::<f64>() / xs.len() as f64;
        let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / xs.len() as f64;
        assert!(mean.abs() < 0.01);
        assert!((var - 1.0).abs() < 0.01);
    }
}
