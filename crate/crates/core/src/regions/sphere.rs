//! Deterministic point sets on real unit spheres.

use alloc::vec::Vec;
use core::f64::consts::PI;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SphereScheme {
    /// Regular grid in the angles for dimensions up to three; higher
    /// dimensions fall back to the low-discrepancy set.
    Grid,
    LowDiscrepancy,
}

impl SphereScheme {
    pub fn default_for(dim: usize) -> Self {
        if dim <= 3 {
            SphereScheme::Grid
        } else {
            SphereScheme::LowDiscrepancy
        }
    }
}

const GOLDEN: f64 = 1.618_033_988_749_895;
const PRIMES: [u64; 24] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89];

fn frac(x: f64) -> f64 {
    x - libm::floor(x)
}

fn halton(mut index: u64, base: u64) -> f64 {
    let mut f = 1.0;
    let mut r = 0.0;
    while index > 0 {
        f /= base as f64;
        r += f * (index % base) as f64;
        index /= base;
    }
    r
}

/// Halton points pushed through Box-Muller and normalised.
fn halton_sphere(dim: usize, count: usize) -> Vec<Vec<f64>> {
    assert!(dim <= PRIMES.len(), "sphere dimension {} too large", dim);
    let pairs = dim.div_ceil(2);
    (1..=count as u64)
        .map(|i| {
            let mut v = Vec::with_capacity(2 * pairs);
            for p in 0..pairs {
                let u1 = halton(i, PRIMES[2 * p]);
                let u2 = halton(i, PRIMES[(2 * p + 1) % PRIMES.len()]);
                let radius = libm::sqrt(-2.0 * libm::log(u1.max(1e-300)));
                v.push(radius * libm::cos(2.0 * PI * u2));
                v.push(radius * libm::sin(2.0 * PI * u2));
            }
            v.truncate(dim);
            normalize(v)
        })
        .collect()
}

fn normalize(mut v: Vec<f64>) -> Vec<f64> {
    let norm = libm::sqrt(v.iter().map(|x| x * x).sum::<f64>());
    if norm == 0.0 {
        v[0] = 1.0;
        return v;
    }
    v.iter_mut().for_each(|x| *x /= norm);
    v
}

fn upper_half(mut v: Vec<f64>) -> Vec<f64> {
    if let Some(first) = v.iter().find(|x| x.abs() > 0.0) {
        if *first < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
    }
    v
}

fn ring_grid(count: usize, polar_extent: f64) -> Vec<Vec<f64>> {
    // Equal-area latitude rings over polar angles [0, polar_extent].
    let area = 2.0 * PI * (1.0 - libm::cos(polar_extent));
    let spacing = libm::sqrt(area / count as f64);
    let rings = libm::ceil(polar_extent / spacing).max(1.0) as usize;
    let mut out = Vec::with_capacity(count + rings);
    for j in 0..rings {
        let theta = (j as f64 + 0.5) * polar_extent / rings as f64;
        let per_ring = libm::round(2.0 * PI * libm::sin(theta) / spacing).max(1.0) as usize;
        for i in 0..per_ring {
            let phi = 2.0 * PI * (i as f64 + 0.5 * (j % 2) as f64) / per_ring as f64;
            out.push(alloc::vec![libm::cos(theta), libm::sin(theta) * libm::cos(phi), libm::sin(theta) * libm::sin(phi)]);
        }
    }
    out
}

/// Unit states for a block of dimension `dim`, one per antipodal pair
/// (`psi` and `-psi` give the same fidelities).
///
/// In dimension 2 exactly `count` states are returned; the three-dimensional
/// grid returns approximately `count`.
pub fn sphere_states(dim: usize, count: usize, scheme: SphereScheme) -> Vec<Vec<f64>> {
    match (dim, scheme) {
        (0, _) => Vec::new(),
        (1, _) => alloc::vec![alloc::vec![1.0]],
        (2, SphereScheme::Grid) => (0..count)
            .map(|i| {
                let t = PI * i as f64 / count as f64;
                alloc::vec![libm::cos(t), libm::sin(t)]
            })
            .collect(),
        (2, SphereScheme::LowDiscrepancy) => (0..count)
            .map(|i| {
                let t = PI * frac(i as f64 * (GOLDEN - 1.0));
                alloc::vec![libm::cos(t), libm::sin(t)]
            })
            .collect(),
        (3, SphereScheme::Grid) => ring_grid(count, PI / 2.0),
        (3, SphereScheme::LowDiscrepancy) => (0..count)
            .map(|i| {
                let z = (i as f64 + 0.5) / count as f64;
                let r = libm::sqrt(1.0 - z * z);
                let phi = 2.0 * PI * frac(i as f64 / GOLDEN);
                alloc::vec![z, r * libm::cos(phi), r * libm::sin(phi)]
            })
            .collect(),
        _ => halton_sphere(dim, count).into_iter().map(upper_half).collect(),
    }
}

/// Directions covering the whole unit sphere in `dim` dimensions.
pub fn direction_set(dim: usize, count: usize) -> Vec<Vec<f64>> {
    match dim {
        0 => Vec::new(),
        1 => alloc::vec![alloc::vec![1.0], alloc::vec![-1.0]],
        2 => (0..count)
            .map(|i| {
                let t = 2.0 * PI * i as f64 / count as f64;
                alloc::vec![libm::cos(t), libm::sin(t)]
            })
            .collect(),
        3 => (0..count)
            .map(|i| {
                let z = 1.0 - 2.0 * (i as f64 + 0.5) / count as f64;
                let r = libm::sqrt((1.0 - z * z).max(0.0));
                let phi = 2.0 * PI * frac(i as f64 / GOLDEN);
                alloc::vec![r * libm::cos(phi), r * libm::sin(phi), z]
            })
            .collect(),
        _ => halton_sphere(dim, count),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(v: &[f64]) -> bool {
        (v.iter().map(|x| x * x).sum::<f64>() - 1.0).abs() < 1e-12
    }

    #[test]
    fn all_points_are_unit() {
        for dim in 1..=6 {
            for scheme in [SphereScheme::Grid, SphereScheme::LowDiscrepancy] {
                let s = sphere_states(dim, 500, scheme);
                assert!(!s.is_empty());
                assert!(s.iter().all(|v| v.len() == dim && unit(v)));
            }
            assert!(direction_set(dim, 300).iter().all(|v| v.len() == dim && unit(v)));
        }
    }

    #[test]
    fn grid_count_is_close_to_request() {
        let n = sphere_states(3, 10_000, SphereScheme::Grid).len();
        assert!((9_000..=11_000).contains(&n), "{}", n);
        assert_eq!(sphere_states(2, 360, SphereScheme::Grid).len(), 360);
    }

    #[test]
    fn deterministic() {
        assert_eq!(sphere_states(5, 100, SphereScheme::LowDiscrepancy), sphere_states(5, 100, SphereScheme::LowDiscrepancy));
    }

    #[test]
    fn directions_are_balanced() {
        for dim in 2..=4 {
            let dirs = direction_set(dim, 4000);
            for c in 0..dim {
                let mean = dirs.iter().map(|v| v[c]).sum::<f64>() / dirs.len() as f64;
                assert!(mean.abs() < 0.02, "dim {} coordinate {} mean {}", dim, c, mean);
            }
        }
    }
}
