use ptclone_core::irreps::{decompose, Decomposition, DEFAULT_ZERO_TOL};
use ptclone_core::regions::{
    build_hull, constrained_max, membership, sample_block_region, symmetric_max, FidelityVector, LinearConstraint, Membership, SphereScheme,
};

fn dec(n: usize, d: usize) -> Decomposition {
    decompose(n, d, DEFAULT_ZERO_TOL).unwrap()
}

fn relative_change(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs())
}

#[test]
fn two_clone_hull_volume_converges() {
    for d in 2..=5 {
        let dec = dec(3, d);
        let v1 = build_hull(&dec, 10_000).unwrap().volume();
        let v2 = build_hull(&dec, 20_000).unwrap().volume();
        assert!(relative_change(v1, v2) < 1e-4, "d={}: {} vs {}", d, v1, v2);
    }
}

#[test]
fn three_clone_hull_volume_converges() {
    for d in [2, 3] {
        let dec = dec(4, d);
        let v1 = build_hull(&dec, 100_000).unwrap().volume();
        let v2 = build_hull(&dec, 200_000).unwrap().volume();
        assert!(relative_change(v1, v2) < 1e-4, "d={}: {} vs {}", d, v1, v2);
    }
}

#[test]
fn hull_invariants_at_default_sizes() {
    for (n, d, samples) in [(3, 2, 10_000), (3, 4, 10_000), (4, 2, 100_000), (4, 3, 100_000)] {
        let hull = build_hull(&dec(n, d), samples).unwrap();
        for f in &hull.facets {
            assert!((f.normal.iter().map(|x| x * x).sum::<f64>() - 1.0).abs() < 1e-12);
        }
        assert!(hull.is_locally_convex(1e-10), "n={} d={}", n, d);
        for f in hull.facets.iter().step_by(101) {
            assert!(hull.vertices.iter().all(|v| f.excess(v.values()) <= 1e-10), "n={} d={}", n, d);
        }
        assert_eq!(hull.vertices.len(), hull.sources.len());
    }
}

#[test]
fn hull_vertices_are_region_members() {
    let dec = dec(4, 2);
    let hull = build_hull(&dec, 5_000).unwrap();
    for v in hull.vertices.iter().step_by(17) {
        assert!(membership(&dec, v, 1e-9).unwrap().verdict.is_contained());
    }
}

#[test]
fn exact_membership_agrees_with_fine_hull() {
    // Points well away from the boundary get the same answer from both tests.
    let dec = dec(3, 3);
    let hull = build_hull(&dec, 20_000).unwrap();
    let mut agree = 0;
    for i in 0..=20 {
        for j in 0..=20 {
            let p = FidelityVector::new(vec![i as f64 / 20.0, j as f64 / 20.0]).unwrap();
            let exact = membership(&dec, &p, 1e-9).unwrap();
            if exact.margin.abs() < 1e-4 {
                continue;
            }
            assert_eq!(exact.verdict == Membership::Inside, hull.contains(p.values(), 0.0), "{:?}", p.values());
            agree += 1;
        }
    }
    assert!(agree > 400);
}

/// `max <c, F>` subject to `<a, F> = 0` by duality: `min_mu max_F <c - mu a, F>`,
/// with the inner maximum taken over dense block samples and the N-point.
fn dual_sampling_oracle(dec: &Decomposition, c: &[f64], a: &[f64], samples: usize) -> f64 {
    let mut points: Vec<Vec<f64>> = dec
        .blocks
        .iter()
        .flat_map(|b| sample_block_region(b, samples, SphereScheme::LowDiscrepancy).unwrap().points)
        .map(|p| p.values().to_vec())
        .collect();
    points.push(vec![1.0 / dec.d as f64; dec.n - 1]);
    let h = |mu: f64| {
        points
            .iter()
            .map(|p| p.iter().zip(c.iter().zip(a)).map(|(x, (ci, ai))| x * (ci - mu * ai)).sum::<f64>())
            .fold(f64::NEG_INFINITY, f64::max)
    };
    // h is convex in mu; golden-section search.
    let (mut lo, mut hi) = (-10.0, 10.0);
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let (mut x1, mut x2) = (hi - g * (hi - lo), lo + g * (hi - lo));
    let (mut f1, mut f2) = (h(x1), h(x2));
    while hi - lo > 1e-9 {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = h(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = h(x2);
        }
    }
    h(0.5 * (lo + hi))
}

#[test]
fn constrained_max_three_clones_matches_dual_oracle() {
    let dec = dec(4, 3);
    let hull = build_hull(&dec, 100_000).unwrap();
    let a = [1.0, 1.0, -2.0];
    let c = [1.0, 0.0, 0.0];
    let opt = constrained_max(&hull, &c, &[LinearConstraint::new(a.to_vec(), 0.0)], 1e-9).unwrap();
    let p = opt.point.values();
    assert!((p[0] + p[1] - 2.0 * p[2]).abs() < 1e-9);
    assert!((opt.value - p[0]).abs() < 1e-12);
    let oracle = dual_sampling_oracle(&dec, &c, &a, 200_000);
    assert!((opt.value - oracle).abs() < 1e-3, "LP {} vs oracle {}", opt.value, oracle);
    assert!(opt.value > symmetric_max(&dec) - 1e-3);
}

#[test]
fn constrained_max_symmetric_line_is_werner() {
    for d in 2..=4 {
        let dec = dec(3, d);
        let hull = build_hull(&dec, 10_000).unwrap();
        let opt = constrained_max(&hull, &[1.0, 0.0], &[LinearConstraint::new(vec![1.0, -1.0], 0.0)], 1e-9).unwrap();
        assert!((opt.value - symmetric_max(&dec)).abs() < 1e-6, "d={}: {}", d, opt.value);
    }
}

#[test]
fn unconstrained_single_clone_reaches_one() {
    for (n, d) in [(3, 3), (4, 2), (4, 3)] {
        let hull = build_hull(&dec(n, d), 20_000).unwrap();
        let mut e = vec![0.0; n - 1];
        e[n - 2] = 1.0;
        let opt = constrained_max(&hull, &e, &[], 1e-9).unwrap();
        assert!((opt.value - 1.0).abs() < 1e-4, "n={} d={}: {}", n, d, opt.value);
    }
}
