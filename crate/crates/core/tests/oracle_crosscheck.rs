use nalgebra::{Complex, DMatrix};
use ptclone_core::irreps::{decompose, DEFAULT_ZERO_TOL};
use ptclone_core::oracle::{
    choi_state, full_vs_block_spectrum, haar_isometry, singlet_fractions, singlet_fractions_with, special_state, ChannelSample, GaussianRng,
    PsiPlusNorm, SpecialState,
};
use ptclone_core::regions::{n_point, Membership, NPointConvention, Region};

#[test]
fn haar_channels_never_exceed_the_support_function() {
    for (n, d) in [(3, 2), (3, 3), (4, 2)] {
        let dec = decompose(n, d, DEFAULT_ZERO_TOL).unwrap();
        let region = Region::with_convention(&dec, NPointConvention::Zero);
        let points: Vec<_> = (0..200u64)
            .map(|s| singlet_fractions(&choi_state(&haar_isometry(d, n - 1, s).unwrap()).unwrap()).unwrap())
            .collect();
        let mut rng = GaussianRng::new(77);
        for _ in 0..50 {
            let w = rng.normal_vector(n - 1);
            let h = region.support(&w).unwrap();
            assert!(points.iter().all(|p| p.dot(&w) <= h + 1e-10));
        }
    }
}

#[test]
fn haar_channels_lie_in_the_zero_convention_region() {
    for (n, d) in [(3, 3), (4, 3)] {
        let dec = decompose(n, d, DEFAULT_ZERO_TOL).unwrap();
        let region = Region::with_convention(&dec, NPointConvention::Zero);
        for seed in 0..100u64 {
            let f = singlet_fractions(&choi_state(&haar_isometry(d, n - 1, seed).unwrap()).unwrap()).unwrap();
            assert!(region.membership(&f, 1e-9).unwrap().verdict.is_contained(), "n={} d={} seed={}", n, d, seed);
        }
    }
}

#[test]
fn pauli_channel_leaves_the_default_region() {
    // Clone 2 receives Y|psi>, clone 3 receives |0>.
    let i = Complex::new(0.0, 1.0);
    let mut w = DMatrix::<Complex<f64>>::zeros(4, 2);
    w[(2, 0)] = i;
    w[(0, 1)] = -i;
    let ch = ChannelSample::from_isometry(w, 2, 2).unwrap();
    let f = singlet_fractions(&choi_state(&ch).unwrap()).unwrap();
    assert!(f.values()[0].abs() < 1e-12 && (f.values()[1] - 0.25).abs() < 1e-12);
    let dec = decompose(3, 2, DEFAULT_ZERO_TOL).unwrap();
    assert_eq!(Region::new(&dec).membership(&f, 1e-9).unwrap().verdict, Membership::Outside);
    assert!(Region::with_convention(&dec, NPointConvention::Zero).membership(&f, 1e-9).unwrap().verdict.is_contained());
}

#[test]
fn normalisation_conventions_differ_by_d() {
    for d in 2..=3 {
        let rho = special_state(SpecialState::Constant, 3, d).unwrap();
        let unit = singlet_fractions_with(&rho, PsiPlusNorm::Unit).unwrap();
        let raw = singlet_fractions_with(&rho, PsiPlusNorm::Unnormalized).unwrap();
        for (u, r) in unit.iter().zip(&raw) {
            assert!((r - d as f64 * u).abs() < 1e-12);
            assert!((u - 1.0 / (d * d) as f64).abs() < 1e-12);
        }
    }
}

#[test]
fn classical_clone_is_the_n_point() {
    for (n, d) in [(3, 5), (5, 2)] {
        let f = singlet_fractions(&special_state(SpecialState::ClassicalClone, n, d).unwrap()).unwrap();
        let p = n_point(n, d).unwrap();
        assert!(f.values().iter().zip(p.values()).all(|(a, b)| (a - b).abs() < 1e-12));
    }
}

#[test]
fn spectrum_oracle_five_qubits() {
    let dec = decompose(5, 2, DEFAULT_ZERO_TOL).unwrap();
    let mut rng = GaussianRng::new(4);
    for _ in 0..5 {
        let rep = full_vs_block_spectrum(&dec, &rng.normal_vector(4), 1e-8).unwrap();
        assert!(rep.passed(), "gap {}", rep.max_abs_gap);
    }
}
