use alloc::vec::Vec;

use super::fidelity::FidelityVector;
use super::support::{Membership, NPointConvention, Region};
use crate::error::Result;
use crate::irreps::Decomposition;
use crate::oracle::{singlet_fractions, special_state, SpecialState};

/// Membership of one point under one N-point convention.
#[derive(Clone, Debug, PartialEq)]
pub struct ConventionVerdict {
    pub convention: NPointConvention,
    pub verdict: Membership,
    pub margin: f64,
}

/// Where the oracle's constant (input-discarding) channel lands relative to
/// the region under each N-point convention.
pub fn constant_channel_report(dec: &Decomposition, tol: f64) -> Result<(FidelityVector, Vec<ConventionVerdict>)> {
    let rho = special_state(SpecialState::Constant, dec.n, dec.d)?;
    let point = singlet_fractions(&rho)?;
    let verdicts = NPointConvention::ALL
        .into_iter()
        .map(|convention| {
            let r = Region::with_convention(dec, convention).membership(&point, tol)?;
            Ok(ConventionVerdict { convention, verdict: r.verdict, margin: r.margin })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((point, verdicts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::irreps::{decompose, DEFAULT_ZERO_TOL};

    #[test]
    fn constant_point_and_product_convention() {
        for d in 2..=4 {
            let dec = decompose(3, d, DEFAULT_ZERO_TOL).unwrap();
            let (p, verdicts) = constant_channel_report(&dec, 1e-9).unwrap();
            let expected = 1.0 / (d * d) as f64;
            assert!(p.values().iter().all(|v| (v - expected).abs() < 1e-12));
            let product = verdicts.iter().find(|v| v.convention == NPointConvention::OneOverDSquared).unwrap();
            assert!(product.verdict.is_contained());
        }
    }

    #[test]
    fn one_over_d_convention_excludes_constant_point_for_large_d() {
        let dec = decompose(3, 4, DEFAULT_ZERO_TOL).unwrap();
        let (_, verdicts) = constant_channel_report(&dec, 1e-9).unwrap();
        let default = verdicts.iter().find(|v| v.convention == NPointConvention::OneOverD).unwrap();
        assert_eq!(default.verdict, Membership::Outside);
        assert!(default.margin < 0.0);
    }
}
