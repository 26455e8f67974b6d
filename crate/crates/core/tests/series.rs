//! Coefficient values printed in the paper and the generating-function identities.

use similitude::arith::divisors;
use similitude::counting::{coeff, engine_series, g, series, ssm_count, TargetId};
use similitude::dirichlet::{convolve, dilate, is_multiplicative, partial_sum, shift, CoeffSeq};
use similitude::quadratic::is_representable_index;
use similitude::RingId;

fn at(target: TargetId, pairs: &[(u64, i128)]) {
    let max_m = pairs.iter().map(|&(idx, _)| (idx as f64).sqrt() as usize).max().unwrap();
    let s = series(target, max_m).unwrap();
    for &(index, want) in pairs {
        let m = (index as f64).sqrt().round() as usize;
        assert_eq!(m * m, index as usize);
        assert_eq!(s.get(m), want, "{target} at index {index}");
    }
}

#[test]
fn hurwitz_zeta_and_counts() {
    let z = series(TargetId::ZetaJ, 12).unwrap();
    assert_eq!(z.values(), &[1, 1, 4, 1, 6, 4, 8, 1, 13, 6, 12, 4]);
    let f = series(TargetId::HurwitzJ, 12).unwrap();
    assert_eq!(f.values(), &[1, 1, 8, 1, 12, 8, 16, 1, 41, 12, 24, 8]);
    let f4 = series(TargetId::Z4, 4).unwrap();
    assert_eq!(f4.values(), &[1, 3, 8, 3]);
}

#[test]
fn icosian_values() {
    at(
        TargetId::ZetaI,
        &[(16, 5), (25, 6), (81, 10), (121, 24), (256, 21), (361, 40), (400, 30), (625, 31), (841, 60), (961, 64)],
    );
    at(
        TargetId::IcosianI,
        &[(16, 10), (25, 12), (81, 20), (121, 48), (256, 66), (361, 80), (400, 120), (625, 97), (841, 120), (961, 128)],
    );
}

#[test]
fn cubian_values() {
    at(
        TargetId::ZetaK,
        &[(4, 3), (16, 7), (49, 16), (64, 15), (81, 10), (196, 48), (256, 31), (289, 36), (324, 30), (529, 48), (625, 26)],
    );
    at(
        TargetId::CubianK,
        &[(4, 6), (16, 22), (49, 32), (64, 66), (81, 20), (196, 192), (256, 178), (289, 72), (324, 120), (529, 96), (625, 52)],
    );
}

#[test]
fn dedekind_values() {
    let tau = series(TargetId::DedekindTau, 20).unwrap();
    assert_eq!(tau.get(11), 2);
    assert_eq!(tau.get(4), 1);
    assert_eq!(tau.get(2), 0);
    let s2 = series(TargetId::DedekindSqrt2, 20).unwrap();
    assert_eq!(s2.get(17), 2);
    assert_eq!(s2.get(9), 1);
}

#[test]
fn engine_matches_closed_form_for_all_targets() {
    for t in TargetId::ALL {
        series(t, 10_000).unwrap_or_else(|e| panic!("{t}: {e}"));
    }
}

#[test]
fn engine_examples() {
    // ζ_τ(2s) and ζ_τ(2s − 1) give the coefficient 5 at index 16
    let d = engine_series(TargetId::DedekindTau, 16).unwrap();
    let prod = convolve(&d, &shift(&d).unwrap()).unwrap();
    assert_eq!(prod.get(4), 5);
    let sq = dilate(&CoeffSeq::ones(16), 2);
    assert_eq!(sq.get(4), 1);
    assert_eq!(partial_sum(&series(TargetId::ZetaJ, 10).unwrap(), 10), 45);
}

#[test]
fn hurwitz_zeta_is_the_odd_divisor_sum() {
    let z = series(TargetId::ZetaJ, 10_000).unwrap();
    for m in 1..=10_000u64 {
        let odd: i128 = divisors(m).into_iter().filter(|d| d % 2 == 1).map(i128::from).sum();
        assert_eq!(z.get(m as usize), odd, "m = {m}");
    }
}

#[test]
fn every_target_is_multiplicative() {
    for t in TargetId::ALL {
        let s = series(t, 10_000).unwrap();
        assert!(is_multiplicative(&s), "{t}");
    }
}

#[test]
fn z4_relates_to_hurwitz() {
    for m in 1..=2000u64 {
        let j = ssm_count(TargetId::HurwitzJ, m).unwrap();
        let z = ssm_count(TargetId::Z4, m).unwrap();
        assert_eq!(z, if m % 2 == 0 { 3 * j } else { j });
    }
}

#[test]
fn hurwitz_counts_at_powers_of_two() {
    for r in 0..=20 {
        assert_eq!(ssm_count(TargetId::HurwitzJ, 1 << r), Ok(1));
    }
}

#[test]
fn support_is_the_representable_set() {
    for m in 1..=3000u64 {
        for (t, ring) in [(TargetId::IcosianI, RingId::GoldenInt), (TargetId::CubianK, RingId::Sqrt2Int)] {
            let c = ssm_count(t, m).unwrap();
            assert_eq!(c != 0, is_representable_index(m, ring), "{t} at {m}");
        }
    }
}

#[test]
fn split_primes_are_convolution_squares() {
    for p in (7u64..100).filter(|p| similitude::arith::is_prime(*p)) {
        let r5 = p % 5;
        if r5 == 1 || r5 == 4 {
            let want = 2 * g(p as i128, 0).unwrap() * g(p as i128, 1).unwrap();
            assert_eq!(coeff(TargetId::IcosianI, p), Ok(want), "p = {p}");
        }
    }
}
