//! Numerical checks of the growth constants. Tolerances were fixed after a
//! calibration run and are far wider than the observed errors.

use similitude::asymptotics::{
    cesaro_mean, estimate_constant, l_value_at_one, target_constant, zeta_special_value_check, Character,
    ConstantName, GrowthModel,
};
use similitude::counting::{closed_form_series, TargetId};

#[test]
fn l_values() {
    // observed errors against the printed digits: 6e-8 and 2e-7
    assert!((l_value_at_one(Character::Chi5) - 0.430409).abs() < 1e-5);
    assert!((l_value_at_one(Character::Chi8) - 0.623225).abs() < 1e-5);
    // and against the closed forms: below 1e-11
    for (chi, c) in [(Character::Chi5, ConstantName::ResidueDedekindTau), (Character::Chi8, ConstantName::ResidueDedekindSqrt2)] {
        assert!((l_value_at_one(chi) - target_constant(c)).abs() < 1e-8);
    }
}

#[test]
fn special_values() {
    for c in [
        ConstantName::Zeta2,
        ConstantName::Zeta4,
        ConstantName::DedekindTau2,
        ConstantName::DedekindTau4,
        ConstantName::DedekindSqrt2At2,
        ConstantName::DedekindSqrt2At4,
    ] {
        let check = zeta_special_value_check(c).unwrap();
        assert!(check.relative_error < 1e-6, "{c}: {check:?}");
    }
    assert!(zeta_special_value_check(ConstantName::CJ).is_err());
}

#[test]
fn cesaro_limits() {
    let d = closed_form_series(TargetId::DedekindTau, 1_000_000).unwrap();
    let mean = cesaro_mean(&d);
    let residue = target_constant(ConstantName::ResidueDedekindTau);
    assert!((mean / residue - 1.0).abs() < 0.01, "{mean}");

    let flat = GrowthModel::new(2.0, 0);
    for (t, c) in [(TargetId::ZetaJ, ConstantName::SlopeAJ), (TargetId::ZetaI, ConstantName::SlopeAI), (TargetId::ZetaK, ConstantName::SlopeAK)] {
        let a = closed_form_series(t, 1_000_000).unwrap();
        let e = estimate_constant(&a, &flat).unwrap();
        assert!((e.value / target_constant(c) - 1.0).abs() < 0.02, "{c}: {e:?}");
    }
}

#[test]
fn similarity_constants_approach_from_above() {
    let model = GrowthModel::new(2.0, 1);
    for (t, c) in [
        (TargetId::HurwitzJ, ConstantName::CJ),
        (TargetId::Z4, ConstantName::CZ4),
        (TargetId::IcosianI, ConstantName::SlopeFI),
        (TargetId::CubianK, ConstantName::SlopeFK),
    ] {
        let full = closed_form_series(t, 100_000).unwrap();
        let est: Vec<f64> = [10_000, 30_000, 100_000]
            .iter()
            .map(|&n| estimate_constant(&full.truncate(n), &model).unwrap().value)
            .collect();
        let target = target_constant(c);
        assert!(est.iter().all(|&e| e > target), "{c}: {est:?}");
        assert!(est.windows(2).all(|w| w[1] < w[0]), "{c}: {est:?}");
    }
}
