//! Floating-point checks of growth laws, residues and special values.
//!
//! This is the only module that leaves exact arithmetic. Sums use
//! compensated (Neumaier) accumulation in a fixed order.

use std::f64::consts::{PI, SQRT_2};
use std::fmt;
use std::str::FromStr;

use crate::counting::{closed_form_series, TargetId};
use crate::dirichlet::CoeffSeq;
use crate::error::{Error, Result};
use crate::quadratic::RingId;

/// Neumaier's compensated sum.
#[derive(Debug, Default, Clone, Copy)]
pub struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl FromIterator<f64> for KahanSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = KahanSum::default();
        for x in iter {
            s.add(x);
        }
        s
    }
}

fn log_tau() -> f64 {
    ((1.0 + 5f64.sqrt()) / 2.0).ln()
}

fn log_silver() -> f64 {
    (1.0 + SQRT_2).ln()
}

/// Named constants with closed forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConstantName {
    ResidueDedekindTau,
    ResidueDedekindSqrt2,
    SlopeAJ,
    SlopeAI,
    SlopeAK,
    CJ,
    CZ4,
    SlopeFI,
    SlopeFK,
    Zeta2,
    Zeta4,
    DedekindTau2,
    DedekindTau4,
    DedekindSqrt2At2,
    DedekindSqrt2At4,
}

impl ConstantName {
    pub const ALL: [ConstantName; 15] = [
        ConstantName::ResidueDedekindTau,
        ConstantName::ResidueDedekindSqrt2,
        ConstantName::SlopeAJ,
        ConstantName::SlopeAI,
        ConstantName::SlopeAK,
        ConstantName::CJ,
        ConstantName::CZ4,
        ConstantName::SlopeFI,
        ConstantName::SlopeFK,
        ConstantName::Zeta2,
        ConstantName::Zeta4,
        ConstantName::DedekindTau2,
        ConstantName::DedekindTau4,
        ConstantName::DedekindSqrt2At2,
        ConstantName::DedekindSqrt2At4,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ConstantName::ResidueDedekindTau => "residue_dedekind_tau",
            ConstantName::ResidueDedekindSqrt2 => "residue_dedekind_sqrt2",
            ConstantName::SlopeAJ => "slope_a_j",
            ConstantName::SlopeAI => "slope_a_i",
            ConstantName::SlopeAK => "slope_a_k",
            ConstantName::CJ => "C_J",
            ConstantName::CZ4 => "C_Z4",
            ConstantName::SlopeFI => "slope_f_i",
            ConstantName::SlopeFK => "slope_f_k",
            ConstantName::Zeta2 => "zeta_2",
            ConstantName::Zeta4 => "zeta_4",
            ConstantName::DedekindTau2 => "dedekind_tau_2",
            ConstantName::DedekindTau4 => "dedekind_tau_4",
            ConstantName::DedekindSqrt2At2 => "dedekind_sqrt2_2",
            ConstantName::DedekindSqrt2At4 => "dedekind_sqrt2_4",
        }
    }

    /// The closed form, written out.
    pub fn formula(self) -> &'static str {
        match self {
            ConstantName::ResidueDedekindTau => "2 log(tau) / sqrt(5)",
            ConstantName::ResidueDedekindSqrt2 => "log(1+sqrt(2)) / sqrt(2)",
            ConstantName::SlopeAJ => "pi^2 / 24",
            ConstantName::SlopeAI => "2 pi^4 log(tau) / 375",
            ConstantName::SlopeAK => "pi^4 log(1+sqrt(2)) / 192",
            ConstantName::CJ => "1/4",
            ConstantName::CZ4 => "3/8",
            ConstantName::SlopeFI => "6 log(tau)^2 / (5 sqrt(5))",
            ConstantName::SlopeFK => "15 log(1+sqrt(2))^2 / (22 sqrt(2))",
            ConstantName::Zeta2 => "pi^2 / 6",
            ConstantName::Zeta4 => "pi^4 / 90",
            ConstantName::DedekindTau2 => "2 pi^4 / (75 sqrt(5))",
            ConstantName::DedekindTau4 => "4 pi^8 / (16875 sqrt(5))",
            ConstantName::DedekindSqrt2At2 => "pi^4 / (48 sqrt(2))",
            ConstantName::DedekindSqrt2At4 => "11 pi^8 / (69120 sqrt(2))",
        }
    }

    /// `(ring, s)` for the special-value constants.
    fn special_value(self) -> Option<(RingId, u32)> {
        match self {
            ConstantName::Zeta2 => Some((RingId::RationalInt, 2)),
            ConstantName::Zeta4 => Some((RingId::RationalInt, 4)),
            ConstantName::DedekindTau2 => Some((RingId::GoldenInt, 2)),
            ConstantName::DedekindTau4 => Some((RingId::GoldenInt, 4)),
            ConstantName::DedekindSqrt2At2 => Some((RingId::Sqrt2Int, 2)),
            ConstantName::DedekindSqrt2At4 => Some((RingId::Sqrt2Int, 4)),
            _ => None,
        }
    }
}

impl fmt::Display for ConstantName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ConstantName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ConstantName::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::UnknownConstant(s.to_string()))
    }
}

/// Closed-form value of a constant.
pub fn target_constant(name: ConstantName) -> f64 {
    let s5 = 5f64.sqrt();
    match name {
        ConstantName::ResidueDedekindTau => 2.0 * log_tau() / s5,
        ConstantName::ResidueDedekindSqrt2 => log_silver() / SQRT_2,
        ConstantName::SlopeAJ => PI * PI / 24.0,
        ConstantName::SlopeAI => 2.0 * PI.powi(4) * log_tau() / 375.0,
        ConstantName::SlopeAK => PI.powi(4) * log_silver() / 192.0,
        ConstantName::CJ => 0.25,
        ConstantName::CZ4 => 0.375,
        ConstantName::SlopeFI => 6.0 * log_tau().powi(2) / (5.0 * s5),
        ConstantName::SlopeFK => 15.0 * log_silver().powi(2) / (22.0 * SQRT_2),
        ConstantName::Zeta2 => PI * PI / 6.0,
        ConstantName::Zeta4 => PI.powi(4) / 90.0,
        ConstantName::DedekindTau2 => 2.0 * PI.powi(4) / (75.0 * s5),
        ConstantName::DedekindTau4 => 4.0 * PI.powi(8) / (16875.0 * s5),
        ConstantName::DedekindSqrt2At2 => PI.powi(4) / (48.0 * SQRT_2),
        ConstantName::DedekindSqrt2At4 => 11.0 * PI.powi(8) / (69120.0 * SQRT_2),
    }
}

/// Look a constant up by its name.
pub fn target_constant_by_name(name: &str) -> Result<f64> {
    Ok(target_constant(name.parse()?))
}

/// `A(x) ~ C·x^α·(log x)^n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthModel {
    pub alpha: f64,
    pub logpower: u32,
    pub constant: Option<f64>,
}

impl GrowthModel {
    pub fn new(alpha: f64, logpower: u32) -> Self {
        GrowthModel {
            alpha,
            logpower,
            constant: None,
        }
    }

    fn scale_at(&self, x: usize) -> Result<f64> {
        let xf = x as f64;
        let d = xf.powf(self.alpha) * xf.ln().powi(self.logpower as i32);
        if d == 0.0 || !d.is_finite() {
            return Err(Error::DegenerateModel(xf));
        }
        Ok(d)
    }
}

/// `A(N)/(N^α·log^n N)` at `N`, `N/2` and `N/4`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub n: usize,
    pub value: f64,
    pub at_half: f64,
    pub at_quarter: f64,
}

/// Ratio of the partial sum to the model at the end of the series.
pub fn estimate_constant(a: &CoeffSeq, model: &GrowthModel) -> Result<Estimate> {
    let n = a.len();
    let ratio = |x: usize| -> Result<f64> {
        let d = model.scale_at(x)?;
        let s: KahanSum = a.values()[..x].iter().map(|&v| v as f64).collect();
        Ok(s.value() / d)
    };
    Ok(Estimate {
        n,
        value: ratio(n)?,
        at_half: ratio((n / 2).max(1)).unwrap_or(f64::NAN),
        at_quarter: ratio((n / 4).max(1)).unwrap_or(f64::NAN),
    })
}

/// Real primitive characters of conductor 5 and 8.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Character {
    Chi5,
    Chi8,
}

impl Character {
    pub fn modulus(self) -> usize {
        match self {
            Character::Chi5 => 5,
            Character::Chi8 => 8,
        }
    }

    pub fn value(self, m: usize) -> i32 {
        match (self, m % self.modulus()) {
            (Character::Chi5, 1 | 4) | (Character::Chi8, 1 | 7) => 1,
            (Character::Chi5, 2 | 3) | (Character::Chi8, 3 | 5) => -1,
            _ => 0,
        }
    }
}

pub const L_VALUE_TERMS: usize = 10_000_000;

/// `L(1, χ)` summed over whole periods.
///
/// Both characters are even, so one period contributes `O(k^{-3})` at
/// period `k` and the tail after `K` periods is `O(K^{-2})`, below double
/// precision at the default length.
pub fn l_value_at_one(chi: Character) -> f64 {
    l_value_at_one_with_terms(chi, L_VALUE_TERMS)
}

pub fn l_value_at_one_with_terms(chi: Character, terms: usize) -> f64 {
    let q = chi.modulus();
    let periods = terms / q;
    let mut total = KahanSum::default();
    for k in 0..periods {
        let base = (k * q) as f64;
        let block: f64 = (1..q)
            .map(|r| f64::from(chi.value(r)) / (base + r as f64))
            .sum();
        total.add(block);
    }
    total.value()
}

pub const SPECIAL_VALUE_TERMS: usize = 1_000_000;

/// Result of summing a Dirichlet series at an even integer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpecialValueCheck {
    pub computed: f64,
    pub target: f64,
    pub relative_error: f64,
}

pub fn zeta_special_value_check(name: ConstantName) -> Result<SpecialValueCheck> {
    zeta_special_value_check_with_terms(name, SPECIAL_VALUE_TERMS)
}

/// `Σ_{m ≤ N} a(m)/m^s` plus a tail `ā·N^{1−s}/(s − 1)`, where `ā` is the
/// empirical mean of `a` over `(N/2, N]`.
pub fn zeta_special_value_check_with_terms(name: ConstantName, n: usize) -> Result<SpecialValueCheck> {
    let (ring, s) = name
        .special_value()
        .ok_or_else(|| Error::UnknownConstant(format!("{name} is not a special value")))?;
    if n < 2 {
        return Err(Error::Domain("need at least two terms".into()));
    }
    let target_series = match ring {
        RingId::RationalInt => TargetId::RiemannZ,
        RingId::GoldenInt => TargetId::DedekindTau,
        RingId::Sqrt2Int => TargetId::DedekindSqrt2,
    };
    let coeffs: Vec<f64> = closed_form_series(target_series, n)?
        .values()
        .iter()
        .map(|&a| a as f64)
        .collect();
    let head: KahanSum = coeffs
        .iter()
        .enumerate()
        .map(|(i, &a)| a / ((i + 1) as f64).powi(s as i32))
        .collect();
    let mean = coeffs[n / 2..].iter().copied().collect::<KahanSum>().value() / (n - n / 2) as f64;
    let tail = mean * (n as f64 + 0.5).powi(1 - s as i32) / f64::from(s - 1);
    let computed = head.value() + tail;
    let target = target_constant(name);
    Ok(SpecialValueCheck {
        computed,
        target,
        relative_error: ((computed - target) / target).abs(),
    })
}

/// `(1/N)·Σ_{m ≤ N} a(m)`.
pub fn cesaro_mean(a: &CoeffSeq) -> f64 {
    let s: KahanSum = a.values().iter().map(|&v| v as f64).collect();
    s.value() / a.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants_match_printed_decimals() {
        let close = |c: ConstantName, v: f64| {
            assert!((target_constant(c) - v).abs() < 1e-6, "{c}: {}", target_constant(c));
        };
        close(ConstantName::ResidueDedekindTau, 0.430409);
        close(ConstantName::ResidueDedekindSqrt2, 0.623225);
        close(ConstantName::SlopeAI, 0.249997);
        close(ConstantName::SlopeFI, 0.124271);
        close(ConstantName::SlopeFK, 0.374519);
        assert_eq!(target_constant(ConstantName::CZ4), 0.375);
        assert_eq!(target_constant(ConstantName::CJ), 0.25);
        assert!((target_constant(ConstantName::SlopeAJ) - 0.411234).abs() < 1e-6);
    }

    #[test]
    fn names_round_trip() {
        for c in ConstantName::ALL {
            assert_eq!(c.name().parse::<ConstantName>(), Ok(c));
        }
        assert_eq!(target_constant_by_name("nope"), Err(Error::UnknownConstant("nope".into())));
    }

    #[test]
    fn character_periods_sum_to_zero() {
        for chi in [Character::Chi5, Character::Chi8] {
            let s: i32 = (1..=chi.modulus()).map(|m| chi.value(m)).sum();
            assert_eq!(s, 0);
        }
    }

    #[test]
    fn compensated_sum() {
        let mut s = KahanSum::default();
        for x in [1.0, 1e100, 1.0, -1e100] {
            s.add(x);
        }
        assert_eq!(s.value(), 2.0);
    }

    #[test]
    fn degenerate_model() {
        let a = CoeffSeq::ones(1);
        let m = GrowthModel::new(1.0, 1);
        assert_eq!(estimate_constant(&a, &m), Err(Error::DegenerateModel(1.0)));
    }

    #[test]
    fn epsilon_estimate_vanishes() {
        let m = GrowthModel::new(1.0, 0);
        let small = estimate_constant(&CoeffSeq::epsilon(100), &m).unwrap().value;
        let large = estimate_constant(&CoeffSeq::epsilon(10_000), &m).unwrap().value;
        assert!(large < small && large <= 1e-4);
    }
}
