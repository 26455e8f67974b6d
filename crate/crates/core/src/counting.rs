//! Closed-form coefficient rules and the generating-function identities that
//! rebuild them from Riemann and Dedekind zeta coefficients.
//!
//! Series for the orders and the SSL/SSM counts are indexed by `m`, the
//! coefficient sitting at index `m²` (so `ζ(2s)` is [`CoeffSeq::ones`] and
//! `ζ(2s − 1)` is its [`shift`]). Riemann and Dedekind series are indexed by
//! the index itself.

use std::fmt;
use std::str::FromStr;

use crate::arith::{checked_pow, factorize};
use crate::dirichlet::{convolve, dilate, dirichlet_inverse, from_multiplicative, shift, CoeffSeq};
use crate::error::{Error, Result};
use crate::order::OrderId;
use crate::quadratic::{prime_class, PrimeClass, RingId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TargetId {
    HurwitzJ,
    Z4,
    IcosianI,
    CubianK,
    ZetaJ,
    ZetaI,
    ZetaK,
    DedekindTau,
    DedekindSqrt2,
    RiemannZ,
}

/// How the position `m` of a series relates to the lattice index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndexKind {
    /// Coefficient of `m^{-s}`.
    M,
    /// Coefficient of `(m²)^{-s}`.
    MSquared,
}

impl IndexKind {
    pub fn index_of(self, m: u64) -> u64 {
        match self {
            IndexKind::M => m,
            IndexKind::MSquared => m * m,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            IndexKind::M => "m",
            IndexKind::MSquared => "m^2",
        }
    }
}

impl TargetId {
    pub const ALL: [TargetId; 10] = [
        TargetId::HurwitzJ,
        TargetId::Z4,
        TargetId::IcosianI,
        TargetId::CubianK,
        TargetId::ZetaJ,
        TargetId::ZetaI,
        TargetId::ZetaK,
        TargetId::DedekindTau,
        TargetId::DedekindSqrt2,
        TargetId::RiemannZ,
    ];

    /// Short name used on the command line.
    pub fn name(self) -> &'static str {
        match self {
            TargetId::HurwitzJ => "f_j",
            TargetId::Z4 => "f_z4",
            TargetId::IcosianI => "f_i",
            TargetId::CubianK => "f_k",
            TargetId::ZetaJ => "zeta_j",
            TargetId::ZetaI => "zeta_i",
            TargetId::ZetaK => "zeta_k",
            TargetId::DedekindTau => "dedekind_tau",
            TargetId::DedekindSqrt2 => "dedekind_sqrt2",
            TargetId::RiemannZ => "riemann",
        }
    }

    pub fn index_kind(self) -> IndexKind {
        match self {
            TargetId::DedekindTau | TargetId::DedekindSqrt2 | TargetId::RiemannZ => IndexKind::M,
            _ => IndexKind::MSquared,
        }
    }

    /// Whether the target counts similarity sublattices or submodules.
    pub fn is_ssm(self) -> bool {
        matches!(self, TargetId::HurwitzJ | TargetId::Z4 | TargetId::IcosianI | TargetId::CubianK)
    }
}

impl fmt::Display for TargetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TargetId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TargetId::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown target `{s}`")))
    }
}

fn ovf<T>(v: Option<T>) -> Result<T> {
    v.ok_or(Error::Overflow("closed-form coefficient"))
}

/// `g(n, r) = (r+1)n^r + 2(1 − (r+1)n^r + r·n^{r+1})/(n−1)²`.
pub fn g(n: i128, r: i64) -> Result<i128> {
    if n <= 1 || r < 0 {
        return Err(Error::Domain(format!("g(n, r) needs n ≥ 2 and r ≥ 0, got ({n}, {r})")));
    }
    let r = r as u32;
    let nr = ovf(checked_pow(n, r))?;
    let r1 = i128::from(r) + 1;
    let lead = ovf(r1.checked_mul(nr))?;
    let inner = ovf(ovf(ovf(i128::from(r).checked_mul(nr))?.checked_mul(n))?.checked_add(1 - lead))?;
    let d = (n - 1) * (n - 1);
    debug_assert_eq!(inner % d, 0);
    ovf(lead.checked_add(ovf((inner / d).checked_mul(2))?))
}

fn geometric(p: i128, r: u32) -> Result<i128> {
    // 1 + p + … + p^r
    Ok((ovf(checked_pow(p, r + 1))? - 1) / (p - 1))
}

fn class(p: u64, ring: RingId) -> PrimeClass {
    prime_class(p, ring).expect("factorization yields primes")
}

/// Prime-power rule for the Dedekind zeta coefficients.
pub fn dedekind_ppower(ring: RingId, p: u64, r: u32) -> i128 {
    match ring {
        RingId::RationalInt => 1,
        _ => match class(p, ring) {
            PrimeClass::Ramified => 1,
            PrimeClass::Split => i128::from(r) + 1,
            PrimeClass::Inert => i128::from(r.is_multiple_of(2)),
        },
    }
}

fn multiplicative(m: u64, rule: impl Fn(u64, u32) -> Result<i128>) -> Result<i128> {
    factorize(m)
        .into_iter()
        .try_fold(1i128, |acc, (p, r)| ovf(acc.checked_mul(rule(p, r)?)))
}

/// Coefficient of `m^{-s}` in the Dedekind zeta function of the ring
/// (all ones for `Z`).
pub fn dedekind_coeff(ring: RingId, m: u64) -> i128 {
    assert!(m >= 1);
    multiplicative(m, |p, r| Ok(dedekind_ppower(ring, p, r))).expect("divisor counts fit")
}

/// Prime-power rule for the order zeta coefficients.
pub fn order_zeta_ppower(order: OrderId, p: u64, r: u32) -> Result<i128> {
    let pi = p as i128;
    match order {
        OrderId::Hurwitz => {
            if p == 2 {
                Ok(1)
            } else {
                geometric(pi, r)
            }
        }
        OrderId::Icosian | OrderId::Cubian => match class(p, order.ring()) {
            PrimeClass::Ramified => geometric(pi, r),
            PrimeClass::Inert => {
                if r % 2 == 1 {
                    Ok(0)
                } else {
                    geometric(pi * pi, r / 2)
                }
            }
            PrimeClass::Split => (0..=r).try_fold(0i128, |acc, l| {
                let t = i128::from(l + 1) * i128::from(r - l + 1);
                ovf(acc.checked_add(ovf(t.checked_mul(ovf(checked_pow(pi, l))?))?))
            }),
        },
    }
}

/// Number of left ideals of index `m²` in the order.
pub fn order_zeta_coeff(order: OrderId, m: u64) -> Result<i128> {
    assert!(m >= 1);
    multiplicative(m, |p, r| order_zeta_ppower(order, p, r))
}

/// Prime-power rule for the SSL/SSM counts `f(p^r)` of 𝕁, 𝕀 and 𝕂.
fn ssm_ppower(order: OrderId, p: u64, r: u32) -> Result<i128> {
    let pi = p as i128;
    let ri = i64::from(r);
    match order {
        OrderId::Hurwitz => {
            if p == 2 {
                Ok(1)
            } else {
                g(pi, ri)
            }
        }
        OrderId::Icosian | OrderId::Cubian => match class(p, order.ring()) {
            PrimeClass::Ramified => g(pi, ri),
            PrimeClass::Inert => {
                if r % 2 == 1 {
                    Ok(0)
                } else {
                    g(pi * pi, ri / 2)
                }
            }
            PrimeClass::Split => (0..=ri).try_fold(0i128, |acc, s| {
                ovf(acc.checked_add(ovf(g(pi, s)?.checked_mul(g(pi, ri - s)?))?))
            }),
        },
    }
}

/// Number of similarity sublattices (submodules) of index `m²`; zero when
/// `m` is not a representable index.
pub fn ssm_count(target: TargetId, m: u64) -> Result<i128> {
    assert!(m >= 1);
    let order = match target {
        TargetId::HurwitzJ | TargetId::Z4 => OrderId::Hurwitz,
        TargetId::IcosianI => OrderId::Icosian,
        TargetId::CubianK => OrderId::Cubian,
        other => return Err(Error::Domain(format!("{other} is not a similarity count"))),
    };
    let f = multiplicative(m, |p, r| ssm_ppower(order, p, r))?;
    if target == TargetId::Z4 && m.is_multiple_of(2) {
        ovf(f.checked_mul(3))
    } else {
        Ok(f)
    }
}

/// Closed-form coefficient at position `m` of any target.
pub fn coeff(target: TargetId, m: u64) -> Result<i128> {
    match target {
        TargetId::HurwitzJ | TargetId::Z4 | TargetId::IcosianI | TargetId::CubianK => ssm_count(target, m),
        TargetId::ZetaJ => order_zeta_coeff(OrderId::Hurwitz, m),
        TargetId::ZetaI => order_zeta_coeff(OrderId::Icosian, m),
        TargetId::ZetaK => order_zeta_coeff(OrderId::Cubian, m),
        TargetId::DedekindTau => Ok(dedekind_coeff(RingId::GoldenInt, m)),
        TargetId::DedekindSqrt2 => Ok(dedekind_coeff(RingId::Sqrt2Int, m)),
        TargetId::RiemannZ => Ok(1),
    }
}

/// The first `n` coefficients from the closed-form prime-power rules.
pub fn closed_form_series(target: TargetId, n: usize) -> Result<CoeffSeq> {
    let order = match target {
        TargetId::HurwitzJ | TargetId::Z4 | TargetId::ZetaJ => Some(OrderId::Hurwitz),
        TargetId::IcosianI | TargetId::ZetaI => Some(OrderId::Icosian),
        TargetId::CubianK | TargetId::ZetaK => Some(OrderId::Cubian),
        _ => None,
    };
    // prime-power rules evaluated once per prime power, then assembled
    let cell = std::cell::Cell::new(None);
    let rule = |p: u64, r: u32| -> i128 {
        let v = match target {
            TargetId::HurwitzJ | TargetId::Z4 | TargetId::IcosianI | TargetId::CubianK => {
                ssm_ppower(order.unwrap(), p, r)
            }
            TargetId::ZetaJ | TargetId::ZetaI | TargetId::ZetaK => order_zeta_ppower(order.unwrap(), p, r),
            TargetId::DedekindTau => Ok(dedekind_ppower(RingId::GoldenInt, p, r)),
            TargetId::DedekindSqrt2 => Ok(dedekind_ppower(RingId::Sqrt2Int, p, r)),
            TargetId::RiemannZ => Ok(1),
        };
        v.unwrap_or_else(|e| {
            cell.set(Some(e));
            0
        })
    };
    let seq = from_multiplicative(rule, n)?;
    if let Some(e) = cell.take() {
        return Err(e);
    }
    if target == TargetId::Z4 {
        return Ok(CoeffSeq::from_fn(n, |m| seq.get(m) * if m % 2 == 0 { 3 } else { 1 }));
    }
    Ok(seq)
}

fn character(ring: RingId, n: usize) -> CoeffSeq {
    CoeffSeq::from_fn(n, |m| match ring {
        RingId::GoldenInt => match m % 5 {
            1 | 4 => 1,
            2 | 3 => -1,
            _ => 0,
        },
        RingId::Sqrt2Int => match m % 8 {
            1 | 7 => 1,
            3 | 5 => -1,
            _ => 0,
        },
        RingId::RationalInt => unreachable!("no character over Z"),
    })
}

/// Dedekind zeta coefficients as `ζ(s)·L(s, χ)`; just `ζ(s)` over `Z`.
fn dedekind_engine(ring: RingId, n: usize) -> Result<CoeffSeq> {
    match ring {
        RingId::RationalInt => Ok(CoeffSeq::ones(n)),
        _ => convolve(&CoeffSeq::ones(n), &character(ring, n)),
    }
}

/// Order zeta via `ζ_K(2s)·ζ_K(2s − 1)`, with the factor `1 − 2^{1−2s}` for 𝕁.
fn order_zeta_engine(order: OrderId, n: usize) -> Result<CoeffSeq> {
    let d = dedekind_engine(order.ring(), n)?;
    let base = convolve(&d, &shift(&d)?)?;
    match order {
        OrderId::Hurwitz => {
            let corr = CoeffSeq::epsilon(n).add(&CoeffSeq::monomial(n, 2, -2))?;
            convolve(&corr, &base)
        }
        _ => Ok(base),
    }
}

/// `F(s) = ζ_𝒪(s)² / ζ_K(4s)`, with `(1 + 4^{−s})^{−1}` for 𝕁 and the
/// extra factor `1 + 2·4^{−s}` for `Z⁴`.
fn ssm_engine(target: TargetId, n: usize) -> Result<CoeffSeq> {
    let order = match target {
        TargetId::HurwitzJ | TargetId::Z4 => OrderId::Hurwitz,
        TargetId::IcosianI => OrderId::Icosian,
        _ => OrderId::Cubian,
    };
    let z = order_zeta_engine(order, n)?;
    let zk4 = dilate(&dedekind_engine(order.ring(), n)?, 2);
    let mut f = convolve(&convolve(&z, &z)?, &dirichlet_inverse(&zk4)?)?;
    if order == OrderId::Hurwitz {
        let plus = CoeffSeq::epsilon(n).add(&CoeffSeq::monomial(n, 2, 1))?;
        f = convolve(&f, &dirichlet_inverse(&plus)?)?;
    }
    if target == TargetId::Z4 {
        let plus2 = CoeffSeq::epsilon(n).add(&CoeffSeq::monomial(n, 2, 2))?;
        f = convolve(&plus2, &f)?;
    }
    Ok(f)
}

/// The first `n` coefficients rebuilt from zeta identities with the engine.
pub fn engine_series(target: TargetId, n: usize) -> Result<CoeffSeq> {
    assert!(n >= 1);
    match target {
        TargetId::RiemannZ => {
            // ζ(s) = 1/Σ μ(m) m^{-s}
            let mu = from_multiplicative(|_, r| [1, -1, 0][r.min(2) as usize], n)?;
            dirichlet_inverse(&mu)
        }
        TargetId::DedekindTau => dedekind_engine(RingId::GoldenInt, n),
        TargetId::DedekindSqrt2 => dedekind_engine(RingId::Sqrt2Int, n),
        TargetId::ZetaJ => order_zeta_engine(OrderId::Hurwitz, n),
        TargetId::ZetaI => order_zeta_engine(OrderId::Icosian, n),
        TargetId::ZetaK => order_zeta_engine(OrderId::Cubian, n),
        _ => ssm_engine(target, n),
    }
}

/// The first `n` coefficients, built both ways and required to agree.
pub fn series(target: TargetId, n: usize) -> Result<CoeffSeq> {
    if n == 0 {
        return Err(Error::Domain("terms must be ≥ 1".into()));
    }
    let closed = closed_form_series(target, n)?;
    let engine = engine_series(target, n)?;
    if let Some(m) = (1..=n).find(|&m| closed.get(m) != engine.get(m)) {
        return Err(Error::CrossCheckFailure {
            target: target.name().into(),
            index: m,
            closed: closed.get(m),
            engine: engine.get(m),
        });
    }
    Ok(closed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g_values() {
        assert_eq!(g(3, 2), Ok(41));
        assert_eq!(g(5, 1), Ok(12));
        for n in 2..50 {
            assert_eq!(g(n, 0), Ok(1));
        }
        assert!(matches!(g(1, 2), Err(Error::Domain(_))));
        assert!(matches!(g(3, -1), Err(Error::Domain(_))));
        assert!(matches!(g(1_000_000, 40), Err(Error::Overflow(_))));
    }

    /// Integer evaluation agrees with the rational expression in floating point.
    #[test]
    fn g_matches_rational_evaluation() {
        for n in 2i128..12 {
            for r in 0i64..10 {
                let nr = n.pow(r as u32) as f64;
                let nf = n as f64;
                let rf = r as f64;
                let want = (rf + 1.0) * nr + 2.0 * (1.0 - (rf + 1.0) * nr + rf * nr * nf) / ((nf - 1.0) * (nf - 1.0));
                assert_eq!(g(n, r).unwrap() as f64, want.round());
            }
        }
    }

    #[test]
    fn dedekind_examples() {
        assert_eq!(dedekind_coeff(RingId::GoldenInt, 11), 2);
        assert_eq!(dedekind_coeff(RingId::GoldenInt, 3), 0);
        assert_eq!(dedekind_coeff(RingId::GoldenInt, 9), 1);
        assert_eq!(dedekind_coeff(RingId::Sqrt2Int, 17), 2);
        assert_eq!(dedekind_coeff(RingId::RationalInt, 17), 1);
    }

    #[test]
    fn order_zeta_examples() {
        assert_eq!(order_zeta_coeff(OrderId::Hurwitz, 9), Ok(13));
        assert_eq!(order_zeta_coeff(OrderId::Icosian, 4), Ok(5));
        assert_eq!(order_zeta_coeff(OrderId::Cubian, 2), Ok(3));
    }

    #[test]
    fn ssm_examples() {
        assert_eq!(ssm_count(TargetId::Z4, 2), Ok(3));
        assert_eq!(ssm_count(TargetId::IcosianI, 4), Ok(10));
        assert_eq!(ssm_count(TargetId::CubianK, 8), Ok(66));
        assert_eq!(ssm_count(TargetId::IcosianI, 2), Ok(0));
        assert!(ssm_count(TargetId::RiemannZ, 2).is_err());
    }

    #[test]
    fn series_examples() {
        let j = series(TargetId::HurwitzJ, 12).unwrap();
        assert_eq!(j.values(), &[1, 1, 8, 1, 12, 8, 16, 1, 41, 12, 24, 8]);
        let i = series(TargetId::IcosianI, 5).unwrap();
        assert_eq!(i.values(), &[1, 0, 0, 10, 12]);
        assert_eq!(series(TargetId::RiemannZ, 3).unwrap().values(), &[1, 1, 1]);
        assert!(series(TargetId::ZetaJ, 0).is_err());
    }

    #[test]
    fn engine_agrees_with_closed_form_small() {
        for t in TargetId::ALL {
            series(t, 600).unwrap_or_else(|e| panic!("{t}: {e}"));
        }
    }

    #[test]
    fn target_names_round_trip() {
        for t in TargetId::ALL {
            assert_eq!(t.name().parse::<TargetId>(), Ok(t));
        }
        assert!("f_x".parse::<TargetId>().is_err());
    }

    #[test]
    fn z4_closed_form_series_matches_pointwise() {
        let s = closed_form_series(TargetId::Z4, 50).unwrap();
        for m in 1..=50u64 {
            assert_eq!(s.get(m as usize), ssm_count(TargetId::Z4, m).unwrap());
        }
    }
}
