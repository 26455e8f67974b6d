//! Exact arithmetic in the rings of integers `Z`, `Z[τ]` and `Z[√2]`.
//!
//! Elements are stored as `a + b·ω` with 128-bit components. The generator
//! satisfies `ω² = t + u·ω`, with `(t, u) = (1, 1)` for the golden ring and
//! `(2, 0)` for `Z[√2]`. Arithmetic panics on overflow instead of wrapping.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::arith::{factorize, is_prime};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingId {
    /// `Z`; the generator is absent.
    RationalInt,
    /// `Z[τ]` with `τ = (1 + √5)/2`.
    GoldenInt,
    /// `Z[√2]`.
    Sqrt2Int,
}

impl RingId {
    /// `(t, u)` with `ω² = t + u·ω`.
    const fn min_poly(self) -> (i128, i128) {
        match self {
            RingId::RationalInt => (0, 0),
            RingId::GoldenInt => (1, 1),
            RingId::Sqrt2Int => (2, 0),
        }
    }

    /// Radicand `d` and denominator `k` with `ω = (u + √d)/k`.
    const fn radical(self) -> (i128, i128) {
        match self {
            RingId::RationalInt => (0, 1),
            RingId::GoldenInt => (5, 2),
            RingId::Sqrt2Int => (2, 1),
        }
    }

    /// Rank of the ring as a `Z`-module.
    pub const fn degree(self) -> usize {
        match self {
            RingId::RationalInt => 1,
            _ => 2,
        }
    }

    /// Fundamental unit `τ` or `1 + √2`; `None` for `Z`.
    pub fn fundamental_unit(self) -> Option<QuadInt> {
        match self {
            RingId::RationalInt => None,
            RingId::GoldenInt => Some(QuadInt::golden(0, 1)),
            RingId::Sqrt2Int => Some(QuadInt::sqrt2(1, 1)),
        }
    }

    /// The generator `ω` itself; `None` for `Z`.
    pub fn generator(self) -> Option<QuadInt> {
        match self {
            RingId::RationalInt => None,
            _ => Some(QuadInt::new(self, 0, 1)),
        }
    }

    /// Numeric value of `ω` under the identity embedding.
    pub fn omega_f64(self) -> f64 {
        match self {
            RingId::RationalInt => 0.0,
            RingId::GoldenInt => (1.0 + 5f64.sqrt()) / 2.0,
            RingId::Sqrt2Int => std::f64::consts::SQRT_2,
        }
    }
}

/// Splitting type of a rational prime in a real quadratic ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PrimeClass {
    Ramified,
    Split,
    Inert,
}

/// An element `a + b·ω` of one of the three rings.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadInt {
    ring: RingId,
    a: i128,
    b: i128,
}

impl fmt::Debug for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sym = match self.ring {
            RingId::RationalInt => return write!(f, "{}", self.a),
            RingId::GoldenInt => "τ",
            RingId::Sqrt2Int => "√2",
        };
        match (self.a, self.b) {
            (a, 0) => write!(f, "{a}"),
            (0, 1) => write!(f, "{sym}"),
            (0, -1) => write!(f, "-{sym}"),
            (0, b) => write!(f, "{b}{sym}"),
            (a, 1) => write!(f, "{a}+{sym}"),
            (a, -1) => write!(f, "{a}-{sym}"),
            (a, b) if b < 0 => write!(f, "{a}{b}{sym}"),
            (a, b) => write!(f, "{a}+{b}{sym}"),
        }
    }
}

fn ck(v: Option<i128>) -> i128 {
    v.expect("QuadInt arithmetic overflowed 128 bits")
}

impl QuadInt {
    /// Panics if `b != 0` for the rational ring.
    pub fn new(ring: RingId, a: i128, b: i128) -> Self {
        assert!(
            ring != RingId::RationalInt || b == 0,
            "rational integers carry no ω component"
        );
        QuadInt { ring, a, b }
    }

    pub fn rational(a: i128) -> Self {
        QuadInt::new(RingId::RationalInt, a, 0)
    }

    pub fn golden(a: i128, b: i128) -> Self {
        QuadInt::new(RingId::GoldenInt, a, b)
    }

    pub fn sqrt2(a: i128, b: i128) -> Self {
        QuadInt::new(RingId::Sqrt2Int, a, b)
    }

    /// The rational integer `a` viewed as an element of `ring`.
    pub fn from_int(ring: RingId, a: i128) -> Self {
        QuadInt { ring, a, b: 0 }
    }

    pub fn zero(ring: RingId) -> Self {
        QuadInt::from_int(ring, 0)
    }

    pub fn one(ring: RingId) -> Self {
        QuadInt::from_int(ring, 1)
    }

    pub fn ring(&self) -> RingId {
        self.ring
    }

    /// Rational part.
    pub fn a(&self) -> i128 {
        self.a
    }

    /// Coefficient of `ω`.
    pub fn b(&self) -> i128 {
        self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    /// True when the `ω` component vanishes.
    pub fn is_rational(&self) -> bool {
        self.b == 0
    }

    /// Re-tag a rational integer as an element of `ring`.
    pub fn promote(self, ring: RingId) -> Self {
        if self.ring == ring {
            return self;
        }
        assert!(self.b == 0, "cannot move {self} into {ring:?}");
        QuadInt::from_int(ring, self.a)
    }

    fn same_ring(&self, other: &QuadInt) -> RingId {
        assert_eq!(self.ring, other.ring, "QuadInt ring mismatch");
        self.ring
    }

    pub fn checked_add(self, rhs: QuadInt) -> Option<QuadInt> {
        let ring = self.same_ring(&rhs);
        Some(QuadInt {
            ring,
            a: self.a.checked_add(rhs.a)?,
            b: self.b.checked_add(rhs.b)?,
        })
    }

    pub fn checked_mul(self, rhs: QuadInt) -> Option<QuadInt> {
        let ring = self.same_ring(&rhs);
        let (t, u) = ring.min_poly();
        let ac = self.a.checked_mul(rhs.a)?;
        let bd = self.b.checked_mul(rhs.b)?;
        let ad = self.a.checked_mul(rhs.b)?;
        let bc = self.b.checked_mul(rhs.a)?;
        Some(QuadInt {
            ring,
            a: ac.checked_add(bd.checked_mul(t)?)?,
            b: ad.checked_add(bc)?.checked_add(bd.checked_mul(u)?)?,
        })
    }

    /// Multiply by a rational integer.
    pub fn scale(self, k: i128) -> QuadInt {
        QuadInt {
            ring: self.ring,
            a: ck(self.a.checked_mul(k)),
            b: ck(self.b.checked_mul(k)),
        }
    }

    /// Exact division by a rational integer, if it divides both components.
    pub fn div_int(self, k: i128) -> Option<QuadInt> {
        (k != 0 && self.a % k == 0 && self.b % k == 0).then(|| QuadInt {
            ring: self.ring,
            a: self.a / k,
            b: self.b / k,
        })
    }

    /// Algebraic conjugate `x'` (`τ ↦ 1 − τ`, `√2 ↦ −√2`).
    pub fn conjugate(self) -> QuadInt {
        let (_, u) = self.ring.min_poly();
        QuadInt {
            ring: self.ring,
            a: ck(self.a.checked_add(ck(self.b.checked_mul(u)))),
            b: -self.b,
        }
    }

    /// Signed field norm `x·x'`.
    pub fn norm(self) -> i128 {
        let (t, u) = self.ring.min_poly();
        match self.ring {
            RingId::RationalInt => self.a,
            _ => {
                let aa = ck(self.a.checked_mul(self.a));
                let ab = ck(self.a.checked_mul(self.b));
                let bb = ck(self.b.checked_mul(self.b));
                ck(ck(aa.checked_add(ck(ab.checked_mul(u)))).checked_sub(ck(bb.checked_mul(t))))
            }
        }
    }

    /// `x·x'` as an integer; equals `a²` in `Z`, where the norm is `a` itself.
    fn self_times_conjugate(self) -> i128 {
        match self.ring {
            RingId::RationalInt => ck(self.a.checked_mul(self.a)),
            _ => self.norm(),
        }
    }

    /// Trace `x + x'`.
    pub fn trace(self) -> i128 {
        match self.ring {
            RingId::RationalInt => self.a,
            _ => {
                let (_, u) = self.ring.min_poly();
                ck(ck(self.a.checked_mul(2)).checked_add(ck(self.b.checked_mul(u))))
            }
        }
    }

    pub fn is_unit(self) -> bool {
        self.norm().abs() == 1
    }

    /// Sign of the real number `x` under the identity embedding.
    pub fn signum(self) -> Ordering {
        // x = (p + q√d)/k with k > 0
        let (d, _) = self.ring.radical();
        let (p, q) = match self.ring {
            RingId::RationalInt => (self.a, 0),
            RingId::GoldenInt => (ck(ck(self.a.checked_mul(2)).checked_add(self.b)), self.b),
            RingId::Sqrt2Int => (self.a, self.b),
        };
        sign_of_surd(p, q, d)
    }

    /// Sign of the conjugate embedding.
    pub fn signum_conj(self) -> Ordering {
        self.conjugate().signum()
    }

    pub fn is_totally_positive(self) -> bool {
        self.signum() == Ordering::Greater && self.signum_conj() == Ordering::Greater
    }

    /// Compare the identity embeddings of two elements of the same ring.
    pub fn cmp_real(self, other: QuadInt) -> Ordering {
        (self - other).signum()
    }

    pub fn to_f64(self) -> f64 {
        self.a as f64 + self.b as f64 * self.ring.omega_f64()
    }

    /// Exact quotient `self / rhs` if it lies in the ring.
    pub fn div_exact(self, rhs: QuadInt) -> Option<QuadInt> {
        let n = rhs.self_times_conjugate();
        if n == 0 {
            return None;
        }
        let num = self.checked_mul(rhs.conjugate())?;
        num.div_int(n)
    }

    /// Multiplicative inverse, when `self` is a unit.
    pub fn unit_inverse(self) -> Option<QuadInt> {
        QuadInt::one(self.ring).div_exact(self)
    }

    /// Quotient rounded to the nearest lattice point; the remainder
    /// `self − q·rhs` then has strictly smaller absolute norm.
    pub fn div_round(self, rhs: QuadInt) -> QuadInt {
        let n = rhs.self_times_conjugate();
        assert!(n != 0, "division by zero");
        let num = self * rhs.conjugate();
        QuadInt {
            ring: self.ring,
            a: round_div(num.a, n),
            b: round_div(num.b, n),
        }
    }

    /// A greatest common divisor in the (norm-Euclidean) ring, up to units.
    pub fn gcd(self, other: QuadInt) -> QuadInt {
        let (mut x, mut y) = (self, other);
        while !y.is_zero() {
            let q = x.div_round(y);
            let r = x - q * y;
            debug_assert!(r.self_times_conjugate().abs() < y.self_times_conjugate().abs());
            x = y;
            y = r;
        }
        x
    }

    pub fn pow(self, mut e: u32) -> QuadInt {
        let mut base = self;
        let mut acc = QuadInt::one(self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

/// Nearest integer to `num/den` (ties rounded up).
fn round_div(num: i128, den: i128) -> i128 {
    let (num, den) = if den < 0 { (-num, -den) } else { (num, den) };
    (2 * num + den).div_euclid(2 * den)
}

/// Sign of `p + q·√d` for `d ≥ 0` not a perfect square.
fn sign_of_surd(p: i128, q: i128, d: i128) -> Ordering {
    let sp = p.cmp(&0);
    let sq = q.cmp(&0);
    if sq == Ordering::Equal || d == 0 {
        return sp;
    }
    if sp == Ordering::Equal || sp == sq {
        return sq;
    }
    // opposite signs: compare p² with d·q²
    let p2 = ck(p.checked_mul(p));
    let dq2 = ck(ck(q.checked_mul(q)).checked_mul(d));
    match p2.cmp(&dq2) {
        Ordering::Greater => sp,
        Ordering::Less => sq,
        Ordering::Equal => Ordering::Equal,
    }
}

impl Add for QuadInt {
    type Output = QuadInt;
    fn add(self, rhs: QuadInt) -> QuadInt {
        ck_q(self.checked_add(rhs))
    }
}

impl Sub for QuadInt {
    type Output = QuadInt;
    fn sub(self, rhs: QuadInt) -> QuadInt {
        self + (-rhs)
    }
}

impl Neg for QuadInt {
    type Output = QuadInt;
    fn neg(self) -> QuadInt {
        QuadInt {
            ring: self.ring,
            a: ck(self.a.checked_neg()),
            b: ck(self.b.checked_neg()),
        }
    }
}

impl Mul for QuadInt {
    type Output = QuadInt;
    fn mul(self, rhs: QuadInt) -> QuadInt {
        ck_q(self.checked_mul(rhs))
    }
}

fn ck_q(v: Option<QuadInt>) -> QuadInt {
    v.expect("QuadInt arithmetic overflowed 128 bits")
}

/// Signed norm `x·x'`.
pub fn norm(x: QuadInt) -> i128 {
    x.norm()
}

pub fn conjugate(x: QuadInt) -> QuadInt {
    x.conjugate()
}

/// How the rational prime `p` decomposes in `ring`.
pub fn prime_class(p: u64, ring: RingId) -> Result<PrimeClass> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    match ring {
        RingId::RationalInt => Err(Error::UnsupportedRing(ring)),
        RingId::GoldenInt => Ok(match p % 5 {
            0 => PrimeClass::Ramified,
            1 | 4 => PrimeClass::Split,
            _ => PrimeClass::Inert,
        }),
        RingId::Sqrt2Int => Ok(match p % 8 {
            2 => PrimeClass::Ramified,
            1 | 7 => PrimeClass::Split,
            _ => PrimeClass::Inert,
        }),
    }
}

/// Whether `m` is the norm of an ideal: every inert prime occurs to an even power.
pub fn is_representable_index(m: u64, ring: RingId) -> bool {
    assert!(m >= 1, "index must be positive");
    if ring == RingId::RationalInt {
        return true;
    }
    factorize(m).into_iter().all(|(p, e)| {
        e % 2 == 0 || prime_class(p, ring).expect("factor is prime") != PrimeClass::Inert
    })
}

/// Unique representative of the associate class `{u·x : u unit}`.
///
/// For the quadratic rings the representative `y` satisfies
/// `1 ≤ |y/y'| < ε²` (ε the fundamental unit) and `y > 0`.
pub fn canonical_associate(x: QuadInt) -> Result<QuadInt> {
    if x.is_zero() {
        return Err(Error::ZeroElement);
    }
    let Some(eps) = x.ring.fundamental_unit() else {
        return Ok(QuadInt::rational(x.a.abs()));
    };
    let eps_inv = eps.unit_inverse().expect("fundamental unit is invertible");
    // |y| ≥ |y'|  ⟺  (y − y')(y + y') ≥ 0  ⟺  b·tr(y) ≥ 0
    let at_least_conj = |y: QuadInt| y.b.signum() * y.trace().signum() >= 0;
    let mut y = x;
    while !at_least_conj(y) {
        y = y * eps;
    }
    while at_least_conj(y * eps_inv) {
        y = y * eps_inv;
    }
    if y.signum() == Ordering::Less {
        y = -y;
    }
    Ok(y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn tau() -> QuadInt {
        QuadInt::golden(0, 1)
    }

    #[test]
    fn norms() {
        assert_eq!(norm(tau()), -1);
        assert_eq!(norm(QuadInt::sqrt2(1, 1)), -1);
        assert_eq!(norm(QuadInt::sqrt2(2, 1)), 2);
        assert_eq!(norm(QuadInt::rational(-7)), -7);
        assert_eq!(norm(QuadInt::golden(2, 0)), 4);
    }

    #[test]
    fn conjugates() {
        assert_eq!(conjugate(tau()), QuadInt::golden(1, -1));
        assert_eq!(conjugate(QuadInt::rational(3)), QuadInt::rational(3));
        assert_eq!(conjugate(QuadInt::sqrt2(2, -3)), QuadInt::sqrt2(2, 3));
        assert_eq!(tau() * tau(), QuadInt::golden(1, 1));
    }

    #[test]
    fn prime_classes() {
        assert_eq!(prime_class(11, RingId::GoldenInt), Ok(PrimeClass::Split));
        assert_eq!(prime_class(5, RingId::GoldenInt), Ok(PrimeClass::Ramified));
        assert_eq!(prime_class(2, RingId::GoldenInt), Ok(PrimeClass::Inert));
        assert_eq!(prime_class(7, RingId::Sqrt2Int), Ok(PrimeClass::Split));
        assert_eq!(prime_class(2, RingId::Sqrt2Int), Ok(PrimeClass::Ramified));
        assert_eq!(prime_class(5, RingId::Sqrt2Int), Ok(PrimeClass::Inert));
        assert_eq!(prime_class(9, RingId::GoldenInt), Err(Error::NotPrime(9)));
        assert_eq!(
            prime_class(3, RingId::RationalInt),
            Err(Error::UnsupportedRing(RingId::RationalInt))
        );
    }

    #[test]
    fn representable_indices() {
        assert!(!is_representable_index(3, RingId::GoldenInt));
        assert!(is_representable_index(9, RingId::GoldenInt));
        assert!(is_representable_index(7, RingId::Sqrt2Int));
        assert!(!is_representable_index(3, RingId::Sqrt2Int));
        assert!(is_representable_index(2, RingId::Sqrt2Int));
        assert!(!is_representable_index(2, RingId::GoldenInt));
        assert!(is_representable_index(3, RingId::RationalInt));
    }

    /// Representable indices are exactly the values |x² + xy − y²| and
    /// |x² − 2y²| that occur as element norms (both rings are PIDs).
    #[test]
    fn representability_matches_norm_form_search() {
        for (ring, limit) in [(RingId::GoldenInt, 300u64), (RingId::Sqrt2Int, 300u64)] {
            let mut hit = vec![false; limit as usize + 1];
            for a in -60i128..=60 {
                for b in -60i128..=60 {
                    let n = QuadInt::new(ring, a, b).norm().unsigned_abs() as u64;
                    if n >= 1 && n <= limit {
                        hit[n as usize] = true;
                    }
                }
            }
            for m in 1..=limit {
                assert_eq!(is_representable_index(m, ring), hit[m as usize], "{ring:?} m={m}");
            }
        }
    }

    #[test]
    fn canonical_associates() {
        assert_eq!(canonical_associate(QuadInt::rational(-3)), Ok(QuadInt::rational(3)));
        assert_eq!(canonical_associate(tau().pow(2)), Ok(QuadInt::golden(1, 0)));
        let x = QuadInt::golden(-1, 2); // 2τ − 1
        let y = QuadInt::golden(1, -2);
        assert_eq!(canonical_associate(x), canonical_associate(y));
        assert_eq!(
            canonical_associate(QuadInt::zero(RingId::GoldenInt)),
            Err(Error::ZeroElement)
        );
        let s = QuadInt::sqrt2(1, 1).pow(5);
        assert_eq!(canonical_associate(-s), Ok(QuadInt::sqrt2(1, 0)));
    }

    #[test]
    fn golden_units_are_powers_of_tau() {
        let inv = tau().unit_inverse().unwrap();
        for k in -10i32..=10 {
            let u = if k >= 0 { tau().pow(k as u32) } else { inv.pow((-k) as u32) };
            assert!(u.is_unit());
            assert!((-u).is_unit());
            assert_eq!(canonical_associate(u).unwrap(), QuadInt::golden(1, 0));
        }
        // every unit in a box is ±τ^k
        for a in -30i128..=30 {
            for b in -30i128..=30 {
                let x = QuadInt::golden(a, b);
                if x.is_unit() {
                    let mut y = x;
                    let mut steps = 0;
                    while !(y == QuadInt::golden(1, 0) || y == QuadInt::golden(-1, 0)) {
                        y = if y.b * y.trace() > 0 { y * inv } else { y * tau() };
                        steps += 1;
                        assert!(steps < 40, "{x} did not reduce to ±1");
                    }
                }
            }
        }
    }

    #[test]
    fn split_and_inert_primes_have_equal_density() {
        for ring in [RingId::GoldenInt, RingId::Sqrt2Int] {
            let (mut split, mut inert) = (0, 0);
            for p in crate::arith::primes_up_to(1000) {
                match prime_class(p, ring).unwrap() {
                    PrimeClass::Split => split += 1,
                    PrimeClass::Inert => inert += 1,
                    PrimeClass::Ramified => {}
                }
            }
            let total = (split + inert) as f64;
            assert!((split as f64 / total - 0.5).abs() < 0.1);
            assert!((inert as f64 / total - 0.5).abs() < 0.1);
        }
    }

    #[test]
    fn gcd_in_quadratic_rings() {
        // 19 splits in Z[τ]; 4 + τ is one of its prime factors
        let p = QuadInt::golden(4, 1);
        assert_eq!(p.norm().abs(), 19);
        let g = QuadInt::golden(19, 0).gcd(p);
        assert_eq!(canonical_associate(g), canonical_associate(p));
        let g2 = QuadInt::sqrt2(6, 0).gcd(QuadInt::sqrt2(4, 0));
        assert_eq!(canonical_associate(g2).unwrap(), QuadInt::sqrt2(2, 0));
    }

    fn arb_quad(ring: RingId) -> impl Strategy<Value = QuadInt> {
        (-1_000_000i128..1_000_000, -1_000_000i128..1_000_000).prop_map(move |(a, b)| {
            if ring == RingId::RationalInt {
                QuadInt::rational(a)
            } else {
                QuadInt::new(ring, a, b)
            }
        })
    }

    fn arb_ring() -> impl Strategy<Value = RingId> {
        prop_oneof![
            Just(RingId::RationalInt),
            Just(RingId::GoldenInt),
            Just(RingId::Sqrt2Int)
        ]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]

        #[test]
        fn norm_is_multiplicative((x, y) in arb_ring().prop_flat_map(|r| (arb_quad(r), arb_quad(r)))) {
            prop_assert_eq!(norm(x * y), norm(x) * norm(y));
        }

        #[test]
        fn conjugation_is_a_ring_homomorphism((x, y) in arb_ring().prop_flat_map(|r| (arb_quad(r), arb_quad(r)))) {
            prop_assert_eq!(conjugate(x * y), conjugate(x) * conjugate(y));
            prop_assert_eq!(conjugate(x + y), conjugate(x) + conjugate(y));
            prop_assert_eq!(conjugate(conjugate(x)), x);
        }
    }

    proptest! {
        #[test]
        fn canonical_associate_is_a_class_invariant(
            (x, k, neg) in (arb_ring(), -6i32..6, any::<bool>())
                .prop_flat_map(|(r, k, n)| (arb_quad(r), Just(k), Just(n)))
        ) {
            prop_assume!(!x.is_zero());
            let c = canonical_associate(x).unwrap();
            prop_assert_eq!(canonical_associate(c).unwrap(), c);
            let mut y = x;
            if let Some(eps) = x.ring().fundamental_unit() {
                let inv = eps.unit_inverse().unwrap();
                y = if k >= 0 { y * eps.pow(k as u32) } else { y * inv.pow((-k) as u32) };
            }
            if neg { y = -y; }
            prop_assert_eq!(canonical_associate(y).unwrap(), c);
        }

        #[test]
        fn euclidean_remainder_shrinks((x, y) in prop_oneof![Just(RingId::GoldenInt), Just(RingId::Sqrt2Int)]
            .prop_flat_map(|r| (arb_quad(r), arb_quad(r))))
        {
            prop_assume!(!y.is_zero());
            let q = x.div_round(y);
            let r = x - q * y;
            prop_assert!(r.norm().abs() < y.norm().abs());
        }
    }
}
