//! Quaternions over `Q`, `Q(τ)` and `Q(√2)` with exact coordinates.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::arith::gcd_i128;
use crate::error::{Error, Result};
use crate::quadratic::{QuadInt, RingId};

/// A field element `num/den` with `den > 0` and `gcd(num components, den) = 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElem {
    num: QuadInt,
    den: i128,
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/{}", self.num, self.den)
        }
    }
}

impl FieldElem {
    pub fn new(num: QuadInt, den: i128) -> Self {
        assert!(den != 0, "zero denominator");
        let (num, den) = if den < 0 { (-num, -den) } else { (num, den) };
        let g = gcd_i128(gcd_i128(num.a(), num.b()), den);
        FieldElem {
            num: num.div_int(g).expect("gcd divides"),
            den: den / g,
        }
    }

    pub fn from_quad(x: QuadInt) -> Self {
        FieldElem { num: x, den: 1 }
    }

    pub fn from_int(ring: RingId, n: i128) -> Self {
        FieldElem::from_quad(QuadInt::from_int(ring, n))
    }

    pub fn zero(ring: RingId) -> Self {
        FieldElem::from_int(ring, 0)
    }

    pub fn one(ring: RingId) -> Self {
        FieldElem::from_int(ring, 1)
    }

    pub fn ring(&self) -> RingId {
        self.num.ring()
    }

    pub fn numer(&self) -> QuadInt {
        self.num
    }

    pub fn denom(&self) -> i128 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The element as a ring integer, if it is one.
    pub fn as_integral(&self) -> Option<QuadInt> {
        (self.den == 1).then_some(self.num)
    }

    pub fn conjugate(self) -> FieldElem {
        FieldElem {
            num: self.num.conjugate(),
            den: self.den,
        }
    }

    /// Field norm down to `Q`, as a reduced fraction `(p, q)`.
    pub fn norm(self) -> (i128, i128) {
        let n = self.num.norm();
        let d = self.den * self.den;
        let d = if self.ring() == RingId::RationalInt { self.den } else { d };
        let g = gcd_i128(n, d);
        (n / g, d / g)
    }

    pub fn inverse(self) -> Option<FieldElem> {
        if self.is_zero() {
            return None;
        }
        // 1/(x/d) = d·x'/N(x)
        let n = self.num.norm();
        let num = self.num.conjugate().scale(self.den);
        Some(if self.ring() == RingId::RationalInt {
            FieldElem::new(QuadInt::from_int(self.ring(), self.den), self.num.a())
        } else {
            FieldElem::new(num, n)
        })
    }

    pub fn to_f64(&self) -> f64 {
        self.num.to_f64() / self.den as f64
    }
}

impl Add for FieldElem {
    type Output = FieldElem;
    fn add(self, rhs: FieldElem) -> FieldElem {
        let g = gcd_i128(self.den, rhs.den);
        let l = self.den / g;
        FieldElem::new(self.num.scale(rhs.den / g) + rhs.num.scale(l), l * rhs.den)
    }
}

impl Sub for FieldElem {
    type Output = FieldElem;
    fn sub(self, rhs: FieldElem) -> FieldElem {
        self + (-rhs)
    }
}

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        FieldElem {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Mul for FieldElem {
    type Output = FieldElem;
    fn mul(self, rhs: FieldElem) -> FieldElem {
        FieldElem::new(self.num * rhs.num, self.den * rhs.den)
    }
}

/// A quaternion `(x0 + x1 i + x2 j + x3 k)` with one common denominator.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Quat {
    num: [QuadInt; 4],
    den: i128,
}

impl fmt::Debug for Quat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.num.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")?;
        if self.den != 1 {
            write!(f, "/{}", self.den)?;
        }
        Ok(())
    }
}

impl Quat {
    /// Build and reduce; panics if the components live in different rings.
    pub fn new(num: [QuadInt; 4], den: i128) -> Self {
        let ring = num[0].ring();
        assert!(num.iter().all(|c| c.ring() == ring), "mixed rings in quaternion");
        assert!(den != 0, "zero denominator");
        let mut q = Quat { num, den };
        q.reduce();
        q
    }

    /// Integer coordinates over `Z`, divided by `den`.
    pub fn from_ints(coords: [i128; 4], den: i128) -> Self {
        Quat::new(coords.map(QuadInt::rational), den)
    }

    /// Coordinates given as `(a, b)` pairs meaning `a + b·ω`, divided by `den`.
    pub fn from_pairs(ring: RingId, coords: [(i128, i128); 4], den: i128) -> Self {
        Quat::new(coords.map(|(a, b)| QuadInt::new(ring, a, b)), den)
    }

    pub fn scalar(x: FieldElem) -> Self {
        let z = QuadInt::zero(x.ring());
        Quat::new([x.numer(), z, z, z], x.denom())
    }

    pub fn zero(ring: RingId) -> Self {
        Quat::scalar(FieldElem::zero(ring))
    }

    pub fn one(ring: RingId) -> Self {
        Quat::scalar(FieldElem::one(ring))
    }

    /// The basis quaternion `1, i, j, k` for `axis = 0..4`.
    pub fn unit_axis(ring: RingId, axis: usize) -> Self {
        let mut num = [QuadInt::zero(ring); 4];
        num[axis] = QuadInt::one(ring);
        Quat { num, den: 1 }
    }

    fn reduce(&mut self) {
        if self.den < 0 {
            self.den = -self.den;
            self.num = self.num.map(|c| -c);
        }
        let mut g = self.den;
        for c in &self.num {
            g = gcd_i128(g, gcd_i128(c.a(), c.b()));
        }
        if g > 1 {
            self.den /= g;
            self.num = self.num.map(|c| c.div_int(g).expect("gcd divides"));
        }
    }

    pub fn ring(&self) -> RingId {
        self.num[0].ring()
    }

    pub fn numer(&self) -> &[QuadInt; 4] {
        &self.num
    }

    pub fn denom(&self) -> i128 {
        self.den
    }

    pub fn coord(&self, axis: usize) -> FieldElem {
        FieldElem::new(self.num[axis], self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(QuadInt::is_zero)
    }

    pub fn conj(&self) -> Quat {
        let [a, b, c, d] = self.num;
        Quat {
            num: [a, -b, -c, -d],
            den: self.den,
        }
    }

    /// Coordinate-wise algebraic conjugation (the Galois twist `x ↦ x'`).
    pub fn galois_conjugate(&self) -> Quat {
        Quat {
            num: self.num.map(QuadInt::conjugate),
            den: self.den,
        }
    }

    /// `q·q̄`, a scalar of the base field.
    pub fn reduced_norm(&self) -> FieldElem {
        let s = self
            .num
            .iter()
            .fold(QuadInt::zero(self.ring()), |acc, &c| acc + c * c);
        FieldElem::new(s, self.den * self.den)
    }

    pub fn try_mul(&self, rhs: &Quat) -> Result<Quat> {
        if self.ring() != rhs.ring() {
            return Err(Error::RingMismatch(self.ring(), rhs.ring()));
        }
        let [a, b, c, d] = self.num;
        let [e, f, g, h] = rhs.num;
        Ok(Quat::new(
            [
                a * e - b * f - c * g - d * h,
                a * f + b * e + c * h - d * g,
                a * g - b * h + c * e + d * f,
                a * h + b * g - c * f + d * e,
            ],
            self.den * rhs.den,
        ))
    }

    pub fn scale(&self, s: FieldElem) -> Quat {
        assert_eq!(s.ring(), self.ring(), "scalar from a different field");
        Quat::new(self.num.map(|c| c * s.numer()), self.den * s.denom())
    }

    pub fn inverse(&self) -> Option<Quat> {
        let n = self.reduced_norm().inverse()?;
        Some(self.conj().scale(n))
    }

    /// Numeric coordinates under the identity embedding.
    pub fn to_f64(&self) -> [f64; 4] {
        self.num.map(|c| c.to_f64() / self.den as f64)
    }
}

impl Add for Quat {
    type Output = Quat;
    fn add(self, rhs: Quat) -> Quat {
        let g = gcd_i128(self.den, rhs.den);
        let (l, r) = (rhs.den / g, self.den / g);
        let mut num = self.num;
        for (n, (x, y)) in num.iter_mut().zip(self.num.iter().zip(rhs.num.iter())) {
            *n = x.scale(l) + y.scale(r);
        }
        Quat::new(num, self.den * l)
    }
}

impl Neg for Quat {
    type Output = Quat;
    fn neg(self) -> Quat {
        Quat {
            num: self.num.map(|c| -c),
            den: self.den,
        }
    }
}

impl Sub for Quat {
    type Output = Quat;
    fn sub(self, rhs: Quat) -> Quat {
        self + (-rhs)
    }
}

impl Mul for Quat {
    type Output = Quat;
    fn mul(self, rhs: Quat) -> Quat {
        self.try_mul(&rhs).expect("quaternion ring mismatch")
    }
}

impl<'a> Mul<&'a Quat> for &'a Quat {
    type Output = Quat;
    fn mul(self, rhs: &'a Quat) -> Quat {
        self.try_mul(rhs).expect("quaternion ring mismatch")
    }
}

pub fn quat_mul(x: &Quat, y: &Quat) -> Result<Quat> {
    x.try_mul(y)
}

pub fn quat_conj(x: &Quat) -> Quat {
    x.conj()
}

pub fn reduced_norm(x: &Quat) -> FieldElem {
    x.reduced_norm()
}

/// A 4×4 matrix over the base field, indexed `[row][col]`.
pub type FieldMatrix = [[FieldElem; 4]; 4];

/// Matrix of `x ↦ q1·x·q̄2` acting on coordinate columns.
pub fn similarity_matrix(q1: &Quat, q2: &Quat) -> Result<FieldMatrix> {
    if q1.ring() != q2.ring() {
        return Err(Error::RingMismatch(q1.ring(), q2.ring()));
    }
    let [a, b, c, d] = q1.num;
    let [t, u, v, w] = q2.num;
    let rows = [
        [
            a * t + b * u + c * v + d * w,
            -(b * t) + a * u + d * v - c * w,
            -(c * t) - d * u + a * v + b * w,
            -(d * t) + c * u - b * v + a * w,
        ],
        [
            b * t - a * u + d * v - c * w,
            a * t + b * u - c * v - d * w,
            -(d * t) + c * u + b * v - a * w,
            c * t + d * u + a * v + b * w,
        ],
        [
            c * t - d * u - a * v + b * w,
            d * t + c * u + b * v + a * w,
            a * t - b * u + c * v - d * w,
            -(b * t) - a * u + d * v + c * w,
        ],
        [
            d * t + c * u - b * v - a * w,
            -(c * t) + d * u - a * v + b * w,
            b * t + a * u + d * v + c * w,
            a * t - b * u - c * v + d * w,
        ],
    ];
    let den = q1.den * q2.den;
    Ok(rows.map(|row| row.map(|e| FieldElem::new(e, den))))
}

/// Apply a field matrix to a quaternion viewed as a coordinate column.
pub fn apply_matrix(m: &FieldMatrix, x: &Quat) -> Quat {
    let ring = x.ring();
    let coords: [FieldElem; 4] = std::array::from_fn(|r| {
        (0..4).fold(FieldElem::zero(ring), |acc, c| acc + m[r][c] * x.coord(c))
    });
    let den = coords.iter().fold(1i128, |l, e| {
        let g = gcd_i128(l, e.denom());
        l / g * e.denom()
    });
    Quat::new(
        coords.map(|e| e.numer().scale(den / e.denom())),
        den,
    )
}

/// Determinant by cofactor expansion (exact, 4×4 only).
pub fn determinant(m: &FieldMatrix) -> FieldElem {
    fn det3(m: &FieldMatrix, rows: [usize; 3], cols: [usize; 3]) -> FieldElem {
        let e = |r: usize, c: usize| m[rows[r]][cols[c]];
        e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1))
            - e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0))
            + e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0))
    }
    let ring = m[0][0].ring();
    let mut acc = FieldElem::zero(ring);
    for c in 0..4 {
        let cols: Vec<usize> = (0..4).filter(|&k| k != c).collect();
        let minor = det3(m, [1, 2, 3], [cols[0], cols[1], cols[2]]);
        let term = m[0][c] * minor;
        acc = if c % 2 == 0 { acc + term } else { acc - term };
    }
    acc
}
