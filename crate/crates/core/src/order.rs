//! The maximal orders 𝕁 (Hurwitz), 𝕀 (icosian) and 𝕂 (cubian).
//!
//! Each order carries a frozen basis over its scalar ring. The `Z`-basis
//! used for lattice keys interleaves that basis with its `ω`-multiples:
//! `e_0, ω·e_0, e_1, ω·e_1, …` (just `e_0..e_3` for 𝕁).

use std::collections::{HashSet, VecDeque};
use std::sync::OnceLock;

use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::hnf::LatticeKey;
use crate::quadratic::{canonical_associate, QuadInt, RingId};
use crate::quaternion::{FieldElem, Quat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OrderId {
    Hurwitz,
    Icosian,
    Cubian,
}

impl OrderId {
    pub const ALL: [OrderId; 3] = [OrderId::Hurwitz, OrderId::Icosian, OrderId::Cubian];

    pub fn ring(self) -> RingId {
        match self {
            OrderId::Hurwitz => RingId::RationalInt,
            OrderId::Icosian => RingId::GoldenInt,
            OrderId::Cubian => RingId::Sqrt2Int,
        }
    }

    /// `Z`-rank of the order: 4 for 𝕁, 8 otherwise.
    pub fn z_rank(self) -> usize {
        4 * self.ring().degree()
    }

    /// Expected size of the unit group.
    pub fn unit_count(self) -> usize {
        match self {
            OrderId::Hurwitz => 24,
            OrderId::Icosian => 120,
            OrderId::Cubian => 48,
        }
    }

    fn data(self) -> &'static OrderData {
        static HURWITZ: OnceLock<OrderData> = OnceLock::new();
        static ICOSIAN: OnceLock<OrderData> = OnceLock::new();
        static CUBIAN: OnceLock<OrderData> = OnceLock::new();
        let cell = match self {
            OrderId::Hurwitz => &HURWITZ,
            OrderId::Icosian => &ICOSIAN,
            OrderId::Cubian => &CUBIAN,
        };
        cell.get_or_init(|| OrderData::build(self))
    }
}

/// A quaternion certified to lie in an order, with its coordinates in the
/// order's scalar-ring basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrderElement {
    order: OrderId,
    q: Quat,
    basis_coords: [QuadInt; 4],
}

impl OrderElement {
    pub fn new(order: OrderId, q: Quat) -> Result<Self> {
        if q.ring() != order.ring() {
            return Err(Error::RingMismatch(q.ring(), order.ring()));
        }
        let y = order.data().z_coords(&q).ok_or(Error::NotInOrder(order))?;
        let basis_coords = match order.ring() {
            RingId::RationalInt => [0, 1, 2, 3].map(|k| QuadInt::rational(y[k])),
            ring => [0, 1, 2, 3].map(|k| QuadInt::new(ring, y[2 * k], y[2 * k + 1])),
        };
        Ok(OrderElement {
            order,
            q,
            basis_coords,
        })
    }

    pub fn order(&self) -> OrderId {
        self.order
    }

    pub fn quat(&self) -> &Quat {
        &self.q
    }

    pub fn basis_coords(&self) -> &[QuadInt; 4] {
        &self.basis_coords
    }

    pub fn reduced_norm(&self) -> QuadInt {
        self.q
            .reduced_norm()
            .as_integral()
            .expect("order elements have integral norm")
    }

    pub fn is_zero(&self) -> bool {
        self.q.is_zero()
    }
}

struct OrderData {
    /// Frozen basis over the scalar ring.
    ring_basis: [Quat; 4],
    z_basis: Vec<Quat>,
    /// `(2·B)^{-1} = inv_num / inv_den`, where the rows of `B` are the
    /// `z_basis` component vectors.
    inv_num: Vec<Vec<i128>>,
    inv_den: i128,
    units: Vec<OrderElement>,
}

/// Integer component vector of `q` (length 4 or 8) and the common denominator.
fn components(q: &Quat) -> (Vec<i128>, i128) {
    let v = match q.ring() {
        RingId::RationalInt => q.numer().iter().map(|c| c.a()).collect(),
        _ => q.numer().iter().flat_map(|c| [c.a(), c.b()]).collect(),
    };
    (v, q.denom())
}

fn invert(mat: &[Vec<i128>]) -> (Vec<Vec<i128>>, i128) {
    let n = mat.len();
    let mut a: Vec<Vec<Ratio<i128>>> = mat
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Ratio<i128>> = row.iter().map(|&v| Ratio::from_integer(v)).collect();
            r.extend((0..n).map(|j| if i == j { Ratio::one() } else { Ratio::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .expect("order basis is linearly independent");
        a.swap(col, piv);
        let p = a[col][col];
        for v in a[col].iter_mut() {
            *v /= p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                let src = a[col].clone();
                for (t, s) in a[r].iter_mut().zip(src) {
                    *t -= f * s;
                }
            }
        }
    }
    let den = a
        .iter()
        .flat_map(|r| r[n..].iter())
        .fold(1i128, |l, v| num_integer::lcm(l, *v.denom()));
    let num = a
        .iter()
        .map(|r| r[n..].iter().map(|v| v.numer() * (den / v.denom())).collect())
        .collect();
    (num, den)
}

impl OrderData {
    fn build(order: OrderId) -> Self {
        let ring = order.ring();
        let half = |c: [(i128, i128); 4]| Quat::from_pairs(ring, c, 2);
        let rat = |c: [i128; 4], d: i128| Quat::new(c.map(|v| QuadInt::from_int(ring, v)), d);
        let one = rat([1, 0, 0, 0], 1);
        let i = rat([0, 1, 0, 0], 1);
        let j = rat([0, 0, 1, 0], 1);
        let t = rat([1, 1, 1, 1], 2);
        let (ring_basis, seeds) = match order {
            OrderId::Hurwitz => ([one, i, j, t], vec![i, j, t]),
            OrderId::Icosian => {
                // (τ, 1, −1/τ, 0)/2 and (1, −1/τ, τ, 0)/2, using 1/τ = τ − 1
                let g = half([(0, 1), (1, 0), (1, -1), (0, 0)]);
                let e = half([(1, 0), (1, -1), (0, 1), (0, 0)]);
                ([one, i, t, e], vec![i, j, t, g])
            }
            OrderId::Cubian => {
                // (1 + i)/√2 = √2(1 + i)/2
                let a = half([(0, 1), (0, 1), (0, 0), (0, 0)]);
                let b = half([(0, 1), (0, 0), (0, 1), (0, 0)]);
                ([one, a, b, t], vec![a, b, t])
            }
        };
        let z_basis: Vec<Quat> = match ring.generator() {
            None => ring_basis.to_vec(),
            Some(w) => ring_basis
                .iter()
                .flat_map(|e| [*e, e.scale(FieldElem::from_quad(w))])
                .collect(),
        };
        let rows: Vec<Vec<i128>> = z_basis
            .iter()
            .map(|q| {
                let (v, d) = components(q);
                v.into_iter().map(|x| x * 2 / d).collect()
            })
            .collect();
        let (inv_num, inv_den) = invert(&rows);
        let mut data = OrderData {
            ring_basis,
            z_basis,
            inv_num,
            inv_den,
            units: Vec::new(),
        };
        data.units = close_under_products(order, &data, &seeds);
        data
    }

    /// Coordinates of `q` in the `Z`-basis; `None` unless all are integers.
    fn z_coords(&self, q: &Quat) -> Option<Vec<i128>> {
        let (v, d) = components(q);
        let den = d.checked_mul(self.inv_den)?;
        (0..v.len())
            .map(|k| {
                let mut acc: i128 = 0;
                for (j, &x) in v.iter().enumerate() {
                    acc = acc.checked_add(x.checked_mul(self.inv_num[j][k])?)?;
                }
                let acc = acc.checked_mul(2)?;
                (acc % den == 0).then(|| acc / den)
            })
            .collect()
    }

    fn quat_at(&self, ring: RingId, y: &[i128]) -> Quat {
        y.iter()
            .zip(&self.z_basis)
            .fold(Quat::zero(ring), |acc, (&c, e)| {
                acc + e.scale(FieldElem::from_int(ring, c))
            })
    }
}

const UNIT_CLOSURE_CAP: usize = 10_000;

fn close_under_products(order: OrderId, data: &OrderData, seeds: &[Quat]) -> Vec<OrderElement> {
    let one = Quat::one(order.ring());
    let mut seen: HashSet<Quat> = HashSet::from([one]);
    let mut list = vec![one];
    let mut queue = VecDeque::from([one]);
    let mut products = 0usize;
    while let Some(x) = queue.pop_front() {
        for s in seeds {
            products += 1;
            assert!(
                products <= UNIT_CLOSURE_CAP,
                "unit group closure for {order:?} exceeded {UNIT_CLOSURE_CAP} products"
            );
            let y = &x * s;
            if seen.insert(y) {
                list.push(y);
                queue.push_back(y);
            }
        }
    }
    let mut units: Vec<OrderElement> = list
        .into_iter()
        .map(|q| {
            let y = data.z_coords(&q).expect("unit lies in the order");
            let basis_coords = match order.ring() {
                RingId::RationalInt => [0, 1, 2, 3].map(|k| QuadInt::rational(y[k])),
                ring => [0, 1, 2, 3].map(|k| QuadInt::new(ring, y[2 * k], y[2 * k + 1])),
            };
            OrderElement {
                order,
                q,
                basis_coords,
            }
        })
        .collect();
    units.sort_by_key(|a| components(&a.q));
    units
}

/// The finite unit group of `order`, closed from the listed generators.
pub fn unit_group(order: OrderId) -> &'static [OrderElement] {
    &order.data().units
}

/// Frozen basis of `order` over its scalar ring.
pub fn ring_basis(order: OrderId) -> &'static [Quat; 4] {
    &order.data().ring_basis
}

/// The `Z`-basis that lattice keys refer to.
pub fn z_basis(order: OrderId) -> &'static [Quat] {
    &order.data().z_basis
}

pub fn contains(order: OrderId, q: &Quat) -> bool {
    q.ring() == order.ring() && order.data().z_coords(q).is_some()
}

/// Coordinates of `q` with respect to [`z_basis`], if `q` lies in the order.
pub fn z_coords(order: OrderId, q: &Quat) -> Option<Vec<i128>> {
    if q.ring() != order.ring() {
        return None;
    }
    order.data().z_coords(q)
}

/// Inverse of [`z_coords`].
pub fn from_z_coords(order: OrderId, y: &[i128]) -> Quat {
    assert_eq!(y.len(), order.z_rank());
    order.data().quat_at(order.ring(), y)
}

/// Canonical key of the `Z`-span of `gens`, which must lie in the order.
pub fn span_key(order: OrderId, gens: &[Quat]) -> Result<LatticeKey> {
    let rows: Vec<Vec<i128>> = gens
        .iter()
        .map(|q| z_coords(order, q).ok_or(Error::NotSubmodule))
        .collect::<Result<_>>()?;
    LatticeKey::from_generators(order.z_rank(), &rows)
}

/// Key of `a·𝒪·b` for arbitrary field quaternions; `NotSubmodule` unless it lies in 𝒪.
pub fn submodule_key(order: OrderId, a: &Quat, b: &Quat) -> Result<LatticeKey> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroElement);
    }
    let gens: Vec<Quat> = z_basis(order).iter().map(|e| &(a * e) * b).collect();
    span_key(order, &gens)
}

/// The content `c(a)`: the largest scalar dividing `a` inside the order,
/// normalised by [`canonical_associate`].
pub fn content(a: &OrderElement) -> Result<QuadInt> {
    if a.is_zero() {
        return Err(Error::ZeroElement);
    }
    let g = a
        .basis_coords
        .iter()
        .fold(QuadInt::zero(a.order.ring()), |g, &c| g.gcd(c));
    canonical_associate(g)
}

pub fn is_primitive(a: &OrderElement) -> Result<bool> {
    Ok(content(a)?.is_unit())
}

/// Oddness in 𝕁: the reduced norm is odd.
pub fn is_odd(a: &OrderElement) -> Result<bool> {
    if a.order != OrderId::Hurwitz {
        return Err(Error::UnsupportedOrder(a.order));
    }
    if a.is_zero() {
        return Err(Error::ZeroElement);
    }
    Ok(a.reduced_norm().a().rem_euclid(2) == 1)
}

/// Key of the submodule `a·𝒪·b`; its index is `N(|a|²|b|²)²`.
pub fn module_lattice(a: &OrderElement, b: &OrderElement) -> Result<LatticeKey> {
    assert_eq!(a.order, b.order, "elements of different orders");
    submodule_key(a.order, &a.q, &b.q)
}

/// Rewrite `a·𝒪·b` as `a'·𝒪·b'` with `a'` primitive (and odd in 𝕁) and `b' ∈ 𝒪`.
pub fn canonicalize_pair(a: &Quat, b: &Quat, order: OrderId) -> Result<(OrderElement, OrderElement)> {
    for q in [a, b] {
        if q.ring() != order.ring() {
            return Err(Error::RingMismatch(q.ring(), order.ring()));
        }
    }
    // containment check; also rejects zero factors
    submodule_key(order, a, b)?;
    let ring = order.ring();

    // clear denominators: a·d has integral coordinates in 1, i, j, k
    let d = FieldElem::from_int(ring, a.denom());
    let d_inv = d.inverse().expect("nonzero denominator");
    let a1 = OrderElement::new(order, a.scale(d))?;
    let b1 = b.scale(d_inv);

    let c = FieldElem::from_quad(content(&a1)?);
    let c_inv = c.inverse().expect("content is nonzero");
    let mut a2 = a1.q.scale(c_inv);
    let mut b2 = b1.scale(c);

    if order == OrderId::Hurwitz {
        let x = Quat::from_ints([1, 1, 0, 0], 1);
        let even = OrderElement::new(order, a2).map(|e| !is_odd(&e).expect("hurwitz"))?;
        if even {
            a2 = a2 * x.inverse().expect("1 + i is invertible");
            b2 = x * b2;
        }
    }
    let a_el = OrderElement::new(order, a2)?;
    let b_el = OrderElement::new(order, b2).map_err(|_| Error::NotSubmodule)?;
    debug_assert!(is_primitive(&a_el).unwrap());
    Ok((a_el, b_el))
}
