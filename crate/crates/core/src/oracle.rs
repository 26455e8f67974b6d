//! Brute-force counts that share no logic with the closed forms.
//!
//! Sublattices are enumerated as Hermite normal forms and tested for
//! similarity by searching for a basis whose Gram matrix is a multiple of
//! the ambient one. Icosian submodules come from an exhaustive search for
//! the generators of right ideals. Everything here is exact integer work.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_integer::Roots;
use rayon::prelude::*;

use crate::arith::{divisors, exact_sqrt, gcd_i128};
use crate::error::{Error, Result};
use crate::hnf::LatticeKey;
use crate::order::{self, OrderId};
use crate::quadratic::{is_representable_index, QuadInt, RingId};
use crate::quaternion::Quat;

pub const DEFAULT_INDEX_BOUND: u64 = 49;
pub const DEFAULT_ICOSIAN_BOUND: u64 = 25;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AmbientLattice {
    Z4,
    /// The Hurwitz order 𝕁 with basis `1, i, j, (1+i+j+k)/2`.
    D4Star,
}

type Mat4 = [[i128; 4]; 4];

impl AmbientLattice {
    pub fn name(self) -> &'static str {
        match self {
            AmbientLattice::Z4 => "z4",
            AmbientLattice::D4Star => "d4star",
        }
    }

    /// Basis rows in Cartesian coordinates multiplied by [`Self::coord_scale`].
    pub fn basis(self) -> Mat4 {
        match self {
            AmbientLattice::Z4 => [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
            AmbientLattice::D4Star => [[2, 0, 0, 0], [0, 2, 0, 0], [0, 0, 2, 0], [1, 1, 1, 1]],
        }
    }

    pub fn coord_scale(self) -> i128 {
        match self {
            AmbientLattice::Z4 => 1,
            AmbientLattice::D4Star => 2,
        }
    }

    /// The Gram matrix is `gram() / gram_scale()`.
    pub fn gram_scale(self) -> i128 {
        match self {
            AmbientLattice::Z4 => 1,
            AmbientLattice::D4Star => 2,
        }
    }

    /// Integral Gram matrix of [`Self::basis`], scaled by [`Self::gram_scale`].
    pub fn gram(self) -> Mat4 {
        let b = self.basis();
        let s = self.coord_scale();
        let mut g = [[0i128; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                let dot: i128 = (0..4).map(|k| b[i][k] * b[j][k]).sum();
                g[i][j] = dot * self.gram_scale() / (s * s);
            }
        }
        g
    }

    fn basis_key(self) -> LatticeKey {
        LatticeKey::from_hnf(self.basis().iter().map(|r| r.to_vec()).collect())
            .expect("ambient bases are stored in Hermite normal form")
    }

    /// `xᵀ·G·y` for lattice coordinates `x`, `y`.
    fn bilinear(self, x: &[i128; 4], y: &[i128; 4]) -> i128 {
        let g = self.gram();
        (0..4)
            .map(|i| (0..4).map(|j| x[i] * g[i][j] * y[j]).sum::<i128>())
            .sum()
    }

    /// All lattice vectors `x` with `xᵀ·G·x = q`, in lattice coordinates.
    fn vectors_of_norm(self, q: i128) -> Vec<[i128; 4]> {
        // |y|² in scaled Cartesian coordinates
        let s = self.coord_scale();
        let target = q * s * s / self.gram_scale();
        let r = exact_sqrt_floor(target);
        let key = self.basis_key();
        let mut out = Vec::new();
        for a in -r..=r {
            let ra = target - a * a;
            if ra < 0 {
                continue;
            }
            let rb = exact_sqrt_floor(ra);
            for b in -rb..=rb {
                let rb2 = ra - b * b;
                let rc = exact_sqrt_floor(rb2);
                for c in -rc..=rc {
                    let rest = rb2 - c * c;
                    if let Some(d) = exact_sqrt(rest as u64) {
                        let d = d as i128;
                        for d in if d == 0 { vec![0] } else { vec![-d, d] } {
                            if let Some(x) = key.solve(&[a, b, c, d]) {
                                out.push([x[0], x[1], x[2], x[3]]);
                            }
                        }
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }
}

fn exact_sqrt_floor(n: i128) -> i128 {
    if n < 0 {
        -1
    } else {
        n.sqrt()
    }
}

/// Bounds on the brute-force searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    /// Largest sublattice index enumerated.
    pub index_bound: u64,
    /// Largest `m` for the icosian submodule search.
    pub icosian_bound: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            index_bound: DEFAULT_INDEX_BOUND,
            icosian_bound: DEFAULT_ICOSIAN_BOUND,
        }
    }
}

/// Every sublattice of the given index, one key per sublattice, sorted.
///
/// Keys are in the coordinates of the lattice basis, so the result does not
/// depend on which ambient lattice is named.
pub fn enumerate_sublattices(lattice: AmbientLattice, index: u64) -> Result<Vec<LatticeKey>> {
    OracleConfig::default().enumerate_sublattices(lattice, index)
}

pub fn is_similar_sublattice(key: &LatticeKey, lattice: AmbientLattice) -> Result<bool> {
    check_rank(key)?;
    let m = exact_sqrt(key.index() as u64)
        .filter(|_| key.index() <= u64::MAX as u128)
        .ok_or(Error::NonSquareIndex(key.index() as u64))? as i128;
    let mut cache = ShortVectors::new(lattice);
    Ok(similar_at_scale(key, lattice, m, &mut cache))
}

/// Whether `key = √μ·R(L)` for some rational `μ`, with `μ` read off from
/// the minimal norms of `key` and `L` rather than from the index.
pub fn is_similar_at_any_scale(key: &LatticeKey, lattice: AmbientLattice) -> Result<bool> {
    check_rank(key)?;
    let mut cache = ShortVectors::new(lattice);
    let min_norm = |cache: &mut ShortVectors, inside: Option<&LatticeKey>| -> i128 {
        (1..)
            .find(|&q| {
                cache.prepare(q);
                cache.get(q).iter().any(|v| inside.is_none_or(|k| k.contains(&v[..])))
            })
            .expect("a full-rank lattice has nonzero vectors")
    };
    let base = min_norm(&mut cache, None);
    let ours = min_norm(&mut cache, Some(key));
    let d = gcd_i128(ours, base);
    let (num, den) = (ours / d, base / d);
    // index = μ² and μ·G integral
    if num * num != key.index() as i128 * den * den {
        return Ok(false);
    }
    let g = lattice.gram();
    if g.iter().flatten().any(|v| v * num % den != 0) {
        return Ok(false);
    }
    let target = g.map(|row| row.map(|v| v * num / den));
    Ok(find_basis(key, lattice, &target, &mut cache).is_some())
}

fn check_rank(key: &LatticeKey) -> Result<()> {
    if key.rank() != 4 {
        return Err(Error::NotASublattice);
    }
    Ok(())
}

struct ShortVectors {
    lattice: AmbientLattice,
    by_norm: HashMap<i128, Vec<[i128; 4]>>,
}

impl ShortVectors {
    fn new(lattice: AmbientLattice) -> Self {
        ShortVectors {
            lattice,
            by_norm: HashMap::new(),
        }
    }

    fn prepare(&mut self, q: i128) {
        let lattice = self.lattice;
        self.by_norm.entry(q).or_insert_with(|| lattice.vectors_of_norm(q));
    }

    fn get(&self, q: i128) -> &[[i128; 4]] {
        &self.by_norm[&q]
    }
}

fn similar_at_scale(key: &LatticeKey, lattice: AmbientLattice, m: i128, cache: &mut ShortVectors) -> bool {
    let target = lattice.gram().map(|row| row.map(|v| v * m));
    find_basis(key, lattice, &target, cache).is_some()
}

/// Vectors `v_0..v_3` of `key` with `B(v_i, v_j) = target[i][j]`.
///
/// Any such quadruple spans a sublattice of index `√det(target)/√det(G)`
/// inside `key`; callers pick `target` so that this equals the index of
/// `key`, which forces the quadruple to generate it.
fn find_basis(key: &LatticeKey, lattice: AmbientLattice, target: &Mat4, cache: &mut ShortVectors) -> Option<[[i128; 4]; 4]> {
    for i in 0..4 {
        cache.prepare(target[i][i]);
    }
    find_basis_prepared(key, lattice, target, cache)
}

fn find_basis_prepared(key: &LatticeKey, lattice: AmbientLattice, target: &Mat4, cache: &ShortVectors) -> Option<[[i128; 4]; 4]> {
    let cands: Vec<Vec<[i128; 4]>> = (0..4)
        .map(|i| {
            cache
                .get(target[i][i])
                .iter()
                .filter(|v| key.contains(&v[..]))
                .copied()
                .collect()
        })
        .collect();
    let mut chosen = [[0i128; 4]; 4];
    fn go(level: usize, cands: &[Vec<[i128; 4]>], chosen: &mut [[i128; 4]; 4], lattice: AmbientLattice, target: &Mat4) -> bool {
        if level == 4 {
            return true;
        }
        for v in &cands[level] {
            if (0..level).all(|j| lattice.bilinear(&chosen[j], v) == target[j][level]) {
                chosen[level] = *v;
                if go(level + 1, cands, chosen, lattice, target) {
                    return true;
                }
            }
        }
        false
    }
    go(0, &cands, &mut chosen, lattice, target).then_some(chosen)
}

/// Number of similar sublattices of index `m²`.
pub fn count_ssl_bruteforce(lattice: AmbientLattice, m: u64) -> Result<u64> {
    OracleConfig::default().count_ssl_bruteforce(lattice, m)
}

/// How a similarity submodule sits with respect to the order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SsmKind {
    LeftIdeal,
    RightIdeal,
    TwoSided,
    /// Neither a left nor a right ideal.
    Product,
}

/// The similarity submodules of 𝕀 of index `m²`, sorted by key.
pub fn enumerate_ssm_icosian(m: u64) -> Result<Vec<(LatticeKey, SsmKind)>> {
    OracleConfig::default().enumerate_ssm_icosian(m)
}

impl OracleConfig {
    pub fn enumerate_sublattices(&self, _lattice: AmbientLattice, index: u64) -> Result<Vec<LatticeKey>> {
        if index > self.index_bound {
            return Err(Error::BoundExceeded {
                requested: index,
                bound: self.index_bound,
            });
        }
        if index == 0 {
            return Err(Error::Domain("index must be positive".into()));
        }
        let mut diagonals = Vec::new();
        for a in divisors(index) {
            for b in divisors(index / a) {
                for c in divisors(index / a / b) {
                    diagonals.push([a, b, c, index / a / b / c].map(|v| v as i128));
                }
            }
        }
        let keys: Vec<Vec<LatticeKey>> = diagonals
            .par_iter()
            .map(hnfs_with_diagonal)
            .collect();
        let mut keys: Vec<LatticeKey> = keys.into_iter().flatten().collect();
        keys.sort();
        Ok(keys)
    }

    pub fn count_ssl_bruteforce(&self, lattice: AmbientLattice, m: u64) -> Result<u64> {
        Ok(self.similar_sublattices(lattice, m)?.len() as u64)
    }

    /// The similar sublattices of index `m²`, sorted.
    pub fn similar_sublattices(&self, lattice: AmbientLattice, m: u64) -> Result<Vec<LatticeKey>> {
        let index = m.checked_mul(m).ok_or(Error::BoundExceeded {
            requested: u64::MAX,
            bound: self.index_bound,
        })?;
        let keys = self.enumerate_sublattices(lattice, index)?;
        let mut cache = ShortVectors::new(lattice);
        let target = lattice.gram().map(|row| row.map(|v| v * m as i128));
        for i in 0..4 {
            cache.prepare(target[i][i]);
        }
        let cache = cache;
        // M = σ(L) with σσᵀ = m forces m·L* ⊆ M, and L* ⊇ L (Z⁴) or L* ⊇ 2L (D₄*)
        let multiple = m as i128 * lattice.gram_scale();
        let hits: Vec<Option<LatticeKey>> = keys
            .into_par_iter()
            .map(|k| {
                let dual_ok = (0..4).all(|i| {
                    let mut v = vec![0i128; 4];
                    v[i] = multiple;
                    k.contains(&v)
                });
                if !dual_ok {
                    return None;
                }
                find_basis_prepared(&k, lattice, &target, &cache).map(|_| k)
            })
            .collect();
        Ok(hits.into_iter().flatten().collect())
    }

    pub fn enumerate_ssm_icosian(&self, m: u64) -> Result<Vec<(LatticeKey, SsmKind)>> {
        if m > self.icosian_bound {
            return Err(Error::BoundExceeded {
                requested: m,
                bound: self.icosian_bound,
            });
        }
        if m == 0 || !is_representable_index(m, RingId::GoldenInt) {
            return Err(Error::NotRepresentable(m));
        }
        let order = OrderId::Icosian;
        let mut right: BTreeMap<u64, Vec<Quat>> = BTreeMap::new();
        for n in divisors(m) {
            if is_representable_index(n, RingId::GoldenInt) {
                right.insert(n, right_ideal_generators(n)?);
            }
        }
        let mut pairs: Vec<(Quat, Quat)> = Vec::new();
        for (&n, reps) in &right {
            let Some(lefts) = right.get(&(m / n)) else { continue };
            for a in reps {
                for b in lefts {
                    pairs.push((*a, b.conj()));
                }
            }
        }
        let keys: Vec<LatticeKey> = pairs
            .par_iter()
            .map(|(a, b)| {
                let (a, b) = order::canonicalize_pair(a, b, order)?;
                order::module_lattice(&a, &b)
            })
            .collect::<Result<_>>()?;
        let distinct: BTreeSet<LatticeKey> = keys.into_iter().collect();
        distinct
            .into_iter()
            .map(|k| {
                let kind = classify(order, &k)?;
                Ok((k, kind))
            })
            .collect()
    }
}

fn hnfs_with_diagonal(d: &[i128; 4]) -> Vec<LatticeKey> {
    // row i has free entries in columns j < i, each in [0, d[j])
    let free: Vec<(usize, usize)> = (0..4).flat_map(|i| (0..i).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    let mut rows = vec![vec![0i128; 4]; 4];
    for i in 0..4 {
        rows[i][i] = d[i];
    }
    fn go(pos: usize, free: &[(usize, usize)], d: &[i128; 4], rows: &mut Vec<Vec<i128>>, out: &mut Vec<LatticeKey>) {
        if pos == free.len() {
            out.push(LatticeKey::from_hnf(rows.clone()).expect("valid by construction"));
            return;
        }
        let (i, j) = free[pos];
        for v in 0..d[j] {
            rows[i][j] = v;
            go(pos + 1, free, d, rows, out);
        }
        rows[i][j] = 0;
    }
    go(0, &free, d, &mut rows, &mut out);
    out
}

fn key_quats(order: OrderId, key: &LatticeKey) -> Vec<Quat> {
    key.rows().iter().map(|r| order::from_z_coords(order, r)).collect()
}

fn classify(order: OrderId, key: &LatticeKey) -> Result<SsmKind> {
    let gens = key_quats(order, key);
    let basis = order::z_basis(order);
    let closed = |left: bool| -> Result<bool> {
        for g in &gens {
            for e in basis {
                let p = if left { e * g } else { g * e };
                match order::z_coords(order, &p) {
                    Some(y) if key.contains(&y) => {}
                    _ => return Ok(false),
                }
            }
        }
        Ok(true)
    };
    Ok(match (closed(true)?, closed(false)?) {
        (true, true) => SsmKind::TwoSided,
        (true, false) => SsmKind::LeftIdeal,
        (false, true) => SsmKind::RightIdeal,
        (false, false) => SsmKind::Product,
    })
}

/// One generator per right ideal `a𝕀` with `N(|a|²) = n`.
pub fn right_ideal_generators(n: u64) -> Result<Vec<Quat>> {
    let raw = icosians_of_norm(n)?;
    let mut seen: BTreeMap<LatticeKey, Quat> = BTreeMap::new();
    let one = Quat::one(RingId::GoldenInt);
    for a in raw {
        let k = order::submodule_key(OrderId::Icosian, &a, &one)?;
        seen.entry(k).or_insert(a);
    }
    Ok(seen.into_values().collect())
}

/// Every icosian `a` with `N(|a|²) = n` whose norm `α = |a|²` is balanced,
/// `α ≤ τ²·α'` and `α' ≤ τ²·α`. Each class `a·τ^k` has a member here.
pub fn icosians_of_norm(n: u64) -> Result<Vec<Quat>> {
    if n == 0 {
        return Err(Error::Domain("norm must be positive".into()));
    }
    let tau2 = QuadInt::golden(1, 1);
    // 4α ≤ 4τ√n in both embeddings, i.e. (4α)² ≤ 16·n·τ²
    let cap = tau2.scale(16 * n as i128);
    let within = |s: QuadInt| -> bool {
        (s * s).cmp_real(cap).is_le() && {
            let c = s.conjugate();
            (c * c).cmp_real(cap).is_le()
        }
    };
    // coordinates c = (p + qτ)/2 with |c|, |c'| ≤ √(τ√n) < r
    let r = exact_sqrt_floor(2 * (exact_sqrt_floor(n as i128) + 1)) + 1;
    let mut coords: Vec<(QuadInt, QuadInt)> = Vec::new();
    for p in -3 * r..=3 * r {
        for q in -2 * r..=2 * r {
            let c = QuadInt::golden(p, q);
            let sq = c * c;
            if within(sq) {
                coords.push((c, sq));
            }
        }
    }
    let target = n as i128;
    let found: Vec<Vec<Quat>> = coords
        .par_iter()
        .map(|&(c0, s0)| {
            let mut out = Vec::new();
            for &(c1, s1) in &coords {
                let s01 = s0 + s1;
                if !within(s01) {
                    continue;
                }
                for &(c2, s2) in &coords {
                    let s012 = s01 + s2;
                    if !within(s012) {
                        continue;
                    }
                    for &(c3, s3) in &coords {
                        let s = s012 + s3;
                        if !within(s) {
                            continue;
                        }
                        // α = s/4 must be integral with N(α) = n
                        let Some(alpha) = s.div_int(4) else { continue };
                        if alpha.norm() != target {
                            continue;
                        }
                        if (tau2 * alpha.conjugate()).cmp_real(alpha).is_lt() || (tau2 * alpha).cmp_real(alpha.conjugate()).is_lt() {
                            continue;
                        }
                        let q = Quat::new([c0, c1, c2, c3], 2);
                        if order::contains(OrderId::Icosian, &q) {
                            out.push(q);
                        }
                    }
                }
            }
            out
        })
        .collect();
    Ok(found.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn key(rows: [[i128; 4]; 4]) -> LatticeKey {
        LatticeKey::from_generators(4, &rows.map(|r| r.to_vec())).unwrap()
    }

    #[test]
    fn grams() {
        assert_eq!(AmbientLattice::Z4.gram(), [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]);
        assert_eq!(
            AmbientLattice::D4Star.gram(),
            [[2, 0, 0, 1], [0, 2, 0, 1], [0, 0, 2, 1], [1, 1, 1, 2]]
        );
    }

    #[test]
    fn short_vector_counts() {
        // r4(n) for Z⁴ and the 24 units / 24 roots of norm 2 in 𝕁
        assert_eq!(AmbientLattice::Z4.vectors_of_norm(1).len(), 8);
        assert_eq!(AmbientLattice::Z4.vectors_of_norm(2).len(), 24);
        assert_eq!(AmbientLattice::Z4.vectors_of_norm(3).len(), 32);
        assert_eq!(AmbientLattice::D4Star.vectors_of_norm(2).len(), 24);
        assert_eq!(AmbientLattice::D4Star.vectors_of_norm(4).len(), 24);
    }

    #[test]
    fn index_two_sublattices() {
        assert_eq!(enumerate_sublattices(AmbientLattice::Z4, 2).unwrap().len(), 15);
        assert_eq!(enumerate_sublattices(AmbientLattice::Z4, 1).unwrap(), vec![LatticeKey::identity(4)]);
        assert!(matches!(
            enumerate_sublattices(AmbientLattice::Z4, 50),
            Err(Error::BoundExceeded { .. })
        ));
    }

    #[test]
    fn similarity_examples() {
        let two = key([[2, 0, 0, 0], [0, 2, 0, 0], [0, 0, 2, 0], [0, 0, 0, 2]]);
        assert_eq!(is_similar_sublattice(&two, AmbientLattice::Z4), Ok(true));
        let rot = key([[1, 1, 0, 0], [1, -1, 0, 0], [0, 0, 1, 1], [0, 0, 1, -1]]);
        assert_eq!(is_similar_sublattice(&rot, AmbientLattice::Z4), Ok(true));
        let flat = key([[2, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 2]]);
        assert_eq!(is_similar_sublattice(&flat, AmbientLattice::Z4), Ok(false));
        let odd = key([[2, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]);
        assert_eq!(is_similar_sublattice(&odd, AmbientLattice::Z4), Err(Error::NonSquareIndex(2)));
        let bad = LatticeKey::identity(3);
        assert_eq!(is_similar_sublattice(&bad, AmbientLattice::Z4), Err(Error::NotASublattice));
    }

    #[test]
    fn small_counts() {
        assert_eq!(count_ssl_bruteforce(AmbientLattice::Z4, 1), Ok(1));
        assert_eq!(count_ssl_bruteforce(AmbientLattice::Z4, 2), Ok(3));
        assert_eq!(count_ssl_bruteforce(AmbientLattice::D4Star, 2), Ok(1));
    }

    #[test]
    fn icosian_norm_one_is_the_unit_group() {
        let units = icosians_of_norm(1).unwrap();
        assert_eq!(units.len(), 120);
        assert_eq!(right_ideal_generators(1).unwrap().len(), 1);
        assert_eq!(enumerate_ssm_icosian(1).unwrap(), vec![(LatticeKey::identity(8), SsmKind::TwoSided)]);
        assert_eq!(enumerate_ssm_icosian(2), Err(Error::NotRepresentable(2)));
        assert!(matches!(enumerate_ssm_icosian(26), Err(Error::BoundExceeded { .. })));
    }
}
