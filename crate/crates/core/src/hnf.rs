//! Hermite normal form keys for full-rank sublattices of `Z^n`.
//!
//! Rows generate the lattice. The canonical form is lower triangular with
//! a positive diagonal and every entry left of the diagonal reduced into
//! `[0, h[j][j])`, which makes it unique for a given lattice.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeKey {
    rank: usize,
    rows: Vec<Vec<i128>>,
    index: u128,
}

impl fmt::Debug for LatticeKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LatticeKey(index {}; {:?})", self.index, self.rows)
    }
}

impl fmt::Display for LatticeKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

fn ovf<T>(v: Option<T>) -> Result<T> {
    v.ok_or(Error::Overflow("hermite normal form"))
}

fn axpy(target: &mut [i128], q: i128, src: &[i128]) -> Result<()> {
    // target -= q * src
    for (t, s) in target.iter_mut().zip(src) {
        *t = ovf(t.checked_sub(ovf(q.checked_mul(*s))?))?;
    }
    Ok(())
}

impl LatticeKey {
    /// Canonical key of the lattice spanned by `generators` (each of length `rank`).
    ///
    /// Fails with a domain error when the generators do not span a full-rank lattice.
    pub fn from_generators(rank: usize, generators: &[Vec<i128>]) -> Result<Self> {
        let mut work: Vec<Vec<i128>> = generators
            .iter()
            .filter(|g| g.iter().any(|&v| v != 0))
            .cloned()
            .collect();
        if work.iter().any(|g| g.len() != rank) {
            return Err(Error::Domain("generator length differs from rank".into()));
        }
        let mut rows = vec![vec![0i128; rank]; rank];
        for col in (0..rank).rev() {
            loop {
                let pivot = work
                    .iter()
                    .enumerate()
                    .filter(|(_, r)| r[col] != 0)
                    .min_by_key(|(_, r)| r[col].unsigned_abs())
                    .map(|(i, _)| i);
                let Some(p) = pivot else {
                    return Err(Error::Domain("generators do not span a full-rank lattice".into()));
                };
                let prow = work[p].clone();
                let mut done = true;
                for (i, r) in work.iter_mut().enumerate() {
                    if i != p && r[col] != 0 {
                        let q = r[col].div_euclid(prow[col]);
                        axpy(r, q, &prow)?;
                        if r[col] != 0 {
                            done = false;
                        }
                    }
                }
                if done {
                    let mut prow = work.swap_remove(p);
                    if prow[col] < 0 {
                        for v in prow.iter_mut() {
                            *v = -*v;
                        }
                    }
                    rows[col] = prow;
                    work.retain(|r| r.iter().any(|&v| v != 0));
                    break;
                }
            }
        }
        for i in 0..rank {
            for j in (0..i).rev() {
                let q = rows[i][j].div_euclid(rows[j][j]);
                if q != 0 {
                    let src = rows[j].clone();
                    axpy(&mut rows[i], q, &src)?;
                }
            }
        }
        let mut index: u128 = 1;
        for (i, r) in rows.iter().enumerate() {
            index = ovf(index.checked_mul(r[i] as u128))?;
        }
        Ok(LatticeKey { rank, rows, index })
    }

    /// Accept a matrix that is already in canonical form.
    pub fn from_hnf(rows: Vec<Vec<i128>>) -> Result<Self> {
        let rank = rows.len();
        let mut index: u128 = 1;
        for (i, r) in rows.iter().enumerate() {
            if r.len() != rank || r[i] <= 0 || r[i + 1..].iter().any(|&v| v != 0) {
                return Err(Error::Domain("matrix is not lower triangular with positive diagonal".into()));
            }
            if (0..i).any(|j| r[j] < 0 || r[j] >= rows[j][j]) {
                return Err(Error::Domain("off-diagonal entry not reduced".into()));
            }
            index = ovf(index.checked_mul(r[i] as u128))?;
        }
        Ok(LatticeKey { rank, rows, index })
    }

    pub fn identity(rank: usize) -> Self {
        let rows = (0..rank)
            .map(|i| (0..rank).map(|j| i128::from(i == j)).collect())
            .collect();
        LatticeKey { rank, rows, index: 1 }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Rows of the canonical generator matrix.
    pub fn rows(&self) -> &[Vec<i128>] {
        &self.rows
    }

    /// Index in `Z^rank` (the determinant).
    pub fn index(&self) -> u128 {
        self.index
    }

    /// Integer coefficients `c` with `v = Σ c_k·row_k`, if `v` lies in the lattice.
    pub fn solve(&self, v: &[i128]) -> Option<Vec<i128>> {
        assert_eq!(v.len(), self.rank);
        let mut rest = v.to_vec();
        let mut coeffs = vec![0i128; self.rank];
        for col in (0..self.rank).rev() {
            let d = self.rows[col][col];
            if rest[col] % d != 0 {
                return None;
            }
            let c = rest[col] / d;
            coeffs[col] = c;
            if c != 0 {
                axpy(&mut rest, c, &self.rows[col]).ok()?;
            }
        }
        Some(coeffs)
    }

    pub fn contains(&self, v: &[i128]) -> bool {
        self.solve(v).is_some()
    }

    /// Whether every row of `self` lies in `other`.
    pub fn is_sublattice_of(&self, other: &LatticeKey) -> bool {
        self.rank == other.rank && self.rows.iter().all(|r| other.contains(r))
    }
}
