//! Truncated Dirichlet series, stored as coefficient sequences `a(1..=N)`.
//!
//! Every operation is exact; arithmetic is checked and reports
//! [`Error::Overflow`] instead of wrapping.

use crate::arith::factorize;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoeffSeq {
    values: Vec<i128>,
}

fn ovf<T>(v: Option<T>, what: &'static str) -> Result<T> {
    v.ok_or(Error::Overflow(what))
}

impl CoeffSeq {
    /// Wrap `values`, where `values[m - 1]` is the coefficient of `m`.
    pub fn new(values: Vec<i128>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Domain("a coefficient sequence needs at least one term".into()));
        }
        Ok(CoeffSeq { values })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize) -> i128) -> Self {
        assert!(n >= 1, "a coefficient sequence needs at least one term");
        CoeffSeq {
            values: (1..=n).map(f).collect(),
        }
    }

    /// The identity `ε = (1, 0, 0, …)`.
    pub fn epsilon(n: usize) -> Self {
        Self::from_fn(n, |m| i128::from(m == 1))
    }

    /// Coefficients of `ζ(s)`.
    pub fn ones(n: usize) -> Self {
        Self::from_fn(n, |_| 1)
    }

    /// `c·k^{-s}`: a single coefficient `c` at `m = k`.
    pub fn monomial(n: usize, k: usize, c: i128) -> Self {
        Self::from_fn(n, |m| if m == k { c } else { 0 })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Coefficient of `m` (1-based).
    pub fn get(&self, m: usize) -> i128 {
        self.values[m - 1]
    }

    pub fn values(&self) -> &[i128] {
        &self.values
    }

    pub fn into_values(self) -> Vec<i128> {
        self.values
    }

    pub fn truncate(&self, n: usize) -> CoeffSeq {
        CoeffSeq {
            values: self.values[..n.min(self.len())].to_vec(),
        }
    }

    /// Pointwise sum.
    pub fn add(&self, other: &CoeffSeq) -> Result<CoeffSeq> {
        same_len(self, other)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| ovf(a.checked_add(*b), "series addition"))
            .collect::<Result<_>>()?;
        Ok(CoeffSeq { values })
    }

    /// Multiply every coefficient by `c`.
    pub fn scale(&self, c: i128) -> Result<CoeffSeq> {
        let values = self
            .values
            .iter()
            .map(|a| ovf(a.checked_mul(c), "series scaling"))
            .collect::<Result<_>>()?;
        Ok(CoeffSeq { values })
    }
}

fn same_len(a: &CoeffSeq, b: &CoeffSeq) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch(a.len(), b.len()));
    }
    Ok(())
}

/// Dirichlet convolution `C(m) = Σ_{d|m} A(d)·B(m/d)`.
pub fn convolve(a: &CoeffSeq, b: &CoeffSeq) -> Result<CoeffSeq> {
    same_len(a, b)?;
    let n = a.len();
    let mut out = vec![0i128; n];
    for d in 1..=n {
        let ad = a.values[d - 1];
        if ad == 0 {
            continue;
        }
        for (k, m) in (d..=n).step_by(d).enumerate() {
            let bk = b.values[k];
            if bk != 0 {
                let t = ovf(ad.checked_mul(bk), "convolution")?;
                out[m - 1] = ovf(out[m - 1].checked_add(t), "convolution")?;
            }
        }
    }
    Ok(CoeffSeq { values: out })
}

/// Convolution of several series, left to right.
pub fn convolve_all(parts: &[&CoeffSeq]) -> Result<CoeffSeq> {
    let (first, rest) = parts
        .split_first()
        .ok_or_else(|| Error::Domain("empty product".into()))?;
    rest.iter()
        .try_fold((*first).clone(), |acc, p| convolve(&acc, p))
}

/// The Dirichlet inverse; requires `A(1) = ±1`.
pub fn dirichlet_inverse(a: &CoeffSeq) -> Result<CoeffSeq> {
    let lead = a.values[0];
    if lead != 1 && lead != -1 {
        return Err(Error::NonInvertible(lead));
    }
    let n = a.len();
    // out(m) = −lead·Σ_{d|m, d<m} out(d)·A(m/d), accumulated by pushing each
    // finished out(d) into its multiples
    let mut acc = vec![0i128; n];
    let mut out = vec![0i128; n];
    out[0] = lead;
    for d in 1..=n {
        if d > 1 {
            out[d - 1] = ovf((-lead).checked_mul(acc[d - 1]), "dirichlet inverse")?;
        }
        let od = out[d - 1];
        if od == 0 {
            continue;
        }
        for k in 2..=n / d {
            let ak = a.values[k - 1];
            if ak != 0 {
                let t = ovf(od.checked_mul(ak), "dirichlet inverse")?;
                acc[d * k - 1] = ovf(acc[d * k - 1].checked_add(t), "dirichlet inverse")?;
            }
        }
    }
    Ok(CoeffSeq { values: out })
}

/// `s → k·s`: `B(m^k) = A(m)`, zero off the `k`-th powers.
pub fn dilate(a: &CoeffSeq, k: u32) -> CoeffSeq {
    assert!(k >= 1, "dilation exponent must be positive");
    let n = a.len();
    let mut out = vec![0i128; n];
    for m in 1..=n {
        match (m as u128).checked_pow(k) {
            Some(p) if p <= n as u128 => out[p as usize - 1] = a.values[m - 1],
            _ => break,
        }
    }
    CoeffSeq { values: out }
}

/// `s → s − 1` in the variable of `m^{-2s}`-indexed series: `B(m) = m·A(m)`.
pub fn shift(a: &CoeffSeq) -> Result<CoeffSeq> {
    let values = a
        .values
        .iter()
        .enumerate()
        .map(|(i, v)| ovf(v.checked_mul(i as i128 + 1), "shift"))
        .collect::<Result<_>>()?;
    Ok(CoeffSeq { values })
}

/// Assemble a multiplicative sequence from its prime-power values.
pub fn from_multiplicative(ppower: impl Fn(u64, u32) -> i128, n: usize) -> Result<CoeffSeq> {
    assert!(n >= 1, "a coefficient sequence needs at least one term");
    let mut values = vec![0i128; n];
    values[0] = 1;
    for m in 2..=n {
        let f = factorize(m as u64);
        let (p, r) = f[0];
        let pr = p.pow(r) as usize;
        if pr == m {
            let v0 = ppower(p, 0);
            if v0 != 1 {
                return Err(Error::BadNormalization { prime: p, value: v0 });
            }
            values[m - 1] = ppower(p, r);
        } else {
            values[m - 1] = ovf(
                values[pr - 1].checked_mul(values[m / pr - 1]),
                "multiplicative assembly",
            )?;
        }
    }
    Ok(CoeffSeq { values })
}

/// `a(1) = 1` and `a(mn) = a(m)·a(n)` for all coprime `m, n` with `mn ≤ N`.
///
/// Checking `a(m) = Π a(p^r)` over the factorization of every `m` is
/// equivalent and linear in `N`.
pub fn is_multiplicative(a: &CoeffSeq) -> bool {
    if a.values[0] != 1 {
        return false;
    }
    (2..=a.len()).all(|m| {
        let f = factorize(m as u64);
        if f.len() == 1 {
            return true;
        }
        let (p, r) = f[0];
        let pr = p.pow(r) as usize;
        a.values[pr - 1].checked_mul(a.values[m / pr - 1]) == Some(a.values[m - 1])
    })
}

/// `Σ_{m ≤ x} a(m)`, with `x` clamped to the series length.
pub fn partial_sum(a: &CoeffSeq, x: usize) -> i128 {
    a.values[..x.min(a.len())].iter().sum()
}
