//! Exact linear algebra over the rationals, plus a modular rank filter and
//! a reproducible sampler for "generic" rational points.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::error::{Error, Result};

pub type Q = BigRational;

/// Mersenne prime 2^61 - 1, used as the default modulus for rank filtering.
pub const DEFAULT_PRIME: u64 = (1 << 61) - 1;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Dense row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Q::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Q::one());
        }
        m
    }

    pub fn scalar(n: usize, s: Q) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, s.clone());
        }
        m
    }

    pub fn diagonal(diag: &[Q]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, d) in diag.iter().enumerate() {
            m.set(i, i, d.clone());
        }
        m
    }

    /// Builds a matrix from row-major integer entries.
    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count does not match shape");
        Self {
            rows,
            cols,
            data: entries.iter().map(|&e| q(e)).collect(),
        }
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Builds a matrix whose columns are the given vectors. `nrows` is needed
    /// when the column list is empty.
    pub fn from_columns(nrows: usize, columns: &[Vec<Q>]) -> Self {
        let mut m = Self::zeros(nrows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), nrows, "column length mismatch");
            for (r, v) in col.iter().enumerate() {
                m.set(r, c, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &Q {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Q) {
        self.data[r * self.cols + c] = v;
    }

    pub fn entries(&self) -> &[Q] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[Q] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Q> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| (0..self.cols).all(|c| r == c || self.get(r, c).is_zero()))
    }

    /// Returns the scalar `s` if the matrix equals `s * I`.
    pub fn as_scalar(&self) -> Option<Q> {
        if !self.is_diagonal() || self.rows == 0 {
            return None;
        }
        let s = self.get(0, 0).clone();
        (1..self.rows).all(|i| *self.get(i, i) == s).then_some(s)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn trace(&self) -> Q {
        assert!(self.is_square());
        (0..self.rows).fold(Q::zero(), |acc, i| acc + self.get(i, i))
    }

    pub fn scale(&self, s: &Q) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = r * out.cols + c;
                    out.data[idx] += a * b;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(self.cols, v.len(), "shape mismatch");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Q::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// `[a, b] = ab - ba`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for r1 in 0..self.rows {
            for c1 in 0..self.cols {
                let a = self.get(r1, c1);
                if a.is_zero() {
                    continue;
                }
                for r2 in 0..other.rows {
                    for c2 in 0..other.cols {
                        let b = other.get(r2, c2);
                        if !b.is_zero() {
                            out.set(r1 * other.rows + r2, c1 * other.cols + c2, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    /// Block-diagonal assembly.
    pub fn block_diag(blocks: &[QMatrix]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for r in 0..b.rows {
                for c in 0..b.cols {
                    let v = b.get(r, c);
                    if !v.is_zero() {
                        out.set(r0 + r, c0 + c, v.clone());
                    }
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Trace form `tr(self · other)` without forming the product.
    pub fn trace_pairing(&self, other: &Self) -> Q {
        assert_eq!((self.rows, self.cols), (other.cols, other.rows), "shape mismatch");
        let mut acc = Q::zero();
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                let b = other.get(k, r);
                if !b.is_zero() {
                    acc += a * b;
                }
            }
        }
        acc
    }

    /// Exact rank over Q by fraction-free (Bareiss) elimination.
    pub fn rank(&self) -> usize {
        bareiss_rank(integer_rows(self))
    }

    /// Exact rank over Q by Gauss-Jordan reduction. Independent of [`QMatrix::rank`];
    /// used where a second route is wanted.
    pub fn rank_by_rref(&self) -> usize {
        self.rref().1.len()
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.get(row, col).recip();
            for c in col..m.cols {
                let v = m.get(row, c) * &inv;
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let sub = &factor * m.get(row, c);
                    if !sub.is_zero() {
                        let v = m.get(r, c) - sub;
                        m.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Basis of the right null space `{x : self·x = 0}`.
    pub fn kernel_basis(&self) -> Vec<Vec<Q>> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Q::zero(); self.cols];
            v[free] = Q::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -r.get(row, free).clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Rank of the reduction modulo the prime `p`.
    pub fn rank_mod_p(&self, p: u64) -> Result<usize> {
        let mut rows = Vec::with_capacity(self.rows);
        for r in 0..self.rows {
            rows.push(
                self.row(r)
                    .iter()
                    .map(|x| reduce_mod_p(x, p))
                    .collect::<Result<Vec<u64>>>()?,
            );
        }
        Ok(rank_mod_p_rows(rows, p))
    }
}

/// Clears denominators row by row. Row scaling preserves rank.
fn integer_rows(m: &QMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows())
        .map(|r| integerize(m.row(r)))
        .filter(|row| row.iter().any(|x| !x.is_zero()))
        .collect()
}

/// Scales a rational vector by the lcm of its denominators.
pub fn integerize(v: &[Q]) -> Vec<BigInt> {
    let l = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    v.iter().map(|x| x.numer() * (&l / x.denom())).collect()
}

fn bareiss_rank(mut a: Vec<Vec<BigInt>>) -> usize {
    let rows = a.len();
    if rows == 0 {
        return 0;
    }
    let cols = a[0].len();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (top, rest) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pivot = &pivot_row[c];
        for row in rest.iter_mut() {
            let lead = row[c].clone();
            for j in (c + 1)..cols {
                let v = pivot * &row[j] - &lead * &pivot_row[j];
                row[j] = v / &prev;
            }
            row[c] = BigInt::zero();
        }
        prev = pivot_row[c].clone();
        r += 1;
    }
    r
}

pub fn mod_inv(a: u64, p: u64) -> u64 {
    mod_pow(a, p - 2, p)
}

pub fn mod_mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mod_mul(acc, base, p);
        }
        base = mod_mul(base, base, p);
        exp >>= 1;
    }
    acc
}

fn bigint_mod(x: &BigInt, p: u64) -> u64 {
    let m = x.mod_floor(&BigInt::from(p));
    m.to_u64().expect("residue fits in u64")
}

/// Image of a rational in F_p. Fails when `p` divides the denominator.
pub fn reduce_mod_p(x: &Q, p: u64) -> Result<u64> {
    let d = bigint_mod(x.denom(), p);
    if d == 0 {
        return Err(Error::BadPrime(p));
    }
    Ok(mod_mul(bigint_mod(x.numer(), p), mod_inv(d, p), p))
}

/// Rank of a matrix already reduced into F_p.
pub fn rank_mod_p_rows(mut a: Vec<Vec<u64>>, p: u64) -> usize {
    let rows = a.len();
    if rows == 0 {
        return 0;
    }
    let cols = a[0].len();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, piv);
        let inv = mod_inv(a[r][c], p);
        for v in &mut a[r][c..cols] {
            *v = mod_mul(*v, inv, p);
        }
        let (top, rest) = a.split_at_mut(r + 1);
        let pr = &top[r];
        for row in rest.iter_mut() {
            let f = row[c];
            if f == 0 {
                continue;
            }
            for j in c..cols {
                let sub = mod_mul(f, pr[j], p);
                row[j] = (row[j] + p - sub) % p;
            }
        }
        r += 1;
    }
    r
}

/// Indices of a maximal set of rows that stay independent modulo `p`, in input
/// order. Such rows are independent over Q as well.
pub fn independent_rows_mod_p(rows: &[Vec<u64>], p: u64) -> Vec<usize> {
    let mut basis: Vec<(usize, Vec<u64>)> = Vec::new();
    let mut picked = Vec::new();
    for (idx, row) in rows.iter().enumerate() {
        let mut v = row.clone();
        for (c, b) in &basis {
            let f = v[*c];
            if f == 0 {
                continue;
            }
            for (x, y) in v.iter_mut().zip(b) {
                if *y != 0 {
                    *x = (*x + p - mod_mul(f, *y, p)) % p;
                }
            }
        }
        if let Some(c) = v.iter().position(|&x| x != 0) {
            let inv = mod_inv(v[c], p);
            for x in v.iter_mut() {
                *x = mod_mul(*x, inv, p);
            }
            basis.push((c, v));
            picked.push(idx);
        }
    }
    picked
}

/// Exact null space of the system whose equations are `rows`. Equations are
/// first thinned to a subset independent modulo a large prime; the kernel of
/// the subset is then checked against every equation, with a full exact
/// solve as fallback.
pub fn kernel_of_rows(rows: &[Vec<Q>], len: usize) -> Vec<Vec<Q>> {
    let nonzero: Vec<&Vec<Q>> = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect();
    if nonzero.is_empty() {
        return QMatrix::zeros(0, len).kernel_basis();
    }
    let reduced: Result<Vec<Vec<u64>>> = nonzero
        .iter()
        .map(|r| r.iter().map(|x| reduce_mod_p(x, DEFAULT_PRIME)).collect())
        .collect();
    if let Ok(red) = reduced {
        let keep = independent_rows_mod_p(&red, DEFAULT_PRIME);
        let sub = if keep.is_empty() {
            QMatrix::zeros(0, len)
        } else {
            QMatrix::from_rows(keep.iter().map(|&i| nonzero[i].clone()).collect())
        };
        let kernel = sub.kernel_basis();
        let satisfied = kernel.iter().all(|k| {
            nonzero.iter().all(|r| {
                r.iter()
                    .zip(k)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Q::zero(), |acc, (a, b)| acc + a * b)
                    .is_zero()
            })
        });
        if satisfied {
            return kernel;
        }
    }
    QMatrix::from_rows(nonzero.into_iter().cloned().collect()).kernel_basis()
}

/// Rank of a set of rational vectors: first tries `p`, and only falls back
/// to exact arithmetic when the modular rank is deficient. A full modular
/// rank certifies full rational rank because reduction can only drop rank.
pub fn rank_of_vectors(vectors: &[Vec<Q>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let len = vectors[0].len();
    let full = vectors.len().min(len);
    let reduced: Result<Vec<Vec<u64>>> = vectors
        .iter()
        .map(|v| v.iter().map(|x| reduce_mod_p(x, DEFAULT_PRIME)).collect())
        .collect();
    if let Ok(rows) = reduced {
        if rank_mod_p_rows(rows, DEFAULT_PRIME) == full {
            return full;
        }
    }
    QMatrix::from_rows(vectors.to_vec()).rank()
}

/// Incrementally maintained span of rational vectors, with coordinates of
/// members relative to the inserted generators.
#[derive(Debug, Clone, Default)]
pub struct LinearSpan {
    len: usize,
    /// Echelon rows: (pivot column, reduced vector, combination of generators).
    rows: Vec<(usize, Vec<Q>, Vec<Q>)>,
    generators: usize,
}

impl LinearSpan {
    pub fn new(len: usize) -> Self {
        Self {
            len,
            rows: Vec::new(),
            generators: 0,
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Number of independent generators accepted so far.
    pub fn generators(&self) -> usize {
        self.generators
    }

    fn reduce(&self, v: &[Q]) -> (Vec<Q>, Vec<Q>) {
        assert_eq!(v.len(), self.len, "vector length mismatch");
        let mut v = v.to_vec();
        let mut comb = vec![Q::zero(); self.generators];
        for (p, row, rc) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            for (x, y) in comb.iter_mut().zip(rc) {
                if !y.is_zero() {
                    *x += &f * y;
                }
            }
        }
        (v, comb)
    }

    /// Adds `v` as a generator if it is independent; returns whether it was.
    pub fn insert(&mut self, v: &[Q]) -> bool {
        let (mut r, comb) = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].recip();
        for x in r.iter_mut() {
            *x *= &inv;
        }
        // The new generator equals r_unscaled + Σ comb_k g_k.
        self.generators += 1;
        for (_, _, rc) in self.rows.iter_mut() {
            rc.push(Q::zero());
        }
        let mut rc: Vec<Q> = comb.iter().map(|c| -(c * &inv)).collect();
        rc.push(inv.clone());
        self.rows.push((p, r, rc));
        true
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        self.reduce(v).0.iter().all(Zero::is_zero)
    }

    /// Coefficients `c` with `v = Σ c_k g_k`, if `v` is in the span.
    pub fn coordinates(&self, v: &[Q]) -> Option<Vec<Q>> {
        let (r, comb) = self.reduce(v);
        r.iter().all(Zero::is_zero).then_some(comb)
    }
}

/// Parameters of the reproducible rational sampler.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct SampleConfig {
    pub seed: u64,
    pub height_bound: u64,
    pub trials: usize,
}

impl Default for SampleConfig {
    fn default() -> Self {
        Self {
            seed: 0x5eed,
            height_bound: 7,
            trials: 16,
        }
    }
}

impl SampleConfig {
    pub fn validate(&self) -> Result<()> {
        if self.height_bound == 0 {
            return Err(Error::InvalidArgument("height_bound must be at least 1".into()));
        }
        if self.trials == 0 {
            return Err(Error::InvalidArgument("trials must be at least 1".into()));
        }
        Ok(())
    }
}

/// Stream of bounded-height rationals driven by a SplitMix64 generator.
pub struct Sampler {
    rng: SplitMix64,
    height: i64,
}

impl Sampler {
    pub fn new(cfg: &SampleConfig) -> Result<Self> {
        cfg.validate()?;
        Ok(Self {
            rng: SplitMix64::seed_from_u64(cfg.seed),
            height: cfg.height_bound as i64,
        })
    }

    /// Numerator uniform in `[-H, H]`, denominator uniform in `[1, H]`.
    pub fn next_rational(&mut self) -> Q {
        let n = self.rng.random_range(-self.height..=self.height);
        let d = self.rng.random_range(1..=self.height);
        q_frac(n, d)
    }

    pub fn next_vector(&mut self, dim: usize) -> Vec<Q> {
        (0..dim).map(|_| self.next_rational()).collect()
    }

    /// A vector that is not identically zero.
    pub fn next_nonzero_vector(&mut self, dim: usize) -> Vec<Q> {
        loop {
            let v = self.next_vector(dim);
            if v.iter().any(|x| !x.is_zero()) {
                return v;
            }
        }
    }
}

pub fn random_vector(dim: usize, cfg: &SampleConfig) -> Result<Vec<Q>> {
    if dim == 0 {
        return Err(Error::InvalidArgument("cannot sample a vector of dimension 0".into()));
    }
    Ok(Sampler::new(cfg)?.next_vector(dim))
}

/// Maximum of |numerator| and denominator, the height of a rational.
pub fn height(x: &Q) -> BigInt {
    let n = x.numer().abs();
    let d = x.denom().clone();
    if n > d {
        n
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_examples() {
        assert_eq!(QMatrix::zeros(3, 3).rank(), 0);
        assert_eq!(QMatrix::identity(5).rank(), 5);
        assert_eq!(QMatrix::from_i64(2, 2, &[1, 2, 2, 4]).rank(), 1);
        assert_eq!(QMatrix::zeros(0, 4).rank(), 0);
    }

    #[test]
    fn bareiss_handles_skipped_columns() {
        let m = QMatrix::from_i64(3, 4, &[0, 1, 2, 3, 0, 2, 4, 7, 0, 0, 0, 5]);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.rank_by_rref(), 2);
    }

    #[test]
    fn kernel_examples() {
        assert!(QMatrix::identity(3).kernel_basis().is_empty());
        assert_eq!(QMatrix::zeros(2, 2).kernel_basis().len(), 2);
        let k = QMatrix::from_i64(1, 2, &[1, 1]).kernel_basis();
        assert_eq!(k.len(), 1);
        assert_eq!(k[0][0], -k[0][1].clone());
        assert!(!k[0][0].is_zero());
    }

    #[test]
    fn rank_mod_p_examples() {
        assert_eq!(QMatrix::identity(4).rank_mod_p(7).unwrap(), 4);
        assert_eq!(QMatrix::from_i64(2, 2, &[1, 2, 2, 4]).rank_mod_p(5).unwrap(), 1);
        let bad = QMatrix::from_i64(2, 2, &[5, 0, 0, 1]);
        assert_eq!(bad.rank_mod_p(5).unwrap(), 1);
        assert_eq!(bad.rank(), 2);
        let frac = QMatrix::from_rows(vec![vec![q_frac(1, 5)]]);
        assert_eq!(frac.rank_mod_p(5), Err(Error::BadPrime(5)));
    }

    #[test]
    fn sampler_is_deterministic_and_bounded() {
        let cfg = SampleConfig { seed: 1, height_bound: 7, trials: 1 };
        let a = random_vector(3, &cfg).unwrap();
        assert_eq!(a, random_vector(3, &cfg).unwrap());
        let b = random_vector(3, &SampleConfig { seed: 2, ..cfg }).unwrap();
        assert_ne!(a, b);
        let unit = SampleConfig { seed: 9, height_bound: 1, trials: 1 };
        for x in random_vector(64, &unit).unwrap() {
            assert!(x == q(-1) || x == q(0) || x == q(1), "{x}");
        }
        assert!(random_vector(0, &cfg).is_err());
        assert!(SampleConfig { height_bound: 0, ..cfg }.validate().is_err());
    }

    #[test]
    fn kron_and_trace() {
        let a = QMatrix::from_i64(2, 2, &[1, 2, 3, 4]);
        let i = QMatrix::identity(3);
        let k = a.kron(&i);
        assert_eq!(k.trace(), q(15));
        assert_eq!(k.rank(), 6);
        assert_eq!(a.trace_pairing(&a), a.mul(&a).trace());
    }

    #[test]
    fn linear_span_coordinates() {
        let mut s = LinearSpan::new(3);
        assert!(s.insert(&[q(1), q(2), q(0)]));
        assert!(s.insert(&[q(0), q(1), q(1)]));
        assert!(!s.insert(&[q(2), q(5), q(1)]));
        assert_eq!(s.dim(), 2);
        let c = s.coordinates(&[q(3), q(7), q(1)]).unwrap();
        assert_eq!(c, vec![q(3), q(1)]);
        assert!(s.coordinates(&[q(0), q(0), q(1)]).is_none());
    }

    #[test]
    fn thinned_kernel_matches_direct_kernel() {
        let rows = vec![
            vec![q(1), q(1), q(0), q(0)],
            vec![q(2), q(2), q(0), q(0)],
            vec![q(0), q(0), q(1), q_frac(-1, 3)],
            vec![q(0), q(0), q(0), q(0)],
        ];
        let k = kernel_of_rows(&rows, 4);
        assert_eq!(k.len(), 2);
        assert_eq!(k, QMatrix::from_rows(rows.clone()).kernel_basis());
        assert_eq!(kernel_of_rows(&[], 3).len(), 3);
    }
}
