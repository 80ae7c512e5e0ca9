//! Cartan data and positive roots for the simple types A, B, C, D, G2 and E6.
//!
//! Simple roots follow Bourbaki numbering internally. The Cartan matrix
//! convention is `a_ij = <α_i^∨, α_j>`, so the fundamental-weight coordinates
//! of `α_j` form column `j` of the Cartan matrix and `[h_i, e_j] = a_ij e_j`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{q, QMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RootType {
    A,
    B,
    C,
    D,
    G2,
    E6,
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RootType::A => "A",
            RootType::B => "B",
            RootType::C => "C",
            RootType::D => "D",
            RootType::G2 => "G",
            RootType::E6 => "E",
        };
        f.write_str(s)
    }
}

/// A weight in fundamental-weight coordinates.
pub type Weight = Vec<i32>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSystem {
    pub kind: RootType,
    pub rank: usize,
    pub cartan: Vec<Vec<i32>>,
    /// Positive roots in simple-root coordinates, ordered by height.
    pub positive_roots: Vec<Vec<i32>>,
    /// `(α_i, α_i) / 2`, normalized so that short roots have 1.
    pub half_lengths: Vec<i64>,
    /// Positive roots in fundamental-weight coordinates, same order.
    roots_omega: Vec<Weight>,
    /// Integer Gram matrix of the fundamental weights, scaled by `form_scale`.
    gram: Vec<Vec<i64>>,
    form_scale: i64,
    /// Inverse Cartan matrix scaled by `form_scale` (rows: root coords of ω_j columns).
    inv_cartan_scaled: Vec<Vec<i64>>,
}

fn chain(rank: usize) -> Vec<Vec<i32>> {
    let mut a = vec![vec![0; rank]; rank];
    for i in 0..rank {
        a[i][i] = 2;
        if i + 1 < rank {
            a[i][i + 1] = -1;
            a[i + 1][i] = -1;
        }
    }
    a
}

fn cartan_matrix(kind: RootType, rank: usize) -> Vec<Vec<i32>> {
    match kind {
        RootType::A => chain(rank),
        RootType::B => {
            let mut a = chain(rank);
            a[rank - 1][rank - 2] = -2;
            a
        }
        RootType::C => {
            let mut a = chain(rank);
            a[rank - 2][rank - 1] = -2;
            a
        }
        RootType::D => {
            let mut a = chain(rank);
            a[rank - 2][rank - 1] = 0;
            a[rank - 1][rank - 2] = 0;
            a[rank - 3][rank - 1] = -1;
            a[rank - 1][rank - 3] = -1;
            a
        }
        // α1 short, so ω1 is the 7-dimensional representation.
        RootType::G2 => vec![vec![2, -3], vec![-1, 2]],
        RootType::E6 => {
            // Bourbaki: 1-3-4-5-6 chain, 2 attached to 4.
            let edges = [(0, 2), (2, 3), (3, 4), (4, 5), (1, 3)];
            let mut a = vec![vec![0; 6]; 6];
            for (i, row) in a.iter_mut().enumerate() {
                row[i] = 2;
            }
            for (i, j) in edges {
                a[i][j] = -1;
                a[j][i] = -1;
            }
            a
        }
    }
}

fn half_lengths(kind: RootType, rank: usize) -> Vec<i64> {
    match kind {
        RootType::A | RootType::D | RootType::E6 => vec![1; rank],
        RootType::B => {
            let mut d = vec![2; rank];
            d[rank - 1] = 1;
            d
        }
        RootType::C => {
            let mut d = vec![1; rank];
            d[rank - 1] = 2;
            d
        }
        RootType::G2 => vec![1, 3],
    }
}

pub fn is_admissible(kind: RootType, rank: usize) -> bool {
    match kind {
        RootType::A => rank >= 1,
        RootType::B | RootType::C => rank >= 2,
        RootType::D => rank >= 3,
        RootType::G2 => rank == 2,
        RootType::E6 => rank == 6,
    }
}

impl RootSystem {
    pub fn new(kind: RootType, rank: usize) -> Result<Self> {
        if !is_admissible(kind, rank) {
            return Err(Error::InvalidType {
                label: kind.to_string(),
                rank,
            });
        }
        let cartan = cartan_matrix(kind, rank);
        let half_lengths = half_lengths(kind, rank);
        let positive_roots = generate_positive_roots(&cartan);
        let roots_omega = positive_roots
            .iter()
            .map(|c| root_to_omega(&cartan, c))
            .collect();

        // (ω_i, ω_j) = d_i (A^{-1})_{ij}; scale everything to integers.
        let a = QMatrix::from_rows(
            cartan
                .iter()
                .map(|row| row.iter().map(|&x| q(x as i64)).collect())
                .collect(),
        );
        let inv = invert(&a);
        let mut scale = BigInt::one();
        for r in 0..rank {
            for c in 0..rank {
                scale = num_integer::lcm(scale, inv.get(r, c).denom().clone());
            }
        }
        let scale_q = BigRational::from_integer(scale.clone());
        let to_i64 = |x: BigRational| -> i64 {
            assert!(x.is_integer());
            i64::try_from(x.to_integer()).expect("small Cartan data")
        };
        let inv_cartan_scaled: Vec<Vec<i64>> = (0..rank)
            .map(|r| (0..rank).map(|c| to_i64(inv.get(r, c) * &scale_q)).collect())
            .collect();
        let gram = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| half_lengths[i] * inv_cartan_scaled[i][j])
                    .collect()
            })
            .collect();
        let form_scale = i64::try_from(scale).expect("small Cartan data");

        let rs = Self {
            kind,
            rank,
            cartan,
            positive_roots,
            half_lengths,
            roots_omega,
            gram,
            form_scale,
            inv_cartan_scaled,
        };
        debug_assert!(rs.gram_is_symmetric());
        Ok(rs)
    }

    fn gram_is_symmetric(&self) -> bool {
        (0..self.rank).all(|i| (0..self.rank).all(|j| self.gram[i][j] == self.gram[j][i]))
    }

    pub fn label(&self) -> String {
        format!("{}{}", self.kind, self.rank)
    }

    /// Fundamental-weight coordinates of the simple root `α_i`.
    pub fn simple_root(&self, i: usize) -> Weight {
        (0..self.rank).map(|r| self.cartan[r][i]).collect()
    }

    /// Positive roots in fundamental-weight coordinates.
    pub fn positive_roots_omega(&self) -> &[Weight] {
        &self.roots_omega
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn dimension(&self) -> usize {
        self.rank + 2 * self.num_positive_roots()
    }

    pub fn zero_weight(&self) -> Weight {
        vec![0; self.rank]
    }

    pub fn fundamental_weight(&self, i: usize) -> Weight {
        let mut w = self.zero_weight();
        w[i] = 1;
        w
    }

    pub fn is_dominant(&self, w: &[i32]) -> bool {
        w.iter().all(|&x| x >= 0)
    }

    /// Scaled inverse form `(x, y) * form_scale`.
    pub fn scaled_inner(&self, x: &[i32], y: &[i32]) -> i64 {
        let mut acc = 0i64;
        for (i, &xi) in x.iter().enumerate().take(self.rank) {
            if xi == 0 {
                continue;
            }
            let row: i64 = (0..self.rank).map(|j| self.gram[i][j] * y[j] as i64).sum();
            acc += xi as i64 * row;
        }
        acc
    }

    pub fn form_scale(&self) -> i64 {
        self.form_scale
    }

    /// `(λ, α)` for a root given in simple-root coordinates; integral.
    pub fn pair_with_root(&self, lambda: &[i32], root_simple: &[i32]) -> i64 {
        root_simple
            .iter()
            .enumerate()
            .map(|(k, &c)| c as i64 * self.half_lengths[k] * lambda[k] as i64)
            .sum()
    }

    /// Height (sum of simple-root coordinates) scaled by `form_scale`.
    pub fn scaled_height(&self, w: &[i32]) -> i64 {
        (0..self.rank)
            .map(|r| {
                (0..self.rank)
                    .map(|c| self.inv_cartan_scaled[r][c] * w[c] as i64)
                    .sum::<i64>()
            })
            .sum()
    }

    /// Simple-root coordinates of `w`, if it lies in the root lattice.
    pub fn to_root_coords(&self, w: &[i32]) -> Option<Vec<i64>> {
        let mut out = Vec::with_capacity(self.rank);
        for r in 0..self.rank {
            let s: i64 = (0..self.rank)
                .map(|c| self.inv_cartan_scaled[r][c] * w[c] as i64)
                .sum();
            if s % self.form_scale != 0 {
                return None;
            }
            out.push(s / self.form_scale);
        }
        Some(out)
    }

    pub fn reflect(&self, i: usize, w: &[i32]) -> Weight {
        let c = w[i];
        (0..self.rank).map(|r| w[r] - c * self.cartan[r][i]).collect()
    }

    /// Dominant representative of the Weyl orbit of `w`.
    pub fn to_dominant(&self, w: &[i32]) -> Weight {
        let mut v = w.to_vec();
        while let Some(i) = v.iter().position(|&x| x < 0) {
            v = self.reflect(i, &v);
        }
        v
    }

    /// Weyl orbit of `w`, sorted.
    pub fn orbit(&self, w: &[i32]) -> Vec<Weight> {
        let mut seen = std::collections::BTreeSet::new();
        let mut stack = vec![w.to_vec()];
        seen.insert(w.to_vec());
        while let Some(v) = stack.pop() {
            for i in 0..self.rank {
                if v[i] == 0 {
                    continue;
                }
                let r = self.reflect(i, &v);
                if seen.insert(r.clone()) {
                    stack.push(r);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Highest weight of the dual module, `-w0(λ)`, via the diagram automorphism.
    pub fn dual_weight(&self, w: &[i32]) -> Weight {
        let n = self.rank;
        match self.kind {
            RootType::A => w.iter().rev().copied().collect(),
            RootType::D if n % 2 == 1 => {
                let mut v = w.to_vec();
                v.swap(n - 2, n - 1);
                v
            }
            RootType::E6 => {
                // Bourbaki involution 1<->6, 3<->5, 2 and 4 fixed.
                vec![w[5], w[1], w[4], w[3], w[2], w[0]]
            }
            _ => w.to_vec(),
        }
    }

    /// Dimension of the irreducible module with highest weight `λ`.
    pub fn weyl_dimension(&self, lambda: &[i32]) -> Result<BigInt> {
        self.check_dominant(lambda)?;
        let shifted: Weight = lambda.iter().map(|x| x + 1).collect();
        let rho = vec![1; self.rank];
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for root in &self.positive_roots {
            num *= BigInt::from(self.pair_with_root(&shifted, root));
            den *= BigInt::from(self.pair_with_root(&rho, root));
        }
        let r = BigRational::new(num, den);
        assert!(r.is_integer(), "Weyl dimension must be integral");
        Ok(r.to_integer())
    }

    pub fn check_weight(&self, w: &[i32]) -> Result<()> {
        if w.len() != self.rank {
            return Err(Error::InvalidWeight(format!(
                "weight {:?} has length {}, expected {}",
                w,
                w.len(),
                self.rank
            )));
        }
        Ok(())
    }

    pub fn check_dominant(&self, w: &[i32]) -> Result<()> {
        self.check_weight(w)?;
        if !self.is_dominant(w) {
            return Err(Error::InvalidWeight(format!("{w:?} is not dominant")));
        }
        Ok(())
    }
}

pub fn root_to_omega(cartan: &[Vec<i32>], simple_coords: &[i32]) -> Weight {
    let n = cartan.len();
    (0..n)
        .map(|r| (0..n).map(|c| cartan[r][c] * simple_coords[c]).sum())
        .collect()
}

/// Positive roots by the string rule: `β + α_i` is a root iff `p - <β, α_i^∨> > 0`,
/// where `p` is the largest `k` with `β - kα_i` a root.
fn generate_positive_roots(cartan: &[Vec<i32>]) -> Vec<Vec<i32>> {
    let n = cartan.len();
    let mut roots: Vec<Vec<i32>> = (0..n)
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = 1;
            v
        })
        .collect();
    let mut set: std::collections::HashSet<Vec<i32>> = roots.iter().cloned().collect();
    let mut layer = roots.clone();
    while !layer.is_empty() {
        let mut next = Vec::new();
        for beta in &layer {
            let beta_omega = root_to_omega(cartan, beta);
            for i in 0..n {
                let mut p = 0;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if set.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                if p - beta_omega[i] > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if set.insert(up.clone()) {
                        next.push(up);
                    }
                }
            }
        }
        next.sort();
        roots.extend(next.iter().cloned());
        layer = next;
    }
    roots.sort_by_key(|r| (r.iter().sum::<i32>(), r.clone()));
    roots
}

fn invert(a: &QMatrix) -> QMatrix {
    let n = a.rows();
    let mut aug = QMatrix::zeros(n, 2 * n);
    for r in 0..n {
        for c in 0..n {
            aug.set(r, c, a.get(r, c).clone());
        }
        aug.set(r, n + r, BigRational::one());
    }
    let (red, pivots) = aug.rref();
    assert_eq!(pivots.len(), n, "Cartan matrix must be invertible");
    let mut inv = QMatrix::zeros(n, n);
    for r in 0..n {
        for c in 0..n {
            let v = red.get(r, n + c);
            if !v.is_zero() {
                inv.set(r, c, v.clone());
            }
        }
    }
    inv
}

/// The input E6 numbering (chain 1-2-3-4-5 with node 6 on node 3)
/// mapped to Bourbaki numbering. Index `i` holds the Bourbaki index of label `i+1`.
pub const E6_LABEL_TO_BOURBAKI: [usize; 6] = [0, 2, 3, 4, 5, 1];

/// Converts a weight written in the external E6 labels to internal coordinates.
pub fn e6_from_labels(w: &[i32]) -> Weight {
    let mut out = vec![0; 6];
    for (label, &b) in E6_LABEL_TO_BOURBAKI.iter().enumerate() {
        out[b] = w[label];
    }
    out
}

pub fn e6_to_labels(w: &[i32]) -> Weight {
    E6_LABEL_TO_BOURBAKI.iter().map(|&b| w[b]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(kind: RootType, rank: usize) -> RootSystem {
        RootSystem::new(kind, rank).unwrap()
    }

    #[test]
    fn positive_root_counts() {
        assert_eq!(rs(RootType::A, 2).num_positive_roots(), 3);
        assert_eq!(rs(RootType::A, 5).num_positive_roots(), 15);
        assert_eq!(rs(RootType::B, 3).num_positive_roots(), 9);
        assert_eq!(rs(RootType::C, 3).num_positive_roots(), 9);
        assert_eq!(rs(RootType::D, 4).num_positive_roots(), 12);
        assert_eq!(rs(RootType::D, 5).num_positive_roots(), 20);
        assert_eq!(rs(RootType::G2, 2).num_positive_roots(), 6);
        assert_eq!(rs(RootType::E6, 6).num_positive_roots(), 36);
    }

    #[test]
    fn inadmissible_types_are_rejected() {
        assert!(RootSystem::new(RootType::A, 0).is_err());
        assert!(RootSystem::new(RootType::B, 1).is_err());
        assert!(RootSystem::new(RootType::C, 1).is_err());
        assert!(RootSystem::new(RootType::D, 2).is_err());
        assert!(RootSystem::new(RootType::G2, 3).is_err());
        assert!(RootSystem::new(RootType::E6, 5).is_err());
    }

    #[test]
    fn cartan_diagonal_and_symmetrizable() {
        for (k, n) in [
            (RootType::A, 4),
            (RootType::B, 4),
            (RootType::C, 4),
            (RootType::D, 5),
            (RootType::G2, 2),
            (RootType::E6, 6),
        ] {
            let r = rs(k, n);
            for i in 0..n {
                assert_eq!(r.cartan[i][i], 2);
                for j in 0..n {
                    assert_eq!(
                        r.half_lengths[i] * r.cartan[i][j] as i64,
                        r.half_lengths[j] * r.cartan[j][i] as i64
                    );
                }
            }
        }
    }

    #[test]
    fn weyl_dimension_examples() {
        let dim = |k, n, w: &[i32]| rs(k, n).weyl_dimension(w).unwrap();
        assert_eq!(dim(RootType::A, 3, &[1, 0, 0]), BigInt::from(4));
        assert_eq!(dim(RootType::B, 3, &[0, 0, 1]), BigInt::from(8));
        assert_eq!(dim(RootType::B, 4, &[0, 0, 0, 1]), BigInt::from(16));
        assert_eq!(dim(RootType::D, 5, &[0, 0, 0, 1, 0]), BigInt::from(16));
        assert_eq!(dim(RootType::G2, 2, &[1, 0]), BigInt::from(7));
        assert_eq!(dim(RootType::G2, 2, &[0, 1]), BigInt::from(14));
        assert_eq!(dim(RootType::E6, 6, &[1, 0, 0, 0, 0, 0]), BigInt::from(27));
        assert_eq!(dim(RootType::E6, 6, &[0, 1, 0, 0, 0, 0]), BigInt::from(78));
        assert!(rs(RootType::A, 2).weyl_dimension(&[-1, 0]).is_err());
    }

    #[test]
    fn e6_label_conversion_keeps_the_27() {
        let r = rs(RootType::E6, 6);
        let w = e6_from_labels(&[1, 0, 0, 0, 0, 0]);
        assert_eq!(r.weyl_dimension(&w).unwrap(), BigInt::from(27));
        let dual = r.dual_weight(&w);
        assert_eq!(e6_to_labels(&dual), vec![0, 0, 0, 0, 1, 0]);
        // The branch node carries the adjoint representation.
        let adj = e6_from_labels(&[0, 0, 0, 0, 0, 1]);
        assert_eq!(r.weyl_dimension(&adj).unwrap(), BigInt::from(78));
    }

    #[test]
    fn dual_weight_matches_lowest_weight() {
        for (k, n) in [
            (RootType::A, 3),
            (RootType::B, 3),
            (RootType::C, 3),
            (RootType::D, 4),
            (RootType::D, 5),
            (RootType::G2, 2),
            (RootType::E6, 6),
        ] {
            let r = rs(k, n);
            for i in 0..n {
                let w = r.fundamental_weight(i);
                let lowest = r
                    .orbit(&w)
                    .into_iter()
                    .find(|v| v.iter().all(|&x| x <= 0))
                    .unwrap();
                let neg: Weight = lowest.iter().map(|x| -x).collect();
                assert_eq!(r.dual_weight(&w), neg, "{k:?}{n} w{}", i + 1);
            }
        }
    }

    #[test]
    fn scaled_height_of_simple_roots() {
        let r = rs(RootType::G2, 2);
        for (i, root) in r.positive_roots.iter().enumerate() {
            let omega = &r.positive_roots_omega()[i];
            let h: i32 = root.iter().sum();
            assert_eq!(r.scaled_height(omega), h as i64 * r.form_scale());
        }
    }
}
