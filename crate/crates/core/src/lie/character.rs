//! Weight diagrams (Freudenthal), character arithmetic, peeling decomposition
//! and symmetric powers via Newton's identity.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::root_system::{RootSystem, Weight};
use crate::error::{Error, Result};

/// A formal character: weights (possibly with extra trailing coordinates such
/// as center characters) mapped to multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Character {
    terms: BTreeMap<Weight, i64>,
}

impl Character {
    pub fn new() -> Self {
        Self::default()
    }

    /// The character with a single weight of multiplicity one.
    pub fn monomial(w: Weight) -> Self {
        let mut c = Self::new();
        c.add_term(w, 1);
        c
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Weight, i64)>) -> Self {
        let mut c = Self::new();
        for (w, m) in terms {
            c.add_term(w, m);
        }
        c
    }

    pub fn add_term(&mut self, w: Weight, m: i64) {
        if m == 0 {
            return;
        }
        let e = self.terms.entry(w.clone()).or_insert(0);
        *e += m;
        if *e == 0 {
            self.terms.remove(&w);
        }
    }

    pub fn get(&self, w: &[i32]) -> i64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, &i64)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total multiplicity, i.e. the dimension of the module.
    pub fn mass(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|&m| m > 0)
    }

    pub fn add(&self, other: &Character) -> Character {
        let mut terms = self.terms.clone();
        for (w, m) in &other.terms {
            *terms.entry(w.clone()).or_insert(0) += m;
        }
        terms.retain(|_, v| *v != 0);
        Character { terms }
    }

    pub fn scale(&self, s: i64) -> Character {
        if s == 0 {
            return Character::new();
        }
        Character {
            terms: self.terms.iter().map(|(w, m)| (w.clone(), m * s)).collect(),
        }
    }

    /// Product of characters (character of the tensor product).
    pub fn mul(&self, other: &Character) -> Character {
        let mut acc: HashMap<Weight, i64> = HashMap::new();
        for (w1, m1) in &self.terms {
            for (w2, m2) in &other.terms {
                let w: Weight = w1.iter().zip(w2).map(|(a, b)| a + b).collect();
                *acc.entry(w).or_insert(0) += m1 * m2;
            }
        }
        Character {
            terms: acc.into_iter().filter(|(_, m)| *m != 0).collect(),
        }
    }

    /// Concatenates weights: character of the outer tensor product for a
    /// product of algebras.
    pub fn outer(&self, other: &Character) -> Character {
        let mut terms = BTreeMap::new();
        for (w1, m1) in &self.terms {
            for (w2, m2) in &other.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                terms.insert(w, m1 * m2);
            }
        }
        Character { terms }
    }

    /// Negates every weight (character of the dual module).
    pub fn dual(&self) -> Character {
        Character {
            terms: self
                .terms
                .iter()
                .map(|(w, m)| (w.iter().map(|x| -x).collect(), *m))
                .collect(),
        }
    }

    /// Adams operation `ψ^k`: every weight multiplied by `k`.
    pub fn adams(&self, k: i32) -> Character {
        Character {
            terms: self
                .terms
                .iter()
                .map(|(w, m)| (w.iter().map(|x| x * k).collect(), *m))
                .collect(),
        }
    }

    fn divide_exact(&self, d: i64) -> Character {
        Character {
            terms: self
                .terms
                .iter()
                .map(|(w, m)| {
                    assert_eq!(m % d, 0, "Newton recursion must divide exactly");
                    (w.clone(), m / d)
                })
                .collect(),
        }
    }

    pub fn into_terms(self) -> BTreeMap<Weight, i64> {
        self.terms
    }
}

/// Characters of the symmetric powers `S^0, ..., S^max` of a module with
/// character `chi`, by `d·h_d = Σ_{k=1}^{d} ψ^k(χ)·h_{d-k}`.
pub fn sym_power_characters(chi: &Character, arity: usize, max_degree: usize) -> Vec<Character> {
    let mut h = vec![Character::monomial(vec![0; arity])];
    let adams: Vec<Character> = (1..=max_degree).map(|k| chi.adams(k as i32)).collect();
    for d in 1..=max_degree {
        let mut acc = Character::new();
        for k in 1..=d {
            acc = acc.add(&adams[k - 1].mul(&h[d - k]));
        }
        h.push(acc.divide_exact(d as i64));
    }
    h
}

/// Character of `S^d` for a module with character `chi`.
pub fn sym_power_character(chi: &Character, arity: usize, d: usize) -> Character {
    sym_power_characters(chi, arity, d).pop().expect("nonempty")
}

/// Dominant weights of `V(λ)` with multiplicities, by Freudenthal's formula.
pub fn dominant_multiplicities(rs: &RootSystem, lambda: &[i32]) -> Result<BTreeMap<Weight, i64>> {
    rs.check_dominant(lambda)?;
    // Dominant weights below λ are connected to λ through dominant weights
    // by subtracting positive roots.
    let mut dominant: BTreeSet<Weight> = BTreeSet::new();
    dominant.insert(lambda.to_vec());
    let mut stack = vec![lambda.to_vec()];
    while let Some(mu) = stack.pop() {
        for root in rs.positive_roots_omega() {
            let nu: Weight = mu.iter().zip(root).map(|(a, b)| a - b).collect();
            if rs.is_dominant(&nu) && dominant.insert(nu.clone()) {
                stack.push(nu);
            }
        }
    }
    let top = rs.scaled_height(lambda);
    let mut order: Vec<Weight> = dominant.into_iter().collect();
    order.sort_by_key(|w| (top - rs.scaled_height(w), w.clone()));

    let rho = vec![1; rs.rank];
    let shift = |w: &[i32]| -> Weight { w.iter().zip(&rho).map(|(a, b)| a + b).collect() };
    let lr = shift(lambda);
    let norm_top = rs.scaled_inner(&lr, &lr);

    let mut mult: BTreeMap<Weight, i64> = BTreeMap::new();
    mult.insert(lambda.to_vec(), 1);
    for mu in order.iter().skip(1) {
        let mut num: i64 = 0;
        for (root_omega, root_simple) in rs.positive_roots_omega().iter().zip(&rs.positive_roots) {
            let mut k = 1;
            loop {
                let nu: Weight = mu
                    .iter()
                    .zip(root_omega)
                    .map(|(a, b)| a + k * b)
                    .collect();
                let dom = rs.to_dominant(&nu);
                let Some(&m) = mult.get(&dom) else { break };
                num += m * rs.pair_with_root(&nu, root_simple);
                k += 1;
            }
        }
        let mr = shift(mu);
        let den = norm_top - rs.scaled_inner(&mr, &mr);
        // num is unscaled; den carries the form scale.
        let total = 2 * num * rs.form_scale();
        assert!(den > 0, "Freudenthal denominator must be positive");
        assert_eq!(total % den, 0, "Freudenthal multiplicity must be integral");
        let m = total / den;
        if m > 0 {
            mult.insert(mu.clone(), m);
        }
    }
    Ok(mult)
}

/// Full weight diagram of the irreducible module `V(λ)`.
pub fn weight_multiplicities(rs: &RootSystem, lambda: &[i32]) -> Result<Character> {
    let dom = dominant_multiplicities(rs, lambda)?;
    let mut c = Character::new();
    for (w, m) in dom {
        for v in rs.orbit(&w) {
            c.terms.insert(v, m);
        }
    }
    Ok(c)
}

pub fn weyl_dim(rs: &RootSystem, lambda: &[i32]) -> Result<u64> {
    let d: BigInt = rs.weyl_dimension(lambda)?;
    d.to_u64()
        .ok_or_else(|| Error::InvalidWeight("dimension overflows u64".into()))
}

/// True when `chi` is invariant under every simple reflection.
pub fn is_weyl_invariant(rs: &RootSystem, chi: &Character) -> bool {
    chi.iter()
        .all(|(w, m)| (0..rs.rank).all(|i| chi.get(&rs.reflect(i, w)) == *m))
}

/// Several simple factors plus `extra` trailing coordinates (center
/// characters) on which the Weyl group acts trivially.
#[derive(Debug, Clone)]
pub struct ProductSystem {
    pub factors: Vec<RootSystem>,
    pub extra: usize,
}

/// One irreducible constituent: highest weight (all factors, then extra
/// coordinates) and its multiplicity.
pub type Constituent = (Weight, i64);

impl ProductSystem {
    pub fn new(factors: Vec<RootSystem>, extra: usize) -> Self {
        Self { factors, extra }
    }

    pub fn simple(rs: RootSystem) -> Self {
        Self::new(vec![rs], 0)
    }

    pub fn semisimple_arity(&self) -> usize {
        self.factors.iter().map(|f| f.rank).sum()
    }

    pub fn arity(&self) -> usize {
        self.semisimple_arity() + self.extra
    }

    /// Splits a weight into per-factor slices (center coordinates dropped).
    pub fn split<'a>(&self, w: &'a [i32]) -> Vec<&'a [i32]> {
        let mut out = Vec::with_capacity(self.factors.len());
        let mut off = 0;
        for f in &self.factors {
            out.push(&w[off..off + f.rank]);
            off += f.rank;
        }
        out
    }

    pub fn is_dominant(&self, w: &[i32]) -> bool {
        w[..self.semisimple_arity()].iter().all(|&x| x >= 0)
    }

    /// Height with each factor's contribution scaled to a common integer.
    fn height_key(&self, w: &[i32]) -> i128 {
        let common: i128 = self
            .factors
            .iter()
            .fold(1i128, |acc, f| num_integer::lcm(acc, f.form_scale() as i128));
        self.split(w)
            .iter()
            .zip(&self.factors)
            .map(|(part, f)| f.scaled_height(part) as i128 * (common / f.form_scale() as i128))
            .sum()
    }

    pub fn is_weyl_invariant(&self, chi: &Character) -> bool {
        let mut offset = 0;
        for f in &self.factors {
            for (w, m) in chi.iter() {
                for i in 0..f.rank {
                    let r = f.reflect(i, &w[offset..offset + f.rank]);
                    let mut v = w.clone();
                    v[offset..offset + f.rank].copy_from_slice(&r);
                    if chi.get(&v) != *m {
                        return false;
                    }
                }
            }
            offset += f.rank;
        }
        true
    }

    /// Full character of the irreducible module with the given highest weight
    /// (center coordinates are carried along unchanged).
    pub fn irreducible_character(&self, hw: &[i32]) -> Result<Character> {
        let mut acc = Character::monomial(Vec::new());
        for (part, f) in self.split(hw).iter().zip(&self.factors) {
            acc = acc.outer(&weight_multiplicities(f, part)?);
        }
        acc = acc.outer(&Character::monomial(hw[self.semisimple_arity()..].to_vec()));
        Ok(acc)
    }
}

/// Caches Freudenthal output per (factor index, highest weight).
#[derive(Default)]
pub struct DominantCache {
    cache: HashMap<(usize, Weight), BTreeMap<Weight, i64>>,
}

impl DominantCache {
    pub fn new() -> Self {
        Self::default()
    }

    fn get(&mut self, idx: usize, rs: &RootSystem, lambda: &[i32]) -> Result<&BTreeMap<Weight, i64>> {
        let key = (idx, lambda.to_vec());
        if !self.cache.contains_key(&key) {
            let d = dominant_multiplicities(rs, lambda)?;
            self.cache.insert(key.clone(), d);
        }
        Ok(&self.cache[&key])
    }
}

/// Peels irreducible characters off `chi`, highest remaining dominant weight
/// first (height, then lexicographic). Requires a Weyl-invariant input.
pub fn decompose(chi: &Character, sys: &ProductSystem) -> Result<Vec<Constituent>> {
    if !sys.is_weyl_invariant(chi) {
        return Err(Error::NotAModuleCharacter("character is not Weyl invariant".into()));
    }
    decompose_invariant(chi, sys, &mut DominantCache::new())
}

/// [`decompose`] without the invariance check, sharing a Freudenthal cache.
pub fn decompose_invariant(
    chi: &Character,
    sys: &ProductSystem,
    cache: &mut DominantCache,
) -> Result<Vec<Constituent>> {
    let ss = sys.semisimple_arity();
    let mut remaining: BTreeMap<Weight, i64> = chi
        .iter()
        .filter(|(w, _)| sys.is_dominant(w))
        .map(|(w, m)| (w.clone(), *m))
        .collect();
    let mut out = Vec::new();
    while !remaining.is_empty() {
        let (top, coeff) = remaining
            .iter()
            .max_by(|a, b| {
                sys.height_key(a.0)
                    .cmp(&sys.height_key(b.0))
                    .then_with(|| a.0.cmp(b.0))
            })
            .map(|(w, m)| (w.clone(), *m))
            .expect("nonempty");
        if coeff < 0 {
            return Err(Error::NotAModuleCharacter(format!(
                "negative coefficient {coeff} at highest weight {top:?}"
            )));
        }
        // Product of per-factor dominant multiplicities.
        let mut pieces: Vec<(Weight, i64)> = vec![(Vec::new(), 1)];
        for (idx, (part, f)) in sys.split(&top).iter().zip(&sys.factors).enumerate() {
            let dom = cache.get(idx, f, part)?;
            let mut next = Vec::with_capacity(pieces.len() * dom.len());
            for (w, m) in &pieces {
                for (v, n) in dom {
                    let mut x = w.clone();
                    x.extend_from_slice(v);
                    next.push((x, m * n));
                }
            }
            pieces = next;
        }
        let center = &top[ss..];
        for (mut w, m) in pieces {
            w.extend_from_slice(center);
            let e = remaining.entry(w).or_insert(0);
            *e -= coeff * m;
        }
        remaining.retain(|_, v| *v != 0);
        out.push((top, coeff));
    }
    out.sort_by(|a, b| b.0.cmp(&a.0));
    Ok(out)
}

/// Sum of irreducible characters with the given multiplicities.
pub fn recompose(parts: &[Constituent], sys: &ProductSystem) -> Result<Character> {
    let mut acc = Character::new();
    for (hw, m) in parts {
        acc = acc.add(&sys.irreducible_character(hw)?.scale(*m));
    }
    Ok(acc)
}
