//! Degree-by-degree decomposition of the polynomial functions on `W` under
//! `k ⊕ c`, and the multiplicity certificates it yields.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lie::{
    decompose_invariant, sym_power_characters, weight_multiplicities, Character, DominantCache,
    ProductSystem, RootSystem, Weight,
};
use crate::pair_spec::PairSpec;
use crate::rep_build::DEFAULT_DIM_CAP;

pub const DEFAULT_MAX_DEGREE: usize = 6;

/// One isotypic component of `S^d(W*)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Component {
    /// Highest weight per factor, in the labels used by the spec syntax.
    pub highest_weights: Vec<Weight>,
    /// Eigenvalue of each center generator.
    pub center: Vec<i32>,
    pub multiplicity: i64,
    /// Dimension of one copy.
    pub dim: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradedDecomposition {
    pub degree: usize,
    pub components: Vec<Component>,
}

impl GradedDecomposition {
    pub fn total_dim(&self) -> u128 {
        self.components
            .iter()
            .map(|c| c.dim as u128 * c.multiplicity as u128)
            .sum()
    }

    pub fn max_multiplicity(&self) -> i64 {
        self.components.iter().map(|c| c.multiplicity).max().unwrap_or(0)
    }
}

/// Lowest-degree component of multiplicity at least two.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MultiplicityCertificate {
    pub degree: usize,
    pub component: Component,
    pub multiplicity: i64,
}

/// The product system of `spec` (center coordinates last) and the character
/// of `W*` on it.
pub fn dual_character(spec: &PairSpec) -> Result<(ProductSystem, Character)> {
    spec.validate()?;
    let systems = spec.root_systems();
    let mut chi = Character::new();
    for (s, word) in spec.summands.iter().enumerate() {
        let mut part = Character::monomial(Vec::new());
        for (w, rs) in word.iter().zip(&systems) {
            part = part.outer(&weight_multiplicities(rs, w)?.dual());
        }
        let center: Weight = spec
            .center
            .iter()
            .map(|g| -(g.scalars(spec.summands.len())[s] as i32))
            .collect();
        part = part.outer(&Character::monomial(center));
        chi = chi.add(&part);
    }
    let extra = spec.center.len();
    Ok((ProductSystem::new(systems, extra), chi))
}

fn check_cap(spec: &PairSpec) -> Result<()> {
    let dim = spec.dim_w();
    if dim > DEFAULT_DIM_CAP {
        return Err(Error::CapExceeded {
            dim,
            cap: DEFAULT_DIM_CAP,
        });
    }
    Ok(())
}

fn component(spec: &PairSpec, sys: &ProductSystem, hw: &[i32], mult: i64) -> Result<Component> {
    let parts = sys.split(hw);
    let mut dim = 1u64;
    let mut highest_weights = Vec::with_capacity(parts.len());
    for ((part, rs), fac) in parts.iter().zip(&sys.factors).zip(&spec.factors) {
        dim *= crate::lie::weyl_dim(rs, part)?;
        highest_weights.push(fac.to_labels(part));
    }
    Ok(Component {
        highest_weights,
        center: hw[sys.semisimple_arity()..].to_vec(),
        multiplicity: mult,
        dim,
    })
}

/// Decompositions of `S^0(W*), ..., S^max_degree(W*)`.
pub fn sym_decompositions(spec: &PairSpec, max_degree: usize) -> Result<Vec<GradedDecomposition>> {
    check_cap(spec)?;
    let (sys, chi) = dual_character(spec)?;
    let powers = sym_power_characters(&chi, sys.arity(), max_degree);
    let mut cache = DominantCache::new();
    let mut out = Vec::with_capacity(powers.len());
    for (d, p) in powers.iter().enumerate() {
        let parts = decompose_invariant(p, &sys, &mut cache)?;
        let components = parts
            .iter()
            .map(|(hw, m)| component(spec, &sys, hw, *m))
            .collect::<Result<Vec<_>>>()?;
        out.push(GradedDecomposition {
            degree: d,
            components,
        });
    }
    Ok(out)
}

pub fn sym_decomposition(spec: &PairSpec, d: usize) -> Result<GradedDecomposition> {
    Ok(sym_decompositions(spec, d)?.pop().expect("degrees 0..=d"))
}

/// First component of multiplicity ≥ 2 in degrees `1..=max_degree`.
pub fn nonspherical_certificate(
    spec: &PairSpec,
    max_degree: usize,
) -> Result<Option<MultiplicityCertificate>> {
    check_cap(spec)?;
    let (sys, chi) = dual_character(spec)?;
    let mut cache = DominantCache::new();
    // Degrees are generated incrementally so that the search stops early.
    let mut powers = vec![Character::monomial(vec![0; sys.arity()])];
    let adams: Vec<Character> = (1..=max_degree).map(|k| chi.adams(k as i32)).collect();
    for d in 1..=max_degree {
        let mut acc = Character::new();
        for k in 1..=d {
            acc = acc.add(&adams[k - 1].mul(&powers[d - k]));
        }
        let h = Character::from_terms(acc.into_terms().into_iter().map(|(w, m)| (w, m / d as i64)));
        let parts = decompose_invariant(&h, &sys, &mut cache)?;
        let mut best: Option<&(Weight, i64)> = None;
        for part in &parts {
            if part.1 >= 2 && best.is_none_or(|b| part.1 > b.1) {
                best = Some(part);
            }
        }
        if let Some((hw, m)) = best {
            return Ok(Some(MultiplicityCertificate {
                degree: d,
                component: component(spec, &sys, hw, *m)?,
                multiplicity: *m,
            }));
        }
        powers.push(h);
    }
    Ok(None)
}

/// `(d, largest multiplicity in degree d)` for `d = 1..=max_degree`.
pub fn multiplicity_profile(spec: &PairSpec, max_degree: usize) -> Result<Vec<(usize, i64)>> {
    Ok(sym_decompositions(spec, max_degree)?
        .into_iter()
        .skip(1)
        .map(|g| (g.degree, g.max_multiplicity()))
        .collect())
}

/// Orbit of `ρ` under the Weyl group with the sign of each element.
fn signed_rho_orbit(rs: &RootSystem) -> BTreeMap<Weight, i64> {
    let rho = vec![1; rs.rank];
    let mut out = BTreeMap::new();
    out.insert(rho.clone(), 1);
    let mut stack = vec![rho];
    while let Some(w) = stack.pop() {
        let sign = out[&w];
        for i in 0..rs.rank {
            let r = rs.reflect(i, &w);
            if !out.contains_key(&r) {
                out.insert(r.clone(), -sign);
                stack.push(r);
            }
        }
    }
    out
}

/// Multiplicity of the irreducible with highest weight `hw` in `chi`, by the
/// alternating sum `Σ_w ε(w) χ(λ + ρ - wρ)`. Independent of peeling.
pub fn alternating_multiplicity(chi: &Character, sys: &ProductSystem, hw: &[i32]) -> i64 {
    let mut terms: Vec<(Weight, i64)> = vec![(Vec::new(), 1)];
    for (part, rs) in sys.split(hw).iter().zip(&sys.factors) {
        let orbit = signed_rho_orbit(rs);
        let mut next = Vec::with_capacity(terms.len() * orbit.len());
        for (w, s) in &terms {
            for (wr, sign) in &orbit {
                let mut x = w.clone();
                x.extend(part.iter().zip(wr).map(|(l, r)| l + 1 - r));
                next.push((x, s * sign));
            }
        }
        terms = next;
    }
    let center = &hw[sys.semisimple_arity()..];
    terms
        .into_iter()
        .map(|(mut w, s)| {
            w.extend_from_slice(center);
            s * chi.get(&w)
        })
        .sum()
}

/// Re-derives a certificate's multiplicity without peeling.
pub fn verify_certificate(spec: &PairSpec, cert: &MultiplicityCertificate) -> Result<bool> {
    let (sys, chi) = dual_character(spec)?;
    let h = sym_power_characters(&chi, sys.arity(), cert.degree)
        .pop()
        .expect("degree present");
    let mut hw: Weight = Vec::new();
    for (w, fac) in cert.component.highest_weights.iter().zip(&spec.factors) {
        hw.extend(fac.from_labels(w));
    }
    hw.extend_from_slice(&cert.component.center);
    Ok(cert.multiplicity >= 2 && alternating_multiplicity(&h, &sys, &hw) == cert.multiplicity)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pair_spec::parse_pair_spec;

    fn binom(n: u128, k: u128) -> u128 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn standard_sl_is_multiplicity_free() {
        let spec = parse_pair_spec("sl(3): w1 [h1]").unwrap();
        for g in sym_decompositions(&spec, 4).unwrap() {
            assert_eq!(g.components.len(), 1);
            let c = &g.components[0];
            assert_eq!(c.highest_weights, vec![vec![0, g.degree as i32]]);
            assert_eq!(c.center, vec![-(g.degree as i32)]);
            assert_eq!(g.total_dim(), binom(3 + g.degree as u128 - 1, g.degree as u128));
        }
    }

    #[test]
    fn degree_one_is_the_dual() {
        let spec = parse_pair_spec("sl(3): w1 ++ 2w1 [h(1,2)]").unwrap();
        let g = sym_decomposition(&spec, 1).unwrap();
        let hws: Vec<_> = g.components.iter().map(|c| (c.highest_weights.clone(), c.center.clone())).collect();
        assert_eq!(hws, vec![(vec![vec![0, 2]], vec![-2]), (vec![vec![0, 1]], vec![-1])]);
    }

    #[test]
    fn three_copies_of_the_standard_sl2_module() {
        let spec = parse_pair_spec("sl(2): w1 ++ w1 ++ w1 [h(1,0,0), h(0,1,0), h(0,0,1)]").unwrap();
        let cert = nonspherical_certificate(&spec, 4).unwrap().unwrap();
        assert_eq!(cert.degree, 3);
        assert_eq!(cert.multiplicity, 2);
        assert_eq!(cert.component.highest_weights, vec![vec![1]]);
        assert_eq!(cert.component.center, vec![-1, -1, -1]);
        assert!(verify_certificate(&spec, &cert).unwrap());
        let profile = multiplicity_profile(&spec, 4).unwrap();
        assert_eq!(profile[..3], [(1, 1), (2, 1), (3, 2)]);
    }

    #[test]
    fn symplectic_standard_has_no_certificate() {
        let spec = parse_pair_spec("sp(4): w1 [h1]").unwrap();
        assert_eq!(nonspherical_certificate(&spec, 6).unwrap(), None);
        assert_eq!(nonspherical_certificate(&spec, 0).unwrap(), None);
    }

    #[test]
    fn alternating_sum_agrees_with_peeling() {
        let spec = parse_pair_spec("sl(2)+sl(2): w1*w1 ++ 2w1*1 [h(1,0)]").unwrap();
        let (sys, chi) = dual_character(&spec).unwrap();
        let h = sym_power_characters(&chi, sys.arity(), 3).pop().unwrap();
        let parts = decompose_invariant(&h, &sys, &mut DominantCache::new()).unwrap();
        for (hw, m) in parts {
            assert_eq!(alternating_multiplicity(&h, &sys, &hw), m, "{hw:?}");
        }
    }
}
