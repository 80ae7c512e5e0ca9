//! Exact matrix realizations of irreducible modules and of the subalgebras
//! `k ⊕ c ⊂ gl(W)` described by a [`PairSpec`].

use std::collections::hash_map::Entry;
use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactla::{q, LinearSpan, QMatrix, Q};
use crate::lie::{weyl_dim, Character, RootSystem, Weight};
use crate::pair_spec::PairSpec;

pub const DEFAULT_DIM_CAP: usize = 64;

/// Chevalley generators of one simple factor acting on a module.
#[derive(Debug, Clone)]
pub struct MatrixRep {
    pub root_system: RootSystem,
    /// `None` for reducible results of sums and tensor products.
    pub highest_weight: Option<Weight>,
    pub dim: usize,
    pub gen_e: Vec<QMatrix>,
    pub gen_f: Vec<QMatrix>,
    pub gen_h: Vec<QMatrix>,
    /// Weight of each basis vector.
    pub weights: Vec<Weight>,
}

type Sparse = Vec<(usize, Q)>;

/// Builds `V(λ)` one weight space at a time. A candidate `f_i b` is recorded
/// through the vector `(e_j f_i b)_j`, computed from already known spaces by
/// `e_j f_i = f_i e_j + δ_ij h_i`. In the irreducible quotient a vector below
/// the top is zero exactly when every `e_j` kills it, so the candidates'
/// images span the weight space.
pub fn hw_module(rs: &RootSystem, lambda: &[i32], cap: usize) -> Result<MatrixRep> {
    rs.check_dominant(lambda)?;
    let dim = weyl_dim(rs, lambda)? as usize;
    if dim > cap {
        return Err(Error::CapExceeded { dim, cap });
    }
    let rank = rs.rank;
    let alpha: Vec<Weight> = (0..rank).map(|i| rs.simple_root(i)).collect();
    let add = |a: &[i32], b: &[i32], s: i32| -> Weight {
        a.iter().zip(b).map(|(x, y)| x + s * y).collect()
    };

    let mut weights: Vec<Weight> = vec![lambda.to_vec()];
    let mut space: HashMap<Weight, Vec<usize>> = HashMap::new();
    space.insert(lambda.to_vec(), vec![0]);
    // e[i][v], f[i][v]: images of basis vector v, as sparse global combinations.
    let mut e: Vec<Vec<Sparse>> = vec![vec![Vec::new()]; rank];
    let mut f: Vec<Vec<Sparse>> = vec![vec![Vec::new()]; rank];

    let mut level: Vec<Weight> = vec![lambda.to_vec()];
    while !level.is_empty() {
        let mut next: Vec<Weight> = Vec::new();
        for nu in &level {
            for a in &alpha {
                let mu = add(nu, a, -1);
                if !next.contains(&mu) {
                    next.push(mu);
                }
            }
        }
        next.sort();
        let mut found = Vec::new();
        for mu in next {
            // Candidates (i, b) with b ∈ V_{μ+α_i}.
            let mut cands: Vec<(usize, usize)> = Vec::new();
            for (i, a) in alpha.iter().enumerate() {
                if let Some(bs) = space.get(&add(&mu, a, 1)) {
                    cands.extend(bs.iter().map(|&b| (i, b)));
                }
            }
            if cands.is_empty() {
                continue;
            }
            // Rows of Φ: the bases of V_{μ+α_j}, block by block.
            let mut owner: Vec<(usize, usize)> = Vec::new();
            let mut local: HashMap<(usize, usize), usize> = HashMap::new();
            for (j, a) in alpha.iter().enumerate() {
                if let Some(bs) = space.get(&add(&mu, a, 1)) {
                    for &b in bs {
                        local.insert((j, b), owner.len());
                        owner.push((j, b));
                    }
                }
            }
            let rows = owner.len();
            let mut phi = QMatrix::zeros(rows, cands.len());
            for (c, &(i, b)) in cands.iter().enumerate() {
                for j in 0..rank {
                    // f_i (e_j b)
                    for (u, coef) in &e[j][b] {
                        for (v, c2) in &f[i][*u] {
                            let r = local[&(j, *v)];
                            let val = phi.get(r, c) + coef * c2;
                            phi.set(r, c, val);
                        }
                    }
                    if i == j {
                        let hval = q(weights[b][i] as i64);
                        if !hval.is_zero() {
                            let r = local[&(j, b)];
                            let val = phi.get(r, c) + hval;
                            phi.set(r, c, val);
                        }
                    }
                }
            }
            let (red, pivots) = phi.rref();
            if pivots.is_empty() {
                continue;
            }
            let start = weights.len();
            let ids: Vec<usize> = (start..start + pivots.len()).collect();
            for _ in &pivots {
                weights.push(mu.clone());
                for i in 0..rank {
                    e[i].push(Vec::new());
                    f[i].push(Vec::new());
                }
            }
            // e_j on the new basis vectors: read off the pivot columns of Φ.
            for (k, &pc) in pivots.iter().enumerate() {
                for (r, &(j, b)) in owner.iter().enumerate() {
                    let v = phi.get(r, pc);
                    if !v.is_zero() {
                        e[j][ids[k]].push((b, v.clone()));
                    }
                }
            }
            // f_i b in terms of the new basis: column c of the reduced Φ.
            for (c, &(i, b)) in cands.iter().enumerate() {
                let mut img = Vec::new();
                for (k, _) in pivots.iter().enumerate() {
                    let v = red.get(k, c);
                    if !v.is_zero() {
                        img.push((ids[k], v.clone()));
                    }
                }
                f[i][b] = img;
            }
            space.insert(mu.clone(), ids);
            found.push(mu);
        }
        level = found;
    }

    let n = weights.len();
    if n != dim {
        return Err(Error::Precondition(format!(
            "highest-weight construction produced {n} vectors, expected {dim}"
        )));
    }
    let to_matrix = |ops: &Vec<Sparse>| {
        let mut m = QMatrix::zeros(n, n);
        for (col, img) in ops.iter().enumerate() {
            for (row, v) in img {
                m.set(*row, col, v.clone());
            }
        }
        m
    };
    let gen_e = e.iter().map(to_matrix).collect();
    let gen_f = f.iter().map(to_matrix).collect();
    let gen_h = (0..rank)
        .map(|i| QMatrix::diagonal(&weights.iter().map(|w| q(w[i] as i64)).collect::<Vec<_>>()))
        .collect();
    Ok(MatrixRep {
        root_system: rs.clone(),
        highest_weight: Some(lambda.to_vec()),
        dim: n,
        gen_e,
        gen_f,
        gen_h,
        weights,
    })
}

impl MatrixRep {
    pub fn character(&self) -> Character {
        Character::from_terms(self.weights.iter().map(|w| (w.clone(), 1)))
    }

    /// Checks `[h_i, e_j] = a_ij e_j`, `[h_i, f_j] = -a_ij f_j`,
    /// `[e_i, f_j] = δ_ij h_i`, `[h_i, h_j] = 0` and the Serre relations.
    pub fn check_relations(&self) -> Result<()> {
        let rank = self.root_system.rank;
        let a = &self.root_system.cartan;
        let fail = |what: String| Err(Error::Precondition(format!("relation fails: {what}")));
        for i in 0..rank {
            for j in 0..rank {
                let aij = q(a[i][j] as i64);
                if self.gen_h[i].commutator(&self.gen_e[j]) != self.gen_e[j].scale(&aij) {
                    return fail(format!("[h{i}, e{j}]"));
                }
                if self.gen_h[i].commutator(&self.gen_f[j]) != self.gen_f[j].scale(&-aij) {
                    return fail(format!("[h{i}, f{j}]"));
                }
                let ef = self.gen_e[i].commutator(&self.gen_f[j]);
                let expect = if i == j {
                    self.gen_h[i].clone()
                } else {
                    QMatrix::zeros(self.dim, self.dim)
                };
                if ef != expect {
                    return fail(format!("[e{i}, f{j}]"));
                }
                if !self.gen_h[i].commutator(&self.gen_h[j]).is_zero() {
                    return fail(format!("[h{i}, h{j}]"));
                }
                if i != j {
                    let power = (1 - a[i][j]) as usize;
                    for (g, name) in [(&self.gen_e, "e"), (&self.gen_f, "f")] {
                        let mut x = g[j].clone();
                        for _ in 0..power {
                            x = g[i].commutator(&x);
                        }
                        if !x.is_zero() {
                            return fail(format!("Serre ad({name}{i})^{power} {name}{j}"));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Contragredient module: `X ↦ -Xᵀ`.
    pub fn dual(&self) -> MatrixRep {
        let neg_t = |ms: &[QMatrix]| ms.iter().map(|m| m.transpose().neg()).collect::<Vec<_>>();
        MatrixRep {
            root_system: self.root_system.clone(),
            highest_weight: self.highest_weight.as_ref().map(|w| self.root_system.dual_weight(w)),
            dim: self.dim,
            gen_e: neg_t(&self.gen_e),
            gen_f: neg_t(&self.gen_f),
            gen_h: neg_t(&self.gen_h),
            weights: self.weights.iter().map(|w| w.iter().map(|x| -x).collect()).collect(),
        }
    }

    pub fn direct_sum(reps: &[MatrixRep]) -> MatrixRep {
        assert!(!reps.is_empty(), "direct sum of no modules");
        let rank = reps[0].root_system.rank;
        let blocks = |pick: &dyn Fn(&MatrixRep) -> &Vec<QMatrix>| -> Vec<QMatrix> {
            (0..rank)
                .map(|i| QMatrix::block_diag(&reps.iter().map(|r| pick(r)[i].clone()).collect::<Vec<_>>()))
                .collect()
        };
        MatrixRep {
            root_system: reps[0].root_system.clone(),
            highest_weight: None,
            dim: reps.iter().map(|r| r.dim).sum(),
            gen_e: blocks(&|r| &r.gen_e),
            gen_f: blocks(&|r| &r.gen_f),
            gen_h: blocks(&|r| &r.gen_h),
            weights: reps.iter().flat_map(|r| r.weights.iter().cloned()).collect(),
        }
    }

    /// Tensor product of modules of the same algebra: `X ⊗ 1 + 1 ⊗ X`.
    pub fn tensor(reps: &[MatrixRep]) -> MatrixRep {
        assert!(!reps.is_empty(), "tensor product of no modules");
        let mut acc = reps[0].clone();
        for r in &reps[1..] {
            let i1 = QMatrix::identity(acc.dim);
            let i2 = QMatrix::identity(r.dim);
            let comb = |a: &[QMatrix], b: &[QMatrix]| -> Vec<QMatrix> {
                a.iter().zip(b).map(|(x, y)| x.kron(&i2).add(&i1.kron(y))).collect()
            };
            let mut weights = Vec::with_capacity(acc.dim * r.dim);
            for w1 in &acc.weights {
                for w2 in &r.weights {
                    weights.push(w1.iter().zip(w2).map(|(x, y)| x + y).collect());
                }
            }
            acc = MatrixRep {
                root_system: acc.root_system.clone(),
                highest_weight: None,
                dim: acc.dim * r.dim,
                gen_e: comb(&acc.gen_e, &r.gen_e),
                gen_f: comb(&acc.gen_f, &r.gen_f),
                gen_h: comb(&acc.gen_h, &r.gen_h),
                weights,
            };
        }
        acc
    }
}

/// One simple factor of `k` realized inside `gl(W)`.
#[derive(Debug, Clone)]
pub struct FactorMatrices {
    pub label: String,
    pub e: Vec<QMatrix>,
    pub f: Vec<QMatrix>,
    pub h: Vec<QMatrix>,
    /// Root vectors for all positive roots, in the root system's order.
    pub positive: Vec<QMatrix>,
    pub negative: Vec<QMatrix>,
}

/// A basis of `k ⊕ c` inside `gl(W)` with a distinguished Borel part.
#[derive(Debug, Clone)]
pub struct SubalgebraInGl {
    pub ambient_dim: usize,
    pub summand_dims: Vec<usize>,
    pub factors: Vec<FactorMatrices>,
    /// Center generators, diagonal with one scalar per summand.
    pub center: Vec<QMatrix>,
    pub center_scalars: Vec<Vec<Q>>,
    pub basis: Vec<QMatrix>,
    pub borel_basis: Vec<QMatrix>,
    pub semisimple_traceless: bool,
    /// The description this was assembled from, when there is one.
    pub spec: Option<PairSpec>,
}

/// Builds root vectors `e_α = [e_i, e_{α-α_i}]` for every positive root.
fn root_vectors(rs: &RootSystem, simple: &[QMatrix]) -> Vec<QMatrix> {
    let mut out: Vec<QMatrix> = Vec::with_capacity(rs.positive_roots.len());
    let index: BTreeMap<&Vec<i32>, usize> =
        rs.positive_roots.iter().enumerate().map(|(k, r)| (r, k)).collect();
    for root in &rs.positive_roots {
        let height: i32 = root.iter().sum();
        if height == 1 {
            let i = root.iter().position(|&c| c == 1).expect("simple root");
            out.push(simple[i].clone());
            continue;
        }
        let (i, k) = (0..rs.rank)
            .find_map(|i| {
                let mut rest = root.clone();
                rest[i] -= 1;
                index.get(&rest).map(|&k| (i, k))
            })
            .expect("every non-simple positive root has a predecessor");
        out.push(simple[i].commutator(&out[k]));
    }
    out
}

fn embed(m: &QMatrix, left: usize, right: usize) -> QMatrix {
    QMatrix::identity(left).kron(m).kron(&QMatrix::identity(right))
}

/// Realizes `spec` as matrices on `W`, with `W` capped at `cap` dimensions.
pub fn assemble(spec: &PairSpec, cap: usize) -> Result<SubalgebraInGl> {
    spec.validate()?;
    let dims = spec.summand_dims();
    let n: usize = dims.iter().sum();
    if n > cap {
        return Err(Error::CapExceeded { dim: n, cap });
    }
    let systems = spec.root_systems();
    let mut cache: HashMap<(usize, Weight), MatrixRep> = HashMap::new();
    for word in &spec.summands {
        for (i, w) in word.iter().enumerate() {
            if let Entry::Vacant(slot) = cache.entry((i, w.clone())) {
                slot.insert(hw_module(&systems[i], w, cap)?);
            }
        }
    }

    let mut factors = Vec::with_capacity(systems.len());
    let mut traceless = true;
    for (i, rs) in systems.iter().enumerate() {
        let per_summand = |pick: &dyn Fn(&MatrixRep) -> &Vec<QMatrix>, g: usize| -> QMatrix {
            let blocks: Vec<QMatrix> = spec
                .summands
                .iter()
                .map(|word| {
                    let sizes: Vec<usize> =
                        word.iter().enumerate().map(|(k, w)| cache[&(k, w.clone())].dim).collect();
                    let left: usize = sizes[..i].iter().product();
                    let right: usize = sizes[i + 1..].iter().product();
                    embed(&pick(&cache[&(i, word[i].clone())])[g], left, right)
                })
                .collect();
            QMatrix::block_diag(&blocks)
        };
        let e: Vec<QMatrix> = (0..rs.rank).map(|g| per_summand(&|r| &r.gen_e, g)).collect();
        let f: Vec<QMatrix> = (0..rs.rank).map(|g| per_summand(&|r| &r.gen_f, g)).collect();
        let h: Vec<QMatrix> = (0..rs.rank).map(|g| per_summand(&|r| &r.gen_h, g)).collect();
        let positive = root_vectors(rs, &e);
        let negative = root_vectors(rs, &f);
        traceless &= e
            .iter()
            .chain(&f)
            .chain(&h)
            .all(|m| m.trace().is_zero());
        factors.push(FactorMatrices {
            label: rs.label(),
            e,
            f,
            h,
            positive,
            negative,
        });
    }

    let mut center = Vec::new();
    let mut center_scalars = Vec::new();
    for gen in &spec.center {
        let scalars: Vec<Q> = gen.scalars(dims.len()).into_iter().map(q).collect();
        let diag: Vec<Q> = scalars
            .iter()
            .zip(&dims)
            .flat_map(|(s, &d)| std::iter::repeat_n(s.clone(), d))
            .collect();
        center.push(QMatrix::diagonal(&diag));
        center_scalars.push(scalars);
    }
    let mut independent = LinearSpan::new(dims.len());
    for s in &center_scalars {
        if !independent.insert(s) {
            return Err(Error::InvalidSpec("center generators are linearly dependent".into()));
        }
    }

    let mut basis = Vec::new();
    let mut borel_basis = Vec::new();
    for fac in &factors {
        basis.extend(fac.h.iter().cloned());
        basis.extend(fac.positive.iter().cloned());
        basis.extend(fac.negative.iter().cloned());
        borel_basis.extend(fac.h.iter().cloned());
        borel_basis.extend(fac.positive.iter().cloned());
    }
    basis.extend(center.iter().cloned());
    borel_basis.extend(center.iter().cloned());

    Ok(SubalgebraInGl {
        ambient_dim: n,
        summand_dims: dims,
        factors,
        center,
        center_scalars,
        basis,
        borel_basis,
        semisimple_traceless: traceless,
        spec: Some(spec.clone()),
    })
}

fn flatten(m: &QMatrix) -> Vec<Q> {
    m.entries().to_vec()
}

impl SubalgebraInGl {
    /// A subalgebra given only by a spanning set of matrices, with no factor
    /// structure and an empty Borel part.
    pub fn from_matrices(n: usize, basis: Vec<QMatrix>) -> Result<Self> {
        if basis.iter().any(|b| b.rows() != n || b.cols() != n) {
            return Err(Error::InvalidArgument(format!("basis matrices must be {n}x{n}")));
        }
        let traceless = basis.iter().all(|b| b.trace().is_zero());
        Ok(Self {
            ambient_dim: n,
            summand_dims: vec![n],
            factors: Vec::new(),
            center: Vec::new(),
            center_scalars: Vec::new(),
            basis,
            borel_basis: Vec::new(),
            semisimple_traceless: traceless,
            spec: None,
        })
    }

    /// `so_n` as the antisymmetric matrices `E_ij - E_ji`.
    pub fn antisymmetric(n: usize) -> Self {
        let mut basis = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let mut m = QMatrix::zeros(n, n);
                m.set(i, j, Q::one());
                m.set(j, i, -Q::one());
                basis.push(m);
            }
        }
        Self::from_matrices(n, basis).expect("square by construction")
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn semisimple_dim(&self) -> usize {
        self.basis.len() - self.center.len()
    }

    /// Every simple factor's Chevalley generators, in factor order.
    pub fn chevalley_generators(&self) -> impl Iterator<Item = &QMatrix> {
        self.factors.iter().flat_map(|f| f.e.iter().chain(&f.f).chain(&f.h))
    }

    pub fn span(&self) -> LinearSpan {
        let mut s = LinearSpan::new(self.ambient_dim * self.ambient_dim);
        for b in &self.basis {
            s.insert(&flatten(b));
        }
        s
    }

    pub fn is_linearly_independent(&self) -> bool {
        self.span().dim() == self.basis.len()
    }

    pub fn contains(&self, x: &QMatrix) -> bool {
        self.span().contains(&flatten(x))
    }

    /// Checks that `[b_i, b_j]` lies in the span of the basis for all pairs.
    pub fn check_closure(&self) -> bool {
        let span = self.span();
        for (i, a) in self.basis.iter().enumerate() {
            for b in &self.basis[i + 1..] {
                if !span.contains(&flatten(&a.commutator(b))) {
                    return false;
                }
            }
        }
        true
    }

    /// Whether the identity lies in the span of the center generators.
    pub fn center_contains_identity(&self) -> bool {
        let mut s = LinearSpan::new(self.summand_dims.len());
        for c in &self.center_scalars {
            s.insert(c);
        }
        s.contains(&vec![Q::one(); self.summand_dims.len()])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{weight_multiplicities, RootType};
    use crate::pair_spec::parse_pair_spec;

    fn module(t: RootType, r: usize, w: &[i32]) -> MatrixRep {
        let rs = RootSystem::new(t, r).unwrap();
        let m = hw_module(&rs, w, DEFAULT_DIM_CAP).unwrap();
        m.check_relations().unwrap();
        assert_eq!(m.character(), weight_multiplicities(&rs, w).unwrap());
        m
    }

    #[test]
    fn standard_sl2() {
        let m = module(RootType::A, 1, &[1]);
        assert_eq!(m.gen_e[0], QMatrix::from_i64(2, 2, &[0, 1, 0, 0]));
        assert_eq!(m.gen_f[0], QMatrix::from_i64(2, 2, &[0, 0, 1, 0]));
        assert_eq!(m.gen_h[0], QMatrix::from_i64(2, 2, &[1, 0, 0, -1]));
    }

    #[test]
    fn small_modules_satisfy_relations() {
        module(RootType::A, 2, &[1, 1]);
        module(RootType::A, 3, &[0, 1, 0]);
        module(RootType::C, 2, &[0, 1]);
        module(RootType::G2, 2, &[1, 0]);
        let spin = module(RootType::B, 3, &[0, 0, 1]);
        assert_eq!(spin.dim, 8);
        assert!(spin.weights.iter().all(|w| w.iter().any(|&x| x != 0)));
    }

    #[test]
    fn cap_is_enforced() {
        let rs = RootSystem::new(RootType::A, 1).unwrap();
        assert!(matches!(hw_module(&rs, &[9], 5), Err(Error::CapExceeded { dim: 10, cap: 5 })));
        assert!(hw_module(&rs, &[-1], 5).is_err());
    }

    #[test]
    fn dual_sum_and_tensor() {
        let a2 = module(RootType::A, 2, &[1, 0]);
        let d = a2.dual();
        d.check_relations().unwrap();
        let rs = RootSystem::new(RootType::A, 2).unwrap();
        assert_eq!(d.character(), weight_multiplicities(&rs, &[0, 1]).unwrap());
        let v = module(RootType::A, 1, &[1]);
        let t = MatrixRep::tensor(&[v.clone(), v.clone()]);
        t.check_relations().unwrap();
        assert_eq!(t.dim, 4);
        let s = MatrixRep::direct_sum(&[v.clone(), v]);
        s.check_relations().unwrap();
        assert_eq!(s.dim, 4);
    }

    #[test]
    fn assemble_standard_sl2() {
        let sub = assemble(&parse_pair_spec("sl(2): w1").unwrap(), DEFAULT_DIM_CAP).unwrap();
        assert_eq!(sub.basis.len(), 3);
        assert_eq!(sub.borel_basis.len(), 2);
        assert!(sub.semisimple_traceless);
        assert!(sub.check_closure());
    }

    #[test]
    fn assemble_tensor_of_two_factors() {
        let sub = assemble(&parse_pair_spec("sl(3)+sp(4): w1*w1").unwrap(), DEFAULT_DIM_CAP).unwrap();
        assert_eq!(sub.ambient_dim, 12);
        assert_eq!(sub.dim(), 18);
        assert!(sub.is_linearly_independent());
        assert!(sub.check_closure());
    }

    #[test]
    fn assemble_center_generator() {
        let sub = assemble(&parse_pair_spec("sl(3): w1 ++ w2 [h(1,-1)]").unwrap(), DEFAULT_DIM_CAP)
            .unwrap();
        let expect = QMatrix::diagonal(&[1, 1, 1, -1, -1, -1].map(q));
        assert_eq!(sub.center[0], expect);
        assert!(sub.center[0].trace().is_zero());
        assert!(!sub.center_contains_identity());
        let dep = parse_pair_spec("sl(3): w1 ++ w2 [h1, h(2,2)]").unwrap();
        assert!(assemble(&dep, DEFAULT_DIM_CAP).is_err());
    }
}
