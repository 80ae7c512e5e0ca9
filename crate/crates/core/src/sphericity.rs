//! Open-orbit rank tests for a Borel subalgebra on `P(W)` and `Gr(r, W)`,
//! the boundedness verdict, and normalizers in `gl(W)`.

use std::collections::HashMap;

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactla::{kernel_of_rows, DEFAULT_PRIME, rank_of_vectors, LinearSpan, QMatrix, SampleConfig, Sampler, Q};
use crate::mult_free::{nonspherical_certificate, MultiplicityCertificate, DEFAULT_MAX_DEGREE};
use crate::pair_spec::PairSpec;
use crate::rep_build::{assemble, SubalgebraInGl, DEFAULT_DIM_CAP};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    Spherical,
    NotSpherical,
    Undetermined,
}

fn ser_columns<S: Serializer>(cols: &[Vec<Q>], s: S) -> std::result::Result<S::Ok, S::Error> {
    let text: Vec<Vec<String>> = cols
        .iter()
        .map(|c| c.iter().map(ToString::to_string).collect())
        .collect();
    text.serialize(s)
}

/// A point at which the tangent map reaches full rank.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    /// One column for a point of `P(W)`, `r` columns spanning a point of `Gr(r, W)`.
    #[serde(serialize_with = "ser_columns")]
    pub point: Vec<Vec<Q>>,
    pub rank: usize,
    pub target: usize,
    pub seed: u64,
    pub trial: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind")]
pub enum Certificate {
    /// The Borel subalgebra is smaller than the variety.
    DimensionCount { borel_dim: usize, target: usize },
    /// A repeated constituent in the coordinate ring.
    Multiplicity(MultiplicityCertificate),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub status: Status,
    pub witness: Option<Witness>,
    pub certificate: Option<Certificate>,
    pub trials_used: usize,
    /// Largest tangent rank observed over the trials.
    pub max_rank_seen: usize,
}

impl Verdict {
    pub fn is_spherical(&self) -> bool {
        self.status == Status::Spherical
    }
}

/// Borel generators that are not multiples of the identity.
pub fn effective_borel(sub: &SubalgebraInGl) -> Vec<&QMatrix> {
    sub.borel_basis.iter().filter(|b| b.as_scalar().is_none()).collect()
}

fn check_point(sub: &SubalgebraInGl, w: &[Q]) -> Result<()> {
    if w.len() != sub.ambient_dim {
        return Err(Error::InvalidArgument(format!(
            "point has {} coordinates, W has dimension {}",
            w.len(),
            sub.ambient_dim
        )));
    }
    if w.iter().all(Zero::is_zero) {
        return Err(Error::InvalidArgument("the zero vector is not a point of P(W)".into()));
    }
    Ok(())
}

fn projective_vectors(sub: &SubalgebraInGl, w: &[Q]) -> Vec<Vec<Q>> {
    let mut vs: Vec<Vec<Q>> = effective_borel(sub).iter().map(|b| b.mul_vec(w)).collect();
    vs.push(w.to_vec());
    vs
}

/// Rank of `b ↦ b·w mod F·w` over the Borel basis.
pub fn projective_tangent_rank(sub: &SubalgebraInGl, w: &[Q]) -> Result<usize> {
    check_point(sub, w)?;
    Ok(rank_of_vectors(&projective_vectors(sub, w)) - 1)
}

/// Same rank by Gauss-Jordan reduction, used to re-verify witnesses.
pub fn projective_tangent_rank_rref(sub: &SubalgebraInGl, w: &[Q]) -> Result<usize> {
    check_point(sub, w)?;
    Ok(QMatrix::from_rows(projective_vectors(sub, w)).rank_by_rref() - 1)
}

/// Rows `b ↦ (u_k ↦ b·u_k mod U)` in coordinates of `W/U`, the non-pivot
/// coordinates of the reduced frame.
fn grassmannian_vectors(sub: &SubalgebraInGl, u: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let n = sub.ambient_dim;
    let (frame, pivots) = QMatrix::from_rows(u.to_vec()).rref();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    effective_borel(sub)
        .iter()
        .map(|b| {
            let mut row = Vec::with_capacity(u.len() * free.len());
            for col in u {
                let mut v = b.mul_vec(col);
                for (j, &p) in pivots.iter().enumerate() {
                    if v[p].is_zero() {
                        continue;
                    }
                    let c = v[p].clone();
                    for (x, y) in v.iter_mut().zip(frame.row(j)) {
                        *x -= &c * y;
                    }
                }
                row.extend(free.iter().map(|&f| v[f].clone()));
            }
            row
        })
        .collect()
}

fn check_frame(sub: &SubalgebraInGl, u: &[Vec<Q>]) -> Result<()> {
    let n = sub.ambient_dim;
    let r = u.len();
    if r == 0 || r >= n {
        return Err(Error::InvalidArgument(format!("r = {r} is outside 1..{n}")));
    }
    if u.iter().any(|c| c.len() != n) {
        return Err(Error::InvalidArgument("frame columns must have length dim W".into()));
    }
    if rank_of_vectors(u) != r {
        return Err(Error::InvalidArgument("frame columns are linearly dependent".into()));
    }
    Ok(())
}

/// Rank of `b ↦ (u ↦ b·u mod U)` as a map into `Hom(U, W/U)`.
pub fn grassmannian_tangent_rank(sub: &SubalgebraInGl, u: &[Vec<Q>]) -> Result<usize> {
    check_frame(sub, u)?;
    Ok(rank_of_vectors(&grassmannian_vectors(sub, u)))
}

/// Second computation of the same rank. The rank modulo a prime is a lower
/// bound for the rank over Q, and the map has at most `r(n-r)` columns, so a
/// full-rank reduction settles it; otherwise Gauss-Jordan decides.
fn grassmannian_tangent_rank_check(sub: &SubalgebraInGl, u: &[Vec<Q>]) -> Result<usize> {
    check_frame(sub, u)?;
    let m = QMatrix::from_rows(grassmannian_vectors(sub, u));
    let full = u.len() * (sub.ambient_dim - u.len());
    match m.rank_mod_p(DEFAULT_PRIME) {
        Ok(r) if r == full => Ok(r),
        _ => Ok(m.rank_by_rref()),
    }
}

fn undetermined(trials: usize, max_rank_seen: usize) -> Verdict {
    Verdict {
        status: Status::Undetermined,
        witness: None,
        certificate: None,
        trials_used: trials,
        max_rank_seen,
    }
}

fn dimension_count(borel_dim: usize, target: usize) -> Verdict {
    Verdict {
        status: Status::NotSpherical,
        witness: None,
        certificate: Some(Certificate::DimensionCount { borel_dim, target }),
        trials_used: 0,
        max_rank_seen: 0,
    }
}

/// Samples frames until one reaches `target`; returns the witness or the
/// largest rank seen.
fn search(
    cfg: &SampleConfig,
    r: usize,
    n: usize,
    target: usize,
    rank: impl Fn(&[Vec<Q>]) -> Result<usize>,
    reverify: impl Fn(&[Vec<Q>]) -> Result<usize>,
) -> Result<std::result::Result<Witness, usize>> {
    let mut sampler = Sampler::new(cfg)?;
    let mut best = 0;
    for trial in 1..=cfg.trials {
        let frame: Vec<Vec<Q>> = (0..r).map(|_| sampler.next_nonzero_vector(n)).collect();
        if r > 1 && rank_of_vectors(&frame) < r {
            continue;
        }
        let got = rank(&frame)?;
        best = best.max(got);
        if got == target {
            let again = reverify(&frame)?;
            if again != target {
                return Err(Error::Precondition(format!(
                    "witness re-verification disagrees: {got} vs {again}"
                )));
            }
            return Ok(Ok(Witness {
                point: frame,
                rank: got,
                target,
                seed: cfg.seed,
                trial,
            }));
        }
    }
    Ok(Err(best))
}

/// Sphericity of `P(W)`, consulting the multiplicity oracle up to the
/// default degree when no witness is found.
pub fn is_spherical_projective(sub: &SubalgebraInGl, cfg: &SampleConfig) -> Result<Verdict> {
    is_spherical_projective_with(sub, cfg, DEFAULT_MAX_DEGREE)
}

pub fn is_spherical_projective_with(
    sub: &SubalgebraInGl,
    cfg: &SampleConfig,
    oracle_degree: usize,
) -> Result<Verdict> {
    cfg.validate()?;
    let n = sub.ambient_dim;
    let target = n - 1;
    let borel_dim = effective_borel(sub).len();
    if borel_dim < target {
        return Ok(dimension_count(borel_dim, target));
    }
    let found = search(
        cfg,
        1,
        n,
        target,
        |f| projective_tangent_rank(sub, &f[0]),
        |f| projective_tangent_rank_rref(sub, &f[0]),
    )?;
    let best = match found {
        Ok(w) => {
            return Ok(Verdict {
                status: Status::Spherical,
                trials_used: w.trial,
                max_rank_seen: w.rank,
                witness: Some(w),
                certificate: None,
            })
        }
        Err(best) => best,
    };
    if let Some(spec) = &sub.spec {
        if oracle_degree > 0 {
            if let Some(cert) = nonspherical_certificate(spec, oracle_degree)? {
                return Ok(Verdict {
                    status: Status::NotSpherical,
                    witness: None,
                    certificate: Some(Certificate::Multiplicity(cert)),
                    trials_used: cfg.trials,
                    max_rank_seen: best,
                });
            }
        }
    }
    Ok(undetermined(cfg.trials, best))
}

/// Sphericity of `Gr(r, W)`. Only the dimension count can refute it.
pub fn is_spherical_grassmannian(sub: &SubalgebraInGl, r: usize, cfg: &SampleConfig) -> Result<Verdict> {
    cfg.validate()?;
    let n = sub.ambient_dim;
    if r == 0 || r >= n {
        return Err(Error::InvalidArgument(format!("r = {r} is outside 1..{n}")));
    }
    let target = r * (n - r);
    let borel_dim = effective_borel(sub).len();
    if borel_dim < target {
        return Ok(dimension_count(borel_dim, target));
    }
    match search(
        cfg,
        r,
        n,
        target,
        |f| grassmannian_tangent_rank(sub, f),
        |f| grassmannian_tangent_rank_check(sub, f),
    )? {
        Ok(w) => Ok(Verdict {
            status: Status::Spherical,
            trials_used: w.trial,
            max_rank_seen: w.rank,
            witness: Some(w),
            certificate: None,
        }),
        Err(best) => Ok(undetermined(cfg.trials, best)),
    }
}

/// Boundedness of `k ⊂ sl(W)`: the sphericity verdict of `P(W)`, with scalar
/// center generators ignored.
pub fn is_bounded(sub: &SubalgebraInGl, cfg: &SampleConfig) -> Result<Verdict> {
    is_spherical_projective(sub, cfg)
}

fn flatten(m: &QMatrix) -> Vec<Q> {
    m.entries().to_vec()
}

fn unflatten(v: &[Q], n: usize) -> QMatrix {
    QMatrix::from_rows(v.chunks(n).map(<[Q]>::to_vec).collect())
}

/// `{x ∈ gl(n) : [x, b] ∈ span(basis) for all b ∈ basis}`, solved as one
/// linear system in the `n²` entries of `x`.
pub fn normalizer_in_gl(basis: &[QMatrix], n: usize) -> Vec<QMatrix> {
    let len = n * n;
    let rows: Vec<Vec<Q>> = basis.iter().map(flatten).collect();
    let annihilators: Vec<QMatrix> = if rows.is_empty() {
        (0..len)
            .map(|k| {
                let mut v = vec![Q::zero(); len];
                v[k] = Q::one();
                unflatten(&v, n)
            })
            .collect()
    } else {
        QMatrix::from_rows(rows)
            .kernel_basis()
            .iter()
            .map(|v| unflatten(v, n))
            .collect()
    };
    // φ([x, b]) = Σ_st x_st (φ bᵀ - bᵀ φ)_st.
    let mut equations = Vec::with_capacity(basis.len() * annihilators.len());
    for b in basis {
        let bt = b.transpose();
        for phi in &annihilators {
            equations.push(flatten(&phi.mul(&bt).sub(&bt.mul(phi))));
        }
    }
    kernel_of_rows(&equations, len)
        .iter()
        .map(|v| unflatten(v, n))
        .collect()
}

/// Commutant of `gens` in `gl(n)`. Diagonal generators only restrict which
/// entries may be nonzero; the others give linear equations on those entries.
pub fn centralizer_in_gl(gens: &[QMatrix], n: usize) -> Vec<QMatrix> {
    let (diag, other): (Vec<&QMatrix>, Vec<&QMatrix>) = gens.iter().partition(|g| g.is_diagonal());
    let signature = |p: usize| -> Vec<&Q> { diag.iter().map(|d| d.get(p, p)).collect() };
    let sigs: Vec<Vec<&Q>> = (0..n).map(signature).collect();
    let mut unknowns: Vec<(usize, usize)> = Vec::new();
    let mut index: HashMap<(usize, usize), usize> = HashMap::new();
    for s in 0..n {
        for t in 0..n {
            if sigs[s] == sigs[t] {
                index.insert((s, t), unknowns.len());
                unknowns.push((s, t));
            }
        }
    }
    let u = unknowns.len();
    let mut equations: Vec<Vec<Q>> = Vec::new();
    for g in &other {
        // [x, g]_st = Σ_k x_sk g_kt - g_sk x_kt
        let mut rows: HashMap<(usize, usize), Vec<Q>> = HashMap::new();
        for (col, &(s, k)) in unknowns.iter().enumerate() {
            for t in 0..n {
                let c = g.get(k, t);
                if !c.is_zero() {
                    let row = rows.entry((s, t)).or_insert_with(|| vec![Q::zero(); u]);
                    row[col] += c;
                }
            }
            for r in 0..n {
                let c = g.get(r, s);
                if !c.is_zero() {
                    let row = rows.entry((r, k)).or_insert_with(|| vec![Q::zero(); u]);
                    row[col] -= c;
                }
            }
        }
        let mut keys: Vec<_> = rows.keys().copied().collect();
        keys.sort_unstable();
        equations.extend(keys.into_iter().map(|k| rows.remove(&k).expect("present")));
    }
    kernel_of_rows(&equations, u)
        .into_iter()
        .map(|v| {
            let mut m = QMatrix::zeros(n, n);
            for (val, &(s, t)) in v.into_iter().zip(&unknowns) {
                if !val.is_zero() {
                    m.set(s, t, val);
                }
            }
            m
        })
        .collect()
}

/// Dimensions behind the normalizer condition `k ⊕ c = N_gl(W)(k ⊕ c)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NormalizerReport {
    pub subalgebra_dim: usize,
    pub center_dim: usize,
    pub centralizer_dim: usize,
    pub normalizer_dim: usize,
    pub holds: bool,
}

/// For a subalgebra acting completely reducibly, `N(k') = k' + C(k')` and
/// `k' ∩ C(k')` is the center of `k'`, so only the commutant is needed.
pub fn normalizer_report(sub: &SubalgebraInGl) -> NormalizerReport {
    let mut gens: Vec<QMatrix> = sub.chevalley_generators().cloned().collect();
    gens.extend(sub.center.iter().cloned());
    let c = centralizer_in_gl(&gens, sub.ambient_dim);
    let center_dim = sub.center.len();
    NormalizerReport {
        subalgebra_dim: sub.dim(),
        center_dim,
        centralizer_dim: c.len(),
        normalizer_dim: sub.dim() + c.len() - center_dim,
        holds: c.len() == center_dim,
    }
}

/// Basis of the normalizer of `sub`, assembled from `sub` and its commutant.
pub fn normalizer_basis(sub: &SubalgebraInGl) -> Vec<QMatrix> {
    let mut gens: Vec<QMatrix> = sub.chevalley_generators().cloned().collect();
    gens.extend(sub.center.iter().cloned());
    let n = sub.ambient_dim;
    let mut span = LinearSpan::new(n * n);
    let mut out = Vec::new();
    for m in sub.basis.iter().cloned().chain(centralizer_in_gl(&gens, n)) {
        if span.insert(&flatten(&m)) {
            out.push(m);
        }
    }
    out
}

pub fn normalizer_condition_holds(spec: &PairSpec) -> Result<bool> {
    Ok(normalizer_report(&assemble(spec, DEFAULT_DIM_CAP)?).holds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::q;
    use crate::pair_spec::parse_pair_spec;

    fn sub(text: &str) -> SubalgebraInGl {
        assemble(&parse_pair_spec(text).unwrap(), DEFAULT_DIM_CAP).unwrap()
    }

    #[test]
    fn projective_ranks() {
        let s = sub("sl(2): w1");
        // The first basis vector spans the Borel-stable line.
        assert_eq!(projective_tangent_rank(&s, &[q(1), q(0)]).unwrap(), 0);
        assert_eq!(projective_tangent_rank(&s, &[q(0), q(1)]).unwrap(), 1);
        assert!(projective_tangent_rank(&s, &[q(0), q(0)]).is_err());
        let quartic = sub("sl(2): 4w1 [h1]");
        let w: Vec<Q> = (1..=5).map(q).collect();
        assert!(projective_tangent_rank(&quartic, &w).unwrap() <= 3);
    }

    #[test]
    fn verdicts_on_small_cases() {
        let cfg = SampleConfig::default();
        let v = is_spherical_projective(&sub("sp(4): w1 [h1]"), &cfg).unwrap();
        assert_eq!(v.status, Status::Spherical);
        let w = v.witness.unwrap();
        assert_eq!((w.rank, w.target), (3, 3));
        let q4 = is_spherical_projective(&sub("sl(2): 4w1"), &cfg).unwrap();
        assert_eq!(q4.certificate, Some(Certificate::DimensionCount { borel_dim: 2, target: 4 }));
    }

    #[test]
    fn grassmannian_ranks() {
        let cfg = SampleConfig::default();
        let sl4 = sub("sl(4): w1");
        let v = is_spherical_grassmannian(&sl4, 2, &cfg).unwrap();
        assert_eq!(v.witness.unwrap().rank, 4);
        let sp4 = sub("sp(4): w1");
        assert_eq!(is_spherical_grassmannian(&sp4, 2, &cfg).unwrap().status, Status::Spherical);
        let u = vec![vec![q(1), q(2), q(-1), q(3)]];
        assert_eq!(
            grassmannian_tangent_rank(&sp4, &u).unwrap(),
            projective_tangent_rank(&sp4, &u[0]).unwrap()
        );
        assert!(grassmannian_tangent_rank(&sp4, &[u[0].clone(), u[0].clone()]).is_err());
    }

    #[test]
    fn normalizer_of_trivial_and_full_bases() {
        assert_eq!(normalizer_in_gl(&[], 2).len(), 4);
        let gl2: Vec<QMatrix> = (0..4)
            .map(|k| {
                let mut e = vec![0; 4];
                e[k] = 1;
                QMatrix::from_i64(2, 2, &e)
            })
            .collect();
        assert_eq!(normalizer_in_gl(&gl2, 2).len(), 4);
    }

    #[test]
    fn structured_normalizer_matches_generic() {
        for text in ["sl(3): w1", "sl(3): w1 [h1]", "sl(2): w1 ++ w1", "sl(2): 2w1", "sl(2)+sl(2): w1*w1"] {
            let s = sub(text);
            let generic = normalizer_in_gl(&s.basis, s.ambient_dim).len();
            let report = normalizer_report(&s);
            assert_eq!(report.normalizer_dim, generic, "{text}");
            assert_eq!(normalizer_basis(&s).len(), generic, "{text}");
        }
        assert!(normalizer_condition_holds(&parse_pair_spec("sl(3): w1 [h1]").unwrap()).unwrap());
        assert!(!normalizer_condition_holds(&parse_pair_spec("sl(3): w1").unwrap()).unwrap());
    }
}
