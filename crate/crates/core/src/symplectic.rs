//! Coadjoint geometry of `sl_n` identified with its dual by the trace form:
//! the Kostant–Kirillov pairing, the moment image of `T*P(F^n)`, `k^⊥`, and
//! isotropy and Lagrangian rank checks.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactla::{kernel_of_rows, q, rank_of_vectors, QMatrix, SampleConfig, Sampler, Q};
use crate::rep_build::SubalgebraInGl;

/// A point of `sl_n*`, stored as the traceless matrix `X` with `x(y) = tr(X y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoadjointPoint {
    matrix: QMatrix,
}

impl CoadjointPoint {
    pub fn new(matrix: QMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::InvalidArgument("coadjoint points are square matrices".into()));
        }
        if !matrix.trace().is_zero() {
            return Err(Error::InvalidArgument("coadjoint points must be traceless".into()));
        }
        Ok(Self { matrix })
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.matrix
    }

    pub fn n(&self) -> usize {
        self.matrix.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }
}

fn same_shape(x: &CoadjointPoint, m: &QMatrix) -> Result<()> {
    if m.rows() != x.n() || m.cols() != x.n() {
        return Err(Error::InvalidArgument(format!(
            "expected {n}x{n} matrices, got {}x{}",
            m.rows(),
            m.cols(),
            n = x.n()
        )));
    }
    Ok(())
}

/// `ω_x(p, q) = tr(X [p, q])`.
pub fn kk_form(x: &CoadjointPoint, p: &QMatrix, q: &QMatrix) -> Result<Q> {
    same_shape(x, p)?;
    same_shape(x, q)?;
    Ok(x.matrix.trace_pairing(&p.commutator(q)))
}

fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

/// The image `w ξᵀ` of a conormal covector `(w, ξ)` with `ξ(w) = 0`.
pub fn moment_image_point(w: &[Q], xi: &[Q]) -> Result<QMatrix> {
    if w.len() != xi.len() {
        return Err(Error::InvalidArgument("w and ξ have different lengths".into()));
    }
    if !dot(w, xi).is_zero() {
        return Err(Error::Precondition("ξ(w) must vanish".into()));
    }
    let n = w.len();
    let mut m = QMatrix::zeros(n, n);
    for (i, a) in w.iter().enumerate() {
        for (j, b) in xi.iter().enumerate() {
            if !a.is_zero() && !b.is_zero() {
                m.set(i, j, a * b);
            }
        }
    }
    Ok(m)
}

/// Samples `(w, ξ)` with `ξ(w) = 0` and returns `w ξᵀ`.
pub fn sample_moment_points(n: usize, count: usize, cfg: &SampleConfig) -> Result<Vec<QMatrix>> {
    if n < 2 {
        return Err(Error::InvalidArgument("n must be at least 2".into()));
    }
    let mut sampler = Sampler::new(cfg)?;
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let w = sampler.next_nonzero_vector(n);
        let mut xi = sampler.next_vector(n);
        // Project ξ onto the annihilator of w along the first nonzero coordinate.
        let p = w.iter().position(|x| !x.is_zero()).expect("nonzero");
        let s = dot(&w, &xi) / &w[p];
        xi[p] -= s;
        out.push(moment_image_point(&w, &xi)?);
    }
    Ok(out)
}

fn flatten(m: &QMatrix) -> Vec<Q> {
    m.entries().to_vec()
}

fn unflatten(v: &[Q], n: usize) -> QMatrix {
    QMatrix::from_rows(v.chunks(n).map(<[Q]>::to_vec).collect())
}

/// Basis of `{X ∈ sl_n : tr(X b) = 0 for every b in the basis of k}`.
pub fn perp_space(sub: &SubalgebraInGl) -> Vec<QMatrix> {
    let n = sub.ambient_dim;
    let mut rows: Vec<Vec<Q>> = sub.basis.iter().map(|b| flatten(&b.transpose())).collect();
    rows.push(flatten(&QMatrix::identity(n)));
    kernel_of_rows(&rows, n * n)
        .iter()
        .map(|v| unflatten(v, n))
        .collect()
}

pub fn in_perp(sub: &SubalgebraInGl, x: &CoadjointPoint) -> bool {
    x.n() == sub.ambient_dim && sub.basis.iter().all(|b| x.matrix.trace_pairing(b).is_zero())
}

/// Whether `x([k_i, k_j]) = 0` for all basis pairs; requires `x ∈ k^⊥`.
pub fn isotropy_check(sub: &SubalgebraInGl, x: &CoadjointPoint) -> Result<bool> {
    if !in_perp(sub, x) {
        return Err(Error::Precondition("x is not in k^⊥".into()));
    }
    for (i, a) in sub.basis.iter().enumerate() {
        for b in &sub.basis[i + 1..] {
            if !kk_form(x, a, b)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Dimension of the orbit through `x` of the group generated by `basis`:
/// the rank of `b ↦ [b, X]`.
pub fn orbit_dimension(basis: &[QMatrix], x: &CoadjointPoint) -> usize {
    let vs: Vec<Vec<Q>> = basis.iter().map(|b| flatten(&b.commutator(&x.matrix))).collect();
    if vs.is_empty() {
        return 0;
    }
    rank_of_vectors(&vs)
}

/// Elementary matrices spanning `gl_n`; the identity acts trivially, so
/// orbit dimensions agree with those of `SL_n`.
pub fn gl_basis(n: usize) -> Vec<QMatrix> {
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut m = QMatrix::zeros(n, n);
            m.set(i, j, Q::one());
            out.push(m);
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LagrangianCheck {
    pub k_orbit_dim: usize,
    pub full_orbit_dim: usize,
    pub holds: bool,
}

/// Compares the `K`-orbit through a rank ≤ 1 nilpotent `x ∈ k^⊥` with half
/// of its `SL_n`-orbit. `None` when `x = 0`.
pub fn lagrangian_check(sub: &SubalgebraInGl, x: &CoadjointPoint) -> Result<Option<LagrangianCheck>> {
    if !in_perp(sub, x) {
        return Err(Error::Precondition("x is not in k^⊥".into()));
    }
    if !x.matrix.mul(&x.matrix).is_zero() || x.matrix.rank() > 1 {
        return Err(Error::Precondition("x is not a nilpotent of rank at most 1".into()));
    }
    if x.is_zero() {
        return Ok(None);
    }
    let k_orbit_dim = orbit_dimension(&sub.basis, x);
    let full_orbit_dim = orbit_dimension(&gl_basis(x.n()), x);
    Ok(Some(LagrangianCheck {
        k_orbit_dim,
        full_orbit_dim,
        holds: 2 * k_orbit_dim == full_orbit_dim,
    }))
}

/// `exp(N)` for nilpotent `N`.
fn exp_nilpotent(m: &QMatrix) -> QMatrix {
    let n = m.rows();
    let mut acc = QMatrix::identity(n);
    let mut term = QMatrix::identity(n);
    for k in 1..=n {
        term = term.mul(m).scale(&(Q::one() / q(k as i64)));
        if term.is_zero() {
            break;
        }
        acc = acc.add(&term);
    }
    acc
}

/// Random rank ≤ 1 nilpotents in `k^⊥`. Points are `g·v ⊗ ξ` where `v` is a
/// highest-weight vector of a summand, `g` a random product of lowering
/// exponentials, and `ξ` a random covector vanishing on `k·(g v)`.
pub fn sample_minimal_perp_points(sub: &SubalgebraInGl, cfg: &SampleConfig) -> Result<Vec<QMatrix>> {
    let n = sub.ambient_dim;
    let mut sampler = Sampler::new(cfg)?;
    let lowering: Vec<&QMatrix> = sub.factors.iter().flat_map(|f| f.negative.iter()).collect();
    let starts: Vec<usize> = sub
        .summand_dims
        .iter()
        .scan(0, |off, d| {
            let s = *off;
            *off += d;
            Some(s)
        })
        .collect();
    let mut out = Vec::new();
    for trial in 0..cfg.trials {
        let mut w = vec![Q::zero(); n];
        w[starts[trial % starts.len()]] = Q::one();
        for f in &lowering {
            let t = sampler.next_rational();
            w = exp_nilpotent(&f.scale(&t)).mul_vec(&w);
        }
        let mut rows: Vec<Vec<Q>> = sub.basis.iter().map(|b| b.mul_vec(&w)).collect();
        rows.push(w.clone());
        let annihilator = kernel_of_rows(&rows, n);
        if annihilator.is_empty() {
            continue;
        }
        let mut xi = vec![Q::zero(); n];
        for a in &annihilator {
            let c = sampler.next_rational();
            for (x, y) in xi.iter_mut().zip(a) {
                *x += &c * y;
            }
        }
        if xi.iter().all(Zero::is_zero) {
            continue;
        }
        out.push(moment_image_point(&w, &xi)?);
    }
    Ok(out)
}

/// Random elements of `k^⊥`.
pub fn sample_perp_points(sub: &SubalgebraInGl, count: usize, cfg: &SampleConfig) -> Result<Vec<QMatrix>> {
    let basis = perp_space(sub);
    let n = sub.ambient_dim;
    let mut sampler = Sampler::new(cfg)?;
    Ok((0..count)
        .map(|_| {
            basis.iter().fold(QMatrix::zeros(n, n), |acc, b| {
                acc.add(&b.scale(&sampler.next_rational()))
            })
        })
        .collect())
}

/// For `Y = span(e_1..e_m)`, samples conormal points `x = w ξᵀ` (`w ∈ Y`,
/// `ξ|_Y = 0`) and pairs `p, q` in the stabilizer of `Y`; returns whether
/// `ω_x(p, q)` always vanishes.
pub fn conormal_isotropy(n: usize, m: usize, samples: usize, cfg: &SampleConfig) -> Result<bool> {
    if m == 0 || m >= n {
        return Err(Error::InvalidArgument(format!("subspace dimension {m} is outside 1..{n}")));
    }
    let mut sampler = Sampler::new(cfg)?;
    let stabilizer = |s: &mut Sampler| {
        let mut p = QMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                if !(i >= m && j < m) {
                    p.set(i, j, s.next_rational());
                }
            }
        }
        p
    };
    for _ in 0..samples {
        let mut w = sampler.next_vector(n);
        w[m..].iter_mut().for_each(|x| *x = Q::zero());
        let mut xi = sampler.next_vector(n);
        xi[..m].iter_mut().for_each(|x| *x = Q::zero());
        let x = CoadjointPoint::new(moment_image_point(&w, &xi)?)?;
        let (p, r) = (stabilizer(&mut sampler), stabilizer(&mut sampler));
        if !kk_form(&x, &p, &r)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}
