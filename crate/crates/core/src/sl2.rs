//! Homomorphisms sl(2,ℝ) → 𝔤 given by triples (H, E, F) with
//! [H,E] = 2E, [H,F] = −2F, [E,F] = H.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::algebra::{Family, LieAlgebraSpace, SubspaceOfG};
use crate::error::{Error, Result};
use crate::linalg::{self, c64, fro, CMat, I};
use crate::projections;
use crate::rational::{self, q, Q};
use crate::roots::SplitTorusData;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TripleKind {
    Partition { parts: Vec<usize> },
    Rho1,
    Rho2,
    Custom,
}

#[derive(Clone, Debug)]
pub struct Sl2Triple {
    pub kind: TripleKind,
    pub h: CMat,
    pub e: CMat,
    pub f: CMat,
}

impl Sl2Triple {
    /// A user-supplied triple; members of 𝔤 are required, relations are
    /// reported by [`verify_sl2_triple`].
    pub fn custom(alg: &LieAlgebraSpace, h: CMat, e: CMat, f: CMat) -> Result<Self> {
        for x in [&h, &e, &f] {
            alg.ensure_member(x)?;
        }
        Ok(Self {
            kind: TripleKind::Custom,
            h,
            e,
            f,
        })
    }

    pub fn images(&self) -> [&CMat; 3] {
        [&self.h, &self.e, &self.f]
    }

    pub fn is_zero(&self) -> bool {
        self.images().iter().all(|x| fro(x) == 0.0)
    }

    /// Exact pattern coordinates of H, which must lie in 𝔞 with integral
    /// (guarded) entries.
    pub fn a0_vector(&self, torus: &SplitTorusData, guard: f64) -> Result<Vec<Q>> {
        let v = torus.pattern_of(&self.h, guard).ok_or(Error::NotDiagonal)?;
        v.iter()
            .map(|&x| {
                let r = x.round();
                if (x - r).abs() > guard {
                    Err(Error::NonIntegral(format!("H has diagonal entry {x}")))
                } else {
                    Ok(q(r as i64))
                }
            })
            .collect()
    }

    pub fn dominant_a0(&self, torus: &SplitTorusData, guard: f64) -> Result<Vec<Q>> {
        Ok(torus
            .dominant_representative(&self.a0_vector(torus, guard)?)
            .0)
    }
}

/// `(p−1, p−3, …, 1−p)` and the superdiagonal `√(k(p−k))` of the
/// p-dimensional irreducible representation.
fn irreducible_block(p: usize) -> (Vec<f64>, Vec<f64>) {
    let h = (0..p).map(|k| p as f64 - 1.0 - 2.0 * k as f64).collect();
    let e = (1..p).map(|k| ((k * (p - k)) as f64).sqrt()).collect();
    (h, e)
}

pub fn sl2_from_partition(alg: &LieAlgebraSpace, parts: &[usize]) -> Result<Sl2Triple> {
    let Family::Sl { n } = alg.family() else {
        return Err(Error::Unsupported(
            "partition triples are implemented for sl(n,R) only".into(),
        ));
    };
    if parts.contains(&0) || parts.iter().sum::<usize>() != n {
        return Err(Error::InvalidParameters(format!(
            "{parts:?} is not a partition of {n}"
        )));
    }
    let mut h = CMat::zeros(n, n);
    let mut e = CMat::zeros(n, n);
    let mut offset = 0;
    for &p in parts {
        let (hd, ed) = irreducible_block(p);
        for (k, x) in hd.iter().enumerate() {
            h[(offset + k, offset + k)] = c64(*x, 0.0);
        }
        for (k, x) in ed.iter().enumerate() {
            e[(offset + k, offset + k + 1)] = c64(*x, 0.0);
        }
        offset += p;
    }
    let f = e.transpose();
    Ok(Sl2Triple {
        kind: TripleKind::Partition {
            parts: parts.to_vec(),
        },
        h,
        e,
        f,
    })
}

fn su_params(alg: &LieAlgebraSpace) -> Result<(usize, usize)> {
    match alg.family() {
        Family::Su { p, q } => Ok((p, q)),
        Family::Sl { .. } => Err(Error::Unsupported(
            "this triple is defined for su(p,q) only".into(),
        )),
    }
}

/// H = diag(1^q, 0^{p−q}, −1^q), E = √−1·(I_q in the upper-right corner), F = E*.
pub fn rho1_su(alg: &LieAlgebraSpace) -> Result<Sl2Triple> {
    let (p, q) = su_params(alg)?;
    let n = p + q;
    let mut h = CMat::zeros(n, n);
    let mut e = CMat::zeros(n, n);
    for k in 0..q {
        h[(k, k)] = c64(1.0, 0.0);
        h[(p + k, p + k)] = c64(-1.0, 0.0);
        e[(k, p + k)] = I;
    }
    let f = e.adjoint();
    Ok(Sl2Triple {
        kind: TripleKind::Rho1,
        h,
        e,
        f,
    })
}

/// The (2q+1)-dimensional irreducible piece threaded through the first
/// q+1 and the last q coordinates, with constants c_k = √−1·√(k(2q+1−k)).
pub fn rho2_su(alg: &LieAlgebraSpace) -> Result<Sl2Triple> {
    let (p, q) = su_params(alg)?;
    if p == q {
        return Err(Error::Undefined(format!(
            "rho2 needs p >= q + 1, got p = q = {q}"
        )));
    }
    let n = p + q;
    let c = |k: usize| I * ((k * (2 * q + 1 - k)) as f64).sqrt();
    // the chain of basis indices carrying the irreducible piece
    let chain: Vec<usize> = (0..=q).chain(p..n).collect();
    let mut h = CMat::zeros(n, n);
    let mut e = CMat::zeros(n, n);
    for (k, &idx) in chain.iter().enumerate() {
        h[(idx, idx)] = c64(2.0 * q as f64 - 2.0 * k as f64, 0.0);
        if k + 1 < chain.len() {
            e[(idx, chain[k + 1])] = c(k + 1);
        }
    }
    let f = e.adjoint();
    Ok(Sl2Triple {
        kind: TripleKind::Rho2,
        h,
        e,
        f,
    })
}

pub fn zero_triple(alg: &LieAlgebraSpace) -> Sl2Triple {
    let n = alg.size();
    Sl2Triple {
        kind: TripleKind::Custom,
        h: CMat::zeros(n, n),
        e: CMat::zeros(n, n),
        f: CMat::zeros(n, n),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TripleCheck {
    pub valid: bool,
    /// Relative residuals of [H,E] = 2E, [H,F] = −2F, [E,F] = H.
    pub relation_residuals: [f64; 3],
    pub membership_residuals: [f64; 3],
}

pub fn verify_sl2_triple(alg: &LieAlgebraSpace, t: &Sl2Triple) -> TripleCheck {
    let two = c64(2.0, 0.0);
    let scale = t.images().iter().map(|x| fro(x)).fold(1.0, f64::max);
    let rel = |x: CMat| fro(&x) / scale;
    let relation_residuals = [
        rel(&t.h * &t.e - &t.e * &t.h - &t.e * two),
        rel(&t.h * &t.f - &t.f * &t.h + &t.f * two),
        rel(&t.e * &t.f - &t.f * &t.e - &t.h),
    ];
    let membership_residuals = t
        .images()
        .map(|x| alg.membership_residual(x).unwrap_or(f64::INFINITY));
    let tol = alg.tol().membership;
    let valid = relation_residuals
        .iter()
        .chain(&membership_residuals)
        .all(|&r| r <= tol);
    TripleCheck {
        valid,
        relation_residuals,
        membership_residuals,
    }
}

/// Weight spaces 𝔤(k) of ad H, with integral weights recovered by rounding.
#[derive(Clone, Debug)]
pub struct WeightSpaces {
    pub ad_h: DMatrix<f64>,
    pub spaces: BTreeMap<i64, DMatrix<f64>>,
}

impl WeightSpaces {
    pub fn multiplicities(&self) -> BTreeMap<i64, usize> {
        self.spaces.iter().map(|(&k, b)| (k, b.ncols())).collect()
    }

    pub fn multiplicity(&self, k: i64) -> usize {
        self.spaces.get(&k).map_or(0, |b| b.ncols())
    }
}

/// Integral eigenvalues of H on the ambient space (an sl₂-module).
fn ambient_weights(alg: &LieAlgebraSpace, t: &Sl2Triple) -> Result<Vec<i64>> {
    let guard = alg.tol().integer_guard;
    let spec = linalg::real_spectrum(&t.h, guard)
        .ok_or_else(|| Error::NonIntegral("H has non-real eigenvalues".into()))?;
    let mut eig = Vec::with_capacity(spec.len());
    for x in spec {
        let r = x.round();
        if (x - r).abs() > guard * x.abs().max(1.0) {
            return Err(Error::NonIntegral(format!("H has eigenvalue {x}")));
        }
        eig.push(r as i64);
    }
    eig.sort_unstable();
    eig.dedup();
    Ok(eig)
}

/// Weights of ad H are differences of ambient weights; each candidate is
/// confirmed by a kernel computation and the total must exhaust 𝔤.
pub fn weight_spaces(alg: &LieAlgebraSpace, t: &Sl2Triple) -> Result<WeightSpaces> {
    let ad_h = alg.adjoint_operator(&t.h)?;
    let ambient = ambient_weights(alg, t)?;
    let mut weights: Vec<i64> = ambient
        .iter()
        .flat_map(|a| ambient.iter().map(move |b| a - b))
        .collect();
    weights.sort_unstable();
    weights.dedup();
    let d = alg.dim();
    let id = DMatrix::<f64>::identity(d, d);
    let mut spaces = BTreeMap::new();
    let mut total = 0;
    for &k in &weights {
        let basis = linalg::null_space(&(&ad_h - &id * k as f64), alg.tol().rank);
        if basis.ncols() > 0 {
            total += basis.ncols();
            spaces.insert(k, basis);
        }
    }
    if total != d {
        return Err(Error::RankAmbiguity(format!(
            "weight spaces of ad H have total dimension {total}, expected {d}"
        )));
    }
    Ok(WeightSpaces { ad_h, spaces })
}

pub fn ad_weights(alg: &LieAlgebraSpace, t: &Sl2Triple) -> Result<BTreeMap<i64, usize>> {
    Ok(weight_spaces(alg, t)?.multiplicities())
}

pub fn is_even(alg: &LieAlgebraSpace, t: &Sl2Triple) -> Result<bool> {
    Ok(ad_weights(alg, t)?.keys().all(|k| k % 2 == 0))
}

/// Parity rule for sl(n,ℝ): a partition triple is even iff all parts have
/// the same parity.
pub fn partition_parity_even(parts: &[usize]) -> bool {
    parts.windows(2).all(|w| w[0] % 2 == w[1] % 2)
}

/// σ = exp(π√−1·H), assembled from spectral projectors of H.
pub fn sigma(alg: &LieAlgebraSpace, t: &Sl2Triple) -> Result<CMat> {
    let eig = ambient_weights(alg, t)?;
    let n = alg.size();
    let id = linalg::identity(n);
    let mut s = CMat::zeros(n, n);
    for &l in &eig {
        let mut proj = id.clone();
        for &m in eig.iter().filter(|&&m| m != l) {
            proj = proj * (&t.h - &id * c64(m as f64, 0.0)) / c64((l - m) as f64, 0.0);
        }
        s += proj * c64(if l % 2 == 0 { 1.0 } else { -1.0 }, 0.0);
    }
    if linalg::max_imag(&s) > alg.tol().membership.sqrt() {
        return Err(Error::NotInGroup("exp(pi i H) is not real".into()));
    }
    let s = s.map(|z| c64(z.re, 0.0));
    projections::ensure_group(alg, &s)?;
    Ok(s)
}

/// ⊕ 𝔤(2k): the sum of even weight spaces of ad H.
pub fn g_even(alg: &LieAlgebraSpace, t: &Sl2Triple) -> Result<SubspaceOfG> {
    let ws = weight_spaces(alg, t)?;
    Ok(even_part(alg, &ws))
}

pub(crate) fn even_part(alg: &LieAlgebraSpace, ws: &WeightSpaces) -> SubspaceOfG {
    let cols: Vec<_> = ws
        .spaces
        .iter()
        .filter(|(k, _)| *k % 2 == 0)
        .flat_map(|(_, b)| b.column_iter().map(|c| c.into_owned()).collect::<Vec<_>>())
        .collect();
    SubspaceOfG::from_vectors(alg.dim(), &cols, alg.tol().rank)
}

/// The +1 eigenspace of Ad(σ).
pub fn sigma_fixed_subspace(alg: &LieAlgebraSpace, sigma: &CMat) -> Result<SubspaceOfG> {
    let ad = alg.group_adjoint(sigma)?;
    let d = alg.dim();
    let scale = ad.norm().max(1.0);
    let kernel = linalg::null_space_scaled(&(ad - DMatrix::identity(d, d)), alg.tol().rank, scale);
    Ok(SubspaceOfG::from_orthonormal(kernel))
}

/// Partitions of n in reverse lexicographic order ([n] first, [1ⁿ] last),
/// a linear extension of the dominance order.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for k in (1..=n.min(max)).rev() {
            prefix.push(k);
            go(n - k, k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Even partition triples whose dominant neutral vectors form a basis of 𝔟,
/// chosen greedily along [`partitions`].
pub fn even_sl2_basis_of_b(
    alg: &LieAlgebraSpace,
    torus: &SplitTorusData,
) -> Result<Vec<Sl2Triple>> {
    let Family::Sl { n } = alg.family() else {
        return Err(Error::Unsupported(
            "even bases of b are implemented for sl(n,R) only".into(),
        ));
    };
    let target = torus.b_space().len();
    let guard = alg.tol().integer_guard;
    let mut chosen = Vec::new();
    let mut vectors: Vec<Vec<Q>> = Vec::new();
    for parts in partitions(n) {
        if chosen.len() == target {
            break;
        }
        if !partition_parity_even(&parts) {
            continue;
        }
        let t = sl2_from_partition(alg, &parts)?;
        let v = t.dominant_a0(torus, guard)?;
        vectors.push(v);
        if rational::rank(&vectors) == vectors.len() {
            chosen.push(t);
        } else {
            vectors.pop();
        }
    }
    Ok(chosen)
}
