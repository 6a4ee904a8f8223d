//! Exact properness decisions for actions on G/H, given 𝔞_𝔥 ⊆ 𝔞.
//!
//! Everything except [`pitchfork_margin`] is exact rational arithmetic with an
//! exhaustive loop over the Weyl group.

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{self, q, ExactSpan, Q};
use crate::roots::{SplitTorusData, WeylElement};

/// An exact subspace 𝔞_𝔥 of 𝔞, in pattern coordinates.
#[derive(Clone, Debug)]
pub struct HSubalgebraTorus {
    span: ExactSpan,
}

impl HSubalgebraTorus {
    pub fn new(torus: &SplitTorusData, vectors: &[Vec<Q>]) -> Result<Self> {
        for v in vectors {
            torus.validate(v)?;
        }
        let span = ExactSpan::new(torus.pattern_len(), vectors);
        if span.dim() != vectors.len() {
            return Err(Error::InvalidParameters(format!(
                "a_h basis is linearly dependent ({} vectors span dimension {})",
                vectors.len(),
                span.dim()
            )));
        }
        Ok(Self { span })
    }

    pub fn from_ints(torus: &SplitTorusData, vectors: &[&[i64]]) -> Result<Self> {
        let vs: Vec<Vec<Q>> = vectors
            .iter()
            .map(|v| v.iter().map(|&x| q(x)).collect())
            .collect();
        Self::new(torus, &vs)
    }

    pub fn dim(&self) -> usize {
        self.span.dim()
    }

    /// Reduced echelon basis.
    pub fn basis(&self) -> &[Vec<Q>] {
        self.span.basis()
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        self.span.contains(v)
    }

    fn orthonormal_f64(&self) -> Vec<Vec<f64>> {
        let mut out: Vec<Vec<f64>> = Vec::new();
        for b in self.basis() {
            let mut v: Vec<f64> = b.iter().map(rational::to_f64).collect();
            for u in &out {
                let d: f64 = u.iter().zip(&v).map(|(a, b)| a * b).sum();
                v.iter_mut().zip(u).for_each(|(x, y)| *x -= d * y);
            }
            let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            out.push(v.into_iter().map(|x| x / n).collect());
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrbitDecision {
    pub member: bool,
    /// Some `w` with `w·v ∈ span(𝔞_𝔥)`.
    pub witness: Option<WeylElement>,
}

/// Whether `v ∈ W·span(𝔞_𝔥)`, by exhaustive enumeration of W.
pub fn in_weyl_orbit_of_subspace(
    torus: &SplitTorusData,
    v: &[Q],
    ah: &HSubalgebraTorus,
) -> Result<OrbitDecision> {
    torus.validate(v)?;
    let ints = rational::primitive_integer(v);
    let witness = match rational::small_ints(&ints) {
        Some(small) => torus.weyl().iter().find(|w| {
            let moved: Vec<i64> = (0..w.len())
                .map(|i| w.sign(i) as i64 * small[w.source(i)])
                .collect();
            ah.span.contains_small(&moved)
        }),
        None => torus.weyl().iter().find(|w| {
            let moved: Vec<BigInt> = (0..w.len())
                .map(|i| &ints[w.source(i)] * BigInt::from(w.sign(i)))
                .collect();
            ah.span.contains_big(&moved)
        }),
    };
    Ok(OrbitDecision {
        member: witness.is_some(),
        witness: witness.copied(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProperDecision {
    pub proper: bool,
    /// Dominant representative of ρ(A₀).
    #[serde(serialize_with = "rational::ser_qvec")]
    pub dominant: Vec<Q>,
    pub witness: Option<WeylElement>,
}

/// Properness of SL(2,ℝ) acting on G/H through a triple whose neutral
/// element has pattern `a0`: proper iff the dominant vector avoids W·𝔞_𝔥.
/// Callers with a non-diagonal triple must conjugate it into 𝔞 first.
pub fn sl2_action_proper(
    torus: &SplitTorusData,
    a0: &[Q],
    ah: &HSubalgebraTorus,
) -> Result<ProperDecision> {
    torus.validate(a0)?;
    let (dominant, _) = torus.dominant_representative(a0);
    let orbit = in_weyl_orbit_of_subspace(torus, &dominant, ah)?;
    Ok(ProperDecision {
        proper: !orbit.member,
        dominant,
        witness: orbit.witness,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenoistDecision {
    /// `𝔟₊ ⊄ W·𝔞_𝔥`.
    pub holds: bool,
    /// When it fails: some `w` with `𝔟 ⊆ w·span(𝔞_𝔥)`.
    pub containing: Option<WeylElement>,
    /// When it holds: a rational point of 𝔟₊ outside every `w·span(𝔞_𝔥)`.
    #[serde(serialize_with = "rational::ser_opt_qvec")]
    pub certificate: Option<Vec<Q>>,
}

/// Benoist's criterion for the existence of a proper action of a
/// non-virtually-abelian discrete group. A cone spanning 𝔟 lies in a finite
/// union of subspaces iff 𝔟 lies in one of them.
pub fn benoist_criterion(torus: &SplitTorusData, ah: &HSubalgebraTorus) -> Result<BenoistDecision> {
    let b = torus.b_space();
    let containing = torus
        .weyl()
        .iter()
        .find(|u| b.iter().all(|v| ah.contains(&u.apply(v))))
        .map(|u| u.inverse());
    if let Some(w) = containing {
        return Ok(BenoistDecision {
            holds: false,
            containing: Some(w),
            certificate: None,
        });
    }
    // ρ is regular dominant and ι-fixed, hence interior to 𝔟₊; the curve
    // ρ + Σ εᵏ b_k meets each proper subspace of 𝔟 in finitely many points.
    let rho = torus.regular_dominant();
    for n in 2..10_000i64 {
        let eps = rational::qr(1, n);
        let mut x = rho.clone();
        let mut pow = eps.clone();
        for bk in b {
            for (xi, bi) in x.iter_mut().zip(bk) {
                *xi += &pow * bi;
            }
            pow *= &eps;
        }
        if torus.in_b_plus(&x) && !in_weyl_orbit_of_subspace(torus, &x, ah)?.member {
            return Ok(BenoistDecision {
                holds: true,
                containing: None,
                certificate: Some(x),
            });
        }
    }
    Err(Error::Unsupported(
        "no interior certificate found for the Benoist criterion".into(),
    ))
}

/// True iff only finite groups act properly (rank G = rank H).
pub fn calabi_markus(torus: &SplitTorusData, ah: &HSubalgebraTorus) -> bool {
    ah.dim() == torus.rank()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PitchforkMargin {
    /// Minimal distance to W·span(𝔞_𝔥) over qualifying samples (+∞ if none).
    pub margin: f64,
    pub qualifying: usize,
    pub inconclusive: bool,
}

/// Sampled diagnostic: distance of μ-samples with `‖μ‖ ≥ radius` from the
/// finite union of subspaces W·span(𝔞_𝔥).
pub fn pitchfork_margin(
    torus: &SplitTorusData,
    samples: &[Vec<f64>],
    ah: &HSubalgebraTorus,
    radius: f64,
) -> PitchforkMargin {
    let onb = ah.orthonormal_f64();
    let dist_to_span = |v: &[f64]| {
        let mut r = v.to_vec();
        for u in &onb {
            let d: f64 = u.iter().zip(v).map(|(a, b)| a * b).sum();
            r.iter_mut().zip(u).for_each(|(x, y)| *x -= d * y);
        }
        r.iter().map(|x| x * x).sum::<f64>().sqrt()
    };
    let mut margin = f64::INFINITY;
    let mut qualifying = 0;
    for s in samples {
        if s.iter().map(|x| x * x).sum::<f64>().sqrt() < radius {
            continue;
        }
        qualifying += 1;
        for w in torus.weyl() {
            margin = margin.min(dist_to_span(&w.apply_f64(s)));
        }
    }
    PitchforkMargin {
        margin,
        qualifying,
        inconclusive: qualifying == 0,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChamberCrossCheck {
    /// Translate of `v` into the chamber adapted to 𝔞_𝔥.
    #[serde(serialize_with = "rational::ser_qvec")]
    pub adapted: Vec<Q>,
    pub orbit_member: bool,
    pub in_adapted_chamber_slice: bool,
    pub agrees: bool,
}

/// Dual enumeration of `𝔞₊′ ∩ W·𝔞_𝔥 = 𝔞₊′ ∩ 𝔞_𝔥`, where 𝔞₊′ is the chamber of
/// the lexicographic ordering with respect to a basis of 𝔞 that extends a
/// basis of 𝔞_𝔥. The identity is known for symmetric pairs; for other 𝔞_𝔥
/// the result is informational only.
pub fn chamber_cross_check(
    torus: &SplitTorusData,
    v: &[Q],
    ah: &HSubalgebraTorus,
) -> Result<ChamberCrossCheck> {
    torus.validate(v)?;
    let m = torus.pattern_len();
    let mut functionals: Vec<Vec<Q>> = ah.basis().to_vec();
    functionals.extend((0..m).map(|i| (0..m).map(|j| q((i == j) as i64)).collect()));
    let key = |x: &[Q]| -> Vec<Q> {
        functionals
            .iter()
            .map(|f| f.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    };
    let adapted = torus
        .weyl()
        .iter()
        .map(|w| w.apply(v))
        .max_by(|a, b| key(a).cmp(&key(b)))
        .expect("Weyl group is nonempty");
    let orbit_member = in_weyl_orbit_of_subspace(torus, v, ah)?.member;
    let in_slice = ah.contains(&adapted);
    Ok(ChamberCrossCheck {
        adapted,
        orbit_member,
        in_adapted_chamber_slice: in_slice,
        agrees: orbit_member == in_slice,
    })
}
