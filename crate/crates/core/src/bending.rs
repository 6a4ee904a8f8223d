//! Bending ρ|Γ_g along vectors fixed by the a-generators, and a
//! Lie-algebra certificate that the deformed image generates 𝔤′.

use nalgebra::{DVector, Matrix2};
use serde::Serialize;

use crate::algebra::{LieAlgebraSpace, SubspaceOfG};
use crate::error::{Error, Result};
use crate::fuchsian::{self, SurfaceGroupRep};
use crate::isotypic::{self, IsotypicData, IsotypicPiece};
use crate::linalg::{self, c64, fro, CMat};
use crate::sl2::{self, Sl2Triple};

/// Real 2×2 view of an SL(2,ℝ) generator.
pub fn as_real2(m: &CMat) -> Result<Matrix2<f64>> {
    if m.shape() != (2, 2) || linalg::max_imag(m) > 0.0 {
        return Err(Error::Shape("expected a real 2x2 matrix".into()));
    }
    Ok(Matrix2::from_fn(|i, j| m[(i, j)].re))
}

/// Eigenvector frame k ∈ SL(2,ℝ) with a = ±k·diag(λ, 1/λ)·k⁻¹.
fn hyperbolic_frame(a: &Matrix2<f64>) -> Result<Matrix2<f64>> {
    let tr = a.trace();
    if tr.abs() <= 2.0 + 1e-9 {
        return Err(Error::NotHyperbolic(format!(
            "|trace| = {:.6} ≤ 2",
            tr.abs()
        )));
    }
    let disc = (tr * tr - 4.0).sqrt();
    let eig = [(tr + disc) / 2.0, (tr - disc) / 2.0];
    let vec = |l: f64| {
        // (b, l − a) or (l − d, c), whichever is better conditioned
        let v1 = [a[(0, 1)], l - a[(0, 0)]];
        let v2 = [l - a[(1, 1)], a[(1, 0)]];
        let v = if v1[0].hypot(v1[1]) >= v2[0].hypot(v2[1]) {
            v1
        } else {
            v2
        };
        let n = v[0].hypot(v[1]);
        [v[0] / n, v[1] / n]
    };
    let (u, w) = (vec(eig[0]), vec(eig[1]));
    let det = u[0] * w[1] - u[1] * w[0];
    let s = det.abs().sqrt();
    let sign = det.signum();
    Ok(Matrix2::new(
        u[0] / s,
        sign * w[0] / s,
        u[1] / s,
        sign * w[1] / s,
    ))
}

fn unit_with_sign(mut v: DVector<f64>) -> DVector<f64> {
    v /= v.norm();
    let top = v.amax();
    if let Some(x) = v.iter().find(|x| x.abs() > 1e-9 * top) {
        if *x < 0.0 {
            v = -v;
        }
    }
    v
}

/// The Ad(ρ(a))-fixed line of an odd-dimensional piece: Ad(ρ(k)) of its
/// weight-zero vector, where k diagonalizes the hyperbolic element a.
/// Returned as unit coordinates with the first significant entry positive.
pub fn fixed_weight_zero_vector(
    alg: &LieAlgebraSpace,
    t: &Sl2Triple,
    piece: &IsotypicPiece,
    a: &Matrix2<f64>,
) -> Result<DVector<f64>> {
    let v0 = piece.weight_zero_vector().ok_or_else(|| {
        Error::InvalidParameters("even-dimensional pieces have no weight-zero line".into())
    })?;
    if piece.highest_weight == 0 {
        return Ok(unit_with_sign(v0));
    }
    let k = hyperbolic_frame(a)?;
    let rk = fuchsian::lift(t, &k)?;
    let x = &rk * alg.element(&v0) * linalg::inverse(&rk)?;
    let x = unit_with_sign(alg.coords_unchecked(&x));
    let residual = fixed_residual(alg, t, a, &x)?;
    if residual > alg.tol().membership.sqrt() {
        return Err(Error::RankAmbiguity(format!(
            "fixed-point residual {residual:.3e}"
        )));
    }
    Ok(x)
}

/// ‖Ad(ρ(a))X − X‖ / (‖ρ(a)‖‖ρ(a)⁻¹‖‖X‖).
pub fn fixed_residual(
    alg: &LieAlgebraSpace,
    t: &Sl2Triple,
    a: &Matrix2<f64>,
    x: &DVector<f64>,
) -> Result<f64> {
    let ra = fuchsian::lift(t, a)?;
    let ra_inv = fuchsian::lift(
        t,
        &a.try_inverse()
            .ok_or_else(|| Error::NotInGroup("singular".into()))?,
    )?;
    let xm = alg.element(x);
    let moved = &ra * &xm * &ra_inv;
    Ok(fro(&(moved - &xm)) / (fro(&ra) * fro(&ra_inv) * fro(&xm)))
}

/// Z(t) = (Ad(e^{tX})Y − Y)/t.
pub fn z_vector(x: &CMat, y: &CMat, t: f64) -> Result<CMat> {
    if t == 0.0 {
        return Err(Error::ZeroParameter);
    }
    let g = linalg::expm(&(x * c64(t, 0.0)));
    let g_inv = linalg::expm(&(x * c64(-t, 0.0)));
    Ok((g * y * g_inv - y) / c64(t, 0.0))
}

#[derive(Clone, Debug, Serialize)]
pub struct BendingVector {
    pub i: usize,
    pub j: usize,
    /// f(i, j), 1-based generator index.
    pub generator: usize,
    #[serde(skip)]
    pub piece: usize,
    #[serde(skip)]
    pub x: CMat,
    /// Which triple image serves as Y (`None` for i = 0).
    pub y_label: Option<&'static str>,
    #[serde(skip)]
    pub y: Option<CMat>,
    /// |q([X, Y])|_i
    pub bracket_norm: Option<f64>,
    pub fixed_residual: f64,
}

#[derive(Clone, Debug)]
pub struct BendingPlan {
    pub triple: Sl2Triple,
    pub genus: usize,
    pub seed: Vec<Matrix2<f64>>,
    pub target: SubspaceOfG,
    pub iso: IsotypicData,
    /// Λ sorted by (i descending, j ascending); entry n is sent to generator n + 1.
    pub lambda: Vec<(usize, usize)>,
    pub vectors: Vec<BendingVector>,
    pub t: f64,
}

impl BendingPlan {
    /// X_k for generator k (1-based), zero when k is outside the image of f.
    pub fn x_for_generator(&self, k: usize) -> Option<&CMat> {
        self.vectors.iter().find(|v| v.generator == k).map(|v| &v.x)
    }

    pub fn with_t(mut self, t: f64) -> Self {
        self.t = t;
        self
    }

    pub fn multiplicity(&self, i: usize) -> usize {
        self.iso.multiplicity(2 * i + 1)
    }
}

/// Validates a user-supplied 𝔤′: ρ(sl₂) ⊆ 𝔤′ ⊆ 𝔤_even, bracket-closed.
pub fn validate_target(alg: &LieAlgebraSpace, t: &Sl2Triple, target: &SubspaceOfG) -> Result<()> {
    let tol = alg.tol().membership.sqrt();
    for x in t.images() {
        if !target.contains_vector(&alg.coords(x)?, tol) {
            return Err(Error::InvalidParameters(
                "target does not contain the triple".into(),
            ));
        }
    }
    if !sl2::g_even(alg, t)?.contains(target, tol) {
        return Err(Error::InvalidParameters(
            "target is not contained in g_even".into(),
        ));
    }
    let closed = alg.generated_subalgebra(&alg.subspace_elements(target))?;
    if closed.dim() != target.dim() {
        return Err(Error::InvalidParameters(
            "target is not bracket-closed".into(),
        ));
    }
    Ok(())
}

/// Builds Λ, f, X_{i,j} and Y_{i,j} for the seed representation. The target
/// defaults to 𝔤_even.
pub fn plan_bending(
    alg: &LieAlgebraSpace,
    t: &Sl2Triple,
    seed: &SurfaceGroupRep,
    target: Option<SubspaceOfG>,
) -> Result<BendingPlan> {
    let seed: Vec<Matrix2<f64>> = seed
        .generators
        .iter()
        .map(as_real2)
        .collect::<Result<_>>()?;
    let genus = seed.len() / 2;
    let target = match target {
        Some(tg) => {
            validate_target(alg, t, &tg)?;
            tg
        }
        None => sl2::g_even(alg, t)?,
    };
    let iso = isotypic::decompose(alg, t, Some(&target))?;
    let mut lambda = iso.lambda();
    lambda.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    if genus < lambda.len() {
        return Err(Error::GenusCondition {
            genus,
            required: lambda.len(),
        });
    }

    let z = isotypic::triple_centralizer(alg, t, Some(&target))?;
    let star = if z.dim() > 0 {
        isotypic::property_star_basis(alg, &z)?
    } else {
        Vec::new()
    };
    if star.len() != iso.multiplicity(1) {
        return Err(Error::RankAmbiguity(format!(
            "centralizer has dimension {} but [g':V_1] = {}",
            star.len(),
            iso.multiplicity(1)
        )));
    }

    let images = [("E", &t.e), ("F", &t.f), ("H", &t.h)];
    let mut vectors = Vec::with_capacity(lambda.len());
    for (n, &(i, j)) in lambda.iter().enumerate() {
        let generator = n + 1;
        let a = seed[2 * n];
        let piece = iso.piece_index(i, j).expect("Λ entry without a piece");
        if i == 0 {
            let x = star[j - 1].element.clone();
            let fixed_residual = fixed_residual(alg, t, &a, &alg.coords_unchecked(&x))?;
            vectors.push(BendingVector {
                i,
                j,
                generator,
                piece,
                x,
                y_label: None,
                y: None,
                bracket_norm: None,
                fixed_residual,
            });
            continue;
        }
        let xv = fixed_weight_zero_vector(alg, t, &iso.pieces[piece], &a)?;
        let x = alg.element(&xv);
        let mut best: Option<(&'static str, CMat, f64)> = None;
        for (label, y) in images {
            let br = linalg::bracket(&x, y)?;
            let norm = iso.model_coords(piece, &alg.coords_unchecked(&br)).norm();
            if best.as_ref().is_none_or(|b| norm > b.2) {
                best = Some((label, (*y).clone(), norm));
            }
        }
        let (label, y, norm) = best.expect("three candidates");
        if norm <= alg.tol().membership.sqrt() {
            return Err(Error::RankAmbiguity(format!(
                "[X_{i},{j}, Y] vanishes for every triple image"
            )));
        }
        let fixed_residual = fixed_residual(alg, t, &a, &xv)?;
        vectors.push(BendingVector {
            i,
            j,
            generator,
            piece,
            x,
            y_label: Some(label),
            y: Some(y),
            bracket_norm: Some(norm),
            fixed_residual,
        });
    }
    let t0 = alg.tol().t_grid[0];
    Ok(BendingPlan {
        triple: t.clone(),
        genus,
        seed,
        target,
        iso,
        lambda,
        vectors,
        t: t0,
    })
}

/// ρ_t(a_k) = ρ(a_k), ρ_t(b_k) = ρ(b_k)·exp(tX_k).
pub fn bend(seed: &SurfaceGroupRep, plan: &BendingPlan) -> Result<SurfaceGroupRep> {
    if seed.genus != plan.genus {
        return Err(Error::InvalidParameters(format!(
            "plan is for genus {}, seed has genus {}",
            plan.genus, seed.genus
        )));
    }
    if seed.genus < plan.lambda.len() {
        return Err(Error::GenusCondition {
            genus: seed.genus,
            required: plan.lambda.len(),
        });
    }
    let mut gens = Vec::with_capacity(2 * seed.genus);
    for k in 1..=seed.genus {
        gens.push(fuchsian::lift(&plan.triple, &as_real2(seed.a(k))?)?);
        let b = fuchsian::lift(&plan.triple, &as_real2(seed.b(k))?)?;
        gens.push(match plan.x_for_generator(k) {
            Some(x) if plan.t != 0.0 => b * linalg::expm(&(x * c64(plan.t, 0.0))),
            _ => b,
        });
    }
    SurfaceGroupRep::new(seed.genus, gens)
}

#[derive(Clone, Debug, Serialize)]
pub struct InequalityRecord {
    pub i: usize,
    pub j: usize,
    /// The piece V_{i,k} projected onto (k = j for the diagonal inequality).
    pub k: usize,
    pub lhs: f64,
    pub rhs: f64,
    /// (lhs − rhs)/|q([X,Y])| for the diagonal family, (rhs − lhs)/… otherwise.
    pub margin: f64,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct InequalityReport {
    pub t: f64,
    pub holds: bool,
    pub records: Vec<InequalityRecord>,
}

/// Z_{i,j}(t) for every i ≠ 0 entry, in plan order.
pub fn z_vectors(plan: &BendingPlan) -> Result<Vec<CMat>> {
    plan.vectors
        .iter()
        .filter_map(|v| v.y.as_ref().map(|y| z_vector(&v.x, y, plan.t)))
        .collect()
}

/// |q_{i,j} p_{i,j} Z_{i,j}(t)| > (1 − 1/m)|q_{i,j}[X,Y]| and
/// |q_{i,k} p_{i,k} Z_{i,j}(t)| < (1/m)|q_{i,j}[X,Y]| for k ≠ j.
pub fn bending_inequalities(alg: &LieAlgebraSpace, plan: &BendingPlan) -> Result<InequalityReport> {
    let mut records = Vec::new();
    for v in plan.vectors.iter().filter(|v| v.i != 0) {
        let y = v.y.as_ref().expect("i ≠ 0 entries carry Y");
        let zc = alg.coords_unchecked(&z_vector(&v.x, y, plan.t)?);
        let c = v.bracket_norm.expect("i ≠ 0 entries carry |[X,Y]|");
        let m = plan.multiplicity(v.i) as f64;
        for k in 1..=plan.multiplicity(v.i) {
            let piece = plan.iso.piece_index(v.i, k).expect("piece of Λ");
            let lhs = plan.iso.model_coords(piece, &zc).norm();
            let (rhs, margin) = if k == v.j {
                let rhs = (1.0 - 1.0 / m) * c;
                (rhs, (lhs - rhs) / c)
            } else {
                let rhs = c / m;
                (rhs, (rhs - lhs) / c)
            };
            records.push(InequalityRecord {
                i: v.i,
                j: v.j,
                k,
                lhs,
                rhs,
                margin,
                holds: margin > 0.0,
            });
        }
    }
    let holds = records.iter().all(|r| r.holds);
    Ok(InequalityReport {
        t: plan.t,
        holds,
        records,
    })
}

/// Tries the grid in order and keeps the first t passing the inequalities;
/// if none does, the last one is kept and the failing report returned.
pub fn select_t(
    alg: &LieAlgebraSpace,
    plan: BendingPlan,
    grid: &[f64],
) -> Result<(BendingPlan, InequalityReport)> {
    let mut plan = plan;
    let mut last = None;
    for &t in grid {
        plan.t = t;
        let report = bending_inequalities(alg, &plan)?;
        if report.holds {
            return Ok((plan, report));
        }
        last = Some(report);
    }
    let report = last.ok_or_else(|| Error::Config("empty t grid".into()))?;
    Ok((plan, report))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct DensityCertificate {
    pub verdict: Verdict,
    pub achieved_dim: usize,
    pub target_dim: usize,
    pub seed_count: usize,
    /// Whether the generated subalgebra lies in 𝔤′.
    pub contained_in_target: bool,
    pub inequalities_hold: bool,
}

/// Seeds known to lie in the Lie algebra of the Zariski closure of ρ_t(Γ_g):
/// the triple, Z_{i,j}(t) for i ≠ 0 and X_{0,j}. At t = 0 only the triple
/// survives.
pub fn certificate_seeds(plan: &BendingPlan) -> Result<Vec<CMat>> {
    let mut seeds: Vec<CMat> = plan.triple.images().iter().map(|x| (*x).clone()).collect();
    if plan.t == 0.0 {
        return Ok(seeds);
    }
    seeds.extend(z_vectors(plan)?);
    seeds.extend(
        plan.vectors
            .iter()
            .filter(|v| v.i == 0)
            .map(|v| v.x.clone()),
    );
    Ok(seeds)
}

/// PASS iff the bending inequalities hold and the seeds generate 𝔤′.
pub fn density_certificate(
    alg: &LieAlgebraSpace,
    bent: &SurfaceGroupRep,
    plan: &BendingPlan,
) -> Result<DensityCertificate> {
    if bent.genus != plan.genus {
        return Err(Error::InvalidParameters(
            "bent representation does not match the plan".into(),
        ));
    }
    let seeds = certificate_seeds(plan)?;
    let closure = alg.generated_subalgebra(&seeds)?;
    let contained = plan.target.contains(&closure, alg.tol().membership.sqrt());
    let inequalities_hold = plan.t != 0.0 && bending_inequalities(alg, plan)?.holds;
    let achieved_dim = closure.dim();
    let target_dim = plan.target.dim();
    let verdict = if !inequalities_hold {
        Verdict::Inconclusive
    } else if contained && achieved_dim == target_dim {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(DensityCertificate {
        verdict,
        achieved_dim,
        target_dim,
        seed_count: seeds.len(),
        contained_in_target: contained,
        inequalities_hold,
    })
}
