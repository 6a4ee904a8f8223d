//! Surface groups: an explicit Fuchsian representation of Γ_g in SL(2,ℝ)
//! and the lift of SL(2,ℝ) elements through an sl₂-triple.

use std::f64::consts::PI;

use nalgebra::Matrix2;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, c64, fro, CMat};
use crate::sl2::Sl2Triple;

/// Images of a₁, b₁, …, a_g, b_g.
#[derive(Clone, Debug, Serialize)]
pub struct SurfaceGroupRep {
    pub genus: usize,
    #[serde(skip)]
    pub generators: Vec<CMat>,
    /// ‖[A₁,B₁]⋯[A_g,B_g] − I‖_F
    pub relation_residual: f64,
    /// Largest Frobenius norm of a prefix of the relator word; rounding
    /// limits the residual to about ε times its square.
    pub word_norm: f64,
}

impl SurfaceGroupRep {
    pub fn new(genus: usize, generators: Vec<CMat>) -> Result<Self> {
        if genus < 2 {
            return Err(Error::InvalidParameters(format!(
                "genus must be at least 2, got {genus}"
            )));
        }
        if generators.len() != 2 * genus {
            return Err(Error::Shape(format!(
                "{} generators for genus {genus}",
                generators.len()
            )));
        }
        let (relation_residual, word_norm) = relator(&generators)?;
        Ok(Self {
            genus,
            generators,
            relation_residual,
            word_norm,
        })
    }

    /// 1-based, as in the presentation.
    pub fn a(&self, k: usize) -> &CMat {
        &self.generators[2 * (k - 1)]
    }

    pub fn b(&self, k: usize) -> &CMat {
        &self.generators[2 * (k - 1) + 1]
    }
}

/// ‖∏ [A_k, B_k] − I‖_F with [A,B] = ABA⁻¹B⁻¹.
pub fn relation_residual(generators: &[CMat]) -> Result<f64> {
    Ok(relator(generators)?.0)
}

fn relator(generators: &[CMat]) -> Result<(f64, f64)> {
    let n = generators.first().map_or(0, |g| g.nrows());
    let mut prod = linalg::identity(n);
    let mut word_norm = 1.0f64;
    for pair in generators.chunks(2) {
        let (a, b) = (&pair[0], &pair[1]);
        for m in [
            a.clone(),
            b.clone(),
            linalg::inverse(a)?,
            linalg::inverse(b)?,
        ] {
            prod *= m;
            word_norm = word_norm.max(fro(&prod));
        }
    }
    Ok((fro(&(prod - linalg::identity(n))), word_norm))
}

/// Rotation by θ about i in the upper half-plane.
fn rot(theta: f64) -> Matrix2<f64> {
    let (s, c) = (theta / 2.0).sin_cos();
    Matrix2::new(c, -s, s, c)
}

/// Side pairings of the regular hyperbolic 4g-gon with angles π/(2g).
///
/// Side j has its midpoint in direction φ_j = πj/(2g) at distance d from
/// the center, cosh d = cot(π/4g). The pairing M(k←j) = K(φ_k)·T·K(π−φ_j)
/// rotates side j to the negative axis, translates by 2d, and rotates into
/// place; a_m pairs 4m+2 to 4m and b_m pairs 4m+1 to 4m+3.
pub fn fuchsian_generators_real(g: usize) -> Result<Vec<Matrix2<f64>>> {
    if g < 2 {
        return Err(Error::InvalidParameters(format!(
            "genus must be at least 2, got {g}"
        )));
    }
    let sides = 4 * g;
    let d = (1.0 / (PI / sides as f64).tan()).acosh();
    let t = Matrix2::new(d.exp(), 0.0, 0.0, (-d).exp());
    let phi = |j: usize| PI * (j % sides) as f64 / (2 * g) as f64;
    let pairing = |k: usize, j: usize| rot(phi(k)) * t * rot(PI - phi(j));
    let mut out = Vec::with_capacity(2 * g);
    for m in 0..g {
        out.push(pairing(4 * m, 4 * m + 2));
        out.push(pairing(4 * m + 3, 4 * m + 1));
    }
    Ok(out)
}

pub fn fuchsian_generators(g: usize) -> Result<SurfaceGroupRep> {
    let gens = fuchsian_generators_real(g)?
        .iter()
        .map(|m| CMat::from_fn(2, 2, |i, j| c64(m[(i, j)], 0.0)))
        .collect();
    SurfaceGroupRep::new(g, gens)
}

/// The group homomorphism SL(2,ℝ) → G integrating the triple, evaluated
/// through g = k(θ)·exp(s h)·exp(u e) with k(θ) = exp(θ(f − e)).
///
/// Well defined because H has integral ambient weights, so
/// exp(2π(F − E)) = I.
pub fn lift(t: &Sl2Triple, g: &Matrix2<f64>) -> Result<CMat> {
    let det = g.determinant();
    if (det - 1.0).abs() > 1e-9 * g.norm_squared().max(1.0) {
        return Err(Error::NotInGroup(format!("det = {det} is not 1")));
    }
    let r = g[(0, 0)].hypot(g[(1, 0)]);
    let theta = g[(1, 0)].atan2(g[(0, 0)]);
    let s = r.ln();
    let u = (theta.cos() * g[(0, 1)] + theta.sin() * g[(1, 1)]) / r;
    let k = linalg::expm(&((&t.f - &t.e) * c64(theta, 0.0)));
    let a = linalg::expm(&(&t.h * c64(s, 0.0)));
    let n = linalg::expm(&(&t.e * c64(u, 0.0)));
    Ok(k * a * n)
}

/// ρ ∘ seed, generator by generator.
pub fn compose(t: &Sl2Triple, seed_real: &[Matrix2<f64>]) -> Result<SurfaceGroupRep> {
    let gens = seed_real
        .iter()
        .map(|m| lift(t, m))
        .collect::<Result<Vec<_>>>()?;
    SurfaceGroupRep::new(seed_real.len() / 2, gens)
}
