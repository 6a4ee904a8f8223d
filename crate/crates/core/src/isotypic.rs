//! Decomposition of an sl₂-stable subspace of 𝔤 into irreducible pieces,
//! the genus bound, and Property (*) bases of triple centralizers.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::algebra::{classify_element, Classification, ElementRef, LieAlgebraSpace, SubspaceOfG};
use crate::error::{Error, Result};
use crate::linalg::{self, fro, CMat};
use crate::sl2::{self, Sl2Triple};

/// One irreducible piece V ≅ V_{k+1}: columns are v, (ad F)v, …, (ad F)^k v
/// for a highest-weight vector v of weight k.
#[derive(Clone, Debug)]
pub struct IsotypicPiece {
    pub highest_weight: usize,
    /// 1-based index among pieces of the same highest weight.
    pub j: usize,
    pub basis: DMatrix<f64>,
}

impl IsotypicPiece {
    pub fn dim(&self) -> usize {
        self.highest_weight + 1
    }

    /// `(i, j)` with dim = 2i + 1, for odd-dimensional pieces.
    pub fn lambda_index(&self) -> Option<(usize, usize)> {
        self.highest_weight
            .is_multiple_of(2)
            .then_some((self.highest_weight / 2, self.j))
    }

    /// The weight-zero column (odd-dimensional pieces only).
    pub fn weight_zero_vector(&self) -> Option<DVector<f64>> {
        self.highest_weight
            .is_multiple_of(2)
            .then(|| self.basis.column(self.highest_weight / 2).into_owned())
    }
}

#[derive(Clone, Debug)]
pub struct IsotypicData {
    /// Weight multiplicities m_k of ad H on the target.
    pub weights: BTreeMap<i64, usize>,
    /// `[T : V_k]` keyed by the dimension k ≥ 1 (zero entries omitted).
    pub multiplicities: BTreeMap<usize, usize>,
    /// Pieces by descending highest weight, then j.
    pub pieces: Vec<IsotypicPiece>,
    target_dim: usize,
    /// Maps coordinates in 𝔤 to stacked piece coordinates.
    solve: DMatrix<f64>,
    offsets: Vec<usize>,
}

impl IsotypicData {
    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn multiplicity(&self, dim: usize) -> usize {
        self.multiplicities.get(&dim).copied().unwrap_or(0)
    }

    /// Λ = {(i, j) : 1 ≤ j ≤ [T : V_{2i+1}]} in piece order.
    pub fn lambda(&self) -> Vec<(usize, usize)> {
        self.pieces
            .iter()
            .filter_map(|p| p.lambda_index())
            .collect()
    }

    pub fn piece_index(&self, i: usize, j: usize) -> Option<usize> {
        self.pieces
            .iter()
            .position(|p| p.lambda_index() == Some((i, j)))
    }

    /// q ∘ p for the given piece: coordinates of the component of `x` in the
    /// model basis f^l·u₀ of V_{k+1}.
    pub fn model_coords(&self, piece: usize, x: &DVector<f64>) -> DVector<f64> {
        let c = &self.solve * x;
        c.rows(self.offsets[piece], self.pieces[piece].dim())
            .into_owned()
    }

    /// The projection p onto one piece along the others, as a matrix on
    /// coordinates of 𝔤 (meaningful on the target).
    pub fn projection(&self, piece: usize) -> DMatrix<f64> {
        let p = &self.pieces[piece];
        &p.basis * self.solve.rows(self.offsets[piece], p.dim())
    }

    /// Σ_i [T : V_{2i+1}], the number of odd-dimensional pieces.
    pub fn genus_bound(&self) -> usize {
        self.pieces
            .iter()
            .filter(|p| p.highest_weight % 2 == 0)
            .count()
    }

    /// Σ_k k·[T : V_k].
    pub fn total_dim(&self) -> usize {
        self.multiplicities.iter().map(|(k, m)| k * m).sum()
    }
}

/// Decomposes 𝔤 into irreducible pieces.
pub fn module_multiplicities(alg: &LieAlgebraSpace, t: &Sl2Triple) -> Result<IsotypicData> {
    decompose(alg, t, None)
}

/// Decomposes an ad-stable subspace `target` (all of 𝔤 when `None`).
///
/// Highest-weight vectors are the reduced-echelon basis of
/// ker ad E ∩ 𝔤(k) ∩ T, normalized to unit length, so the result depends
/// only on the target and the triple.
pub fn decompose(
    alg: &LieAlgebraSpace,
    t: &Sl2Triple,
    target: Option<&SubspaceOfG>,
) -> Result<IsotypicData> {
    let d = alg.dim();
    let rel = alg.tol().rank;
    let ws = sl2::weight_spaces(alg, t)?;
    let ad_e = alg.adjoint_operator(&t.e)?;
    let ad_f = alg.adjoint_operator(&t.f)?;
    let e_scale = ad_e.norm().max(f64::MIN_POSITIVE);

    let mut spaces: BTreeMap<i64, DMatrix<f64>> = BTreeMap::new();
    for (&k, b) in &ws.spaces {
        let b = match target {
            None => b.clone(),
            Some(tg) => SubspaceOfG::from_orthonormal(b.clone())
                .intersection(tg, rel)
                .basis()
                .clone(),
        };
        if b.ncols() > 0 {
            spaces.insert(k, b);
        }
    }
    let weights: BTreeMap<i64, usize> = spaces.iter().map(|(&k, b)| (k, b.ncols())).collect();
    let target_dim: usize = weights.values().sum();
    if let Some(tg) = target {
        if tg.dim() != target_dim {
            return Err(Error::RankAmbiguity(format!(
                "target of dimension {} is not a sum of ad H weight spaces ({target_dim})",
                tg.dim()
            )));
        }
    }
    let m = |k: i64| weights.get(&k).copied().unwrap_or(0);

    let mut pieces = Vec::new();
    let mut multiplicities = BTreeMap::new();
    for (&k, b) in spaces.iter().rev() {
        if k < 0 {
            break;
        }
        let kernel = linalg::null_space_scaled(&(&ad_e * b), rel, e_scale);
        let hw = b * kernel;
        let expected = m(k) - m(k + 2);
        if hw.ncols() != expected {
            return Err(Error::RankAmbiguity(format!(
                "weight {k}: {} highest-weight vectors, expected m_k − m_(k+2) = {expected}",
                hw.ncols()
            )));
        }
        if expected == 0 {
            continue;
        }
        multiplicities.insert(k as usize + 1, expected);
        let canon = linalg::canonical_basis(&hw, rel);
        for (j, col) in canon.column_iter().enumerate() {
            let mut v = col.into_owned();
            v /= v.norm();
            let mut basis = DMatrix::zeros(d, k as usize + 1);
            basis.set_column(0, &v);
            for l in 1..=k as usize {
                v = &ad_f * v;
                basis.set_column(l, &v);
            }
            pieces.push(IsotypicPiece {
                highest_weight: k as usize,
                j: j + 1,
                basis,
            });
        }
    }

    let total: usize = pieces.iter().map(|p| p.dim()).sum();
    if total != target_dim {
        return Err(Error::RankAmbiguity(format!(
            "pieces span {total} dimensions, expected {target_dim}"
        )));
    }
    let mut offsets = Vec::with_capacity(pieces.len());
    let mut stacked = DMatrix::zeros(d, total);
    let mut at = 0;
    for p in &pieces {
        offsets.push(at);
        stacked.view_mut((0, at), (d, p.dim())).copy_from(&p.basis);
        at += p.dim();
    }
    // (ad F)^l v grows factorially in l; equilibrate columns before solving
    let norms: Vec<f64> = stacked.column_iter().map(|c| c.norm()).collect();
    for (mut c, n) in stacked.column_iter_mut().zip(&norms) {
        c /= *n;
    }
    if total > 0 && linalg::numerical_rank(&stacked, rel) != total {
        return Err(Error::RankAmbiguity(
            "irreducible pieces are not independent".into(),
        ));
    }
    let mut solve = if total == 0 {
        DMatrix::zeros(0, d)
    } else {
        linalg::pseudo_inverse(&stacked, rel)
    };
    for (mut r, n) in solve.row_iter_mut().zip(&norms) {
        r /= *n;
    }
    Ok(IsotypicData {
        weights,
        multiplicities,
        pieces,
        target_dim,
        solve,
        offsets,
    })
}

/// Σ_i [T : V_{2i+1}] for T = 𝔤 (`None`) or the given ad-stable target.
pub fn genus_bound(
    alg: &LieAlgebraSpace,
    t: &Sl2Triple,
    target: Option<&SubspaceOfG>,
) -> Result<usize> {
    Ok(decompose(alg, t, target)?.genus_bound())
}

#[derive(Clone, Debug, Serialize)]
pub struct StarElement {
    #[serde(skip)]
    pub element: CMat,
    pub class: Classification,
    /// ‖exp X − I‖ for elliptic members.
    pub period_residual: Option<f64>,
}

/// Smallest L ≤ `max_den` with every L·r within `tol` of an integer.
fn common_denominator(ratios: &[f64], max_den: u32, tol: f64) -> Option<u32> {
    (1..=max_den).find(|&l| {
        ratios
            .iter()
            .all(|r| (r * l as f64 - (r * l as f64).round()).abs() <= tol)
    })
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// A basis of `z` in which every element is elliptic with exp X = 1,
/// hyperbolic, or nilpotent.
///
/// `z` must be θ-stable; it is split into its 𝔨 and 𝔭 parts. 𝔭-elements are
/// hyperbolic. 𝔨-elements are rescaled to period one, which requires their
/// eigenvalues to be commensurable (true for the block-diagonal centralizers
/// of the implemented families); otherwise `Unsupported` is returned.
pub fn property_star_basis(alg: &LieAlgebraSpace, z: &SubspaceOfG) -> Result<Vec<StarElement>> {
    let rel = alg.tol().rank;
    let (k, p) = alg.cartan_decomposition();
    let zk = z.intersection(&k, rel);
    let zp = z.intersection(&p, rel);
    if zk.dim() + zp.dim() != z.dim() {
        return Err(Error::Unsupported(
            "centralizer is not stable under the Cartan involution".into(),
        ));
    }
    let guard = alg.tol().integer_guard.sqrt();
    let mut out = Vec::with_capacity(z.dim());
    for col in zk.canonical_basis(rel).column_iter() {
        let x = alg.element(&col.into_owned());
        let lambdas: Vec<f64> = linalg::spectrum(&x).iter().map(|z| z.im).collect();
        let top = lambdas.iter().fold(0.0f64, |m, l| m.max(l.abs()));
        let ratios: Vec<f64> = lambdas.iter().map(|l| l / top).collect();
        let l = common_denominator(&ratios, 720, guard).ok_or_else(|| {
            Error::Unsupported(
                "compact centralizer element with incommensurable eigenvalues".into(),
            )
        })?;
        let g = ratios
            .iter()
            .fold(0i64, |g, r| gcd(g, (r * l as f64).round() as i64))
            .max(1);
        let s = 2.0 * PI * l as f64 / (top * g as f64);
        let x = x * linalg::c64(s, 0.0);
        let residual = fro(&(linalg::expm(&x) - linalg::identity(alg.size())));
        if residual > guard {
            return Err(Error::Unsupported(format!(
                "rescaled elliptic element has ‖exp X − I‖ = {residual:.3e}"
            )));
        }
        let class = classify_element(ElementRef::Algebra(&x));
        out.push(StarElement {
            element: x,
            class,
            period_residual: Some(residual),
        });
    }
    for col in zp.canonical_basis(rel).column_iter() {
        let mut v = col.into_owned();
        v /= v.norm();
        let x = alg.element(&v);
        let class = classify_element(ElementRef::Algebra(&x));
        out.push(StarElement {
            element: x,
            class,
            period_residual: None,
        });
    }
    if let Some(bad) = out.iter().find(|e| e.class == Classification::Mixed) {
        return Err(Error::Unsupported(format!(
            "basis element classified as {:?}",
            bad.class
        )));
    }
    Ok(out)
}

/// Centralizer 𝔷 of the triple, intersected with `target` when given.
pub fn triple_centralizer(
    alg: &LieAlgebraSpace,
    t: &Sl2Triple,
    target: Option<&SubspaceOfG>,
) -> Result<SubspaceOfG> {
    let z = alg.centralizer_of(&[t.h.clone(), t.e.clone(), t.f.clone()])?;
    Ok(match target {
        Some(tg) => z.intersection(tg, alg.tol().rank),
        None => z,
    })
}
