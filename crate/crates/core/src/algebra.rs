//! Matrix realizations of sl(n,ℝ) and su(p,q) as real vector spaces.
//!
//! Every algebra carries an explicit, documented basis so coordinates are
//! reproducible:
//!
//! * sl(n,ℝ): the off-diagonal units `E_ij` in row-major order, followed by
//!   `E_kk − E_{k+1,k+1}` for k = 1..n−1.
//! * su(p,q) = {X : X*B + BX = 0, tr X = 0} with `B = B_{p,q}`. Since `B² = 1`
//!   and `B` is real symmetric, `X ↦ BX` identifies the algebra with the
//!   trace-constrained skew-Hermitian matrices. The basis is `B·S` for
//!   `S = E_jk − E_kj`, `S = √−1(E_jk + E_kj)` (j < k, row-major) and
//!   `S = √−1 E_kk`, with the elements of nonzero trace replaced by
//!   consecutive trace-cancelling combinations.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, bracket, c64, fro, CMat, C64, I};
use crate::tolerance::Tolerances;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    /// sl(n,ℝ)
    Sl { n: usize },
    /// su(p,q) in the B_{p,q} realization, p ≥ q ≥ 1
    Su { p: usize, q: usize },
}

impl Family {
    pub fn validate(self) -> Result<Self> {
        match self {
            Family::Sl { n } if n < 2 => Err(Error::InvalidParameters(format!(
                "sl(n,R) needs n >= 2, got n = {n}"
            ))),
            Family::Su { p, q } if q < 1 || p < q => Err(Error::InvalidParameters(format!(
                "su(p,q) needs p >= q >= 1, got p = {p}, q = {q}"
            ))),
            f => Ok(f),
        }
    }

    pub fn size(self) -> usize {
        match self {
            Family::Sl { n } => n,
            Family::Su { p, q } => p + q,
        }
    }

    pub fn is_real(self) -> bool {
        matches!(self, Family::Sl { .. })
    }

    pub fn label(self) -> String {
        match self {
            Family::Sl { n } => format!("sl({n},R)"),
            Family::Su { p, q } => format!("su({p},{q})"),
        }
    }
}

/// The hermitian form `B_{p,q}`: anti-diagonal `I′_q` blocks in the corners
/// and `I_{p−q}` in the middle.
pub fn hermitian_form(p: usize, q: usize) -> DMatrix<f64> {
    let n = p + q;
    DMatrix::from_fn(n, n, |i, j| {
        let corner = (i < q && j >= p) || (i >= p && j < q);
        let middle = i >= q && i < p && i == j;
        if (corner && i + j == n - 1) || middle {
            1.0
        } else {
            0.0
        }
    })
}

#[derive(Clone, Debug)]
pub struct LieAlgebraSpace {
    family: Family,
    form: Option<DMatrix<f64>>,
    basis: Vec<CMat>,
    /// Pseudo-inverse of the flattened basis, for coordinates.
    pinv: DMatrix<f64>,
    flat: DMatrix<f64>,
    tol: Tolerances,
}

pub fn make_algebra(family: Family) -> Result<LieAlgebraSpace> {
    LieAlgebraSpace::new(family)
}

impl LieAlgebraSpace {
    pub fn new(family: Family) -> Result<Self> {
        let family = family.validate()?;
        let (basis, form) = match family {
            Family::Sl { n } => (sl_basis(n), None),
            Family::Su { p, q } => {
                let b = hermitian_form(p, q);
                (su_basis(&b), Some(b))
            }
        };
        let n = family.size();
        let d = basis.len();
        let mut flat = DMatrix::zeros(2 * n * n, d);
        for (k, b) in basis.iter().enumerate() {
            flat.set_column(k, &linalg::flatten(b));
        }
        let pinv = linalg::pseudo_inverse(&flat, 1e-12);
        Ok(Self {
            family,
            form,
            basis,
            pinv,
            flat,
            tol: Tolerances::default(),
        })
    }

    pub fn sl(n: usize) -> Result<Self> {
        Self::new(Family::Sl { n })
    }

    pub fn su(p: usize, q: usize) -> Result<Self> {
        Self::new(Family::Su { p, q })
    }

    pub fn with_tolerances(mut self, tol: Tolerances) -> Self {
        self.tol = tol;
        self
    }

    pub fn tol(&self) -> &Tolerances {
        &self.tol
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn label(&self) -> String {
        self.family.label()
    }

    /// Ambient matrix size.
    pub fn size(&self) -> usize {
        self.family.size()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[CMat] {
        &self.basis
    }

    /// `B_{p,q}` for the unitary family.
    pub fn form(&self) -> Option<&DMatrix<f64>> {
        self.form.as_ref()
    }

    fn check_shape(&self, x: &CMat) -> Result<()> {
        let n = self.size();
        if x.shape() != (n, n) {
            return Err(Error::Shape(format!(
                "expected {n}x{n}, got {:?}",
                x.shape()
            )));
        }
        Ok(())
    }

    /// Defining-condition residual relative to `max(‖X‖, 1)`.
    pub fn membership_residual(&self, x: &CMat) -> Result<f64> {
        self.check_shape(x)?;
        let scale = fro(x).max(1.0);
        let trace = x.trace().norm();
        let cond = match &self.form {
            None => linalg::max_imag(x) * self.size() as f64,
            Some(b) => {
                let b = linalg::from_real(b);
                fro(&(x.adjoint() * &b + &b * x))
            }
        };
        Ok((trace + cond) / scale)
    }

    pub fn contains(&self, x: &CMat) -> bool {
        self.membership_residual(x)
            .is_ok_and(|r| r <= self.tol.membership)
    }

    pub fn ensure_member(&self, x: &CMat) -> Result<()> {
        let residual = self.membership_residual(x)?;
        if residual > self.tol.membership {
            return Err(Error::NotInAlgebra {
                algebra: self.label(),
                residual,
            });
        }
        Ok(())
    }

    /// Least-squares coordinates in the algebra basis, without a membership check.
    pub fn coords_unchecked(&self, x: &CMat) -> DVector<f64> {
        &self.pinv * linalg::flatten(x)
    }

    pub fn coords(&self, x: &CMat) -> Result<DVector<f64>> {
        self.ensure_member(x)?;
        Ok(self.coords_unchecked(x))
    }

    pub fn element(&self, coords: &DVector<f64>) -> CMat {
        linalg::unflatten(&(&self.flat * coords), self.size())
    }

    pub fn bracket(&self, x: &CMat, y: &CMat) -> Result<CMat> {
        bracket(x, y)
    }

    /// θ(X) = −X* (for sl(n,ℝ) this is −Xᵀ).
    pub fn cartan_involution(&self, x: &CMat) -> Result<CMat> {
        self.ensure_member(x)?;
        Ok(-x.adjoint())
    }

    /// Matrix of ad X in the algebra basis.
    pub fn adjoint_operator(&self, x: &CMat) -> Result<DMatrix<f64>> {
        self.ensure_member(x)?;
        Ok(self.ad_unchecked(x))
    }

    pub(crate) fn ad_unchecked(&self, x: &CMat) -> DMatrix<f64> {
        let d = self.dim();
        let mut ad = DMatrix::zeros(d, d);
        for (k, b) in self.basis.iter().enumerate() {
            ad.set_column(k, &self.coords_unchecked(&(x * b - b * x)));
        }
        ad
    }

    /// Matrix of Ad g (X ↦ gXg⁻¹) in the algebra basis.
    pub fn group_adjoint(&self, g: &CMat) -> Result<DMatrix<f64>> {
        self.check_shape(g)?;
        let g_inv = linalg::inverse(g)?;
        let d = self.dim();
        let mut m = DMatrix::zeros(d, d);
        for (k, b) in self.basis.iter().enumerate() {
            m.set_column(k, &self.coords_unchecked(&(g * b * &g_inv)));
        }
        Ok(m)
    }

    pub fn centralizer(&self, x: &CMat) -> Result<SubspaceOfG> {
        let ad = self.adjoint_operator(x)?;
        Ok(SubspaceOfG::from_orthonormal(linalg::null_space(
            &ad,
            self.tol.rank,
        )))
    }

    /// Common centralizer of several elements.
    pub fn centralizer_of(&self, xs: &[CMat]) -> Result<SubspaceOfG> {
        let d = self.dim();
        let mut stacked = DMatrix::zeros(d * xs.len().max(1), d);
        for (i, x) in xs.iter().enumerate() {
            stacked
                .view_mut((i * d, 0), (d, d))
                .copy_from(&self.adjoint_operator(x)?);
        }
        Ok(SubspaceOfG::from_orthonormal(linalg::null_space(
            &stacked,
            self.tol.rank,
        )))
    }

    /// The smallest bracket-closed subspace containing `seeds`.
    pub fn generated_subalgebra(&self, seeds: &[CMat]) -> Result<SubspaceOfG> {
        let d = self.dim();
        let mut start = Vec::new();
        for s in seeds {
            let c = self.coords(s)?;
            let norm = c.norm();
            if norm > 0.0 {
                start.push(c / norm);
            }
        }
        if start.is_empty() {
            return Ok(SubspaceOfG::zero(d));
        }
        let rel = self.tol.rank;
        let mut q = linalg::column_space(&DMatrix::from_columns(&start), rel);
        let mut elems: Vec<CMat> = (0..q.ncols())
            .map(|k| self.element(&q.column(k).into_owned()))
            .collect();
        let mut fresh = 0;
        loop {
            let k = q.ncols();
            if k == d {
                break;
            }
            let mut cands = Vec::new();
            for i in fresh..k {
                for j in 0..i {
                    cands.push(
                        self.coords_unchecked(&(&elems[i] * &elems[j] - &elems[j] * &elems[i])),
                    );
                }
            }
            if cands.is_empty() {
                break;
            }
            let scale = cands.iter().fold(0.0f64, |m, c| m.max(c.norm()));
            if scale == 0.0 {
                break;
            }
            let mut stack = DMatrix::zeros(d, k + cands.len());
            stack.view_mut((0, 0), (d, k)).copy_from(&q);
            for (i, c) in cands.iter().enumerate() {
                stack.set_column(k + i, &(c / scale));
            }
            let span = linalg::column_space(&stack, rel);
            if span.ncols() <= k {
                break;
            }
            let residual = &span - &q * (q.transpose() * &span);
            let new_dirs = linalg::column_space(&residual, rel);
            let extra = span.ncols() - k;
            let new_dirs = new_dirs
                .columns(0, extra.min(new_dirs.ncols()))
                .into_owned();
            fresh = k;
            let mut grown = DMatrix::zeros(d, k + new_dirs.ncols());
            grown.view_mut((0, 0), (d, k)).copy_from(&q);
            grown
                .view_mut((0, k), (d, new_dirs.ncols()))
                .copy_from(&new_dirs);
            for c in 0..new_dirs.ncols() {
                elems.push(self.element(&new_dirs.column(c).into_owned()));
            }
            q = grown;
        }
        Ok(SubspaceOfG::from_orthonormal(q))
    }

    pub fn subspace_elements(&self, s: &SubspaceOfG) -> Vec<CMat> {
        (0..s.dim())
            .map(|k| self.element(&s.basis().column(k).into_owned()))
            .collect()
    }

    /// The ±1 eigenspaces 𝔨 and 𝔭 of θ.
    pub fn cartan_decomposition(&self) -> (SubspaceOfG, SubspaceOfG) {
        let d = self.dim();
        let mut theta = DMatrix::zeros(d, d);
        for (k, b) in self.basis.iter().enumerate() {
            theta.set_column(k, &self.coords_unchecked(&(-b.adjoint())));
        }
        let id = DMatrix::<f64>::identity(d, d);
        let rel = self.tol.rank;
        (
            SubspaceOfG::from_orthonormal(linalg::null_space(&(&theta - &id), rel)),
            SubspaceOfG::from_orthonormal(linalg::null_space(&(&theta + &id), rel)),
        )
    }

    pub fn classify_element(&self, x: ElementRef<'_>) -> Classification {
        classify_element(x)
    }
}

fn unit(n: usize, i: usize, j: usize, z: C64) -> CMat {
    let mut m = CMat::zeros(n, n);
    m[(i, j)] = z;
    m
}

fn sl_basis(n: usize) -> Vec<CMat> {
    let one = c64(1.0, 0.0);
    let mut basis = Vec::with_capacity(n * n - 1);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                basis.push(unit(n, i, j, one));
            }
        }
    }
    for k in 0..n - 1 {
        basis.push(unit(n, k, k, one) - unit(n, k + 1, k + 1, one));
    }
    basis
}

fn su_basis(form: &DMatrix<f64>) -> Vec<CMat> {
    let n = form.nrows();
    let b = linalg::from_real(form);
    let one = c64(1.0, 0.0);
    let mut traceless = Vec::new();
    let mut traced: Vec<(CMat, f64)> = Vec::new();
    let mut push = |s: CMat| {
        let x = &b * s;
        let t = x.trace();
        if t.norm() < 1e-12 {
            traceless.push(x);
        } else {
            // traces of these elements are purely imaginary
            traced.push((x, t.im));
        }
    };
    for j in 0..n {
        for k in j + 1..n {
            push(unit(n, j, k, one) - unit(n, k, j, one));
            push(unit(n, j, k, I) + unit(n, k, j, I));
        }
    }
    for k in 0..n {
        push(unit(n, k, k, I));
    }
    for w in traced.windows(2) {
        let ((x0, t0), (x1, t1)) = (&w[0], &w[1]);
        traceless.push(x0 * c64(*t1, 0.0) - x1 * c64(*t0, 0.0));
    }
    traceless
}

/// An ℝ-subspace of 𝔤, stored as orthonormal coordinate columns.
#[derive(Clone, Debug, PartialEq)]
pub struct SubspaceOfG {
    basis: DMatrix<f64>,
}

impl SubspaceOfG {
    pub fn from_orthonormal(basis: DMatrix<f64>) -> Self {
        Self { basis }
    }

    /// Span of arbitrary coordinate columns, with the rank rule `rel·σ_max`.
    pub fn from_spanning(vectors: &DMatrix<f64>, rel: f64) -> Self {
        Self {
            basis: linalg::column_space(vectors, rel),
        }
    }

    pub fn from_vectors(parent_dim: usize, vectors: &[DVector<f64>], rel: f64) -> Self {
        if vectors.is_empty() {
            return Self::zero(parent_dim);
        }
        Self::from_spanning(&DMatrix::from_columns(vectors), rel)
    }

    pub fn zero(parent_dim: usize) -> Self {
        Self {
            basis: DMatrix::zeros(parent_dim, 0),
        }
    }

    pub fn whole(parent_dim: usize) -> Self {
        Self {
            basis: DMatrix::identity(parent_dim, parent_dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn parent_dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn basis(&self) -> &DMatrix<f64> {
        &self.basis
    }

    pub fn project(&self, v: &DVector<f64>) -> DVector<f64> {
        &self.basis * (self.basis.transpose() * v)
    }

    /// ‖v − P v‖ / ‖v‖ (zero for the zero vector).
    pub fn relative_distance(&self, v: &DVector<f64>) -> f64 {
        let n = v.norm();
        if n == 0.0 {
            0.0
        } else {
            (v - self.project(v)).norm() / n
        }
    }

    pub fn contains_vector(&self, v: &DVector<f64>, tol: f64) -> bool {
        self.relative_distance(v) <= tol
    }

    pub fn contains(&self, other: &SubspaceOfG, tol: f64) -> bool {
        (0..other.dim()).all(|k| self.contains_vector(&other.basis.column(k).into_owned(), tol))
    }

    pub fn same_as(&self, other: &SubspaceOfG, tol: f64) -> bool {
        self.dim() == other.dim() && self.contains(other, tol)
    }

    pub fn sum(&self, other: &SubspaceOfG, rel: f64) -> SubspaceOfG {
        let d = self.parent_dim();
        let mut m = DMatrix::zeros(d, self.dim() + other.dim());
        m.view_mut((0, 0), (d, self.dim())).copy_from(&self.basis);
        m.view_mut((0, self.dim()), (d, other.dim()))
            .copy_from(&other.basis);
        Self::from_spanning(&m, rel)
    }

    pub fn intersection(&self, other: &SubspaceOfG, rel: f64) -> SubspaceOfG {
        // x = A a = B b  ⟺  [A, −B] (a, b) = 0
        let d = self.parent_dim();
        let (ka, kb) = (self.dim(), other.dim());
        if ka == 0 || kb == 0 {
            return Self::zero(d);
        }
        let mut m = DMatrix::zeros(d, ka + kb);
        m.view_mut((0, 0), (d, ka)).copy_from(&self.basis);
        m.view_mut((0, ka), (d, kb)).copy_from(&(-&other.basis));
        let ns = linalg::null_space(&m, rel);
        let vecs = &self.basis * ns.rows(0, ka);
        Self::from_spanning(&vecs, rel)
    }

    /// Reduced-echelon basis; independent of how the subspace was computed.
    pub fn canonical_basis(&self, rel: f64) -> DMatrix<f64> {
        linalg::canonical_basis(&self.basis, rel)
    }
}

#[derive(Clone, Copy, Debug)]
pub enum ElementRef<'a> {
    Algebra(&'a CMat),
    Group(&'a CMat),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Elliptic,
    Hyperbolic,
    /// Nilpotent (algebra) or unipotent (group).
    Nilpotent,
    Mixed,
}

fn is_nilpotent(x: &CMat, scale: f64) -> bool {
    let n = x.nrows();
    let mut p = x.clone();
    for _ in 1..n {
        p = &p * x;
    }
    fro(&p) <= 1e-9 * scale.powi(n as i32).max(f64::MIN_POSITIVE)
}

/// Semisimplicity through the minimal polynomial: the product of `X − μ`
/// over eigenvalue clusters must vanish.
fn is_semisimple(x: &CMat, spectrum: &[C64], scale: f64) -> bool {
    let mut centers: Vec<C64> = Vec::new();
    for z in spectrum {
        if !centers.iter().any(|c| (c - z).norm() <= 1e-6 * scale) {
            centers.push(*z);
        }
    }
    let n = x.nrows();
    let mut p = linalg::identity(n);
    let mut bound = 1.0;
    for c in &centers {
        let f = x - linalg::identity(n) * *c;
        bound *= fro(&f).max(f64::MIN_POSITIVE);
        p = &p * f;
    }
    fro(&p) <= 1e-6 * bound
}

pub fn classify_element(x: ElementRef<'_>) -> Classification {
    match x {
        ElementRef::Algebra(x) => {
            let scale = fro(x);
            if scale == 0.0 || is_nilpotent(x, scale) {
                return Classification::Nilpotent;
            }
            let spec = linalg::spectrum(x);
            if !is_semisimple(x, &spec, scale) {
                return Classification::Mixed;
            }
            let tol = 1e-8 * scale;
            if spec.iter().all(|z| z.re.abs() <= tol) {
                Classification::Elliptic
            } else if spec.iter().all(|z| z.im.abs() <= tol) {
                Classification::Hyperbolic
            } else {
                Classification::Mixed
            }
        }
        ElementRef::Group(g) => {
            let n = g.nrows();
            let u = g - linalg::identity(n);
            let scale = fro(g).max(1.0);
            if fro(&u) <= 1e-12 * scale || is_nilpotent(&u, scale) {
                return Classification::Nilpotent;
            }
            let spec = linalg::spectrum(g);
            if !is_semisimple(g, &spec, scale) {
                return Classification::Mixed;
            }
            let tol = 1e-8 * scale;
            if spec.iter().all(|z| (z.norm() - 1.0).abs() <= tol) {
                Classification::Elliptic
            } else if spec.iter().all(|z| z.im.abs() <= tol && z.re > 0.0) {
                Classification::Hyperbolic
            } else {
                Classification::Mixed
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real(rows: usize, data: &[f64]) -> CMat {
        linalg::from_real(&DMatrix::from_row_slice(rows, rows, data))
    }

    fn standard_triple() -> (CMat, CMat, CMat) {
        (
            real(2, &[1.0, 0.0, 0.0, -1.0]),
            real(2, &[0.0, 1.0, 0.0, 0.0]),
            real(2, &[0.0, 0.0, 1.0, 0.0]),
        )
    }

    #[test]
    fn dimensions() {
        assert_eq!(LieAlgebraSpace::su(2, 1).unwrap().dim(), 8);
        assert_eq!(LieAlgebraSpace::sl(5).unwrap().dim(), 24);
        assert_eq!(LieAlgebraSpace::su(3, 3).unwrap().dim(), 35);
    }

    #[test]
    fn hermitian_form_su21() {
        let b = hermitian_form(2, 1);
        assert_eq!(
            b,
            DMatrix::from_row_slice(3, 3, &[0.0, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 0.0])
        );
        let b = hermitian_form(3, 2);
        assert_eq!(b[(0, 4)], 1.0);
        assert_eq!(b[(1, 3)], 1.0);
        assert_eq!(b[(2, 2)], 1.0);
        assert_eq!(b.sum(), 5.0);
    }

    #[test]
    fn invalid_parameters() {
        assert!(matches!(
            LieAlgebraSpace::sl(1),
            Err(Error::InvalidParameters(_))
        ));
        assert!(matches!(
            LieAlgebraSpace::su(1, 2),
            Err(Error::InvalidParameters(_))
        ));
        assert!(matches!(
            LieAlgebraSpace::su(2, 0),
            Err(Error::InvalidParameters(_))
        ));
    }

    #[test]
    fn basis_satisfies_defining_conditions() {
        for alg in [
            LieAlgebraSpace::sl(4).unwrap(),
            LieAlgebraSpace::su(3, 2).unwrap(),
        ] {
            for b in alg.basis() {
                assert!(alg.membership_residual(b).unwrap() < 1e-14);
            }
            let n = alg.size();
            assert_eq!(linalg::numerical_rank(&alg.flat, 1e-12), n * n - 1);
        }
    }

    #[test]
    fn bracket_examples() {
        let (h, e, f) = standard_triple();
        assert_eq!(bracket(&h, &e).unwrap(), &e * c64(2.0, 0.0));
        assert_eq!(bracket(&e, &f).unwrap(), h);
        assert_eq!(bracket(&h, &h).unwrap(), CMat::zeros(2, 2));
    }

    #[test]
    fn cartan_involution_eigenspaces() {
        let alg = LieAlgebraSpace::sl(3).unwrap();
        let skew = real(3, &[0.0, 1.0, 2.0, -1.0, 0.0, 3.0, -2.0, -3.0, 0.0]);
        assert_eq!(alg.cartan_involution(&skew).unwrap(), skew);
        let sym = real(3, &[1.0, 1.0, 0.0, 1.0, -2.0, 0.0, 0.0, 0.0, 1.0]);
        assert_eq!(alg.cartan_involution(&sym).unwrap(), -sym);
        let outside = real(3, &[1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        assert!(matches!(
            alg.cartan_involution(&outside),
            Err(Error::NotInAlgebra { .. })
        ));
    }

    #[test]
    fn cartan_decomposition_dimensions() {
        for (p, q) in [(2, 1), (3, 2), (2, 2), (4, 1)] {
            let alg = LieAlgebraSpace::su(p, q).unwrap();
            let (k, pp) = alg.cartan_decomposition();
            assert_eq!(k.dim(), p * p + q * q - 1, "su({p},{q})");
            assert_eq!(k.dim() + pp.dim(), alg.dim());
        }
        let (k, p) = LieAlgebraSpace::sl(4).unwrap().cartan_decomposition();
        assert_eq!((k.dim(), p.dim()), (6, 9));
    }

    #[test]
    fn adjoint_of_sl2() {
        let alg = LieAlgebraSpace::sl(2).unwrap();
        let (h, _, _) = standard_triple();
        let ad = alg.adjoint_operator(&h).unwrap();
        let mut eig: Vec<f64> = linalg::spectrum_real(&ad).iter().map(|z| z.re).collect();
        eig.sort_by(|a, b| b.total_cmp(a));
        assert!(
            (eig[0] - 2.0).abs() < 1e-12 && eig[1].abs() < 1e-12 && (eig[2] + 2.0).abs() < 1e-12
        );
        assert_eq!(
            alg.adjoint_operator(&CMat::zeros(2, 2)).unwrap(),
            DMatrix::zeros(3, 3)
        );
    }

    #[test]
    fn adjoint_of_principal_in_sl5_has_even_weights() {
        let alg = LieAlgebraSpace::sl(5).unwrap();
        let h = CMat::from_diagonal(&DVector::from_vec(
            [4.0, 2.0, 0.0, -2.0, -4.0].map(|x| c64(x, 0.0)).to_vec(),
        ));
        let ad = alg.adjoint_operator(&h).unwrap();
        for z in linalg::spectrum_real(&ad).iter() {
            let r = z.re.round();
            assert!((z.re - r).abs() < 1e-9 && z.im.abs() < 1e-9 && (r as i64) % 2 == 0);
        }
    }

    #[test]
    fn centralizer_examples() {
        let alg = LieAlgebraSpace::sl(3).unwrap();
        assert_eq!(alg.centralizer(&CMat::zeros(3, 3)).unwrap().dim(), 8);
        let h = CMat::from_diagonal(&DVector::from_vec(
            [1.0, 0.0, -1.0].map(|x| c64(x, 0.0)).to_vec(),
        ));
        let z = alg.centralizer(&h).unwrap();
        assert_eq!(z.dim(), 2);
        assert!(z.contains_vector(&alg.coords(&h).unwrap(), 1e-10));
    }

    #[test]
    fn generated_subalgebra_examples() {
        let alg = LieAlgebraSpace::sl(3).unwrap();
        let x = real(3, &[0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        assert_eq!(
            alg.generated_subalgebra(std::slice::from_ref(&x))
                .unwrap()
                .dim(),
            1
        );
        let y = real(3, &[0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        // E_12, E_21 generate a copy of sl(2)
        assert_eq!(alg.generated_subalgebra(&[x.clone(), y]).unwrap().dim(), 3);
        let z = real(3, &[0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0]);
        let w = real(3, &[0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0]);
        assert_eq!(alg.generated_subalgebra(&[x, z, w]).unwrap().dim(), 8);
        assert_eq!(alg.generated_subalgebra(&[]).unwrap().dim(), 0);
    }

    #[test]
    fn classification_examples() {
        let nil = real(3, &[0.0, 1.0, 2.0, 0.0, 0.0, 3.0, 0.0, 0.0, 0.0]);
        assert_eq!(
            classify_element(ElementRef::Algebra(&nil)),
            Classification::Nilpotent
        );
        let hyp = real(2, &[1.0, 0.0, 0.0, -1.0]);
        assert_eq!(
            classify_element(ElementRef::Algebra(&hyp)),
            Classification::Hyperbolic
        );
        let (s, c) = (
            std::f64::consts::FRAC_PI_3.sin(),
            std::f64::consts::FRAC_PI_3.cos(),
        );
        let rot = real(2, &[c, -s, s, c]);
        assert_eq!(
            classify_element(ElementRef::Group(&rot)),
            Classification::Elliptic
        );
        let unip = real(2, &[1.0, 5.0, 0.0, 1.0]);
        assert_eq!(
            classify_element(ElementRef::Group(&unip)),
            Classification::Nilpotent
        );
        let mixed = real(2, &[1.0, 1.0, 0.0, 1.0]);
        assert_eq!(
            classify_element(ElementRef::Algebra(&mixed)),
            Classification::Mixed
        );
        let neg_hyp = real(2, &[-2.0, 0.0, 0.0, -0.5]);
        assert_eq!(
            classify_element(ElementRef::Group(&neg_hyp)),
            Classification::Mixed
        );
    }
}
