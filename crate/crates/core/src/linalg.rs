//! Dense floating-point helpers on top of nalgebra.
//!
//! Ambient matrices are always complex (`CMat`); real families simply carry a
//! zero imaginary part. Decompositions are delegated to faer.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex;

use crate::error::{Error, Result};

pub type C64 = Complex<f64>;
pub type CMat = DMatrix<C64>;

pub const I: C64 = Complex { re: 0.0, im: 1.0 };

pub fn c64(re: f64, im: f64) -> C64 {
    Complex::new(re, im)
}

pub fn identity(n: usize) -> CMat {
    CMat::identity(n, n)
}

pub fn from_real(m: &DMatrix<f64>) -> CMat {
    m.map(|x| c64(x, 0.0))
}

pub fn fro(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn max_imag(m: &CMat) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.im.abs()))
}

pub fn bracket(x: &CMat, y: &CMat) -> Result<CMat> {
    if !x.is_square() || x.shape() != y.shape() {
        return Err(Error::Shape(format!(
            "bracket of {:?} and {:?} matrices",
            x.shape(),
            y.shape()
        )));
    }
    Ok(x * y - y * x)
}

/// Row-major (re, im) flattening; the inverse of [`unflatten`].
pub fn flatten(m: &CMat) -> DVector<f64> {
    let (r, c) = m.shape();
    let mut out = DVector::zeros(2 * r * c);
    for i in 0..r {
        for j in 0..c {
            let k = 2 * (i * c + j);
            out[k] = m[(i, j)].re;
            out[k + 1] = m[(i, j)].im;
        }
    }
    out
}

pub fn unflatten(v: &DVector<f64>, n: usize) -> CMat {
    CMat::from_fn(n, n, |i, j| {
        let k = 2 * (i * n + j);
        c64(v[k], v[k + 1])
    })
}

fn to_faer<T: Copy>(a: &DMatrix<T>) -> faer::Mat<T> {
    faer::Mat::from_fn(a.nrows(), a.ncols(), |i, j| a[(i, j)])
}

fn from_faer<T: Copy + nalgebra::Scalar>(a: faer::MatRef<'_, T>) -> DMatrix<T> {
    DMatrix::from_fn(a.nrows(), a.ncols(), |i, j| a[(i, j)])
}

/// Eigenvalues of a square complex matrix.
pub fn spectrum(m: &CMat) -> Vec<C64> {
    if m.nrows() == 0 {
        return Vec::new();
    }
    if max_imag(m) == 0.0 {
        to_faer(&m.map(|z| z.re))
            .eigenvalues()
            .expect("eigenvalue iteration did not converge")
    } else {
        to_faer(m)
            .eigenvalues()
            .expect("eigenvalue iteration did not converge")
    }
}

/// Eigenvalues of a real square matrix.
pub fn spectrum_real(m: &DMatrix<f64>) -> Vec<C64> {
    if m.nrows() == 0 {
        return Vec::new();
    }
    to_faer(m)
        .eigenvalues()
        .expect("eigenvalue iteration did not converge")
}

/// Moduli of the eigenvalues of `m` (with multiplicity), sorted descending.
pub fn eigen_moduli(m: &CMat) -> Vec<f64> {
    let mut v: Vec<f64> = spectrum(m).iter().map(|z| z.norm()).collect();
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

/// Eigenvalues of `m` sorted descending, provided they are all real up to
/// `tol` (relative to the spectral radius, floored at 1).
pub fn real_spectrum(m: &CMat, tol: f64) -> Option<Vec<f64>> {
    let spec = spectrum(m);
    let scale = spec.iter().fold(1.0f64, |a, z| a.max(z.norm()));
    if spec.iter().any(|z| z.im.abs() > tol * scale) {
        return None;
    }
    let mut v: Vec<f64> = spec.iter().map(|z| z.re).collect();
    v.sort_by(|a, b| b.total_cmp(a));
    Some(v)
}

/// Singular values (descending) of a complex matrix.
pub fn singular_values(m: &CMat) -> Vec<f64> {
    if m.is_empty() {
        return Vec::new();
    }
    let mut s = if max_imag(m) == 0.0 {
        to_faer(&m.map(|z| z.re)).singular_values()
    } else {
        to_faer(m).singular_values()
    }
    .expect("SVD did not converge");
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// Full SVD of a real matrix: singular values (descending), U (m×m), V (n×n).
fn full_svd(a: &DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>, DMatrix<f64>) {
    let svd = to_faer(a).svd().expect("SVD did not converge");
    let s: Vec<f64> = svd.S().column_vector().iter().copied().collect();
    (s, from_faer(svd.U()), from_faer(svd.V()))
}

/// Orthonormal basis (columns) of the numerical kernel of `a`. A singular
/// value counts as zero when it is at most `rel * σ_max`.
pub fn null_space(a: &DMatrix<f64>, rel: f64) -> DMatrix<f64> {
    let (m, d) = a.shape();
    if d == 0 {
        return DMatrix::zeros(0, 0);
    }
    if m == 0 {
        return DMatrix::identity(d, d);
    }
    let (sv, _, v) = full_svd(a);
    let smax = sv.first().copied().unwrap_or(0.0);
    if smax == 0.0 {
        return DMatrix::identity(d, d);
    }
    let cols: Vec<usize> = (0..d)
        .filter(|&k| sv.get(k).copied().unwrap_or(0.0) <= rel * smax)
        .collect();
    DMatrix::from_fn(d, cols.len(), |i, j| v[(i, cols[j])])
}

/// Kernel with an absolute reference: singular values ≤ `rel·scale` count as
/// zero. Used when `a` is a restriction of a larger operator of norm `scale`.
pub fn null_space_scaled(a: &DMatrix<f64>, rel: f64, scale: f64) -> DMatrix<f64> {
    let (m, d) = a.shape();
    if d == 0 {
        return DMatrix::zeros(0, 0);
    }
    if m == 0 {
        return DMatrix::identity(d, d);
    }
    let (sv, _, v) = full_svd(a);
    let cols: Vec<usize> = (0..d)
        .filter(|&k| sv.get(k).copied().unwrap_or(0.0) <= rel * scale)
        .collect();
    DMatrix::from_fn(d, cols.len(), |i, j| v[(i, cols[j])])
}

/// Orthonormal basis of the column span of `a` with the same rank rule.
pub fn column_space(a: &DMatrix<f64>, rel: f64) -> DMatrix<f64> {
    let (d, k) = a.shape();
    if k == 0 || d == 0 {
        return DMatrix::zeros(d, 0);
    }
    let (sv, u, _) = full_svd(a);
    let smax = sv.first().copied().unwrap_or(0.0);
    if smax == 0.0 {
        return DMatrix::zeros(d, 0);
    }
    let r = sv.iter().filter(|&&s| s > rel * smax).count();
    u.columns(0, r).into_owned()
}

pub fn numerical_rank(a: &DMatrix<f64>, rel: f64) -> usize {
    column_space(a, rel).ncols()
}

/// Moore–Penrose pseudo-inverse, discarding singular values below `rel·σ_max`.
pub fn pseudo_inverse(a: &DMatrix<f64>, rel: f64) -> DMatrix<f64> {
    let (m, n) = a.shape();
    let (sv, u, v) = full_svd(a);
    let smax = sv.first().copied().unwrap_or(0.0);
    let mut out = DMatrix::zeros(n, m);
    for (k, &s) in sv.iter().enumerate() {
        if s > rel * smax {
            out += v.column(k) * u.column(k).transpose() / s;
        }
    }
    out
}

/// Reduced row echelon form of the span of the columns of `basis`, returned
/// as columns. The result depends only on the subspace (up to rounding), so
/// it is used to make bases reproducible.
pub fn canonical_basis(basis: &DMatrix<f64>, rel: f64) -> DMatrix<f64> {
    let (d, k) = basis.shape();
    let mut rows = basis.transpose();
    let scale = rows
        .iter()
        .fold(0.0f64, |m, x| m.max(x.abs()))
        .max(f64::MIN_POSITIVE);
    let mut r = 0;
    for col in 0..d {
        if r == k {
            break;
        }
        let (best, val) = (r..k)
            .map(|i| (i, rows[(i, col)].abs()))
            .fold((r, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if val <= rel * scale {
            continue;
        }
        rows.swap_rows(r, best);
        let p = rows[(r, col)];
        for j in 0..d {
            rows[(r, j)] /= p;
        }
        for i in 0..k {
            if i != r {
                let f = rows[(i, col)];
                if f != 0.0 {
                    for j in 0..d {
                        let v = rows[(r, j)];
                        rows[(i, j)] -= f * v;
                    }
                }
            }
        }
        r += 1;
    }
    rows.rows(0, r).transpose()
}

/// Matrix exponential.
pub fn expm(m: &CMat) -> CMat {
    m.exp()
}

pub fn inverse(m: &CMat) -> Result<CMat> {
    m.clone()
        .try_inverse()
        .ok_or_else(|| Error::NotInGroup("matrix is singular".into()))
}
