//! Cartan projection μ and Lyapunov projection λ into the closed chamber.

use crate::algebra::{Family, LieAlgebraSpace};
use crate::error::{Error, Result};
use crate::linalg::{self, CMat};
use crate::roots::SplitTorusData;

fn singular_logs(g: &CMat) -> Vec<f64> {
    linalg::singular_values(g).iter().map(|x| x.ln()).collect()
}

/// Defining-condition residual of a group element: `|det − 1|`, the
/// imaginary part (real family) and `‖g*Bg − B‖/‖g‖²` (unitary family).
pub fn group_residual(alg: &LieAlgebraSpace, g: &CMat) -> Result<f64> {
    let n = alg.size();
    if g.shape() != (n, n) {
        return Err(Error::Shape(format!(
            "expected {n}x{n}, got {:?}",
            g.shape()
        )));
    }
    let scale = linalg::fro(g).max(1.0);
    let det = (g.determinant() - linalg::c64(1.0, 0.0)).norm();
    let cond = match alg.form() {
        None => linalg::max_imag(g) / scale,
        Some(b) => {
            let b = linalg::from_real(b);
            linalg::fro(&(g.adjoint() * &b * g - &b)) / (scale * scale)
        }
    };
    Ok(det.max(cond))
}

/// Group conditions are checked at √membership: determinants of
/// moderately large products lose about half the digits.
pub fn ensure_group(alg: &LieAlgebraSpace, g: &CMat) -> Result<()> {
    let r = group_residual(alg, g)?;
    if r > alg.tol().membership.sqrt() {
        return Err(Error::NotInGroup(format!(
            "defining-condition residual {r:.3e}"
        )));
    }
    Ok(())
}

/// Inverse using the group structure where available (`g⁻¹ = B g* B`).
pub fn group_inverse(alg: &LieAlgebraSpace, g: &CMat) -> Result<CMat> {
    match alg.form() {
        Some(b) => {
            let b = linalg::from_real(b);
            Ok(&b * g.adjoint() * &b)
        }
        None => linalg::inverse(g),
    }
}

/// μ(g) in pattern coordinates: logarithms of the singular values of g,
/// i.e. half the logs of the eigenvalues of θ(g)⁻¹g = g*g.
pub fn mu(alg: &LieAlgebraSpace, torus: &SplitTorusData, g: &CMat) -> Result<Vec<f64>> {
    ensure_group(alg, g)?;
    let logs = singular_logs(g);
    match alg.family() {
        Family::Sl { .. } => Ok(logs),
        Family::Su { p, q } => {
            let n = p + q;
            // the bottom of the spectrum is read off g⁻¹, where it is on top
            let inv_logs = singular_logs(&group_inverse(alg, g)?);
            let top = logs[0];
            let tol = alg.tol().pairing;
            let allowed = |log_s: f64| tol + 64.0 * f64::EPSILON * (top - log_s).exp();
            for i in 0..q {
                let gap = (logs[i] - inv_logs[i]).abs();
                if gap > allowed(logs[i]) {
                    return Err(Error::Realization(format!(
                        "singular value logs do not pair: ±{:.6} vs {:.6} (gap {gap:.3e})",
                        logs[i], inv_logs[i]
                    )));
                }
            }
            for (i, &l) in logs.iter().enumerate().take(p).skip(q) {
                if l.abs() > allowed(l) {
                    return Err(Error::Realization(format!(
                        "middle singular value log #{} = {l:.3e} does not vanish",
                        i + 1
                    )));
                }
            }
            debug_assert_eq!(logs.len(), n);
            Ok(torus.dominant_representative_f64(&logs[..q]).0)
        }
    }
}

/// λ(g): the dominant vector of log-moduli of the eigenvalues of g, i.e. the
/// logarithm of its hyperbolic Jordan factor.
pub fn lyapunov(alg: &LieAlgebraSpace, torus: &SplitTorusData, g: &CMat) -> Result<Vec<f64>> {
    let n = alg.size();
    if g.shape() != (n, n) {
        return Err(Error::Shape(format!(
            "expected {n}x{n}, got {:?}",
            g.shape()
        )));
    }
    let logs: Vec<f64> = linalg::eigen_moduli(g).iter().map(|m| m.ln()).collect();
    if logs.iter().any(|l| !l.is_finite()) {
        return Err(Error::NotInGroup("singular matrix".into()));
    }
    let v = match alg.family() {
        Family::Sl { .. } => logs,
        Family::Su { q, .. } => logs[..q].to_vec(),
    };
    Ok(torus.dominant_representative_f64(&v).0)
}
