//! Split Cartan subspaces, restricted roots and Weyl groups.
//!
//! Elements of 𝔞 are written in *pattern coordinates*:
//!
//! * sl(n,ℝ): the n diagonal entries (summing to zero);
//! * su(p,q): `(a₁,…,a_q)` for `diag(a₁,…,a_q,0,…,0,−a_q,…,−a₁)`.
//!
//! Roots are integer functionals on pattern coordinates. Positivity is
//! lexicographic: a root is positive when its first nonzero coefficient is.

use std::fmt;

use itertools::Itertools;
use nalgebra::DVector;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::algebra::{Family, LieAlgebraSpace};
use crate::error::{Error, Result};
use crate::linalg::{self, c64, CMat};
use crate::rational::{self, q, Q};

pub const MAX_WEYL_RANK: usize = 8;
const MAX_PATTERN: usize = 12;

/// A signed permutation acting by `(w·v)_i = s_i · v_{perm(i)}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    len: u8,
    perm: [u8; MAX_PATTERN],
    neg: u16,
}

impl WeylElement {
    pub fn identity(len: usize) -> Self {
        let mut perm = [0u8; MAX_PATTERN];
        for (i, p) in perm.iter_mut().enumerate().take(len) {
            *p = i as u8;
        }
        Self {
            len: len as u8,
            perm,
            neg: 0,
        }
    }

    pub fn new(perm: &[usize], signs: &[i8]) -> Self {
        let mut w = Self::identity(perm.len());
        for (i, (&p, &s)) in perm.iter().zip(signs).enumerate() {
            w.perm[i] = p as u8;
            if s < 0 {
                w.neg |= 1 << i;
            }
        }
        w
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn perm(&self) -> Vec<usize> {
        self.perm[..self.len()]
            .iter()
            .map(|&p| p as usize)
            .collect()
    }

    /// Index `perm(i)` read by coordinate `i`.
    pub fn source(&self, i: usize) -> usize {
        self.perm[i] as usize
    }

    pub fn sign(&self, i: usize) -> i8 {
        if self.neg >> i & 1 == 1 {
            -1
        } else {
            1
        }
    }

    pub fn signs(&self) -> Vec<i8> {
        (0..self.len()).map(|i| self.sign(i)).collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.len())
    }

    pub fn apply(&self, v: &[Q]) -> Vec<Q> {
        (0..self.len())
            .map(|i| {
                let x = v[self.perm[i] as usize].clone();
                if self.sign(i) < 0 {
                    -x
                } else {
                    x
                }
            })
            .collect()
    }

    pub fn apply_f64(&self, v: &[f64]) -> Vec<f64> {
        (0..self.len())
            .map(|i| self.sign(i) as f64 * v[self.perm[i] as usize])
            .collect()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        let mut w = Self::identity(self.len());
        for i in 0..self.len() {
            let j = self.perm[i] as usize;
            w.perm[i] = other.perm[j];
            if self.sign(i) * other.sign(j) < 0 {
                w.neg |= 1 << i;
            }
        }
        w
    }

    pub fn inverse(&self) -> WeylElement {
        let mut w = Self::identity(self.len());
        for i in 0..self.len() {
            let j = self.perm[i] as usize;
            w.perm[j] = i as u8;
            if self.sign(i) < 0 {
                w.neg |= 1 << j;
            }
        }
        w
    }
}

impl fmt::Display for WeylElement {
    /// `v ↦ (v2, -v1, …)` with 1-based indices.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts = (0..self.len())
            .map(|i| {
                format!(
                    "{}v{}",
                    if self.sign(i) < 0 { "-" } else { "" },
                    self.perm[i] + 1
                )
            })
            .join(", ");
        write!(f, "v -> ({parts})")
    }
}

impl Serialize for WeylElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_string().serialize(s)
    }
}

/// A restricted root as an integer functional on pattern coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Root {
    pub coeffs: Vec<i64>,
    pub multiplicity: usize,
}

impl Root {
    pub fn eval(&self, v: &[Q]) -> Q {
        self.coeffs.iter().zip(v).map(|(&c, x)| q(c) * x).sum()
    }

    pub fn eval_f64(&self, v: &[f64]) -> f64 {
        self.coeffs.iter().zip(v).map(|(&c, x)| c as f64 * x).sum()
    }

    pub fn is_positive(&self) -> bool {
        self.coeffs
            .iter()
            .find(|&&c| c != 0)
            .is_some_and(|&c| c > 0)
    }
}

#[derive(Clone, Debug)]
pub struct SplitTorusData {
    family: Family,
    pattern_len: usize,
    rank: usize,
    roots: Vec<Root>,
    simple: Vec<Root>,
    weyl: Vec<WeylElement>,
    w0: WeylElement,
    b_basis: Vec<Vec<Q>>,
}

pub fn split_torus(alg: &LieAlgebraSpace) -> Result<SplitTorusData> {
    SplitTorusData::new(alg)
}

impl SplitTorusData {
    pub fn new(alg: &LieAlgebraSpace) -> Result<Self> {
        let family = alg.family();
        let (pattern_len, rank) = match family {
            Family::Sl { n } => (n, n - 1),
            Family::Su { q, .. } => (q, q),
        };
        if rank > MAX_WEYL_RANK || pattern_len > MAX_PATTERN {
            return Err(Error::WeylTooLarge(rank));
        }
        let roots = compute_roots(alg, family, pattern_len);
        let positive: Vec<&Root> = roots.iter().filter(|r| r.is_positive()).collect();
        let simple: Vec<Root> = positive
            .iter()
            .filter(|r| {
                !positive.iter().any(|a| {
                    positive.iter().any(|b| {
                        a.coeffs
                            .iter()
                            .zip(&b.coeffs)
                            .map(|(x, y)| x + y)
                            .eq(r.coeffs.iter().copied())
                    })
                })
            })
            .map(|r| (*r).clone())
            .collect();
        let weyl = enumerate_weyl(family, pattern_len);
        let mut torus = Self {
            family,
            pattern_len,
            rank,
            roots,
            simple,
            weyl,
            w0: WeylElement::identity(pattern_len),
            b_basis: Vec::new(),
        };
        let rho = torus.regular_dominant();
        let neg_rho: Vec<Q> = rho.iter().map(|x| -x.clone()).collect();
        torus.w0 = *torus
            .weyl
            .iter()
            .find(|w| w.apply(&rho) == neg_rho)
            .ok_or_else(|| Error::Unsupported("no longest Weyl element found".into()))?;
        torus.b_basis = torus.compute_b();
        Ok(torus)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of pattern coordinates (n for sl(n,ℝ), q for su(p,q)).
    pub fn pattern_len(&self) -> usize {
        self.pattern_len
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn positive_roots(&self) -> impl Iterator<Item = &Root> {
        self.roots.iter().filter(|r| r.is_positive())
    }

    /// Simple roots; the chamber is `{α ≥ 0 : α simple}`.
    pub fn simple_roots(&self) -> &[Root] {
        &self.simple
    }

    pub fn weyl(&self) -> &[WeylElement] {
        &self.weyl
    }

    pub fn w0(&self) -> WeylElement {
        self.w0
    }

    pub fn ordering(&self) -> &'static str {
        "lexicographic on pattern coordinates"
    }

    /// A strictly dominant integer vector.
    pub fn regular_dominant(&self) -> Vec<Q> {
        let m = self.pattern_len as i64;
        match self.family {
            // (m−1, m−3, …, 1−m)
            Family::Sl { .. } => (0..m).map(|i| q(m - 1 - 2 * i)).collect(),
            Family::Su { .. } => (0..m).map(|i| q(m - i)).collect(),
        }
    }

    pub fn validate(&self, v: &[Q]) -> Result<()> {
        if v.len() != self.pattern_len {
            return Err(Error::Shape(format!(
                "torus vector has {} coordinates, expected {}",
                v.len(),
                self.pattern_len
            )));
        }
        if matches!(self.family, Family::Sl { .. }) && !v.iter().cloned().sum::<Q>().is_zero() {
            return Err(Error::InvalidParameters(
                "sl(n,R) torus vectors must have trace zero".into(),
            ));
        }
        Ok(())
    }

    pub fn is_dominant(&self, v: &[Q]) -> bool {
        self.simple.iter().all(|a| !a.eval(v).is_negative())
    }

    pub fn is_dominant_f64(&self, v: &[f64], tol: f64) -> bool {
        self.simple.iter().all(|a| a.eval_f64(v) >= -tol)
    }

    /// The dominant translate `w·v` together with a witness `w`.
    pub fn dominant_representative(&self, v: &[Q]) -> (Vec<Q>, WeylElement) {
        let w = self.dominating_element(v, |x| x.abs(), |x| x.is_negative());
        (w.apply(v), w)
    }

    pub fn dominant_representative_f64(&self, v: &[f64]) -> (Vec<f64>, WeylElement) {
        let w = self.dominating_element(v, |x| x.abs(), |x| *x < 0.0);
        (w.apply_f64(v), w)
    }

    fn dominating_element<T: PartialOrd + Clone>(
        &self,
        v: &[T],
        abs: impl Fn(&T) -> T,
        negative: impl Fn(&T) -> bool,
    ) -> WeylElement {
        let key: Vec<T> = match self.family {
            Family::Sl { .. } => v.to_vec(),
            Family::Su { .. } => v.iter().map(&abs).collect(),
        };
        let mut order: Vec<usize> = (0..v.len()).collect();
        // stable: equal entries keep their order, so dominant input maps to the identity
        order.sort_by(|&a, &b| {
            key[b]
                .partial_cmp(&key[a])
                .unwrap_or(std::cmp::Ordering::Equal)
        });
        let signs: Vec<i8> = order
            .iter()
            .map(|&j| {
                if matches!(self.family, Family::Su { .. }) && negative(&v[j]) {
                    -1
                } else {
                    1
                }
            })
            .collect();
        WeylElement::new(&order, &signs)
    }

    /// Opposition involution ι = −w₀.
    pub fn iota(&self, v: &[Q]) -> Vec<Q> {
        self.w0.apply(v).into_iter().map(|x| -x).collect()
    }

    pub fn iota_f64(&self, v: &[f64]) -> Vec<f64> {
        self.w0.apply_f64(v).into_iter().map(|x| -x).collect()
    }

    fn constraint_rows(&self) -> Vec<Vec<Q>> {
        match self.family {
            Family::Sl { .. } => vec![vec![q(1); self.pattern_len]],
            Family::Su { .. } => Vec::new(),
        }
    }

    fn compute_b(&self) -> Vec<Vec<Q>> {
        let m = self.pattern_len;
        let cols: Vec<Vec<Q>> = (0..m)
            .map(|c| self.iota(&(0..m).map(|j| q((j == c) as i64)).collect::<Vec<_>>()))
            .collect();
        // rows of ι − I, plus the pattern constraints
        let mut rows: Vec<Vec<Q>> = (0..m)
            .map(|r| {
                (0..m)
                    .map(|c| cols[c][r].clone() - q((r == c) as i64))
                    .collect()
            })
            .collect();
        rows.extend(self.constraint_rows());
        let ns = rational::nullspace(&rows, m);
        if ns.is_empty() {
            Vec::new()
        } else {
            rational::rref(&ns).0
        }
    }

    /// Exact basis of 𝔟 = {v ∈ 𝔞 : ι(v) = v}. The cone 𝔟₊ is 𝔟 ∩ 𝔞₊,
    /// i.e. the simple-root inequalities restricted to 𝔟.
    pub fn b_space(&self) -> &[Vec<Q>] {
        &self.b_basis
    }

    pub fn in_b(&self, v: &[Q]) -> bool {
        self.validate(v).is_ok() && self.iota(v) == v
    }

    pub fn in_b_plus(&self, v: &[Q]) -> bool {
        self.in_b(v) && self.is_dominant(v)
    }

    /// Diagonal entries of the element of 𝔞 with pattern `v`.
    pub fn diagonal_f64(&self, v: &[f64]) -> Vec<f64> {
        match self.family {
            Family::Sl { .. } => v.to_vec(),
            Family::Su { p, q } => {
                let mut d = vec![0.0; p + q];
                for (i, &a) in v.iter().enumerate() {
                    d[i] = a;
                    d[p + q - 1 - i] = -a;
                }
                d
            }
        }
    }

    pub fn embed_f64(&self, v: &[f64]) -> CMat {
        let d = self.diagonal_f64(v);
        CMat::from_diagonal(&DVector::from_iterator(
            d.len(),
            d.iter().map(|&x| c64(x, 0.0)),
        ))
    }

    pub fn embed(&self, v: &[Q]) -> CMat {
        self.embed_f64(&v.iter().map(rational::to_f64).collect::<Vec<_>>())
    }

    /// Pattern coordinates of a matrix lying in 𝔞, or `None`.
    pub fn pattern_of(&self, x: &CMat, tol: f64) -> Option<Vec<f64>> {
        let scale = linalg::fro(x).max(1.0);
        let n = x.nrows();
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|(i, j)| i != j)
            .map(|(i, j)| x[(i, j)].norm())
            .fold(0.0, f64::max);
        if off > tol * scale || (0..n).any(|i| x[(i, i)].im.abs() > tol * scale) {
            return None;
        }
        let diag: Vec<f64> = (0..n).map(|i| x[(i, i)].re).collect();
        let v: Vec<f64> = match self.family {
            Family::Sl { .. } => diag.clone(),
            Family::Su { q, .. } => diag[..q].to_vec(),
        };
        let back = self.diagonal_f64(&v);
        let err = back
            .iter()
            .zip(&diag)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        (err <= tol * scale).then_some(v)
    }
}

fn diagonal_functional(family: Family, pattern_len: usize, k: usize) -> Vec<i64> {
    let mut f = vec![0; pattern_len];
    match family {
        Family::Sl { .. } => f[k] = 1,
        Family::Su { p, q } => {
            let n = p + q;
            if k < q {
                f[k] = 1;
            } else if k >= p {
                f[n - 1 - k] = -1;
            }
        }
    }
    f
}

fn compute_roots(alg: &LieAlgebraSpace, family: Family, pattern_len: usize) -> Vec<Root> {
    let n = family.size();
    let mut candidates: Vec<Vec<i64>> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let a = diagonal_functional(family, pattern_len, i);
            let b = diagonal_functional(family, pattern_len, j);
            let d: Vec<i64> = a.iter().zip(&b).map(|(x, y)| x - y).collect();
            if d.iter().any(|&c| c != 0) && !candidates.contains(&d) {
                candidates.push(d);
            }
        }
    }
    candidates.sort_by(|a, b| b.cmp(a));
    // a generic element: coordinates with rationally independent perturbations
    let generic: Vec<f64> = (0..pattern_len)
        .map(|i| (pattern_len - i) as f64 + 0.1 * ((2 * i + 3) as f64).sqrt())
        .collect();
    let generic = match family {
        Family::Sl { .. } => {
            let mean = generic.iter().sum::<f64>() / pattern_len as f64;
            generic.iter().map(|x| x - mean).collect()
        }
        Family::Su { .. } => generic,
    };
    let diag: Vec<f64> = match family {
        Family::Sl { .. } => generic.clone(),
        Family::Su { p, q } => {
            let mut d = vec![0.0; p + q];
            for (i, &a) in generic.iter().enumerate() {
                d[i] = a;
                d[p + q - 1 - i] = -a;
            }
            d
        }
    };
    let a_gen = CMat::from_diagonal(&DVector::from_iterator(
        n,
        diag.iter().map(|&x| c64(x, 0.0)),
    ));
    let ad = alg.ad_unchecked(&a_gen);
    let dim = alg.dim();
    candidates
        .into_iter()
        .filter_map(|coeffs| {
            let value: f64 = coeffs
                .iter()
                .zip(&generic)
                .map(|(&c, x)| c as f64 * x)
                .sum();
            let shifted = &ad - nalgebra::DMatrix::<f64>::identity(dim, dim) * value;
            let multiplicity = linalg::null_space(&shifted, 1e-9).ncols();
            (multiplicity > 0).then_some(Root {
                coeffs,
                multiplicity,
            })
        })
        .collect()
}

fn enumerate_weyl(family: Family, m: usize) -> Vec<WeylElement> {
    let perms: Vec<Vec<usize>> = (0..m).permutations(m).collect();
    match family {
        Family::Sl { .. } => perms
            .iter()
            .map(|p| WeylElement::new(p, &vec![1; m]))
            .collect(),
        Family::Su { .. } => perms
            .iter()
            .flat_map(|p| {
                (0..1u32 << m).map(move |mask| {
                    let signs: Vec<i8> = (0..m)
                        .map(|i| if mask >> i & 1 == 1 { -1 } else { 1 })
                        .collect();
                    WeylElement::new(p, &signs)
                })
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qr;

    fn qs(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&x| q(x)).collect()
    }

    fn torus_su(p: usize, q: usize) -> SplitTorusData {
        split_torus(&LieAlgebraSpace::su(p, q).unwrap()).unwrap()
    }

    fn torus_sl(n: usize) -> SplitTorusData {
        split_torus(&LieAlgebraSpace::sl(n).unwrap()).unwrap()
    }

    #[test]
    fn ranks_and_weyl_orders() {
        let t = torus_su(3, 2);
        assert_eq!((t.rank(), t.weyl().len()), (2, 8));
        let t = torus_sl(5);
        assert_eq!((t.rank(), t.weyl().len()), (4, 120));
    }

    #[test]
    fn su_root_multiplicities() {
        // BC_q with multiplicities 2, 2(p−q), 1
        let t = torus_su(3, 2);
        let find = |c: &[i64]| {
            t.roots()
                .iter()
                .find(|r| r.coeffs == c)
                .map(|r| r.multiplicity)
        };
        assert_eq!(find(&[1, -1]), Some(2));
        assert_eq!(find(&[1, 1]), Some(2));
        assert_eq!(find(&[1, 0]), Some(2));
        assert_eq!(find(&[2, 0]), Some(1));
        assert_eq!(t.roots().len(), 12);
        // 𝔤 = 𝔤₀ ⊕ ⊕ 𝔤_α with dim 𝔤₀ = dim 𝔞 + dim 𝔪 = q + (p−q)² + q − 1
        let total: usize = t.roots().iter().map(|r| r.multiplicity).sum();
        assert_eq!(total, 24 - (2 + 2));
        let t = torus_su(2, 2);
        assert!(t
            .roots()
            .iter()
            .all(|r| r.coeffs.iter().filter(|&&c| c != 0).count() == 2
                || r.coeffs.iter().any(|c| c.abs() == 2)));
        assert_eq!(t.roots().len(), 8);
    }

    #[test]
    fn sl_roots_are_reduced_and_simple() {
        let t = torus_sl(4);
        assert_eq!(t.roots().len(), 12);
        assert!(t.roots().iter().all(|r| r.multiplicity == 1));
        let simple: Vec<_> = t.simple_roots().iter().map(|r| r.coeffs.clone()).collect();
        assert_eq!(
            simple,
            vec![vec![1, -1, 0, 0], vec![0, 1, -1, 0], vec![0, 0, 1, -1]]
        );
        let t = torus_su(3, 2);
        let simple: Vec<_> = t.simple_roots().iter().map(|r| r.coeffs.clone()).collect();
        assert_eq!(simple, vec![vec![1, -1], vec![0, 1]]);
    }

    #[test]
    fn weyl_permutes_roots() {
        for t in [torus_su(3, 2), torus_sl(4), torus_su(2, 2)] {
            for w in t.weyl() {
                for r in t.roots() {
                    // (α∘w⁻¹)(v) = α(w⁻¹v): coefficients transform by w
                    let c: Vec<Q> = r.coeffs.iter().map(|&x| q(x)).collect();
                    let moved = w.apply(&c);
                    let ints: Vec<i64> = moved
                        .iter()
                        .map(|x| x.to_integer().try_into().unwrap())
                        .collect();
                    assert!(t
                        .roots()
                        .iter()
                        .any(|s| s.coeffs == ints && s.multiplicity == r.multiplicity));
                }
            }
        }
    }

    #[test]
    fn opposition_involution() {
        let t = torus_su(2, 2);
        let v = qs(&[3, -1]);
        assert_eq!(t.iota(&v), v);
        assert_eq!(t.b_space().len(), 2);
        let t = torus_sl(5);
        assert_eq!(t.iota(&qs(&[4, 1, 0, -2, -3])), qs(&[3, 2, 0, -1, -4]));
        assert_eq!(t.b_space().len(), 2);
        assert!(t.in_b(&qs(&[4, 2, 0, -2, -4])));
        assert!(t.in_b(&qs(&[2, 0, 0, 0, -2])));
        assert!(!t.in_b(&qs(&[2, -2, 0, 0, 0])));
        assert_eq!(torus_sl(2).b_space().len(), 1);
    }

    #[test]
    fn dominant_representatives() {
        let t = torus_sl(5);
        let (v, w) = t.dominant_representative(&qs(&[-4, -2, 0, 2, 4]));
        assert_eq!(v, qs(&[4, 2, 0, -2, -4]));
        assert_eq!(w.apply(&qs(&[-4, -2, 0, 2, 4])), v);
        let (v, w) = t.dominant_representative(&qs(&[4, 2, 0, -2, -4]));
        assert!(w.is_identity() && v == qs(&[4, 2, 0, -2, -4]));
        let t = torus_su(4, 3);
        let (v, _) = t.dominant_representative(&[qr(-1, 2), q(3), q(-5)]);
        assert_eq!(v, vec![q(5), q(3), qr(1, 2)]);
    }

    #[test]
    fn group_operations() {
        let t = torus_su(3, 3);
        let v = qs(&[1, 2, 3]);
        for a in t.weyl().iter().step_by(7) {
            assert_eq!(a.inverse().apply(&a.apply(&v)), v);
            for b in t.weyl().iter().step_by(11) {
                assert_eq!(a.compose(b).apply(&v), a.apply(&b.apply(&v)));
            }
        }
    }

    #[test]
    fn embedding_roundtrip() {
        let t = torus_su(3, 2);
        let x = t.embed_f64(&[1.5, -0.5]);
        assert_eq!(t.pattern_of(&x, 1e-12), Some(vec![1.5, -0.5]));
        let mut y = x.clone();
        y[(0, 1)] = c64(1.0, 0.0);
        assert_eq!(t.pattern_of(&y, 1e-12), None);
    }
}
