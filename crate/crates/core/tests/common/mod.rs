//! Randomized invariant suites shared by the property tests and the
//! acceptance runner. Every suite draws from a fixed-seed ChaCha stream and
//! returns a one-line summary, or the first counterexample.
#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};
use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sl2bend::linalg::{self, c64, fro, CMat};
use sl2bend::projections::{lyapunov, mu};
use sl2bend::roots::split_torus;
use sl2bend::sl2::{self, partitions, rho1_su, rho2_su, sl2_from_partition, Sl2Triple};
use sl2bend::{isotypic, LieAlgebraSpace};

pub const SEED: u64 = 0x5eed_0b3d_2025;
pub const CASES: usize = 120;

pub type Outcome = Result<String, String>;

pub fn rng(salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

pub fn algebras() -> Vec<LieAlgebraSpace> {
    vec![
        LieAlgebraSpace::sl(2).unwrap(),
        LieAlgebraSpace::sl(3).unwrap(),
        LieAlgebraSpace::sl(4).unwrap(),
        LieAlgebraSpace::su(1, 1).unwrap(),
        LieAlgebraSpace::su(2, 1).unwrap(),
        LieAlgebraSpace::su(2, 2).unwrap(),
        LieAlgebraSpace::su(3, 2).unwrap(),
    ]
}

/// Uniform coordinates in [−1, 1], rescaled to Frobenius norm `norm`.
pub fn random_element(alg: &LieAlgebraSpace, rng: &mut ChaCha8Rng, norm: f64) -> CMat {
    let v = DVector::from_fn(alg.dim(), |_, _| rng.random_range(-1.0..1.0));
    let x = alg.element(&v);
    let s = fro(&x);
    x * c64(norm / s, 0.0)
}

/// exp of a random element of 𝔨.
pub fn random_compact(alg: &LieAlgebraSpace, rng: &mut ChaCha8Rng) -> CMat {
    let (k, _) = alg.cartan_decomposition();
    let c = DVector::from_fn(k.dim(), |_, _| rng.random_range(-3.0..3.0));
    linalg::expm(&alg.element(&(k.basis() * c)))
}

pub fn jacobi(cases: usize) -> Outcome {
    let mut rng = rng(1);
    let algs = algebras();
    let mut worst = 0.0f64;
    for _ in 0..cases {
        let alg = algs.choose(&mut rng).unwrap();
        let norms: Vec<f64> = (0..3).map(|_| rng.random_range(0.1..10.0)).collect();
        let [x, y, z] = [0, 1, 2].map(|i| random_element(alg, &mut rng, norms[i]));
        let br = |a: &CMat, b: &CMat| alg.bracket(a, b).unwrap();
        let sum = br(&x, &br(&y, &z)) + br(&y, &br(&z, &x)) + br(&z, &br(&x, &y));
        let rel = fro(&sum) / (fro(&x) * fro(&y) * fro(&z));
        worst = worst.max(rel);
        ensure(rel <= 1e-9, || {
            format!("{}: Jacobi residual {rel:.3e}", alg.label())
        })?;
    }
    Ok(format!(
        "{cases} triples, worst relative residual {worst:.2e}"
    ))
}

pub fn theta_automorphism(cases: usize) -> Outcome {
    let mut rng = rng(2);
    let algs = algebras();
    let mut worst = 0.0f64;
    for _ in 0..cases {
        let alg = algs.choose(&mut rng).unwrap();
        let norm = rng.random_range(0.1..5.0);
        let x = random_element(alg, &mut rng, norm);
        let y = random_element(alg, &mut rng, 1.0);
        let th = |a: &CMat| alg.cartan_involution(a).unwrap();
        let lhs = th(&alg.bracket(&x, &y).unwrap());
        let rhs = alg.bracket(&th(&x), &th(&y)).unwrap();
        let scale = fro(&x) * fro(&y);
        let rel = fro(&(lhs - rhs)) / scale;
        let inv = fro(&(th(&th(&x)) - &x)) / fro(&x);
        worst = worst.max(rel).max(inv);
        ensure(rel <= 1e-12 && inv <= 1e-14, || {
            format!("{}: θ defect {rel:.3e}, θ² defect {inv:.3e}", alg.label())
        })?;
    }
    Ok(format!("{cases} pairs, worst defect {worst:.2e}"))
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// μ(g⁻¹) = ι(μ(g)) and μ(kgk′) = μ(g).
pub fn mu_symmetries(cases: usize) -> Outcome {
    let mut rng = rng(3);
    let algs = algebras();
    let mut worst = 0.0f64;
    for _ in 0..cases {
        let alg = algs.choose(&mut rng).unwrap();
        let torus = split_torus(alg).unwrap();
        let norm = rng.random_range(0.1..3.0);
        let g = linalg::expm(&random_element(alg, &mut rng, norm));
        let m = mu(alg, &torus, &g).map_err(|e| format!("{}: {e}", alg.label()))?;
        let m_inv = mu(alg, &torus, &linalg::inverse(&g).unwrap()).unwrap();
        let d1 = dist(&m_inv, &torus.iota_f64(&m));
        let (k1, k2) = (random_compact(alg, &mut rng), random_compact(alg, &mut rng));
        let m_k = mu(alg, &torus, &(k1 * &g * k2)).unwrap();
        let d2 = dist(&m_k, &m);
        worst = worst.max(d1).max(d2);
        ensure(d1 <= 1e-8 && d2 <= 1e-8, || {
            format!(
                "{}: |μ(g⁻¹) − ι μ(g)| = {d1:.3e}, |μ(kgk') − μ(g)| = {d2:.3e}",
                alg.label()
            )
        })?;
    }
    Ok(format!("{cases} elements, worst deviation {worst:.2e}"))
}

/// λ(gᵐ) = m·λ(g) for m = 2, 3.
pub fn lyapunov_homogeneity(cases: usize) -> Outcome {
    let mut rng = rng(4);
    let algs = algebras();
    let mut worst = 0.0f64;
    for _ in 0..cases {
        let alg = algs.choose(&mut rng).unwrap();
        let torus = split_torus(alg).unwrap();
        let norm = rng.random_range(0.2..2.0);
        let g = linalg::expm(&random_element(alg, &mut rng, norm));
        let l = lyapunov(alg, &torus, &g).unwrap();
        let mut pow = g.clone();
        for m in 2..=3 {
            pow *= &g;
            let lm = lyapunov(alg, &torus, &pow).unwrap();
            let scaled: Vec<f64> = l.iter().map(|x| x * m as f64).collect();
            let d = dist(&lm, &scaled);
            worst = worst.max(d);
            ensure(d <= 1e-8, || {
                format!("{}: |λ(g^{m}) − {m}λ(g)| = {d:.3e}", alg.label())
            })?;
        }
    }
    Ok(format!("{cases} elements, worst deviation {worst:.2e}"))
}

/// A triple with its provenance, for messages.
pub struct Labeled {
    pub label: String,
    pub alg: LieAlgebraSpace,
    pub triple: Sl2Triple,
}

/// Every partition triple of sl(n), 2 ≤ n ≤ `max_n`, and ρ₁, ρ₂ of su(p,q)
/// for 1 ≤ q ≤ p ≤ `max_p`. These are 𝔞-diagonal.
pub fn diagonal_triples(max_n: usize, max_p: usize) -> Vec<Labeled> {
    let mut out = Vec::new();
    for n in 2..=max_n {
        let alg = LieAlgebraSpace::sl(n).unwrap();
        for parts in partitions(n) {
            let triple = sl2_from_partition(&alg, &parts).unwrap();
            out.push(Labeled {
                label: format!("sl{n} {parts:?}"),
                alg: alg.clone(),
                triple,
            });
        }
    }
    for p in 1..=max_p {
        for q in 1..=p {
            let alg = LieAlgebraSpace::su(p, q).unwrap();
            out.push(Labeled {
                label: format!("su({p},{q}) rho1"),
                alg: alg.clone(),
                triple: rho1_su(&alg).unwrap(),
            });
            if p > q {
                out.push(Labeled {
                    label: format!("su({p},{q}) rho2"),
                    alg: alg.clone(),
                    triple: rho2_su(&alg).unwrap(),
                });
            }
        }
    }
    out
}

/// Ad(g) applied to a triple, for g close to the identity in the group.
pub fn conjugate(alg: &LieAlgebraSpace, t: &Sl2Triple, rng: &mut ChaCha8Rng) -> Sl2Triple {
    let norm = rng.random_range(0.1..0.8);
    let g = linalg::expm(&random_element(alg, rng, norm));
    let gi = linalg::inverse(&g).unwrap();
    let ad = |x: &CMat| &g * x * &gi;
    Sl2Triple::custom(alg, ad(&t.h), ad(&t.e), ad(&t.f)).unwrap()
}

/// [𝔤:V_k] = m_{k−1} − m_{k+1}, Σ k[𝔤:V_k] = dim 𝔤, and the number of
/// odd-dimensional pieces equals dim 𝔷_𝔤(H), on randomly conjugated triples.
pub fn multiplicity_identities(cases: usize) -> Outcome {
    let mut rng = rng(5);
    let pool = diagonal_triples(5, 3);
    for _ in 0..cases {
        let base = pool.choose(&mut rng).unwrap();
        let alg = &base.alg;
        let t = conjugate(alg, &base.triple, &mut rng);
        let fail = |what: String| format!("{} (conjugated): {what}", base.label);
        let weights = sl2::ad_weights(alg, &t).map_err(|e| fail(e.to_string()))?;
        let iso = isotypic::module_multiplicities(alg, &t).map_err(|e| fail(e.to_string()))?;
        let m = |k: i64| weights.get(&k).copied().unwrap_or(0) as i64;
        let top = weights.keys().max().copied().unwrap_or(0);
        let mut total = 0;
        for k in 1..=(top + 1) {
            let expected = m(k - 1) - m(k + 1);
            let got = iso.multiplicity(k as usize) as i64;
            ensure(got == expected, || {
                fail(format!("[g:V_{k}] = {got}, weights give {expected}"))
            })?;
            total += k as usize * got as usize;
        }
        ensure(total == alg.dim(), || {
            fail(format!("Σ k[g:V_k] = {total} ≠ {}", alg.dim()))
        })?;
        let odd: usize = iso
            .multiplicities
            .iter()
            .filter(|(k, _)| *k % 2 == 1)
            .map(|(_, m)| m)
            .sum();
        let z = alg.centralizer(&t.h).unwrap().dim();
        ensure(odd == z, || fail(format!("Σ_odd = {odd}, dim z(H) = {z}")))?;
    }
    Ok(format!(
        "{cases} conjugated triples from a pool of {}",
        pool.len()
    ))
}

/// A Weyl-permuted copy of a partition triple: conjugation by a
/// permutation matrix keeps the triple 𝔞-diagonal.
fn permuted(alg: &LieAlgebraSpace, t: &Sl2Triple, rng: &mut ChaCha8Rng) -> Sl2Triple {
    let n = alg.size();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let p = CMat::from_fn(n, n, |i, j| c64((perm[i] == j) as u8 as f64, 0.0));
    let ad = |x: &CMat| &p * x * p.transpose();
    Sl2Triple::custom(alg, ad(&t.h), ad(&t.e), ad(&t.f)).unwrap()
}

/// The dominant A₀-vector of every constructed triple lies in 𝔟₊, and is
/// unchanged by Weyl permutations of the triple.
pub fn a0_in_b_plus() -> Outcome {
    let mut rng = rng(6);
    let pool = diagonal_triples(8, 6);
    for lt in &pool {
        let torus = split_torus(&lt.alg).unwrap();
        let guard = lt.alg.tol().integer_guard;
        let v = lt
            .triple
            .dominant_a0(&torus, guard)
            .map_err(|e| format!("{}: {e}", lt.label))?;
        ensure(torus.in_b_plus(&v), || {
            format!("{}: dominant A0 vector not in b+", lt.label)
        })?;
        if lt.alg.family().is_real() {
            let w = permuted(&lt.alg, &lt.triple, &mut rng)
                .dominant_a0(&torus, guard)
                .unwrap();
            ensure(w == v, || {
                format!("{}: permuted triple has another dominant vector", lt.label)
            })?;
        }
    }
    Ok(format!("{} triples", pool.len()))
}

/// 𝔞 ⊆ 𝔤_even whenever H ∈ 𝔞.
pub fn split_torus_in_g_even() -> Outcome {
    let pool = diagonal_triples(8, 6);
    for lt in &pool {
        let torus = split_torus(&lt.alg).unwrap();
        let ge = sl2::g_even(&lt.alg, &lt.triple).map_err(|e| format!("{}: {e}", lt.label))?;
        let len = torus.pattern_len();
        let units: Vec<Vec<f64>> = if lt.alg.family().is_real() {
            (0..len - 1)
                .map(|i| {
                    (0..len)
                        .map(|j| (j == i) as u8 as f64 - (j == i + 1) as u8 as f64)
                        .collect()
                })
                .collect()
        } else {
            (0..len)
                .map(|i| (0..len).map(|j| (j == i) as u8 as f64).collect())
                .collect()
        };
        ensure(units.len() == torus.rank(), || {
            format!("{}: basis of a has the wrong size", lt.label)
        })?;
        for u in units {
            let x = lt.alg.coords(&torus.embed_f64(&u)).unwrap();
            ensure(ge.contains_vector(&x, 1e-9), || {
                format!("{}: a ⊄ g_even", lt.label)
            })?;
        }
    }
    Ok(format!("{} triples", pool.len()))
}

/// Column-stacked real coordinates, used to compare subspaces.
pub fn coords_matrix(alg: &LieAlgebraSpace, xs: &[CMat]) -> DMatrix<f64> {
    let cols: Vec<DVector<f64>> = xs.iter().map(|x| alg.coords(x).unwrap()).collect();
    DMatrix::from_columns(&cols)
}
