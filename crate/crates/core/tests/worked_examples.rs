//! The sl(5,ℝ) table and the su(p,q) family, checked against literal values.

use nalgebra::DMatrix;

use sl2bend::algebra::hermitian_form;
use sl2bend::linalg::{c64, fro, CMat};
use sl2bend::properness::{
    benoist_criterion, calabi_markus, in_weyl_orbit_of_subspace, sl2_action_proper,
    HSubalgebraTorus,
};
use sl2bend::rational::{q, Q};
use sl2bend::report::{self, partition_symbol, ReportOptions};
use sl2bend::roots::{split_torus, SplitTorusData};
use sl2bend::sl2::{self, rho1_su, rho2_su, sl2_from_partition, zero_triple};
use sl2bend::{isotypic, Error, LieAlgebraSpace};

fn qv(v: &[i64]) -> Vec<Q> {
    v.iter().map(|&x| q(x)).collect()
}

fn sl5_ah(torus: &SplitTorusData) -> HSubalgebraTorus {
    HSubalgebraTorus::from_ints(torus, &[&[2, -2, 0, 0, 0], &[4, 2, 0, -2, -4]]).unwrap()
}

/// Partition, symbol, evenness and dominant A₀-vector as printed in the
/// table, plus properness against the two-dimensional 𝔞_𝔥.
type Row = (&'static [usize], &'static str, bool, [i64; 5], bool);

const SL5_TABLE: [Row; 6] = [
    (&[5], "[5]", true, [4, 2, 0, -2, -4], false),
    (&[4, 1], "[4,1]", false, [3, 1, 0, -1, -3], true),
    (&[3, 2], "[3,2]", false, [2, 1, 0, -1, -2], false),
    (&[3, 1, 1], "[3,1^2]", true, [2, 0, 0, 0, -2], false),
    (&[2, 2, 1], "[2^2,1]", false, [1, 1, 0, -1, -1], true),
    (&[2, 1, 1, 1], "[2,1^3]", false, [1, 0, 0, 0, -1], false),
];

#[test]
fn sl5_table() {
    let alg = LieAlgebraSpace::sl(5).unwrap();
    let torus = split_torus(&alg).unwrap();
    let ah = sl5_ah(&torus);
    for (parts, symbol, even, a0, proper) in SL5_TABLE {
        let t = sl2_from_partition(&alg, parts).unwrap();
        assert_eq!(partition_symbol(parts), symbol);
        assert_eq!(sl2::is_even(&alg, &t).unwrap(), even, "{symbol}");
        let v = t.dominant_a0(&torus, 1e-8).unwrap();
        assert_eq!(v, qv(&a0), "{symbol}");
        assert_eq!(
            sl2_action_proper(&torus, &v, &ah).unwrap().proper,
            proper,
            "{symbol}"
        );
    }
}

#[test]
fn sl5_orbit_membership() {
    let alg = LieAlgebraSpace::sl(5).unwrap();
    let torus = split_torus(&alg).unwrap();
    let ah = sl5_ah(&torus);
    assert!(
        in_weyl_orbit_of_subspace(&torus, &qv(&[2, 0, 0, 0, -2]), &ah)
            .unwrap()
            .member
    );
    assert!(
        !in_weyl_orbit_of_subspace(&torus, &qv(&[3, 1, 0, -1, -3]), &ah)
            .unwrap()
            .member
    );
    // (2,1,0,−1,−2) = ½(4,2,0,−2,−4)
    let w = in_weyl_orbit_of_subspace(&torus, &qv(&[2, 1, 0, -1, -2]), &ah).unwrap();
    assert!(w.member && w.witness.unwrap().is_identity());
}

#[test]
fn sl5_admits_no_proper_even_action() {
    let alg = LieAlgebraSpace::sl(5).unwrap();
    let torus = split_torus(&alg).unwrap();
    let ah = sl5_ah(&torus);
    assert!(benoist_criterion(&torus, &ah).unwrap().holds);
    let doc = report::check_report(
        alg.family(),
        &[qv(&[2, -2, 0, 0, 0]), qv(&[4, 2, 0, -2, -4])],
        &ReportOptions::default(),
    )
    .unwrap();
    let witness = doc.check("check.even_witness").unwrap();
    assert_eq!(
        witness.verdict,
        serde_json::json!("no even witness among partitions of 5")
    );
}

#[test]
fn hermitian_form_is_antidiagonal() {
    let b = hermitian_form(2, 1);
    assert_eq!(
        b,
        DMatrix::from_row_slice(3, 3, &[0., 0., 1., 0., 1., 0., 1., 0., 0.])
    );
}

#[test]
fn su32_weyl_group() {
    let alg = LieAlgebraSpace::su(3, 2).unwrap();
    let torus = split_torus(&alg).unwrap();
    assert_eq!((torus.rank(), torus.weyl().len()), (2, 8));
}

fn diag(entries: &[f64]) -> CMat {
    CMat::from_diagonal(&nalgebra::DVector::from_iterator(
        entries.len(),
        entries.iter().map(|&x| c64(x, 0.0)),
    ))
}

#[test]
fn su_triples() {
    let alg = LieAlgebraSpace::su(2, 1).unwrap();
    let t = rho1_su(&alg).unwrap();
    assert!(fro(&(&t.h - diag(&[1.0, 0.0, -1.0]))) == 0.0);
    let t2 = rho2_su(&alg).unwrap();
    // c₁ = √−1·√2 links the first two chain coordinates
    assert!((t2.e[(0, 1)] - c64(0.0, 2f64.sqrt())).norm() < 1e-15);

    let alg = LieAlgebraSpace::su(3, 2).unwrap();
    let t2 = rho2_su(&alg).unwrap();
    let mut d: Vec<f64> = (0..5).map(|i| t2.h[(i, i)].re).collect();
    d.sort_by(|a, b| b.partial_cmp(a).unwrap());
    assert_eq!(d, vec![4.0, 2.0, 0.0, -2.0, -4.0]);
    assert!(fro(&(&t2.h - CMat::from_diagonal(&t2.h.diagonal()))) == 0.0);

    let alg = LieAlgebraSpace::su(2, 2).unwrap();
    assert!(matches!(rho2_su(&alg), Err(Error::Undefined(_))));
}

#[test]
fn table_one_and_sigma() {
    for p in 1..=6 {
        for qq in 1..=p {
            let alg = LieAlgebraSpace::su(p, qq).unwrap();
            let t1 = rho1_su(&alg).unwrap();
            assert_eq!(
                sl2::is_even(&alg, &t1).unwrap(),
                p == qq,
                "su({p},{qq}) rho1"
            );
            let mut expected = vec![-1.0; qq];
            expected.extend(vec![1.0; p - qq]);
            expected.extend(vec![-1.0; qq]);
            let s = sl2::sigma(&alg, &t1).unwrap();
            assert!(fro(&(s - diag(&expected))) < 1e-12, "su({p},{qq})");
            if p > qq {
                let t2 = rho2_su(&alg).unwrap();
                assert!(sl2::is_even(&alg, &t2).unwrap());
                let s = sl2::sigma(&alg, &t2).unwrap();
                assert!(fro(&(s - diag(&vec![1.0; p + qq]))) < 1e-12);
            }
        }
    }
}

#[test]
fn genus_bounds() {
    for p in 1..=5 {
        for qq in 1..=p {
            let alg = LieAlgebraSpace::su(p, qq).unwrap();
            let (pi, qi) = (p as i64, qq as i64);
            let t1 = rho1_su(&alg).unwrap();
            let expected = (2 * qi * qi + (pi - qi).pow(2) - 1) as usize;
            assert_eq!(isotypic::genus_bound(&alg, &t1, None).unwrap(), expected);
            assert_eq!(alg.centralizer(&t1.h).unwrap().dim(), expected);
            if p > qq {
                let t2 = rho2_su(&alg).unwrap();
                let expected = ((pi - qi).pow(2) + 2 * qi - 1) as usize;
                assert_eq!(isotypic::genus_bound(&alg, &t2, None).unwrap(), expected);
                assert_eq!(alg.centralizer(&t2.h).unwrap().dim(), expected);
            }
        }
    }
    // the formula evaluates to 8 and 4 at (3,2)
    let alg = LieAlgebraSpace::su(3, 2).unwrap();
    assert_eq!(
        isotypic::genus_bound(&alg, &rho1_su(&alg).unwrap(), None).unwrap(),
        8
    );
    assert_eq!(
        isotypic::genus_bound(&alg, &rho2_su(&alg).unwrap(), None).unwrap(),
        4
    );
    // the zero homomorphism needs g ≥ dim G
    let alg = LieAlgebraSpace::sl(3).unwrap();
    assert_eq!(
        isotypic::genus_bound(&alg, &zero_triple(&alg), None).unwrap(),
        8
    );
}

#[test]
fn su_properness() {
    for p in 1..=6 {
        for qq in 1..=p {
            let alg = LieAlgebraSpace::su(p, qq).unwrap();
            let torus = split_torus(&alg).unwrap();
            let units: Vec<Vec<Q>> = (1..qq)
                .map(|i| (0..qq).map(|j| q((i == j) as i64)).collect())
                .collect();
            let ah = HSubalgebraTorus::new(&torus, &units).unwrap();
            assert!(!calabi_markus(&torus, &ah));
            assert!(benoist_criterion(&torus, &ah).unwrap().holds);
            let mut triples = vec![rho1_su(&alg).unwrap()];
            if p > qq {
                triples.push(rho2_su(&alg).unwrap());
            }
            for t in triples {
                let a0 = t.a0_vector(&torus, 1e-8).unwrap();
                assert!(
                    sl2_action_proper(&torus, &a0, &ah).unwrap().proper,
                    "su({p},{qq})"
                );
            }
            // 𝔞_𝔥 = 𝔞: only finite groups act properly
            let all: Vec<Vec<Q>> = (0..qq)
                .map(|i| (0..qq).map(|j| q((i == j) as i64)).collect())
                .collect();
            let full = HSubalgebraTorus::new(&torus, &all).unwrap();
            assert!(calabi_markus(&torus, &full));
            assert!(!benoist_criterion(&torus, &full).unwrap().holds);
        }
    }
}
