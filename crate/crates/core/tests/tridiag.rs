mod common;

use proptest::prelude::*;

use common::*;
use recpos::tridiag::*;
use recpos::{DenseMatrixQ, Rational, Recurrence, TridiagonalMatrix};

fn zs(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| z(x)).collect()
}

#[test]
fn m0_szego() {
    let rec = corpus_rec("szego");
    let t = m0_truncation(&rec, 3).unwrap();
    assert_eq!(t.diag(), zs(&[12, 186, 510]).as_slice());
    assert_eq!(t.sup(), zs(&[648, 2835]).as_slice());
    assert_eq!(t.sub(), zs(&[1, 8]).as_slice());
    assert!(matches!(m0_truncation(&rec, 1), Err(TridiagError::OrderTooSmall(1))));
}

#[test]
fn m0_minors_are_scaled_terms() {
    for key in ["szego", "cooper", "apery", "a006077"] {
        let rec = corpus_rec(key);
        let k = 12;
        let minors = m0_truncation(&rec, k).unwrap().leading_principal_minors();
        let u = rec.terms(k);
        let mut scale = z(1);
        for j in 1..=k {
            if j > 1 {
                scale *= rec.a().eval_int(j as i64 - 1);
            }
            assert_eq!(minors[j - 1], &scale * &u[j], "{} D_{}", key, j);
        }
    }
}

#[test]
fn m1_minors_are_terms() {
    for key in ["szego", "lewy_askey", "kauers_zeilberger", "laguerre(1)"] {
        let rec = corpus_rec(key);
        let minors = m1_truncation(&rec, 15).unwrap().leading_principal_minors();
        assert_eq!(minors, rec.terms(15)[1..].to_vec(), "{}", key);
    }
    let one = m1_truncation(&corpus_rec("szego"), 1).unwrap();
    assert_eq!(one.size(), 1);
    assert_eq!(one.diag(), zs(&[12]).as_slice());
}

#[test]
fn tn_examples() {
    assert!(is_tn_leading(&TridiagonalMatrix::identity(4).unwrap()));
    assert!(is_tn_leading(&TridiagonalMatrix::toeplitz(5, z(1), z(2), z(1)).unwrap()));
    let t = TridiagonalMatrix::toeplitz(3, z(1), z(1), z(1)).unwrap();
    assert!(!is_tn_leading(&t));
    assert_eq!(is_tn_contiguous(&t), Ok(false));
    assert_eq!(is_tn_principal(&t), Ok(false));
    // Reducible: zero coupling splits the matrix into TN blocks.
    let t = TridiagonalMatrix::new(zs(&[1, 0, 2]), zs(&[0, 3]), zs(&[5, 0])).unwrap();
    assert!(is_tn_leading(&t));
    // Vanishing leading minor with a negative later block.
    let t = TridiagonalMatrix::new(zs(&[0, 1, 1]), zs(&[0, 1]), zs(&[0, 2])).unwrap();
    assert!(!is_tn_leading(&t));
    let neg = TridiagonalMatrix::new(zs(&[1, 1]), zs(&[-1]), zs(&[1])).unwrap();
    assert!(!is_tn_leading(&neg));
    assert_eq!(is_tn_contiguous(&neg), Err(TridiagError::NegativeEntry(0, 1)));
}

#[test]
fn pf3_examples() {
    assert_eq!(pf3_check(&z(1), &z(2), &z(1)), Ok(true));
    assert_eq!(pf3_check(&z(1), &z(1), &z(1)), Ok(false));
    assert_eq!(pf3_check(&z(0), &z(0), &z(7)), Ok(true));
    assert_eq!(pf3_check(&z(-1), &z(2), &z(1)), Err(TridiagError::NegativeInput));
    // (1, 3, 1) is PF, so its Toeplitz matrix is TN.
    assert!(is_tn_leading(&TridiagonalMatrix::toeplitz(6, z(1), z(3), z(1)).unwrap()));
}

#[test]
fn shape_errors() {
    assert!(matches!(TridiagonalMatrix::new(zs(&[1, 2]), zs(&[1]), vec![]), Err(TridiagError::Shape(_))));
    assert!(matches!(TridiagonalMatrix::new(vec![], vec![], vec![]), Err(TridiagError::Shape(_))));
    assert!(j_truncation(&corpus_rec("szego"), 0, 3).is_err());
    let d = DenseMatrixQ::from_rows(vec![zs(&[1, 2])]).unwrap();
    assert!(desnanot_jacobi_check(&d).is_err());
}

#[test]
fn desnanot_jacobi_on_minor_chain() {
    // With ones below the diagonal, the off-corner minors are products of γ.
    let rec = corpus_rec("szego");
    let k = 10;
    let j = j_truncation(&rec, 1, k).unwrap();
    let minors: Vec<Vec<Rational>> = (0..k).map(|s| j.contiguous_minors_from(s)).collect();
    let d = |s: usize, e: usize| -> Rational {
        if e < s {
            z(1)
        } else {
            minors[s][e - s].clone()
        }
    };
    for s in 0..k - 1 {
        for e in s + 1..k {
            let gammas: Rational = j.sup()[s..e].iter().product();
            assert_eq!(&d(s, e) * &d(s + 1, e - 1), &d(s, e - 1) * &d(s + 1, e) - gammas);
        }
    }
    assert_eq!(desnanot_jacobi_check(&j.to_dense()), Ok(true));
}

#[test]
fn j0_matches_convergent_denominators() {
    let rec = corpus_rec("cooper");
    let t = j0_truncation(&rec, &z(3), 6).unwrap();
    let cs = recpos::contfrac::convergents(&rec, 5, &z(3)).unwrap();
    let minors = t.leading_principal_minors();
    for n in 0..6 {
        assert_eq!(minors[n], cs[n].numer);
    }
}

#[test]
fn json_shape() {
    let t = m0_truncation(&corpus_rec("szego"), 2).unwrap();
    let v = serde_json::to_value(&t).unwrap();
    assert_eq!(v, serde_json::json!({"diag": ["12", "186"], "super": ["648"], "sub": ["1"]}));
    let back: TridiagonalMatrix = serde_json::from_value(v).unwrap();
    assert_eq!(back, t);
}

fn int_rows(t: &TridiagonalMatrix) -> Vec<Vec<i128>> {
    let k = t.size();
    (0..k)
        .map(|i| (0..k).map(|j| t.get(i, j).to_integer().try_into().unwrap()).collect())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn leading_minors_match_dense(seed in any::<u64>(), k in 1usize..=8) {
        let (rows, t) = random_irreducible_tridiagonal(&mut rng(seed), k);
        let minors = t.leading_principal_minors();
        for r in 1..=k {
            let block: Vec<Vec<i128>> = rows[..r].iter().map(|row| row[..r].to_vec()).collect();
            prop_assert_eq!(minors[r - 1].clone(), z(det_i128(&block) as i64));
        }
        prop_assert_eq!(t.to_dense().determinant().unwrap(), minors[k - 1].clone());
    }

    #[test]
    fn tn_tests_agree(seed in any::<u64>(), k in 1usize..=5) {
        let (rows, t) = random_irreducible_tridiagonal(&mut rng(seed), k);
        let truth = tn_all_minors(&rows);
        prop_assert_eq!(is_tn_leading(&t), truth);
        prop_assert_eq!(is_tn_contiguous(&t).unwrap(), truth);
        prop_assert_eq!(is_tn_principal(&t).unwrap(), truth);
        prop_assert_eq!(int_rows(&t), rows);
    }

    #[test]
    fn dense_desnanot_jacobi(entries in prop::collection::vec(-9i64..9, 25), k in 2usize..=5) {
        let rows: Vec<Vec<Rational>> = (0..k).map(|i| (0..k).map(|j| z(entries[i * 5 + j])).collect()).collect();
        let m = DenseMatrixQ::from_rows(rows).unwrap();
        prop_assert_eq!(desnanot_jacobi_check(&m), Ok(true));
    }

    #[test]
    fn truncation_tn_iff_terms_positive(
        a in (1i64..4, 0i64..4), b in (1i64..15, 0i64..15), c in (1i64..5, 0i64..5),
        u0 in 1i64..5, u1 in 0i64..40, k in 1usize..=7
    ) {
        let rec = Recurrence::new(poly(&[a.1 + 1, a.0]), poly(&[b.1 + 1, b.0]), poly(&[c.1, c.0]), z(u0), z(u1)).unwrap();
        let t = m1_truncation(&rec, k).unwrap();
        let u = rec.terms(k);
        let tn = is_tn_leading(&t);
        if u[1..].iter().all(|x| x > &z(0)) {
            prop_assert!(tn);
        } else if u[1..].iter().all(|x| x != &z(0)) {
            prop_assert!(!tn);
        } else if tn {
            // Zero terms: TN still forces nonnegativity.
            prop_assert!(u[1..].iter().all(|x| x >= &z(0)));
        }
        if k <= 5 {
            prop_assert_eq!(is_tn_principal(&t).unwrap(), tn);
        }
    }
}
