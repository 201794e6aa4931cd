mod common;

use cke_core::linalg::{solve_linear, BigRational, QMatrix, QVector, SolveResult};
use common::small_rational;
use num_traits::Zero;
use proptest::prelude::*;

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = QMatrix> {
    proptest::collection::vec(small_rational(), rows * cols)
        .prop_map(move |d| QMatrix::from_vec(rows, cols, d))
}

fn dims() -> impl Strategy<Value = (usize, usize, usize, usize)> {
    (1usize..5, 1usize..5, 1usize..5, 1usize..5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_is_associative((a, b, c) in dims().prop_flat_map(|(r, k, l, s)| (matrix(r, k), matrix(k, l), matrix(l, s)))) {
        let left = a.mul(&b).unwrap().mul(&c).unwrap();
        let right = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn inverse_roundtrip(a in (1usize..6).prop_flat_map(|n| matrix(n, n))) {
        let n = a.rows();
        match a.inverse() {
            Ok(inv) => {
                prop_assert_eq!(a.mul(&inv).unwrap(), QMatrix::identity(n));
                prop_assert_eq!(inv.mul(&a).unwrap(), QMatrix::identity(n));
                prop_assert!(!a.determinant().unwrap().is_zero());
            }
            Err(_) => {
                prop_assert!(a.determinant().unwrap().is_zero());
                prop_assert!(a.rank() < n);
            }
        }
    }

    #[test]
    fn rank_of_transpose(a in (1usize..6, 1usize..6).prop_flat_map(|(r, c)| matrix(r, c))) {
        prop_assert_eq!(a.rank(), a.transpose().rank());
    }

    #[test]
    fn determinant_is_multiplicative((a, b) in (1usize..5).prop_flat_map(|n| (matrix(n, n), matrix(n, n)))) {
        let ab = a.mul(&b).unwrap().determinant().unwrap();
        prop_assert_eq!(ab, a.determinant().unwrap() * b.determinant().unwrap());
    }

    #[test]
    fn solve_reproduces_consistent_rhs(
        (a, x) in (1usize..7, 1usize..5).prop_flat_map(|(r, c)| (matrix(r, c), proptest::collection::vec(small_rational(), c)))
    ) {
        let x = QVector::new(x);
        let b = a.mul_vec(&x).unwrap();
        match solve_linear(&a, &b).unwrap() {
            SolveResult::Unique(y) => {
                prop_assert_eq!(a.rank(), a.cols());
                prop_assert_eq!(y, x);
            }
            SolveResult::Affine { particular, kernel_basis } => {
                prop_assert_eq!(kernel_basis.len(), a.cols() - a.rank());
                prop_assert_eq!(a.mul_vec(&particular).unwrap(), b.clone());
                for k in &kernel_basis {
                    prop_assert!(a.mul_vec(k).unwrap().is_zero());
                }
            }
            SolveResult::Inconsistent => prop_assert!(false, "constructed rhs is in the column space"),
        }
    }

    #[test]
    fn inconsistency_detected(a in (2usize..6, 1usize..4).prop_flat_map(|(r, c)| matrix(r, c))) {
        // Append a zero row with rhs 1.
        let mut rows: Vec<QVector> = (0..a.rows()).map(|r| a.row(r)).collect();
        rows.push(QVector::zeros(a.cols()));
        let ext = QMatrix::from_rows(&rows);
        let mut rhs = vec![BigRational::zero(); a.rows()];
        rhs.push(common::rat(1, 1));
        prop_assert_eq!(solve_linear(&ext, &QVector::new(rhs)).unwrap(), SolveResult::Inconsistent);
    }
}

#[test]
fn pow_negative_is_inverse_power() {
    let a = QMatrix::from_ints(2, 2, &[2, 1, 1, 1]);
    let p = a.pow(-3).unwrap();
    assert_eq!(p.mul(&a.pow(3).unwrap()).unwrap(), QMatrix::identity(2));
}

fn int_matrix(n: usize) -> impl Strategy<Value = QMatrix> {
    proptest::collection::vec(-9i64..=9, n * n).prop_map(move |d| QMatrix::from_ints(n, n, &d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn integer_inverse_roundtrip(a in (1usize..7).prop_flat_map(int_matrix)) {
        let n = a.rows();
        match a.inverse() {
            Ok(inv) => {
                prop_assert_eq!(a.mul(&inv).unwrap(), QMatrix::identity(n));
                prop_assert_eq!(inv.determinant().unwrap() * a.determinant().unwrap(), common::rat(1, 1));
            }
            Err(_) => prop_assert!(a.determinant().unwrap().is_zero()),
        }
    }
}
