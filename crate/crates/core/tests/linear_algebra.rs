mod common;

use common::{dense, dense_rank};
use num_traits::Zero;
use proptest::prelude::*;
use tdlc_core::ratlin::{cohomology_dims, homology_dims, kernel_basis, rank, rat, RatLinError};
use tdlc_core::{Rational, RationalMatrix};

fn matrix_strategy() -> impl Strategy<Value = RationalMatrix> {
    (1usize..7, 1usize..7).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(-3i64..4, c), r)
            .prop_map(move |rows| RationalMatrix::from_int_rows(c, &rows).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn rank_matches_dense_oracle(m in matrix_strategy()) {
        prop_assert_eq!(rank(&m), dense_rank(&dense(&m)));
        prop_assert_eq!(rank(&m), rank(&m.transpose()));
    }

    #[test]
    fn kernel_is_a_basis_of_the_null_space(m in matrix_strategy()) {
        let basis = kernel_basis(&m);
        prop_assert_eq!(basis.len() + rank(&m), m.cols());
        for v in &basis {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(Zero::is_zero));
        }
        prop_assert_eq!(dense_rank(&basis), basis.len());
    }

    #[test]
    fn square_inverse_round_trips(m in (1usize..6).prop_flat_map(|n| {
        proptest::collection::vec(proptest::collection::vec(-4i64..5, n), n)
            .prop_map(move |rows| RationalMatrix::from_int_rows(n, &rows).unwrap())
    })) {
        match m.inverse() {
            Some(inv) => {
                prop_assert_eq!(rank(&m), m.rows());
                prop_assert_eq!(m.mul(&inv).unwrap(), RationalMatrix::identity(m.rows()));
            }
            None => prop_assert!(rank(&m) < m.rows()),
        }
    }
}

#[test]
fn homology_of_a_circle_chain_complex() {
    // ∂_1 of the triangle boundary: H_0 = H_1 = Q.
    let d1 = RationalMatrix::from_int_rows(3, &[vec![-1, -1, 0], vec![1, 0, -1], vec![0, 1, 1]]).unwrap();
    let d0 = RationalMatrix::zeros(0, 3);
    assert_eq!(homology_dims(&[d0, d1.clone()]).unwrap(), vec![1, 1]);
    let top = RationalMatrix::zeros(0, 3);
    assert_eq!(cohomology_dims(&[d1.transpose(), top]).unwrap(), vec![1, 1]);
}

#[test]
fn non_complexes_are_rejected() {
    let d1 = RationalMatrix::from_int_rows(1, &[vec![1]]).unwrap();
    let d2 = RationalMatrix::from_int_rows(1, &[vec![1]]).unwrap();
    assert_eq!(
        homology_dims(&[RationalMatrix::zeros(0, 1), d1, d2]),
        Err(RatLinError::CompositionNonZero { degree: 1 })
    );
}

#[test]
fn large_entries_stay_exact() {
    let big = Rational::from_integer(num_bigint::BigInt::from(10u8).pow(40));
    let m = RationalMatrix::from_rows(2, &[vec![big.clone(), rat(1)], vec![rat(1), Rational::zero()]]).unwrap();
    let inv = m.inverse().unwrap();
    assert_eq!(inv.get(1, 1), -big);
}
