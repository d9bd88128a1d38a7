//! Property tests for the estimator invariants.

use num_complex::Complex64;
use proptest::prelude::*;
use sdce_estimator::{error_covariance, error_covariance_trace, rank_one_update_inverse};
use sdce_core::ComplexMatrix;

fn complex_entry() -> impl Strategy<Value = Complex64> {
    (-2.0f64..2.0, -2.0f64..2.0).prop_map(|(re, im)| Complex64::new(re, im))
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = ComplexMatrix> {
    proptest::collection::vec(complex_entry(), rows * cols)
        .prop_map(move |data| ComplexMatrix::new(rows, cols, data).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_one_update_matches_direct_inverse(
        b in matrix(4, 6),
        x in proptest::collection::vec(complex_entry(), 4),
    ) {
        let a = b.gram().add(&ComplexMatrix::scaled_identity(4, 1.0)).unwrap();
        let q = a.hpd_inverse().unwrap();
        let updated = rank_one_update_inverse(&q, &x);

        let mut a_plus = a;
        a_plus.add_outer(&x, &x);
        let prod = updated.mul(&a_plus).unwrap();
        prop_assert!(prod.max_abs_diff(&ComplexMatrix::identity(4)) < 1e-10);
        prop_assert!(updated.is_hermitian(1e-12));
    }

    #[test]
    fn covariance_trace_real_nonnegative(
        x_true in matrix(2, 4),
        x_hat in matrix(2, 4),
        sigma2 in 0.05f64..2.0,
    ) {
        let tr = error_covariance_trace(&x_true, &x_hat, sigma2).unwrap();
        prop_assert!(tr >= 0.0, "trace {tr}");
        let cov = error_covariance(&x_true, &x_hat, sigma2).unwrap();
        prop_assert!(cov.is_hermitian(1e-10));
    }
}
