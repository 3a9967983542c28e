//! Invariants of the dense symmetric eigensolver on random integer
//! matrices: eigenvalue count, ordering, and conservation of trace and
//! Frobenius norm.

use num_traits::ToPrimitive;
use prefix_spectra::spectra::jacobi;
use prefix_spectra::ExactMatrix;
use proptest::prelude::*;

fn symmetric_matrix() -> impl Strategy<Value = ExactMatrix> {
    (1usize..=12).prop_flat_map(|n| {
        proptest::collection::vec(-20i64..=20, n * n).prop_map(move |entries| {
            ExactMatrix::from_fn(n, n, |i, j| {
                let (a, b) = (entries[i * n + j], entries[j * n + i]);
                num_bigint::BigInt::from(a + b)
            })
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn eigenvalues_conserve_trace_and_norm(a in symmetric_matrix()) {
        let n = a.rows();
        let vals = jacobi::eigenvalues(&a).unwrap();
        prop_assert_eq!(vals.len(), n);
        prop_assert!(vals.windows(2).all(|w| w[0] >= w[1]));

        let trace = a.trace().to_f64().unwrap();
        let got_trace: f64 = vals.iter().sum();
        let mut frob = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let x = a.get(i, j).to_f64().unwrap();
                frob += x * x;
            }
        }
        let got_frob: f64 = vals.iter().map(|x| x * x).sum();

        let scale = frob.sqrt().max(1.0);
        prop_assert!((trace - got_trace).abs() <= 1e-6 * scale, "{trace} vs {got_trace}");
        prop_assert!((frob - got_frob).abs() <= 1e-6 * frob.max(1.0), "{frob} vs {got_frob}");
    }

    #[test]
    fn eigenvalues_shift_with_the_diagonal(a in symmetric_matrix(), shift in -9i64..=9) {
        let n = a.rows();
        let shifted = a.add(&ExactMatrix::identity(n).scale(shift)).unwrap();
        let base = jacobi::eigenvalues(&a).unwrap();
        let moved = jacobi::eigenvalues(&shifted).unwrap();
        for (x, y) in base.iter().zip(&moved) {
            prop_assert!((x + shift as f64 - y).abs() <= 1e-7 * (1.0 + x.abs()));
        }
    }
}
