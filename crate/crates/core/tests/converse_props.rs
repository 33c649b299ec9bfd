//! Property tests for the finiteness direction: the bounded window really
//! does capture every progression-constrained solution, across a random
//! family of matrices with nonzero row sums.

use apsolve_core::converse_analysis::{
    classify_matrix, enumerate_constrained_solutions, violating_row, Classification,
};
use apsolve_core::exact_linalg::Matrix;
use apsolve_core::set_sources::{PrimeSource, SetSource};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_rows(rng: &mut ChaCha8Rng) -> Vec<Vec<i64>> {
    let m = rng.gen_range(1..=2);
    let n = rng.gen_range(2..=4);
    (0..m).map(|_| (0..n).map(|_| rng.gen_range(-3i64..=3)).collect()).collect()
}

#[test]
fn bounded_window_agrees_with_the_scan_on_a_random_family() {
    let primes = PrimeSource::with_bound(400).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0xc0_4ffe);
    let mut tested = 0;
    while tested < 40 {
        let rows = random_rows(&mut rng);
        let matrix: Matrix<i64> = Matrix::from_i64_rows(&rows).unwrap();
        let Some(violation) = violating_row(&matrix) else {
            continue;
        };
        let k = rng.gen_range(3u64..=5);
        if violation.abs_sum * k as i64 > 60 {
            continue;
        }
        tested += 1;
        let report = enumerate_constrained_solutions(&matrix, k, &primes, 300).unwrap();
        assert!(report.brute_force_agreement, "disagreement for {rows:?} k={k}");
        assert_eq!(
            report.candidates_examined,
            (report.base_bound + 1) * report.step_bound
        );
        assert_eq!(report.lambda_space_per_ap, (k as u128).pow(matrix.ncols() as u32));
        for s in &report.solutions {
            assert!(matrix.annihilates(&s.x));
            assert!(s.x.iter().any(|v| *v != s.x[0]));
            assert_eq!(s.witness.len(), k);
            assert!(*s.witness.base() as u64 <= report.base_bound);
            assert!(*s.witness.step() as u64 <= report.step_bound);
            assert_eq!(
                num_integer::gcd(*s.witness.base() as u64, *s.witness.step() as u64),
                1
            );
            for v in &s.x {
                assert!(s.witness.contains(v));
                assert!(primes.contains(*v as u64).unwrap());
            }
        }
    }
}

#[test]
fn verdicts_partition_random_matrices() {
    let primes = PrimeSource::with_bound(300).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0x9a17);
    for _ in 0..60 {
        let rows = random_rows(&mut rng);
        let matrix: Matrix<i64> = Matrix::from_i64_rows(&rows).unwrap();
        if let Some(v) = violating_row(&matrix) {
            if v.abs_sum * 3 > 45 {
                continue;
            }
        }
        let verdict = classify_matrix(&matrix, 3, &primes, 150, 2).unwrap();
        let sums_vanish = matrix.row_sums().iter().all(|s| *s == 0);
        match verdict {
            Classification::InfiniteFamily(_) => {
                assert!(matrix.is_null_diagonal());
            }
            Classification::Finite(report) => {
                assert!(!sums_vanish);
                assert!(report.brute_force_agreement);
            }
            Classification::Degenerate(check) => {
                assert!(sums_vanish);
                assert!(!matrix.is_null_diagonal());
                assert_eq!(matrix.nullspace_dimension(), 1);
                assert_eq!(check.solutions_found, 0);
            }
        }
    }
}
