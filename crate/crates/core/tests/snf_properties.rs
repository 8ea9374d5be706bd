use lasagna_core::intlinalg::{
    cokernel, determinant, kernel_basis, rank_rational, smith_normal_form, solve, IntMatrix,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn sparse_matrix(max_dim: usize) -> impl Strategy<Value = IntMatrix> {
    (0..=max_dim, 0..=max_dim).prop_flat_map(|(r, c)| {
        proptest::collection::vec(prop_oneof![3 => Just(0i64), 1 => -5i64..=5], r * c).prop_map(move |vals| {
            let rows: Vec<Vec<i64>> = vals.chunks(c.max(1)).take(r).map(|ch| ch.to_vec()).collect();
            if c == 0 {
                IntMatrix::zeros(r, 0)
            } else {
                IntMatrix::from_rows(&rows)
            }
        })
    })
}

/// Determinantal divisors: `d_1 ... d_k` is the gcd of the `k x k` minors.
/// Exhaustive over minors, so only for small matrices.
fn invariant_factors_by_minors(m: &IntMatrix) -> Vec<BigInt> {
    fn combos(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        if n < k {
            return vec![];
        }
        let mut out = combos(n - 1, k);
        for mut c in combos(n - 1, k - 1) {
            c.push(n - 1);
            out.push(c);
        }
        out
    }
    let mut divisors = vec![BigInt::one()];
    for k in 1..=m.rows().min(m.cols()) {
        let mut g = BigInt::zero();
        for rs in combos(m.rows(), k) {
            for cs in combos(m.cols(), k) {
                g = g.gcd(&determinant(&m.select_rows(&rs).select_columns(&cs)));
            }
        }
        if g.is_zero() {
            break;
        }
        divisors.push(g);
    }
    divisors.windows(2).map(|w| &w[1] / &w[0]).collect()
}

#[test]
fn desk_example_matches_minors() {
    let m = IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]);
    assert_eq!(invariant_factors_by_minors(&m), vec![BigInt::from(2), BigInt::from(4)]);
    assert_eq!(smith_normal_form(&m).diagonal, vec![BigInt::from(2), BigInt::from(4)]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn snf_contract(m in sparse_matrix(30)) {
        let snf = smith_normal_form(&m);
        let (u, v) = (snf.u.clone().unwrap(), snf.v.clone().unwrap());
        prop_assert_eq!(u.mul(&m).mul(&v), snf.padded());
        prop_assert!(determinant(&u).abs().is_one());
        prop_assert!(determinant(&v).abs().is_one());
        for w in snf.diagonal.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        prop_assert!(snf.diagonal.iter().all(|d| d.is_positive()));
    }

    #[test]
    fn cokernel_rank_adds_up(m in sparse_matrix(20)) {
        let c = cokernel(&m);
        prop_assert_eq!(c.free_rank + rank_rational(&m), m.rows());
        let snf = smith_normal_form(&m);
        prop_assert_eq!(snf.rank(), rank_rational(&m));
        let torsion: Vec<BigInt> = snf.diagonal.into_iter().filter(|d| !d.is_one()).collect();
        prop_assert_eq!(c.torsion, torsion);
    }

    #[test]
    fn snf_is_permutation_invariant(m in sparse_matrix(12), seed in any::<u64>()) {
        let mut rows: Vec<usize> = (0..m.rows()).collect();
        let mut cols: Vec<usize> = (0..m.cols()).collect();
        let mut s = seed;
        for v in [&mut rows, &mut cols] {
            for i in (1..v.len()).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                v.swap(i, (s >> 33) as usize % (i + 1));
            }
        }
        let p = m.select_rows(&rows).select_columns(&cols);
        prop_assert_eq!(smith_normal_form(&m).diagonal, smith_normal_form(&p).diagonal);
    }

    #[test]
    fn snf_matches_determinantal_divisors(m in sparse_matrix(4)) {
        prop_assert_eq!(smith_normal_form(&m).diagonal, invariant_factors_by_minors(&m));
    }

    #[test]
    fn kernel_and_solve(m in sparse_matrix(10)) {
        let k = kernel_basis(&m);
        prop_assert!(m.mul(&k).is_zero());
        prop_assert_eq!(k.cols() + rank_rational(&m), m.cols());
        // Any right-hand side in the image is solvable.
        let x = IntMatrix::from_columns(m.cols(), &[(0..m.cols()).map(|i| (i, BigInt::from(i as i64 % 3 - 1))).collect()]);
        let b = m.mul(&x);
        let y = solve(&m, &b).unwrap();
        prop_assert_eq!(m.mul(&y), b);
    }
}
