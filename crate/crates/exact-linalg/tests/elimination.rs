use exact_arith::{PrimeField, Rationals, Ring};
use exact_linalg::{ExactMatrix, RowEchelon};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn mat(rows: &[Vec<i64>]) -> ExactMatrix<Rationals> {
    let cols = rows.first().map_or(0, |r| r.len());
    ExactMatrix::from_dense(
        Rationals,
        cols,
        rows.iter()
            .map(|r| r.iter().map(|&x| q(x)).collect())
            .collect(),
    )
    .unwrap()
}

#[test]
fn vandermonde_full_rank() {
    // det V = prod_{i<j} (x_j - x_i), nonzero on distinct nodes.
    for nodes in [vec![0i64, 1, 2], vec![-3, 5, 7, 11], vec![1, 2, 4, 8, 16]] {
        let mut prod = BigInt::from(1);
        for i in 0..nodes.len() {
            for j in i + 1..nodes.len() {
                prod *= nodes[j] - nodes[i];
            }
        }
        assert!(!prod.is_zero());
        let rows: Vec<Vec<i64>> = nodes
            .iter()
            .map(|&x| (0..nodes.len() as u32).map(|k| x.pow(k)).collect())
            .collect();
        assert_eq!(mat(&rows).rank(), nodes.len());
    }
    // Repeated node drops the rank by one.
    let rows: Vec<Vec<i64>> = [2i64, 3, 2]
        .iter()
        .map(|&x| (0..3u32).map(|k| x.pow(k)).collect())
        .collect();
    assert_eq!(mat(&rows).rank(), 2);
}

#[test]
fn cramer_oracle() {
    let (a, b, c, d) = (3i64, -2, 5, 7);
    let (e, f) = (4i64, -9);
    let det = q(a * d - b * c);
    let x0 = q(e * d - b * f) / &det;
    let x1 = q(a * f - e * c) / &det;
    let sol = mat(&[vec![a, b], vec![c, d]])
        .solve(&[q(e), q(f)])
        .unwrap()
        .unwrap();
    assert_eq!(sol, vec![x0, x1]);
}

#[test]
fn underdetermined_solve_resubstitutes() {
    let a = mat(&[vec![1, 2, 3], vec![2, 4, 6]]);
    let b = vec![q(6), q(12)];
    let x = a.solve(&b).unwrap().unwrap();
    assert_eq!(a.mul_vec(&x).unwrap(), b);
    assert_eq!(a.solve(&[q(1), q(3)]).unwrap(), None);
}

#[test]
fn kernel_over_prime_field() {
    let f = PrimeField::new(7).unwrap();
    // 3x + 4y = 0 over F_7: kernel spanned by (1, 1) since 3 + 4 = 7.
    let m = ExactMatrix::from_dense(f, 2, vec![vec![3, 4]]).unwrap();
    let k = m.kernel_basis();
    assert_eq!(k, vec![vec![1, 1]]);
}

#[test]
fn incremental_echelon() {
    let mut e = RowEchelon::new(Rationals, 3);
    assert!(e.insert_dense(&[q(1), q(1), q(0)]));
    assert!(e.insert_dense(&[q(0), q(1), q(1)]));
    assert!(!e.insert_dense(&[q(1), q(2), q(1)]));
    assert!(e.contains(vec![(0, q(2)), (1, q(3)), (2, q(1))]));
    assert_eq!(e.rank(), 2);
}

fn small_matrix() -> impl Strategy<Value = (usize, Vec<Vec<i64>>)> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
        // Bias towards zeros so rank deficiency is common.
        let entry = prop_oneof![3 => Just(0i64), 2 => -3i64..4];
        (
            Just(c),
            prop::collection::vec(prop::collection::vec(entry, c), r),
        )
    })
}

proptest! {
    #[test]
    fn rank_of_transpose((_, rows) in small_matrix()) {
        let a = mat(&rows);
        prop_assert_eq!(a.rank(), a.transpose().rank());
        let f = PrimeField::new(5).unwrap();
        let am = ExactMatrix::from_dense(f, rows[0].len(), rows.iter().map(|r| r.iter().map(|&x| f.from_i64(x)).collect()).collect()).unwrap();
        prop_assert_eq!(am.rank(), am.transpose().rank());
    }

    #[test]
    fn kernel_vectors_annihilate((c, rows) in small_matrix()) {
        let a = mat(&rows);
        let k = a.kernel_basis();
        prop_assert_eq!(a.rank() + k.len(), c);
        for v in &k {
            prop_assert!(a.mul_vec(v).unwrap().iter().all(|e| e.is_zero()));
        }
        // Kernel vectors are independent.
        prop_assert_eq!(mat_from_rat(&k, c).rank(), k.len());
    }

    #[test]
    fn solve_resubstitutes((c, rows) in small_matrix(), x in prop::collection::vec(-5i64..6, 5)) {
        let a = mat(&rows);
        let x: Vec<BigRational> = x[..c].iter().map(|&v| q(v)).collect();
        let b = a.mul_vec(&x).unwrap();
        let sol = a.solve(&b).unwrap().expect("consistent by construction");
        prop_assert_eq!(a.mul_vec(&sol).unwrap(), b);
    }

    #[test]
    fn inverse_via_solve(rows in prop::collection::vec(prop::collection::vec(-4i64..5, 3), 3)) {
        let a = mat(&rows);
        if a.rank() == 3 {
            for i in 0..3 {
                let mut e = vec![q(0); 3];
                e[i] = Rationals.one();
                let col = a.solve(&e).unwrap().unwrap();
                prop_assert_eq!(a.mul_vec(&col).unwrap(), e);
            }
        } else {
            prop_assert!(!a.kernel_basis().is_empty());
        }
    }
}

fn mat_from_rat(rows: &[Vec<BigRational>], cols: usize) -> ExactMatrix<Rationals> {
    ExactMatrix::from_dense(Rationals, cols, rows.to_vec()).unwrap()
}
