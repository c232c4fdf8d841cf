use num_bigint::BigUint;
use proptest::prelude::*;

use motzkin::linalg::coo::{parse_matrix, write_matrix};
use motzkin::linalg::rational::{parse, ratio, render};
use motzkin::linalg::{kernel_basis, rank, OperatorMatrix, Rational};
use motzkin::paths::{enumerate_free_paths, enumerate_motzkin, motzkin_number, trinomial, Path};

fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(a, b)| ratio(a, b))
}

fn matrix(dim: usize) -> impl Strategy<Value = OperatorMatrix> {
    // roughly half the entries zero so kernels are often nontrivial
    prop::collection::vec(prop_oneof![Just(ratio(0, 1)), rational()], dim * dim).prop_map(move |cells| {
        let dense: Vec<Vec<Rational>> = cells.chunks(dim).map(|r| r.to_vec()).collect();
        OperatorMatrix::from_dense(&dense).unwrap()
    })
}

fn any_matrix() -> impl Strategy<Value = OperatorMatrix> {
    (1usize..=5).prop_flat_map(matrix)
}

proptest! {
    #[test]
    fn jacobi_identity(a in matrix(3), b in matrix(3), c in matrix(3)) {
        let t1 = a.commutator(&b).unwrap().commutator(&c).unwrap();
        let t2 = b.commutator(&c).unwrap().commutator(&a).unwrap();
        let t3 = c.commutator(&a).unwrap().commutator(&b).unwrap();
        prop_assert!(t1.add(&t2).unwrap().add(&t3).unwrap().is_zero());
    }

    #[test]
    fn kron_associative(a in matrix(2), b in matrix(2), c in matrix(3)) {
        prop_assert_eq!(a.kron(&b).kron(&c), a.kron(&b.kron(&c)));
    }

    #[test]
    fn kron_mixed_product(a in matrix(2), b in matrix(3), c in matrix(2), d in matrix(3)) {
        let lhs = a.kron(&b).matmul(&c.kron(&d)).unwrap();
        let rhs = a.matmul(&c).unwrap().kron(&b.matmul(&d).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn matmul_associative(a in matrix(3), b in matrix(3), c in matrix(3)) {
        prop_assert_eq!(
            a.matmul(&b).unwrap().matmul(&c).unwrap(),
            a.matmul(&b.matmul(&c).unwrap()).unwrap()
        );
    }

    #[test]
    fn kernel_vectors_are_annihilated_and_independent(m in any_matrix()) {
        let kernel = kernel_basis(&m);
        for v in &kernel {
            prop_assert!(m.apply(v).unwrap().is_zero());
        }
        prop_assert_eq!(motzkin::linalg::elimination::vector_rank(&kernel), kernel.len());
        prop_assert_eq!(rank(&m) + kernel.len(), m.dim());
    }

    #[test]
    fn rank_of_transpose(m in any_matrix()) {
        prop_assert_eq!(rank(&m), rank(&m.transpose()));
    }

    #[test]
    fn render_parse_round_trip(q in rational()) {
        prop_assert_eq!(parse(&render(&q)).unwrap(), q);
    }

    #[test]
    fn coo_round_trip(m in any_matrix()) {
        prop_assert_eq!(parse_matrix(&write_matrix(&m)).unwrap(), m);
    }

    #[test]
    fn basis_index_round_trip(n in 1usize..=6, seed in any::<usize>()) {
        let index = seed % 3usize.pow(n as u32);
        let path = Path::from_basis_index(n, index);
        prop_assert_eq!(path.len(), n);
        prop_assert_eq!(path.basis_index(), index);
        let word = path.to_string();
        prop_assert_eq!(word.parse::<Path>().unwrap(), path);
    }
}

/// Motzkin numbers by the three-term recurrence.
fn motzkin_oracle(n: usize) -> u64 {
    let mut m = vec![1u64, 1];
    for k in 2..=n as u64 {
        let next = ((2 * k + 1) * m[k as usize - 1] + (3 * k - 3) * m[k as usize - 2]) / (k + 2);
        m.push(next);
    }
    m[n]
}

/// Coefficients of `(x⁻¹ + 1 + x)ⁿ`, indexed from `x⁻ⁿ`.
fn trinomial_row(n: usize) -> Vec<u64> {
    let mut row = vec![1u64];
    for _ in 0..n {
        let mut next = vec![0u64; row.len() + 2];
        for (i, c) in row.iter().enumerate() {
            for d in 0..3 {
                next[i + d] += c;
            }
        }
        row = next;
    }
    row
}

#[test]
fn motzkin_counts_match_recurrence() {
    for n in 1..=10 {
        assert_eq!(motzkin_number(n).unwrap(), BigUint::from(motzkin_oracle(n)));
        let paths = enumerate_motzkin(n).unwrap();
        assert_eq!(paths.len() as u64, motzkin_oracle(n));
        assert!(paths.iter().all(|p| p.is_motzkin() && p.heights().iter().all(|&h| h >= 0)));
    }
}

#[test]
fn free_path_counts_are_trinomials() {
    for n in 1..=7 {
        let row = trinomial_row(n);
        let mut total = 0;
        for k in -(n as i64)..=n as i64 {
            let expected = row[(k + n as i64) as usize];
            assert_eq!(trinomial(n, k), BigUint::from(expected));
            let paths = enumerate_free_paths(n, k).unwrap();
            assert_eq!(paths.len() as u64, expected);
            assert!(paths.iter().all(|p| p.final_height() == k));
            total += paths.len();
        }
        assert_eq!(total, 3usize.pow(n as u32));
    }
}

#[test]
fn enumeration_is_lexicographic() {
    let words = enumerate_motzkin(3).unwrap().words();
    assert_eq!(words, ["ufd", "udf", "fud", "fff"]);
    let indices: Vec<usize> = enumerate_free_paths(4, 0).unwrap().iter().map(Path::basis_index).collect();
    assert!(indices.windows(2).all(|w| w[0] < w[1]));
}
