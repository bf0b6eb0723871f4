use adic_smith_core::linalg::{kernel_basis, smith_normal_form, Matrix, Solver};
use adic_smith_core::ring::{EuclideanDomain, Integers, PolyRing, PrimeField};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn int_matrix() -> impl Strategy<Value = (usize, usize, Vec<i64>)> {
    (1usize..=12, 1usize..=12).prop_flat_map(|(m, n)| (Just(m), Just(n), prop::collection::vec(-9i64..=9, m * n)))
}

fn f2x_matrix() -> impl Strategy<Value = (usize, usize, Vec<u8>)> {
    // entries are polynomials of degree < 4, one bit per coefficient
    (1usize..=12, 1usize..=12).prop_flat_map(|(m, n)| (Just(m), Just(n), prop::collection::vec(0u8..16, m * n)))
}

fn to_z(m: usize, n: usize, v: &[i64]) -> Matrix<Integers> {
    Matrix::from_fn(&Integers, m, n, |i, j| BigInt::from(v[i * n + j]))
}

fn f2x() -> PolyRing<PrimeField> {
    PolyRing::new(PrimeField::new(2).unwrap(), "x")
}

fn bits(r: &PolyRing<PrimeField>, b: u8) -> <PolyRing<PrimeField> as EuclideanDomain>::Elem {
    r.from_coeffs((0..4).map(|k| u64::from((b >> k) & 1)).collect())
}

fn to_f2x(r: &PolyRing<PrimeField>, m: usize, n: usize, v: &[u8]) -> Matrix<PolyRing<PrimeField>> {
    Matrix::from_fn(r, m, n, |i, j| bits(r, v[i * n + j]))
}

/// Rank and, for square input, determinant by fraction-free elimination.
fn bareiss(m: usize, n: usize, v: &[i64]) -> (usize, Option<BigInt>) {
    let mut a: Vec<Vec<BigInt>> = (0..m).map(|i| (0..n).map(|j| BigInt::from(v[i * n + j])).collect()).collect();
    let mut prev = BigInt::from(1);
    let mut rank = 0;
    let mut sign = 1i64;
    for col in 0..n {
        let Some(p) = (rank..m).find(|&i| !a[i][col].is_zero()) else { continue };
        if p != rank {
            a.swap(p, rank);
            sign = -sign;
        }
        for i in rank + 1..m {
            for j in col + 1..n {
                a[i][j] = (&a[rank][col] * &a[i][j] - &a[i][col] * &a[rank][j]) / &prev;
            }
            a[i][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    let det = (m == n).then(|| if rank == n { prev * sign } else { BigInt::zero() });
    (rank, det)
}

fn check_certificate<R: EuclideanDomain>(a: &Matrix<R>, probe: &[R::Elem]) -> Result<usize, TestCaseError> {
    let r = a.ring();
    let snf = smith_normal_form(a);
    prop_assert!(snf.verify(a), "U·A·V = D certificate rejected");
    let inv = snf.invariants();
    for w in inv.windows(2) {
        prop_assert!(r.divides(&w[0], &w[1]).is_some());
    }
    let k = kernel_basis(a);
    prop_assert_eq!(k.cols(), a.cols() - snf.rank);
    prop_assert!(a.mul(&k).is_zero());
    let solver = Solver::new(a);
    let b = a.mul_vec(probe);
    let x = solver.solve(&b).unwrap();
    prop_assert!(x.is_some(), "consistent system reported unsolvable");
    prop_assert_eq!(a.mul_vec(&x.unwrap()), b);
    Ok(snf.rank)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn integer_smith_forms((m, n, v) in int_matrix(), probe in prop::collection::vec(-5i64..=5, 12)) {
        let a = to_z(m, n, &v);
        let x: Vec<BigInt> = probe[..n].iter().map(|&c| BigInt::from(c)).collect();
        let rank = check_certificate(&a, &x)?;
        let (oracle_rank, det) = bareiss(m, n, &v);
        prop_assert_eq!(rank, oracle_rank);
        if let (Some(det), true) = (det, rank == n) {
            let prod = smith_normal_form(&a).invariants().iter().fold(BigInt::from(1), |acc, d| acc * d);
            prop_assert_eq!(prod, det.abs());
        }
        // arbitrary right-hand sides: any reported solution substitutes back
        let rhs: Vec<BigInt> = (0..m).map(|i| BigInt::from(probe[i % 12] * 3 + 1)).collect();
        if let Some(y) = Solver::new(&a).solve(&rhs).unwrap() {
            prop_assert_eq!(a.mul_vec(&y), rhs);
        }
    }

    #[test]
    fn f2x_smith_forms((m, n, v) in f2x_matrix(), probe in prop::collection::vec(0u8..16, 12)) {
        let r = f2x();
        let a = to_f2x(&r, m, n, &v);
        let x: Vec<_> = probe[..n].iter().map(|&b| bits(&r, b)).collect();
        check_certificate(&a, &x)?;
        let rhs: Vec<_> = (0..m).map(|i| bits(&r, probe[i % 12] ^ 5)).collect();
        if let Some(y) = Solver::new(&a).solve(&rhs).unwrap() {
            prop_assert_eq!(a.mul_vec(&y), rhs);
        }
    }
}

#[test]
fn known_forms() {
    // diag(2, 3) ~ diag(1, 6)
    let a = to_z(2, 2, &[2, 0, 0, 3]);
    let inv = smith_normal_form(&a).invariants();
    assert_eq!(inv, vec![BigInt::from(1), BigInt::from(6)]);
    let a = to_z(2, 3, &[2, 4, 4, -6, 6, 12]);
    let inv = smith_normal_form(&a).invariants();
    assert_eq!(inv, vec![BigInt::from(2), BigInt::from(6)]);
    let r = f2x();
    // diag(x, x+1) ~ diag(1, x^2+x)
    let a = Matrix::from_rows(&r, vec![vec![bits(&r, 2), bits(&r, 0)], vec![bits(&r, 0), bits(&r, 3)]], 2);
    let inv = smith_normal_form(&a).invariants();
    assert_eq!(inv, vec![r.one(), bits(&r, 6)]);
}

#[test]
fn unsolvable_systems() {
    let a = to_z(1, 1, &[2]);
    assert_eq!(Solver::new(&a).solve(&[BigInt::from(3)]).unwrap(), None);
    let z = to_z(2, 2, &[0, 0, 0, 0]);
    assert_eq!(Solver::new(&z).solve(&[BigInt::from(0), BigInt::from(1)]).unwrap(), None);
}
