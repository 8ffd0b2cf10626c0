mod common;

use common::{config, interior_measure, q, rational};
use eos::eigen::symmetric_eigen;
use eos::hankel::{build_hankel, psd_check, PsdStatus, SymMatrix};
use num::{BigRational, Signed, Zero};
use proptest::prelude::*;

fn det(m: &[BigRational], idx: &[usize], dim: usize) -> BigRational {
    submatrix_det(m, idx, idx, dim)
}

// Laplace expansion along the first row.
fn submatrix_det(m: &[BigRational], rows: &[usize], cols: &[usize], dim: usize) -> BigRational {
    match rows.len() {
        0 => BigRational::from_integer(1.into()),
        1 => m[rows[0] * dim + cols[0]].clone(),
        _ => {
            let mut total = BigRational::zero();
            for c in 0..cols.len() {
                let rest: Vec<usize> = cols.iter().enumerate().filter(|&(k, _)| k != c).map(|(_, &v)| v).collect();
                let term = m[rows[0] * dim + cols[c]].clone() * submatrix_det(m, &rows[1..], &rest, dim);
                total = if c % 2 == 0 { total + term } else { total - term };
            }
            total
        }
    }
}

fn subsets(dim: usize) -> Vec<Vec<usize>> {
    (1..1usize << dim)
        .map(|mask| (0..dim).filter(|i| mask & (1 << i) != 0).collect())
        .collect()
}

fn symmetric(dim: usize) -> impl Strategy<Value = Vec<BigRational>> {
    prop::collection::vec(rational(-6..=6, 3), dim * dim).prop_map(move |mut v| {
        for i in 0..dim {
            for j in 0..i {
                v[i * dim + j] = v[j * dim + i].clone();
            }
        }
        v
    })
}

// A valid moment vector with one entry moved.
fn perturbed_moments() -> impl Strategy<Value = Vec<BigRational>> {
    (interior_measure(), 3usize..=9, 0usize..9, rational(-20..=20, 50)).prop_map(|(m, len, at, delta)| {
        let mut v = m.moments(len);
        let at = 1 + at % (len - 1);
        v[at] += delta;
        v
    })
}

proptest! {
    #![proptest_config(config(200, 0x6861_6e6b))]

    #[test]
    fn eigen_reconstructs(dim in 1usize..=8, raw in prop::collection::vec(-1.0f64..1.0, 64)) {
        let mut a = vec![0.0; dim * dim];
        for i in 0..dim {
            for j in i..dim {
                a[i * dim + j] = raw[i * 8 + j];
                a[j * dim + i] = raw[i * 8 + j];
            }
        }
        let e = symmetric_eigen(&a, dim);
        let mut diff = 0.0;
        let mut norm = 0.0;
        for i in 0..dim {
            for j in 0..dim {
                let r: f64 = (0..dim).map(|k| e.vectors[i * dim + k] * e.values[k] * e.vectors[j * dim + k]).sum();
                diff += (r - a[i * dim + j]).powi(2);
                norm += a[i * dim + j].powi(2);
            }
        }
        prop_assert!(diff.sqrt() <= 1e-12 * norm.sqrt().max(1e-300));
        for w in e.values.windows(2) {
            prop_assert!(w[0] <= w[1]);
        }
    }

    #[test]
    fn psd_matches_minors(dim in 2usize..=3, m in symmetric(3)) {
        let m: Vec<BigRational> = (0..dim * dim).map(|k| m[(k / dim) * 3 + k % dim].clone()).collect();
        let leading_positive = (1..=dim).all(|k| det(&m, &(0..k).collect::<Vec<_>>(), dim).is_positive());
        let principal_nonnegative = subsets(dim).iter().all(|s| !det(&m, s, dim).is_negative());
        let status = psd_check(&SymMatrix::new(dim, m.clone()).unwrap(), 0.0).unwrap().status;
        prop_assert_eq!(status == PsdStatus::PositiveDefinite, leading_positive);
        prop_assert_eq!(status.is_psd(), principal_nonnegative);
        let float = psd_check(&SymMatrix::new(dim, m).unwrap().to_f64(), 1e-12).unwrap().status;
        prop_assert_eq!(float.is_psd(), principal_nonnegative);
    }

    #[test]
    fn even_a_ignores_epsilon(m in interior_measure(), half in 1usize..=5, k in 1i64..20) {
        let moments = m.moments(2 * half + 1);
        let base = build_hankel(&moments, &q(0, 1)).unwrap();
        let moved = build_hankel(&moments, &q(k, 40)).unwrap();
        prop_assert_eq!(base.a, moved.a);
        let float_moments: Vec<f64> = moments.iter().map(eos::Scalar::to_f64).collect();
        let base = build_hankel(&float_moments, &0.0).unwrap();
        let moved = build_hankel(&float_moments, &(k as f64 / 40.0)).unwrap();
        prop_assert!(base.a.entries().iter().zip(moved.a.entries()).all(|(x, y)| x.to_bits() == y.to_bits()));
    }

    #[test]
    fn rejection_is_monotone(moments in perturbed_moments()) {
        let at_zero = build_hankel(&moments, &q(0, 1)).unwrap();
        let failed = [&at_zero.a, &at_zero.b]
            .iter()
            .any(|m| psd_check(m, 0.0).unwrap().status == PsdStatus::Indefinite);
        prop_assume!(failed);
        for k in 1..=20 {
            let pair = build_hankel(&moments, &q(k, 42)).unwrap();
            let a = psd_check(&pair.a, 0.0).unwrap().status;
            let b = psd_check(&pair.b, 0.0).unwrap().status;
            prop_assert!(a == PsdStatus::Indefinite || b == PsdStatus::Indefinite, "ε = {}/42", k);
        }
    }
}
