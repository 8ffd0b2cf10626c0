mod common;

use common::{config, interior_measure, q};
use eos::generator::{
    atomic_parent, atomic_t_from_discrete, compute_ct, ct_atomic, default_grid, discrete_max_moments, max_moments,
    quantile_from_t, t_from_x, MixingDistribution,
};
use eos::recovery::AtomicMeasure;
use num::{BigRational, One, Zero};
use proptest::prelude::*;

proptest! {
    #![proptest_config(config(200, 0x6765_6e31))]

    #[test]
    fn atomic_parents_are_normalized(t in interior_measure()) {
        let x = atomic_parent(&t).unwrap();
        prop_assert_eq!(x.mean(), BigRational::zero());
        let mu = discrete_max_moments(&x, 9);
        prop_assert_eq!(mu[0].clone(), BigRational::zero());
        for k in 0..8 {
            prop_assert_eq!(mu[k + 1].clone() - mu[k].clone(), t.moment(k));
        }
    }

    #[test]
    fn atomic_quantile_is_monotone_with_sign_change(t in interior_measure()) {
        let x = atomic_parent(&t).unwrap();
        let c = ct_atomic(&t);
        let half = q(1, 2);
        for g in default_grid(401) {
            let level = BigRational::new(((g * 401.0 * 2.0).round() as i64).into(), 802.into());
            let shifted = x.quantile(&level) + c.clone();
            if level <= half {
                prop_assert!(shifted <= BigRational::zero());
            } else {
                prop_assert!(shifted >= BigRational::zero());
            }
        }
        for w in x.values().windows(2) {
            prop_assert!(w[0] < w[1]);
        }
        let integral = x.values().iter().zip(x.masses()).fold(BigRational::zero(), |acc, (v, m)| acc + (v.clone() + c.clone()) * m.clone());
        prop_assert_eq!(integral, c);
    }

    #[test]
    fn atomic_map_is_a_bijection(t in interior_measure()) {
        let x = atomic_parent(&t).unwrap();
        let (back, lambda) = atomic_t_from_discrete(&x).unwrap();
        prop_assert_eq!(back, t);
        prop_assert_eq!(lambda, BigRational::one());
    }

    #[test]
    fn degenerate_round_trip(num in 1i64..=99) {
        let rho = q(num, 100);
        let x = atomic_parent(&AtomicMeasure::point(rho.clone()).unwrap()).unwrap();
        prop_assert_eq!(x.values(), &[-(BigRational::one() / rho.clone()), BigRational::one() / (BigRational::one() - rho.clone())]);
        let (back, _) = atomic_t_from_discrete(&x).unwrap();
        prop_assert_eq!(back, AtomicMeasure::point(rho).unwrap());
    }
}

proptest! {
    #![proptest_config(config(12, 0x6765_6e32))]

    #[test]
    fn beta_laws_give_normalized_monotone_parents(a in 1.0f64..4.0, b in 1.0f64..4.0) {
        let law = MixingDistribution::beta(a, b).unwrap();
        let qf = quantile_from_t(&law).unwrap();
        let mu = max_moments(&qf, 2).unwrap().mu;
        prop_assert!(mu[0].abs() < 1e-9, "E X = {}", mu[0]);
        prop_assert!((mu[1] - mu[0] - 1.0).abs() < 1e-9, "λ = {}", mu[1] - mu[0]);
        let c = compute_ct(&law).unwrap();
        let mut prev = f64::NEG_INFINITY;
        for t in default_grid(201) {
            let x = qf.eval(t).unwrap();
            prop_assert!(x >= prev - 1e-12);
            prev = x;
            if t < 0.5 {
                prop_assert!(x + c <= 1e-12);
            } else if t > 0.5 {
                prop_assert!(x + c >= -1e-12);
            }
        }
        let back = t_from_x(&qf).unwrap();
        let grid = default_grid(51);
        let cdf = back.law.cdf_grid(&grid).unwrap();
        for (t, f) in grid.iter().zip(cdf) {
            prop_assert!((f - law.cdf_left(*t).unwrap()).abs() < 1e-8);
        }
    }
}
