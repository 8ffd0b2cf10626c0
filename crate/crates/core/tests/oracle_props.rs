mod common;

use common::{config, discrete, q};
use eos::generator::{atomic_t_from_discrete, discrete_max_moments};
use eos::moments::{binomial_moments_from_beta, muk_from_mujn, BetaSequence};
use eos::oracle::{eos_exact, spacing_pearson};
use num::{BigRational, One};
use proptest::prelude::*;

fn choose(n: usize, k: usize) -> BigRational {
    (0..k).fold(BigRational::one(), |acc, i| acc * q((n - i) as i64, (i + 1) as i64))
}

proptest! {
    #![proptest_config(config(200, 0x6f72_6163))]

    #[test]
    fn spacings_match_differences(x in discrete(), n in 2usize..=10) {
        let eos = eos_exact(&x, n).unwrap();
        let spacings = spacing_pearson(&x, n).unwrap();
        for j in 0..n - 1 {
            prop_assert_eq!(&spacings[j], &(eos[j + 1].clone() - eos[j].clone()));
        }
    }

    #[test]
    fn binomial_moments_of_generated_t(x in discrete(), n in 2usize..=10) {
        let beta = BetaSequence::new(eos_exact(&x, n).unwrap()).unwrap();
        let (t, _) = atomic_t_from_discrete(&x).unwrap();
        let lhs = binomial_moments_from_beta(&beta);
        for (j, l) in lhs.iter().enumerate() {
            let rhs = choose(n - 2, j)
                * t.expect(|s| num::pow(s.clone(), j) * num::pow(BigRational::one() - s.clone(), n - 2 - j));
            prop_assert_eq!(l, &rhs);
        }
    }

    #[test]
    fn max_moments_are_triangular(x in discrete(), n in 1usize..=10) {
        let mu = muk_from_mujn(&eos_exact(&x, n).unwrap()).unwrap().mu;
        let direct = discrete_max_moments(&x, n);
        for k in 1..=n {
            let top = eos_exact(&x, k).unwrap().pop().unwrap();
            prop_assert_eq!(&mu[k - 1], &top);
            prop_assert_eq!(&direct[k - 1], &top);
        }
    }
}
