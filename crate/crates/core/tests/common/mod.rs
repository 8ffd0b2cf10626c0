#![allow(dead_code)]

use eos::oracle::DiscreteDistribution;
use eos::recovery::{Atom, AtomicMeasure};
use num::BigRational;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

pub fn config(cases: u32, seed: u64) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(seed),
        failure_persistence: None,
        ..Config::default()
    }
}

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn rational(range: std::ops::RangeInclusive<i64>, max_den: i64) -> impl Strategy<Value = BigRational> {
    (range, 1..=max_den).prop_map(|(n, d)| q(n, d))
}

/// Strictly increasing rationals.
pub fn increasing(len: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Vec<BigRational>> {
    (rational(-20..=20, 3), prop::collection::vec(rational(1..=30, 4), len)).prop_map(|(start, steps)| {
        let mut acc = start;
        steps
            .into_iter()
            .map(|s| {
                acc += s;
                acc.clone()
            })
            .collect()
    })
}

/// Rational discrete law with 2–5 atoms.
pub fn discrete() -> impl Strategy<Value = DiscreteDistribution<BigRational>> {
    (increasing(2..=5), prop::collection::vec(1i64..=9, 5)).prop_map(|(values, weights)| {
        let weights = &weights[..values.len()];
        let total: i64 = weights.iter().sum();
        DiscreteDistribution::new(values.into_iter().zip(weights.iter().map(|&w| q(w, total))).collect()).unwrap()
    })
}

/// Rational probability measure with 1–4 atoms strictly inside (0, 1).
pub fn interior_measure() -> impl Strategy<Value = AtomicMeasure<BigRational>> {
    (prop::collection::btree_set(1i64..=99, 1..=4), prop::collection::vec(1i64..=9, 4)).prop_map(|(nodes, weights)| {
        let weights = &weights[..nodes.len()];
        let total: i64 = weights.iter().sum();
        AtomicMeasure::new(
            nodes
                .into_iter()
                .zip(weights)
                .map(|(t, &w)| Atom {
                    location: q(t, 100),
                    weight: q(w, total),
                })
                .collect(),
        )
        .unwrap()
    })
}

/// Float probability measure with well-separated atoms in [0.05, 0.95].
pub fn float_measure() -> impl Strategy<Value = AtomicMeasure<f64>> {
    (prop::collection::btree_set(1u32..=18, 1..=4), prop::collection::vec(0.1f64..1.0, 4), prop::collection::vec(0.0f64..0.02, 4))
        .prop_map(|(slots, weights, jitter)| {
            let weights = &weights[..slots.len()];
            let total: f64 = weights.iter().sum();
            AtomicMeasure::new(
                slots
                    .into_iter()
                    .zip(weights)
                    .zip(&jitter)
                    .map(|((s, w), j)| Atom {
                        location: 0.05 * s as f64 + j,
                        weight: w / total,
                    })
                    .collect(),
            )
            .unwrap()
        })
}
