//! Brute-force expected order statistics of discrete laws.
//!
//! Everything here follows directly from the binomial tail of the sample
//! distribution function, with no use of the moment machinery elsewhere in
//! the crate, so it can serve as ground truth.

use crate::error::{EosError, Result};
use crate::scalar::{binom, check_size, pow, Scalar};
use crate::moments::MASS_TOLERANCE;

/// Finitely supported law with strictly increasing values and positive masses.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteDistribution<S> {
    values: Vec<S>,
    masses: Vec<S>,
}

impl<S: Scalar> DiscreteDistribution<S> {
    /// Takes `(value, mass)` pairs in increasing order of value.
    pub fn new(atoms: Vec<(S, S)>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(EosError::InvalidDistribution("no atoms".into()));
        }
        for (i, (v, m)) in atoms.iter().enumerate() {
            if !(*m > S::zero()) {
                return Err(EosError::NegativeMass { index: i, value: m.to_f64() });
            }
            if i > 0 && !(atoms[i - 1].0 < *v) {
                return Err(EosError::InvalidDistribution(format!(
                    "values must increase strictly at index {i}"
                )));
            }
        }
        let total = atoms.iter().fold(S::zero(), |acc, a| acc + a.1.clone());
        let ok = if S::EXACT {
            total == S::one()
        } else {
            (total.to_f64() - 1.0).abs() <= MASS_TOLERANCE
        };
        if !ok {
            return Err(EosError::MassNotOne { total: total.to_f64() });
        }
        let (values, masses) = atoms.into_iter().unzip();
        Ok(Self { values, masses })
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }

    pub fn masses(&self) -> &[S] {
        &self.masses
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `F(v_k)` for every support point; the last entry is exactly one.
    pub fn cumulative(&self) -> Vec<S> {
        let mut acc = S::zero();
        let mut out: Vec<S> = self
            .masses
            .iter()
            .map(|m| {
                acc = acc.clone() + m.clone();
                acc.clone()
            })
            .collect();
        if let Some(last) = out.last_mut() {
            *last = S::one();
        }
        out
    }

    pub fn mean(&self) -> S {
        self.values
            .iter()
            .zip(&self.masses)
            .fold(S::zero(), |acc, (v, m)| acc + v.clone() * m.clone())
    }

    /// Left-continuous quantile `inf{x : F(x) ≥ t}`.
    pub fn quantile(&self, t: &S) -> S {
        let cum = self.cumulative();
        let idx = cum.iter().position(|c| c >= t).unwrap_or(cum.len() - 1);
        self.values[idx].clone()
    }

    pub fn to_f64(&self) -> DiscreteDistribution<f64> {
        DiscreteDistribution {
            values: self.values.iter().map(Scalar::to_f64).collect(),
            masses: self.masses.iter().map(Scalar::to_f64).collect(),
        }
    }
}

// Pr(X_{j:n} ≤ v) when F(v) = f.
fn order_cdf<S: Scalar>(f: &S, j: usize, n: usize) -> S {
    let g = S::one() - f.clone();
    (j..=n).fold(S::zero(), |acc, i| {
        acc + binom::<S>(n, i) * pow(f, i) * pow(&g, n - i)
    })
}

/// `E X_{j:n}` for `j = 1..n`.
pub fn eos_exact<S: Scalar>(x: &DiscreteDistribution<S>, n: usize) -> Result<Vec<S>> {
    if n == 0 {
        return Err(EosError::WrongLength { expected: 1, got: 0 });
    }
    check_size(n)?;
    let cum = x.cumulative();
    Ok((1..=n)
        .map(|j| {
            let mut prev = S::zero();
            let mut total = S::zero();
            for (v, f) in x.values.iter().zip(&cum) {
                let at = order_cdf(f, j, n);
                total = total + v.clone() * (at.clone() - prev);
                prev = at;
            }
            total
        })
        .collect())
}

/// `E X_{j+1:n} − E X_{j:n} = C(n,j) ∫ Fʲ(1−F)^{n−j} dx` for `j = 1..n−1`,
/// summed over the gaps of the support.
pub fn spacing_pearson<S: Scalar>(x: &DiscreteDistribution<S>, n: usize) -> Result<Vec<S>> {
    if n < 2 {
        return Err(EosError::WrongLength { expected: 2, got: n });
    }
    check_size(n)?;
    if x.len() < 2 {
        return Err(EosError::DegenerateInput(
            "a single-atom law has zero spacings".into(),
        ));
    }
    let cum = x.cumulative();
    Ok((1..n)
        .map(|j| {
            let sum = (0..x.len() - 1).fold(S::zero(), |acc, k| {
                let gap = x.values[k + 1].clone() - x.values[k].clone();
                let f = &cum[k];
                acc + gap * pow(f, j) * pow(&(S::one() - f.clone()), n - j)
            });
            binom::<S>(n, j) * sum
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigRational;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn two_point_n4() {
        let x = DiscreteDistribution::new(vec![(q(-1, 2), q(1, 2)), (q(15, 2), q(1, 2))]).unwrap();
        assert_eq!(eos_exact(&x, 4).unwrap(), vec![q(0, 1), q(2, 1), q(5, 1), q(7, 1)]);
        assert_eq!(spacing_pearson(&x, 4).unwrap(), vec![q(2, 1), q(3, 1), q(2, 1)]);
    }

    #[test]
    fn two_point_n5() {
        let x = DiscreteDistribution::new(vec![(q(-1, 10), q(2, 3)), (q(121, 5), q(1, 3))]).unwrap();
        let expected: Vec<BigRational> = [0, 1, 5, 13, 21].iter().map(|&v| q(v, 1)).collect();
        assert_eq!(eos_exact(&x, 5).unwrap(), expected);
    }

    #[test]
    fn binomial_tails() {
        for n in [4usize, 6, 8] {
            let x = DiscreteDistribution::new(vec![(q(0, 1), q(1, 2)), (q(1 << n, 1), q(1, 2))]).unwrap();
            let eos = eos_exact(&x, n).unwrap();
            for j in 1..=n {
                let tail: u64 = ((n + 1 - j)..=n).map(|k| crate::scalar::binomial(n, k).unwrap()).sum();
                assert_eq!(eos[j - 1], q(tail as i64, 1), "n = {n}, j = {j}");
            }
        }
    }

    #[test]
    fn fair_bit_spacing() {
        let x = DiscreteDistribution::new(vec![(q(0, 1), q(1, 2)), (q(1, 1), q(1, 2))]).unwrap();
        assert_eq!(spacing_pearson(&x, 2).unwrap(), vec![q(1, 2)]);
    }

    #[test]
    fn degenerate_is_rejected() {
        let x = DiscreteDistribution::new(vec![(q(3, 1), q(1, 1))]).unwrap();
        assert!(matches!(spacing_pearson(&x, 3), Err(EosError::DegenerateInput(_))));
        assert_eq!(eos_exact(&x, 3).unwrap(), vec![q(3, 1); 3]);
    }

    #[test]
    fn validation() {
        assert!(DiscreteDistribution::new(vec![(1.0, 0.5), (0.0, 0.5)]).is_err());
        assert!(DiscreteDistribution::new(vec![(0.0, 0.5), (1.0, 0.4)]).is_err());
        assert!(DiscreteDistribution::new(vec![(0.0, 1.5), (1.0, -0.5)]).is_err());
    }

    #[test]
    fn quantile_is_left_continuous() {
        let x = DiscreteDistribution::new(vec![(q(-2, 1), q(1, 2)), (q(2, 1), q(1, 2))]).unwrap();
        assert_eq!(x.quantile(&q(1, 2)), q(-2, 1));
        assert_eq!(x.quantile(&q(501, 1000)), q(2, 1));
    }
}
