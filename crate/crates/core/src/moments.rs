//! Transforms between expected order statistics, max-moments, normalized
//! moment vectors and binomial-mixture moment vectors.

use crate::error::{EosError, Result};
use crate::scalar::{binom, check_size, Scalar};

/// Candidate expected order statistics `β₁ < … < βₙ`.
#[derive(Debug, Clone, PartialEq)]
pub struct BetaSequence<S> {
    values: Vec<S>,
}

impl<S: Scalar> BetaSequence<S> {
    pub fn new(values: Vec<S>) -> Result<Self> {
        if values.len() < 2 {
            return Err(EosError::InvalidSequence {
                index: values.len(),
                reason: "need at least two values".into(),
            });
        }
        check_size(values.len())?;
        for (j, pair) in values.windows(2).enumerate() {
            if pair[1] <= pair[0] {
                return Err(EosError::InvalidSequence {
                    index: j + 1,
                    reason: "values must be strictly increasing".into(),
                });
            }
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    /// `a·β + b`; `a` must be positive.
    pub fn affine(&self, a: &S, b: &S) -> Result<Self> {
        if !a.is_positive() {
            return Err(EosError::InvalidSequence {
                index: 0,
                reason: "scale must be positive".into(),
            });
        }
        Self::new(self.values.iter().map(|v| a.clone() * v.clone() + b.clone()).collect())
    }

    pub fn to_f64(&self) -> BetaSequence<f64> {
        BetaSequence {
            values: self.values.iter().map(Scalar::to_f64).collect(),
        }
    }
}

/// Normalized truncated moment vector `ν₀..ν_{n−2}` with its scale `λ`.
#[derive(Debug, Clone, PartialEq)]
pub struct NuVector<S> {
    pub nu: Vec<S>,
    pub lambda: S,
    pub n: usize,
}

/// `μ_k = E X_{k:k}` for `k = 1..K`.
#[derive(Debug, Clone, PartialEq)]
pub struct MaxMomentSequence<S> {
    pub mu: Vec<S>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityVector<S> {
    p: Vec<S>,
}

/// Float probability vectors may miss unit mass by this much.
pub const MASS_TOLERANCE: f64 = 1e-10;

impl<S: Scalar> ProbabilityVector<S> {
    pub fn new(p: Vec<S>) -> Result<Self> {
        if p.len() < 2 {
            return Err(EosError::WrongLength { expected: 2, got: p.len() });
        }
        check_size(p.len() - 1)?;
        for (index, v) in p.iter().enumerate() {
            if v.is_negative() {
                return Err(EosError::NegativeMass { index, value: v.to_f64() });
            }
        }
        let total = p.iter().fold(S::zero(), |acc, v| acc + v.clone());
        let ok = if S::EXACT {
            total == S::one()
        } else {
            (total.to_f64() - 1.0).abs() <= MASS_TOLERANCE
        };
        if !ok {
            return Err(EosError::MassNotOne { total: total.to_f64() });
        }
        Ok(Self { p })
    }

    pub fn values(&self) -> &[S] {
        &self.p
    }

    /// Degree `n`; the vector has `n + 1` entries.
    pub fn degree(&self) -> usize {
        self.p.len() - 1
    }
}

/// Candidate moments `u₀..uₙ` of a mixing variable on `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct UVector<S> {
    pub u: Vec<S>,
}

impl<S: Scalar> UVector<S> {
    pub fn new(u: Vec<S>) -> Result<Self> {
        match u.first() {
            Some(u0) if *u0 == S::one() => Ok(Self { u }),
            Some(u0) if !S::EXACT && (u0.to_f64() - 1.0).abs() <= MASS_TOLERANCE => Ok(Self { u }),
            Some(_) => Err(EosError::InvalidMoments("u₀ must equal 1".into())),
            None => Err(EosError::TooFewMoments { needed: 1, got: 0 }),
        }
    }
}

/// Successive gaps `β_{i+1} − β_i` and `λ = Σ i(n−i)(β_{i+1} − β_i)`.
pub fn spacings_and_lambda<S: Scalar>(beta: &BetaSequence<S>) -> (Vec<S>, S) {
    let n = beta.n();
    let spacings: Vec<S> = beta
        .values
        .windows(2)
        .map(|w| w[1].clone() - w[0].clone())
        .collect();
    let lambda = spacings.iter().enumerate().fold(S::zero(), |acc, (idx, d)| {
        let i = idx + 1;
        acc + S::from_u64((i * (n - i)) as u64) * d.clone()
    });
    (spacings, lambda)
}

pub fn nu_from_beta<S: Scalar>(beta: &BetaSequence<S>) -> Result<NuVector<S>> {
    let n = beta.n();
    check_size(n)?;
    let (spacings, lambda) = spacings_and_lambda(beta);
    let mut nu = Vec::with_capacity(n - 1);
    for k in 0..=(n - 2) {
        let mut sum = S::zero();
        for j in (k + 1)..=(n - 1) {
            let weight = S::from_u64((n - j) as u64) * binom::<S>(j, k + 1);
            sum = sum + weight * spacings[j - 1].clone();
        }
        let denom = lambda.clone() * binom::<S>(n - 1, k + 1);
        nu.push(S::from_u64((n - 1) as u64) * sum / denom);
    }
    if S::EXACT {
        assert!(nu[0] == S::one(), "ν₀ must be exactly one");
    } else {
        debug_assert!((nu[0].to_f64() - 1.0).abs() < 1e-12);
        nu[0] = S::one();
    }
    Ok(NuVector { nu, lambda, n })
}

/// Left-hand side of the binomial-moment representation:
/// `(j+1)(n−j−1)(β_{j+2} − β_{j+1}) / λ` for `j = 0..n−2`.
pub fn binomial_moments_from_beta<S: Scalar>(beta: &BetaSequence<S>) -> Vec<S> {
    let n = beta.n();
    let (spacings, lambda) = spacings_and_lambda(beta);
    spacings
        .iter()
        .enumerate()
        .map(|(j, d)| S::from_u64(((j + 1) * (n - j - 1)) as u64) * d.clone() / lambda.clone())
        .collect()
}

/// Maps power moments `m₀..m_N` to binomial moments
/// `E{C(N,j) Tʲ (1−T)^{N−j}}`, `j = 0..N`.
pub fn binomial_transform<S: Scalar>(moments: &[S]) -> Result<Vec<S>> {
    if moments.is_empty() {
        return Err(EosError::TooFewMoments { needed: 1, got: 0 });
    }
    let degree = moments.len() - 1;
    check_size(degree)?;
    Ok((0..=degree)
        .map(|j| {
            let inner = (0..=(degree - j)).fold(S::zero(), |acc, i| {
                let term = binom::<S>(degree - j, i) * moments[j + i].clone();
                if i % 2 == 0 {
                    acc + term
                } else {
                    acc - term
                }
            });
            binom::<S>(degree, j) * inner
        })
        .collect())
}

/// `μ_k = C(n,k)⁻¹ Σ_{j=k}^n C(j−1,k−1) μ_{j:n}` for `k = 1..n`.
pub fn muk_from_mujn<S: Scalar>(mujn: &[S]) -> Result<MaxMomentSequence<S>> {
    let n = mujn.len();
    if n == 0 {
        return Err(EosError::WrongLength { expected: 1, got: 0 });
    }
    check_size(n)?;
    let mu = (1..=n)
        .map(|k| {
            let sum = (k..=n).fold(S::zero(), |acc, j| {
                acc + binom::<S>(j - 1, k - 1) * mujn[j - 1].clone()
            });
            sum / binom::<S>(n, k)
        })
        .collect();
    Ok(MaxMomentSequence { mu })
}

/// `μ_{j:n} = n·C(n−1,j−1) Σ_{i=j}^n (−1)^{i−j} C(n−j,i−j) μ_i / i`.
pub fn mujn_from_muk<S: Scalar>(mu: &MaxMomentSequence<S>) -> Result<Vec<S>> {
    let n = mu.mu.len();
    if n == 0 {
        return Err(EosError::WrongLength { expected: 1, got: 0 });
    }
    check_size(n)?;
    Ok((1..=n)
        .map(|j| {
            let sum = (j..=n).fold(S::zero(), |acc, i| {
                let term = binom::<S>(n - j, i - j) * mu.mu[i - 1].clone() / S::from_u64(i as u64);
                if (i - j) % 2 == 0 {
                    acc + term
                } else {
                    acc - term
                }
            });
            S::from_u64(n as u64) * binom::<S>(n - 1, j - 1) * sum
        })
        .collect())
}

/// `u_k = C(n,k)⁻¹ Σ_{j=k}^n C(j,k) p_j`.
pub fn u_from_p<S: Scalar>(p: &ProbabilityVector<S>) -> UVector<S> {
    let n = p.degree();
    let u = (0..=n)
        .map(|k| {
            let sum = (k..=n).fold(S::zero(), |acc, j| acc + binom::<S>(j, k) * p.p[j].clone());
            sum / binom::<S>(n, k)
        })
        .collect();
    UVector { u }
}

/// Location-scale normalization `(β_j − c)/λ` with `c` the mean and
/// `λ = Σ i(n−i)(β_{i+1} − β_i) / (n(n−1))`, which maps EOS of `X` to EOS of
/// the member of its location-scale family with `E X = 0`, `E X_{2:2} = 1`.
pub fn normalize_location_scale<S: Scalar>(beta: &BetaSequence<S>) -> Vec<S> {
    let n = beta.n();
    let (_, lambda) = spacings_and_lambda(beta);
    let lambda = lambda / S::from_u64((n * (n - 1)) as u64);
    let mean = beta.values.iter().fold(S::zero(), |acc, v| acc + v.clone()) / S::from_u64(n as u64);
    beta.values
        .iter()
        .map(|v| (v.clone() - mean.clone()) / lambda.clone())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigRational;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn ints(v: &[i64]) -> BetaSequence<BigRational> {
        BetaSequence::new(v.iter().map(|&x| q(x, 1)).collect()).unwrap()
    }

    #[test]
    fn spacings_of_quadruple_0257() {
        let (s, lambda) = spacings_and_lambda(&ints(&[0, 2, 5, 7]));
        assert_eq!(s, vec![q(2, 1), q(3, 1), q(2, 1)]);
        assert_eq!(lambda, q(24, 1));
    }

    #[test]
    fn spacings_of_pair() {
        let (s, lambda) = spacings_and_lambda(&ints(&[0, 1]));
        assert_eq!(s, vec![q(1, 1)]);
        assert_eq!(lambda, q(1, 1));
    }

    #[test]
    fn binomial_tail_spacings() {
        // (1,7,22,42,57,63) shifted by −1
        let (s, _) = spacings_and_lambda(&ints(&[0, 6, 21, 41, 56, 62]));
        assert_eq!(s, vec![q(6, 1), q(15, 1), q(20, 1), q(15, 1), q(6, 1)]);
    }

    #[test]
    fn rejects_ties_and_short_input() {
        let err = BetaSequence::new(vec![q(0, 1), q(2, 1), q(2, 1), q(7, 1)]).unwrap_err();
        assert!(matches!(err, EosError::InvalidSequence { index: 2, .. }));
        assert!(BetaSequence::new(vec![1.0]).is_err());
        assert!(BetaSequence::new(vec![3.0, 1.0]).is_err());
    }

    #[test]
    fn nu_of_quadruple_0257() {
        let nu = nu_from_beta(&ints(&[0, 2, 5, 7])).unwrap();
        assert_eq!(nu.nu, vec![q(1, 1), q(1, 2), q(1, 4)]);
        assert_eq!(nu.lambda, q(24, 1));
    }

    #[test]
    fn nu_of_binomial_tail_is_geometric() {
        // β_j = Σ_{k=n+1−j}^n C(n,k), n = 6
        let n = 6usize;
        let beta: Vec<i64> = (1..=n)
            .map(|j| ((n + 1 - j)..=n).map(|k| crate::scalar::binomial(n, k).unwrap() as i64).sum())
            .collect();
        let nu = nu_from_beta(&ints(&beta)).unwrap();
        let expected: Vec<_> = (0..=4).map(|k| q(1, 1 << k)).collect();
        assert_eq!(nu.nu, expected);
    }

    #[test]
    fn nu_is_location_scale_invariant() {
        let a = nu_from_beta(&ints(&[0, 2, 5, 7])).unwrap();
        let b = nu_from_beta(&ints(&[10, 14, 20, 24])).unwrap();
        assert_eq!(a.nu, b.nu);
    }

    #[test]
    fn nu_for_two_points() {
        let nu = nu_from_beta(&BetaSequence::new(vec![0.0, 1.0]).unwrap()).unwrap();
        assert_eq!(nu.nu, vec![1.0]);
    }

    #[test]
    fn max_moments_single() {
        let mu = muk_from_mujn(&[q(5, 3)]).unwrap();
        assert_eq!(mu.mu, vec![q(5, 3)]);
        assert_eq!(mujn_from_muk(&mu).unwrap(), vec![q(5, 3)]);
    }

    fn fair_bit_eos(n: usize) -> Vec<BigRational> {
        // X_{j:n} = 1 iff at least n−j+1 of the bits are one
        (1..=n)
            .map(|j| {
                let count: u64 = ((n - j + 1)..=n).map(|i| crate::scalar::binomial(n, i).unwrap()).sum();
                q(count as i64, 1 << n)
            })
            .collect()
    }

    #[test]
    fn max_moments_of_fair_bit() {
        let mu = muk_from_mujn(&fair_bit_eos(4)).unwrap();
        let expected: Vec<_> = (1..=4).map(|k| q(1, 1) - q(1, 1 << k)).collect();
        assert_eq!(mu.mu, expected);
        assert_eq!(mujn_from_muk(&mu).unwrap(), fair_bit_eos(4));
    }

    #[test]
    fn second_max_moment_formula() {
        let mujn = [q(0, 1), q(2, 1), q(5, 1), q(7, 1)];
        let mu = muk_from_mujn(&mujn).unwrap();
        let n = 4i64;
        let direct = (2..=4).fold(q(0, 1), |acc, j| acc + q(j - 1, 1) * mujn[(j - 1) as usize].clone())
            * q(2, n * (n - 1));
        assert_eq!(mu.mu[1], direct);
        assert_eq!(mu.mu[0], q(14, 4));
    }

    #[test]
    fn round_trip_quadruple_0257() {
        let beta = [q(0, 1), q(2, 1), q(5, 1), q(7, 1)];
        let back = mujn_from_muk(&muk_from_mujn(&beta).unwrap()).unwrap();
        assert_eq!(back, beta.to_vec());
    }

    #[test]
    fn u_from_point_mass_at_top() {
        let mut p = vec![q(0, 1); 5];
        p[4] = q(1, 1);
        let u = u_from_p(&ProbabilityVector::new(p).unwrap());
        assert_eq!(u.u, vec![q(1, 1); 5]);
    }

    #[test]
    fn u_from_fair_binomial() {
        let n = 6usize;
        let p: Vec<_> = (0..=n)
            .map(|j| q(crate::scalar::binomial(n, j).unwrap() as i64, 1 << n))
            .collect();
        let u = u_from_p(&ProbabilityVector::new(p).unwrap());
        let expected: Vec<_> = (0..=n).map(|k| q(1, 1 << k)).collect();
        assert_eq!(u.u, expected);
    }

    #[test]
    fn u_from_uniform_p() {
        let n = 5i64;
        let p = vec![q(1, n + 1); (n + 1) as usize];
        let u = u_from_p(&ProbabilityVector::new(p).unwrap());
        let expected: Vec<_> = (0..=n).map(|k| q(1, k + 1)).collect();
        assert_eq!(u.u, expected);
    }

    #[test]
    fn probability_vector_errors() {
        assert!(matches!(
            ProbabilityVector::new(vec![q(3, 2), q(-1, 2)]),
            Err(EosError::NegativeMass { index: 1, .. })
        ));
        assert!(matches!(
            ProbabilityVector::new(vec![q(1, 2), q(1, 3)]),
            Err(EosError::MassNotOne { .. })
        ));
        assert!(ProbabilityVector::new(vec![0.1, 0.2, 0.7]).is_ok());
    }

    #[test]
    fn binomial_transform_of_point_mass() {
        let m: Vec<_> = (0..=2).map(|k| q(1, 1 << k)).collect();
        assert_eq!(binomial_transform(&m).unwrap(), vec![q(1, 4), q(1, 2), q(1, 4)]);
    }

    #[test]
    fn normalization_of_quadruple_0257() {
        let z = normalize_location_scale(&ints(&[0, 2, 5, 7]));
        assert_eq!(z, vec![q(-7, 4), q(-3, 4), q(3, 4), q(7, 4)]);
    }
}
