//! The map between laws of `T` on `(0, 1)` and normalized parents `X` with
//! `E X = 0`, `E X_{2:2} = 1`, together with max-moments `μ_k = E X_{k:k}`.
//!
//! `X` is described by its quantile function
//!
//! ```text
//! F₀⁻¹(t) = F_T(t−)/(t(1−t)) − 4F_T(½−) − ∫_{1/2}^t (2u−1)/(u²(1−u)²) F_T(u) du − c_T
//! c_T     = E[T⁻¹; T ≥ ½] − E[(1−T)⁻¹; T < ½]
//! ```
//!
//! and satisfies `μ_{k+2} − μ_{k+1} = E Tᵏ`. Conversely a parent with
//! quantile `q` yields `Pr(T < t) = [t(1−t)q(t) − ∫₀ᵗ(1−2u)q(u)du] / λ` with
//! `λ = ∫₀¹(2t−1)q(t)dt`.

pub mod quad;

use std::cell::RefCell;

use statrs::function::beta::{beta_reg, ln_beta};

use crate::error::{EosError, Result};
use crate::moments::MaxMomentSequence;
use crate::oracle::DiscreteDistribution;
use crate::recovery::{Atom, AtomicMeasure};
use crate::scalar::{pow, Scalar};

pub use quad::QuadSettings;

/// Law of the generator `T`, with `Pr(0 < T < 1) = 1`.
#[derive(Debug, Clone, PartialEq)]
pub enum MixingDistribution {
    Atomic(AtomicMeasure<f64>),
    Beta { a: f64, b: f64 },
    Uniform,
    Degenerate(f64),
    /// Image of a continuous parent under the X → T map.
    FromX(Box<Transformed>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Transformed {
    pub quantile: QuantileFunction,
    pub lambda: f64,
}

impl MixingDistribution {
    pub fn beta(a: f64, b: f64) -> Result<Self> {
        if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) {
            return Err(EosError::InvalidDistribution(format!(
                "beta shapes must be positive, got ({a}, {b})"
            )));
        }
        Ok(MixingDistribution::Beta { a, b })
    }

    pub fn degenerate(rho: f64) -> Result<Self> {
        if !(rho > 0.0 && rho < 1.0) {
            return Err(EosError::InvalidDistribution(format!(
                "degenerate point {rho} must lie in (0, 1)"
            )));
        }
        Ok(MixingDistribution::Degenerate(rho))
    }

    pub fn atomic(measure: AtomicMeasure<f64>) -> Result<Self> {
        check_interior_probability(&measure)?;
        Ok(MixingDistribution::Atomic(measure))
    }

    pub fn kind(&self) -> &'static str {
        match self {
            MixingDistribution::Atomic(_) => "atoms",
            MixingDistribution::Beta { .. } => "beta",
            MixingDistribution::Uniform => "uniform",
            MixingDistribution::Degenerate(_) => "degenerate",
            MixingDistribution::FromX(_) => "transformed",
        }
    }

    /// `Pr(T < t)`
    pub fn cdf_left(&self, t: f64) -> Result<f64> {
        if t <= 0.0 {
            return Ok(0.0);
        }
        if t >= 1.0 {
            return Ok(1.0);
        }
        Ok(match self {
            MixingDistribution::Atomic(m) => m
                .atoms()
                .iter()
                .filter(|a| a.location < t)
                .map(|a| a.weight)
                .sum(),
            MixingDistribution::Degenerate(rho) => {
                if t > *rho {
                    1.0
                } else {
                    0.0
                }
            }
            MixingDistribution::Beta { a, b } => beta_reg(*a, *b, t),
            MixingDistribution::Uniform => t,
            MixingDistribution::FromX(tr) => tr.cdf(t)?,
        })
    }

    /// Density of `T` where it is absolutely continuous.
    pub fn density(&self, t: f64) -> Option<f64> {
        self.density2(t, 1.0 - t)
    }

    // Density at `u` given also `v = 1 − u`, so that both ends stay accurate.
    fn density2(&self, u: f64, v: f64) -> Option<f64> {
        match self {
            MixingDistribution::Beta { a, b } => {
                Some((xlogy(a - 1.0, u) + xlogy(b - 1.0, v) - ln_beta(*a, *b)).exp())
            }
            MixingDistribution::Uniform => Some(1.0),
            MixingDistribution::FromX(tr) => Some(u * v * tr.quantile.derivative2(u, v)? / tr.lambda),
            MixingDistribution::Atomic(_) | MixingDistribution::Degenerate(_) => None,
        }
    }

    /// `E Tᵏ`
    pub fn moment(&self, k: usize) -> Result<f64> {
        Ok(match self {
            MixingDistribution::Atomic(m) => m.moment(k),
            MixingDistribution::Degenerate(rho) => rho.powi(k as i32),
            MixingDistribution::Beta { a, b } => (0..k).map(|i| (a + i as f64) / (a + b + i as f64)).product(),
            MixingDistribution::Uniform => 1.0 / (k as f64 + 1.0),
            MixingDistribution::FromX(_) => {
                let settings = QuadSettings::default();
                let left = quad::integrate_from_zero(
                    |s| s.powi(k as i32) * self.density2(s, 1.0 - s).unwrap_or(0.0),
                    0.5,
                    &settings,
                )?;
                let right = quad::integrate_from_zero(
                    |w| (1.0 - w).powi(k as i32) * self.density2(1.0 - w, w).unwrap_or(0.0),
                    0.5,
                    &settings,
                )?;
                left + right
            }
        })
    }

    /// `Pr(T < t)` on an increasing grid inside `(0, 1)`.
    pub fn cdf_grid(&self, grid: &[f64]) -> Result<Vec<f64>> {
        check_grid(grid)?;
        match self {
            MixingDistribution::FromX(tr) => tr.cdf_grid(grid),
            _ => grid.iter().map(|&t| self.cdf_left(t)).collect(),
        }
    }
}

fn xlogy(c: f64, y: f64) -> f64 {
    if c == 0.0 {
        0.0
    } else {
        c * y.ln()
    }
}

fn check_interior_probability<S: Scalar>(measure: &AtomicMeasure<S>) -> Result<()> {
    for a in measure.atoms() {
        if !(a.location > S::zero() && a.location < S::one()) {
            return Err(EosError::InvalidDistribution(format!(
                "atom at {} must lie strictly inside (0, 1)",
                a.location.to_f64()
            )));
        }
    }
    let total = measure.total_mass();
    let ok = if S::EXACT {
        total == S::one()
    } else {
        (total.to_f64() - 1.0).abs() <= crate::moments::MASS_TOLERANCE
    };
    if !ok {
        return Err(EosError::MassNotOne { total: total.to_f64() });
    }
    Ok(())
}

fn check_grid(grid: &[f64]) -> Result<()> {
    for (i, &t) in grid.iter().enumerate() {
        if !(t > 0.0 && t < 1.0) || (i > 0 && grid[i - 1] >= t) {
            return Err(EosError::InvalidDistribution(format!(
                "grid must increase strictly inside (0, 1) at index {i}"
            )));
        }
    }
    Ok(())
}

/// `(i + ½)/points` for `i = 0..points`.
pub fn default_grid(points: usize) -> Vec<f64> {
    (0..points).map(|i| (i as f64 + 0.5) / points as f64).collect()
}

/// Parametric parents with elementary quantiles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ClosedForm {
    /// Uniform on `(lo, hi)`.
    UniformInterval { lo: f64, hi: f64 },
    /// `shift + scale·𝓔`
    ShiftedExponential { shift: f64, scale: f64 },
    /// `shift − scale·𝓔`
    ReflectedExponential { shift: f64, scale: f64 },
    /// `loc + scale·L` with `L` standard logistic.
    Logistic { loc: f64, scale: f64 },
}

impl ClosedForm {
    fn validate(&self) -> Result<()> {
        let ok = match *self {
            ClosedForm::UniformInterval { lo, hi } => lo.is_finite() && hi.is_finite() && hi > lo,
            ClosedForm::ShiftedExponential { shift, scale }
            | ClosedForm::ReflectedExponential { shift, scale }
            | ClosedForm::Logistic { loc: shift, scale } => shift.is_finite() && scale.is_finite() && scale > 0.0,
        };
        if ok {
            Ok(())
        } else {
            Err(EosError::InvalidDistribution(format!("invalid parameters {self:?}")))
        }
    }

    fn eval2(&self, t: f64, v: f64) -> f64 {
        match *self {
            ClosedForm::UniformInterval { lo, hi } => lo + (hi - lo) * t,
            ClosedForm::ShiftedExponential { shift, scale } => shift - scale * v.ln(),
            ClosedForm::ReflectedExponential { shift, scale } => shift + scale * t.ln(),
            ClosedForm::Logistic { loc, scale } => loc + scale * (t / v).ln(),
        }
    }

    fn derivative2(&self, t: f64, v: f64) -> f64 {
        match *self {
            ClosedForm::UniformInterval { lo, hi } => hi - lo,
            ClosedForm::ShiftedExponential { scale, .. } => scale / v,
            ClosedForm::ReflectedExponential { scale, .. } => scale / t,
            ClosedForm::Logistic { scale, .. } => scale / (t * v),
        }
    }

    fn max_moment(&self, k: usize) -> f64 {
        let harmonic = |n: usize| (1..=n).map(|i| 1.0 / i as f64).sum::<f64>();
        let kf = k as f64;
        match *self {
            ClosedForm::UniformInterval { lo, hi } => lo + (hi - lo) * kf / (kf + 1.0),
            ClosedForm::ShiftedExponential { shift, scale } => shift + scale * harmonic(k),
            ClosedForm::ReflectedExponential { shift, scale } => shift - scale / kf,
            ClosedForm::Logistic { loc, scale } => loc + scale * harmonic(k - 1),
        }
    }
}

/// `F₀⁻¹(t) = ∫_{1/2}^t f_T(u)/(u(1−u)) du − c_T` for a law with a density.
#[derive(Debug, Clone, PartialEq)]
pub struct FromT {
    pub law: MixingDistribution,
    pub c_t: f64,
    pub settings: QuadSettings,
}

/// Left-continuous quantile function of a parent `X`.
#[derive(Debug, Clone, PartialEq)]
pub enum QuantileFunction {
    Discrete(DiscreteDistribution<f64>),
    ClosedForm(ClosedForm),
    FromT(Box<FromT>),
}

impl QuantileFunction {
    pub fn closed_form(form: ClosedForm) -> Result<Self> {
        form.validate()?;
        Ok(QuantileFunction::ClosedForm(form))
    }

    /// `F⁻¹(t)` for `0 < t < 1`.
    pub fn eval(&self, t: f64) -> Result<f64> {
        if !(t > 0.0 && t < 1.0) {
            return Err(EosError::InvalidDistribution(format!(
                "quantile level {t} must lie in (0, 1)"
            )));
        }
        self.eval2(t, 1.0 - t)
    }

    fn eval2(&self, t: f64, v: f64) -> Result<f64> {
        match self {
            QuantileFunction::Discrete(x) => Ok(x.quantile(&t)),
            QuantileFunction::ClosedForm(c) => Ok(c.eval2(t, v)),
            QuantileFunction::FromT(f) => {
                let h = |u: f64, w: f64| f.law.density2(u, w).unwrap_or(0.0) / (u * w);
                let integral = if t <= 0.5 {
                    -quad::integrate(|u| h(u, 1.0 - u), t, 0.5, &f.settings)?
                } else {
                    quad::integrate(|w| h(1.0 - w, w), v, 0.5, &f.settings)?
                };
                Ok(integral - f.c_t)
            }
        }
    }

    fn derivative2(&self, t: f64, v: f64) -> Option<f64> {
        match self {
            QuantileFunction::Discrete(_) => None,
            QuantileFunction::ClosedForm(c) => Some(c.derivative2(t, v)),
            QuantileFunction::FromT(f) => Some(f.law.density2(t, v)? / (t * v)),
        }
    }

    /// `(t, F⁻¹(t))` on [`default_grid`].
    pub fn table(&self, points: usize) -> Result<Vec<(f64, f64)>> {
        default_grid(points)
            .into_iter()
            .map(|t| Ok((t, self.eval(t)?)))
            .collect()
    }
}

// Runs `body` with a closure that evaluates `q`, parking the first error.
fn with_quantile<R>(
    q: &QuantileFunction,
    body: impl FnOnce(&dyn Fn(f64, f64) -> f64) -> Result<R>,
) -> Result<R> {
    let failure: RefCell<Option<EosError>> = RefCell::new(None);
    let eval = |t: f64, v: f64| match q.eval2(t, v) {
        Ok(x) => x,
        Err(e) => {
            failure.borrow_mut().get_or_insert(e);
            0.0
        }
    };
    let result = body(&eval);
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    result
}

impl Transformed {
    // t(1−t)q(t) − ∫₀ᵗ(1−2u)q(u)du, or its mirror through ∫₀¹(1−2u)q = −λ.
    fn cdf(&self, t: f64) -> Result<f64> {
        let settings = QuadSettings::default();
        let q = &self.quantile;
        with_quantile(q, |eval| {
            let v = 1.0 - t;
            let head = t * v * eval(t, v);
            let value = if t <= 0.5 {
                let tail = quad::integrate_from_zero(|s| (1.0 - 2.0 * s) * eval(s, 1.0 - s), t, &settings)?;
                head - tail
            } else {
                let tail = quad::integrate_from_zero(|w| (2.0 * w - 1.0) * eval(1.0 - w, w), v, &settings)?;
                head + self.lambda + tail
            };
            Ok(value / self.lambda)
        })
    }

    fn cdf_grid(&self, grid: &[f64]) -> Result<Vec<f64>> {
        let settings = QuadSettings::default();
        let q = &self.quantile;
        with_quantile(q, |eval| {
            let mut out = vec![0.0; grid.len()];
            let split = grid.partition_point(|&t| t <= 0.5);
            let mut acc = 0.0;
            let mut prev = 0.0;
            for (i, &t) in grid[..split].iter().enumerate() {
                acc += if i == 0 {
                    quad::integrate_from_zero(|s| (1.0 - 2.0 * s) * eval(s, 1.0 - s), t, &settings)?
                } else {
                    quad::integrate(|s| (1.0 - 2.0 * s) * eval(s, 1.0 - s), prev, t, &settings)?
                };
                prev = t;
                out[i] = (t * (1.0 - t) * eval(t, 1.0 - t) - acc) / self.lambda;
            }
            let mut acc = 0.0;
            let mut prev = 0.0;
            for (offset, &t) in grid[split..].iter().enumerate().rev() {
                let v = 1.0 - t;
                acc += if offset + split == grid.len() - 1 {
                    quad::integrate_from_zero(|w| (2.0 * w - 1.0) * eval(1.0 - w, w), v, &settings)?
                } else {
                    quad::integrate(|w| (2.0 * w - 1.0) * eval(1.0 - w, w), prev, v, &settings)?
                };
                prev = v;
                out[split + offset] = (t * v * eval(t, v) + self.lambda + acc) / self.lambda;
            }
            Ok(out)
        })
    }
}

/// `c_T = E[T⁻¹; T ≥ ½] − E[(1−T)⁻¹; T < ½]`.
pub fn compute_ct(law: &MixingDistribution) -> Result<f64> {
    match law {
        MixingDistribution::Atomic(m) => Ok(ct_atomic(m)),
        MixingDistribution::Degenerate(rho) => Ok(ct_atomic(&AtomicMeasure::point(*rho)?)),
        _ => {
            let settings = QuadSettings::default();
            let upper = quad::integrate_from_zero(
                |w| law.density2(1.0 - w, w).unwrap_or(0.0) / (1.0 - w),
                0.5,
                &settings,
            )?;
            let lower = quad::integrate_from_zero(
                |s| law.density2(s, 1.0 - s).unwrap_or(0.0) / (1.0 - s),
                0.5,
                &settings,
            )?;
            Ok(upper - lower)
        }
    }
}

/// `c_T` of an atomic law, exact over rationals.
pub fn ct_atomic<S: Scalar>(measure: &AtomicMeasure<S>) -> S {
    let half = S::ratio(1, 2);
    measure.expect(|t| {
        if *t >= half {
            S::one() / t.clone()
        } else {
            -(S::one() / (S::one() - t.clone()))
        }
    })
}

/// The parent of an atomic `T`: a discrete law taking one value on each gap
/// `(t_k, t_{k+1}]` between consecutive atoms (with `t_0 = 0`, `t_{r+1} = 1`),
/// with mass equal to the gap length. Exact over rationals.
pub fn atomic_parent<S: Scalar>(measure: &AtomicMeasure<S>) -> Result<DiscreteDistribution<S>> {
    check_interior_probability(measure)?;
    let half = S::ratio(1, 2);
    let g = |u: &S| S::one() / (u.clone() * (S::one() - u.clone()));
    let four = S::from_i64(4);
    let c_t = ct_atomic(measure);
    let atoms = measure.atoms();
    let below_half = atoms
        .iter()
        .filter(|a| a.location < half)
        .fold(S::zero(), |acc, a| acc + a.weight.clone());
    let g_from_half = |t: &S| if *t > half { g(t) } else { four.clone() };
    let mut out = Vec::with_capacity(atoms.len() + 1);
    let mut left = S::zero();
    for k in 0..=atoms.len() {
        let mut x = -(four.clone() * below_half.clone()) - c_t.clone();
        for (i, a) in atoms.iter().enumerate() {
            if i < k {
                x = x + a.weight.clone() * g_from_half(&a.location);
            } else {
                x = x - a.weight.clone() * (g(&a.location) - g_from_half(&a.location));
            }
        }
        let right = if k < atoms.len() {
            atoms[k].location.clone()
        } else {
            S::one()
        };
        out.push((x, right.clone() - left));
        left = right;
    }
    DiscreteDistribution::new(out)
}

/// Quantile function of the normalized parent generated by `law`.
pub fn quantile_from_t(law: &MixingDistribution) -> Result<QuantileFunction> {
    match law {
        MixingDistribution::Atomic(m) => Ok(QuantileFunction::Discrete(atomic_parent(m)?)),
        MixingDistribution::Degenerate(rho) => Ok(QuantileFunction::Discrete(atomic_parent(
            &AtomicMeasure::point(*rho)?,
        )?)),
        _ => Ok(QuantileFunction::FromT(Box::new(FromT {
            law: law.clone(),
            c_t: compute_ct(law)?,
            settings: QuadSettings::default(),
        }))),
    }
}

/// Generator of a discrete parent: atoms at the cumulative masses `C_k` with
/// weights `C_k(1−C_k)(v_{k+1}−v_k)/λ`. Exact over rationals.
pub fn atomic_t_from_discrete<S: Scalar>(x: &DiscreteDistribution<S>) -> Result<(AtomicMeasure<S>, S)> {
    if x.len() < 2 {
        return Err(EosError::DegenerateInput("parent has a single atom".into()));
    }
    let cum = x.cumulative();
    let v = x.values();
    let raw: Vec<(S, S)> = (0..x.len() - 1)
        .map(|k| {
            let c = cum[k].clone();
            let w = c.clone() * (S::one() - c.clone()) * (v[k + 1].clone() - v[k].clone());
            (c, w)
        })
        .collect();
    let lambda = raw.iter().fold(S::zero(), |acc, a| acc + a.1.clone());
    let atoms = raw
        .into_iter()
        .map(|(location, w)| Atom {
            location,
            weight: w / lambda.clone(),
        })
        .collect();
    Ok((AtomicMeasure::new(atoms)?, lambda))
}

/// Law of `T` generated by a parent, with `λ = ∫₀¹(2t−1)F⁻¹(t)dt`.
#[derive(Debug, Clone, PartialEq)]
pub struct TLaw {
    pub law: MixingDistribution,
    pub lambda: f64,
}

/// Inverse of [`quantile_from_t`] up to location and scale of the parent.
pub fn t_from_x(q: &QuantileFunction) -> Result<TLaw> {
    if let QuantileFunction::Discrete(x) = q {
        let (measure, lambda) = atomic_t_from_discrete(x)?;
        return Ok(TLaw {
            law: MixingDistribution::Atomic(measure),
            lambda,
        });
    }
    let mu = max_moments(q, 2)?;
    let lambda = mu.mu[1] - mu.mu[0];
    if !(lambda > 1e-12) {
        return Err(EosError::DegenerateInput(format!("λ = {lambda} is not positive")));
    }
    Ok(TLaw {
        law: MixingDistribution::FromX(Box::new(Transformed {
            quantile: q.clone(),
            lambda,
        })),
        lambda,
    })
}

/// `μ_k = k ∫₀¹ u^{k−1} F⁻¹(u) du` for `k = 1..K`.
pub fn max_moments(q: &QuantileFunction, k_max: usize) -> Result<MaxMomentSequence<f64>> {
    if k_max == 0 {
        return Err(EosError::WrongLength { expected: 1, got: 0 });
    }
    let mu = match q {
        QuantileFunction::Discrete(x) => discrete_max_moments(x, k_max),
        QuantileFunction::ClosedForm(c) => (1..=k_max).map(|k| c.max_moment(k)).collect(),
        QuantileFunction::FromT(f) => {
            let settings = f.settings;
            (1..=k_max)
                .map(|k| {
                    with_quantile(q, |eval| {
                        let p = k as i32 - 1;
                        let kf = k as f64;
                        let left = quad::integrate_from_zero(|s| kf * s.powi(p) * eval(s, 1.0 - s), 0.5, &settings)?;
                        let right =
                            quad::integrate_from_zero(|w| kf * (1.0 - w).powi(p) * eval(1.0 - w, w), 0.5, &settings)?;
                        Ok(left + right)
                    })
                })
                .collect::<Result<Vec<f64>>>()?
        }
    };
    Ok(MaxMomentSequence { mu })
}

/// `E X_{k:k} = Σ v_i (C_iᵏ − C_{i−1}ᵏ)`, exact over rationals.
pub fn discrete_max_moments<S: Scalar>(x: &DiscreteDistribution<S>, k_max: usize) -> Vec<S> {
    let cum = x.cumulative();
    (1..=k_max)
        .map(|k| {
            let mut prev = S::zero();
            let mut total = S::zero();
            for (v, c) in x.values().iter().zip(&cum) {
                let ck = pow(c, k);
                total = total + v.clone() * (ck.clone() - prev);
                prev = ck;
            }
            total
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Lemma1Report {
    pub k_max: usize,
    /// `μ₁ … μ_{K+2}`
    pub max_moments: Vec<f64>,
    /// `|μ_{k+2} − μ_{k+1} − E Tᵏ|` for `k = 0..K`
    pub deviations: Vec<f64>,
    pub max_deviation: f64,
    pub mean_deviation: f64,
    pub passed: bool,
}

/// Checks `E X = 0` and `μ_{k+2} − μ_{k+1} = E Tᵏ` for `k = 0..K` on the
/// parent generated by `law`.
pub fn verify_lemma1(law: &MixingDistribution, k_max: usize, tol: f64) -> Result<Lemma1Report> {
    let q = quantile_from_t(law)?;
    let mu = max_moments(&q, k_max + 2)?.mu;
    let deviations = (0..=k_max)
        .map(|k| Ok((mu[k + 1] - mu[k] - law.moment(k)?).abs()))
        .collect::<Result<Vec<f64>>>()?;
    let max_deviation = deviations.iter().cloned().fold(0.0, f64::max);
    let mean_deviation = mu[0].abs();
    Ok(Lemma1Report {
        k_max,
        max_moments: mu,
        passed: max_deviation <= tol && mean_deviation <= tol,
        deviations,
        max_deviation,
        mean_deviation,
    })
}
