//! Hankel moment matrices with an endpoint margin `ε`, and positive
//! (semi)definiteness tests.
//!
//! A moment list `m₀..m_d` on `[0, 1]` yields two matrices. When the top
//! degree is even (`d = 2m`):
//!
//! ```text
//! a = (m_{i+j})_{i,j=0..m}
//! b = (m_{i+j+1} − m_{i+j+2} − ε(1−ε) m_{i+j})_{i,j=0..m−1}
//! ```
//!
//! and when it is odd (`d = 2m + 1`):
//!
//! ```text
//! a = (m_{i+j+1} − ε m_{i+j})_{i,j=0..m}
//! b = ((1−ε) m_{i+j} − m_{i+j+1})_{i,j=0..m}
//! ```
//!
//! Both being positive semidefinite is exactly the condition for the moments
//! to be carried by `[ε, 1−ε]`.

use num::BigRational;
use num::traits::{One, Signed, Zero};

use crate::eigen::symmetric_eigen;
use crate::error::{EosError, Result};
use crate::scalar::Scalar;

/// Default relative tolerance for float sign decisions.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Dense symmetric matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix<S> {
    dim: usize,
    entries: Vec<S>,
}

impl<S: Scalar> SymMatrix<S> {
    pub fn new(dim: usize, entries: Vec<S>) -> Result<Self> {
        if dim == 0 || entries.len() != dim * dim {
            return Err(EosError::WrongLength {
                expected: dim * dim,
                got: entries.len(),
            });
        }
        for i in 0..dim {
            for j in (i + 1)..dim {
                if entries[i * dim + j] != entries[j * dim + i] {
                    return Err(EosError::NonSymmetric { row: i, col: j });
                }
            }
        }
        Ok(Self { dim, entries })
    }

    /// Hankel matrix `(seq_{i+j})` of order `dim`.
    pub fn hankel(seq: &[S], dim: usize) -> Self {
        assert!(seq.len() + 1 >= 2 * dim, "sequence too short for order {dim}");
        let entries = (0..dim * dim).map(|k| seq[k / dim + k % dim].clone()).collect();
        Self { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.entries[i * self.dim + j]
    }

    pub fn entries(&self) -> &[S] {
        &self.entries
    }

    pub fn to_f64(&self) -> SymMatrix<f64> {
        SymMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(Scalar::to_f64).collect(),
        }
    }

    /// Leading principal block of order `k`.
    pub fn leading(&self, k: usize) -> Self {
        let entries = (0..k * k).map(|idx| self.get(idx / k, idx % k).clone()).collect();
        Self { dim: k, entries }
    }
}

/// Top-degree parity of the moment list: `Even(m)` for `d = 2m`, `Odd(m)` for `d = 2m+1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even(usize),
    Odd(usize),
}

impl Parity {
    pub fn of_degree(d: usize) -> Self {
        if d.is_multiple_of(2) {
            Parity::Even(d / 2)
        } else {
            Parity::Odd((d - 1) / 2)
        }
    }
}

/// Polynomial weight whose localized moments fill a Hankel matrix at `ε = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Localizer {
    /// `w(t) = 1`
    One,
    /// `w(t) = t`
    T,
    /// `w(t) = 1 − t`
    OneMinusT,
    /// `w(t) = t(1 − t)`
    TOneMinusT,
}

impl Localizer {
    pub fn weight(self, t: f64) -> f64 {
        match self {
            Localizer::One => 1.0,
            Localizer::T => t,
            Localizer::OneMinusT => 1.0 - t,
            Localizer::TOneMinusT => t * (1.0 - t),
        }
    }

    /// Sequence `∫ w(t) tᵏ dμ` computed from the moments of `μ`.
    pub fn apply<S: Scalar>(self, moments: &[S]) -> Vec<S> {
        let m = moments;
        match self {
            Localizer::One => m.to_vec(),
            Localizer::T => m[1..].to_vec(),
            Localizer::OneMinusT => m.windows(2).map(|w| w[0].clone() - w[1].clone()).collect(),
            Localizer::TOneMinusT => m[1..]
                .windows(2)
                .map(|w| w[0].clone() - w[1].clone())
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HankelPair<S> {
    pub parity: Parity,
    pub a: SymMatrix<S>,
    pub b: SymMatrix<S>,
    pub epsilon: S,
}

impl<S> HankelPair<S> {
    /// Weights carried by `a` and `b` at `ε = 0`.
    pub fn localizers(&self) -> (Localizer, Localizer) {
        match self.parity {
            Parity::Even(_) => (Localizer::One, Localizer::TOneMinusT),
            Parity::Odd(_) => (Localizer::T, Localizer::OneMinusT),
        }
    }
}

/// Builds the `ε`-margin Hankel pair from moments `m₀..m_d`, `d ≥ 2`.
pub fn build_hankel<S: Scalar>(moments: &[S], epsilon: &S) -> Result<HankelPair<S>> {
    if moments.len() < 3 {
        return Err(EosError::TooFewMoments {
            needed: 3,
            got: moments.len(),
        });
    }
    let half = S::ratio(1, 2);
    if epsilon.is_negative() || *epsilon >= half {
        return Err(EosError::EpsilonOutOfRange(epsilon.to_f64()));
    }
    let d = moments.len() - 1;
    let parity = Parity::of_degree(d);
    let eps = epsilon.clone();
    let one_minus = S::one() - eps.clone();
    let (a, b) = match parity {
        Parity::Even(m) => {
            let shrink = eps.clone() * one_minus;
            let bseq: Vec<S> = (0..=(2 * m - 2))
                .map(|k| {
                    moments[k + 1].clone() - moments[k + 2].clone() - shrink.clone() * moments[k].clone()
                })
                .collect();
            (SymMatrix::hankel(moments, m + 1), SymMatrix::hankel(&bseq, m))
        }
        Parity::Odd(m) => {
            let aseq: Vec<S> = (0..=2 * m)
                .map(|k| moments[k + 1].clone() - eps.clone() * moments[k].clone())
                .collect();
            let bseq: Vec<S> = (0..=2 * m)
                .map(|k| one_minus.clone() * moments[k].clone() - moments[k + 1].clone())
                .collect();
            (SymMatrix::hankel(&aseq, m + 1), SymMatrix::hankel(&bseq, m + 1))
        }
    };
    Ok(HankelPair {
        parity,
        a,
        b,
        epsilon: eps,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PsdStatus {
    PositiveDefinite,
    PositiveSemidefiniteSingular,
    Indefinite,
}

impl PsdStatus {
    pub fn is_psd(self) -> bool {
        !matches!(self, PsdStatus::Indefinite)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PsdVerdict {
    pub status: PsdStatus,
    pub min_eigenvalue: f64,
    /// Largest absolute eigenvalue.
    pub scale: f64,
    /// Status was decided in exact arithmetic.
    pub exact: bool,
    /// Exact rank, when decided exactly.
    pub rank: Option<usize>,
}

/// Classifies a symmetric matrix.
///
/// Float matrices use the Jacobi spectrum: definite iff
/// `λ_min > tol·max(1, |λ_max|)`, indefinite iff `λ_min < −tol·max(1, |λ_max|)`.
/// Rational matrices are classified exactly by symmetric elimination; the
/// spectrum is still reported for information.
pub fn psd_check<S: Scalar>(m: &SymMatrix<S>, tol: f64) -> Result<PsdVerdict> {
    if tol.is_nan() || tol < 0.0 {
        return Err(EosError::InvalidMoments(format!("tolerance {tol} must be nonnegative")));
    }
    let dense = m.to_f64();
    let eig = symmetric_eigen(dense.entries(), m.dim());
    let min_eigenvalue = eig.min();
    let scale = eig.max_abs();
    if S::EXACT {
        let exact: Vec<BigRational> = m
            .entries
            .iter()
            .map(|v| v.to_rational().expect("exact scalar"))
            .collect();
        let (status, rank) = exact_psd_status(&exact, m.dim());
        return Ok(PsdVerdict {
            status,
            min_eigenvalue,
            scale,
            exact: true,
            rank,
        });
    }
    let threshold = tol * scale.max(1.0);
    let status = if min_eigenvalue > threshold {
        PsdStatus::PositiveDefinite
    } else if min_eigenvalue < -threshold {
        PsdStatus::Indefinite
    } else {
        PsdStatus::PositiveSemidefiniteSingular
    };
    Ok(PsdVerdict {
        status,
        min_eigenvalue,
        scale,
        exact: false,
        rank: None,
    })
}

/// Exact classification by diagonal-pivoted symmetric elimination.
///
/// A positive pivot is eliminated through its Schur complement; a negative
/// diagonal, or a zero diagonal with a nonzero row, proves indefiniteness.
fn exact_psd_status(entries: &[BigRational], dim: usize) -> (PsdStatus, Option<usize>) {
    let mut a: Vec<Vec<BigRational>> = (0..dim)
        .map(|i| entries[i * dim..(i + 1) * dim].to_vec())
        .collect();
    let mut active: Vec<usize> = (0..dim).collect();
    let mut rank = 0;
    while !active.is_empty() {
        if active.iter().any(|&i| a[i][i].is_negative()) {
            return (PsdStatus::Indefinite, None);
        }
        let pivot = active.iter().copied().find(|&i| a[i][i].is_positive());
        let Some(p) = pivot else {
            let nonzero = active
                .iter()
                .any(|&i| active.iter().any(|&j| i != j && !a[i][j].is_zero()));
            if nonzero {
                return (PsdStatus::Indefinite, None);
            }
            break;
        };
        active.retain(|&i| i != p);
        let inv = BigRational::one() / a[p][p].clone();
        for &i in &active {
            if a[i][p].is_zero() {
                continue;
            }
            let factor = a[i][p].clone() * inv.clone();
            for &j in &active {
                let delta = factor.clone() * a[p][j].clone();
                a[i][j] -= delta;
            }
        }
        rank += 1;
    }
    let status = if rank == dim {
        PsdStatus::PositiveDefinite
    } else {
        PsdStatus::PositiveSemidefiniteSingular
    };
    (status, Some(rank))
}
