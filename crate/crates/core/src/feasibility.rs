//! Feasibility decisions for EOS candidates, binomial mixtures and points of
//! the moment-curve hull.
//!
//! Every decision reduces to one question about a moment vector `m₀..m_d`:
//! does it have a representing measure supported inside the open interval
//! `(0, 1)`? That is answered constructively. Indefinite Hankel matrices rule
//! it out; two definite matrices admit an interior principal representation;
//! otherwise the representing measure is unique and the answer depends on
//! whether it charges an endpoint.

use num::BigRational;

use crate::error::{EosError, Result};
use crate::hankel::{build_hankel, psd_check, PsdStatus, DEFAULT_TOL};
use crate::moments::{nu_from_beta, spacings_and_lambda, u_from_p, BetaSequence, ProbabilityVector, UVector};
use crate::recovery::{
    determinate_representation, endpoint_atoms, principal_representation, snap_to_rational, support_gap,
    verify_measure, Atom, AtomicMeasure,
};
use crate::scalar::{to_f64_vec, Number, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FeasibilityStatus {
    Feasible,
    Infeasible,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reason {
    StrictDefinite,
    OpenSupportDeterminate,
    NecessaryPsdFailed,
    BoundaryAtomAtEndpoint,
    ClosedFormN4,
    ClosedFormN5,
}

impl Reason {
    pub fn name(self) -> &'static str {
        match self {
            Reason::StrictDefinite => "StrictDefinite",
            Reason::OpenSupportDeterminate => "OpenSupportDeterminate",
            Reason::NecessaryPsdFailed => "NecessaryPsdFailed",
            Reason::BoundaryAtomAtEndpoint => "BoundaryAtomAtEndpoint",
            Reason::ClosedFormN4 => "ClosedFormN4",
            Reason::ClosedFormN5 => "ClosedFormN5",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        [
            Reason::StrictDefinite,
            Reason::OpenSupportDeterminate,
            Reason::NecessaryPsdFailed,
            Reason::BoundaryAtomAtEndpoint,
            Reason::ClosedFormN4,
            Reason::ClosedFormN5,
        ]
        .into_iter()
        .find(|r| r.name() == name)
    }
}

/// Representing measure backing a feasible verdict.
#[derive(Debug, Clone, PartialEq)]
pub enum Certificate {
    Exact(AtomicMeasure<BigRational>),
    Approx(AtomicMeasure<f64>),
}

impl Certificate {
    pub fn to_f64(&self) -> AtomicMeasure<f64> {
        match self {
            Certificate::Exact(m) => m.to_f64(),
            Certificate::Approx(m) => m.clone(),
        }
    }

    pub fn support_gap(&self) -> Number {
        match self {
            Certificate::Exact(m) => Number::Exact(support_gap(m)),
            Certificate::Approx(m) => Number::Float(support_gap(m)),
        }
    }

    /// Half the support gap: the certificate lives in `[ε, 1 − ε]`.
    pub fn epsilon_witness(&self) -> Number {
        match self.support_gap() {
            Number::Exact(g) => Number::Exact(g / BigRational::from_integer(2.into())),
            Number::Float(g) => Number::Float(g / 2.0),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FeasibilityVerdict {
    pub status: FeasibilityStatus,
    pub reason: Reason,
    pub epsilon_witness: Option<Number>,
    pub certificate: Option<Certificate>,
    /// Every sign decision was made in exact arithmetic.
    pub exact: bool,
    /// Distance of the boundary measure from `{0, 1}` for endpoint rejections.
    pub boundary_distance: Option<f64>,
}

impl FeasibilityVerdict {
    pub fn is_feasible(&self) -> bool {
        self.status == FeasibilityStatus::Feasible
    }

    fn feasible(reason: Reason, certificate: Certificate, exact: bool) -> Self {
        Self {
            status: FeasibilityStatus::Feasible,
            reason,
            epsilon_witness: Some(certificate.epsilon_witness()),
            certificate: Some(certificate),
            exact,
            boundary_distance: None,
        }
    }

    fn infeasible(reason: Reason, exact: bool, boundary_distance: Option<f64>) -> Self {
        Self {
            status: FeasibilityStatus::Infeasible,
            reason,
            epsilon_witness: None,
            certificate: None,
            exact,
            boundary_distance,
        }
    }
}

/// Decides whether `m₀..m_d` (`m₀ > 0`) is the moment vector of a measure
/// supported inside `(0, 1)`.
pub fn decide_moments<S: Scalar>(moments: &[S], tol: f64) -> Result<FeasibilityVerdict> {
    if tol.is_nan() || tol < 0.0 {
        return Err(EosError::InvalidMoments(format!("tolerance {tol} must be nonnegative")));
    }
    let exact = S::EXACT;
    match moments.len() {
        0 => return Err(EosError::TooFewMoments { needed: 1, got: 0 }),
        1 => {
            let point = AtomicMeasure::new(vec![Atom {
                location: S::ratio(1, 2),
                weight: moments[0].clone(),
            }])?;
            return Ok(FeasibilityVerdict::feasible(Reason::StrictDefinite, lift(&point), exact));
        }
        2 => return decide_one_moment(moments, tol),
        _ => {}
    }
    let pair = build_hankel(moments, &S::zero())?;
    let va = psd_check(&pair.a, tol)?;
    let vb = psd_check(&pair.b, tol)?;
    if va.status == PsdStatus::Indefinite || vb.status == PsdStatus::Indefinite {
        return Ok(FeasibilityVerdict::infeasible(Reason::NecessaryPsdFailed, exact, None));
    }
    let floats = to_f64_vec(moments);
    let ftol = tol.max(DEFAULT_TOL);
    if va.status == PsdStatus::PositiveDefinite && vb.status == PsdStatus::PositiveDefinite {
        let measure = checked(principal_representation(&floats)?, &floats, ftol)?;
        return Ok(FeasibilityVerdict::feasible(
            Reason::StrictDefinite,
            certify(measure, moments),
            exact,
        ));
    }
    let (la, lb) = pair.localizers();
    let (localizer, verdict) = if va.status == PsdStatus::PositiveSemidefiniteSingular {
        (la, va)
    } else {
        (lb, vb)
    };
    if exact {
        let rank = verdict.rank.expect("exact verdicts carry a rank");
        let (at_zero, at_one) = endpoint_atoms(moments, localizer, rank)?;
        if at_zero || at_one {
            return Ok(FeasibilityVerdict::infeasible(
                Reason::BoundaryAtomAtEndpoint,
                true,
                Some(0.0),
            ));
        }
        let measure = determinate_representation(&floats, localizer, Some(rank), ftol)?;
        let measure = checked(measure, &floats, ftol)?;
        return Ok(FeasibilityVerdict::feasible(
            Reason::OpenSupportDeterminate,
            certify(measure, moments),
            true,
        ));
    }
    let measure = checked(determinate_representation(&floats, localizer, None, ftol)?, &floats, ftol)?;
    let gap = support_gap(&measure);
    if gap <= tol {
        return Ok(FeasibilityVerdict::infeasible(
            Reason::BoundaryAtomAtEndpoint,
            false,
            Some(gap),
        ));
    }
    Ok(FeasibilityVerdict::feasible(
        Reason::OpenSupportDeterminate,
        Certificate::Approx(measure),
        false,
    ))
}

fn decide_one_moment<S: Scalar>(moments: &[S], tol: f64) -> Result<FeasibilityVerdict> {
    let exact = S::EXACT;
    let t = moments[1].clone() / moments[0].clone();
    if t < S::zero() || t > S::one() {
        return Ok(FeasibilityVerdict::infeasible(Reason::NecessaryPsdFailed, exact, None));
    }
    let gap = {
        let right = S::one() - t.clone();
        if t < right { t.clone() } else { right }
    };
    let on_boundary = if exact { gap.is_zero() } else { gap.to_f64() <= tol };
    if on_boundary {
        return Ok(FeasibilityVerdict::infeasible(
            Reason::BoundaryAtomAtEndpoint,
            exact,
            Some(gap.to_f64()),
        ));
    }
    let point = AtomicMeasure::new(vec![Atom {
        location: t,
        weight: moments[0].clone(),
    }])?;
    Ok(FeasibilityVerdict::feasible(Reason::StrictDefinite, lift(&point), exact))
}

fn checked(measure: AtomicMeasure<f64>, moments: &[f64], tol: f64) -> Result<AtomicMeasure<f64>> {
    let check = verify_measure(&measure, moments, tol);
    if check.ok {
        Ok(measure)
    } else {
        Err(EosError::RecoveryFailed(format!(
            "certificate misses the moments by {:e}",
            check.max_residual
        )))
    }
}

fn lift<S: Scalar>(measure: &AtomicMeasure<S>) -> Certificate {
    if S::EXACT {
        let atoms = measure
            .atoms()
            .iter()
            .map(|a| Atom {
                location: a.location.to_rational().expect("exact scalar"),
                weight: a.weight.to_rational().expect("exact scalar"),
            })
            .collect();
        Certificate::Exact(AtomicMeasure::new(atoms).expect("validated measure"))
    } else {
        Certificate::Approx(measure.to_f64())
    }
}

fn certify<S: Scalar>(measure: AtomicMeasure<f64>, moments: &[S]) -> Certificate {
    if S::EXACT {
        let exact: Vec<BigRational> = moments
            .iter()
            .map(|m| m.to_rational().expect("exact scalar"))
            .collect();
        if let Some(m) = snap_to_rational(&measure, &exact) {
            return Certificate::Exact(m);
        }
    }
    Certificate::Approx(measure)
}

/// Decides whether `β` are expected order statistics of some non-degenerate
/// integrable law. The certificate is the mixing law of `T` on `(0, 1)`.
pub fn check_eos<S: Scalar>(beta: &BetaSequence<S>, tol: f64) -> Result<FeasibilityVerdict> {
    let nu = nu_from_beta(beta)?;
    decide_moments(&nu.nu, tol)
}

fn closed_form<S: Scalar>(
    beta: &BetaSequence<S>,
    feasible: bool,
    reason: Reason,
    tol: f64,
) -> Result<FeasibilityVerdict> {
    if !feasible {
        return Ok(FeasibilityVerdict::infeasible(reason, S::EXACT, None));
    }
    let general = check_eos(beta, tol)?;
    let mut verdict = FeasibilityVerdict {
        status: FeasibilityStatus::Feasible,
        reason,
        epsilon_witness: None,
        certificate: None,
        exact: S::EXACT,
        boundary_distance: None,
    };
    if general.is_feasible() {
        verdict.epsilon_witness = general.epsilon_witness;
        verdict.certificate = general.certificate;
    }
    Ok(verdict)
}

// Sign of `lhs − rhs`, with float differences below `tol·max(|lhs|, |rhs|)` read as zero.
fn compare<S: Scalar>(lhs: S, rhs: S, tol: f64) -> std::cmp::Ordering {
    use std::cmp::Ordering;
    if S::EXACT {
        return lhs.partial_cmp(&rhs).unwrap_or(Ordering::Equal);
    }
    let (l, r) = (lhs.to_f64(), rhs.to_f64());
    if (l - r).abs() <= tol * l.abs().max(r.abs()) {
        Ordering::Equal
    } else if l > r {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

/// `n = 4`: feasible iff `(β₂−β₁)(β₄−β₃) ≥ (2/3)²(β₃−β₂)²`.
pub fn check_ns_n4<S: Scalar>(beta: &BetaSequence<S>, tol: f64) -> Result<FeasibilityVerdict> {
    if beta.n() != 4 {
        return Err(EosError::WrongLength { expected: 4, got: beta.n() });
    }
    let (d, _) = spacings_and_lambda(beta);
    let lhs = d[0].clone() * d[2].clone();
    let rhs = S::ratio(4, 9) * d[1].clone() * d[1].clone();
    let feasible = compare(lhs, rhs, tol) != std::cmp::Ordering::Less;
    closed_form(beta, feasible, Reason::ClosedFormN4, tol)
}

/// `n = 5`: with `L = 2(β₂−β₁)(β₄−β₃) − (β₃−β₂)²` and
/// `R = 2(β₃−β₂)(β₅−β₄) − (β₄−β₃)²`, feasible iff `L, R > 0` or `L = R = 0`.
pub fn check_n5<S: Scalar>(beta: &BetaSequence<S>, tol: f64) -> Result<FeasibilityVerdict> {
    use std::cmp::Ordering;
    if beta.n() != 5 {
        return Err(EosError::WrongLength { expected: 5, got: beta.n() });
    }
    let (d, _) = spacings_and_lambda(beta);
    let two = S::from_i64(2);
    let l = compare(two.clone() * d[0].clone() * d[2].clone(), d[1].clone() * d[1].clone(), tol);
    let r = compare(two * d[1].clone() * d[3].clone(), d[2].clone() * d[2].clone(), tol);
    let feasible = matches!(
        (l, r),
        (Ordering::Greater, Ordering::Greater) | (Ordering::Equal, Ordering::Equal)
    );
    closed_form(beta, feasible, Reason::ClosedFormN5, tol)
}

/// Whether `p` is a mixture of binomial laws `Bin(n, V)` with `0 < V < 1`.
/// The certificate is the mixing law of `V`.
pub fn check_mixture<S: Scalar>(p: &ProbabilityVector<S>, tol: f64) -> Result<FeasibilityVerdict> {
    let u = u_from_p(p);
    decide_moments(&u.u, tol)
}

/// Whether `u` lies in the convex hull of the open moment curve
/// `{(1, t, …, tⁿ) : 0 < t < 1}`.
pub fn check_moment_hull<S: Scalar>(u: &UVector<S>, tol: f64) -> Result<FeasibilityVerdict> {
    decide_moments(&u.u, tol)
}
