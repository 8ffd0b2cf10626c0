//! Atomic representing measures on `[0, 1]` recovered from truncated moments.
//!
//! Positive definite moment vectors get a principal (Gauss-type)
//! representation; boundary vectors, where one Hankel matrix is singular, have
//! a unique representing measure which is rebuilt from the kernel of the
//! singular matrix.

use std::cmp::Ordering;

use num::BigRational;
use num::traits::One;

use crate::eigen::symmetric_eigen;
use crate::error::{EosError, Result};
use crate::hankel::{build_hankel, psd_check, Localizer, Parity, PsdStatus, SymMatrix};
use crate::scalar::{approximate_rational, pow, Scalar};

/// Eigenvalues below this fraction of `max(1, σ_max)` count as zero.
pub const RANK_THRESHOLD: f64 = 1e-10;
/// Eigenvalues in `[1e-12, 1e-8]·max(1, σ_max)` make the rank ambiguous.
pub const AMBIGUITY_BAND: (f64, f64) = (1e-12, 1e-8);
/// Nodes within this distance of `[0, 1]` are clamped onto it.
pub const CLAMP_TOL: f64 = 1e-12;
/// Largest denominator tried when snapping float nodes to rationals.
pub const SNAP_DENOMINATOR: i64 = 1_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct Atom<S> {
    pub location: S,
    pub weight: S,
}

/// Finitely supported measure on `[0, 1]` with strictly increasing locations
/// and positive weights.
#[derive(Debug, Clone, PartialEq)]
pub struct AtomicMeasure<S> {
    atoms: Vec<Atom<S>>,
}

impl<S: Scalar> AtomicMeasure<S> {
    pub fn new(atoms: Vec<Atom<S>>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(EosError::InvalidDistribution("measure has no atoms".into()));
        }
        for (i, a) in atoms.iter().enumerate() {
            if !(a.location >= S::zero() && a.location <= S::one()) {
                return Err(EosError::InvalidDistribution(format!(
                    "atom {i} at {} lies outside [0, 1]",
                    a.location.to_f64()
                )));
            }
            if !(a.weight > S::zero()) {
                return Err(EosError::InvalidDistribution(format!(
                    "atom {i} has nonpositive weight {}",
                    a.weight.to_f64()
                )));
            }
            if i > 0 && atoms[i - 1].location >= a.location {
                return Err(EosError::InvalidDistribution(format!(
                    "atom locations must increase strictly at index {i}"
                )));
            }
        }
        Ok(Self { atoms })
    }

    /// Unit mass at `t`.
    pub fn point(t: S) -> Result<Self> {
        Self::new(vec![Atom {
            location: t,
            weight: S::one(),
        }])
    }

    pub fn atoms(&self) -> &[Atom<S>] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn total_mass(&self) -> S {
        self.atoms.iter().fold(S::zero(), |acc, a| acc + a.weight.clone())
    }

    /// `Σ wᵢ tᵢᵏ`
    pub fn moment(&self, k: usize) -> S {
        self.atoms
            .iter()
            .fold(S::zero(), |acc, a| acc + a.weight.clone() * pow(&a.location, k))
    }

    /// Moments of orders `0..count`.
    pub fn moments(&self, count: usize) -> Vec<S> {
        (0..count).map(|k| self.moment(k)).collect()
    }

    /// `E f(T)`
    pub fn expect(&self, f: impl Fn(&S) -> S) -> S {
        self.atoms
            .iter()
            .fold(S::zero(), |acc, a| acc + a.weight.clone() * f(&a.location))
    }

    pub fn to_f64(&self) -> AtomicMeasure<f64> {
        AtomicMeasure {
            atoms: self
                .atoms
                .iter()
                .map(|a| Atom {
                    location: a.location.to_f64(),
                    weight: a.weight.to_f64(),
                })
                .collect(),
        }
    }
}

/// `min(t_min, 1 − t_max)`: how far the support stays from the endpoints.
pub fn support_gap<S: Scalar>(measure: &AtomicMeasure<S>) -> S {
    let first = measure.atoms[0].location.clone();
    let last = measure.atoms[measure.atoms.len() - 1].location.clone();
    let right = S::one() - last;
    if first < right {
        first
    } else {
        right
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasureCheck {
    pub ok: bool,
    pub max_residual: f64,
}

/// Compares moments of `measure` with `moments`, each within `tol·max(1, |m_k|)`.
pub fn verify_measure<S: Scalar>(measure: &AtomicMeasure<S>, moments: &[S], tol: f64) -> MeasureCheck {
    let tol_s = S::from_f64(tol);
    let mut ok = true;
    let mut max_residual = 0.0f64;
    for (k, target) in moments.iter().enumerate() {
        let diff = (measure.moment(k) - target.clone()).abs();
        let scale = if target.abs() > S::one() { target.abs() } else { S::one() };
        if diff > tol_s.clone() * scale {
            ok = false;
        }
        max_residual = max_residual.max(diff.to_f64());
    }
    MeasureCheck { ok, max_residual }
}

/// Recovers a representing measure for `m₀..m_K`, `K ≥ 1`.
///
/// Both Hankel matrices must be positive semidefinite at `ε = 0`.
pub fn recover_measure(moments: &[f64], tol: f64) -> Result<AtomicMeasure<f64>> {
    validate_moments(moments)?;
    let measure = if moments.len() == 2 {
        single_atom(moments)?
    } else {
        let pair = build_hankel(moments, &0.0)?;
        let va = psd_check(&pair.a, tol)?;
        let vb = psd_check(&pair.b, tol)?;
        let (la, lb) = pair.localizers();
        match (va.status, vb.status) {
            (PsdStatus::Indefinite, _) | (_, PsdStatus::Indefinite) => {
                return Err(EosError::NotRepresentable(
                    "a Hankel matrix is indefinite".into(),
                ))
            }
            (PsdStatus::PositiveDefinite, PsdStatus::PositiveDefinite) => {
                principal_representation(moments)?
            }
            (PsdStatus::PositiveSemidefiniteSingular, _) => {
                determinate_representation(moments, la, None, tol)?
            }
            _ => determinate_representation(moments, lb, None, tol)?,
        }
    };
    let check = verify_measure(&measure, moments, tol);
    if !check.ok {
        return Err(EosError::NotRepresentable(format!(
            "recovered measure misses the moments by {:e}",
            check.max_residual
        )));
    }
    Ok(measure)
}

fn validate_moments(moments: &[f64]) -> Result<()> {
    if moments.len() < 2 {
        return Err(EosError::TooFewMoments {
            needed: 2,
            got: moments.len(),
        });
    }
    if let Some(k) = moments.iter().position(|m| !m.is_finite()) {
        return Err(EosError::InvalidMoments(format!("moment {k} is not finite")));
    }
    if !(moments[0] > 0.0) {
        return Err(EosError::InvalidMoments("total mass must be positive".into()));
    }
    Ok(())
}

fn single_atom(moments: &[f64]) -> Result<AtomicMeasure<f64>> {
    let t = clamp_node(moments[1] / moments[0])?;
    AtomicMeasure::new(vec![Atom {
        location: t,
        weight: moments[0],
    }])
}

fn clamp_node(t: f64) -> Result<f64> {
    if (0.0..=1.0).contains(&t) {
        Ok(t)
    } else if t > -CLAMP_TOL && t < 0.0 {
        Ok(0.0)
    } else if t > 1.0 && t < 1.0 + CLAMP_TOL {
        Ok(1.0)
    } else {
        Err(EosError::NotRepresentable(format!("node {t} lies outside [0, 1]")))
    }
}

/// `count`-point Gauss rule of the positive functional with moments
/// `s₀..s_{2·count−1}`, as `(node, weight)` pairs in ascending node order.
///
/// The Jacobi matrix is read off a partial Cholesky factor of the moment
/// Hankel matrix; nodes are its eigenvalues and weights are `s₀` times the
/// squared first eigenvector components.
pub fn gauss_rule(s: &[f64], count: usize) -> Result<Vec<(f64, f64)>> {
    if count == 0 {
        return Ok(Vec::new());
    }
    if s.len() < 2 * count {
        return Err(EosError::TooFewMoments {
            needed: 2 * count,
            got: s.len(),
        });
    }
    let n = count;
    let mut r = vec![vec![0.0; n + 1]; n];
    for i in 0..n {
        let d = s[2 * i] - (0..i).map(|k| r[k][i] * r[k][i]).sum::<f64>();
        if !(d > 0.0) {
            return Err(EosError::NotRepresentable(
                "moment matrix is not positive definite".into(),
            ));
        }
        r[i][i] = d.sqrt();
        for j in (i + 1)..=n {
            let acc: f64 = (0..i).map(|k| r[k][i] * r[k][j]).sum();
            r[i][j] = (s[i + j] - acc) / r[i][i];
        }
    }
    let mut jac = vec![0.0; n * n];
    for i in 0..n {
        let prev = if i == 0 { 0.0 } else { r[i - 1][i] / r[i - 1][i - 1] };
        jac[i * n + i] = r[i][i + 1] / r[i][i] - prev;
        if i + 1 < n {
            let b = r[i + 1][i + 1] / r[i][i];
            jac[i * n + i + 1] = b;
            jac[(i + 1) * n + i] = b;
        }
    }
    let eig = symmetric_eigen(&jac, n);
    Ok((0..n)
        .map(|k| {
            let v0 = eig.vectors[k];
            (eig.values[k], s[0] * v0 * v0)
        })
        .collect())
}

/// Representation of a positive definite moment vector with support inside `(0, 1)`.
///
/// Odd top degree `2m+1` gives the `(m+1)`-point Gauss rule. Even top degree
/// `2m` places one atom at a small `ε > 0` and `m` atoms at the Gauss nodes of
/// the functional `p ↦ L((t − ε)p)`, shrinking `ε` until every weight is
/// positive and the support stays inside `(0, 1)`.
pub fn principal_representation(moments: &[f64]) -> Result<AtomicMeasure<f64>> {
    validate_moments(moments)?;
    let d = moments.len() - 1;
    if d == 1 {
        return single_atom(moments);
    }
    let atoms = match Parity::of_degree(d) {
        Parity::Odd(m) => gauss_rule(moments, m + 1)?,
        Parity::Even(m) => lower_principal(moments, m)?,
    };
    let atoms = atoms
        .into_iter()
        .map(|(t, w)| Ok((clamp_node(t)?, w)))
        .collect::<Result<Vec<_>>>()?;
    build_measure(atoms)
}

fn lower_principal(moments: &[f64], m: usize) -> Result<Vec<(f64, f64)>> {
    let shifted: Vec<f64> = moments[1..].to_vec();
    let base = gauss_rule(&shifted, m)?;
    let mut eps = base[0].0 / 2.0;
    for _ in 0..80 {
        if !(eps > 0.0) {
            break;
        }
        let s: Vec<f64> = (0..2 * m).map(|k| moments[k + 1] - eps * moments[k]).collect();
        if let Ok(rule) = gauss_rule(&s, m) {
            let mut atoms: Vec<(f64, f64)> = Vec::with_capacity(m + 1);
            let mut valid = true;
            for &(t, omega) in &rule {
                if !(t > eps && t < 1.0 && omega > 0.0) {
                    valid = false;
                    break;
                }
                atoms.push((t, omega / (t - eps)));
            }
            let rest = moments[0] - atoms.iter().map(|a| a.1).sum::<f64>();
            if valid && rest > 0.0 {
                atoms.insert(0, (eps, rest));
                return Ok(atoms);
            }
        }
        eps /= 2.0;
    }
    Err(EosError::RecoveryFailed(
        "no interior lower principal representation found".into(),
    ))
}

/// Numerical rank of a positive semidefinite matrix.
pub fn numerical_rank(m: &SymMatrix<f64>) -> Result<usize> {
    let eig = symmetric_eigen(m.entries(), m.dim());
    let scale = eig.max_abs().max(1.0);
    let (lo, hi) = AMBIGUITY_BAND;
    let mut rank = 0;
    for &v in &eig.values {
        let ratio = v.abs() / scale;
        if (lo..=hi).contains(&ratio) {
            return Err(EosError::RankDetectionAmbiguous { ratio });
        }
        if v > RANK_THRESHOLD * scale {
            rank += 1;
        }
    }
    Ok(rank)
}

/// The unique representing measure of a boundary moment vector.
///
/// `localizer` names the singular Hankel matrix. The localized measure
/// `w·μ` has exactly `rank` atoms, found by a Gauss rule; any remaining mass
/// sits at the zeros of `w` in `{0, 1}` and is solved from `m₀` and `m₁`.
/// `rank` is detected numerically when not supplied.
pub fn determinate_representation(
    moments: &[f64],
    localizer: Localizer,
    rank: Option<usize>,
    tol: f64,
) -> Result<AtomicMeasure<f64>> {
    validate_moments(moments)?;
    let s = localizer.apply(moments);
    let dim = s.len().div_ceil(2);
    let r = match rank {
        Some(r) => r,
        None => numerical_rank(&SymMatrix::hankel(&s, dim))?,
    };
    if r >= dim {
        return Err(EosError::NotRepresentable(
            "localizing matrix is not singular".into(),
        ));
    }
    let mut atoms: Vec<(f64, f64)> = Vec::with_capacity(r + 2);
    for (t, omega) in gauss_rule(&s, r)? {
        let t = clamp_node(t)?;
        let w = localizer.weight(t);
        if !(w > 0.0) {
            return Err(EosError::NotRepresentable(format!(
                "kernel root {t} lies on a zero of the localizing weight"
            )));
        }
        atoms.push((t, omega / w));
    }
    let sum0: f64 = atoms.iter().map(|a| a.1).sum();
    let sum1: f64 = atoms.iter().map(|a| a.0 * a.1).sum();
    let (mass0, mass1) = match localizer {
        Localizer::One => (0.0, 0.0),
        Localizer::T => (moments[0] - sum0, 0.0),
        Localizer::OneMinusT => (0.0, moments[0] - sum0),
        Localizer::TOneMinusT => {
            let mass1 = moments[1] - sum1;
            (moments[0] - sum0 - mass1, mass1)
        }
    };
    let floor = tol * moments[0].max(1.0);
    for (t, mass) in [(0.0, mass0), (1.0, mass1)] {
        if mass < -floor {
            return Err(EosError::NotRepresentable(format!(
                "negative endpoint mass {mass} at {t}"
            )));
        }
        if mass > floor {
            atoms.push((t, mass));
        }
    }
    build_measure(atoms)
}

fn build_measure(mut atoms: Vec<(f64, f64)>) -> Result<AtomicMeasure<f64>> {
    atoms.retain(|a| a.1 > 0.0);
    atoms.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap_or(Ordering::Equal));
    let mut merged: Vec<Atom<f64>> = Vec::with_capacity(atoms.len());
    for (t, w) in atoms {
        match merged.last_mut() {
            Some(last) if last.location == t => last.weight += w,
            _ => merged.push(Atom {
                location: t,
                weight: w,
            }),
        }
    }
    AtomicMeasure::new(merged)
}

/// Solves `a x = b` by Gaussian elimination with partial pivoting.
pub(crate) fn solve<S: Scalar>(mut a: Vec<Vec<S>>, mut b: Vec<S>) -> Option<Vec<S>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| {
            a[i][col]
                .abs()
                .partial_cmp(&a[j][col].abs())
                .unwrap_or(Ordering::Equal)
        })?;
        if a[pivot][col].is_zero() {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in (col + 1)..n {
            if a[row][col].is_zero() {
                continue;
            }
            let f = a[row][col].clone() / a[col][col].clone();
            let (top, bottom) = a.split_at_mut(row);
            for (x, p) in bottom[0][col..].iter_mut().zip(&top[col][col..]) {
                *x = x.clone() - f.clone() * p.clone();
            }
            let delta = f * b[col].clone();
            b[row] = b[row].clone() - delta;
        }
    }
    let mut x = vec![S::zero(); n];
    for row in (0..n).rev() {
        let mut acc = b[row].clone();
        for k in (row + 1)..n {
            acc = acc - a[row][k].clone() * x[k].clone();
        }
        x[row] = acc / a[row][row].clone();
    }
    Some(x)
}

/// Monic polynomial of degree `r` orthogonal to lower degrees under the
/// functional with moments `s`; coefficients in ascending order.
pub fn kernel_polynomial<S: Scalar>(s: &[S], r: usize) -> Result<Vec<S>> {
    if s.len() < 2 * r {
        return Err(EosError::TooFewMoments {
            needed: 2 * r,
            got: s.len(),
        });
    }
    let a: Vec<Vec<S>> = (0..r)
        .map(|i| (0..r).map(|j| s[i + j].clone()).collect())
        .collect();
    let rhs: Vec<S> = (0..r).map(|i| -s[r + i].clone()).collect();
    let mut coeffs = solve(a, rhs).ok_or_else(|| {
        EosError::NotRepresentable("leading Hankel block is singular".into())
    })?;
    coeffs.push(S::one());
    Ok(coeffs)
}

fn poly_eval<S: Scalar>(p: &[S], t: &S) -> S {
    p.iter()
        .rev()
        .fold(S::zero(), |acc, c| acc * t.clone() + c.clone())
}

fn poly_mul<S: Scalar>(p: &[S], q: &[S]) -> Vec<S> {
    let mut out = vec![S::zero(); p.len() + q.len() - 1];
    for (i, a) in p.iter().enumerate() {
        for (j, b) in q.iter().enumerate() {
            out[i + j] = out[i + j].clone() + a.clone() * b.clone();
        }
    }
    out
}

fn functional<S: Scalar>(p: &[S], moments: &[S]) -> Result<S> {
    if p.len() > moments.len() {
        return Err(EosError::TooFewMoments {
            needed: p.len(),
            got: moments.len(),
        });
    }
    Ok(p.iter()
        .zip(moments)
        .fold(S::zero(), |acc, (c, m)| acc + c.clone() * m.clone()))
}

/// Whether the determinate measure of a boundary moment vector charges `0`
/// and `1`.
///
/// `localizer` names a singular Hankel matrix of exact rank `rank`. With `q`
/// its kernel polynomial, atoms at the zeros of the weight carry masses
/// `L(q²(1−t))/q(0)²` and `L(q²t)/q(1)²` (or `L(q²)/q(e)²` for one-sided
/// weights), and atoms at the roots of `q` show up as `q(0) = 0` or `q(1) = 0`.
pub fn endpoint_atoms<S: Scalar>(moments: &[S], localizer: Localizer, rank: usize) -> Result<(bool, bool)> {
    let s = localizer.apply(moments);
    let q = kernel_polynomial(&s, rank)?;
    let q_sq = poly_mul(&q, &q);
    let at_zero = poly_eval(&q, &S::zero()).is_zero();
    let at_one = poly_eval(&q, &S::one()).is_zero();
    let result = match localizer {
        Localizer::One => (at_zero, at_one),
        Localizer::T => (functional(&q_sq, moments)?.is_positive(), at_one),
        Localizer::OneMinusT => (at_zero, functional(&q_sq, moments)?.is_positive()),
        Localizer::TOneMinusT => {
            let t_sq = poly_mul(&q_sq, &[S::zero(), S::one()]);
            let one_minus = poly_mul(&q_sq, &[S::one(), -S::one()]);
            (
                functional(&one_minus, moments)?.is_positive(),
                functional(&t_sq, moments)?.is_positive(),
            )
        }
    };
    Ok(result)
}

/// Rational measure with the same nodes as `approx` (after snapping to small
/// denominators) reproducing `moments` exactly, if one exists.
pub fn snap_to_rational(approx: &AtomicMeasure<f64>, moments: &[BigRational]) -> Option<AtomicMeasure<BigRational>> {
    let nodes: Vec<BigRational> = approx
        .atoms()
        .iter()
        .map(|a| approximate_rational(a.location, SNAP_DENOMINATOR))
        .collect::<Option<_>>()?;
    let k = nodes.len();
    if moments.len() < k {
        return None;
    }
    let vander: Vec<Vec<BigRational>> = (0..k)
        .map(|i| nodes.iter().map(|t| pow(t, i)).collect())
        .collect();
    let weights = solve(vander, moments[..k].to_vec())?;
    let atoms = nodes
        .into_iter()
        .zip(weights)
        .map(|(location, weight)| Atom { location, weight })
        .collect();
    let measure = AtomicMeasure::new(atoms).ok()?;
    let exact = moments
        .iter()
        .enumerate()
        .all(|(j, m)| measure.moment(j) == *m);
    exact.then_some(measure)
}

/// Exact unit-mass atom.
pub fn rational_point(t: BigRational) -> AtomicMeasure<BigRational> {
    AtomicMeasure {
        atoms: vec![Atom {
            location: t,
            weight: BigRational::one(),
        }],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn atoms(m: &AtomicMeasure<f64>) -> Vec<(f64, f64)> {
        m.atoms().iter().map(|a| (a.location, a.weight)).collect()
    }

    #[test]
    fn single_atom_at_half() {
        let m = recover_measure(&[1.0, 0.5, 0.25], 1e-9).unwrap();
        assert_eq!(atoms(&m), vec![(0.5, 1.0)]);
        let m = recover_measure(&[1.0, 0.5, 0.25, 0.125, 0.0625], 1e-9).unwrap();
        let a = atoms(&m);
        assert_eq!(a.len(), 1);
        assert!((a[0].0 - 0.5).abs() < 1e-12 && (a[0].1 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn two_point_gauss_of_uniform() {
        let m = recover_measure(&[1.0, 0.5, 1.0 / 3.0, 0.25], 1e-9).unwrap();
        let a = atoms(&m);
        let h = 0.5 / 3f64.sqrt();
        assert_eq!(a.len(), 2);
        assert!((a[0].0 - (0.5 - h)).abs() < 1e-12);
        assert!((a[1].0 - (0.5 + h)).abs() < 1e-12);
        assert!((a[0].1 - 0.5).abs() < 1e-12 && (a[1].1 - 0.5).abs() < 1e-12);
    }

    #[test]
    fn even_definite_stays_interior() {
        let mom = [1.0, 0.5, 1.0 / 3.0, 0.25, 0.2];
        let m = recover_measure(&mom, 1e-9).unwrap();
        assert!(support_gap(&m) > 0.0);
        assert!(verify_measure(&m, &mom, 1e-10).ok);
        assert!(m.len() <= 3);
    }

    #[test]
    fn curve_points_are_single_atoms() {
        for t in [0.1f64, 0.3, 0.5, 0.9] {
            let mom: Vec<f64> = (0..6).map(|k| t.powi(k)).collect();
            let m = recover_measure(&mom, 1e-9).unwrap();
            assert_eq!(m.len(), 1);
            assert!((m.atoms()[0].location - t).abs() < 1e-10);
        }
    }

    #[test]
    fn boundary_atom_at_zero() {
        let m = recover_measure(&[1.0, 0.25, 0.125, 0.0625], 1e-9).unwrap();
        assert_eq!(atoms(&m), vec![(0.0, 0.5), (0.5, 0.5)]);
        assert_eq!(support_gap(&m), 0.0);
    }

    #[test]
    fn boundary_atom_at_one() {
        let m = recover_measure(&[1.0, 0.75, 0.625, 0.5625], 1e-9).unwrap();
        assert_eq!(atoms(&m), vec![(0.5, 0.5), (1.0, 0.5)]);
    }

    #[test]
    fn two_endpoints_from_even_case() {
        let m = recover_measure(&[1.0, 0.5, 0.5], 1e-9).unwrap();
        assert_eq!(atoms(&m), vec![(0.0, 0.5), (1.0, 0.5)]);
    }

    #[test]
    fn rejects_indefinite() {
        assert!(matches!(
            recover_measure(&[1.0, 0.5, 0.125], 1e-9),
            Err(EosError::NotRepresentable(_))
        ));
    }

    #[test]
    fn verification_examples() {
        let m = AtomicMeasure::point(q(1, 2)).unwrap();
        let c = verify_measure(&m, &[q(1, 1), q(1, 2), q(1, 4)], 0.0);
        assert!(c.ok && c.max_residual == 0.0);
        let c = verify_measure(&m, &[q(1, 1), q(1, 2), q(1, 3)], 1e-9);
        assert!(!c.ok);
        assert!((c.max_residual - 1.0 / 12.0).abs() < 1e-15);
        let m = AtomicMeasure::new(vec![
            Atom { location: q(1, 4), weight: q(1, 2) },
            Atom { location: q(3, 4), weight: q(1, 2) },
        ])
        .unwrap();
        assert!(verify_measure(&m, &[q(1, 1), q(1, 2), q(5, 16)], 0.0).ok);
    }

    #[test]
    fn gap_examples() {
        assert_eq!(support_gap(&AtomicMeasure::point(0.5).unwrap()), 0.5);
        let m = AtomicMeasure::new(vec![
            Atom { location: 0.1, weight: 0.5 },
            Atom { location: 0.8, weight: 0.5 },
        ])
        .unwrap();
        assert!((support_gap(&m) - 0.1).abs() < 1e-15);
        assert_eq!(support_gap(&AtomicMeasure::point(0.0).unwrap()), 0.0);
    }

    #[test]
    fn measure_validation() {
        assert!(AtomicMeasure::<f64>::new(vec![]).is_err());
        assert!(AtomicMeasure::point(1.5).is_err());
        assert!(AtomicMeasure::new(vec![
            Atom { location: 0.6, weight: 0.5 },
            Atom { location: 0.2, weight: 0.5 },
        ])
        .is_err());
        assert!(AtomicMeasure::new(vec![Atom { location: 0.6, weight: 0.0 }]).is_err());
    }

    #[test]
    fn exact_endpoint_detection() {
        let left = [q(1, 1), q(1, 4), q(1, 8), q(1, 16)];
        assert_eq!(endpoint_atoms(&left, Localizer::T, 1).unwrap(), (true, false));
        let right = [q(1, 1), q(3, 4), q(5, 8), q(9, 16)];
        assert_eq!(endpoint_atoms(&right, Localizer::OneMinusT, 1).unwrap(), (false, true));
        let interior = [q(1, 1), q(2, 3), q(4, 9), q(8, 27)];
        assert_eq!(endpoint_atoms(&interior, Localizer::T, 1).unwrap(), (false, false));
        assert_eq!(endpoint_atoms(&interior, Localizer::OneMinusT, 1).unwrap(), (false, false));
        let both = [q(1, 1), q(1, 2), q(1, 2)];
        assert_eq!(endpoint_atoms(&both, Localizer::TOneMinusT, 0).unwrap(), (true, true));
        let half = [q(1, 1), q(1, 2), q(1, 4)];
        assert_eq!(endpoint_atoms(&half, Localizer::One, 1).unwrap(), (false, false));
        let zero = [q(1, 1), q(0, 1), q(0, 1)];
        assert_eq!(endpoint_atoms(&zero, Localizer::One, 1).unwrap(), (true, false));
    }

    #[test]
    fn kernel_of_two_point_measure() {
        // ½δ_{1/4} + ½δ_{3/4}
        let s = [q(1, 1), q(1, 2), q(5, 16), q(7, 32)];
        let k = kernel_polynomial(&s, 2).unwrap();
        assert_eq!(k, vec![q(3, 16), q(-1, 1), q(1, 1)]);
    }

    #[test]
    fn snapping_recovers_rational_atoms() {
        let exact = [q(1, 1), q(1, 2), q(5, 16), q(7, 32)];
        let approx = recover_measure(&[1.0, 0.5, 0.3125, 0.21875], 1e-9).unwrap();
        let snapped = snap_to_rational(&approx, &exact).unwrap();
        assert_eq!(snapped.atoms()[0].location, q(1, 4));
        assert_eq!(snapped.atoms()[1].weight, q(1, 2));
        let uniform = [q(1, 1), q(1, 2), q(1, 3), q(1, 4)];
        let approx = recover_measure(&[1.0, 0.5, 1.0 / 3.0, 0.25], 1e-9).unwrap();
        assert!(snap_to_rational(&approx, &uniform).is_none());
    }

    #[test]
    fn rank_ambiguity_is_reported() {
        let m = SymMatrix::new(2, vec![1.0, 0.0, 0.0, 1e-10]).unwrap();
        assert!(matches!(
            numerical_rank(&m),
            Err(EosError::RankDetectionAmbiguous { .. })
        ));
        let m = SymMatrix::new(2, vec![1.0, 0.0, 0.0, 1e-15]).unwrap();
        assert_eq!(numerical_rank(&m).unwrap(), 1);
    }
}
