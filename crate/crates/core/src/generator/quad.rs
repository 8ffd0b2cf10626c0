//! Adaptive Gauss–Kronrod (7/15) quadrature.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{EosError, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadSettings {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_depth: u32,
    pub max_intervals: usize,
}

impl Default for QuadSettings {
    fn default() -> Self {
        Self {
            rel_tol: 1e-11,
            abs_tol: 1e-14,
            max_depth: 60,
            max_intervals: 4000,
        }
    }
}

struct Piece {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    depth: u32,
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Piece {}

impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Piece {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, depth: u32) -> Piece {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    for i in 0..7 {
        let dx = h * XGK[i];
        let s = f(c - dx) + f(c + dx);
        k += WGK[i] * s;
        if i % 2 == 1 {
            g += WG[i / 2] * s;
        }
    }
    let value = k * h;
    let error = ((k - g) * h).abs();
    Piece {
        a,
        b,
        value,
        error: if error.is_nan() { f64::INFINITY } else { error },
        depth,
    }
}

/// `∫_a^b f`, bisecting the worst interval until the summed error estimate
/// drops below `max(abs_tol, rel_tol·|I|)`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, settings: &QuadSettings) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    let mut heap = BinaryHeap::new();
    let first = kronrod(&f, a, b, 0);
    let mut value = first.value;
    let mut error = first.error;
    heap.push(first);
    loop {
        let tolerance = settings.abs_tol.max(settings.rel_tol * value.abs());
        if error <= tolerance && value.is_finite() {
            return Ok(value);
        }
        let worst = heap.pop().expect("nonempty");
        if worst.depth >= settings.max_depth || heap.len() + 2 > settings.max_intervals {
            return Err(EosError::IntegrationFailure { error, tolerance });
        }
        let mid = 0.5 * (worst.a + worst.b);
        let left = kronrod(&f, worst.a, mid, worst.depth + 1);
        let right = kronrod(&f, mid, worst.b, worst.depth + 1);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        if !error.is_finite() || !value.is_finite() {
            value = heap.iter().map(|p| p.value).sum::<f64>() + left.value + right.value;
            error = heap.iter().map(|p| p.error).sum::<f64>() + left.error + right.error;
        }
        heap.push(left);
        heap.push(right);
    }
}

/// `∫_0^len g(s) ds` for `g` possibly singular (but integrable) at `s = 0`,
/// through `s = len·(3x² − 2x³)`, which flattens both ends.
pub fn integrate_from_zero<F: Fn(f64) -> f64>(g: F, len: f64, settings: &QuadSettings) -> Result<f64> {
    if len == 0.0 {
        return Ok(0.0);
    }
    integrate(
        |x| {
            let s = len * x * x * (3.0 - 2.0 * x);
            let ds = 6.0 * len * x * (1.0 - x);
            if ds == 0.0 {
                0.0
            } else {
                g(s) * ds
            }
        },
        0.0,
        1.0,
        settings,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        let v = integrate(|x| x.powi(5), 0.0, 2.0, &QuadSettings::default()).unwrap();
        assert!((v - 64.0 / 6.0).abs() < 1e-12);
    }

    #[test]
    fn logarithmic_singularity() {
        let v = integrate_from_zero(|s| s.ln(), 1.0, &QuadSettings::default()).unwrap();
        assert!((v + 1.0).abs() < 1e-10);
    }

    #[test]
    fn inverse_square_root() {
        let v = integrate_from_zero(|s| 1.0 / s.sqrt(), 0.5, &QuadSettings::default()).unwrap();
        assert!((v - 2.0 * 0.5f64.sqrt()).abs() < 1e-10);
    }

    #[test]
    fn divergent_integral_fails() {
        let r = integrate_from_zero(|s| 1.0 / (s * s), 1.0, &QuadSettings::default());
        assert!(matches!(r, Err(EosError::IntegrationFailure { .. })));
    }
}
