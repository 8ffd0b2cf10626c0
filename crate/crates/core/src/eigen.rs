//! Cyclic Jacobi eigensolver for small dense symmetric matrices.

/// Eigenvalues in ascending order; `vectors` is row-major and column `j`
/// holds the unit eigenvector of `values[j]`.
#[derive(Debug, Clone)]
pub struct SymmetricEigen {
    pub dim: usize,
    pub values: Vec<f64>,
    pub vectors: Vec<f64>,
}

impl SymmetricEigen {
    pub fn vector(&self, j: usize) -> Vec<f64> {
        (0..self.dim).map(|i| self.vectors[i * self.dim + j]).collect()
    }

    pub fn min(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }
}

const MAX_SWEEPS: usize = 100;
const OFF_DIAGONAL_RATIO: f64 = 1e-14;

/// Decomposes the symmetric `dim × dim` row-major matrix `a`.
///
/// Only the upper triangle is read. Sweeps stop once the off-diagonal
/// Frobenius norm drops below `1e-14 · ‖a‖_F`.
pub fn symmetric_eigen(a: &[f64], dim: usize) -> SymmetricEigen {
    assert_eq!(a.len(), dim * dim, "matrix must be dim × dim");
    let mut m = vec![0.0; dim * dim];
    for i in 0..dim {
        for j in i..dim {
            m[i * dim + j] = a[i * dim + j];
            m[j * dim + i] = a[i * dim + j];
        }
    }
    let mut v = vec![0.0; dim * dim];
    for i in 0..dim {
        v[i * dim + i] = 1.0;
    }

    let total: f64 = m.iter().map(|x| x * x).sum::<f64>().sqrt();
    let target = OFF_DIAGONAL_RATIO * total;

    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..dim)
            .flat_map(|i| ((i + 1)..dim).map(move |j| (i, j)))
            .map(|(i, j)| 2.0 * m[i * dim + j] * m[i * dim + j])
            .sum::<f64>()
            .sqrt();
        if off <= target || off == 0.0 {
            break;
        }
        for p in 0..dim {
            for q in (p + 1)..dim {
                let apq = m[p * dim + q];
                if apq == 0.0 {
                    continue;
                }
                let app = m[p * dim + p];
                let aqq = m[q * dim + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                rotate(&mut m, dim, p, q, c, s);
                for k in 0..dim {
                    let vkp = v[k * dim + p];
                    let vkq = v[k * dim + q];
                    v[k * dim + p] = c * vkp - s * vkq;
                    v[k * dim + q] = s * vkp + c * vkq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&x, &y| m[x * dim + x].total_cmp(&m[y * dim + y]));
    let values = order.iter().map(|&k| m[k * dim + k]).collect();
    let mut vectors = vec![0.0; dim * dim];
    for (col, &k) in order.iter().enumerate() {
        for i in 0..dim {
            vectors[i * dim + col] = v[i * dim + k];
        }
    }
    SymmetricEigen { dim, values, vectors }
}

// M ← Jᵀ M J with J the rotation in the (p, q) plane.
fn rotate(m: &mut [f64], dim: usize, p: usize, q: usize, c: f64, s: f64) {
    for k in 0..dim {
        let mkp = m[k * dim + p];
        let mkq = m[k * dim + q];
        m[k * dim + p] = c * mkp - s * mkq;
        m[k * dim + q] = s * mkp + c * mkq;
    }
    for k in 0..dim {
        let mpk = m[p * dim + k];
        let mqk = m[q * dim + k];
        m[p * dim + k] = c * mpk - s * mqk;
        m[q * dim + k] = s * mpk + c * mqk;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_two_indefinite() {
        let e = symmetric_eigen(&[1.0, 2.0, 2.0, 1.0], 2);
        assert!((e.values[0] + 1.0).abs() < 1e-14);
        assert!((e.values[1] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn diagonal_is_untouched() {
        let e = symmetric_eigen(&[3.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 2.0], 3);
        assert_eq!(e.values, vec![1.0, 2.0, 3.0]);
        assert_eq!(e.vector(0), vec![0.0, 1.0, 0.0]);
    }

    #[test]
    fn reconstructs_hilbert_matrix() {
        let dim = 5;
        let a: Vec<f64> = (0..dim * dim)
            .map(|k| 1.0 / ((k / dim + k % dim + 1) as f64))
            .collect();
        let e = symmetric_eigen(&a, dim);
        for i in 0..dim {
            for j in 0..dim {
                let r: f64 = (0..dim)
                    .map(|k| e.vectors[i * dim + k] * e.values[k] * e.vectors[j * dim + k])
                    .sum();
                assert!((r - a[i * dim + j]).abs() < 1e-14);
            }
        }
        assert!(e.values[0] > 0.0);
    }
}
