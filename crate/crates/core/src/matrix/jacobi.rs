use num_complex::Complex;

use super::{OperatorMatrix, Vector};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Eigenpairs of a real symmetric matrix; `vectors[k]` belongs to `values[k]`.
#[derive(Clone, Debug)]
pub struct SymmetricEigen<T> {
    pub values: Vec<T>,
    pub vectors: Vec<Vector<T>>,
}

/// Cyclic Jacobi eigen-decomposition of a real symmetric operator.
///
/// Used for block extraction where the conserved operators (K, S²) are real
/// in the product basis. Eigenvalues come back ascending.
pub fn symmetric_eigen<T: Real>(a: &OperatorMatrix<T>) -> Result<SymmetricEigen<T>> {
    let n = a.dim();
    let scale = a.frob_norm().max(T::one());
    let residual = a.max_imag().max(a.hermiticity_residual());
    if residual > T::tol(1e-10) * scale {
        return Err(Error::NotRealSymmetric { residual: residual.to_f64().unwrap_or(f64::NAN) });
    }

    let mut m: Vec<T> = a.as_slice().iter().map(|z| z.re).collect();
    let mut v = vec![T::zero(); n * n];
    for i in 0..n {
        v[i * n + i] = T::one();
    }
    let two = T::lit(2.0);
    let threshold = T::epsilon() * scale;

    for _sweep in 0..100 {
        let mut off = T::zero();
        for p in 0..n {
            for q in p + 1..n {
                off = off + m[p * n + q] * m[p * n + q];
            }
        }
        if off.sqrt() <= threshold {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[p * n + q];
                if apq.abs() <= T::min_positive_value() {
                    continue;
                }
                let theta = (m[q * n + q] - m[p * n + p]) / (two * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt());
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = m[k * n + p];
                    let akq = m[k * n + q];
                    m[k * n + p] = c * akp - s * akq;
                    m[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = m[p * n + k];
                    let aqk = m[q * n + k];
                    m[p * n + k] = c * apk - s * aqk;
                    m[q * n + k] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[i * n + i].partial_cmp(&m[j * n + j]).expect("finite eigenvalue"));
    let values = order.iter().map(|&i| m[i * n + i]).collect();
    let vectors = order
        .iter()
        .map(|&j| (0..n).map(|k| Complex::new(v[k * n + j], T::zero())).collect())
        .collect();
    Ok(SymmetricEigen { values, vectors })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reconstructs_eigenpairs() {
        let a = OperatorMatrix::from_real_fn(4, |i, j| 1.0 / (1.0 + i as f64 + j as f64));
        let eig = symmetric_eigen(&a).unwrap();
        for (lam, vec) in eig.values.iter().zip(&eig.vectors) {
            let av = a.apply(vec);
            for (x, y) in av.iter().zip(vec) {
                assert!((x - y * lam).norm() < 1e-12);
            }
        }
        assert!(eig.values.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn rejects_complex_input() {
        let a = OperatorMatrix::from_fn(2, |i, j| {
            if i == j { Complex::new(0.0, 0.0) } else { Complex::new(0.0, if i < j { 1.0 } else { -1.0 }) }
        });
        assert!(matches!(symmetric_eigen(&a), Err(Error::NotRealSymmetric { .. })));
    }
}
