use super::OperatorMatrix;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// `exp(g)` for skew-hermitian `g`, by scaling and squaring.
///
/// The generator is halved until its Frobenius norm is below ½, a Taylor
/// series is summed to machine precision, and the result squared back up.
pub fn expm_skew<T: Real>(g: &OperatorMatrix<T>) -> Result<OperatorMatrix<T>> {
    let norm = g.frob_norm();
    let residual = g.skew_hermiticity_residual();
    if residual > T::tol(1e-10) * norm.max(T::one()) {
        return Err(Error::NotSkewHermitian { residual: residual.to_f64().unwrap_or(f64::NAN) });
    }

    let half = T::lit(0.5);
    let mut squarings = 0u32;
    let mut scale = T::one();
    while norm * scale >= half {
        scale = scale * half;
        squarings += 1;
    }
    let a = g.scale_real(scale);

    let n = g.dim();
    let mut sum = OperatorMatrix::identity(n);
    let mut term = OperatorMatrix::identity(n);
    for k in 1..=30 {
        term = (&term * &a).scale_real(T::one() / T::from_usize_exact(k));
        sum = &sum + &term;
        if term.frob_norm() <= T::epsilon() * T::lit(1e-2) || term.frob_norm().is_zero() {
            break;
        }
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    Ok(sum)
}
