use serde::Serialize;

use crate::algebra::SpinMatrices;
use crate::error::{Error, Result};
use crate::half::HalfInt;
use crate::matrix::OperatorMatrix;
use crate::model::dressing_u0;
use crate::scalar::Real;

const TRACE_TOL: f64 = 1e-9;

/// The atomic `S₊S₋` of one zone after dressing, computed two ways.
#[derive(Clone, Debug, Serialize)]
pub struct DressedDipole<T> {
    pub r: HalfInt,
    pub r_tilde: HalfInt,
    /// `U₀ X U₀⁻¹` with `X = r(r+1) − S₃² + S₃` and `S₃ = (r̃ − r) + S̃₃`.
    #[serde(skip)]
    pub conjugated: OperatorMatrix<T>,
    /// `r̃(2r − (3/2)r̃ + ½) − (r + ½ − r̃)S̃₊S̃₋ − ¼(S̃₊² − 2S̃₃² + S̃₋²)`.
    #[serde(skip)]
    pub closed_form: OperatorMatrix<T>,
    #[serde(skip)]
    pub difference: OperatorMatrix<T>,
    pub difference_norm: T,
    /// `|Tr(conjugated) − Tr(X)|`.
    pub trace_error: T,
}

/// Dresses the zone-restricted `S₊S₋` by explicit conjugation and by the
/// operator closed form, and reports how far apart they are.
///
/// Only the conjugation is held to trace preservation; the closed form is not
/// trace preserving in general and its offset is returned, not corrected.
pub fn dressed_dipole_oracle<T: Real>(r: HalfInt, r_tilde: HalfInt) -> Result<DressedDipole<T>> {
    if r.is_negative() || r_tilde.is_negative() || r_tilde > r {
        return Err(Error::InvalidParameter(format!("need 0 ≤ r̃ ≤ r, got r = {r}, r̃ = {r_tilde}")));
    }
    let s = SpinMatrices::<T>::new(r_tilde)?;
    let d = s.dim();
    let id = OperatorMatrix::<T>::identity(d);
    let (rr, rt) = (r.to_real::<T>(), r_tilde.to_real::<T>());
    let half = T::lit(0.5);

    let s3_atomic = &s.s3 + &id.scale_real(rt - rr);
    let x = &(&id.scale_real(rr * (rr + T::one())) - &(&s3_atomic * &s3_atomic)) + &s3_atomic;
    let u0 = dressing_u0::<T>(d)?;
    let conjugated = &(&u0 * &x) * &u0.adjoint();
    let trace_error = (conjugated.trace() - x.trace()).norm();
    if trace_error > T::tol(TRACE_TOL) * (T::one() + x.trace().norm()) {
        return Err(Error::TraceNotPreserved { error: trace_error.to_f64().unwrap_or(f64::NAN) });
    }

    let pm = &s.s_plus * &s.s_minus;
    let quad = &(&(&s.s_plus * &s.s_plus) - &(&s.s3 * &s.s3).scale_real(T::lit(2.0))) + &(&s.s_minus * &s.s_minus);
    let closed_form = &(&id.scale_real(rt * (T::lit(2.0) * rr - T::lit(1.5) * rt + half))
        - &pm.scale_real(rr + half - rt))
        - &quad.scale_real(T::lit(0.25));
    let difference = &conjugated - &closed_form;
    Ok(DressedDipole { r, r_tilde, difference_norm: difference.frob_norm(), conjugated, closed_form, difference, trace_error })
}
