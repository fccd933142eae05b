use std::f64::consts::FRAC_PI_4;

use num_complex::Complex;

use crate::algebra::SpinMatrices;
use crate::error::{Error, Result};
use crate::half::HalfInt;
use crate::matrix::{expm_skew, OperatorMatrix};
use crate::scalar::Real;

/// `B = S₃S_x + S_xS₃`.
pub fn b_operator<T: Real>(s: &SpinMatrices<T>) -> OperatorMatrix<T> {
    s.s3.anticommutator(&s.sx).expect("same dim")
}

/// `D1 = −i(S₃S_y + S_yS₃)`, with `S_y = i(S₊ − S₋)/2`.
pub fn d1_operator<T: Real>(s: &SpinMatrices<T>) -> OperatorMatrix<T> {
    s.s3.anticommutator(&s.sy).expect("same dim").scale(Complex::new(T::zero(), -T::one()))
}

/// `L_y = i(S₊² − S₋²)/4`, the quadrupole analogue of `S_y`.
pub fn l_y_operator<T: Real>(s: &SpinMatrices<T>) -> OperatorMatrix<T> {
    let pp = &s.s_plus * &s.s_plus;
    let mm = &s.s_minus * &s.s_minus;
    (&pp - &mm).scale(Complex::new(T::zero(), T::lit(0.25)))
}

/// Terms of the interaction expanded to third order in `α`, in units of `Ω_R/2`.
#[derive(Clone, Debug)]
pub struct SeriesTerms<T> {
    pub r_tilde: HalfInt,
    pub alpha: T,
    pub v0: OperatorMatrix<T>,
    pub v1: OperatorMatrix<T>,
    pub v2: OperatorMatrix<T>,
    pub v3: OperatorMatrix<T>,
}

impl<T: Real> SeriesTerms<T> {
    /// `V⁽⁰⁾ + V⁽¹⁾ + V⁽²⁾ + V⁽³⁾`.
    pub fn sum(&self) -> OperatorMatrix<T> {
        &(&(&self.v0 + &self.v1) + &self.v2) + &self.v3
    }

    /// `(Ω_R/2)·ΣV⁽ⁿ⁾` with `Ω_R/2 = α^{−1/2}`.
    pub fn interaction(&self) -> Result<OperatorMatrix<T>> {
        if !(self.alpha > T::zero()) {
            return Err(Error::InvalidParameter("the interaction needs α > 0".into()));
        }
        Ok(self.sum().scale_real(T::one() / self.alpha.sqrt()))
    }
}

/// Builds `V⁽⁰⁾ … V⁽³⁾` from exact spin-`r̃` matrices.
///
/// `V⁽¹⁾` carries `(1 + ½(α/4)²)`: that coefficient is what the expansion of
/// `2√(1 − α(S₃ + ½))` produces once `(S₃ − ½)³S₊ + h.c.` is regrouped.
pub fn series_terms<T: Real>(r_tilde: HalfInt, alpha: T) -> Result<SeriesTerms<T>> {
    if !(alpha >= T::zero()) || !alpha.is_finite() {
        return Err(Error::InvalidParameter(format!("α must be finite and nonnegative, got {alpha}")));
    }
    let s = SpinMatrices::<T>::new(r_tilde)?;
    let half = T::lit(0.5);
    let a4 = alpha / T::lit(4.0);
    let a2 = alpha / T::lit(2.0);
    let b = b_operator(&s);
    let v0 = s.sx.scale_real(T::lit(2.0) * (T::one() - half * a4 * a4));
    let v1 = b.scale_real(-a2 * (T::one() + half * a4 * a4));
    let v2 = (&(&s.s3 * &s.sx) * &s.s3).scale_real(-a2 * a2);
    let v3 = (&(&s.s3 * &b) * &s.s3).scale_real(-half * a2 * a2 * a2);
    Ok(SeriesTerms { r_tilde, alpha, v0, v1, v2, v3 })
}

/// The untruncated zone interaction in the spin basis, in units of `Ω_R/2`:
/// `⟨m+1|·|m⟩ = ⟨m+1|2S_x|m⟩·√(1 − α(m + ½))`.
pub fn exact_in_spin_basis<T: Real>(r_tilde: HalfInt, alpha: T) -> Result<OperatorMatrix<T>> {
    let s = SpinMatrices::<T>::new(r_tilde)?;
    let m: Vec<T> = s.s3.real_diagonal();
    let mut out = OperatorMatrix::zeros(s.dim());
    for j in 0..s.dim().saturating_sub(1) {
        let arg = T::one() - alpha * (m[j] + T::lit(0.5));
        if arg < T::zero() {
            return Err(Error::InvalidParameter(format!("α = {alpha} is beyond the zone edge")));
        }
        let x = s.sx[(j + 1, j)].scale(T::lit(2.0) * arg.sqrt());
        out[(j + 1, j)] = x;
        out[(j, j + 1)] = x.conj();
    }
    Ok(out)
}

/// The dressing chain and what it leaves behind.
#[derive(Clone, Debug)]
pub struct TransformChain<T> {
    pub r_tilde: HalfInt,
    pub alpha: T,
    /// First-order rotation angle coefficient: `U₁ = exp(αx·D1)`.
    pub x: T,
    pub u0: OperatorMatrix<T>,
    pub u1: OperatorMatrix<T>,
    pub u2: OperatorMatrix<T>,
    /// `U₂U₁U₀ (ΣV⁽ⁿ⁾) (U₂U₁U₀)⁻¹`, in units of `Ω_R/2`.
    pub dressed: OperatorMatrix<T>,
    /// Frobenius norm of the off-diagonal part of `dressed`.
    pub offdiag_residual: T,
    /// Diagonal of `dressed` in ascending `m̃`.
    pub diagonal: Vec<T>,
    /// Third-order closed form `2m̃{1 + (α/4)²[5m̃² − 3r̃(r̃+1) + 1]}`, same units.
    pub predicted: Vec<T>,
}

impl<T: Real> TransformChain<T> {
    pub fn max_diagonal_deviation(&self) -> T {
        self.diagonal.iter().zip(&self.predicted).map(|(a, b)| (*a - *b).abs()).fold(T::zero(), T::max)
    }
}

/// Conjugates the third-order series by `U₂U₁U₀`.
///
/// `U₀ = exp[(π/4)(S₊ − S₋)]`, `U₁ = exp(αx·D1)` with `x` the ratio that
/// cancels the first-order term, `U₂ = exp{i½(α/4)²(L_yS₃ + S₃L_y)}`.
pub fn transform_chain<T: Real>(r_tilde: HalfInt, alpha: T) -> Result<TransformChain<T>> {
    if r_tilde.twice() < 1 {
        return Err(Error::InvalidParameter("the dressing chain needs d ≥ 2".into()));
    }
    let series = series_terms(r_tilde, alpha)?;
    let s = SpinMatrices::<T>::new(r_tilde)?;
    let half = T::lit(0.5);
    let a4 = alpha / T::lit(4.0);
    let c0 = T::one() - half * a4 * a4;
    let c1 = T::one() + half * a4 * a4;
    let x = c1 / (T::lit(4.0) * c0);

    let u0 = expm_skew(&(&s.s_plus - &s.s_minus).scale_real(T::lit(FRAC_PI_4)))?;
    let u1 = expm_skew(&d1_operator(&s).scale_real(alpha * x))?;
    let ly = l_y_operator(&s);
    let g2 = ly.anticommutator(&s.s3)?.scale(Complex::new(T::zero(), half * a4 * a4));
    let u2 = expm_skew(&g2)?;

    let u = &(&u2 * &u1) * &u0;
    let dressed = &(&u * &series.sum()) * &u.adjoint();
    let rt = r_tilde.to_real::<T>();
    let predicted = s
        .s3
        .real_diagonal()
        .into_iter()
        .map(|m| {
            let bracket = T::lit(5.0) * m * m - T::lit(3.0) * rt * (rt + T::one()) + T::one();
            T::lit(2.0) * m * (T::one() + a4 * a4 * bracket)
        })
        .collect();
    Ok(TransformChain {
        r_tilde,
        alpha,
        x,
        offdiag_residual: dressed.off_diagonal_norm(),
        diagonal: dressed.real_diagonal(),
        predicted,
        u0,
        u1,
        u2,
        dressed,
    })
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn log_log_slope<T: Real>(xs: &[T], ys: &[T]) -> T {
    let n = T::from_usize_exact(xs.len());
    let lx: Vec<T> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<T> = ys.iter().map(|y| y.ln()).collect();
    let mx = lx.iter().copied().sum::<T>() / n;
    let my = ly.iter().copied().sum::<T>() / n;
    let num: T = lx.iter().zip(&ly).map(|(&a, &b)| (a - mx) * (b - my)).sum();
    let den: T = lx.iter().map(|&a| (a - mx) * (a - mx)).sum();
    num / den
}
