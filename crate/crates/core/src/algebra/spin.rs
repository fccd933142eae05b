use num_complex::Complex;

use super::polynomial::StructurePolynomial;
use super::realization::realize_pae_right;
use crate::error::{Error, Result};
use crate::half::HalfInt;
use crate::matrix::OperatorMatrix;
use crate::scalar::Real;

/// Spin-`r` matrices in the ascending-`m` basis `m = −r, …, r`.
///
/// `sy` follows the dressing convention `S_y = i(S₊ − S₋)/2`, under which
/// `exp[(π/4)(S₊ − S₋)] = exp[−i(π/2)S_y]`. This is minus the textbook sign.
#[derive(Clone, Debug)]
pub struct SpinMatrices<T> {
    pub r: HalfInt,
    pub s3: OperatorMatrix<T>,
    pub s_plus: OperatorMatrix<T>,
    pub s_minus: OperatorMatrix<T>,
    pub sx: OperatorMatrix<T>,
    pub sy: OperatorMatrix<T>,
}

impl<T: Real> SpinMatrices<T> {
    pub fn new(r: HalfInt) -> Result<Self> {
        if r.is_negative() {
            return Err(Error::InvalidParameter(format!("spin must be nonnegative, got {r}")));
        }
        let d = (r.twice() + 1) as usize;
        let g = realize_pae_right(&StructurePolynomial::spin(r.to_real::<T>()), 0, d)?;
        let half = T::lit(0.5);
        let sx = (&g.a_plus + &g.a_minus).scale_real(half);
        let sy = (&g.a_plus - &g.a_minus).scale(Complex::new(T::zero(), half));
        Ok(SpinMatrices { r, s3: g.a0, s_plus: g.a_plus, s_minus: g.a_minus, sx, sy })
    }

    pub fn dim(&self) -> usize {
        self.s3.dim()
    }

    /// `r(r+1)·I`.
    pub fn casimir(&self) -> OperatorMatrix<T> {
        let r = self.r.to_real::<T>();
        OperatorMatrix::identity(self.dim()).scale_real(r * (r + T::one()))
    }

    /// Magnetic quantum numbers in basis order.
    pub fn projections(&self) -> Vec<HalfInt> {
        self.r.projections().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn casimir_and_commutators() {
        for twice in 0..8 {
            let s = SpinMatrices::<f64>::new(HalfInt::from_twice(twice)).unwrap();
            let s2 = &(&(&s.sx * &s.sx) + &(&s.sy * &s.sy)) + &(&s.s3 * &s.s3);
            assert!((&s2 - &s.casimir()).frob_norm() < 1e-12);
            // [S₃, S₊] = S₊.
            let c = &s.s3.commutator(&s.s_plus).unwrap() - &s.s_plus;
            assert!(c.frob_norm() < 1e-12);
        }
    }

    #[test]
    fn y_convention_is_reversed() {
        // With S_y = i(S₊ − S₋)/2 one gets [S_x, S_y] = −i S₃.
        let s = SpinMatrices::<f64>::new(HalfInt::from_twice(3)).unwrap();
        let lhs = s.sx.commutator(&s.sy).unwrap();
        let rhs = s.s3.scale(Complex::new(0.0, -1.0));
        assert!((&lhs - &rhs).frob_norm() < 1e-12);
    }
}
