use num_complex::Complex;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::polynomial::{StructurePolynomial, ROOT_TOL};
use super::realization::{irrep_class_for, PaeGenerators};
use crate::error::{Error, Result};
use crate::matrix::OperatorMatrix;
use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orientation {
    /// `A0 = A′0 + s`, `A₊ = √F(A′0)·A′₊`.
    Direct,
    /// `A0 = q′ + q − 1 − A′0`, `A₊ = A′₋·√F̃(A′0)`.
    Reversed,
}

// c · Π(x − nᵢ) / Π(x − dⱼ) after cancelling coincident roots.
struct Ratio<T> {
    coeff: T,
    num: Vec<T>,
    den: Vec<T>,
}

impl<T: Real> Ratio<T> {
    fn new(coeff: T, mut num: Vec<T>, den: &[T]) -> Self {
        let tol = T::tol(ROOT_TOL);
        let mut rest = Vec::new();
        for &q in den {
            match num.iter().position(|&n| (n - q).abs() <= tol) {
                Some(i) => {
                    num.swap_remove(i);
                }
                None => rest.push(q),
            }
        }
        Ratio { coeff, num, den: rest }
    }

    fn eval(&self, x: T) -> T {
        let n = self.num.iter().fold(self.coeff, |acc, &q| acc * (x - q));
        self.den.iter().fold(n, |acc, &q| acc / (x - q))
    }
}

/// Re-expresses the generators of `source` as generators of `target_poly`
/// anchored at root `target_pivot`.
///
/// The result lives on the same space as `source`. The two irrep classes
/// must be isomorphic and the square-root argument must stay positive
/// wherever it multiplies a nonzero ladder element.
pub fn isomorphism_map<T: Real>(
    source: &PaeGenerators<T>,
    target_poly: &StructurePolynomial<T>,
    target_pivot: usize,
    orientation: Orientation,
) -> Result<PaeGenerators<T>> {
    let q = target_poly.root(target_pivot)?;
    let qs = source.pivot;
    let side = match orientation {
        Orientation::Direct => source.side,
        Orientation::Reversed => source.side.flipped(),
    };
    let source_class = source.irrep_class();
    let target_class = irrep_class_for(target_poly, q, side, source.dim);
    if !source_class.isomorphic(&target_class) {
        return Err(Error::NonIsomorphic {
            source_class: source_class.to_string(),
            target_class: target_class.to_string(),
        });
    }

    let c = target_poly.c0() / source.poly.c0();
    let spectrum = source.a0_spectrum();
    let n = source.dim;
    let tol = T::tol(1e-12);

    let (a0, a_plus, a_minus) = match orientation {
        Orientation::Direct => {
            let s = q - qs;
            let ratio = Ratio::new(c, target_poly.roots().iter().map(|&r| r - s).collect(), source.poly.roots());
            // √F at the row (upper) state of each nonzero ladder element.
            let roots = sqrt_factors(&ratio, &spectrum, |i| row_nonzero(&source.a_plus, i), tol)?;
            let d = OperatorMatrix::from_real_diagonal(&roots);
            let a0 = OperatorMatrix::from_real_diagonal(&spectrum.iter().map(|&x| x + s).collect::<Vec<_>>());
            (a0, &d * &source.a_plus, &source.a_minus * &d)
        }
        Orientation::Reversed => {
            let shift = qs + q;
            let sign = if target_poly.order() % 2 == 0 { T::one() } else { -T::one() };
            let ratio = Ratio::new(
                c * sign,
                target_poly.roots().iter().map(|&r| shift - r).collect(),
                source.poly.roots(),
            );
            // √F̃ at the column (upper) state of each nonzero element of a′₋.
            let roots = sqrt_factors(&ratio, &spectrum, |i| col_nonzero(&source.a_minus, i), tol)?;
            let d = OperatorMatrix::from_real_diagonal(&roots);
            let a0 = OperatorMatrix::from_real_diagonal(
                &spectrum.iter().map(|&x| shift - T::one() - x).collect::<Vec<_>>(),
            );
            (a0, &source.a_minus * &d, &d * &source.a_plus)
        }
    };
    Ok(PaeGenerators { a0, a_plus, a_minus, dim: n, poly: target_poly.clone(), pivot: q, side })
}

fn sqrt_factors<T: Real>(
    ratio: &Ratio<T>,
    spectrum: &[T],
    used: impl Fn(usize) -> bool,
    tol: T,
) -> Result<Vec<T>> {
    spectrum
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            if !used(i) {
                return Ok(T::one());
            }
            let f = ratio.eval(x);
            if !(f > tol) || !f.is_finite() {
                return Err(Error::SingularIsomorphism {
                    at: x.to_f64().unwrap_or(f64::NAN),
                    value: f.to_f64().unwrap_or(f64::NAN),
                });
            }
            Ok(f.sqrt())
        })
        .collect()
}

fn row_nonzero<T: Real>(m: &OperatorMatrix<T>, i: usize) -> bool {
    (0..m.dim()).any(|j| !m[(i, j)].is_zero())
}

fn col_nonzero<T: Real>(m: &OperatorMatrix<T>, j: usize) -> bool {
    (0..m.dim()).any(|i| m[(i, j)] != Complex::zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::realization::{realize_pae_left, realize_pae_right, Side};
    use crate::algebra::zone::tc_structure_polynomial;
    use crate::half::HalfInt;

    fn max_entry_diff(a: &OperatorMatrix<f64>, b: &OperatorMatrix<f64>) -> f64 {
        (a - b).max_abs_entry()
    }

    #[test]
    fn remote_zone_from_spin_reversed() {
        // M0 = (M − r)/2 − S̃₃ with M = 12, r = 2.
        let spin = realize_pae_right(&StructurePolynomial::spin(2.0f64), 0, 5).unwrap();
        let tc = tc_structure_polynomial::<f64>(12, HalfInt::from_twice(4)).unwrap();
        let g = isomorphism_map(&spin, &tc, 2, Orientation::Reversed).unwrap();
        let expected: Vec<f64> = spin.a0_spectrum().iter().map(|m| 5.0 - m).collect();
        assert_eq!(g.a0_spectrum(), expected);
        assert_eq!(g.side, Side::Left);
        let res = g.residuals();
        assert!(res.max_relative() < 1e-12 && res.hermiticity < 1e-12, "{res:?}");
    }

    #[test]
    fn nearby_zone_from_spin_half() {
        // M0 = r/2 − S̃₃ with M = 1, r = 2.
        let spin = realize_pae_right(&StructurePolynomial::spin(0.5f64), 0, 2).unwrap();
        let tc = tc_structure_polynomial::<f64>(1, HalfInt::from_twice(4)).unwrap();
        let g = isomorphism_map(&spin, &tc, 2, Orientation::Reversed).unwrap();
        assert_eq!(g.a0_spectrum(), vec![1.5, 0.5]);
        assert!(g.residuals().max_relative() < 1e-12);
    }

    #[test]
    fn identity_map() {
        let p = tc_structure_polynomial::<f64>(7, HalfInt::from_twice(3)).unwrap();
        let g = realize_pae_left(&p, 2, 4).unwrap();
        let h = isomorphism_map(&g, &p, 2, Orientation::Direct).unwrap();
        assert!(max_entry_diff(&g.a_plus, &h.a_plus) < 1e-12);
        assert!(max_entry_diff(&g.a0, &h.a0) < 1e-12);
    }

    #[test]
    fn round_trip_through_spin() {
        let tc = tc_structure_polynomial::<f64>(12, HalfInt::from_twice(4)).unwrap();
        let zone = realize_pae_left(&tc, 2, 5).unwrap();
        let spin_poly = StructurePolynomial::spin(2.0);
        let spin = isomorphism_map(&zone, &spin_poly, 0, Orientation::Reversed).unwrap();
        assert!(spin.residuals().max_relative() < 1e-12);
        let back = isomorphism_map(&spin, &tc, 2, Orientation::Reversed).unwrap();
        assert!(max_entry_diff(&zone.a_plus, &back.a_plus) < 1e-10);
        assert!(max_entry_diff(&zone.a_minus, &back.a_minus) < 1e-10);
        assert!(max_entry_diff(&zone.a0, &back.a0) < 1e-10);
    }

    #[test]
    fn rejects_non_isomorphic_classes() {
        let spin = realize_pae_right(&StructurePolynomial::spin(2.0f64), 0, 5).unwrap();
        let tc = tc_structure_polynomial::<f64>(4, HalfInt::from_twice(4)).unwrap();
        let err = isomorphism_map(&spin, &tc, 2, Orientation::Reversed).unwrap_err();
        assert!(matches!(err, Error::NonIsomorphic { .. }), "{err}");
    }

    #[test]
    fn rejects_vanishing_square_root() {
        // Same class R(1,1,3) but the Direct map through the spin-1 algebra
        // shifted onto itself with a mismatched pivot produces F ≤ 0.
        let spin = realize_pae_right(&StructurePolynomial::spin(1.0f64), 0, 3).unwrap();
        let weird = StructurePolynomial::new(1.0, vec![-1.0, 0.0, 2.0]).unwrap();
        let err = isomorphism_map(&spin, &weird, 0, Orientation::Direct).unwrap_err();
        assert!(matches!(err, Error::SingularIsomorphism { .. }), "{err}");
    }
}
