use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::polynomial::StructurePolynomial;
use super::zone::{Dimension, IrrepClass};
use crate::error::{Error, Result};
use crate::matrix::OperatorMatrix;
use crate::scalar::Real;

/// Which end of the irrep the pivot root anchors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    /// `a0 = q + n`; the pivot is the lowest `a0` eigenvalue.
    Right,
    /// `a0 = q − 1 − n`; the pivot sits one above the highest eigenvalue.
    Left,
}

impl Side {
    pub fn flipped(self) -> Side {
        match self {
            Side::Right => Side::Left,
            Side::Left => Side::Right,
        }
    }
}

/// Matrix realization of a polynomial algebra on a `dim`-dimensional space.
#[derive(Clone, Debug)]
pub struct PaeGenerators<T> {
    pub a0: OperatorMatrix<T>,
    pub a_plus: OperatorMatrix<T>,
    pub a_minus: OperatorMatrix<T>,
    pub dim: usize,
    pub poly: StructurePolynomial<T>,
    /// Value of the pivot root.
    pub pivot: T,
    pub side: Side,
}

/// Residuals of the defining relations, each relative to the natural scale.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PaeResiduals<T> {
    /// `‖[a0, a₊] − a₊‖ / ‖a₊‖`.
    pub raising: T,
    /// `‖[a0, a₋] + a₋‖ / ‖a₋‖`.
    pub lowering: T,
    /// `‖a₊a₋ − p(a0)‖ / ‖p(a0)‖`.
    pub structure: T,
    /// `‖a₋ − a₊†‖`, absolute.
    pub hermiticity: T,
}

impl<T: Real> PaeResiduals<T> {
    pub fn max_relative(&self) -> T {
        self.raising.max(self.lowering).max(self.structure)
    }
}

fn relative<T: Real>(residual: T, scale: T) -> T {
    if scale > T::min_positive_value() {
        residual / scale
    } else {
        residual
    }
}

impl<T: Real> PaeGenerators<T> {
    /// Eigenvalues of the diagonal `a0`, in basis order.
    pub fn a0_spectrum(&self) -> Vec<T> {
        self.a0.real_diagonal()
    }

    /// `p(a0)` as a diagonal operator.
    pub fn structure_operator(&self) -> OperatorMatrix<T> {
        let diag: Vec<T> = self.a0_spectrum().into_iter().map(|x| self.poly.eval(x)).collect();
        OperatorMatrix::from_real_diagonal(&diag)
    }

    pub fn residuals(&self) -> PaeResiduals<T> {
        let raising = &self.a0.commutator(&self.a_plus).expect("same dim") - &self.a_plus;
        let lowering = &self.a0.commutator(&self.a_minus).expect("same dim") + &self.a_minus;
        let p_a0 = self.structure_operator();
        let structure = &(&self.a_plus * &self.a_minus) - &p_a0;
        PaeResiduals {
            raising: relative(raising.frob_norm(), self.a_plus.frob_norm()),
            lowering: relative(lowering.frob_norm(), self.a_minus.frob_norm()),
            structure: relative(structure.frob_norm(), p_a0.frob_norm()),
            hermiticity: (&self.a_minus - &self.a_plus.adjoint()).frob_norm(),
        }
    }

    /// Irrep class spanned by this realization. If the far end is not a
    /// root, this is a truncation of an infinite irrep.
    pub fn irrep_class(&self) -> IrrepClass {
        irrep_class_for(&self.poly, self.pivot, self.side, self.dim)
    }
}

pub(crate) fn irrep_class_for<T: Real>(
    poly: &StructurePolynomial<T>,
    pivot: T,
    side: Side,
    dim: usize,
) -> IrrepClass {
    let d = T::from_usize_exact(dim);
    let (near, far) = match side {
        Side::Right => (pivot, pivot + d),
        Side::Left => (pivot, pivot - d),
    };
    let k_near = poly.multiplicity(near);
    let k_far = poly.multiplicity(far);
    if k_far == 0 {
        let (k_minus, k_plus) = match side {
            Side::Right => (k_near, 0),
            Side::Left => (0, k_near),
        };
        return IrrepClass { k_minus, k_plus, d: Dimension::Unbounded };
    }
    match side {
        Side::Right => IrrepClass::finite(k_near, k_far, dim),
        Side::Left => IrrepClass::finite(k_far, k_near, dim),
    }
}

// Square roots of structure values, rejecting genuinely negative ones.
fn ladder_entries<T: Real>(poly: &StructurePolynomial<T>, points: impl Iterator<Item = T>) -> Result<Vec<T>> {
    let scale = poly.roots().iter().fold(T::one(), |m, q| m.max(q.abs()));
    let tol = T::tol(1e-9) * scale.powi(poly.order() as i32);
    points
        .map(|x| {
            let v = poly.eval(x);
            if v < -tol {
                Err(Error::NegativeStructure {
                    at: x.to_f64().unwrap_or(f64::NAN),
                    value: v.to_f64().unwrap_or(f64::NAN),
                })
            } else {
                Ok(v.max(T::zero()).sqrt())
            }
        })
        .collect()
}

fn check_dim(d: usize) -> Result<()> {
    if d == 0 {
        Err(Error::EmptyRepresentation)
    } else {
        Ok(())
    }
}

/// `a0 = diag(q + n)`, `⟨n+1|a₊|n⟩ = √p(q + n + 1)`, `a₋ = a₊†`.
pub fn realize_pae_right<T: Real>(
    poly: &StructurePolynomial<T>,
    pivot_index: usize,
    d: usize,
) -> Result<PaeGenerators<T>> {
    check_dim(d)?;
    let q = poly.root(pivot_index)?;
    let at = |n: usize| q + T::from_usize_exact(n);
    let entries = ladder_entries(poly, (1..d).map(at))?;
    let a0 = OperatorMatrix::from_real_diagonal(&(0..d).map(at).collect::<Vec<_>>());
    let a_plus = OperatorMatrix::from_fn(d, |i, j| {
        if i == j + 1 { Complex::new(entries[j], T::zero()) } else { Complex::new(T::zero(), T::zero()) }
    });
    let a_minus = a_plus.adjoint();
    Ok(PaeGenerators { a0, a_plus, a_minus, dim: d, poly: poly.clone(), pivot: q, side: Side::Right })
}

/// `a0 = diag(q − 1 − n)`, `⟨n−1|a₊|n⟩ = √p(q − n)`, `a₋ = a₊†`.
///
/// Here `a₊` lowers the basis index `n`.
pub fn realize_pae_left<T: Real>(
    poly: &StructurePolynomial<T>,
    pivot_index: usize,
    d: usize,
) -> Result<PaeGenerators<T>> {
    check_dim(d)?;
    let q = poly.root(pivot_index)?;
    let entries = ladder_entries(poly, (1..d).map(|n| q - T::from_usize_exact(n)))?;
    let a0 = OperatorMatrix::from_real_diagonal(
        &(0..d).map(|n| q - T::one() - T::from_usize_exact(n)).collect::<Vec<_>>(),
    );
    let a_plus = OperatorMatrix::from_fn(d, |i, j| {
        if j == i + 1 { Complex::new(entries[i], T::zero()) } else { Complex::new(T::zero(), T::zero()) }
    });
    let a_minus = a_plus.adjoint();
    Ok(PaeGenerators { a0, a_plus, a_minus, dim: d, poly: poly.clone(), pivot: q, side: Side::Left })
}
