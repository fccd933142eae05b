//! Dense complex operators and the small linear-algebra kernel built on them.
//!
//! Everything is stored densely in row-major order. The largest operators in
//! scope are full field⊗atoms spaces of a few hundred states, so there is no
//! sparse path.

mod expm;
mod jacobi;
mod tridiag;

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Real;

pub use expm::expm_skew;
pub use jacobi::{symmetric_eigen, SymmetricEigen};
pub use tridiag::{tridiag_eigenvalues, tridiag_eigenvalues_bisection, SymTridiagonal};

/// State vector in a dense basis.
pub type Vector<T> = Vec<Complex<T>>;

/// Square complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorMatrix<T> {
    dim: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> OperatorMatrix<T> {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "operator dimension must be positive");
        OperatorMatrix { dim, data: vec![Complex::zero(); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex::one();
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn from_real_fn(dim: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        Self::from_fn(dim, |i, j| Complex::new(f(i, j), T::zero()))
    }

    pub fn from_real_diagonal(diag: &[T]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &x) in diag.iter().enumerate() {
            m[(i, i)] = Complex::new(x, T::zero());
        }
        m
    }

    /// Matrix whose columns are the given vectors (all of length `dim`).
    pub fn from_columns(dim: usize, columns: &[Vector<T>]) -> Self {
        assert_eq!(columns.len(), dim);
        Self::from_fn(dim, |i, j| columns[j][i])
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[Complex<T>] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        OperatorMatrix { dim: self.dim, data: self.data.iter().map(|&z| z * s).collect() }
    }

    pub fn scale_real(&self, s: T) -> Self {
        self.scale(Complex::new(s, T::zero()))
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        self.check_dim(rhs)?;
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                let row = &rhs.data[k * n..(k + 1) * n];
                let dst = &mut out.data[i * n..(i + 1) * n];
                for (d, &b) in dst.iter_mut().zip(row) {
                    *d = *d + a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.check_dim(rhs)?;
        Ok(self.zip_with(rhs, |a, b| a + b))
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.check_dim(rhs)?;
        Ok(self.zip_with(rhs, |a, b| a - b))
    }

    /// `[a, b] = ab − ba`.
    pub fn commutator(&self, rhs: &Self) -> Result<Self> {
        self.try_mul(rhs)?.try_sub(&rhs.try_mul(self)?)
    }

    /// `ab + ba`.
    pub fn anticommutator(&self, rhs: &Self) -> Result<Self> {
        self.try_mul(rhs)?.try_add(&rhs.try_mul(self)?)
    }

    /// Tensor product `self ⊗ rhs`; the left factor is the slow index.
    pub fn kron(&self, rhs: &Self) -> Self {
        let (n, m) = (self.dim, rhs.dim);
        let mut out = Self::zeros(n * m);
        for i in 0..n {
            for j in 0..n {
                let a = self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..m {
                    for l in 0..m {
                        out[(i * m + k, j * m + l)] = a * rhs[(k, l)];
                    }
                }
            }
        }
        out
    }

    pub fn frob_norm(&self) -> T {
        self.data.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt()
    }

    pub fn trace(&self) -> Complex<T> {
        (0..self.dim).map(|i| self[(i, i)]).fold(Complex::zero(), |a, b| a + b)
    }

    pub fn diagonal(&self) -> Vector<T> {
        (0..self.dim).map(|i| self[(i, i)]).collect()
    }

    /// Real parts of the diagonal.
    pub fn real_diagonal(&self) -> Vec<T> {
        (0..self.dim).map(|i| self[(i, i)].re).collect()
    }

    /// Frobenius norm of everything off the main diagonal.
    pub fn off_diagonal_norm(&self) -> T {
        let n = self.dim;
        let mut s = T::zero();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s = s + self[(i, j)].norm_sqr();
                }
            }
        }
        s.sqrt()
    }

    /// `‖A − A†‖_F`.
    pub fn hermiticity_residual(&self) -> T {
        self.try_sub(&self.adjoint()).map(|d| d.frob_norm()).unwrap_or(T::infinity())
    }

    /// `‖A + A†‖_F`.
    pub fn skew_hermiticity_residual(&self) -> T {
        self.try_add(&self.adjoint()).map(|d| d.frob_norm()).unwrap_or(T::infinity())
    }

    /// Largest absolute imaginary part of any entry.
    pub fn max_imag(&self) -> T {
        self.data.iter().map(|z| z.im.abs()).fold(T::zero(), T::max)
    }

    pub fn max_abs_entry(&self) -> T {
        self.data.iter().map(|z| z.norm()).fold(T::zero(), T::max)
    }

    pub fn apply(&self, v: &[Complex<T>]) -> Vector<T> {
        assert_eq!(v.len(), self.dim);
        let n = self.dim;
        (0..n)
            .map(|i| {
                self.data[i * n..(i + 1) * n]
                    .iter()
                    .zip(v)
                    .fold(Complex::zero(), |acc, (&a, &x)| acc + a * x)
            })
            .collect()
    }

    /// `Q† A Q` for the given orthonormal columns (any number of them).
    pub fn restrict(&self, columns: &[Vector<T>]) -> OperatorMatrix<T> {
        let images: Vec<Vector<T>> = columns.iter().map(|c| self.apply(c)).collect();
        let k = columns.len();
        OperatorMatrix::from_fn(k, |i, j| inner(&columns[i], &images[j]))
    }

    /// Principal submatrix on the given indices.
    pub fn submatrix(&self, indices: &[usize]) -> OperatorMatrix<T> {
        OperatorMatrix::from_fn(indices.len(), |i, j| self[(indices[i], indices[j])])
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(Complex<T>, Complex<T>) -> Complex<T>) -> Self {
        OperatorMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    fn check_dim(&self, rhs: &Self) -> Result<()> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: rhs.dim });
        }
        Ok(())
    }
}

impl<T> Index<(usize, usize)> for OperatorMatrix<T> {
    type Output = Complex<T>;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        &self.data[i * self.dim + j]
    }
}

impl<T> IndexMut<(usize, usize)> for OperatorMatrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        &mut self.data[i * self.dim + j]
    }
}

// Operator overloads panic on dimension mismatch; the `try_*` forms report it.
impl<T: Real> Mul for &OperatorMatrix<T> {
    type Output = OperatorMatrix<T>;
    fn mul(self, rhs: Self) -> OperatorMatrix<T> {
        self.try_mul(rhs).expect("dimension mismatch in matrix product")
    }
}

impl<T: Real> Add for &OperatorMatrix<T> {
    type Output = OperatorMatrix<T>;
    fn add(self, rhs: Self) -> OperatorMatrix<T> {
        self.try_add(rhs).expect("dimension mismatch in matrix sum")
    }
}

impl<T: Real> Sub for &OperatorMatrix<T> {
    type Output = OperatorMatrix<T>;
    fn sub(self, rhs: Self) -> OperatorMatrix<T> {
        self.try_sub(rhs).expect("dimension mismatch in matrix difference")
    }
}

impl<T: Real> Neg for &OperatorMatrix<T> {
    type Output = OperatorMatrix<T>;
    fn neg(self) -> OperatorMatrix<T> {
        self.scale_real(-T::one())
    }
}

/// `⟨a|b⟩`, conjugate-linear in the first argument.
pub fn inner<T: Real>(a: &[Complex<T>], b: &[Complex<T>]) -> Complex<T> {
    a.iter().zip(b).fold(Complex::zero(), |acc, (&x, &y)| acc + x.conj() * y)
}

pub fn vector_norm<T: Real>(v: &[Complex<T>]) -> T {
    v.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt()
}

/// Modified Gram–Schmidt. Vectors whose residual norm drops below `tol`
/// are discarded.
pub fn gram_schmidt<T: Real>(vectors: Vec<Vector<T>>, tol: T) -> Vec<Vector<T>> {
    let mut basis: Vec<Vector<T>> = Vec::with_capacity(vectors.len());
    for mut v in vectors {
        for b in &basis {
            let c = inner(b, &v);
            for (x, &y) in v.iter_mut().zip(b) {
                *x = *x - c * y;
            }
        }
        let n = vector_norm(&v);
        if n > tol {
            let inv = T::one() / n;
            v.iter_mut().for_each(|x| *x = x.scale(inv));
            basis.push(v);
        }
    }
    basis
}

/// Unit basis vector `e_i` of length `dim`.
pub fn unit_vector<T: Real>(dim: usize, i: usize) -> Vector<T> {
    let mut v = vec![Complex::zero(); dim];
    v[i] = Complex::one();
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex<f64> {
        Complex::new(re, 0.0)
    }

    #[test]
    fn kron_of_identities_is_identity() {
        let k = OperatorMatrix::<f64>::identity(2).kron(&OperatorMatrix::identity(3));
        assert_eq!(k, OperatorMatrix::identity(6));
    }

    #[test]
    fn diagonal_matrices_commute() {
        let a = OperatorMatrix::from_real_diagonal(&[1.0, 2.0]);
        let b = OperatorMatrix::from_real_diagonal(&[-3.0, 7.5]);
        assert_eq!(a.commutator(&b).unwrap().frob_norm(), 0.0);
    }

    #[test]
    fn frob_norm_of_identity() {
        for d in 1..6 {
            let n = OperatorMatrix::<f64>::identity(d).frob_norm();
            assert!((n - (d as f64).sqrt()).abs() < 1e-15);
        }
    }

    #[test]
    fn commutator_rejects_mismatched_dims() {
        let a = OperatorMatrix::<f64>::identity(2);
        let b = OperatorMatrix::<f64>::identity(3);
        assert_eq!(a.commutator(&b), Err(Error::DimensionMismatch { left: 2, right: 3 }));
    }

    #[test]
    fn kron_places_blocks() {
        let sx = OperatorMatrix::from_fn(2, |i, j| if i != j { c(1.0) } else { c(0.0) });
        let d = OperatorMatrix::from_real_diagonal(&[1.0, 2.0]);
        let k = sx.kron(&d);
        assert_eq!(k[(0, 2)], c(1.0));
        assert_eq!(k[(1, 3)], c(2.0));
        assert_eq!(k[(0, 0)], c(0.0));
    }

    #[test]
    fn gram_schmidt_drops_dependent_vectors() {
        let v1 = vec![c(1.0), c(1.0)];
        let v2 = vec![c(2.0), c(2.0)];
        let v3 = vec![c(1.0), c(0.0)];
        let b = gram_schmidt(vec![v1, v2, v3], 1e-12);
        assert_eq!(b.len(), 2);
        assert!(inner(&b[0], &b[1]).norm() < 1e-15);
    }

    #[test]
    fn restrict_matches_entries() {
        let a = OperatorMatrix::from_real_fn(3, |i, j| (i * 3 + j) as f64);
        let r = a.restrict(&[unit_vector(3, 2), unit_vector(3, 0)]);
        assert_eq!(r[(0, 0)], c(8.0));
        assert_eq!(r[(0, 1)], c(6.0));
        assert_eq!(r[(1, 0)], c(2.0));
    }
}
