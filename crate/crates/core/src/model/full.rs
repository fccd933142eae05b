use num_complex::Complex;

use crate::error::{Error, Result};
use crate::matrix::OperatorMatrix;
use crate::scalar::Real;

/// Largest product-space dimension the dense builders accept.
pub const DIMENSION_CAP: usize = 1024;

/// Largest atom number for full-space construction.
pub const MAX_FULL_ATOMS: u32 = 6;

/// Field ⊗ atoms operators of the Tavis–Cummings Hamiltonian with `g = 1`.
///
/// The product index is `n · 2^N + config`; bit `N−1−j` of `config` is set
/// when atom `j` is excited.
#[derive(Clone, Debug)]
pub struct FullSpaceOps<T> {
    pub n_atoms: u32,
    pub n_max: usize,
    pub omega: T,
    /// Field annihilator on the `n_max + 1` Fock states.
    pub a: OperatorMatrix<T>,
    pub a_dag: OperatorMatrix<T>,
    /// Collective spin on the `2^N` atomic states.
    pub s3: OperatorMatrix<T>,
    pub s_plus: OperatorMatrix<T>,
    pub s_minus: OperatorMatrix<T>,
    pub h0: OperatorMatrix<T>,
    pub v: OperatorMatrix<T>,
    pub h: OperatorMatrix<T>,
}

fn single_atom<T: Real>() -> (OperatorMatrix<T>, OperatorMatrix<T>) {
    let half = T::lit(0.5);
    let sigma3 = OperatorMatrix::from_real_diagonal(&[-half, half]);
    let sigma_plus = OperatorMatrix::from_real_fn(2, |i, j| if i == 1 && j == 0 { T::one() } else { T::zero() });
    (sigma3, sigma_plus)
}

/// `I ⊗ … ⊗ op ⊗ … ⊗ I` with `op` on atom `j` of `n`.
fn on_atom<T: Real>(op: &OperatorMatrix<T>, j: u32, n: u32) -> OperatorMatrix<T> {
    let id = OperatorMatrix::identity(2);
    (0..n).fold(OperatorMatrix::identity(1), |acc, k| acc.kron(if k == j { op } else { &id }))
}

impl<T: Real> FullSpaceOps<T> {
    pub fn build(n_atoms: u32, n_max: usize, omega: T) -> Result<Self> {
        if n_atoms == 0 || n_atoms > MAX_FULL_ATOMS {
            return Err(Error::InvalidAtoms(n_atoms));
        }
        if !omega.is_finite() {
            return Err(Error::InvalidParameter(format!("omega must be finite, got {omega}")));
        }
        let dim = (n_max + 1).saturating_mul(1usize << n_atoms);
        if dim > DIMENSION_CAP {
            return Err(Error::DimensionCap { dim, cap: DIMENSION_CAP });
        }

        let a = OperatorMatrix::from_real_fn(n_max + 1, |i, j| {
            if j == i + 1 { T::from_usize_exact(j).sqrt() } else { T::zero() }
        });
        let a_dag = a.adjoint();

        let (sigma3, sigma_plus) = single_atom::<T>();
        let na = 1usize << n_atoms;
        let mut s3 = OperatorMatrix::zeros(na);
        let mut s_plus = OperatorMatrix::zeros(na);
        for j in 0..n_atoms {
            s3 = &s3 + &on_atom(&sigma3, j, n_atoms);
            s_plus = &s_plus + &on_atom(&sigma_plus, j, n_atoms);
        }
        let s_minus = s_plus.adjoint();

        let id_f = OperatorMatrix::identity(n_max + 1);
        let id_a = OperatorMatrix::identity(na);
        let number = &a_dag * &a;
        let h0 = (&number.kron(&id_a) + &id_f.kron(&s3)).scale_real(omega);
        let v = &a_dag.kron(&s_minus) + &a.kron(&s_plus);
        let h = &h0 + &v;
        Ok(FullSpaceOps { n_atoms, n_max, omega, a, a_dag, s3, s_plus, s_minus, h0, v, h })
    }

    pub fn dim(&self) -> usize {
        (self.n_max + 1) << self.n_atoms
    }

    pub fn atomic_dim(&self) -> usize {
        1 << self.n_atoms
    }

    pub fn embed_field(&self, op: &OperatorMatrix<T>) -> OperatorMatrix<T> {
        op.kron(&OperatorMatrix::identity(self.atomic_dim()))
    }

    pub fn embed_atoms(&self, op: &OperatorMatrix<T>) -> OperatorMatrix<T> {
        OperatorMatrix::identity(self.n_max + 1).kron(op)
    }

    /// `S² = S₃² + (S₊S₋ + S₋S₊)/2` on the product space.
    pub fn s_squared(&self) -> OperatorMatrix<T> {
        let pm = &self.s_plus * &self.s_minus;
        let mp = &self.s_minus * &self.s_plus;
        let s2 = &(&self.s3 * &self.s3) + &(&pm + &mp).scale_real(T::lit(0.5));
        self.embed_atoms(&s2)
    }

    /// Photon number of a product-basis index.
    pub fn photons(&self, index: usize) -> usize {
        index >> self.n_atoms
    }

    /// Number of excited atoms of a product-basis index.
    pub fn excited(&self, index: usize) -> u32 {
        (index & (self.atomic_dim() - 1)).count_ones()
    }

    /// Product-basis indices with `K = n + (excited atoms)` equal to `k`.
    pub fn k_block(&self, k: u64) -> Vec<usize> {
        (0..self.dim()).filter(|&i| (self.photons(i) as u64 + u64::from(self.excited(i))) == k).collect()
    }

    /// `‖P[h, K]P‖` and `‖P[h, S²]P‖`, with `P` removing the top two photon levels.
    pub fn commutation_residuals(&self) -> (T, T) {
        let keep: Vec<usize> = (0..self.dim()).filter(|&i| self.photons(i) + 2 <= self.n_max).collect();
        let proj = |m: OperatorMatrix<T>| -> T {
            if keep.is_empty() {
                T::zero()
            } else {
                m.submatrix(&keep).frob_norm()
            }
        };
        let hk = proj(self.h.commutator(&k_operator(self)).expect("same dim"));
        let hs = proj(self.h.commutator(&self.s_squared()).expect("same dim"));
        (hk, hs)
    }
}

/// Total number of quanta `K = a†a + S₃ + N/2`.
pub fn k_operator<T: Real>(ops: &FullSpaceOps<T>) -> OperatorMatrix<T> {
    let diag: Vec<T> = (0..ops.dim())
        .map(|i| T::from_usize_exact(ops.photons(i) + ops.excited(i) as usize))
        .collect();
    OperatorMatrix::from_real_diagonal(&diag)
}

/// `K` assembled from its operator definition rather than by counting.
pub fn k_operator_from_parts<T: Real>(ops: &FullSpaceOps<T>) -> OperatorMatrix<T> {
    let number = ops.embed_field(&(&ops.a_dag * &ops.a));
    let half_n = T::from_u32(ops.n_atoms).expect("small") / T::lit(2.0);
    let shift = OperatorMatrix::identity(ops.dim()).scale(Complex::new(half_n, T::zero()));
    &(&number + &ops.embed_atoms(&ops.s3)) + &shift
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::unit_vector;
    use num_traits::Zero;

    fn is_zero_vector<T: Real>(v: &[Complex<T>], tol: T) -> bool {
        v.iter().all(|z| z.norm() <= tol || z.is_zero())
    }

    #[test]
    fn single_atom_space() {
        let ops = FullSpaceOps::<f64>::build(1, 3, 1.0).unwrap();
        assert_eq!(ops.h.dim(), 8);
        assert!(ops.h0.commutator(&ops.v).unwrap().frob_norm() > 0.0);
        let k = k_operator(&ops);
        assert!(ops.h.commutator(&k).unwrap().frob_norm() < 1e-12);
        assert!((&k - &k_operator_from_parts(&ops)).frob_norm() < 1e-12);
    }

    #[test]
    fn vacuum_is_dark() {
        let ops = FullSpaceOps::<f64>::build(2, 0, 1.0).unwrap();
        let v0 = ops.v.apply(&unit_vector(ops.dim(), 0));
        assert!(is_zero_vector(&v0, 0.0));
    }

    #[test]
    fn zero_frequency_leaves_interaction() {
        let ops = FullSpaceOps::<f64>::build(2, 3, 0.0).unwrap();
        assert_eq!((&ops.h - &ops.v).frob_norm(), 0.0);
    }

    #[test]
    fn k_eigenvalues() {
        let ops = FullSpaceOps::<f64>::build(4, 2, 1.0).unwrap();
        let k = k_operator(&ops);
        assert_eq!(k[(0, 0)].re, 0.0);
        // n = 0, all atoms up.
        assert_eq!(k[(15, 15)].re, 4.0);
    }

    #[test]
    fn commutation_off_boundary() {
        for n_atoms in 1..=3 {
            let ops = FullSpaceOps::<f64>::build(n_atoms, 8, 1.3).unwrap();
            let (hk, hs) = ops.commutation_residuals();
            assert!(hk < 1e-10 && hs < 1e-10, "N = {n_atoms}: {hk:e} {hs:e}");
        }
    }

    #[test]
    fn rejects_oversized_spaces() {
        assert!(matches!(FullSpaceOps::<f64>::build(6, 40, 1.0), Err(Error::DimensionCap { .. })));
        assert!(matches!(FullSpaceOps::<f64>::build(0, 4, 1.0), Err(Error::InvalidAtoms(0))));
    }
}
