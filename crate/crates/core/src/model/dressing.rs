use std::f64::consts::FRAC_PI_4;

use super::full::FullSpaceOps;
use crate::algebra::SpinMatrices;
use crate::error::{Error, Result};
use crate::half::HalfInt;
use crate::matrix::{expm_skew, OperatorMatrix};
use crate::scalar::Real;

/// `U₀ = exp[(π/4)(S₊ − S₋)]` on a `d`-dimensional spin irrep.
///
/// Conjugation `U₀ (S₊ + S₋) U₀⁻¹ = 2S₃` turns the zero-order interaction
/// diagonal.
pub fn dressing_u0<T: Real>(d: usize) -> Result<OperatorMatrix<T>> {
    if d == 0 {
        return Err(Error::EmptyRepresentation);
    }
    let s = SpinMatrices::<T>::new(HalfInt::from_twice(d as i64 - 1))?;
    expm_skew(&(&s.s_plus - &s.s_minus).scale_real(T::lit(FRAC_PI_4)))
}

/// Dressing of a whole remote superzone built atom by atom.
#[derive(Clone, Debug)]
pub struct FactorizedDressing<T> {
    pub k: u64,
    /// Product-basis indices of the superzone.
    pub indices: Vec<usize>,
    /// `Π_j exp[(π/4)(E σ₊ʲ − E† σ₋ʲ)]` on the superzone, identity elsewhere.
    pub full: OperatorMatrix<T>,
}

/// Factorized `U₀` on the superzone `K`, with `E|n⟩ = |n−1⟩` the phase
/// operator. Needs `N < K ≤ n_max` so the superzone avoids the vacuum and
/// the photon cutoff.
pub fn dressing_u0_factorized<T: Real>(ops: &FullSpaceOps<T>, k: u64) -> Result<FactorizedDressing<T>> {
    if k <= u64::from(ops.n_atoms) {
        return Err(Error::NotRemoteSuperzone { k, n_atoms: ops.n_atoms });
    }
    if k > ops.n_max as u64 {
        return Err(Error::BeyondCutoff { k, n_max: ops.n_max });
    }
    let nf = ops.n_max + 1;
    let phase = OperatorMatrix::from_real_fn(nf, |i, j| if j == i + 1 { T::one() } else { T::zero() });
    let phase_dag = phase.adjoint();
    let indices = ops.k_block(k);
    let na = ops.atomic_dim();
    let id = OperatorMatrix::<T>::identity(2);
    let sigma_plus = OperatorMatrix::from_real_fn(2, |i, j| if i == 1 && j == 0 { T::one() } else { T::zero() });

    let mut block = OperatorMatrix::identity(indices.len());
    for j in 0..ops.n_atoms {
        let on_j = |op: &OperatorMatrix<T>| {
            (0..ops.n_atoms).fold(OperatorMatrix::identity(1), |acc, i| acc.kron(if i == j { op } else { &id }))
        };
        let sp = on_j(&sigma_plus);
        let sm = sp.adjoint();
        debug_assert_eq!(sp.dim(), na);
        let gen = &phase.kron(&sp) - &phase_dag.kron(&sm);
        // Each factor conserves K, so it can be exponentiated on the block.
        let factor = expm_skew(&gen.submatrix(&indices).scale_real(T::lit(FRAC_PI_4)))?;
        block = &block * &factor;
    }

    let mut full = OperatorMatrix::identity(ops.dim());
    for (a, &i) in indices.iter().enumerate() {
        for (b, &j) in indices.iter().enumerate() {
            full[(i, j)] = block[(a, b)];
        }
    }
    Ok(FactorizedDressing { k, indices, full })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::zones::block_decompose;

    #[test]
    fn spin_half_rotation() {
        let u = dressing_u0::<f64>(2).unwrap();
        let s = SpinMatrices::<f64>::new(HalfInt::HALF).unwrap();
        let x = &(&u * &(&s.s_plus + &s.s_minus)) * &u.adjoint();
        assert!((&x - &s.s3.scale_real(2.0)).frob_norm() < 1e-12);
    }

    #[test]
    fn spin_one_spectrum_on_diagonal() {
        let u = dressing_u0::<f64>(3).unwrap();
        let s = SpinMatrices::<f64>::new(HalfInt::from_int(1)).unwrap();
        let x = &(&u * &s.sx.scale_real(2.0)) * &u.adjoint();
        assert!(x.off_diagonal_norm() < 1e-12);
        let diag = x.real_diagonal();
        for (a, b) in diag.iter().zip([-2.0, 0.0, 2.0]) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn factorized_matches_per_zone() {
        let ops = FullSpaceOps::<f64>::build(2, 5, 1.0).unwrap();
        let f = dressing_u0_factorized(&ops, 3).unwrap();
        assert!((&(&f.full.adjoint() * &f.full) - &OperatorMatrix::identity(ops.dim())).frob_norm() < 1e-12);
        for z in block_decompose(&ops).unwrap().into_iter().filter(|z| z.k == 3) {
            let u0 = dressing_u0::<f64>(z.label.d).unwrap();
            let s = SpinMatrices::<f64>::new(z.label.r_tilde()).unwrap();
            for basis in &z.bases {
                let restricted = f.full.restrict(basis);
                assert!((&restricted - &u0).frob_norm() < 1e-12, "zone {:?}", z.label);
                // Only the zero-order interaction 2S̃ₓ is diagonalized.
                let dressed = &(&restricted * &s.sx) * &restricted.adjoint();
                assert!(dressed.off_diagonal_norm() < 1e-12);
            }
        }
    }

    #[test]
    fn factorized_needs_remote_superzone() {
        let ops = FullSpaceOps::<f64>::build(2, 5, 1.0).unwrap();
        assert!(matches!(dressing_u0_factorized(&ops, 2), Err(Error::NotRemoteSuperzone { .. })));
        assert!(matches!(dressing_u0_factorized(&ops, 6), Err(Error::BeyondCutoff { .. })));
    }
}
