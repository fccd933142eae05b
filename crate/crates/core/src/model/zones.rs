use serde::{Deserialize, Serialize};

use super::full::FullSpaceOps;
use crate::algebra::{classify_zone, realize_pae_left, tc_structure_polynomial, PaeGenerators, ZoneLabel};
use crate::error::{Error, Result};
use crate::half::HalfInt;
use crate::matrix::{gram_schmidt, symmetric_eigen, vector_norm, OperatorMatrix, SymTridiagonal, Vector};
use crate::scalar::Real;

/// Interaction restricted to one zone: zero diagonal, off-diagonal
/// `t_n = √(n(M+1−n)(2r+1−n))`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZoneMatrix<T> {
    pub label: ZoneLabel,
    pub tridiag: SymTridiagonal<T>,
}

impl<T: Real> ZoneMatrix<T> {
    pub fn eigenvalues(&self) -> Vec<T> {
        self.tridiag.eigenvalues()
    }

    pub fn to_operator(&self) -> OperatorMatrix<T> {
        let t = self.tridiag.offdiag();
        OperatorMatrix::from_real_fn(self.label.d, |i, j| {
            if j == i + 1 {
                t[i]
            } else if i == j + 1 {
                t[j]
            } else {
                T::zero()
            }
        })
    }
}

/// `t_n²` as an exact integer.
pub fn zone_offdiag_squared(m: u64, r: HalfInt, n: u64) -> u128 {
    let r2 = r.twice() as u128;
    let n = u128::from(n);
    n * (u128::from(m) + 1 - n) * (r2 + 1 - n)
}

pub fn zone_matrix<T: Real>(m: u64, r: HalfInt) -> Result<ZoneMatrix<T>> {
    let label = classify_zone(m, r)?;
    let offdiag = (1..label.d as u64)
        .map(|n| {
            T::from_u128(zone_offdiag_squared(m, r, n))
                .map(T::sqrt)
                .ok_or(Error::Overflow("zone matrix element"))
        })
        .collect::<Result<Vec<T>>>()?;
    Ok(ZoneMatrix { label, tridiag: SymTridiagonal::zero_diagonal(offdiag) })
}

/// Zone algebra realized from its largest root, so that `M₀` descends from
/// `(M+r)/2`; the interaction is `a₊ + a₋`.
pub fn zone_realization<T: Real>(m: u64, r: HalfInt) -> Result<PaeGenerators<T>> {
    let label = classify_zone(m, r)?;
    let poly = tc_structure_polynomial::<T>(m, r)?;
    realize_pae_left(&poly, 2, label.d)
}

/// One `(M, r)` zone found inside the full space.
#[derive(Clone, Debug)]
pub struct ExtractedZone<T> {
    /// Eigenvalue of the total-quanta operator.
    pub k: u64,
    pub label: ZoneLabel,
    /// Number of equivalent copies found.
    pub multiplicity: usize,
    /// Interaction restricted to each copy, in the ladder basis.
    pub blocks: Vec<OperatorMatrix<T>>,
    /// Orthonormal ladder basis of each copy, as full-space vectors.
    pub bases: Vec<Vec<Vector<T>>>,
    /// Whether the photon cutoff is far enough from the zone.
    pub trusted: bool,
}

/// Twice the spin whose Casimir is `lambda`.
fn twice_spin<T: Real>(lambda: T) -> i64 {
    let x = (T::one() + T::lit(4.0) * lambda).max(T::zero()).sqrt() - T::one();
    x.round().to_i64().unwrap_or(-1)
}

/// Splits every `K ≤ n_max` block of the full space into zones.
///
/// Inside each block, `S²` is diagonalized and grouped by eigenvalue. In
/// each group the `S₃ = −r` states seed one ladder per equivalent copy; the
/// ladder is generated with `a·S₊` and the interaction is projected onto it.
pub fn block_decompose<T: Real>(ops: &FullSpaceOps<T>) -> Result<Vec<ExtractedZone<T>>> {
    let s2 = ops.s_squared();
    let s3 = ops.embed_atoms(&ops.s3);
    let ladder = &ops.embed_field(&ops.a) * &ops.embed_atoms(&ops.s_plus);
    let dim = ops.dim();
    let group_tol = T::tol(1e-8);
    let n_atoms2 = i64::from(ops.n_atoms);
    let mut zones = Vec::new();

    for k in 0..=ops.n_max as u64 {
        let idx = ops.k_block(k);
        if idx.is_empty() {
            continue;
        }
        let embed = |v: &Vector<T>| -> Vector<T> {
            let mut full = vec![num_complex::Complex::new(T::zero(), T::zero()); dim];
            for (&i, &x) in idx.iter().zip(v) {
                full[i] = x;
            }
            full
        };
        let eig = symmetric_eigen(&s2.submatrix(&idx))?;

        let mut start = 0;
        while start < eig.values.len() {
            let lambda = eig.values[start];
            let mut end = start + 1;
            while end < eig.values.len() && (eig.values[end] - lambda).abs() <= group_tol {
                end += 1;
            }
            let group: Vec<Vector<T>> = eig.vectors[start..end].iter().map(&embed).collect();
            start = end;

            let r = HalfInt::from_twice(twice_spin(lambda));
            let m2 = 2 * k as i64 + r.twice() - n_atoms2;
            if r.is_negative() || m2 < 0 || m2 % 2 != 0 {
                return Err(Error::InvalidParameter(format!("inconsistent S² eigenvalue {lambda} in K = {k}")));
            }
            let label = classify_zone((m2 / 2) as u64, r)?;

            // Lowest-weight states of this spin inside the group.
            let s3_group = s3.restrict(&group);
            let s3_eig = symmetric_eigen(&s3_group)?;
            let target = -r.to_real::<T>();
            let seeds: Vec<Vector<T>> = s3_eig
                .values
                .iter()
                .zip(&s3_eig.vectors)
                .filter(|(&mu, _)| (mu - target).abs() <= group_tol)
                .map(|(_, c)| {
                    let mut v = vec![num_complex::Complex::new(T::zero(), T::zero()); dim];
                    for (g, &coef) in group.iter().zip(c) {
                        for (x, &y) in v.iter_mut().zip(g) {
                            *x = *x + coef * y;
                        }
                    }
                    v
                })
                .collect();
            let seeds = gram_schmidt(seeds, T::tol(1e-8));

            let mut blocks = Vec::with_capacity(seeds.len());
            let mut bases = Vec::with_capacity(seeds.len());
            for seed in seeds {
                let mut basis = vec![seed];
                while basis.len() < label.d {
                    let next = ladder.apply(basis.last().expect("nonempty"));
                    let norm = vector_norm(&next);
                    if norm <= T::tol(1e-10) {
                        return Err(Error::InvalidParameter(format!(
                            "ladder terminated early in zone (M = {}, r = {})",
                            label.m, label.r
                        )));
                    }
                    basis.push(next.into_iter().map(|z| z.unscale(norm)).collect());
                }
                blocks.push(ops.v.restrict(&basis));
                bases.push(basis);
            }

            let trusted = 2 * label.m as i64 - label.r.twice() <= 2 * (ops.n_max as i64 - 2);
            zones.push(ExtractedZone { k, label, multiplicity: blocks.len(), blocks, bases, trusted });
        }
    }
    Ok(zones)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::thermal::multiplicity_g;

    fn h(twice: i64) -> HalfInt {
        HalfInt::from_twice(twice)
    }

    #[test]
    fn offdiag_examples() {
        let z = zone_matrix::<f64>(5, h(3)).unwrap();
        let t = z.tridiag.offdiag();
        assert!((t[0] - 15f64.sqrt()).abs() < 1e-15 && t[1] == 4.0 && t[2] == 3.0);
        for m in 1..20 {
            let z = zone_matrix::<f64>(m, h(1)).unwrap();
            assert_eq!(z.tridiag.offdiag().len(), 1);
            assert!((z.tridiag.offdiag()[0] - (m as f64).sqrt()).abs() < 1e-14);
        }
        let z = zone_matrix::<f64>(4, h(4)).unwrap();
        let expected = [4.0, 18f64.sqrt(), 12f64.sqrt(), 2.0];
        for (a, b) in z.tridiag.offdiag().iter().zip(expected) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn matches_realization_ladder() {
        for (m, r2) in [(12, 4), (1, 4), (4, 4), (7, 3)] {
            let z = zone_matrix::<f64>(m, h(r2)).unwrap();
            let g = zone_realization::<f64>(m, h(r2)).unwrap();
            assert!((&z.to_operator() - &(&g.a_plus + &g.a_minus)).frob_norm() < 1e-12);
        }
    }

    #[test]
    fn two_atom_blocks() {
        let ops = FullSpaceOps::<f64>::build(2, 6, 1.0).unwrap();
        let zones = block_decompose(&ops).unwrap();
        let z = zones.iter().find(|z| z.label.m == 1 && z.label.r == h(2)).unwrap();
        assert_eq!(z.blocks[0].dim(), 2);
        assert!((z.blocks[0][(0, 1)].re - 2f64.sqrt()).abs() < 1e-12);
        for z in zones.iter().filter(|z| z.label.r == h(0)) {
            assert_eq!(z.blocks[0].dim(), 1);
            assert!(z.blocks[0].frob_norm() < 1e-12);
        }
    }

    #[test]
    fn four_atom_multiplicities() {
        let ops = FullSpaceOps::<f64>::build(4, 6, 1.0).unwrap();
        let zones = block_decompose(&ops).unwrap();
        for z in zones.iter().filter(|z| z.k == 6) {
            assert_eq!(z.multiplicity as u128, multiplicity_g(4, z.label.r).unwrap());
        }
        let count: usize = zones.iter().filter(|z| z.k == 6).map(|z| z.multiplicity * z.label.d).sum();
        assert_eq!(count, 16);
    }

    #[test]
    fn extracted_blocks_match_zone_matrices() {
        let ops = FullSpaceOps::<f64>::build(3, 10, 1.0).unwrap();
        for z in block_decompose(&ops).unwrap() {
            let reference = zone_matrix::<f64>(z.label.m, z.label.r).unwrap().to_operator();
            for b in &z.blocks {
                assert!((b - &reference).frob_norm() < 1e-10, "zone {:?}", z.label);
            }
        }
    }
}
