use num_complex::Complex;
use proptest::prelude::*;

use tavis::algebra::{classify_zone, isomorphism_map, realize_pae_left, tc_structure_polynomial, Orientation};
use tavis::matrix::{expm_skew, symmetric_eigen, tridiag_eigenvalues_bisection, OperatorMatrix, SymTridiagonal};
use tavis::model::zone_matrix;
use tavis::perturbation::ZoneExpansion;
use tavis::thermal::{dicke_indices, multiplicity_g, scan_row, ThermalParams};
use tavis::{Error, HalfInt, StructurePolynomial, ZoneKind};

fn h(twice: i64) -> HalfInt {
    HalfInt::from_twice(twice)
}

fn dense(t: &SymTridiagonal<f64>) -> OperatorMatrix<f64> {
    let (d, e) = (t.diagonal(), t.offdiag());
    OperatorMatrix::from_real_fn(t.dim(), |i, j| {
        if i == j {
            d[i]
        } else if i + 1 == j {
            e[i]
        } else if j + 1 == i {
            e[j]
        } else {
            0.0
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn zone_dimension_law(m in 0u64..500, r2 in 0i64..200) {
        let label = classify_zone(m, h(r2)).unwrap();
        prop_assert_eq!(label.d as u64, m.min(r2 as u64) + 1);
    }

    #[test]
    fn zone_spectrum_comes_in_pairs(m in 0u64..400, r2 in 0i64..49) {
        let z = zone_matrix::<f64>(m, h(r2)).unwrap();
        let e = z.eigenvalues();
        let scale = e.last().unwrap().abs().max(1.0);
        for (a, b) in e.iter().zip(e.iter().rev()) {
            prop_assert!((a + b).abs() <= 1e-12 * scale);
        }
        if e.len() % 2 == 1 {
            prop_assert!(e[e.len() / 2].abs() <= 1e-12 * scale);
        }
    }

    #[test]
    fn tridiagonal_solvers_agree(
        diag in prop::collection::vec(-5.0f64..5.0, 1..30),
        off in prop::collection::vec(-5.0f64..5.0, 29),
    ) {
        let n = diag.len();
        let t = SymTridiagonal::new(diag, off[..n - 1].to_vec());
        let ql = t.eigenvalues();
        let bis = tridiag_eigenvalues_bisection(&t);
        let jac = symmetric_eigen(&dense(&t)).unwrap().values;
        for ((a, b), c) in ql.iter().zip(&bis).zip(&jac) {
            prop_assert!((a - b).abs() < 1e-10 && (a - c).abs() < 1e-10);
        }
    }

    #[test]
    fn jacobi_diagonalizes(entries in prop::collection::vec(-3.0f64..3.0, 36), n in 1usize..7) {
        let a = OperatorMatrix::from_real_fn(n, |i, j| entries[i.min(j) * 6 + i.max(j)]);
        let eig = symmetric_eigen(&a).unwrap();
        prop_assert!(eig.values.windows(2).all(|w| w[0] <= w[1]));
        for (lambda, v) in eig.values.iter().zip(&eig.vectors) {
            let av = a.apply(v);
            let res: f64 = av.iter().zip(v).map(|(x, y)| (x - y * lambda).norm_sqr()).sum::<f64>().sqrt();
            prop_assert!(res < 1e-10);
        }
    }

    #[test]
    fn exponential_of_skew_is_unitary(entries in prop::collection::vec(-2.0f64..2.0, 50), n in 1usize..6) {
        let g = OperatorMatrix::from_fn(n, |i, j| {
            let (re, im) = (entries[i.min(j) * 5 + i.max(j)], entries[25 + i.min(j) * 5 + i.max(j)]);
            match i.cmp(&j) {
                std::cmp::Ordering::Less => Complex::new(re, im),
                std::cmp::Ordering::Greater => Complex::new(-re, im),
                std::cmp::Ordering::Equal => Complex::new(0.0, im),
            }
        });
        let u = expm_skew(&g).unwrap();
        let id = OperatorMatrix::identity(n);
        prop_assert!((&(&u * &u.adjoint()) - &id).frob_norm() < 1e-12);
        let back = expm_skew(&(-&g)).unwrap();
        prop_assert!((&(&u * &back) - &id).frob_norm() < 1e-12);
    }

    #[test]
    fn third_order_levels_are_odd(m in 1u64..300, r2 in 0i64..30) {
        let e = ZoneExpansion::<f64>::new(m, h(r2)).unwrap();
        for (mt, x) in e.levels() {
            prop_assert_eq!(e.level(-mt), -x);
        }
    }

    #[test]
    fn multiplicities_fill_the_atomic_space(n in 1u32..100) {
        let total: u128 = dicke_indices(n).map(|r| multiplicity_g(n, r).unwrap() * (r.twice() as u128 + 1)).sum();
        prop_assert_eq!(total, 1u128 << n);
    }

    #[test]
    fn zone_realizations_satisfy_the_algebra(m in 0u64..60, r2 in 0i64..12) {
        let label = classify_zone(m, h(r2)).unwrap();
        let p = tc_structure_polynomial::<f64>(m, h(r2)).unwrap();
        let g = realize_pae_left(&p, 2, label.d).unwrap();
        prop_assert!(g.residuals().max_relative() < 1e-10);
        let spin = isomorphism_map(&g, &StructurePolynomial::spin(label.r_tilde().to_f64()), 0, Orientation::Reversed);
        if label.kind == ZoneKind::Intermediate {
            // The double root changes the irrep class.
            let refused = matches!(spin, Err(Error::NonIsomorphic { .. }));
            prop_assert!(refused);
        } else {
            prop_assert!(spin.unwrap().residuals().max_relative() < 1e-10);
        }
    }

    #[test]
    fn emission_decomposes(n in 1u32..8, kt in 0.05f64..200.0, omega in 1.0f64..20.0) {
        let row = scan_row(&ThermalParams::new(n, omega, kt).unwrap()).unwrap();
        prop_assert!(row.i_per_atom >= 0.0 && row.i_per_atom.is_finite());
        prop_assert!(row.i_classical >= 0.0 && row.i_classical <= 0.5);
        if n == 1 {
            prop_assert_eq!(row.correlation, 0.0);
        }
    }
}
