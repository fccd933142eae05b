//! Algebraic solution of the Tavis-Cummings model: polynomial algebras of
//! excitations, zone-by-zone exact and perturbative spectra, and the thermal
//! emission of an atomic ensemble in a resonant cavity.
//!
//! Numerical code is generic over [`scalar::Real`]; the `*64` and `*32`
//! aliases below fix the scalar type.

pub mod algebra;
pub mod cli;
pub mod error;
pub mod half;
pub mod matrix;
pub mod model;
pub mod perturbation;
pub mod scalar;
pub mod thermal;

pub use algebra::{
    classify_zone, isomorphism_map, realize_pae_left, realize_pae_right, tc_structure_polynomial, Dimension,
    IrrepClass, Orientation, PaeGenerators, Side, SpinMatrices, StructurePolynomial, ZoneKind, ZoneLabel,
};
pub use error::{Error, Result};
pub use half::HalfInt;
pub use matrix::{expm_skew, symmetric_eigen, OperatorMatrix, SymTridiagonal};
pub use model::{block_decompose, zone_matrix, FullSpaceOps, ZoneMatrix};
pub use perturbation::{
    commutator_identities_check, compare_spectra, rabi_frequency, spectrum_third_order, transform_chain, Branch,
    SpectrumResult,
};
pub use scalar::Real;
pub use thermal::{
    dressed_dipole_oracle, intensity_classical, emission_intensity, multiplicity_g, superzone_dipole,
    temperature_scan, ThermalParams, ThermalScanRow,
};

pub type OperatorMatrix64 = OperatorMatrix<f64>;
pub type OperatorMatrix32 = OperatorMatrix<f32>;
pub type SymTridiagonal64 = SymTridiagonal<f64>;
pub type SymTridiagonal32 = SymTridiagonal<f32>;
pub type StructurePolynomial64 = StructurePolynomial<f64>;
pub type PaeGenerators64 = PaeGenerators<f64>;
pub type ZoneMatrix64 = ZoneMatrix<f64>;
pub type FullSpaceOps64 = FullSpaceOps<f64>;
pub type SpectrumResult64 = SpectrumResult<f64>;
pub type ThermalParams64 = ThermalParams<f64>;
pub type ThermalScanRow64 = ThermalScanRow<f64>;
