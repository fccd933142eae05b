//! Rabi frequencies, the α-expansion of the zone interaction, the dressing
//! chain `U₂U₁U₀` and the third-order spectrum, with deviation metrics
//! against exact diagonalization.

mod expansion;
mod identities;
mod series;

pub use expansion::{
    alpha, branch_deviation, compare_spectra, rabi_frequency, spectrum_third_order, Branch, SpectrumResult,
    ThirdOrderSpectrum, ZoneExpansion,
};
pub use identities::{commutator_identities_check, IdentityCheck, IdentityReport, IDENTITY_TOL};
pub use series::{
    b_operator, d1_operator, exact_in_spin_basis, l_y_operator, log_log_slope, series_terms, transform_chain,
    SeriesTerms, TransformChain,
};
