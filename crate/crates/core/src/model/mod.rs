//! Tavis–Cummings operators on the truncated field ⊗ atoms space, their
//! decomposition into zones and the dressing transformation.

mod dressing;
mod full;
mod zones;

pub use dressing::{dressing_u0, dressing_u0_factorized, FactorizedDressing};
pub use full::{k_operator, k_operator_from_parts, FullSpaceOps, DIMENSION_CAP, MAX_FULL_ATOMS};
pub use zones::{
    block_decompose, zone_matrix, zone_offdiag_squared, zone_realization, ExtractedZone, ZoneMatrix,
};
