//! Zero-order thermal ensembles: Dicke multiplicities, partition sums and the
//! spontaneous emission intensity.

mod dicke;
mod ensemble;
mod oracle;

pub use dicke::{dicke_indices, epsilon, multiplicity_g};
pub use ensemble::{
    dressed_dipole_diagonal, ensemble_averages, intensity_classical, emission_intensity, log_grid, scan_row,
    superzone_dipole, superzone_zone_sum, temperature_scan, EnsembleAverages, ThermalParams, ThermalScanRow,
    SLICE_CUTOFF, TAIL_TOLERANCE,
};
pub use oracle::{dressed_dipole_oracle, DressedDipole};
