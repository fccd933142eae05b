use thiserror::Error;

use crate::half::HalfInt;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("matrix is not skew-hermitian (‖g + g†‖ = {residual:e})")]
    NotSkewHermitian { residual: f64 },

    #[error("matrix is not real symmetric (residual {residual:e})")]
    NotRealSymmetric { residual: f64 },

    #[error("invalid zone (M = {m}, r = {r}): {reason}")]
    InvalidZone { m: u64, r: HalfInt, reason: &'static str },

    #[error("invalid Dicke index r = {r} for {n_atoms} atoms")]
    InvalidDickeIndex { n_atoms: u32, r: HalfInt },

    #[error("invalid number of atoms {0}")]
    InvalidAtoms(u32),

    #[error("representation dimension must be positive")]
    EmptyRepresentation,

    #[error("pivot index {index} out of range for {order} roots")]
    PivotOutOfRange { index: usize, order: usize },

    #[error("structure polynomial is negative ({value:e}) at A0 = {at}: ladder operators would be anti-conjugate")]
    NegativeStructure { at: f64, value: f64 },

    #[error("irrep classes are not isomorphic: {source_class} vs {target_class}")]
    NonIsomorphic { source_class: String, target_class: String },

    #[error("isomorphism square-root argument is {value:e} at A0' = {at}")]
    SingularIsomorphism { at: f64, value: f64 },

    #[error("full space dimension {dim} exceeds cap {cap}")]
    DimensionCap { dim: usize, cap: usize },

    #[error("K = {k} is not a remote superzone for {n_atoms} atoms (needs K > N)")]
    NotRemoteSuperzone { k: u64, n_atoms: u32 },

    #[error("K = {k} exceeds the photon cutoff n_max = {n_max}")]
    BeyondCutoff { k: u64, n_max: usize },

    #[error("conjugation changed the trace by {error:e}")]
    TraceNotPreserved { error: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("integer overflow computing {0}")]
    Overflow(&'static str),
}
