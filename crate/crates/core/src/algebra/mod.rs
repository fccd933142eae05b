//! Polynomial algebras of excitations: structure polynomials, irrep
//! classification, matrix realizations and the maps between them.

mod isomorphism;
mod polynomial;
mod realization;
mod spin;
mod zone;

pub use isomorphism::{isomorphism_map, Orientation};
pub use polynomial::{StructurePolynomial, ROOT_TOL};
pub use realization::{realize_pae_left, realize_pae_right, PaeGenerators, PaeResiduals, Side};
pub use spin::SpinMatrices;
pub use zone::{classify_zone, tc_structure_polynomial, Dimension, IrrepClass, ZoneKind, ZoneLabel};
