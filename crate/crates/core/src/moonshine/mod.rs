//! Genus-zero classes, their square-class links and the replication
//! recursions that extend their q-expansions.

pub mod bootstrap;
mod registry;
mod replicate;
mod squares;

pub use registry::{parse_label, ClassId, MoonshineClass, Registry, MANDATORY_SEEDS};
pub use replicate::{
    extend_coefficients, normalize_constant, replication_residuals, residuals_from_tables,
    verify_square_map, CoefficientTable, ReplicationResiduals,
};
pub use squares::{
    bundled_square_map, parse_square_map, square_map_to_tsv, Provenance, SquareMapEntry,
};
