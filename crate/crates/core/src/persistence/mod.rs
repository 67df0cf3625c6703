//! Persistence matrices and bar codes of the homology of quotient chains.

mod classify;
mod compute;
mod integral;
mod matrix;
mod recover;
mod structure;

pub use classify::{
    classify, classify_fingerprints, fingerprint, ClassificationReport, Failure, InvariantFingerprint, PartitionStats,
};
pub use compute::{persistence_matrix, persistence_sequence, ChainHomology, PersistenceSequence};
pub use integral::{integral_persistence_matrix, integral_persistence_sequence, IntegralPersistenceMatrix};
pub use matrix::{barcode, matrix_from_barcode, Bar, Barcode, PersistenceMatrix};
pub use recover::{kernel_dimensions, recover_abelian_invariants, recover_order};
pub use structure::{check_lower_central_structure, BarcodeStructureReport, ClauseResult};
