//! Segments, multisegments and the deterministic structure tests on them.

mod basic;
mod multisegment;
mod permutation;
mod segment;
mod structure;

pub use basic::{sigma_index, BasicKind, BasicRep, SigmaIndex};
pub use multisegment::{index_sets, quiver_dims, DimVector, IndexSets, Multisegment};
pub use permutation::{Permutation, PATTERN_SCAN_LIMIT};
pub use segment::Segment;
pub use structure::{
    balanced_witness, balanced_witness_naive, is_balanced, is_ladder, is_regular, is_split,
    structure_tests, PatternType, PatternWitness, StructureFlags,
};
