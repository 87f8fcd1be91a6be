//! Deterministic counterparts of the randomized star: the matching
//! criterion, star recipes for single segments and balanced inputs, and
//! σ-decompositions.

mod matching;
mod recipes;
mod sigma;

pub use crate::multiseg::{BasicKind, BasicRep};
pub use matching::{hom_pi_lamina, hopcroft_karp, matching_condition, MatchingGraph, MatchingOutcome};
pub use recipes::{
    balanced_peel, star_balanced, star_balanced_right, star_basic, star_segment, star_segment_right, Peel,
};
pub use sigma::{is_sigma_reduced, sigma_decompose, sigma_decompose_ordered, SigmaDecomposition};
