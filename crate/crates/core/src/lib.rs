//! Generic invariants of components of the type-A nilpotent variety,
//! indexed by multisegments: hom and ext dimensions, rigidity, the star
//! product of components, and deterministic combinatorial counterparts.

pub mod combinatorics;
pub mod error;
pub mod harness;
pub mod linalg;
pub mod multiseg;
pub mod pp;
pub mod quiver;

pub use error::{Error, Result};
