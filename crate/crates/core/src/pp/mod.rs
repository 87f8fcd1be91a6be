//! Points of the components of the nilpotent variety and the randomized
//! computations on them.

mod engine;
mod module;
mod system;
mod tmatrix;

pub use engine::{hom_ext_at, Engine, RandomizedVerdict};
pub use module::{
    cocycle_system, ext1_dim, hom_dim, hom_system, nullity, plus_orbit, random_extension, random_hom,
    restricted_profile, sample_generic, system_size, CocycleSystem, GenericModule, HomSystem, PiModule,
};
pub use system::{Block, SystemBuilder};
pub use tmatrix::{t_dual_matrix, t_matrix, TMatrix};
