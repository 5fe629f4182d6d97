//! Embeddings into powers of the metric hedgehog.

pub mod basis;
pub mod fan;
pub mod kowalsky;
pub mod real;
pub mod stone;

pub use basis::{
    basis_check, default_resolution, sigma_discrete_basis, BasisFailure, DiscreteFamily,
};
pub use fan::fan_map;
pub use kowalsky::{
    check_separation, kowalsky_embed, KowalskyEmbedding, SeparationFailure, SeparationReport,
    EXHAUSTIVE_LIMIT, SAMPLED_SUBSETS,
};
pub use real::{embed_real, int_to_spine, invert_real, real_image_member, spine_to_int, PointPair};
pub use stone::{
    check_refinement, default_max_level, stone_refine, RefinementCheck, RefinementFamily,
    RefinementLevel, RefinementMember,
};
