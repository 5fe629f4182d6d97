//! Separating discrete families and extending hedgehog-valued maps.

pub mod extend;
pub mod separate;

pub use extend::{
    hedgehog_extend, separate_via_extension, verify_extension, Extension, ExtensionReport,
    HedgehogMap, IdentityCheck,
};
pub use separate::{combine_pairwise, metric_separate, metric_separate_within};
