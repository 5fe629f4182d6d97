//! Compiles every listing in `book/src` as a doctest. mdbook cannot link
//! against workspace crates by itself, so each chapter is pulled in as the
//! docs of an empty module and `cargo test` runs the code blocks.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/points.md")]
pub mod points {}
#[doc = include_str!("../../../book/src/sets.md")]
pub mod sets {}
#[doc = include_str!("../../../book/src/closure.md")]
pub mod closure {}
#[doc = include_str!("../../../book/src/compactness.md")]
pub mod compactness {}
#[doc = include_str!("../../../book/src/embeddings.md")]
pub mod embeddings {}
#[doc = include_str!("../../../book/src/extension.md")]
pub mod extension {}
#[doc = include_str!("../../../book/src/report.md")]
pub mod report {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
#[doc = include_str!("../../../README.md")]
pub mod readme {}
