//! The user guide, compiled so that every listing runs as a doc-test.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/lattice-paths.md")]
pub mod lattice_paths {}

#[doc = include_str!("../../../book/src/counting.md")]
pub mod counting {}

#[doc = include_str!("../../../book/src/polyominoes.md")]
pub mod polyominoes {}

#[doc = include_str!("../../../book/src/s-walks.md")]
pub mod s_walks {}

#[doc = include_str!("../../../book/src/bijection.md")]
pub mod bijection {}

#[doc = include_str!("../../../book/src/sampling.md")]
pub mod sampling {}

#[doc = include_str!("../../../book/src/verification.md")]
pub mod verification {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
