//! The chapters of the guide, included so that `cargo test` runs every
//! code block in them.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/structures.md")]
pub mod structures {}

#[doc = include_str!("../../../book/src/text-format.md")]
pub mod text_format {}

#[doc = include_str!("../../../book/src/ideals.md")]
pub mod ideals {}

#[doc = include_str!("../../../book/src/spectrum.md")]
pub mod spectrum {}

#[doc = include_str!("../../../book/src/pfilters.md")]
pub mod pfilters {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
