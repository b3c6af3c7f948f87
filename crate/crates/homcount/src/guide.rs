//! The book from `book/`, one module per chapter, so that `cargo test
//! --doc` compiles and runs every code block in it. mdbook itself cannot
//! do that; including the chapters here keeps them honest.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/graphs.md")]
pub mod graphs {}
#[doc = include_str!("../../../book/src/expressions.md")]
pub mod expressions {}
#[doc = include_str!("../../../book/src/counting.md")]
pub mod counting {}
#[doc = include_str!("../../../book/src/partitions.md")]
pub mod partitions {}
#[doc = include_str!("../../../book/src/special-targets.md")]
pub mod special_targets {}
#[doc = include_str!("../../../book/src/synthesis.md")]
pub mod synthesis {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
