//! The guide's chapters, compiled as documentation so every Rust snippet in
//! `book/src` runs under `cargo test`.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/graphs.md")]
pub mod graphs {}

#[doc = include_str!("../../../book/src/trails.md")]
pub mod trails {}

#[doc = include_str!("../../../book/src/solver.md")]
pub mod solver {}

#[doc = include_str!("../../../book/src/witness.md")]
pub mod witness {}

#[doc = include_str!("../../../book/src/oracles.md")]
pub mod oracles {}

#[doc = include_str!("../../../book/src/bench.md")]
pub mod bench {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
