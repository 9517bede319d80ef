//! The chapters of the guide in `book/src`, compiled as documentation so
//! that `cargo test` runs every code block in them.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/numerical-monoids.md")]
pub mod numerical_monoids {}

#[doc = include_str!("../../../book/src/puiseux-monoids.md")]
pub mod puiseux_monoids {}

#[doc = include_str!("../../../book/src/solver.md")]
pub mod solver {}

#[doc = include_str!("../../../book/src/staged.md")]
pub mod staged {}

#[doc = include_str!("../../../book/src/realization.md")]
pub mod realization {}

#[doc = include_str!("../../../book/src/goldbach.md")]
pub mod goldbach {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
