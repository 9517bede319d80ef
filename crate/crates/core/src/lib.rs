//! Factorization sets and sets of lengths in numerical monoids and Puiseux
//! monoids (additive submonoids of the nonnegative rationals).
//!
//! The crate is organized bottom-up:
//!
//! * [`arith`]: exact nonnegative rationals, `p`-adic valuations, primes.
//! * [`numsgp`]: finitely generated submonoids of `(N₀, +)`: minimal
//!   generators, membership, factorizations and sets of lengths.
//! * [`puiseux`]: finitely generated Puiseux monoids, handled through their
//!   integer-scaled image, plus isomorphism testing and denominator primes.
//! * [`solver`]: exact sets of lengths over arbitrary finite sets of rational
//!   generators, including ones whose common denominator is far too large
//!   for a table over the integer image.
//! * [`staged`]: infinite Puiseux monoids presented as nested stages (the
//!   elementary monoid `⟨1/p⟩`, a monoid realizing every finite subset of
//!   `Z≥2` as a set of lengths, and a monoid with no element of length set
//!   `{2}`).
//! * [`realization`]: bounded search for `(N, x)` with `L_N(x) = S`.
//! * [`goldbach`]: lengths in the elementary monoid and their relation to
//!   sums of primes.
//!
//! ```
//! use puiseux::{numsgp::IntSubmonoid, Limits};
//!
//! let n = IntSubmonoid::minimalize(&[2, 3, 4])?;
//! assert_eq!(n.atoms(), &[2, 3]);
//! let lengths = n.length_set(6, &Limits::default())?;
//! assert_eq!(lengths.as_slice(), &[2, 3]);
//! # Ok::<(), puiseux::Error>(())
//! ```

pub mod arith;
mod bits;
mod error;
pub mod goldbach;
mod limits;
pub mod numsgp;
pub mod puiseux;
pub mod realization;
pub mod solver;
pub mod staged;

pub use arith::{ExtValuation, Rational};
pub use error::{Error, ErrorKind, Result};
pub use limits::Limits;
pub use numsgp::{FactorizationVector, IntSubmonoid, LengthSet};
pub use puiseux::{FGPuiseux, PrimeSet};
pub use realization::{RealizationResult, SearchBounds};
pub use staged::{PrimePool, Stage, StagedKind, StagedMonoid};
