//! Affine-invariant expander codes over finite fields.
//!
//! The crate is `no_std` with `alloc`. Modules build on each other bottom-up:
//!
//! * [`gf`]: prime-power fields, additive characters, F_p-subspaces, embeddings.
//! * [`poly`]: univariate polynomials, base-u expansions, invariant polynomials.
//! * [`group`]: translation and scaling subgroups, the affine group `A = S ⋊ H`,
//!   free points and the two parameter families.
//! * [`graph`]: the coset graph, exact and numeric second singular values.
//! * [`code`]: message spaces, encoding, local Reed-Solomon checks, distance.
//! * [`bounds`]: closed-form volumes, rate and distance bounds, Monte Carlo.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bounds;
pub mod code;
pub mod error;
pub mod gf;
pub mod graph;
pub mod group;
pub mod poly;

pub use error::{Error, Result};

/// Exact rational numbers used for code rates and parameter ratios.
pub type Rational = num_rational::Ratio<i64>;
