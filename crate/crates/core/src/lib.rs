//! Symmetric designs, symmetric transversal designs and the resolving sets
//! of their incidence graphs.
//!
//! * [`designs`] builds and validates the incidence structures, backed by
//!   [`field`] and [`hadamard`].
//! * [`incidence`] turns a design into its incidence graph, with all-pairs
//!   distances and distance-regularity checks.
//! * [`resolve`] finds and verifies semi-resolving, split resolving and
//!   minimum resolving sets.
//! * [`bounds`] evaluates the expectation bounds behind the randomized
//!   construction exactly.

pub mod bounds;
pub mod designs;
pub mod error;
pub mod field;
pub mod hadamard;
pub mod incidence;
pub mod resolve;

pub use error::{Error, Result};
