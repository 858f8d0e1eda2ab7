//! Algorithmic core for Turán-type experiments on layered pyramid graphs.
//!
//! Everything in this crate is deterministic and allocation-bounded: graphs are
//! fixed-width bitset matrices (at most [`MAX_VERTICES`] vertices), bounds are
//! exact rationals, and randomized procedures take explicit seeds. The crate is
//! `no_std` + `alloc`; anything that needs wall clocks, threads or files lives
//! in the companion CLI crate and drives this one through plain function calls
//! and stop callbacks.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

mod error;

pub mod bounds;
pub mod construct;
pub mod detect;
pub mod graph;
pub mod graph6;
pub mod prooflab;
pub mod pyramids;
pub mod search;

pub use error::{Error, Graph6Error, Result};
pub use graph::{Graph, GraphBuilder, VertexSet, MAX_VERTICES};

/// Crate version, for run manifests written by callers.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Exact rational arithmetic used by every bound and inequality in the crate.
/// Numerators stay far below `i128` range for all supported graph sizes.
pub type Rational = num_rational::Ratio<i128>;

/// Convenience constructor for an exact rational from an integer pair.
pub fn ratio(num: i128, den: i128) -> Rational {
    Rational::new(num, den)
}
