//! Tanglegram analysis: layouts and switches, exact and heuristic crossing
//! numbers, the bit-reversal extremal family, special-vertex statistics of
//! rooted binary trees, Gale–Berlekamp solvers, and exhaustive search for the
//! largest crossing number among small tanglegrams.
//!
//! Crossing status convention: throughout this crate `chi(e, f) == +1` means
//! the matching edges `e` and `f` cross, and `-1` means they do not. With this
//! convention `cr(D) = sum over pairs of (1 + chi) / 2` holds literally, and at
//! a locally optimal layout every special row sum of the decomposition matrix
//! is negative.

pub mod construct;
mod error;
pub mod extremal;
pub mod fenwick;
pub mod lights;
pub mod optimize;
pub mod rng;
pub mod tangle;
pub mod tree;

pub use error::{Error, Result};
pub use tangle::{Layout, Side, SwitchVector, Tanglegram};
pub use tree::{Orientation, Tree, VertexId};

/// `n choose 2` for pair counts.
pub fn pairs(n: usize) -> u64 {
    let n = n as u64;
    n * n.saturating_sub(1) / 2
}
