//! Decremental approximate maximum matching on general multigraphs.
//!
//! The crate maintains a large integral matching of a multigraph under
//! adversarial edge deletions using congestion balancing: capacities start
//! tiny, a fractional matching obeying them is computed, and capacities are
//! raised only along edges that every large matching must cross.
//!
//! Layout, bottom-up:
//!
//! - [`graph`]: multigraphs, capacities, fractional matchings and transforms.
//! - [`oracle`]: exact reference algorithms used for verification.
//! - [`static_match`]: approximate matching with a dual certificate.
//! - [`frac_flow`]: capacitated fractional matching via blocking flows.
//! - [`sparsifier`]: dynamic rounding kernel for fractional matchings.
//! - [`more`]: the "matching or bottleneck set" subroutine.
//! - [`engine`]: the per-multigraph decremental driver.
//! - [`orchestrator`]: vertex reduction and the outer restart loop.
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]

extern crate alloc;

pub mod engine;
pub mod error;
pub mod frac_flow;
pub mod graph;
pub mod lp;
pub mod matching;
pub mod more;
pub mod oracle;
pub mod orchestrator;
pub mod params;
pub mod seed;
pub mod sparsifier;
pub mod static_match;

pub use error::Error;
pub use graph::{CapacityFn, CollapsedMatching, EdgeId, FractionalMatching, Multigraph, Pair};
pub use params::{Params, Profile};

/// Numeric slack used for every comparison on flow values.
pub const TOL: f64 = 1e-9;

/// Counts elementary steps so tests can bound the work of an operation.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OpCounter(pub u64);

impl OpCounter {
    #[inline]
    pub fn tick(&mut self, k: u64) {
        self.0 = self.0.saturating_add(k);
    }
}
