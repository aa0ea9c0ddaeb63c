//! Rate regions and a linear-code relaying simulator for the compound
//! multiple-access channel with a relay (cMACr).
//!
//! * [`numerics`]: entropy, AWGN capacity, grid optimizers, Pareto frontiers.
//! * [`cognitive`]: Gaussian MAC with a cognitive relay (full, partial, and
//!   link-limited cognition) and the orthogonal-channel polytope.
//! * [`cmacr`]: Gaussian cMACr DF/CF/outer regions and equal-rate schemes.
//! * [`binary`]: binary symmetric cMACr capacity and DF regions.
//! * [`gf2`]: GF(2) linear codes and the block-Markov XOR relaying simulator.
//! * [`figures`], [`table`], [`selftest`]: data products for the CLI.
//!
//! All rates are in bits per channel use.

// `!(x >= 0.0)` is the NaN-rejecting domain check used throughout.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod binary;
pub mod cmacr;
pub mod cognitive;
pub mod error;
pub mod figures;
pub mod gf2;
pub mod numerics;
pub mod region;
pub mod selftest;
pub mod table;

pub use error::{Error, Result};
pub use numerics::{Bits, LinkCapacity, Probability, SearchConfig};
pub use region::{BoundaryConfig, Pentagon, RegionBoundary};

/// Version string stamped into every output file.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
