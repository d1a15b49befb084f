//! Universal support recovery from one-bit measurements.
//!
//! A single measurement matrix recovers the support of every sparse signal
//! in a class from `sign(Ax)`. The crate builds the combinatorial designs
//! ([`designs`]), turns them into measurement matrices ([`sensing`]),
//! generates test signals ([`signals`]), decodes supports ([`recovery`]),
//! checks the supporting facts by brute force ([`oracles`]), and runs
//! seeded parameter sweeps ([`harness`]).
//!
//! The examples directory is the best place to start:
//!
//! - `design_certification`: sample and certify list union-free and
//!   list-disjunct designs
//! - `approximate_recovery`: approximate supports of arbitrary real signals
//! - `superset_reals`: two-pass superset recovery, with a cancelling signal
//! - `dynamic_range`: exact measurements for bounded dynamic range
//! - `rational_signals`: prime-log measurements and exact sign evaluation
//! - `same_sign`: block measurements for mostly same-sign signals
//! - `oracles`: root bounds, kernel independence, Gaussian separation
//! - `experiment_sweep`: a CSV sweep through the harness
//!
//! ```text
//! cargo run --example approximate_recovery
//! ```
//!
//! Every random choice flows from an explicit `u64` seed, so designs,
//! matrices, signals and reports are reproducible.

pub mod designs;
pub mod error;
pub mod harness;
pub mod oracles;
pub mod rational;
pub mod recovery;
pub mod seed;
pub mod sensing;
pub mod signals;

pub use error::{Error, Result};
