//! Experiment harness around `kuramoto-sync`.
//!
//! Each experiment is a pure function from a configuration to a serializable
//! report; the binary in `main.rs` only parses flags, dispatches, and writes
//! CSV/JSON. Every random draw comes from a counter-based ChaCha stream keyed
//! by (seed, stream), so reruns and thread counts never change the output.

pub mod config;
pub mod error;
pub mod experiments;
pub mod rng;

pub use error::HarnessError;
