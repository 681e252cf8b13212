//! Gate-level construction, optimization and simulation of Bernstein-Vazirani,
//! Grover and Long search circuits, together with their distributed variants
//! that split one large register into several small independent ones.
//!
//! The crate is organised bottom-up:
//!
//! * [`bits`], [`gate`] and [`state`] form the numeric kernel (dense state
//!   vectors and density matrices, gate matrices, sampling).
//! * [`circuit`] holds the circuit model, the depth metric, the X-cancellation
//!   optimizer and the text interchange format.
//! * [`boolfn`] and [`oracle`] turn explicit truth tables into phase oracles.
//! * [`algorithms`] builds and runs the full algorithms.
//! * [`noise`] adds depolarizing channels and simulates them exactly or by
//!   trajectories.
//! * [`experiments`] packages the reference workloads used by the CLI and
//!   the acceptance suite.
//!
//! Bit strings read left to right as `b_0 b_1 ... b_{n-1}`; wire `i` carries
//! bit `b_i` and the basis index of a string is `sum b_i 2^(n-1-i)`.

pub mod algorithms;
pub mod bits;
pub mod boolfn;
pub mod circuit;
pub mod error;
pub mod experiments;
pub mod gate;
pub mod noise;
pub mod oracle;
pub mod parallel;
pub mod state;

pub use bits::BitString;
pub use boolfn::TruthTable;
pub use circuit::{Circuit, GateInstance};
pub use error::{Error, ErrorClass, Result};
pub use gate::{GateKind, Matrix};
pub use noise::{NoiseModel, Parameterization};
pub use parallel::Execution;
pub use state::{DensityState, Distribution, Histogram, StateVector};

/// Complex amplitude type used throughout the simulator.
pub type C64 = num_complex::Complex64;

/// Seed used when none is supplied.
pub const DEFAULT_SEED: u64 = 42;
