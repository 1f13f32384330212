//! Numerical workbench for open and dissipative quantum systems in Liouville
//! space.
//!
//! Operators on a truncated Fock basis are vectorized into a `d^2`-dimensional
//! Liouville space where the evolution generator of the density matrix becomes
//! an ordinary (dense, non-hermitian) matrix. The crate builds such generators
//! for a family of models driven by superoperator functions of the oscillator
//! Hamiltonian, extracts and classifies their stationary states, propagates
//! states in time, and maps bifurcations of the stationary-state set under
//! parameter sweeps.
//!
//! The modules follow the pipeline:
//!
//! * [`hilbert`] — truncated Fock basis, operators, vectorization.
//! * [`superops`] — multiplication/Lie/Jordan superoperators and their algebra.
//! * [`generators`] — evolution generators for each model family.
//! * [`stationary`] — null spaces, state classification, stationarity scans.
//! * [`evolution`] — exact propagation `exp(t Λ)` with conservation monitors.
//! * [`catastrophe`] — potential functions, fold analysis, parameter sweeps.
//!
//! Data-parallel loops (sweep points, random algebra trials, batched scans)
//! run on rayon when the `parallel` feature is enabled (the default); see
//! [`exec`] for the runtime switch used by the benchmark suite.

pub mod catastrophe;
pub mod error;
pub mod evolution;
pub mod exec;
pub mod generators;
pub mod hilbert;
pub mod io;
pub mod stationary;
pub mod superops;

pub use error::{Error, Result};
pub use hilbert::{CMatrix, CVector, DensityState, FockBasis, HamiltonianMode};
pub use superops::SuperOp;
