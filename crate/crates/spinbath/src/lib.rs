//! Exact wavefunction simulation of two exchange-coupled central spins
//! decohering in an interacting spin-1/2 bath.
//!
//! The full many-body state of 2 + N spins is evolved unitarily with a
//! Chebyshev expansion of the propagator; observables are taken from the
//! central system's 4x4 reduced density matrix in the singlet/triplet
//! pointer basis: coherences, populations, quadratic entropy, Loschmidt
//! echo, and total/central energies. Post-processing extracts decay
//! envelopes and fits the Gaussian and exponential decay laws.

pub mod analysis;
mod bessel;
pub mod config;
mod error;
pub mod layout;
pub mod model;
pub mod observables;
pub mod oracle;
pub mod propagator;
pub mod rng;
pub mod runner;
pub mod series_io;
pub mod state;
pub mod topology;

pub use error::{Error, Result};
