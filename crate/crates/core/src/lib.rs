//! Characterization-based tests of symmetry about zero.
//!
//! Two U-statistics, the integral-type `J_n` and the Kolmogorov-type `K_n`,
//! test whether a sample comes from a distribution symmetric about the
//! origin. The crate computes the statistics, the spectra of the operators
//! that drive their degenerate limit laws, local Bahadur efficiencies
//! against several families of asymmetric alternatives, and seeded
//! bootstrap power studies that compare them with the sign test and a
//! Kolmogorov–Smirnov symmetry test.

pub mod cli;
pub mod distributions;
pub mod efficiency;
pub mod error;
pub mod quadrature;
pub mod rng;
pub mod simulation;
pub mod spectral;
pub mod statistics;

pub use error::{Error, Result};
