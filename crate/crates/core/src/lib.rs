//! Numerical laboratory for recurrence of linear operator orbits.
//!
//! The crate builds a block-diagonal weighted cyclic shift on truncations of
//! `l2(N*)`, its roots-of-unity eigenbasis, and a vector that is the sum of a
//! convergent series of unimodular eigenvectors yet is not recurrent. Beside
//! that construction it offers return-time statistics for orbits, a
//! demonstration that finite eigenvector sums are uniformly recurrent, and an
//! evaluator for the alternating zeta function used to scan its orbit under
//! the vertical translation `s -> s - 2*pi*i/log 2`.
//!
//! Modules:
//!
//! * [`seqspace`]: factorial block layout and truncated sequence vectors.
//! * [`block_operator`]: the weighted shift `u` and its powers.
//! * [`eigen`]: scaled eigenvectors, reconstruction of the canonical basis and
//!   partial-sum bounds.
//! * [`counterexample`]: the vector `y` and its non-recurrence certificate.
//! * [`recurrence`]: return times, gap scans and the torus conjugacy.
//! * [`zeta_orbit`]: alternating zeta, an Euler-Maclaurin zeta oracle and the
//!   orbit scan.
//! * [`cli`]: the experiment runner behind the `reclab` binary.

pub mod block_operator;
pub mod cli;
pub mod counterexample;
pub mod eigen;
mod error;
pub mod recurrence;
pub mod scaling;
pub mod seqspace;
pub mod zeta_orbit;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Library version embedded in every report.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
