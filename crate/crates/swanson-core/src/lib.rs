//! Exact solutions of the generalized Swanson oscillator — static and
//! time-dependent — with every closed-form claim cross-checked numerically:
//! truncated-Fock-space eigensolving on one side, position-grid Schrödinger
//! residuals and Crank–Nicolson integration on the other.
//!
//! Module map:
//! * [`coefficients`] — Hamiltonian parameterizations and the ladder ↔
//!   phase-space coefficient maps, including the Caldirola–Kanai and
//!   complex-mass scenarios;
//! * [`fockspace`] — truncated-basis operators, dense complex eigensolver,
//!   matrix exponentials, similarity conjugation;
//! * [`transforms`] — the non-unitary generators η, η₁, η₂ and reduction
//!   verification;
//! * [`closedform`] — spectra, propagator factorizations and the exact
//!   time-dependent Gaussian wavefunction;
//! * [`pdeverify`] — finite-difference Schrödinger residuals and the
//!   Crank–Nicolson integrator;
//! * [`grid`] — spatial grids, sampled wavefunctions and their CSV format.

pub mod closedform;
pub mod coefficients;
pub mod error;
pub mod fockspace;
pub mod grid;
pub mod linalg;
pub mod pdeverify;
pub mod transforms;

pub use error::{CoreError, Result};
pub use num_complex::Complex64;
