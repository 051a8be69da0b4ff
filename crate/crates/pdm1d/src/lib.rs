//! One-dimensional Schrödinger problems with a position-dependent effective
//! mass.
//!
//! The crate builds the full von Roos ordering family of single-band
//! effective-mass Hamiltonians, the coordinate transformation that maps a
//! variable-mass problem onto a constant-mass one, and the supersymmetric
//! partner machinery that generates the same solvable families algebraically.
//! A finite-difference Sturm–Liouville eigensolver acts as the independent
//! numerical oracle for every closed-form claim.
//!
//! Module map:
//!
//! - [`model`] — unit system, ordering parameters (`α+β+γ = −1`), named
//!   Hamiltonian presets, and mass profiles with analytic derivatives.
//! - [`effpot`] — the ordering-dependent effective potential
//!   `V_eff = V + U_αγ`.
//! - [`transform`] — the mapped coordinate `∫√(m/m0) dz`, the wavefunction
//!   prefactor `(m/m0)^{1/4}`, and the solvable-potential composition.
//! - [`analytic`] — harmonic-oscillator and Pöschl–Teller references plus the
//!   closed-form potential families for the exponential and rational mass
//!   profiles.
//! - [`susy`] — superpotentials, partner potentials, shape-invariance
//!   detection, and algebraic spectra.
//! - [`solver`] — finite-difference discretization and symmetric tridiagonal
//!   eigensolve (Sturm bisection + inverse iteration).
//! - [`bandoffset`] — transition energies and the band-offset ratio analysis
//!   for quantum wells.
//! - [`verify`] — the end-to-end check suite behind `pdm1d verify` and the
//!   acceptance test target.

pub mod analytic;
pub mod bandoffset;
pub mod effpot;
pub mod error;
pub mod model;
pub mod numerics;
pub mod solver;
pub mod susy;
pub mod transform;
pub mod verify;

pub use error::{Error, Result};
