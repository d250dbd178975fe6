//! Pseudo-spectral solver and diagnostics for the defocusing cubic wave
//! equation on a periodic box,
//!
//! ```text
//!     u_tt - Δu + q(t, x) u + u³ = 0,
//! ```
//!
//! with a smooth, nonnegative, compactly supported, time-periodic potential
//! `q`. The crate provides exact free-wave propagation in Fourier space, a
//! Strang-splitting reference integrator, a Duhamel/Picard local solver with
//! norm-dependent step control, Sobolev/Lebesgue/Strichartz norms, the energy
//! functionals whose balance identities the long-time experiments verify, and
//! a constructive polynomial-envelope certificate for stepwise recurrence
//! inequalities.
//!
//! The crate is `no_std` (with `alloc`); all IO, file formats, and the
//! command-line driver live in the companion `wavegrow` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod error;
pub mod experiments;
pub mod fft;
pub mod field;
pub mod fit;
pub mod functionals;
pub mod gauss;
pub mod integrator;
pub mod norms;
pub mod num;
pub mod potential;
pub mod presets;
pub mod propagator;
pub mod recurrence;
pub mod rng;
pub mod series;

pub use error::{Error, Result};
pub use field::{Field, GridSpec, MultiIndex, State};
pub use num::Complex;
