//! Spectral solvers for the focusing nonlinear Schrödinger equation
//! `i u_t + u_xx + 2|u|^2 u = 0` around the Peregrine breather.
//!
//! The crate bundles
//!
//! * [`nls`]: the exact Peregrine solution, the scaling symmetry and the
//!   right-hand sides of the full and linearized equations;
//! * [`spectrum`]: essential and absolute spectrum of the linearization about
//!   the constant-modulus background;
//! * [`fourier`]: periodic Fourier collocation with fourth-order exponential
//!   time differencing, for rapidly decaying data;
//! * [`cheb`]: a four-domain Chebyshev collocation method covering the whole
//!   real line (one domain compactified through `1/x`) with a two-stage
//!   Gauss–Legendre time stepper;
//! * [`diagnostics`]: conserved quantities and resolution monitors;
//! * [`scenario`]: the experiment catalog, configuration files, run
//!   orchestration and CSV/JSON output.
//!
//! See the `examples/` directory of this crate for one runnable program per
//! capability.

pub mod cheb;
pub mod diagnostics;
mod error;
pub mod fourier;
pub mod nls;
pub mod run;
pub mod scenario;
pub mod spectrum;

pub use error::{Error, Result};
pub use num_complex::Complex64;

#[cfg(test)]
#[path = "../tests/common/oracle.rs"]
#[allow(dead_code)]
mod oracle;
