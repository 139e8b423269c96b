//! Periodic Fourier collocation with exponential time differencing.

mod etd;
mod grid;
mod solver;

pub use etd::{etdrk4_step, etdrk4_step_spectral, EtdCoefficients, CONTOUR_POINTS};
pub use grid::FourierGrid;
pub use solver::{run_linearized, run_semiclassical, FourierInitialData, FourierRunConfig, SemiclassicalParam};
