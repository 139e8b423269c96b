//! Whole-line Chebyshev collocation: finite domains plus one domain
//! compactified through `s = 1/x`, C¹ interface matching, and a two-stage
//! Gauss–Legendre time stepper.

pub mod basis;
mod grid;
mod irk;
mod solver;

pub use grid::{DomainKind, DomainSpec, GlobalState, InterfaceJumps, LayoutSpec, MultiDomainGrid};
pub use irk::{GaussLegendre2, IrkConfig, StepStats};
pub use solver::{
    irk_gauss2_step, run_full_nls, run_linearized_cheb, ChebInitialData, ChebRunConfig, MultiDomainStepper,
    RhsVariant,
};
