//! The same linearized problem solved twice, by Fourier/ETDRK4 on a periodic
//! box and by the whole-line Chebyshev method, and compared on [−20, 20].

use peregrine::scenario::{compare_outputs, simulate, CompareWindow, Preset, Scenario, ScenarioId, SolverKind};
use peregrine::Result;

pub fn run_example() -> Result<()> {
    let mut fourier = Scenario::new(ScenarioId::LinGauss, Preset::Desk);
    fourier.t_end = 0.5;
    fourier.steps = 1000;
    fourier.snapshot_every = 100;
    let mut cheb = fourier.clone();
    cheb.solver = SolverKind::Chebyshev;
    cheb.steps = 250;
    cheb.snapshot_every = 25;

    let a = simulate(&fourier)?;
    let b = simulate(&cheb)?;
    let c = compare_outputs(&a, &b, CompareWindow { x: (-20.0, 20.0), t: (0.0, 0.5) })?;
    println!("Fourier vs Chebyshev: max deviation {:.2e} at {} common times", c.max_deviation, c.times.len());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
