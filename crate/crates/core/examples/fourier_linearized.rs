//! Linearized equation about the Peregrine breather with a Gaussian
//! perturbation, on a periodic Fourier grid with ETDRK4.

use peregrine::fourier::{run_linearized, FourierRunConfig};
use peregrine::Result;

pub fn run_example() -> Result<()> {
    let mut cfg = FourierRunConfig::linearized_desk();
    cfg.n = 1 << 11;
    cfg.steps = 1000;
    cfg.snapshot_every = 100;
    let out = run_linearized(&cfg)?;

    let v0 = out.snapshots[0].max_abs();
    let v1 = out.final_state.max_abs();
    println!("sup|v(.,0)| = {v0:.4}, sup|v(.,1)| = {v1:.4}, growth x{:.2}", v1 / v0);
    println!("max |1 - M(t)/M(0)| = {:.2e}", out.diagnostics.max_mass_drift());
    for s in &out.snapshots {
        println!("t = {:.2}  sup|v| = {:.5}  sup over |x|>20: {:.2e}", s.t, s.max_abs(), s.max_abs_in(20.0, 50.0));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
