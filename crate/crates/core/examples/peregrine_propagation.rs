//! The unperturbed Peregrine breather on the whole-line Chebyshev grid from
//! t = −1 to t = 1, compared with the exact solution.

use peregrine::cheb::{run_full_nls, ChebInitialData, ChebRunConfig, LayoutSpec};
use peregrine::diagnostics::diff_to_peregrine;
use peregrine::Result;

pub fn run_example() -> Result<()> {
    let mut cfg = ChebRunConfig::new(LayoutSpec::desk(), -1.0, 1.0, 1000, ChebInitialData::Peregrine);
    cfg.snapshot_every = 250;
    let out = run_full_nls(&cfg)?;
    for s in &out.snapshots {
        let (_, err) = diff_to_peregrine(&s.values, &s.coords, s.t)?;
        println!("t = {:+.2}  max|u| = {:.6}  max|u - u_Per| = {err:.2e}", s.t, s.max_abs());
    }
    println!("Newton iterations per step: at most {}", out.max_iterations());
    for w in &out.warnings {
        println!("warning: {w}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
