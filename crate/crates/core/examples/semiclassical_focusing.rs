//! Semiclassical NLS `iε u_t + ε² u_xx + 2|u|²u = 0` from `e^{-x²}`: the
//! first focusing peak arrives earlier as ε shrinks.

use peregrine::fourier::{run_semiclassical, FourierRunConfig, SemiclassicalParam};
use peregrine::Result;

pub fn run_example() -> Result<()> {
    let cfg = FourierRunConfig::semiclassical_desk();
    for eps in [0.2, 0.15, 0.1] {
        let out = run_semiclassical(&cfg, SemiclassicalParam::new(eps)?)?;
        match out.first_peak() {
            Some((t, peak)) => println!("eps = {eps:<4}  first peak |u| = {peak:.4} at t = {t:.4}"),
            None => println!("eps = {eps:<4}  no peak before t = 1"),
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
