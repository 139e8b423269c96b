//! Conserved quantities and monitors on both grids: energy of the scaled
//! breather, the linear mass, parity and coefficient floors.

use peregrine::cheb::{LayoutSpec, MultiDomainGrid};
use peregrine::diagnostics::{coefficient_floor, delta_e, energy, mass, parity_error};
use peregrine::fourier::FourierGrid;
use peregrine::nls::{peregrine_at, AsymptoticModulus};
use peregrine::{Complex64, Result};

pub fn run_example() -> Result<()> {
    let grid = MultiDomainGrid::new(&LayoutSpec::paper())?;
    for sigma in [0.9, 1.0, 1.1] {
        let u = grid.sample(|x| peregrine_at(x, 0.0) * sigma);
        let e = energy(&u, &grid, AsymptoticModulus::new(sigma * sigma)?)?;
        println!("sigma = {sigma}: E = {e:+.6e}, parity error {:.1e}", parity_error(&u, &grid)?);
    }
    if let Err(e) = delta_e(0.0, 1.0) {
        println!("Delta_E of the unscaled breather: {e}");
    }

    let f = FourierGrid::new(50.0, 1 << 12)?;
    let uper = f.sample(|x| peregrine_at(x, 0.0));
    let v = f.sample(|x| Complex64::new(0.1 * (-x * x).exp(), 0.0));
    println!("M(v) for the Gaussian perturbation: {:.10}", mass(&v, &uper, &f)?);

    let mags = f.coefficient_magnitudes(&v)?;
    println!("Fourier coefficient floor of the Gaussian: {:.1e}", coefficient_floor(&mags, 0.0));
    for (name, c) in grid.chebyshev_coefficients(&grid.sample(|x| peregrine_at(x, 0.0)))? {
        println!("Chebyshev floor in domain {name:>3}: {:.1e}", coefficient_floor(&c, 3.0));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
