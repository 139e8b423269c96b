//! The four-domain whole-line grid: derivatives, Clenshaw–Curtis quadrature,
//! interpolation and the decay of Chebyshev coefficients per domain.

use peregrine::cheb::{LayoutSpec, MultiDomainGrid};
use peregrine::nls::peregrine_at;
use peregrine::{Complex64, Result};

pub fn run_example() -> Result<()> {
    let grid = MultiDomainGrid::new(&LayoutSpec::paper())?;
    println!("{} nodes in {} domains", grid.len(), grid.domains().len());

    // ∫ 1/(1+x²) dx = π over the whole line.
    let f: Vec<f64> = grid.coords().iter().map(|&x| if x.is_finite() { 1.0 / (1.0 + x * x) } else { 0.0 }).collect();
    println!("quadrature error of 1/(1+x^2): {:.2e}", (grid.integrate(&f)? - std::f64::consts::PI).abs());

    // u_Per − 1 decays like 1/x², so its second derivative is resolved
    // on the compactified domain as well.
    let u = grid.sample(|x| if x.is_finite() { peregrine_at(x, 0.0) - 1.0 } else { Complex64::new(0.0, 0.0) });
    let uxx = grid.apply_dxx(&u)?;
    let err = grid
        .coords()
        .iter()
        .zip(&uxx)
        .filter(|(x, _)| x.is_finite())
        .map(|(&x, z)| {
            let d = 1.0 + 4.0 * x * x;
            (z.re - 32.0 * (d - 16.0 * x * x) / (d * d * d)).abs()
        })
        .fold(0.0, f64::max);
    println!("max error of d^2/dx^2 (u_Per - 1) at t = 0: {err:.2e}");

    let x = 7.3;
    println!("interpolation error at x = {x}: {:.2e}", (grid.interpolate(&u, x)? - (peregrine_at(x, 0.0) - 1.0)).norm());

    for (name, c) in grid.chebyshev_coefficients(&u)? {
        println!("domain {name:>3}: |c_0| = {:.2e}, |c_N| = {:.2e}", c[0], c[c.len() - 1]);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
