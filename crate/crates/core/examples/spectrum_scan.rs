//! Absolute spectrum of the linearization about the background: scan a box
//! of the λ-plane and check it against iℝ ∪ [−2, 2].

use peregrine::spectrum::{
    absolute_spectrum_scan, dispersion_roots, in_essential_spectrum, max_growth_rate, Region, SpectrumScan,
};
use peregrine::{Complex64, Result};

pub fn run_example() -> Result<()> {
    let scan = absolute_spectrum_scan(&SpectrumScan::new(Region::new(-3.0, 3.0, -3.0, 3.0)?, 61)?)?;
    let off_curve = scan.hits.iter().filter(|p| p.re.abs() > 1e-9 && (p.im.abs() > 1e-9 || p.re.abs() > 2.0)).count();
    println!("{} of {} grid points in the absolute spectrum, {} off iR ∪ [-2, 2]", scan.hits.len(), 61 * 61, off_curve);

    let (rate, k) = max_growth_rate();
    println!("largest growth rate {rate} at wavenumber {k:.6}");

    for lambda in [Complex64::new(1.0, 0.0), Complex64::new(0.5, 0.5), Complex64::new(0.0, 2.0)] {
        let q = dispersion_roots(lambda);
        let roots: Vec<String> = q.roots.iter().map(|r| format!("{:.4}{:+.4}i", r.re, r.im)).collect();
        println!("lambda = {lambda}: nu = [{}], essential: {}", roots.join(", "), in_essential_spectrum(lambda, 1e-9)?);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
