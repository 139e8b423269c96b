//! Every example program runs to completion.

#[path = "../examples/exact_breather.rs"]
mod exact_breather;
#[path = "../examples/spectrum_scan.rs"]
mod spectrum_scan;
#[path = "../examples/fourier_linearized.rs"]
mod fourier_linearized;
#[path = "../examples/semiclassical_focusing.rs"]
mod semiclassical_focusing;
#[path = "../examples/chebyshev_grid.rs"]
mod chebyshev_grid;
#[path = "../examples/peregrine_propagation.rs"]
mod peregrine_propagation;
#[path = "../examples/perturbed_breather.rs"]
mod perturbed_breather;
#[path = "../examples/diagnostics_tour.rs"]
mod diagnostics_tour;
#[path = "../examples/scenario_run.rs"]
mod scenario_run;
#[path = "../examples/cross_solver.rs"]
mod cross_solver;

#[test]
fn example_exact_breather() {
    exact_breather::run_example().unwrap();
}

#[test]
fn example_spectrum_scan() {
    spectrum_scan::run_example().unwrap();
}

#[test]
fn example_fourier_linearized() {
    fourier_linearized::run_example().unwrap();
}

#[test]
fn example_semiclassical_focusing() {
    semiclassical_focusing::run_example().unwrap();
}

#[test]
fn example_chebyshev_grid() {
    chebyshev_grid::run_example().unwrap();
}

#[test]
fn example_peregrine_propagation() {
    peregrine_propagation::run_example().unwrap();
}

#[test]
fn example_perturbed_breather() {
    perturbed_breather::run_example().unwrap();
}

#[test]
fn example_diagnostics_tour() {
    diagnostics_tour::run_example().unwrap();
}

#[test]
fn example_scenario_run() {
    scenario_run::run_example().unwrap();
}

#[test]
fn example_cross_solver() {
    cross_solver::run_example().unwrap();
}
