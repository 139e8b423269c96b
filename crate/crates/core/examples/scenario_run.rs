//! A configuration file run end to end: parse, run, write the four output
//! files, read the snapshots back and compare two runs on disk.

use std::fs;

use peregrine::scenario::{self, parse_config, CompareWindow, MANIFEST_FILE};
use peregrine::Result;

pub fn run_example() -> Result<()> {
    let dir = std::env::temp_dir().join(format!("peregrine-scenario-run-{}", std::process::id()));
    let config = |steps: usize, out: &str| {
        let every = steps / 10;
        format!(
            "# linear Gaussian perturbation, shortened window\nscenario = lin-gauss\nn = 1024, steps = {steps}, snapshot_every = {every}, t_end = 0.5\nout = {}\n",
            dir.join(out).display()
        )
    };

    let coarse = parse_config(&config(250, "coarse"))?;
    let fine = parse_config(&config(500, "fine"))?;
    let m = scenario::run(&coarse)?;
    scenario::run(&fine)?;
    println!("{} steps, peak {:.5}, mass drift {:.1e}", m.summary.steps_taken, m.summary.peak_amplitude, m.summary.max_mass_drift);

    for entry in fs::read_dir(&coarse.out)? {
        println!("wrote {}", entry?.file_name().to_string_lossy());
    }
    let manifest = fs::read_to_string(coarse.out.join(MANIFEST_FILE))?;
    println!("manifest starts with: {}", manifest.lines().take(3).collect::<Vec<_>>().join(" "));

    let c = scenario::compare_runs(&coarse.out, &fine.out, CompareWindow { x: (-20.0, 20.0), t: (0.0, 0.5) })?;
    println!("coarse vs fine time step: max deviation {:.2e} over {} times", c.max_deviation, c.times.len());
    fs::remove_dir_all(&dir)?;
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
