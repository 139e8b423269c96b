use std::fs::{self, File};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use num_complex::Complex64;

use super::config::{Equation, Scenario, ScenarioId, SolverKind};
use crate::cheb::{self, ChebInitialData, ChebRunConfig, MultiDomainGrid};
use crate::diagnostics::format_f64;
use crate::fourier::{self, FourierGrid, FourierInitialData, FourierRunConfig, SemiclassicalParam};
use crate::run::{Discretization, RunOutput, Snapshot};
use crate::{Error, Result};

pub const SNAPSHOTS_FILE: &str = "snapshots.csv";
pub const DIAGNOSTICS_FILE: &str = "diagnostics.csv";
pub const COEFFICIENTS_FILE: &str = "coefficients.csv";
pub const MANIFEST_FILE: &str = "manifest.json";

/// Headline numbers of a run.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct RunSummary {
    pub steps_taken: usize,
    pub final_time: f64,
    pub peak_amplitude: f64,
    pub final_max_amplitude: f64,
    pub max_abs_delta_e: f64,
    pub max_mass_drift: f64,
    pub max_parity_error: f64,
    pub final_coefficient_floors: Vec<f64>,
    pub max_newton_iterations: usize,
    /// First local maximum in time of `max_x |u|`.
    pub first_peak: Option<(f64, f64)>,
}

impl RunSummary {
    pub fn of(out: &RunOutput) -> Self {
        let d = &out.diagnostics;
        let nan_max = |v: &[f64]| v.iter().copied().filter(|x| x.is_finite()).fold(f64::NAN, f64::max);
        Self {
            steps_taken: out.steps_taken(),
            final_time: out.final_state.t,
            peak_amplitude: out.peak_amplitude(),
            final_max_amplitude: out.final_state.max_abs(),
            max_abs_delta_e: d.max_abs_delta_e(),
            max_mass_drift: d.max_mass_drift(),
            max_parity_error: nan_max(&d.parity_error),
            final_coefficient_floors: d.coefficient_floor.last().map(|f| f.to_vec()).unwrap_or_default(),
            max_newton_iterations: out.max_iterations(),
            first_peak: out.first_peak(),
        }
    }
}

/// Record written to `manifest.json` once per run.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct RunManifest {
    pub scenario: Scenario,
    pub figures: &'static str,
    pub initial_data: &'static str,
    pub equation: Equation,
    pub discretization: Discretization,
    pub step_size: f64,
    pub tool_version: &'static str,
    pub wall_clock_seconds: f64,
    pub status: RunStatus,
    pub error: Option<String>,
    pub summary: RunSummary,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RunStatus {
    Completed,
    Failed,
}

fn discretization_of(s: &Scenario) -> Discretization {
    match s.solver {
        SolverKind::Fourier => Discretization::Fourier { half_length: s.fourier.half_length, n: s.fourier.n },
        SolverKind::Chebyshev => Discretization::Chebyshev { layout: s.layout.clone() },
    }
}

/// Runs the solver for `scenario` without touching the file system.
pub fn simulate(scenario: &Scenario) -> Result<RunOutput> {
    scenario.validate()?;
    let s = scenario;
    match s.solver {
        SolverKind::Fourier => {
            let initial = match s.id {
                ScenarioId::LinGauss | ScenarioId::Semiclassical => {
                    FourierInitialData::Gaussian { amplitude: s.amplitude.unwrap_or(1.0) }
                }
                _ => return Err(Error::Config(format!("scenario {} has no Fourier recipe", s.id))),
            };
            let cfg = FourierRunConfig {
                half_length: s.fourier.half_length,
                n: s.fourier.n,
                t0: s.t0,
                t_end: s.t_end,
                steps: s.steps,
                snapshot_every: s.snapshot_every,
                initial,
            };
            match s.id.equation() {
                Equation::Semiclassical => {
                    fourier::run_semiclassical(&cfg, SemiclassicalParam::new(s.epsilon.unwrap_or(0.1))?)
                }
                _ => fourier::run_linearized(&cfg),
            }
        }
        SolverKind::Chebyshev => {
            let initial = match (s.amplitude, s.sigma) {
                _ if s.id == ScenarioId::LinProp => ChebInitialData::ScaledPeregrine { factor: s.amplitude.unwrap_or(0.1) },
                (_, Some(sigma)) => ChebInitialData::ScaledPeregrine { factor: sigma },
                (Some(a), None) => ChebInitialData::GaussianPerturbation { amplitude: a },
                (None, None) => ChebInitialData::Peregrine,
            };
            let mut cfg = ChebRunConfig::new(s.layout.clone(), s.t0, s.t_end, s.steps, initial);
            cfg.newton_tol = s.newton_tol;
            cfg.max_iterations = s.newton_max_iter;
            cfg.snapshot_every = s.snapshot_every;
            cfg.kappa = s.kappa.unwrap_or(1.0);
            match s.id.equation() {
                Equation::FullNls => cheb::run_full_nls(&cfg),
                _ => cheb::run_linearized_cheb(&cfg),
            }
        }
    }
}

/// Runs `scenario` and writes the four output files to `scenario.out`.
///
/// A solver failure after the run started still writes every file with the
/// data up to the last accepted step, then returns the error. Invalid
/// scenarios write nothing.
pub fn run(scenario: &Scenario) -> Result<RunManifest> {
    scenario.validate()?;
    let start = Instant::now();
    let result = simulate(scenario);
    let seconds = start.elapsed().as_secs_f64();
    match result {
        Ok(out) => {
            let manifest = manifest_for(scenario, &out, seconds, None);
            write_outputs(&scenario.out, &out, &manifest)?;
            Ok(manifest)
        }
        Err(Error::RunAborted { reason, partial }) => {
            let manifest = manifest_for(scenario, &partial, seconds, Some(reason.clone()));
            write_outputs(&scenario.out, &partial, &manifest)?;
            Err(Error::RunAborted { reason, partial })
        }
        Err(e) => Err(e),
    }
}

fn manifest_for(scenario: &Scenario, out: &RunOutput, seconds: f64, error: Option<String>) -> RunManifest {
    RunManifest {
        scenario: scenario.clone(),
        figures: scenario.id.figures(),
        initial_data: scenario.id.initial_data(),
        equation: scenario.id.equation(),
        discretization: discretization_of(scenario),
        step_size: scenario.step_size(),
        tool_version: env!("CARGO_PKG_VERSION"),
        wall_clock_seconds: seconds,
        status: if error.is_some() { RunStatus::Failed } else { RunStatus::Completed },
        error,
        summary: RunSummary::of(out),
        warnings: out.warnings.clone(),
    }
}

/// Writes snapshots, diagnostics, coefficients and the manifest into `dir`.
pub fn write_outputs(dir: &Path, out: &RunOutput, manifest: &RunManifest) -> Result<()> {
    fs::create_dir_all(dir)?;
    let mut w = BufWriter::new(File::create(dir.join(SNAPSHOTS_FILE))?);
    write_snapshots(&mut w, &out.snapshots)?;
    w.flush()?;
    let mut w = BufWriter::new(File::create(dir.join(DIAGNOSTICS_FILE))?);
    out.diagnostics.write_csv(&mut w)?;
    w.flush()?;
    let mut w = BufWriter::new(File::create(dir.join(COEFFICIENTS_FILE))?);
    writeln!(w, "t,domain,index,magnitude")?;
    for c in &out.coefficients {
        let t = format_f64(c.t);
        for (name, mags) in &c.domains {
            for (i, m) in mags.iter().enumerate() {
                writeln!(w, "{t},{name},{i},{}", format_f64(*m))?;
            }
        }
    }
    w.flush()?;
    let json = serde_json::to_string_pretty(manifest).map_err(|e| Error::Parse(e.to_string()))?;
    fs::write(dir.join(MANIFEST_FILE), json + "\n")?;
    Ok(())
}

/// Long-form `t,x,re_u,im_u,abs_u`; the point at infinity appears as
/// `-inf` and `inf`.
pub fn write_snapshots<W: Write>(mut w: W, snapshots: &[Snapshot]) -> Result<()> {
    writeln!(w, "t,x,re_u,im_u,abs_u")?;
    for s in snapshots {
        let t = format_f64(s.t);
        for (&x, z) in s.coords.iter().zip(&s.values) {
            writeln!(w, "{t},{},{},{},{}", format_f64(x), format_f64(z.re), format_f64(z.im), format_f64(z.norm()))?;
        }
    }
    Ok(())
}

/// Snapshots and discretization read back from a run directory.
#[derive(Debug, Clone, PartialEq)]
pub struct StoredRun {
    pub dir: PathBuf,
    pub discretization: Discretization,
    pub snapshots: Vec<Snapshot>,
}

pub fn load_run(dir: &Path) -> Result<StoredRun> {
    let manifest: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.join(MANIFEST_FILE))?)
        .map_err(|e| Error::Parse(format!("{}: {e}", dir.join(MANIFEST_FILE).display())))?;
    let discretization: Discretization = serde_json::from_value(manifest["discretization"].clone())
        .map_err(|e| Error::Parse(format!("{}: discretization: {e}", dir.display())))?;
    let snapshots = read_snapshots(BufReader::new(File::open(dir.join(SNAPSHOTS_FILE))?))?;
    Ok(StoredRun { dir: dir.to_path_buf(), discretization, snapshots })
}

pub fn read_snapshots<R: BufRead>(r: R) -> Result<Vec<Snapshot>> {
    let mut lines = r.lines();
    let header = lines.next().transpose()?.unwrap_or_default();
    if header.trim() != "t,x,re_u,im_u,abs_u" {
        return Err(Error::Parse("snapshots.csv: missing header".into()));
    }
    let mut out: Vec<Snapshot> = Vec::new();
    for (i, line) in lines.enumerate() {
        let line = line?;
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 5 {
            return Err(Error::Parse(format!("snapshots.csv line {}: expected 5 fields", i + 2)));
        }
        let p = |s: &str| s.parse::<f64>().map_err(|_| Error::Parse(format!("snapshots.csv line {}: bad number '{s}'", i + 2)));
        let (t, x, re, im) = (p(f[0])?, p(f[1])?, p(f[2])?, p(f[3])?);
        match out.last_mut() {
            Some(s) if s.t == t => {
                s.coords.push(x);
                s.values.push(Complex64::new(re, im));
            }
            _ => out.push(Snapshot { t, coords: vec![x], values: vec![Complex64::new(re, im)] }),
        }
    }
    Ok(out)
}

/// Space-time window of a comparison.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct CompareWindow {
    pub x: (f64, f64),
    pub t: (f64, f64),
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct Comparison {
    pub max_deviation: f64,
    pub times: Vec<f64>,
    pub points_per_time: usize,
}

/// Points of the common comparison grid per unit length of the window.
const COMPARE_DENSITY: f64 = 50.0;

/// Evaluates a snapshot anywhere through the interpolant of its solver.
enum Interpolant {
    Fourier(FourierGrid),
    Chebyshev(MultiDomainGrid),
}

impl Interpolant {
    fn new(d: &Discretization) -> Result<Self> {
        Ok(match d {
            Discretization::Fourier { half_length, n } => Self::Fourier(FourierGrid::new(*half_length, *n)?),
            Discretization::Chebyshev { layout } => Self::Chebyshev(MultiDomainGrid::new(layout)?),
        })
    }

    fn covers(&self, a: f64, b: f64) -> bool {
        match self {
            Self::Fourier(g) => a >= -g.half_length() && b < g.half_length(),
            Self::Chebyshev(_) => true,
        }
    }

    fn eval(&self, snap: &Snapshot, xs: &[f64]) -> Result<Vec<Complex64>> {
        match self {
            Self::Fourier(g) => {
                let hat = g.forward(&snap.values)?;
                Ok(xs.iter().map(|&x| g.interpolate_spectral(&hat, x)).collect())
            }
            Self::Chebyshev(g) => {
                let u = g.from_physical(&snap.values)?;
                xs.iter().map(|&x| g.interpolate(&u, x)).collect()
            }
        }
    }
}

fn same_time(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * a.abs().max(1.0)
}

/// Max `|u_a − u_b|` over snapshots present in both runs inside the
/// window, each interpolated onto a common equispaced grid.
pub fn compare_snapshots(
    a: (&Discretization, &[Snapshot]),
    b: (&Discretization, &[Snapshot]),
    window: CompareWindow,
) -> Result<Comparison> {
    let (x0, x1) = window.x;
    if !(x1 > x0) || !(window.t.1 >= window.t.0) {
        return Err(Error::InvalidParameter(format!("empty comparison window {window:?}")));
    }
    let ia = Interpolant::new(a.0)?;
    let ib = Interpolant::new(b.0)?;
    if !ia.covers(x0, x1) || !ib.covers(x0, x1) {
        return Err(Error::InvalidParameter(format!("x-window [{x0}, {x1}] lies outside a periodic domain")));
    }
    let m = ((x1 - x0) * COMPARE_DENSITY).ceil().max(2.0) as usize;
    let xs: Vec<f64> = (0..=m).map(|j| x0 + (x1 - x0) * j as f64 / m as f64).collect();
    let in_t = |t: f64| t >= window.t.0 - 1e-12 && t <= window.t.1 + 1e-12;
    let mut times = Vec::new();
    let mut worst: f64 = 0.0;
    for sa in a.1.iter().filter(|s| in_t(s.t)) {
        if let Some(sb) = b.1.iter().find(|s| same_time(s.t, sa.t)) {
            let ua = ia.eval(sa, &xs)?;
            let ub = ib.eval(sb, &xs)?;
            worst = ua.iter().zip(&ub).map(|(p, q)| (p - q).norm()).fold(worst, f64::max);
            times.push(sa.t);
        }
    }
    if times.is_empty() {
        return Err(Error::InvalidParameter(format!(
            "the runs share no snapshot time in [{}, {}]",
            window.t.0, window.t.1
        )));
    }
    Ok(Comparison { max_deviation: worst, times, points_per_time: xs.len() })
}

/// [`compare_snapshots`] on two in-memory runs.
pub fn compare_outputs(a: &RunOutput, b: &RunOutput, window: CompareWindow) -> Result<Comparison> {
    compare_snapshots((&a.discretization, &a.snapshots), (&b.discretization, &b.snapshots), window)
}

/// [`compare_snapshots`] on two run directories.
pub fn compare_runs(dir_a: &Path, dir_b: &Path, window: CompareWindow) -> Result<Comparison> {
    let a = load_run(dir_a)?;
    let b = load_run(dir_b)?;
    compare_snapshots((&a.discretization, &a.snapshots), (&b.discretization, &b.snapshots), window)
}
