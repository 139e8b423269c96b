use num_complex::Complex64;

use super::etd::{etdrk4_step_spectral, EtdCoefficients};
use super::grid::FourierGrid;
use crate::diagnostics::{self, coefficient_floor, DiagnosticsRow, FLOOR_COLUMNS, RESOLUTION_ALARM};
use crate::nls::{cubic_term, linearized_potential_term, peregrine_at};
use crate::run::{CoefficientSnapshot, Discretization, RunOutput, Snapshot, StepRecord};
use crate::{Error, Result};

type C = Complex64;

/// ε of `iεu_t + ε²u_xx + 2|u|²u = 0`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct SemiclassicalParam(f64);

impl SemiclassicalParam {
    pub fn new(epsilon: f64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon <= 1.0) {
            return Err(Error::InvalidParameter(format!("epsilon must lie in (0, 1], got {epsilon}")));
        }
        Ok(Self(epsilon))
    }

    pub fn epsilon(self) -> f64 {
        self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
#[serde(tag = "recipe", rename_all = "snake_case")]
pub enum FourierInitialData {
    /// `a e^{-x²}`.
    Gaussian { amplitude: f64 },
    /// `u_Per(x, t₀)`.
    Peregrine,
}

impl FourierInitialData {
    pub fn value(&self, x: f64, t0: f64) -> C {
        match *self {
            Self::Gaussian { amplitude } => C::new(amplitude * (-x * x).exp(), 0.0),
            Self::Peregrine => peregrine_at(x, t0),
        }
    }
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct FourierRunConfig {
    pub half_length: f64,
    pub n: usize,
    pub t0: f64,
    pub t_end: f64,
    pub steps: usize,
    pub snapshot_every: usize,
    pub initial: FourierInitialData,
}

impl FourierRunConfig {
    /// Linearized Gaussian run, `L = 50`, `2¹⁴` modes, `10⁴` steps on `[0, 1]`.
    pub fn linearized_paper() -> Self {
        Self::linearized(1 << 14, 10_000)
    }

    /// Linearized Gaussian run, `2¹²` modes, `2·10³` steps.
    pub fn linearized_desk() -> Self {
        Self::linearized(1 << 12, 2_000)
    }

    fn linearized(n: usize, steps: usize) -> Self {
        Self {
            half_length: 50.0,
            n,
            t0: 0.0,
            t_end: 1.0,
            steps,
            snapshot_every: steps / 20,
            initial: FourierInitialData::Gaussian { amplitude: 0.1 },
        }
    }

    /// `u₀ = e^{-x²}` on `[-8, 8)` with `2¹³` modes and `10⁴` steps.
    pub fn semiclassical_paper() -> Self {
        Self::semiclassical(1 << 13, 10_000)
    }

    /// `u₀ = e^{-x²}` with `2¹²` modes and `2·10³` steps.
    pub fn semiclassical_desk() -> Self {
        Self::semiclassical(1 << 12, 2_000)
    }

    fn semiclassical(n: usize, steps: usize) -> Self {
        Self {
            half_length: 8.0,
            n,
            t0: 0.0,
            t_end: 1.0,
            steps,
            snapshot_every: steps / 20,
            initial: FourierInitialData::Gaussian { amplitude: 1.0 },
        }
    }

    pub fn step_size(&self) -> f64 {
        (self.t_end - self.t0) / self.steps as f64
    }

    fn validate(&self) -> Result<FourierGrid> {
        if !(self.t_end > self.t0) {
            return Err(Error::Config(format!("t_end = {} must exceed t0 = {}", self.t_end, self.t0)));
        }
        if self.steps == 0 || self.snapshot_every == 0 {
            return Err(Error::Config("steps and snapshot cadence must be positive".into()));
        }
        FourierGrid::new(self.half_length, self.n)
    }
}

/// Which equation a Fourier run integrates.
#[derive(Debug, Clone, Copy)]
enum Model {
    Linearized,
    Semiclassical(SemiclassicalParam),
}

impl Model {
    fn dispersion(self) -> f64 {
        match self {
            Self::Linearized => 1.0,
            Self::Semiclassical(e) => e.epsilon(),
        }
    }
}

/// `u_Per` on the nodes at a few recent times. ETDRK4 asks for each stage
/// time twice and the step end time again at the next step.
struct PeregrineCache<'a> {
    nodes: &'a [f64],
    entries: Vec<(f64, Vec<C>)>,
}

impl<'a> PeregrineCache<'a> {
    fn new(nodes: &'a [f64]) -> Self {
        Self { nodes, entries: Vec::new() }
    }

    fn at(&mut self, t: f64) -> &[C] {
        if let Some(i) = self.entries.iter().position(|(tc, _)| *tc == t) {
            return &self.entries[i].1;
        }
        if self.entries.len() >= 4 {
            self.entries.remove(0);
        }
        self.entries.push((t, self.nodes.iter().map(|&x| peregrine_at(x, t)).collect()));
        &self.entries.last().expect("just pushed").1
    }
}

struct Monitor<'a> {
    grid: &'a FourierGrid,
    model: Model,
}

impl Monitor<'_> {
    fn invariant(&self, u: &[C], t: f64, uper: &mut PeregrineCache) -> Result<f64> {
        match self.model {
            Model::Linearized => diagnostics::mass(u, uper.at(t), self.grid),
            Model::Semiclassical(e) => diagnostics::semiclassical_energy(u, self.grid, e.epsilon()),
        }
    }

    fn record(&self, out: &mut RunOutput, u: &[C], t: f64, uper: &mut PeregrineCache) -> Result<()> {
        let invariant = self.invariant(u, t, uper)?;
        let (energy, mass) = match self.model {
            Model::Linearized => (f64::NAN, invariant),
            Model::Semiclassical(_) => (invariant, f64::NAN),
        };
        let magnitudes = self.grid.coefficient_magnitudes(u)?;
        let mut floors = [f64::NAN; FLOOR_COLUMNS];
        floors[0] = coefficient_floor(&magnitudes, 0.0);
        if floors[0] > RESOLUTION_ALARM {
            out.warn(format!("resolution alarm: Fourier coefficient floor exceeds {RESOLUTION_ALARM:e}"));
        }
        out.diagnostics.push(DiagnosticsRow {
            t,
            energy,
            mass,
            max_amplitude: u.iter().map(|z| z.norm()).fold(0.0, f64::max),
            max_diff: f64::NAN,
            parity_error: diagnostics::parity_error(u, self.grid)?,
            floors,
        });
        out.coefficients.push(CoefficientSnapshot { t, domains: vec![("fourier".to_string(), magnitudes)] });
        out.snapshots.push(self.snapshot(u, t));
        Ok(())
    }

    fn snapshot(&self, u: &[C], t: f64) -> Snapshot {
        Snapshot { t, coords: self.grid.nodes().to_vec(), values: u.to_vec() }
    }
}

/// Linearized equation about the Peregrine breather on a periodic box.
/// The stiff part `i v_xx` is integrated exactly; the potential terms,
/// including the conjugate one, go into the ETD nonlinear slot.
pub fn run_linearized(config: &FourierRunConfig) -> Result<RunOutput> {
    run(config, Model::Linearized)
}

/// `iεu_t + ε²u_xx + 2|u|²u = 0`, written as `u_t = iεu_xx + (2i/ε)|u|²u`.
/// With `ε = 1` this is the focusing NLS itself.
pub fn run_semiclassical(config: &FourierRunConfig, epsilon: SemiclassicalParam) -> Result<RunOutput> {
    run(config, Model::Semiclassical(epsilon))
}

fn run(config: &FourierRunConfig, model: Model) -> Result<RunOutput> {
    let grid = config.validate()?;
    let h = config.step_size();
    let coeffs = EtdCoefficients::for_dispersion(&grid, model.dispersion(), h)?;
    let nodes = grid.nodes().to_vec();
    let mut uper = PeregrineCache::new(&nodes);
    let monitor = Monitor { grid: &grid, model };

    let mut u = grid.sample(|x| config.initial.value(x, config.t0));
    let mut out = RunOutput::new(
        Discretization::Fourier { half_length: config.half_length, n: config.n },
        monitor.snapshot(&u, config.t0),
    );
    monitor.record(&mut out, &u, config.t0, &mut uper)?;

    let mut u_hat = grid.forward(&u)?;
    for step in 1..=config.steps {
        let t = config.t0 + (step - 1) as f64 * h;
        let next = etdrk4_step_spectral(&u_hat, t, &coeffs, |x_hat, ts| {
            let x = grid.inverse(x_hat)?;
            let nx: Vec<C> = match model {
                Model::Linearized => {
                    let up = uper.at(ts);
                    x.iter().zip(up).map(|(&v, &p)| linearized_potential_term(v, p)).collect()
                }
                Model::Semiclassical(e) => {
                    let s = 1.0 / e.epsilon();
                    x.iter().map(|&z| cubic_term(z) * s).collect()
                }
            };
            grid.forward(&nx)
        })?;
        u_hat = next;
        u = grid.inverse(&u_hat)?;
        let t_new = config.t0 + step as f64 * h;
        let max_abs = u.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let invariant = monitor.invariant(&u, t_new, &mut uper)?;
        out.steps.push(StepRecord { t: t_new, max_abs, invariant, iterations: 0 });
        if !max_abs.is_finite() {
            out.final_state = monitor.snapshot(&u, t_new);
            return Err(Error::RunAborted {
                reason: format!("solution became non-finite at t = {t_new}"),
                partial: Box::new(out),
            });
        }
        if step % config.snapshot_every == 0 || step == config.steps {
            monitor.record(&mut out, &u, t_new, &mut uper)?;
        }
    }
    out.final_state = monitor.snapshot(&u, config.t0 + config.steps as f64 * h);
    Ok(out)
}
