use num_complex::Complex64;

use super::grid::{GlobalState, LayoutSpec, MultiDomainGrid};
use super::irk::{GaussLegendre2, IrkConfig, StepStats};
use crate::diagnostics::{self, coefficient_floor, DiagnosticsRow, FLOOR_COLUMNS, RESOLUTION_ALARM};
use crate::nls::{cubic_term, linearized_potential_term, peregrine_at, AsymptoticModulus};
use crate::run::{CoefficientSnapshot, Discretization, RunOutput, Snapshot, StepRecord};
use crate::{Error, Result};

/// Which equation the stepper integrates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RhsVariant {
    /// `i u_t + u_xx + 2|u|²u = 0`.
    FullNls,
    /// `i v_t + v_xx + 4|u_Per|²v + 2u_Per² conj(v) = 0`.
    Linearized,
}

/// Initial-data recipes evaluated at `t₀`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
#[serde(tag = "recipe", rename_all = "snake_case")]
pub enum ChebInitialData {
    /// Full equation: `u_Per`; linearized: `v = 0`.
    Peregrine,
    /// Full equation: `u_Per + a e^{-x²}`; linearized: `v = a e^{-x²}`.
    GaussianPerturbation { amplitude: f64 },
    /// `factor · u_Per` for either equation.
    ScaledPeregrine { factor: f64 },
}

impl ChebInitialData {
    pub fn value(&self, variant: RhsVariant, x: f64, t0: f64) -> Complex64 {
        let gauss = |a: f64| Complex64::new(a * (-x * x).exp(), 0.0);
        match (self, variant) {
            (Self::Peregrine, RhsVariant::FullNls) => peregrine_at(x, t0),
            (Self::Peregrine, RhsVariant::Linearized) => Complex64::new(0.0, 0.0),
            (Self::GaussianPerturbation { amplitude }, RhsVariant::FullNls) => peregrine_at(x, t0) + gauss(*amplitude),
            (Self::GaussianPerturbation { amplitude }, RhsVariant::Linearized) => gauss(*amplitude),
            (Self::ScaledPeregrine { factor }, _) => peregrine_at(x, t0) * *factor,
        }
    }
}

/// Grid plus factored Gauss–Legendre stepper for one equation and step size.
#[derive(Debug)]
pub struct MultiDomainStepper {
    grid: MultiDomainGrid,
    engine: GaussLegendre2,
    variant: RhsVariant,
    coords: Vec<f64>,
}

impl MultiDomainStepper {
    pub fn new(grid: MultiDomainGrid, config: IrkConfig, variant: RhsVariant) -> Result<Self> {
        let engine = GaussLegendre2::new(&grid, 1.0, config)?;
        let coords = grid.coords();
        Ok(Self { grid, engine, variant, coords })
    }

    pub fn grid(&self) -> &MultiDomainGrid {
        &self.grid
    }

    pub fn config(&self) -> IrkConfig {
        self.engine.config()
    }

    pub fn reset(&mut self) {
        self.engine.reset();
    }

    /// Imposes the interface conditions on `u` by adjusting interface nodes.
    pub fn project(&self, u: &mut [Complex64]) {
        self.engine.project(u);
    }

    /// One step of the selected equation.
    pub fn step(&mut self, state: &mut GlobalState) -> Result<StepStats> {
        let t = state.time;
        let stats = match self.variant {
            RhsVariant::FullNls => {
                self.engine.step(&self.grid, &mut state.values, t, |u, _| u.iter().map(|&z| cubic_term(z)).collect())?
            }
            RhsVariant::Linearized => {
                let coords = &self.coords;
                let mut cache: Vec<(f64, Vec<Complex64>)> = Vec::with_capacity(2);
                self.engine.step(&self.grid, &mut state.values, t, |v, ts| {
                    let pos = cache.iter().position(|(tc, _)| *tc == ts);
                    let idx = match pos {
                        Some(i) => i,
                        None => {
                            cache.push((ts, coords.iter().map(|&x| peregrine_at(x, ts)).collect()));
                            cache.len() - 1
                        }
                    };
                    let up = &cache[idx].1;
                    v.iter().zip(up).map(|(&v, &u)| linearized_potential_term(v, u)).collect()
                })?
            }
        };
        state.time = t + self.engine.config().h;
        Ok(stats)
    }

    /// One step of `u_t = i u_xx + N(u, t)` with a caller-supplied `N`.
    pub fn step_with<F>(&mut self, u: &mut [Complex64], t: f64, nonlinear: F) -> Result<StepStats>
    where
        F: FnMut(&[Complex64], f64) -> Vec<Complex64>,
    {
        self.engine.step(&self.grid, u, t, nonlinear)
    }
}

/// Single Gauss–Legendre step from scratch. Factors the stage matrices on
/// every call; use [`MultiDomainStepper`] for repeated steps.
pub fn irk_gauss2_step(
    state: &GlobalState,
    grid: &MultiDomainGrid,
    config: &IrkConfig,
    variant: RhsVariant,
) -> Result<GlobalState> {
    let mut stepper = MultiDomainStepper::new(grid.clone(), *config, variant)?;
    let mut next = state.clone();
    stepper.step(&mut next)?;
    Ok(next)
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct ChebRunConfig {
    pub layout: LayoutSpec,
    pub t0: f64,
    pub t_end: f64,
    pub steps: usize,
    pub newton_tol: f64,
    pub max_iterations: usize,
    pub snapshot_every: usize,
    pub kappa: f64,
    pub initial: ChebInitialData,
}

impl ChebRunConfig {
    pub fn new(layout: LayoutSpec, t0: f64, t_end: f64, steps: usize, initial: ChebInitialData) -> Self {
        Self { layout, t0, t_end, steps, newton_tol: 1e-12, max_iterations: 50, snapshot_every: 10, kappa: 1.0, initial }
    }

    pub fn step_size(&self) -> f64 {
        (self.t_end - self.t0) / self.steps as f64
    }

    fn validate(&self) -> Result<IrkConfig> {
        if !(self.t_end > self.t0) {
            return Err(Error::Config(format!("t_end = {} must exceed t0 = {}", self.t_end, self.t0)));
        }
        if self.steps == 0 || self.snapshot_every == 0 {
            return Err(Error::Config("steps and snapshot cadence must be positive".into()));
        }
        AsymptoticModulus::new(self.kappa)?;
        IrkConfig { h: self.step_size(), newton_tol: self.newton_tol, max_iterations: self.max_iterations }.validated()
    }
}

/// Full NLS on the whole line.
pub fn run_full_nls(config: &ChebRunConfig) -> Result<RunOutput> {
    run(config, RhsVariant::FullNls)
}

/// Linearized equation about the Peregrine breather on the whole line.
pub fn run_linearized_cheb(config: &ChebRunConfig) -> Result<RunOutput> {
    run(config, RhsVariant::Linearized)
}

struct Monitor<'a> {
    grid: &'a MultiDomainGrid,
    variant: RhsVariant,
    kappa: AsymptoticModulus,
}

impl Monitor<'_> {
    fn invariant(&self, u: &[Complex64], t: f64) -> Result<f64> {
        match self.variant {
            RhsVariant::FullNls => diagnostics::energy(u, self.grid, self.kappa),
            RhsVariant::Linearized => {
                let up = self.grid.sample(|x| peregrine_at(x, t));
                diagnostics::mass(u, &up, self.grid)
            }
        }
    }

    fn record(&self, out: &mut RunOutput, u: &[Complex64], t: f64) -> Result<()> {
        let invariant = match self.invariant(u, t) {
            Ok(v) => v,
            Err(e) => {
                // The offending value changes every snapshot; report it once.
                if !out.warnings.iter().any(|w| w.starts_with("conserved quantity unavailable")) {
                    out.warn(format!("conserved quantity unavailable: {e}"));
                }
                f64::NAN
            }
        };
        let (energy, mass, max_diff) = match self.variant {
            RhsVariant::FullNls => {
                (invariant, f64::NAN, diagnostics::diff_to_peregrine(u, &self.grid.coords(), t)?.1)
            }
            RhsVariant::Linearized => (f64::NAN, invariant, f64::NAN),
        };
        let parity = diagnostics::parity_error(u, self.grid).unwrap_or(f64::NAN);
        let coeffs = self.grid.chebyshev_coefficients(u)?;
        let scale = coeffs.iter().flat_map(|(_, c)| c.iter().copied()).fold(0.0, f64::max);
        let mut floors = [f64::NAN; FLOOR_COLUMNS];
        for (slot, (name, c)) in floors.iter_mut().zip(&coeffs) {
            *slot = coefficient_floor(c, scale);
            if *slot > RESOLUTION_ALARM {
                out.warn(format!("resolution alarm: coefficient floor of domain {name} exceeds {RESOLUTION_ALARM:e}"));
            }
        }
        out.diagnostics.push(DiagnosticsRow {
            t,
            energy,
            mass,
            max_amplitude: u.iter().map(|z| z.norm()).fold(0.0, f64::max),
            max_diff,
            parity_error: parity,
            floors,
        });
        out.coefficients.push(CoefficientSnapshot { t, domains: coeffs });
        out.snapshots.push(self.snapshot(u, t)?);
        Ok(())
    }

    fn snapshot(&self, u: &[Complex64], t: f64) -> Result<Snapshot> {
        Ok(Snapshot { t, coords: self.grid.physical_coords(), values: self.grid.to_physical(u)? })
    }
}

fn run(config: &ChebRunConfig, variant: RhsVariant) -> Result<RunOutput> {
    let irk = config.validate()?;
    let grid = MultiDomainGrid::new(&config.layout)?;
    let mut stepper = MultiDomainStepper::new(grid, irk, variant)?;
    let mut state = GlobalState {
        values: stepper.grid().sample(|x| config.initial.value(variant, x, config.t0)),
        time: config.t0,
    };
    stepper.project(&mut state.values);

    let grid = stepper.grid().clone();
    let monitor = Monitor { grid: &grid, variant, kappa: AsymptoticModulus::new(config.kappa)? };
    let mut out = RunOutput::new(
        Discretization::Chebyshev { layout: config.layout.clone() },
        monitor.snapshot(&state.values, state.time)?,
    );
    monitor.record(&mut out, &state.values, state.time)?;

    let h = irk.h;
    for step in 1..=config.steps {
        match stepper.step(&mut state) {
            Ok(stats) => {
                // Avoid accumulating rounding in the clock.
                state.time = config.t0 + step as f64 * h;
                let invariant = monitor.invariant(&state.values, state.time).unwrap_or(f64::NAN);
                out.steps.push(StepRecord {
                    t: state.time,
                    max_abs: state.values.iter().map(|z| z.norm()).fold(0.0, f64::max),
                    invariant,
                    iterations: stats.iterations,
                });
                if !state.values.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
                    out.final_state = monitor.snapshot(&state.values, state.time)?;
                    return Err(Error::RunAborted {
                        reason: format!("solution became non-finite at t = {}", state.time),
                        partial: Box::new(out),
                    });
                }
                if step % config.snapshot_every == 0 || step == config.steps {
                    monitor.record(&mut out, &state.values, state.time)?;
                }
            }
            Err(e) => {
                out.warn(format!("step rejected: {e}"));
                out.final_state = monitor.snapshot(&state.values, state.time)?;
                return Err(Error::RunAborted { reason: e.to_string(), partial: Box::new(out) });
            }
        }
    }
    out.final_state = monitor.snapshot(&state.values, state.time)?;
    Ok(out)
}
