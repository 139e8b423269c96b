//! Output of a time-dependent run, shared by both solvers.

use num_complex::Complex64;

use crate::cheb::LayoutSpec;
use crate::diagnostics::DiagnosticsRecord;

#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Discretization {
    Fourier { half_length: f64, n: usize },
    Chebyshev { layout: LayoutSpec },
}

/// Solution samples at one time in ascending `x`. Chebyshev snapshots start
/// at `-inf` and end at `+inf`, both holding the value at infinity.
#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub t: f64,
    pub coords: Vec<f64>,
    pub values: Vec<Complex64>,
}

impl Snapshot {
    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Max modulus over nodes with `a <= x <= b`.
    pub fn max_abs_in(&self, a: f64, b: f64) -> f64 {
        self.coords
            .iter()
            .zip(&self.values)
            .filter(|(&x, _)| x >= a && x <= b)
            .map(|(_, z)| z.norm())
            .fold(0.0, f64::max)
    }
}

/// Spectral coefficient magnitudes per domain at one time.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientSnapshot {
    pub t: f64,
    pub domains: Vec<(String, Vec<f64>)>,
}

/// Per-step monitor: max modulus, the run's conserved quantity (energy for
/// nonlinear runs, mass for linear ones) and solver iterations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepRecord {
    pub t: f64,
    pub max_abs: f64,
    pub invariant: f64,
    pub iterations: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub discretization: Discretization,
    pub snapshots: Vec<Snapshot>,
    pub coefficients: Vec<CoefficientSnapshot>,
    pub diagnostics: DiagnosticsRecord,
    pub steps: Vec<StepRecord>,
    pub warnings: Vec<String>,
    pub final_state: Snapshot,
}

impl RunOutput {
    pub(crate) fn new(discretization: Discretization, initial: Snapshot) -> Self {
        Self {
            discretization,
            snapshots: Vec::new(),
            coefficients: Vec::new(),
            diagnostics: DiagnosticsRecord::new(),
            steps: Vec::new(),
            warnings: Vec::new(),
            final_state: initial,
        }
    }

    pub fn steps_taken(&self) -> usize {
        self.steps.len()
    }

    pub fn max_iterations(&self) -> usize {
        self.steps.iter().map(|s| s.iterations).max().unwrap_or(0)
    }

    /// Largest max-modulus over the initial state and every step.
    pub fn peak_amplitude(&self) -> f64 {
        let first = self.snapshots.first().map(|s| s.max_abs()).unwrap_or(0.0);
        self.steps.iter().map(|s| s.max_abs).fold(first, f64::max)
    }

    /// Largest `|1 − I(t)/I(t₀)|` of the per-step invariant.
    pub fn max_invariant_drift(&self, initial: f64) -> f64 {
        if initial == 0.0 || !initial.is_finite() {
            return f64::NAN;
        }
        self.steps.iter().map(|s| (1.0 - s.invariant / initial).abs()).fold(0.0, f64::max)
    }

    /// First local maximum in time of the per-step max modulus, as
    /// `(t, max|u|)`.
    pub fn first_peak(&self) -> Option<(f64, f64)> {
        let s = &self.steps;
        (1..s.len().saturating_sub(1))
            .find(|&i| s[i].max_abs > s[i - 1].max_abs && s[i].max_abs >= s[i + 1].max_abs)
            .map(|i| (s[i].t, s[i].max_abs))
    }

    /// Snapshot closest to `t`.
    pub fn snapshot_near(&self, t: f64) -> Option<&Snapshot> {
        self.snapshots.iter().min_by(|a, b| (a.t - t).abs().total_cmp(&(b.t - t).abs()))
    }

    pub(crate) fn warn(&mut self, message: String) {
        if !self.warnings.contains(&message) {
            self.warnings.push(message);
        }
    }
}
