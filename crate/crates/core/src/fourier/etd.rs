//! Fourth-order exponential time differencing (Cox–Matthews) for
//! `û' = λ_k û + N̂(û, t)` with a diagonal linear part.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::grid::FourierGrid;
use crate::{Error, Result};

type C = Complex64;

/// Points on the unit circle used to average the φ-functions.
pub const CONTOUR_POINTS: usize = 32;

/// Per-mode exponentials and stage weights for one step size.
#[derive(Debug, Clone, PartialEq)]
pub struct EtdCoefficients {
    h: f64,
    exp_full: Vec<C>,
    exp_half: Vec<C>,
    q: Vec<C>,
    f1: Vec<C>,
    f2: Vec<C>,
    f3: Vec<C>,
}

impl EtdCoefficients {
    /// Tables for the linear rates `symbol[k]` and step `h`.
    pub fn new(symbol: &[C], h: f64) -> Result<Self> {
        if !(h > 0.0) || !h.is_finite() {
            return Err(Error::InvalidParameter(format!("time step must be positive, got {h}")));
        }
        let roots: Vec<C> = (0..CONTOUR_POINTS)
            .map(|j| C::from_polar(1.0, 2.0 * PI * (j as f64 + 0.5) / CONTOUR_POINTS as f64))
            .collect();
        let m = CONTOUR_POINTS as f64;
        let len = symbol.len();
        let mut out = Self {
            h,
            exp_full: Vec::with_capacity(len),
            exp_half: Vec::with_capacity(len),
            q: Vec::with_capacity(len),
            f1: Vec::with_capacity(len),
            f2: Vec::with_capacity(len),
            f3: Vec::with_capacity(len),
        };
        for &lam in symbol {
            let l = lam * h;
            out.exp_full.push(l.exp());
            out.exp_half.push((l * 0.5).exp());
            let (mut q, mut f1, mut f2, mut f3) = (C::new(0.0, 0.0), C::new(0.0, 0.0), C::new(0.0, 0.0), C::new(0.0, 0.0));
            for &r in &roots {
                let z = l + r;
                let ez = z.exp();
                let z3 = z * z * z;
                q += ((z * 0.5).exp() - 1.0) / z;
                f1 += (-4.0 - z + ez * (4.0 - 3.0 * z + z * z)) / z3;
                f2 += (2.0 + z + ez * (z - 2.0)) / z3;
                f3 += (-4.0 - 3.0 * z - z * z + ez * (4.0 - z)) / z3;
            }
            out.q.push(q * (h / m));
            out.f1.push(f1 * (h / m));
            out.f2.push(f2 * (h / m));
            out.f3.push(f3 * (h / m));
        }
        Ok(out)
    }

    /// Tables for `u_t = iα u_xx + N` on `grid`, i.e. rates `−iαk²`.
    pub fn for_dispersion(grid: &FourierGrid, alpha: f64, h: f64) -> Result<Self> {
        let symbol: Vec<C> = grid.wavenumbers().iter().map(|&k| C::new(0.0, -alpha * k * k)).collect();
        Self::new(&symbol, h)
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn len(&self) -> usize {
        self.exp_full.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exp_full.is_empty()
    }

    /// `e^{hλ}` per mode.
    pub fn exp_full(&self) -> &[C] {
        &self.exp_full
    }

    /// `e^{hλ/2}` per mode.
    pub fn exp_half(&self) -> &[C] {
        &self.exp_half
    }

    /// `h·φ₁(hλ/2)/2`, the weight of the half-step stages.
    pub fn q(&self) -> &[C] {
        &self.q
    }

    /// Final-combination weights `(f₁, f₂, f₃)`.
    pub fn weights(&self) -> (&[C], &[C], &[C]) {
        (&self.f1, &self.f2, &self.f3)
    }
}

/// One ETDRK4 step in spectral space. `nonlinear` maps spectral state and
/// stage time to the spectral nonlinear term; stage times are `t`, `t+h/2`,
/// `t+h/2`, `t+h`.
pub fn etdrk4_step_spectral<F>(v_hat: &[C], t: f64, coeffs: &EtdCoefficients, mut nonlinear: F) -> Result<Vec<C>>
where
    F: FnMut(&[C], f64) -> Result<Vec<C>>,
{
    let n = coeffs.len();
    if v_hat.len() != n {
        return Err(Error::LengthMismatch { expected: n, got: v_hat.len() });
    }
    let h = coeffs.h;
    let mut eval = |x: &[C], ts: f64| -> Result<Vec<C>> {
        let out = nonlinear(x, ts)?;
        if out.len() != n {
            return Err(Error::LengthMismatch { expected: n, got: out.len() });
        }
        Ok(out)
    };
    let e2 = &coeffs.exp_half;
    let q = &coeffs.q;

    let nv = eval(v_hat, t)?;
    let a: Vec<C> = (0..n).map(|k| e2[k] * v_hat[k] + q[k] * nv[k]).collect();
    let na = eval(&a, t + 0.5 * h)?;
    let b: Vec<C> = (0..n).map(|k| e2[k] * v_hat[k] + q[k] * na[k]).collect();
    let nb = eval(&b, t + 0.5 * h)?;
    let c: Vec<C> = (0..n).map(|k| e2[k] * a[k] + q[k] * (nb[k] * 2.0 - nv[k])).collect();
    let nc = eval(&c, t + h)?;
    Ok((0..n)
        .map(|k| {
            coeffs.exp_full[k] * v_hat[k]
                + coeffs.f1[k] * nv[k]
                + coeffs.f2[k] * (na[k] + nb[k]) * 2.0
                + coeffs.f3[k] * nc[k]
        })
        .collect())
}

/// One ETDRK4 step for a physical-space field; `nonlinear` is evaluated on
/// the grid nodes.
pub fn etdrk4_step<F>(grid: &FourierGrid, state: &[C], t: f64, coeffs: &EtdCoefficients, mut nonlinear: F) -> Result<Vec<C>>
where
    F: FnMut(&[C], f64) -> Vec<C>,
{
    if coeffs.len() != grid.len() {
        return Err(Error::GridMismatch(format!("{} coefficient modes for {} nodes", coeffs.len(), grid.len())));
    }
    let v_hat = grid.forward(state)?;
    let next = etdrk4_step_spectral(&v_hat, t, coeffs, |x_hat, ts| {
        let x = grid.inverse(x_hat)?;
        let nx = nonlinear(&x, ts);
        grid.forward(&nx)
    })?;
    grid.inverse(&next)
}
