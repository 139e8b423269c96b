use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::diagnostics::SpectralGrid;
use crate::{Error, Result};

/// Equispaced periodic grid on `[-L, L)` with `n` points, `n` a power of two.
///
/// Index `j` of a transform holds wavenumber `(π/L)·j` for `j < n/2` and
/// `(π/L)·(j − n)` otherwise.
#[derive(Clone)]
pub struct FourierGrid {
    half_length: f64,
    nodes: Vec<f64>,
    wavenumbers: Vec<f64>,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl fmt::Debug for FourierGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FourierGrid").field("half_length", &self.half_length).field("n", &self.len()).finish()
    }
}

impl PartialEq for FourierGrid {
    fn eq(&self, other: &Self) -> bool {
        self.half_length == other.half_length && self.len() == other.len()
    }
}

impl FourierGrid {
    pub fn new(half_length: f64, n: usize) -> Result<Self> {
        if !(half_length > 0.0) || !half_length.is_finite() {
            return Err(Error::InvalidParameter(format!("half length must be positive, got {half_length}")));
        }
        if n < 8 || !n.is_power_of_two() {
            return Err(Error::InvalidParameter(format!("point count must be a power of two >= 8, got {n}")));
        }
        let dx = 2.0 * half_length / n as f64;
        let nodes = (0..n).map(|j| -half_length + dx * j as f64).collect();
        let k0 = PI / half_length;
        let wavenumbers =
            (0..n).map(|j| if j < n / 2 { k0 * j as f64 } else { k0 * (j as f64 - n as f64) }).collect();
        let mut planner = FftPlanner::new();
        Ok(Self {
            half_length,
            nodes,
            wavenumbers,
            forward: planner.plan_fft_forward(n),
            inverse: planner.plan_fft_inverse(n),
        })
    }

    pub fn half_length(&self) -> f64 {
        self.half_length
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.half_length / self.len() as f64
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn wavenumbers(&self) -> &[f64] {
        &self.wavenumbers
    }

    pub fn sample<F: Fn(f64) -> Complex64>(&self, f: F) -> Vec<Complex64> {
        self.nodes.iter().map(|&x| f(x)).collect()
    }

    fn check(&self, len: usize) -> Result<()> {
        if len != self.len() {
            return Err(Error::LengthMismatch { expected: self.len(), got: len });
        }
        Ok(())
    }

    /// Unnormalised discrete Fourier transform.
    pub fn forward(&self, u: &[Complex64]) -> Result<Vec<Complex64>> {
        self.check(u.len())?;
        let mut buf = u.to_vec();
        self.forward.process(&mut buf);
        Ok(buf)
    }

    /// Inverse of [`forward`](Self::forward), including the `1/n` factor.
    pub fn inverse(&self, u_hat: &[Complex64]) -> Result<Vec<Complex64>> {
        self.check(u_hat.len())?;
        let mut buf = u_hat.to_vec();
        self.inverse.process(&mut buf);
        let s = 1.0 / self.len() as f64;
        buf.iter_mut().for_each(|z| *z *= s);
        Ok(buf)
    }

    /// `u_x` with the Nyquist mode dropped.
    pub fn spectral_dx(&self, u: &[Complex64]) -> Result<Vec<Complex64>> {
        let mut u_hat = self.forward(u)?;
        let nyquist = self.len() / 2;
        for (j, (z, &k)) in u_hat.iter_mut().zip(&self.wavenumbers).enumerate() {
            *z = if j == nyquist { Complex64::new(0.0, 0.0) } else { *z * Complex64::new(0.0, k) };
        }
        self.inverse(&u_hat)
    }

    pub fn spectral_dxx(&self, u: &[Complex64]) -> Result<Vec<Complex64>> {
        let mut u_hat = self.forward(u)?;
        for (z, &k) in u_hat.iter_mut().zip(&self.wavenumbers) {
            *z *= -k * k;
        }
        self.inverse(&u_hat)
    }

    /// Trapezoidal rule, spectrally accurate for smooth periodic integrands.
    pub fn integrate(&self, f: &[f64]) -> Result<f64> {
        self.check(f.len())?;
        Ok(self.spacing() * f.iter().sum::<f64>())
    }

    /// Trigonometric interpolant at `x`; the Nyquist mode is split evenly
    /// between `±k` so that real data interpolate to real values.
    pub fn interpolate(&self, u: &[Complex64], x: f64) -> Result<Complex64> {
        let u_hat = self.forward(u)?;
        Ok(self.interpolate_spectral(&u_hat, x))
    }

    /// [`interpolate`](Self::interpolate) from a precomputed transform.
    pub fn interpolate_spectral(&self, u_hat: &[Complex64], x: f64) -> Complex64 {
        let n = self.len();
        let y = x + self.half_length;
        let k0 = PI / self.half_length;
        let w = Complex64::from_polar(1.0, k0 * y);
        let mut sum = u_hat[0];
        let mut p = Complex64::new(1.0, 0.0);
        for m in 1..n / 2 {
            // Re-seed the phase now and then so rounding does not pile up.
            p = if m % 256 == 0 { Complex64::from_polar(1.0, k0 * m as f64 * y) } else { p * w };
            sum += u_hat[m] * p + u_hat[n - m] * p.conj();
        }
        sum += u_hat[n / 2] * (k0 * (n / 2) as f64 * y).cos();
        sum / n as f64
    }

    /// Normalised coefficient magnitudes `|û_k|/n` in order of increasing
    /// `|k|`, positive before negative.
    pub fn coefficient_magnitudes(&self, u: &[Complex64]) -> Result<Vec<f64>> {
        let u_hat = self.forward(u)?;
        let n = self.len();
        let scale = 1.0 / n as f64;
        let mut out = Vec::with_capacity(n);
        out.push(u_hat[0].norm() * scale);
        for j in 1..n / 2 {
            out.push(u_hat[j].norm() * scale);
            out.push(u_hat[n - j].norm() * scale);
        }
        out.push(u_hat[n / 2].norm() * scale);
        Ok(out)
    }

    /// Node index of `-x_j`; node 0 at `-L` maps to itself by periodicity.
    pub fn mirror(&self) -> Vec<usize> {
        let n = self.len();
        (0..n).map(|j| (n - j) % n).collect()
    }
}

impl SpectralGrid for FourierGrid {
    fn node_count(&self) -> usize {
        self.len()
    }

    fn node_coords(&self) -> Vec<f64> {
        self.nodes.clone()
    }

    fn derivative(&self, u: &[Complex64]) -> Result<Vec<Complex64>> {
        self.spectral_dx(u)
    }

    fn quadrature(&self, f: &[f64]) -> Result<f64> {
        self.integrate(f)
    }

    fn mirror_nodes(&self) -> Result<Vec<usize>> {
        Ok(self.mirror())
    }
}
