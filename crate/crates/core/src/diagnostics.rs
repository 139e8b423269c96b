//! Conserved quantities, drift indicators and resolution monitors shared by
//! the Fourier and Chebyshev solvers.

use std::io::Write;

use num_complex::Complex64;

use crate::nls::{peregrine_at, AsymptoticModulus};
use crate::{Error, Result};

/// Coefficient floor above which a run is flagged as under-resolved.
pub const RESOLUTION_ALARM: f64 = 1e-3;

/// Initial energies at or below this magnitude make the relative drift
/// undefined (the unperturbed breather has zero energy).
pub const ENERGY_ZERO_TOL: f64 = 1e-9;

/// Number of coefficient-floor columns in the diagnostics table.
pub const FLOOR_COLUMNS: usize = 4;

/// A spatial discretization with spectral differentiation, quadrature and a
/// mirror pairing of its nodes.
pub trait SpectralGrid {
    fn node_count(&self) -> usize;

    /// Node coordinates in storage order.
    fn node_coords(&self) -> Vec<f64>;

    /// First derivative in `x`.
    fn derivative(&self, u: &[Complex64]) -> Result<Vec<Complex64>>;

    /// `∫ f dx` over the grid.
    fn quadrature(&self, f: &[f64]) -> Result<f64>;

    /// Storage index of the node at `-x` for every node.
    fn mirror_nodes(&self) -> Result<Vec<usize>>;
}

fn check_len<G: SpectralGrid + ?Sized>(grid: &G, len: usize) -> Result<()> {
    if len != grid.node_count() {
        return Err(Error::LengthMismatch { expected: grid.node_count(), got: len });
    }
    Ok(())
}

/// Modified energy `½∫(|u_x|² − |u|²(|u|² − κ)) dx`.
pub fn energy<G: SpectralGrid + ?Sized>(u: &[Complex64], grid: &G, kappa: AsymptoticModulus) -> Result<f64> {
    check_len(grid, u.len())?;
    let ux = grid.derivative(u)?;
    let k = kappa.kappa();
    let f: Vec<f64> = u
        .iter()
        .zip(&ux)
        .map(|(u, ux)| {
            let m = u.norm_sqr();
            ux.norm_sqr() - m * (m - k)
        })
        .collect();
    Ok(0.5 * grid.quadrature(&f)?)
}

/// Energy `½∫(ε²|u_x|² − |u|⁴) dx` of the semiclassically scaled equation.
pub fn semiclassical_energy<G: SpectralGrid + ?Sized>(u: &[Complex64], grid: &G, epsilon: f64) -> Result<f64> {
    check_len(grid, u.len())?;
    let ux = grid.derivative(u)?;
    let e2 = epsilon * epsilon;
    let f: Vec<f64> = u.iter().zip(&ux).map(|(u, ux)| e2 * ux.norm_sqr() - u.norm_sqr().powi(2)).collect();
    Ok(0.5 * grid.quadrature(&f)?)
}

/// `1 − E/E₀`.
pub fn delta_e(e0: f64, e_now: f64) -> Result<f64> {
    if e0.abs() <= ENERGY_ZERO_TOL || !e0.is_finite() {
        return Err(Error::Undefined(format!("relative energy drift needs a nonzero initial energy, got {e0}")));
    }
    Ok(1.0 - e_now / e0)
}

/// `∫ 2 Re(conj(u_Per) v) dx`, conserved by the linearized equation.
pub fn mass<G: SpectralGrid + ?Sized>(v: &[Complex64], uper: &[Complex64], grid: &G) -> Result<f64> {
    check_len(grid, v.len())?;
    check_len(grid, uper.len())?;
    let f: Vec<f64> = v.iter().zip(uper).map(|(v, up)| 2.0 * (up.conj() * v).re).collect();
    grid.quadrature(&f)
}

/// Pointwise `|u(x) − u_Per(x, t)|` and its maximum.
pub fn diff_to_peregrine(values: &[Complex64], coords: &[f64], t: f64) -> Result<(Vec<f64>, f64)> {
    if values.len() != coords.len() {
        return Err(Error::LengthMismatch { expected: coords.len(), got: values.len() });
    }
    let d: Vec<f64> = values.iter().zip(coords).map(|(u, &x)| (u - peregrine_at(x, t)).norm()).collect();
    let max = d.iter().copied().fold(0.0, f64::max);
    Ok((d, max))
}

/// `max |u(x) − u(−x)|` over mirrored node pairs.
pub fn parity_error<G: SpectralGrid + ?Sized>(u: &[Complex64], grid: &G) -> Result<f64> {
    check_len(grid, u.len())?;
    let mirror = grid.mirror_nodes()?;
    Ok(mirror.iter().enumerate().map(|(i, &j)| (u[i] - u[j]).norm()).fold(0.0, f64::max))
}

/// Median magnitude of the trailing tenth of a coefficient vector relative to
/// `scale`, or to its own largest magnitude if that is bigger. Pass the
/// largest coefficient over all domains so that a domain holding almost
/// nothing does not report its rounding noise as a floor of order one.
pub fn coefficient_floor(coeffs: &[f64], scale: f64) -> f64 {
    if coeffs.is_empty() {
        return f64::NAN;
    }
    let peak = coeffs.iter().copied().fold(scale.max(0.0), f64::max);
    if peak == 0.0 {
        return 0.0;
    }
    let count = ((coeffs.len() as f64) * 0.1).ceil().max(1.0) as usize;
    let mut tail: Vec<f64> = coeffs[coeffs.len() - count..].to_vec();
    tail.sort_by(f64::total_cmp);
    let mid = tail.len() / 2;
    let median = if tail.len() % 2 == 1 { tail[mid] } else { 0.5 * (tail[mid - 1] + tail[mid]) };
    median / peak
}

/// One row of the diagnostics table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiagnosticsRow {
    pub t: f64,
    pub energy: f64,
    pub mass: f64,
    pub max_amplitude: f64,
    pub max_diff: f64,
    pub parity_error: f64,
    pub floors: [f64; FLOOR_COLUMNS],
}

/// Time series of diagnostics, one entry per snapshot. Quantities that do
/// not apply to a run are `NaN`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct DiagnosticsRecord {
    pub times: Vec<f64>,
    pub energy: Vec<f64>,
    pub delta_e: Vec<f64>,
    pub mass: Vec<f64>,
    pub max_amplitude: Vec<f64>,
    pub max_diff_to_peregrine: Vec<f64>,
    pub parity_error: Vec<f64>,
    pub coefficient_floor: Vec<[f64; FLOOR_COLUMNS]>,
}

impl DiagnosticsRecord {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// `1 − E/E(t₀)` against the first recorded energy.
    pub fn delta_e(&self, e_now: f64) -> Result<f64> {
        match self.energy.first() {
            Some(&e0) => delta_e(e0, e_now),
            None => Err(Error::Undefined("no initial energy recorded".into())),
        }
    }

    /// Appends a row; the first row defines `E(t₀)`. `ΔE` is `NaN` when the
    /// initial energy is zero or unavailable.
    pub fn push(&mut self, row: DiagnosticsRow) {
        let de = if self.is_empty() {
            if row.energy.is_finite() && row.energy.abs() > ENERGY_ZERO_TOL {
                0.0
            } else {
                f64::NAN
            }
        } else {
            self.delta_e(row.energy).unwrap_or(f64::NAN)
        };
        self.times.push(row.t);
        self.energy.push(row.energy);
        self.delta_e.push(de);
        self.mass.push(row.mass);
        self.max_amplitude.push(row.max_amplitude);
        self.max_diff_to_peregrine.push(row.max_diff);
        self.parity_error.push(row.parity_error);
        self.coefficient_floor.push(row.floors);
    }

    /// Largest `|1 − M/M(t₀)|` over the recorded rows.
    pub fn max_mass_drift(&self) -> f64 {
        match self.mass.first() {
            Some(&m0) if m0 != 0.0 && m0.is_finite() => {
                self.mass.iter().map(|m| (1.0 - m / m0).abs()).fold(0.0, f64::max)
            }
            _ => f64::NAN,
        }
    }

    pub fn max_abs_delta_e(&self) -> f64 {
        if self.delta_e.iter().all(|v| v.is_nan()) {
            return f64::NAN;
        }
        self.delta_e.iter().filter(|v| !v.is_nan()).map(|v| v.abs()).fold(0.0, f64::max)
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "t,E,delta_E,M,max_u,max_diff,parity_err,floor_I,floor_II,floor_III,floor_IV")?;
        for i in 0..self.len() {
            let mut cells = vec![
                self.times[i],
                self.energy[i],
                self.delta_e[i],
                self.mass[i],
                self.max_amplitude[i],
                self.max_diff_to_peregrine[i],
                self.parity_error[i],
            ];
            cells.extend_from_slice(&self.coefficient_floor[i]);
            let line: Vec<String> = cells.iter().map(|v| format_f64(*v)).collect();
            writeln!(out, "{}", line.join(","))?;
        }
        Ok(())
    }
}

/// Full-precision CSV cell: 17 significant digits, `NaN`, `inf`, `-inf`.
pub fn format_f64(v: f64) -> String {
    if v.is_nan() {
        "NaN".to_string()
    } else if v.is_infinite() {
        if v > 0.0 { "inf" } else { "-inf" }.to_string()
    } else {
        format!("{v:.16e}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Trapezoid rule on an equispaced grid with finite-difference slopes;
    /// enough to exercise the functionals.
    struct Uniform {
        x: Vec<f64>,
    }

    impl SpectralGrid for Uniform {
        fn node_count(&self) -> usize {
            self.x.len()
        }
        fn node_coords(&self) -> Vec<f64> {
            self.x.clone()
        }
        fn derivative(&self, u: &[Complex64]) -> Result<Vec<Complex64>> {
            let h = self.x[1] - self.x[0];
            let n = u.len();
            Ok((0..n)
                .map(|i| {
                    let (a, b) = (i.saturating_sub(1), (i + 1).min(n - 1));
                    (u[b] - u[a]) / (h * (b - a) as f64)
                })
                .collect())
        }
        fn quadrature(&self, f: &[f64]) -> Result<f64> {
            let h = self.x[1] - self.x[0];
            Ok(h * (f.iter().sum::<f64>() - 0.5 * (f[0] + f[f.len() - 1])))
        }
        fn mirror_nodes(&self) -> Result<Vec<usize>> {
            let n = self.x.len();
            Ok((0..n).map(|i| n - 1 - i).collect())
        }
    }

    fn grid() -> Uniform {
        Uniform { x: (0..=400).map(|i| -10.0 + 0.05 * i as f64).collect() }
    }

    #[test]
    fn energy_of_unit_background_vanishes() {
        let g = grid();
        let u = vec![Complex64::new(1.0, 0.0); g.node_count()];
        assert_eq!(energy(&u, &g, AsymptoticModulus::default()).unwrap(), 0.0);
    }

    #[test]
    fn energy_density_of_scaled_constant() {
        let g = Uniform { x: (0..=10).map(|i| i as f64 * 0.1).collect() };
        let u = vec![Complex64::new(1.1, 0.0); 11];
        let e = energy(&u, &g, AsymptoticModulus::default()).unwrap();
        assert!((e - 0.5 * (-1.21 * 0.21)).abs() < 1e-14);
    }

    #[test]
    fn energy_is_phase_invariant() {
        let g = grid();
        let u: Vec<Complex64> = g.x.iter().map(|&x| peregrine_at(x, 0.2)).collect();
        let e = energy(&u, &g, AsymptoticModulus::default()).unwrap();
        let rot = Complex64::from_polar(1.0, 0.7);
        let ur: Vec<Complex64> = u.iter().map(|z| z * rot).collect();
        assert!((energy(&ur, &g, AsymptoticModulus::default()).unwrap() - e).abs() < 1e-12);
    }

    #[test]
    fn delta_e_values() {
        assert_eq!(delta_e(2.0, 2.0).unwrap(), 0.0);
        assert!((delta_e(3.0, 0.99 * 3.0).unwrap() - 0.01).abs() < 1e-15);
        assert!(matches!(delta_e(0.0, 1.0), Err(Error::Undefined(_))));
    }

    #[test]
    fn mass_examples() {
        let g = grid();
        let up: Vec<Complex64> = g.x.iter().map(|&x| peregrine_at(x, 0.0)).collect();
        let iv: Vec<Complex64> = up.iter().map(|z| z * Complex64::new(0.0, 1.0)).collect();
        assert!(mass(&iv, &up, &g).unwrap().abs() < 1e-14);
        let zero = vec![Complex64::new(0.0, 0.0); g.node_count()];
        assert_eq!(mass(&zero, &up, &g).unwrap(), 0.0);
    }

    #[test]
    fn diff_to_peregrine_examples() {
        let x: Vec<f64> = (-20..=20).map(|i| i as f64 * 0.5).collect();
        let up: Vec<Complex64> = x.iter().map(|&x| peregrine_at(x, 0.0)).collect();
        assert_eq!(diff_to_peregrine(&up, &x, 0.0).unwrap().1, 0.0);
        let scaled: Vec<Complex64> = up.iter().map(|z| z * 1.1).collect();
        let (d, m) = diff_to_peregrine(&scaled, &x, 0.0).unwrap();
        assert!((m - 0.3).abs() < 1e-14);
        for (di, u) in d.iter().zip(&up) {
            assert!((di - 0.1 * u.norm()).abs() < 1e-14);
        }
        let gauss: Vec<Complex64> = x.iter().map(|&x| peregrine_at(x, 0.0) + 0.1 * (-x * x).exp()).collect();
        assert!((diff_to_peregrine(&gauss, &x, 0.0).unwrap().1 - 0.1).abs() < 1e-15);
    }

    #[test]
    fn parity_of_even_and_perturbed_fields() {
        let g = grid();
        let even: Vec<Complex64> = g.x.iter().map(|&x| peregrine_at(x, 0.4)).collect();
        assert!(parity_error(&even, &g).unwrap() < 1e-14);
        let eps = 1e-3;
        let odd: Vec<Complex64> = g.x.iter().map(|&x| peregrine_at(x, 0.4) + eps * (x / (1.0 + x * x))).collect();
        let max_odd = g.x.iter().map(|&x| (x / (1.0 + x * x)).abs()).fold(0.0, f64::max);
        assert!((parity_error(&odd, &g).unwrap() - 2.0 * eps * max_odd).abs() < 1e-6);
    }

    #[test]
    fn coefficient_floor_examples() {
        let mut c = vec![0.0; 50];
        c[0] = 1.0;
        c[3] = 0.5;
        assert!(coefficient_floor(&c, 0.0) <= 1e-14);
        let noise: Vec<f64> = (0..100).map(|i| 0.5 + 0.5 * ((i * 7919) % 13) as f64 / 13.0).collect();
        assert!(coefficient_floor(&noise, 0.0) > RESOLUTION_ALARM);
    }

    #[test]
    fn record_starts_with_zero_drift() {
        let mut r = DiagnosticsRecord::new();
        let row = DiagnosticsRow {
            t: 0.0,
            energy: 2.0,
            mass: 1.0,
            max_amplitude: 3.0,
            max_diff: 0.0,
            parity_error: 0.0,
            floors: [1e-15, f64::NAN, f64::NAN, f64::NAN],
        };
        r.push(row);
        r.push(DiagnosticsRow { t: 0.1, energy: 1.98, ..row });
        assert_eq!(r.delta_e[0], 0.0);
        assert!((r.delta_e[1] - 0.01).abs() < 1e-14);
        let mut buf = Vec::new();
        r.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("t,E,delta_E,M,max_u,max_diff,parity_err,floor_I,floor_II,floor_III,floor_IV\n"));
        assert_eq!(text.lines().count(), 3);
        assert!(text.contains("NaN"));
    }
}
