//! Essential and absolute spectrum of the linearization about the
//! constant-modulus background `e^{2it}`.
//!
//! Writing the perturbation as `α + iβ`, the constant-coefficient system
//! `α_t + β_xx = 0`, `β_t − α_xx − 4α = 0` has the dispersion relation
//! `D(λ, ν) = λ² + ν²(ν² + 4)` for modes `e^{λt + νx}`. The essential
//! spectrum is `iℝ ∪ [−2, 2]`; the absolute spectrum is located by comparing
//! the real parts of the two "middle" spatial roots.

use std::io::Write;

use num_complex::Complex64;

use crate::{Error, Result};

/// Roots with `|Re ν|` below this are treated as purely imaginary.
const ZERO_RE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DispersionPoint {
    pub lambda: Complex64,
    pub nu: Complex64,
}

/// The four spatial roots `ν` of `D(λ, ν) = 0` for one `λ`, sorted by real
/// part and then imaginary part.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootQuadruple {
    pub lambda: Complex64,
    pub roots: [Complex64; 4],
}

impl RootQuadruple {
    /// `ν₂⁺`: the root of the right-hand pair closest to the imaginary axis.
    pub fn nu2_plus(&self) -> Complex64 {
        self.roots[2]
    }

    /// `ν₂⁻`: the root of the left-hand pair closest to the imaginary axis.
    pub fn nu2_minus(&self) -> Complex64 {
        self.roots[1]
    }

    pub fn count_positive_re(&self) -> usize {
        self.roots.iter().filter(|r| r.re > ZERO_RE).count()
    }

    pub fn count_negative_re(&self) -> usize {
        self.roots.iter().filter(|r| r.re < -ZERO_RE).count()
    }
}

pub fn dispersion(p: DispersionPoint) -> Complex64 {
    let nu2 = p.nu * p.nu;
    p.lambda * p.lambda + nu2 * (nu2 + 4.0)
}

fn dispersion_dnu(nu: Complex64) -> Complex64 {
    4.0 * nu * nu * nu + 8.0 * nu
}

/// Solves the biquadratic `ν⁴ + 4ν² + λ² = 0` through
/// `ν² = −2 ± √(4 − λ²)`, then applies one Newton correction per root.
pub fn dispersion_roots(lambda: Complex64) -> RootQuadruple {
    let w = (Complex64::new(4.0, 0.0) - lambda * lambda).sqrt();
    let squares = [Complex64::new(-2.0, 0.0) + w, Complex64::new(-2.0, 0.0) - w];
    let mut roots = [Complex64::new(0.0, 0.0); 4];
    for (k, sq) in squares.iter().enumerate() {
        let r = sq.sqrt();
        roots[2 * k] = r;
        roots[2 * k + 1] = -r;
    }
    for r in roots.iter_mut() {
        *r = polish(lambda, *r);
        if r.re.abs() <= ZERO_RE * r.norm().max(1.0) {
            r.re = 0.0;
        }
        if r.im.abs() <= ZERO_RE * r.norm().max(1.0) {
            r.im = 0.0;
        }
    }
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    RootQuadruple { lambda, roots }
}

fn polish(lambda: Complex64, nu: Complex64) -> Complex64 {
    let d = dispersion(DispersionPoint { lambda, nu });
    let dd = dispersion_dnu(nu);
    if dd.norm() <= 1e-14 * (1.0 + nu.norm()) {
        return nu;
    }
    let candidate = nu - d / dd;
    let dc = dispersion(DispersionPoint { lambda, nu: candidate });
    if dc.norm() < d.norm() {
        candidate
    } else {
        nu
    }
}

/// The pair `λ = ±√(k²(4 − k²))` lying on the essential spectrum, real for
/// `|k| ≤ 2` and purely imaginary otherwise.
pub fn essential_spectrum_curve(k: f64) -> (Complex64, Complex64) {
    let s = k * k * (4.0 - k * k);
    if s >= 0.0 {
        let r = s.sqrt();
        (Complex64::new(r, 0.0), Complex64::new(-r, 0.0))
    } else {
        let r = (-s).sqrt();
        (Complex64::new(0.0, r), Complex64::new(0.0, -r))
    }
}

fn check_tol(tol: f64) -> Result<()> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!("tolerance must be positive, got {tol}")));
    }
    Ok(())
}

/// Distance from `λ` to `iℝ ∪ [−2, 2]`.
pub fn distance_to_essential_spectrum(lambda: Complex64) -> f64 {
    let to_axis = lambda.re.abs();
    let clamped = lambda.re.clamp(-2.0, 2.0);
    let to_segment = Complex64::new(lambda.re - clamped, lambda.im).norm();
    to_axis.min(to_segment)
}

pub fn in_essential_spectrum(lambda: Complex64, tol: f64) -> Result<bool> {
    check_tol(tol)?;
    Ok(distance_to_essential_spectrum(lambda) <= tol)
}

/// `|Re ν₂⁺(λ) − Re ν₂⁻(λ)| ≤ tol`.
pub fn in_absolute_spectrum(lambda: Complex64, tol: f64) -> Result<bool> {
    check_tol(tol)?;
    let q = dispersion_roots(lambda);
    Ok((q.nu2_plus().re - q.nu2_minus().re).abs() <= tol)
}

/// Rectangle `[re_min, re_max] × [im_min, im_max]` in the λ-plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Region {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl Region {
    pub fn new(re_min: f64, re_max: f64, im_min: f64, im_max: f64) -> Result<Self> {
        let r = Self { re_min, re_max, im_min, im_max };
        if ![re_min, re_max, im_min, im_max].iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidParameter("region bounds must be finite".into()));
        }
        if re_max < re_min || im_max < im_min {
            return Err(Error::InvalidParameter(format!("region has negative extent: {r:?}")));
        }
        Ok(r)
    }
}

/// A rectangular scan of the λ-plane and the points found in the absolute
/// spectrum.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumScan {
    pub region: Region,
    pub resolution: usize,
    pub tolerance: f64,
    pub hits: Vec<Complex64>,
}

impl SpectrumScan {
    /// Scan with the default tolerance of `1e-6` times the grid spacing.
    pub fn new(region: Region, resolution: usize) -> Result<Self> {
        if resolution < 2 {
            return Err(Error::InvalidParameter(format!("resolution must be at least 2, got {resolution}")));
        }
        let steps = (resolution - 1) as f64;
        let spacing = ((region.re_max - region.re_min) / steps).max((region.im_max - region.im_min) / steps);
        let tolerance = if spacing > 0.0 { 1e-6 * spacing } else { 1e-12 };
        Ok(Self { region, resolution, tolerance, hits: Vec::new() })
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Result<Self> {
        check_tol(tolerance)?;
        self.tolerance = tolerance;
        Ok(self)
    }

    /// Grid points in row-major order (imaginary part outer, real part inner).
    pub fn grid_points(&self) -> Vec<Complex64> {
        let n = self.resolution;
        let steps = (n - 1) as f64;
        let r = self.region;
        let mut pts = Vec::with_capacity(n * n);
        for j in 0..n {
            let im = r.im_min + (r.im_max - r.im_min) * j as f64 / steps;
            for i in 0..n {
                let re = r.re_min + (r.re_max - r.re_min) * i as f64 / steps;
                pts.push(Complex64::new(re, im));
            }
        }
        // A degenerate axis repeats points.
        if r.re_min == r.re_max || r.im_min == r.im_max {
            pts.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
            pts.dedup();
        }
        pts
    }

    /// Writes `re_lambda,im_lambda,in_essential,in_absolute` for every grid
    /// point.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "re_lambda,im_lambda,in_essential,in_absolute")?;
        for p in self.grid_points() {
            let ess = in_essential_spectrum(p, self.tolerance)?;
            let abs = in_absolute_spectrum(p, self.tolerance)?;
            writeln!(out, "{:.16e},{:.16e},{},{}", p.re, p.im, ess, abs)?;
        }
        Ok(())
    }
}

/// Evaluates the absolute-spectrum test at every grid point of `scan`.
pub fn absolute_spectrum_scan(scan: &SpectrumScan) -> Result<SpectrumScan> {
    let tol = scan.tolerance;
    check_tol(tol)?;
    let hits = scan
        .grid_points()
        .into_iter()
        .map(|p| in_absolute_spectrum(p, tol).map(|hit| (p, hit)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter_map(|(p, hit)| hit.then_some(p))
        .collect();
    Ok(SpectrumScan { hits, ..scan.clone() })
}

/// Largest real part on the essential spectrum and the wavenumber attaining
/// it: `max_k k√(4 − k²) = 2` at `k = √2`.
pub fn max_growth_rate() -> (f64, f64) {
    (2.0, std::f64::consts::SQRT_2)
}
