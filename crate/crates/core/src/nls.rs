//! Exact solutions, right-hand sides and the scaling symmetry of the focusing
//! NLS equation `i u_t + u_xx + 2|u|^2 u = 0`.

use num_complex::Complex64;

use crate::{Error, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// A point `(x, t)` in the dimensionless space-time plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpaceTimePoint {
    pub x: f64,
    pub t: f64,
}

impl SpaceTimePoint {
    pub fn new(x: f64, t: f64) -> Result<Self> {
        if !x.is_finite() || !t.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "space-time point must be finite, got ({x}, {t})"
            )));
        }
        Ok(Self { x, t })
    }
}

/// Complex samples of a field on a strictly increasing set of coordinates at
/// a single time.
///
/// Coordinates may include `-inf`/`+inf` for grids that contain the point at
/// infinity.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexField1D {
    coords: Vec<f64>,
    values: Vec<Complex64>,
    time: f64,
}

impl ComplexField1D {
    pub fn new(coords: Vec<f64>, values: Vec<Complex64>, time: f64) -> Result<Self> {
        check_increasing(&coords)?;
        if values.len() != coords.len() {
            return Err(Error::LengthMismatch { expected: coords.len(), got: values.len() });
        }
        Ok(Self { coords, values, time })
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    /// Same grid and time stamp, new values.
    pub fn with_values(&self, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != self.coords.len() {
            return Err(Error::LengthMismatch { expected: self.coords.len(), got: values.len() });
        }
        Ok(Self { coords: self.coords.clone(), values, time: self.time })
    }

    /// Real/imaginary split `v = a + i b`.
    ///
    /// The linearized equation contains `conj(v)` and is therefore only
    /// real-linear; solvers that assemble real operators work on this view.
    pub fn split(&self) -> (Vec<f64>, Vec<f64>) {
        self.values.iter().map(|z| (z.re, z.im)).unzip()
    }

    pub fn from_split(coords: Vec<f64>, re: &[f64], im: &[f64], time: f64) -> Result<Self> {
        if re.len() != im.len() {
            return Err(Error::LengthMismatch { expected: re.len(), got: im.len() });
        }
        let values = re.iter().zip(im).map(|(&a, &b)| Complex64::new(a, b)).collect();
        Self::new(coords, values, time)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    fn check_same_grid(&self, other: &Self) -> Result<()> {
        if self.coords.len() != other.coords.len() {
            return Err(Error::LengthMismatch { expected: self.coords.len(), got: other.coords.len() });
        }
        if self.coords != other.coords {
            return Err(Error::GridMismatch("fields are sampled on different coordinates".into()));
        }
        Ok(())
    }
}

fn check_increasing(coords: &[f64]) -> Result<()> {
    for (i, w) in coords.windows(2).enumerate() {
        // NaN fails the comparison as well.
        if !(w[1] > w[0]) {
            return Err(Error::NonIncreasingCoords(i + 1));
        }
    }
    if coords.iter().any(|c| c.is_nan()) {
        return Err(Error::NonIncreasingCoords(0));
    }
    Ok(())
}

/// Scaling parameter of the symmetry `u^σ(x,t) = σ u(σx, σ²t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalingParam(f64);

impl ScalingParam {
    pub fn new(sigma: f64) -> Result<Self> {
        if sigma == 0.0 || !sigma.is_finite() {
            return Err(Error::InvalidParameter(format!("scaling parameter must be finite and nonzero, got {sigma}")));
        }
        Ok(Self(sigma))
    }

    pub fn sigma(self) -> f64 {
        self.0
    }
}

/// Background level `κ` entering the modified energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticModulus(f64);

impl AsymptoticModulus {
    pub fn new(kappa: f64) -> Result<Self> {
        if !(kappa >= 0.0) || !kappa.is_finite() {
            return Err(Error::InvalidParameter(format!("kappa must be finite and nonnegative, got {kappa}")));
        }
        Ok(Self(kappa))
    }

    pub fn kappa(self) -> f64 {
        self.0
    }
}

impl Default for AsymptoticModulus {
    fn default() -> Self {
        Self(1.0)
    }
}

/// The Peregrine breather
/// `(1 - 4(1 + 4it)/(1 + 4x² + 16t²)) e^{2it}`.
///
/// Accepts `x = ±inf`, where it returns the background `e^{2it}`.
pub fn peregrine_at(x: f64, t: f64) -> Complex64 {
    let denom = 1.0 + 4.0 * x * x + 16.0 * t * t;
    let g = Complex64::new(1.0 - 4.0 / denom, -16.0 * t / denom);
    g * Complex64::from_polar(1.0, 2.0 * t)
}

pub fn peregrine(p: SpaceTimePoint) -> Complex64 {
    peregrine_at(p.x, p.t)
}

pub fn peregrine_field(coords: &[f64], t: f64) -> Result<ComplexField1D> {
    let values = coords.iter().map(|&x| peregrine_at(x, t)).collect();
    ComplexField1D::new(coords.to_vec(), values, t)
}

/// Applies the scaling symmetry to samples of `u` taken at time `t`: the
/// result holds samples of `u^σ` at time `t/σ²` on the coordinates `x/σ`.
pub fn scale_solution(field: &ComplexField1D, s: ScalingParam) -> ComplexField1D {
    let sigma = s.sigma();
    let mut pairs: Vec<(f64, Complex64)> = field
        .coords
        .iter()
        .zip(&field.values)
        .map(|(&x, &u)| (x / sigma, u * sigma))
        .collect();
    if sigma < 0.0 {
        pairs.reverse();
    }
    let (coords, values) = pairs.into_iter().unzip();
    ComplexField1D { coords, values, time: field.time / (sigma * sigma) }
}

/// Nonlinear part `2i|u|²u` of the NLS right-hand side.
#[inline]
pub fn cubic_term(u: Complex64) -> Complex64 {
    I * (2.0 * u.norm_sqr()) * u
}

/// Potential part `i(4|u_Per|² v + 2 u_Per² conj(v))` of the linearized
/// right-hand side.
#[inline]
pub fn linearized_potential_term(v: Complex64, uper: Complex64) -> Complex64 {
    I * (4.0 * uper.norm_sqr() * v + 2.0 * uper * uper * v.conj())
}

/// `u_t = i(u_xx + 2|u|²u)`.
pub fn nls_rhs(u: &ComplexField1D, uxx: &ComplexField1D) -> Result<ComplexField1D> {
    u.check_same_grid(uxx)?;
    let values = u.values.iter().zip(&uxx.values).map(|(&u, &uxx)| I * uxx + cubic_term(u)).collect();
    u.with_values(values)
}

/// `v_t = i(v_xx + 4|u_Per|²v + 2u_Per² conj(v))`.
pub fn linearized_rhs(v: &ComplexField1D, vxx: &ComplexField1D, uper: &ComplexField1D) -> Result<ComplexField1D> {
    v.check_same_grid(vxx)?;
    v.check_same_grid(uper)?;
    if v.time != uper.time {
        return Err(Error::TimeMismatch(v.time, uper.time));
    }
    let values = v
        .values
        .iter()
        .zip(&vxx.values)
        .zip(&uper.values)
        .map(|((&v, &vxx), &up)| I * vxx + linearized_potential_term(v, up))
        .collect();
    v.with_values(values)
}

/// Max-norm residual of the NLS equation for three snapshots at
/// `t - h, t, t + h`, using a centered time difference and the supplied
/// spatial second-derivative operator.
pub fn nls_residual<F>(snapshots: [&ComplexField1D; 3], dxx: F) -> Result<f64>
where
    F: Fn(&ComplexField1D) -> Result<Vec<Complex64>>,
{
    let [prev, cur, next] = snapshots;
    prev.check_same_grid(cur)?;
    cur.check_same_grid(next)?;
    let h = cur.time - prev.time;
    let h_next = next.time - cur.time;
    if !(h > 0.0) || !(h_next > 0.0) {
        return Err(Error::InvalidParameter(format!("snapshot times must increase, got steps {h} and {h_next}")));
    }
    if (h - h_next).abs() > 1e-9 * h.max(h_next) {
        return Err(Error::InvalidParameter(format!("snapshots must be equally spaced in time ({h} vs {h_next})")));
    }
    let uxx = dxx(cur)?;
    if uxx.len() != cur.len() {
        return Err(Error::LengthMismatch { expected: cur.len(), got: uxx.len() });
    }
    let half_inv = 0.5 / h;
    let residual = (0..cur.len())
        .map(|j| {
            let ut = (next.values[j] - prev.values[j]) * half_inv;
            let u = cur.values[j];
            (I * ut + uxx[j] + 2.0 * u.norm_sqr() * u).norm()
        })
        .fold(0.0, f64::max);
    Ok(residual)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn peregrine_peak_and_zero() {
        let p = peregrine(SpaceTimePoint::new(0.0, 0.0).unwrap());
        assert!((p - c(-3.0, 0.0)).norm() < 1e-15);
        assert!((p.norm() - 3.0).abs() < 1e-15);
        let z = peregrine_at(3f64.sqrt() / 2.0, 0.0);
        assert!(z.norm() < 1e-15);
    }

    #[test]
    fn peregrine_far_field_is_background() {
        let v = peregrine_at(1e6, 0.5);
        assert!((v - Complex64::from_polar(1.0, 1.0)).norm() < 1e-10);
        let inf = peregrine_at(f64::INFINITY, 0.3);
        assert!((inf - Complex64::from_polar(1.0, 0.6)).norm() < 1e-15);
    }

    #[test]
    fn field_matches_scalar_and_direct_substitution() {
        let f = peregrine_field(&[-1.0, 0.0, 1.0], 0.0).unwrap();
        let side = 1.0 - 4.0 / 5.0;
        assert!((f.values()[0] - c(side, 0.0)).norm() < 1e-15);
        assert!((f.values()[1] - c(-3.0, 0.0)).norm() < 1e-15);
        assert!((f.values()[2] - c(side, 0.0)).norm() < 1e-15);

        let t = 0.37;
        let g = peregrine_field(&[0.0], t).unwrap();
        assert_eq!(g.values()[0], peregrine_at(0.0, t));
        let expected = (c(1.0, 0.0) - c(4.0, 16.0 * t) / (1.0 + 16.0 * t * t)).norm();
        assert!((g.values()[0].norm() - expected).abs() < 1e-14);
    }

    #[test]
    fn field_rejects_non_increasing_coords() {
        assert!(matches!(peregrine_field(&[0.0, 0.0], 0.0), Err(Error::NonIncreasingCoords(1))));
        assert!(peregrine_field(&[1.0, -1.0], 0.0).is_err());
    }

    #[test]
    fn field_is_even_on_symmetric_grid() {
        let coords: Vec<f64> = (-20..=20).map(|j| j as f64 * 0.37).collect();
        for &t in &[-1.0, -0.2, 0.0, 0.7] {
            let f = peregrine_field(&coords, t).unwrap();
            let n = f.len();
            for j in 0..n {
                assert_eq!(f.values()[j], f.values()[n - 1 - j]);
            }
        }
    }

    #[test]
    fn scaling_identity_and_peak() {
        let coords: Vec<f64> = (-10..=10).map(|j| j as f64 * 0.5).collect();
        let f = peregrine_field(&coords, 0.0).unwrap();
        let same = scale_solution(&f, ScalingParam::new(1.0).unwrap());
        assert_eq!(same, f);
        let two = scale_solution(&f, ScalingParam::new(2.0).unwrap());
        assert!((two.values()[10] - c(-6.0, 0.0)).norm() < 1e-15);
        assert_eq!(two.coords()[10], 0.0);
        assert_eq!(two.coords()[20], 2.5);
    }

    #[test]
    fn scaling_group_property_and_negative_sigma() {
        let coords: Vec<f64> = (-8..=8).map(|j| j as f64 * 0.3 + 0.01).collect();
        let f = peregrine_field(&coords, 0.4).unwrap();
        for &s in &[3.0, -0.5, 1.7, -2.0] {
            let once = scale_solution(&f, ScalingParam::new(s).unwrap());
            assert!(once.coords().windows(2).all(|w| w[1] > w[0]));
            let back = scale_solution(&once, ScalingParam::new(1.0 / s).unwrap());
            assert_eq!(back.len(), f.len());
            for j in 0..f.len() {
                assert!((back.coords()[j] - f.coords()[j]).abs() < 1e-12);
                assert!((back.values()[j] - f.values()[j]).norm() < 1e-12);
            }
            assert!((back.time() - f.time()).abs() < 1e-12);
        }
    }

    #[test]
    fn scaled_peregrine_is_a_solution() {
        // u^σ(x, t) = σ u_Per(σx, σ²t) should satisfy the equation pointwise.
        let sigma = 1.3;
        let (x, t) = (0.4, 0.2);
        let u = sigma * peregrine_at(sigma * x, sigma * sigma * t);
        let ut = sigma.powi(3) * oracle::peregrine_dt(sigma * x, sigma * sigma * t);
        let uxx = sigma.powi(3) * oracle::peregrine_dxx(sigma * x, sigma * sigma * t);
        let res = I * ut + uxx + 2.0 * u.norm_sqr() * u;
        assert!(res.norm() < 1e-12, "residual {res}");
    }

    #[test]
    fn scaling_rejects_zero() {
        assert!(ScalingParam::new(0.0).is_err());
        assert!(ScalingParam::new(f64::NAN).is_err());
        assert!(AsymptoticModulus::new(-1.0).is_err());
    }

    #[test]
    fn rhs_of_constant_states() {
        let t0 = 0.3;
        let coords = vec![-1.0, 0.0, 1.0];
        let bg = Complex64::from_polar(1.0, 2.0 * t0);
        let u = ComplexField1D::new(coords.clone(), vec![bg; 3], t0).unwrap();
        let zero = u.with_values(vec![Complex64::new(0.0, 0.0); 3]).unwrap();
        let rhs = nls_rhs(&u, &zero).unwrap();
        for v in rhs.values() {
            assert!((v - 2.0 * I * bg).norm() < 1e-15);
        }
        let one = u.with_values(vec![c(1.0, 0.0); 3]).unwrap();
        let rhs = nls_rhs(&one, &zero).unwrap();
        assert!(rhs.values().iter().all(|v| (v - c(0.0, 2.0)).norm() < 1e-15));
    }

    #[test]
    fn rhs_reproduces_peregrine_time_derivative() {
        let coords: Vec<f64> = (-30..=30).map(|j| j as f64 * 0.2).collect();
        for &t in &[-0.8, 0.0, 0.45] {
            let u = peregrine_field(&coords, t).unwrap();
            let uxx = u.with_values(coords.iter().map(|&x| oracle::peregrine_dxx(x, t)).collect()).unwrap();
            let rhs = nls_rhs(&u, &uxx).unwrap();
            for (j, &x) in coords.iter().enumerate() {
                assert!((rhs.values()[j] - oracle::peregrine_dt(x, t)).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn rhs_rejects_grid_mismatch() {
        let a = ComplexField1D::new(vec![0.0, 1.0], vec![c(1.0, 0.0); 2], 0.0).unwrap();
        let b = ComplexField1D::new(vec![0.0, 2.0], vec![c(1.0, 0.0); 2], 0.0).unwrap();
        assert!(nls_rhs(&a, &b).is_err());
        let shifted = ComplexField1D::new(vec![0.0, 1.0], vec![c(1.0, 0.0); 2], 0.5).unwrap();
        assert!(matches!(linearized_rhs(&a, &a, &shifted), Err(Error::TimeMismatch(..))));
    }

    #[test]
    fn linearized_rhs_of_zero_and_translation_mode() {
        let coords: Vec<f64> = (-25..=25).map(|j| j as f64 * 0.3).collect();
        let t = 0.25;
        let up = peregrine_field(&coords, t).unwrap();
        let zero = up.with_values(vec![c(0.0, 0.0); coords.len()]).unwrap();
        let r = linearized_rhs(&zero, &zero, &up).unwrap();
        assert!(r.values().iter().all(|z| z.norm() == 0.0));

        // v = ∂x u_Per solves the linearized equation.
        let v = up.with_values(coords.iter().map(|&x| oracle::peregrine_dx(x, t)).collect()).unwrap();
        let vxx = up.with_values(coords.iter().map(|&x| oracle::peregrine_dxxx(x, t)).collect()).unwrap();
        let r = linearized_rhs(&v, &vxx, &up).unwrap();
        for (j, &x) in coords.iter().enumerate() {
            let expected = oracle::peregrine_dxt(x, t);
            assert!((r.values()[j] - expected).norm() < 1e-8, "x={x}: {} vs {expected}", r.values()[j]);
        }
    }

    #[test]
    fn linearized_rhs_far_field_reduction() {
        let t = 0.6;
        let coords = vec![f64::NEG_INFINITY, 1e8];
        let up = peregrine_field(&coords, t).unwrap();
        let v = up.with_values(vec![c(0.3, -0.2), c(-0.1, 0.4)]).unwrap();
        let vxx = up.with_values(vec![c(0.05, 0.0), c(0.0, 0.02)]).unwrap();
        let r = linearized_rhs(&v, &vxx, &up).unwrap();
        let e4 = Complex64::from_polar(1.0, 4.0 * t);
        for j in 0..2 {
            let (vj, vxxj) = (v.values()[j], vxx.values()[j]);
            let expected = I * (vxxj + 4.0 * vj + 2.0 * e4 * vj.conj());
            assert!((r.values()[j] - expected).norm() < 1e-12);
        }
    }

    #[test]
    fn linearized_rhs_is_only_real_linear() {
        let coords: Vec<f64> = (-5..=5).map(|j| j as f64 * 0.4).collect();
        let up = peregrine_field(&coords, 0.1).unwrap();
        let v = up.with_values(coords.iter().map(|&x| c((-x * x).exp(), 0.3 * x)).collect()).unwrap();
        let zero = up.with_values(vec![c(0.0, 0.0); coords.len()]).unwrap();
        let iv = up.with_values(v.values().iter().map(|z| I * z).collect()).unwrap();
        let r = linearized_rhs(&v, &zero, &up).unwrap();
        let ri = linearized_rhs(&iv, &zero, &up).unwrap();
        let diff = r.values().iter().zip(ri.values()).map(|(a, b)| (I * a - b).norm()).fold(0.0, f64::max);
        assert!(diff > 1e-3);
        // real-linearity
        let two = up.with_values(v.values().iter().map(|z| 2.5 * z).collect()).unwrap();
        let r2 = linearized_rhs(&two, &zero, &up).unwrap();
        for (a, b) in r.values().iter().zip(r2.values()) {
            assert!((2.5 * a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn residual_of_constant_one_is_two() {
        let coords = vec![-1.0, 0.0, 1.0];
        let snaps: Vec<ComplexField1D> = [0.0, 0.1, 0.2]
            .iter()
            .map(|&t| ComplexField1D::new(coords.clone(), vec![c(1.0, 0.0); 3], t).unwrap())
            .collect();
        let r = nls_residual([&snaps[0], &snaps[1], &snaps[2]], |f| Ok(vec![c(0.0, 0.0); f.len()])).unwrap();
        assert!((r - 2.0).abs() < 1e-14);
    }

    #[test]
    fn residual_rejects_bad_steps() {
        let coords = vec![0.0, 1.0];
        let mk = |t: f64| ComplexField1D::new(coords.clone(), vec![c(1.0, 0.0); 2], t).unwrap();
        let (a, b) = (mk(0.0), mk(0.0));
        assert!(nls_residual([&a, &b, &b], |f| Ok(vec![c(0.0, 0.0); f.len()])).is_err());
        let (a, b, d) = (mk(0.0), mk(0.1), mk(0.3));
        assert!(nls_residual([&a, &b, &d], |f| Ok(vec![c(0.0, 0.0); f.len()])).is_err());
    }

    #[test]
    fn split_round_trip() {
        let f = ComplexField1D::new(vec![0.0, 1.0], vec![c(1.0, 2.0), c(-3.0, 0.5)], 0.0).unwrap();
        let (a, b) = f.split();
        let g = ComplexField1D::from_split(f.coords().to_vec(), &a, &b, 0.0).unwrap();
        assert_eq!(f, g);
    }
}
