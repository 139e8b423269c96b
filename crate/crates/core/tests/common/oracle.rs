//! Independent reference formulas used as test oracles.
//!
//! Everything here is closed-form or brute-force and shares no code path
//! with the solvers under test.

use num_complex::Complex64;

const I: Complex64 = Complex64::new(0.0, 1.0);

fn parts(x: f64, t: f64) -> (f64, Complex64, Complex64) {
    let d = 1.0 + 4.0 * x * x + 16.0 * t * t;
    let a = Complex64::new(1.0, 4.0 * t);
    let e = Complex64::from_polar(1.0, 2.0 * t);
    (d, a, e)
}

pub fn peregrine(x: f64, t: f64) -> Complex64 {
    let (d, a, e) = parts(x, t);
    (1.0 - 4.0 * a / d) * e
}

pub fn peregrine_dx(x: f64, t: f64) -> Complex64 {
    let (d, a, e) = parts(x, t);
    32.0 * x * a / (d * d) * e
}

pub fn peregrine_dxx(x: f64, t: f64) -> Complex64 {
    let (d, a, e) = parts(x, t);
    32.0 * a * (d - 16.0 * x * x) / (d * d * d) * e
}

pub fn peregrine_dxxx(x: f64, t: f64) -> Complex64 {
    let (d, a, e) = parts(x, t);
    -1536.0 * x * a * (d - 8.0 * x * x) / d.powi(4) * e
}

pub fn peregrine_dt(x: f64, t: f64) -> Complex64 {
    let (d, a, e) = parts(x, t);
    let g = 1.0 - 4.0 * a / d;
    let gt = -16.0 * I / d + 128.0 * t * a / (d * d);
    (gt + 2.0 * I * g) * e
}

pub fn peregrine_dxt(x: f64, t: f64) -> Complex64 {
    let (d, a, e) = parts(x, t);
    let gx = 32.0 * x * a / (d * d);
    let gxt = 32.0 * x * (4.0 * I / (d * d) - 64.0 * t * a / (d * d * d));
    (gxt + 2.0 * I * gx) * e
}

/// Adaptive Simpson quadrature on `[a, b]`.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    fn rec<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) + rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
        }
    }
    let (fa, fb, fm) = (f(a), f(b), f(0.5 * (a + b)));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    rec(f, a, b, fa, fm, fb, whole, tol, 48)
}

/// Integral over the whole real line via `x = tan θ`; `f` must decay at
/// least like `1/x²`.
pub fn integrate_real_line<F: Fn(f64) -> f64>(f: &F, tol: f64) -> f64 {
    let g = |theta: f64| {
        let c = theta.cos();
        if c.abs() < 1e-300 {
            return 0.0;
        }
        f(theta.tan()) / (c * c)
    };
    let h = std::f64::consts::FRAC_PI_2;
    // Split at zero so the peak region is resolved from both sides.
    adaptive_simpson(&g, -h + 1e-12, 0.0, tol) + adaptive_simpson(&g, 0.0, h - 1e-12, tol)
}

/// Free Schrödinger evolution `u_t = i u_xx` of `u(x,0) = A exp(-x²)`.
pub fn free_gaussian(x: f64, t: f64, amplitude: f64) -> Complex64 {
    let s = Complex64::new(1.0, 4.0 * t);
    amplitude / s.sqrt() * (-(x * x) / s).exp()
}
