//! Exact breather, scaling symmetry and right-hand sides against closed-form
//! oracles.

#[path = "common/oracle.rs"]
#[allow(dead_code)]
mod oracle;

use peregrine::cheb::{LayoutSpec, MultiDomainGrid};
use peregrine::diagnostics::energy;
use peregrine::nls::{
    linearized_rhs, nls_rhs, peregrine_at, peregrine_field, scale_solution, AsymptoticModulus, ComplexField1D,
    ScalingParam,
};
use peregrine::{Complex64, Error};
use proptest::prelude::*;

const I: Complex64 = Complex64::new(0.0, 1.0);

fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * (1.0 + b.norm())
}

proptest! {
    #[test]
    fn breather_matches_oracle(x in -50.0..50.0f64, t in -5.0..5.0f64) {
        prop_assert!(close(peregrine_at(x, t), oracle::peregrine(x, t), 1e-14));
    }

    #[test]
    fn breather_solves_nls(x in -30.0..30.0f64, t in -3.0..3.0f64) {
        let u = oracle::peregrine(x, t);
        let r = I * oracle::peregrine_dt(x, t) + oracle::peregrine_dxx(x, t) + 2.0 * u.norm_sqr() * u;
        prop_assert!(r.norm() < 1e-12, "residual {}", r.norm());
    }

    #[test]
    fn breather_is_even_and_bounded(x in -100.0..100.0f64, t in -10.0..10.0f64) {
        prop_assert_eq!(peregrine_at(x, t), peregrine_at(-x, t));
        prop_assert!(peregrine_at(x, t).norm() <= 3.0 + 1e-14);
    }

    #[test]
    fn background_at_infinity(t in -10.0..10.0f64) {
        let bg = Complex64::from_polar(1.0, 2.0 * t);
        prop_assert!(close(peregrine_at(f64::INFINITY, t), bg, 1e-15));
        prop_assert!(close(peregrine_at(f64::NEG_INFINITY, t), bg, 1e-15));
    }

    /// σ u(σx, σ²t) evaluated through `scale_solution` is again a sample of
    /// the scaled breather.
    #[test]
    fn scaling_maps_samples(sigma in prop_oneof![-2.0..-0.2f64, 0.2..2.0f64], t in -1.0..1.0f64) {
        let xs: Vec<f64> = (0..41).map(|j| -10.0 + 0.5 * j as f64).collect();
        let f = peregrine_field(&xs, t).unwrap();
        let s = scale_solution(&f, ScalingParam::new(sigma).unwrap());
        prop_assert!((s.time() - t / (sigma * sigma)).abs() < 1e-14);
        for (&y, &v) in s.coords().iter().zip(s.values()) {
            prop_assert!(close(v, sigma * peregrine_at(sigma * y, sigma * sigma * s.time()), 1e-12));
        }
        prop_assert!(s.coords().windows(2).all(|w| w[1] > w[0]));
    }

    /// The linearized right-hand side is the derivative of the NLS one.
    #[test]
    fn linearization_is_the_derivative(x in -5.0..5.0f64, t in -1.0..1.0f64, a in -1.0..1.0f64, b in -1.0..1.0f64) {
        let xs = vec![x];
        let u = peregrine_field(&xs, t).unwrap();
        let v = ComplexField1D::new(xs.clone(), vec![Complex64::new(a, b)], t).unwrap();
        let zero = ComplexField1D::new(xs.clone(), vec![Complex64::new(0.0, 0.0)], t).unwrap();
        let d = 1e-6;
        let pert = u.with_values(vec![u.values()[0] + d * v.values()[0]]).unwrap();
        let fd = (nls_rhs(&pert, &zero).unwrap().values()[0] - nls_rhs(&u, &zero).unwrap().values()[0]) / d;
        let lin = linearized_rhs(&v, &zero, &u).unwrap().values()[0];
        prop_assert!((fd - lin).norm() < 1e-4 * (1.0 + lin.norm()), "{fd} vs {lin}");
    }
}

#[test]
fn peak_and_rejections() {
    assert_eq!(peregrine_at(0.0, 0.0), Complex64::new(-3.0, 0.0));
    assert!(matches!(ScalingParam::new(0.0), Err(Error::InvalidParameter(_))));
    assert!(matches!(ComplexField1D::new(vec![0.0, 0.0], vec![Complex64::new(0.0, 0.0); 2], 0.0), Err(_)));
    assert!(ComplexField1D::new(vec![0.0, 1.0], vec![Complex64::new(0.0, 0.0)], 0.0).is_err());
}

/// Modified energy of `σ u_Per(·, 0)` with `κ = σ²`: whole-line grid against
/// adaptive quadrature of the closed-form integrand.
#[test]
fn scaled_breather_energy() {
    let grid = MultiDomainGrid::new(&LayoutSpec::paper()).unwrap();
    for sigma in [0.9, 1.0, 1.1] {
        let k = sigma * sigma;
        let integrand = |x: f64| {
            // At t = 0 the breather is 1 - 4/d; |u|^2 - κ is expanded to avoid
            // cancellation in the tails.
            let d = 1.0 + 4.0 * x * x;
            let ux = sigma * oracle::peregrine_dx(x, 0.0);
            let m = k * (1.0 - 4.0 / d).powi(2);
            let excess = k * (-8.0 / d + 16.0 / (d * d));
            0.5 * (ux.norm_sqr() - m * excess)
        };
        let reference = oracle::integrate_real_line(&integrand, 1e-10);
        let u = grid.sample(|x| peregrine_at(x, 0.0) * sigma);
        let e = energy(&u, &grid, AsymptoticModulus::new(k).unwrap()).unwrap();
        assert!((e - reference).abs() < 1e-9, "sigma {sigma}: {e} vs {reference}");
    }
    // The unscaled breather carries zero energy.
    let u = grid.sample(|x| peregrine_at(x, 0.0));
    assert!(energy(&u, &grid, AsymptoticModulus::default()).unwrap().abs() < 1e-10);
}
