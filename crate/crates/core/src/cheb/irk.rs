//! Two-stage Gauss–Legendre implicit Runge–Kutta stepping for
//! `u_t = iα u_xx + N(u, t)` on a [`MultiDomainGrid`], with the interface
//! conditions imposed as algebraic rows of each stage system.
//!
//! The stage equations are solved by a simplified Newton iteration whose
//! matrix is the exact Jacobian of the stiff dispersive part; `N` is iterated
//! explicitly. The coupled two-stage matrix is block-diagonalised through the
//! eigenvectors of the Butcher matrix, so each iteration needs two complex
//! back-substitutions with LU factors computed once per run.

use nalgebra::{DMatrix, DVector, LU};
use num_complex::Complex64;

use super::grid::MultiDomainGrid;
use crate::{Error, Result};

type C = Complex64;
type ComplexLu = LU<C, nalgebra::Dyn, nalgebra::Dyn>;

const SQRT3: f64 = 1.732_050_807_568_877_2;

/// Stage nodes.
pub const NODES: [f64; 2] = [0.5 - SQRT3 / 6.0, 0.5 + SQRT3 / 6.0];

const A: [[f64; 2]; 2] = [[0.25, 0.25 - SQRT3 / 6.0], [0.25 + SQRT3 / 6.0, 0.25]];

/// Step size and iteration controls.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct IrkConfig {
    pub h: f64,
    pub newton_tol: f64,
    pub max_iterations: usize,
}

impl IrkConfig {
    pub fn new(h: f64) -> Result<Self> {
        Self { h, newton_tol: 1e-12, max_iterations: 50 }.validated()
    }

    pub fn validated(self) -> Result<Self> {
        if !(self.h > 0.0) || !self.h.is_finite() {
            return Err(Error::InvalidParameter(format!("time step must be positive, got {}", self.h)));
        }
        if !(self.newton_tol > 0.0) {
            return Err(Error::InvalidParameter(format!("Newton tolerance must be positive, got {}", self.newton_tol)));
        }
        if self.max_iterations < 1 {
            return Err(Error::InvalidParameter("at least one Newton iteration is required".into()));
        }
        Ok(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepStats {
    pub iterations: usize,
    pub increment: f64,
}

pub struct GaussLegendre2 {
    config: IrkConfig,
    alpha: f64,
    n: usize,
    differential: Vec<bool>,
    constraints: Vec<(usize, Vec<(usize, f64)>)>,
    lus: [ComplexLu; 2],
    t: [[C; 2]; 2],
    t_inv: [[C; 2]; 2],
    ainv_row_sums: [f64; 2],
    weights: [f64; 2],
    history: Option<[Vec<C>; 2]>,
    projection_cols: Vec<usize>,
    projection: LU<f64, nalgebra::Dyn, nalgebra::Dyn>,
}

impl std::fmt::Debug for GaussLegendre2 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GaussLegendre2").field("config", &self.config).field("alpha", &self.alpha).field("n", &self.n).finish()
    }
}

fn inv2(m: [[C; 2]; 2]) -> [[C; 2]; 2] {
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    [[m[1][1] / det, -m[0][1] / det], [-m[1][0] / det, m[0][0] / det]]
}

impl GaussLegendre2 {
    /// Factors the stage matrices for `u_t = iα u_xx + N`.
    pub fn new(grid: &MultiDomainGrid, alpha: f64, config: IrkConfig) -> Result<Self> {
        let config = config.validated()?;
        let n = grid.len();
        let h = config.h;

        let tr = A[0][0] + A[1][1];
        let det = A[0][0] * A[1][1] - A[0][1] * A[1][0];
        let disc = C::new(tr * tr - 4.0 * det, 0.0).sqrt();
        let lambda = [(C::new(tr, 0.0) + disc) * 0.5, (C::new(tr, 0.0) - disc) * 0.5];
        let a12 = C::new(A[0][1], 0.0);
        let t = [[a12, a12], [lambda[0] - A[0][0], lambda[1] - A[0][0]]];
        let t_inv = inv2(t);

        let ainv = inv2([[C::new(A[0][0], 0.0), C::new(A[0][1], 0.0)], [C::new(A[1][0], 0.0), C::new(A[1][1], 0.0)]]);
        let ainv_row_sums = [(ainv[0][0] + ainv[0][1]).re, (ainv[1][0] + ainv[1][1]).re];
        let weights = [0.5 * (ainv[0][0] + ainv[1][0]).re, 0.5 * (ainv[0][1] + ainv[1][1]).re];

        let constraints = grid.constraint_rows();
        let mut differential = vec![true; n];
        for (row, _) in &constraints {
            differential[*row] = false;
        }

        let lus = [0, 1].map(|k| {
            let inv_lambda = C::new(1.0, 0.0) / lambda[k];
            let mut m = DMatrix::<C>::zeros(n, n);
            for (d, dom) in grid.domains().iter().enumerate() {
                let off = grid.offset(d);
                for i in 0..dom.node_count() {
                    let gi = off + i;
                    if !differential[gi] {
                        continue;
                    }
                    for (j, &v) in dom.dxx().row(i).iter().enumerate() {
                        m[(gi, off + j)] = C::new(0.0, -h * alpha * v);
                    }
                    m[(gi, gi)] += inv_lambda;
                }
            }
            for (row, coeffs) in &constraints {
                for &(col, v) in coeffs {
                    m[(*row, col)] += inv_lambda * v;
                }
            }
            m.lu()
        });
        for lu in &lus {
            if !lu.is_invertible() {
                return Err(Error::InvalidParameter("stage matrix is singular".into()));
            }
        }

        let mut projection_cols: Vec<usize> = Vec::new();
        for itf in grid.interfaces() {
            projection_cols.push(grid.global_index(itf.left.0, itf.left.1));
            projection_cols.push(grid.global_index(itf.right.0, itf.right.1));
        }
        let nc = constraints.len();
        let mut p = DMatrix::<f64>::zeros(nc, projection_cols.len());
        for (r, (_, coeffs)) in constraints.iter().enumerate() {
            for &(col, v) in coeffs {
                if let Some(k) = projection_cols.iter().position(|&c| c == col) {
                    p[(r, k)] += v;
                }
            }
        }
        let projection = p.lu();
        if !projection.is_invertible() {
            return Err(Error::InvalidParameter("interface conditions cannot be imposed on this layout".into()));
        }

        Ok(Self {
            config,
            alpha,
            n,
            differential,
            constraints,
            lus,
            t,
            t_inv,
            ainv_row_sums,
            weights,
            history: None,
            projection_cols,
            projection,
        })
    }

    pub fn config(&self) -> IrkConfig {
        self.config
    }

    /// Forgets the stage values of the previous step used for prediction.
    pub fn reset(&mut self) {
        self.history = None;
    }

    fn constraint_residual(&self, u: &[C]) -> Vec<C> {
        self.constraints.iter().map(|(_, coeffs)| coeffs.iter().map(|&(c, v)| u[c] * v).sum()).collect()
    }

    /// Moves the interface nodes so that the interface conditions hold
    /// exactly for `u`.
    pub fn project(&self, u: &mut [C]) {
        let r = self.constraint_residual(u);
        let re = DVector::from_iterator(r.len(), r.iter().map(|z| -z.re));
        let im = DVector::from_iterator(r.len(), r.iter().map(|z| -z.im));
        if let (Some(dre), Some(dim)) = (self.projection.solve(&re), self.projection.solve(&im)) {
            for (k, &col) in self.projection_cols.iter().enumerate() {
                u[col] += C::new(dre[k], dim[k]);
            }
        }
    }

    /// `h Q L u` with `L = iα ∂ₓₓ` and the interface rows masked out.
    fn masked_linear(&self, grid: &MultiDomainGrid, u: &[C], out: &mut [C]) {
        grid.apply_dxx_into(u, out);
        let f = C::new(0.0, self.config.h * self.alpha);
        for (o, &d) in out.iter_mut().zip(&self.differential) {
            *o = if d { *o * f } else { C::new(0.0, 0.0) };
        }
    }

    /// Advances `u` from `t` to `t + h` in place.
    pub fn step<F>(&mut self, grid: &MultiDomainGrid, u: &mut [C], t: f64, mut nonlinear: F) -> Result<StepStats>
    where
        F: FnMut(&[C], f64) -> Vec<C>,
    {
        if u.len() != self.n {
            return Err(Error::LengthMismatch { expected: self.n, got: u.len() });
        }
        let h = self.config.h;
        let n = self.n;
        let zero = C::new(0.0, 0.0);

        let mut z: [Vec<C>; 2] = match &self.history {
            Some([z1, z2]) => {
                // Extrapolate the previous collocation polynomial.
                let c = NODES;
                let lag = |k: usize, tau: f64| {
                    let other = c[1 - k];
                    tau * (tau - other) / (c[k] * (c[k] - other))
                };
                let mut out = [vec![zero; n], vec![zero; n]];
                for (i, zi) in out.iter_mut().enumerate() {
                    let tau = 1.0 + c[i];
                    let f1 = lag(0, tau) - self.weights[0];
                    let f2 = lag(1, tau) - self.weights[1];
                    for (j, v) in zi.iter_mut().enumerate() {
                        *v = z1[j] * f1 + z2[j] * f2;
                    }
                }
                out
            }
            None => [vec![zero; n], vec![zero; n]],
        };

        let mut lin_u = vec![zero; n];
        self.masked_linear(grid, u, &mut lin_u);
        let bu = self.constraint_residual(u);

        // Parts of the stage right-hand side that do not change during the
        // iteration.
        let base: [Vec<C>; 2] = [0, 1].map(|i| {
            let mut r = lin_u.clone();
            for ((row, _), b) in self.constraints.iter().zip(&bu) {
                r[*row] = -self.ainv_row_sums[i] * b;
            }
            r
        });

        let scale = u.iter().map(|v| v.norm()).fold(0.0, f64::max).max(1.0);
        let tol = self.config.newton_tol * scale;
        let mut stage = vec![zero; n];
        let mut increment = f64::INFINITY;
        let mut iterations = 0;
        let mut converged = false;
        while iterations < self.config.max_iterations {
            iterations += 1;
            let mut rhs: [Vec<C>; 2] = [base[0].clone(), base[1].clone()];
            for i in 0..2 {
                for j in 0..n {
                    stage[j] = u[j] + z[i][j];
                }
                let nl = nonlinear(&stage, t + NODES[i] * h);
                if nl.len() != n {
                    return Err(Error::LengthMismatch { expected: n, got: nl.len() });
                }
                for j in 0..n {
                    if self.differential[j] {
                        rhs[i][j] += nl[j] * h;
                    }
                }
            }
            let mut w: [DVector<C>; 2] = [0, 1].map(|k| {
                DVector::from_iterator(n, (0..n).map(|j| self.t_inv[k][0] * rhs[0][j] + self.t_inv[k][1] * rhs[1][j]))
            });
            for k in 0..2 {
                if !self.lus[k].solve_mut(&mut w[k]) {
                    return Err(Error::InvalidParameter("stage matrix is singular".into()));
                }
            }
            let mut inc: f64 = 0.0;
            for i in 0..2 {
                for j in 0..n {
                    let new = self.t[i][0] * w[0][j] + self.t[i][1] * w[1][j];
                    inc = inc.max((new - z[i][j]).norm());
                    z[i][j] = new;
                }
            }
            if !inc.is_finite() || (iterations > 3 && inc > 1e3 * increment.min(scale)) {
                increment = inc;
                break;
            }
            increment = inc;
            if inc <= tol {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::NewtonFailure { t, iterations, increment });
        }

        for j in 0..n {
            u[j] += z[0][j] * self.weights[0] + z[1][j] * self.weights[1];
        }
        self.project(u);
        self.history = Some(z);
        Ok(StepStats { iterations, increment })
    }
}
