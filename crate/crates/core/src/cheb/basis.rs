//! Chebyshev–Gauss–Lobatto nodes, collocation differentiation matrices,
//! Clenshaw–Curtis weights, coefficient transform and barycentric
//! interpolation on `[-1, 1]`.
//!
//! Nodes are stored in ascending order, `ξ_j = −cos(πj/n)`, `j = 0..=n`.

use std::f64::consts::PI;

use num_complex::Complex64;

/// Dense row-major real matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct RealMatrix {
    n: usize,
    data: Vec<f64>,
}

impl RealMatrix {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![0.0; n * n] }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn matmul(&self, other: &RealMatrix) -> RealMatrix {
        let n = self.n;
        let mut out = RealMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                let orow = other.row(k);
                let dst = &mut out.data[i * n..(i + 1) * n];
                for (d, &b) in dst.iter_mut().zip(orow) {
                    *d += a * b;
                }
            }
        }
        out
    }

    /// `diag(scale) · self`.
    pub fn scale_rows(&self, scale: &[f64]) -> RealMatrix {
        let mut out = self.clone();
        for (i, &s) in scale.iter().enumerate() {
            for v in &mut out.data[i * self.n..(i + 1) * self.n] {
                *v *= s;
            }
        }
        out
    }

    pub fn add(&self, other: &RealMatrix) -> RealMatrix {
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        RealMatrix { n: self.n, data }
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        (0..self.n).map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn apply_complex(&self, x: &[Complex64], out: &mut [Complex64]) {
        for (i, o) in out.iter_mut().enumerate() {
            let (mut re, mut im) = (0.0, 0.0);
            for (a, z) in self.row(i).iter().zip(x) {
                re += a * z.re;
                im += a * z.im;
            }
            *o = Complex64::new(re, im);
        }
    }

    /// `out_i = Σ_j a_ij (x_j − x_i)`: equal to the plain product for
    /// matrices with zero row sums but with far less cancellation in rows
    /// with large entries.
    pub fn apply_complex_centered(&self, x: &[Complex64], out: &mut [Complex64]) {
        for (i, o) in out.iter_mut().enumerate() {
            let xi = x[i];
            let (mut re, mut im) = (0.0, 0.0);
            for (a, z) in self.row(i).iter().zip(x) {
                re += a * (z.re - xi.re);
                im += a * (z.im - xi.im);
            }
            *o = Complex64::new(re, im);
        }
    }

    pub fn row_dot_complex(&self, i: usize, x: &[Complex64]) -> Complex64 {
        let (mut re, mut im) = (0.0, 0.0);
        for (a, z) in self.row(i).iter().zip(x) {
            re += a * z.re;
            im += a * z.im;
        }
        Complex64::new(re, im)
    }
}

/// Ascending Chebyshev–Lobatto nodes, computed in the symmetric form
/// `sin(π(2j − n)/(2n))` so that `ξ_{n−j} = −ξ_j` exactly.
pub fn lobatto_nodes(n: usize) -> Vec<f64> {
    let nf = n as f64;
    (0..=n).map(|j| (PI * (2.0 * j as f64 - nf) / (2.0 * nf)).sin()).collect()
}

/// Barycentric weights `(−1)^j δ_j` of the Lobatto nodes (`δ = 1/2` at the
/// ends).
pub fn barycentric_weights(n: usize) -> Vec<f64> {
    (0..=n)
        .map(|j| {
            let s = if j % 2 == 0 { 1.0 } else { -1.0 };
            if j == 0 || j == n {
                0.5 * s
            } else {
                s
            }
        })
        .collect()
}

/// First-derivative collocation matrix on the ascending Lobatto nodes.
///
/// Off-diagonal entries use the trigonometric form of `ξ_i − ξ_j`; the
/// diagonal is the negative row sum so constants are differentiated to zero.
pub fn diff_matrix(n: usize) -> RealMatrix {
    let w = barycentric_weights(n);
    let nf = n as f64;
    let mut d = RealMatrix::zeros(n + 1);
    for i in 0..=n {
        let mut sum = 0.0;
        for j in 0..=n {
            if i == j {
                continue;
            }
            let diff = 2.0 * (PI * (i + j) as f64 / (2.0 * nf)).sin() * (PI * (i as f64 - j as f64) / (2.0 * nf)).sin();
            let v = (w[j] / w[i]) / diff;
            d.set(i, j, v);
            sum += v;
        }
        d.set(i, i, -sum);
    }
    d
}

/// Second-derivative collocation matrix built from `diff1` by the
/// barycentric recurrence `D2_ij = 2 D_ij (D_ii − 1/(ξ_i − ξ_j))`, again with
/// a negative-sum diagonal. More accurate than `D·D` near the endpoints.
pub fn diff2_matrix(n: usize, diff1: &RealMatrix) -> RealMatrix {
    let nf = n as f64;
    let mut d2 = RealMatrix::zeros(n + 1);
    for i in 0..=n {
        let mut sum = 0.0;
        let dii = diff1.get(i, i);
        for j in 0..=n {
            if i == j {
                continue;
            }
            let diff = 2.0 * (PI * (i + j) as f64 / (2.0 * nf)).sin() * (PI * (i as f64 - j as f64) / (2.0 * nf)).sin();
            let v = 2.0 * diff1.get(i, j) * (dii - 1.0 / diff);
            d2.set(i, j, v);
            sum += v;
        }
        d2.set(i, i, -sum);
    }
    d2
}

/// Clenshaw–Curtis weights for the Lobatto nodes.
pub fn clenshaw_curtis_weights(n: usize) -> Vec<f64> {
    let nf = n as f64;
    let mut w = vec![0.0; n + 1];
    let mut v = vec![1.0; n.saturating_sub(1)];
    let theta = |j: usize| PI * j as f64 / nf;
    if n % 2 == 0 {
        w[0] = 1.0 / (nf * nf - 1.0);
        w[n] = w[0];
        for k in 1..n / 2 {
            let kf = k as f64;
            for (idx, vj) in v.iter_mut().enumerate() {
                *vj -= 2.0 * (2.0 * kf * theta(idx + 1)).cos() / (4.0 * kf * kf - 1.0);
            }
        }
        for (idx, vj) in v.iter_mut().enumerate() {
            *vj -= (nf * theta(idx + 1)).cos() / (nf * nf - 1.0);
        }
    } else {
        w[0] = 1.0 / (nf * nf);
        w[n] = w[0];
        for k in 1..=(n - 1) / 2 {
            let kf = k as f64;
            for (idx, vj) in v.iter_mut().enumerate() {
                *vj -= 2.0 * (2.0 * kf * theta(idx + 1)).cos() / (4.0 * kf * kf - 1.0);
            }
        }
    }
    for (idx, vj) in v.iter().enumerate() {
        w[idx + 1] = 2.0 * vj / nf;
    }
    w
}

/// Chebyshev coefficients `c_k`, `f(ξ) = Σ c_k T_k(ξ)`, of nodal values on
/// the ascending Lobatto nodes (a type-I discrete cosine transform).
pub fn chebyshev_coefficients(values: &[Complex64]) -> Vec<Complex64> {
    let n = values.len() - 1;
    let nf = n as f64;
    let cos_table: Vec<f64> = (0..2 * n).map(|m| (PI * m as f64 / nf).cos()).collect();
    (0..=n)
        .map(|k| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (j, &f) in values.iter().enumerate() {
                // ξ_j = cos(π(n − j)/n)
                let m = ((n - j) * k) % (2 * n);
                let half = if j == 0 || j == n { 0.5 } else { 1.0 };
                acc += f * (half * cos_table[m]);
            }
            let gamma = if k == 0 || k == n { 2.0 } else { 1.0 };
            acc * (2.0 / (nf * gamma))
        })
        .collect()
}

/// Barycentric interpolation through Lobatto data at an arbitrary `ξ`.
pub fn barycentric_eval(nodes: &[f64], weights: &[f64], values: &[Complex64], xi: f64) -> Complex64 {
    let mut num = Complex64::new(0.0, 0.0);
    let mut den = 0.0;
    for ((&xj, &wj), &fj) in nodes.iter().zip(weights).zip(values) {
        let diff = xi - xj;
        if diff == 0.0 {
            return fj;
        }
        let c = wj / diff;
        num += fj * c;
        den += c;
    }
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cplx(v: &[f64]) -> Vec<Complex64> {
        v.iter().map(|&x| Complex64::new(x, 0.0)).collect()
    }

    #[test]
    fn nodes_are_ascending_and_symmetric() {
        for n in [8, 9, 60, 301] {
            let x = lobatto_nodes(n);
            assert_eq!(x[0], -1.0);
            assert_eq!(x[n], 1.0);
            assert!(x.windows(2).all(|w| w[1] > w[0]));
            for j in 0..=n {
                assert_eq!(x[j], -x[n - j]);
            }
        }
        assert_eq!(lobatto_nodes(10)[5], 0.0);
    }

    #[test]
    fn derivative_of_polynomials_is_exact() {
        let n = 16;
        let x = lobatto_nodes(n);
        let d = diff_matrix(n);
        let f: Vec<f64> = x.iter().map(|&x| x.powi(5) - 2.0 * x * x + 1.0).collect();
        let df = d.apply(&f);
        for (j, &xj) in x.iter().enumerate() {
            let exact = 5.0 * xj.powi(4) - 4.0 * xj;
            assert!((df[j] - exact).abs() < 1e-12, "{} vs {}", df[j], exact);
        }
        for i in 0..=n {
            let s: f64 = d.row(i).iter().sum();
            assert!(s.abs() < 1e-10);
        }
    }

    #[test]
    fn second_derivative_of_smooth_function() {
        let n = 40;
        let x = lobatto_nodes(n);
        let d = diff_matrix(n);
        let d2 = diff2_matrix(n, &d);
        let dd = d.matmul(&d);
        for i in 0..=n {
            for j in 0..=n {
                assert!((d2.get(i, j) - dd.get(i, j)).abs() < 1e-9 * dd.get(i, j).abs().max(1.0));
            }
        }
        let f: Vec<f64> = x.iter().map(|&x| (2.0 * x).sin()).collect();
        let ddf = d2.apply(&f);
        for (j, &xj) in x.iter().enumerate() {
            assert!((ddf[j] + 4.0 * (2.0 * xj).sin()).abs() < 1e-9);
        }
    }

    #[test]
    fn clenshaw_curtis_integrates_polynomials() {
        for n in [8, 9, 20, 101] {
            let x = lobatto_nodes(n);
            let w = clenshaw_curtis_weights(n);
            let exp_tol = if n < 12 { 1e-6 } else { 1e-13 };
            let total: f64 = w.iter().sum();
            assert!((total - 2.0).abs() < 1e-13);
            let i4: f64 = x.iter().zip(&w).map(|(&x, &w)| w * x.powi(4)).sum();
            assert!((i4 - 0.4).abs() < 1e-13);
            let iexp: f64 = x.iter().zip(&w).map(|(&x, &w)| w * x.exp()).sum();
            assert!((iexp - (1f64.exp() - (-1f64).exp())).abs() < exp_tol);
        }
    }

    #[test]
    fn coefficients_of_t3() {
        let n = 12;
        let x = lobatto_nodes(n);
        let f: Vec<Complex64> = x.iter().map(|&x| Complex64::new(4.0 * x.powi(3) - 3.0 * x, 0.0)).collect();
        let c = chebyshev_coefficients(&f);
        for (k, ck) in c.iter().enumerate() {
            let expected = if k == 3 { 1.0 } else { 0.0 };
            assert!((ck.re - expected).abs() < 1e-14, "k={k}: {ck}");
        }
    }

    #[test]
    fn coefficient_of_top_mode() {
        // T_n itself at the Lobatto nodes.
        let n = 10;
        let x = lobatto_nodes(n);
        let f: Vec<Complex64> = x.iter().map(|&x| Complex64::new((n as f64 * x.acos()).cos(), 0.0)).collect();
        let c = chebyshev_coefficients(&f);
        assert!((c[n].re - 1.0).abs() < 1e-13);
        assert!(c[..n].iter().all(|z| z.norm() < 1e-13));
    }

    #[test]
    fn barycentric_reproduces_polynomial() {
        let n = 10;
        let x = lobatto_nodes(n);
        let w = barycentric_weights(n);
        let f = cplx(&x.iter().map(|&x| x.powi(7) - x).collect::<Vec<_>>());
        for &xi in &[-0.93, -0.2, 0.0, 0.31, 0.999] {
            let v = barycentric_eval(&x, &w, &f, xi);
            assert!((v.re - (xi.powi(7) - xi)).abs() < 1e-13);
        }
        assert_eq!(barycentric_eval(&x, &w, &f, x[3]), f[3]);
    }
}
