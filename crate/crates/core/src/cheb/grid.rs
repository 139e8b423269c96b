use num_complex::Complex64;

use super::basis::{
    barycentric_eval, barycentric_weights, chebyshev_coefficients, clenshaw_curtis_weights, diff2_matrix, diff_matrix,
    lobatto_nodes,
    RealMatrix,
};
use crate::diagnostics::SpectralGrid;
use crate::{Error, Result};

/// Relative size of the integrand at the point at infinity above which the
/// compactified integral is declared divergent.
const INFINITY_INTEGRAND_TOL: f64 = 1e-8;

const ROMAN: [&str; 8] = ["I", "II", "III", "IV", "V", "VI", "VII", "VIII"];

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DomainKind {
    /// Affine image of `[-1, 1]` onto `[a, b]`.
    Finite { a: f64, b: f64 },
    /// `|x| >= cut` including the point at infinity, through `s = 1/x = ξ/cut`.
    Compactified { cut: f64 },
}

/// Boundaries and polynomial degrees of a multidomain layout.
///
/// `boundaries` are the breakpoints of the finite domains; the outermost
/// ones must be `-cut` and `cut` of the compactified domain.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct LayoutSpec {
    pub boundaries: Vec<f64>,
    pub finite_n: Vec<usize>,
    pub compact_n: usize,
}

impl LayoutSpec {
    /// `[-20, -5, 5, 20]` with degrees 200/300/200 and 100 in the
    /// compactified domain.
    pub fn paper() -> Self {
        Self::standard(200, 300, 200, 100)
    }

    /// Same breakpoints at roughly half the degree.
    pub fn desk() -> Self {
        Self::standard(100, 150, 100, 60)
    }

    pub fn standard(n_i: usize, n_ii: usize, n_iii: usize, n_iv: usize) -> Self {
        Self { boundaries: vec![-20.0, -5.0, 5.0, 20.0], finite_n: vec![n_i, n_ii, n_iii], compact_n: n_iv }
    }

    /// Multiplies every degree by `factor`, rounding the compactified one to
    /// an even number.
    pub fn refined(&self, factor: f64) -> Self {
        let scale = |n: usize| ((n as f64) * factor).round() as usize;
        let mut compact_n = scale(self.compact_n);
        compact_n += compact_n % 2;
        Self { boundaries: self.boundaries.clone(), finite_n: self.finite_n.iter().map(|&n| scale(n)).collect(), compact_n }
    }

    pub fn validate(&self) -> Result<()> {
        let b = &self.boundaries;
        if b.len() < 2 || self.finite_n.len() != b.len() - 1 {
            return Err(Error::InvalidParameter(format!(
                "{} boundaries need {} finite-domain degrees, got {}",
                b.len(),
                b.len().saturating_sub(1),
                self.finite_n.len()
            )));
        }
        if b.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("domain boundaries must be finite".into()));
        }
        for w in b.windows(2) {
            if !(w[1] > w[0]) {
                return Err(Error::InvalidParameter(format!(
                    "domain boundaries overlap or are out of order at {} and {}",
                    w[0], w[1]
                )));
            }
        }
        let cut = b[b.len() - 1];
        if !(cut > 0.0) || b[0] != -cut {
            return Err(Error::InvalidParameter(format!(
                "outer boundaries must be -c and c for the compactified domain, got {} and {}",
                b[0], cut
            )));
        }
        if let Some(&n) = self.finite_n.iter().find(|&&n| n < 8) {
            return Err(Error::InvalidParameter(format!("polynomial degree must be at least 8, got {n}")));
        }
        if self.compact_n < 8 || self.compact_n % 2 != 0 {
            return Err(Error::InvalidParameter(format!(
                "compactified degree must be even and at least 8, got {}",
                self.compact_n
            )));
        }
        if self.finite_n.len() + 1 > ROMAN.len() {
            return Err(Error::InvalidParameter("too many domains".into()));
        }
        Ok(())
    }

    /// Breakpoints and degrees are symmetric under `x ↦ -x`.
    pub fn is_symmetric(&self) -> bool {
        let b = &self.boundaries;
        let nb = b.len();
        (0..nb).all(|i| (b[i] + b[nb - 1 - i]).abs() <= 1e-12 * b[nb - 1])
            && (0..self.finite_n.len()).all(|d| self.finite_n[d] == self.finite_n[self.finite_n.len() - 1 - d])
    }

    pub fn total_nodes(&self) -> usize {
        self.finite_n.iter().map(|n| n + 1).sum::<usize>() + self.compact_n + 1
    }
}

/// One Chebyshev domain with its physical-variable differentiation matrices.
#[derive(Debug, Clone)]
pub struct DomainSpec {
    name: String,
    kind: DomainKind,
    n: usize,
    local_nodes: Vec<f64>,
    coords: Vec<f64>,
    diff1: RealMatrix,
    diff2: RealMatrix,
    dx: RealMatrix,
    dxx: RealMatrix,
    cc_weights: Vec<f64>,
    bary_weights: Vec<f64>,
}

impl DomainSpec {
    pub fn new(name: &str, kind: DomainKind, n: usize) -> Result<Self> {
        if n < 8 {
            return Err(Error::InvalidParameter(format!("polynomial degree must be at least 8, got {n}")));
        }
        let local_nodes = lobatto_nodes(n);
        let diff1 = diff_matrix(n);
        let diff2 = diff2_matrix(n, &diff1);
        let (coords, dx, dxx) = match kind {
            DomainKind::Finite { a, b } => {
                if !(b > a) {
                    return Err(Error::InvalidParameter(format!("finite domain needs a < b, got [{a}, {b}]")));
                }
                let half = 0.5 * (b - a);
                let mid = 0.5 * (a + b);
                let mut coords: Vec<f64> = local_nodes.iter().map(|&xi| mid + half * xi).collect();
                coords[0] = a;
                coords[n] = b;
                let dx = diff1.scale_rows(&vec![1.0 / half; n + 1]);
                let dxx = diff2.scale_rows(&vec![1.0 / (half * half); n + 1]);
                (coords, dx, dxx)
            }
            DomainKind::Compactified { cut } => {
                if !(cut > 0.0) {
                    return Err(Error::InvalidParameter(format!("compactification cut must be positive, got {cut}")));
                }
                if n % 2 != 0 {
                    return Err(Error::InvalidParameter(format!(
                        "compactified degree must be even so that infinity is a node, got {n}"
                    )));
                }
                let coords: Vec<f64> = local_nodes
                    .iter()
                    .enumerate()
                    .map(|(j, &xi)| if 2 * j == n { f64::INFINITY } else { cut / xi })
                    .collect();
                let s: Vec<f64> = local_nodes.iter().map(|&xi| xi / cut).collect();
                let m1: Vec<f64> = s.iter().map(|&s| -s * s * cut).collect();
                let m2: Vec<f64> = s.iter().map(|&s| s.powi(4) * cut * cut).collect();
                let m3: Vec<f64> = s.iter().map(|&s| 2.0 * s.powi(3) * cut).collect();
                let dx = diff1.scale_rows(&m1);
                let dxx = diff2.scale_rows(&m2).add(&diff1.scale_rows(&m3));
                (coords, dx, dxx)
            }
        };
        Ok(Self {
            name: name.to_string(),
            kind,
            n,
            local_nodes,
            coords,
            diff1,
            diff2,
            dx,
            dxx,
            cc_weights: clenshaw_curtis_weights(n),
            bary_weights: barycentric_weights(n),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> DomainKind {
        self.kind
    }

    /// Polynomial degree; the domain has `n + 1` nodes.
    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn node_count(&self) -> usize {
        self.n + 1
    }

    pub fn local_nodes(&self) -> &[f64] {
        &self.local_nodes
    }

    /// Physical coordinates in local-node order. In the compactified domain
    /// the middle node is the point at infinity and is reported as `+inf`.
    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn diff1(&self) -> &RealMatrix {
        &self.diff1
    }

    pub fn diff2(&self) -> &RealMatrix {
        &self.diff2
    }

    pub fn dx(&self) -> &RealMatrix {
        &self.dx
    }

    pub fn dxx(&self) -> &RealMatrix {
        &self.dxx
    }

    fn is_compact(&self) -> bool {
        matches!(self.kind, DomainKind::Compactified { .. })
    }

    fn local_coordinate(&self, x: f64) -> Option<f64> {
        match self.kind {
            DomainKind::Finite { a, b } => (a..=b).contains(&x).then(|| (2.0 * x - a - b) / (b - a)),
            DomainKind::Compactified { cut } => {
                if x.is_infinite() {
                    Some(0.0)
                } else if x.abs() >= cut {
                    Some(cut / x)
                } else {
                    None
                }
            }
        }
    }

    /// `∫ f dx` over the domain.
    fn integrate(&self, f: &[f64]) -> Result<f64> {
        match self.kind {
            DomainKind::Finite { a, b } => {
                let half = 0.5 * (b - a);
                Ok(f.iter().zip(&self.cc_weights).map(|(f, w)| f * w).sum::<f64>() * half)
            }
            DomainKind::Compactified { cut } => {
                // ∫ f dx = ∫ f/s² ds with s = ξ/cut.
                let mid = self.n / 2;
                let scale = f.iter().map(|v| v.abs()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
                if f[mid].abs() > INFINITY_INTEGRAND_TOL * scale.max(1.0) {
                    return Err(Error::Undefined(format!(
                        "integrand does not vanish at infinity ({:e}), the integral diverges",
                        f[mid]
                    )));
                }
                let mut total = 0.0;
                for (j, (&fj, &w)) in f.iter().zip(&self.cc_weights).enumerate() {
                    let g = if j == mid {
                        0.5 * cut * cut * self.diff2.row(mid).iter().zip(f).map(|(d, f)| d * f).sum::<f64>()
                    } else {
                        let s = self.local_nodes[j] / cut;
                        fj / (s * s)
                    };
                    total += w * g / cut;
                }
                Ok(total)
            }
        }
    }
}

/// Identified node pair at a domain boundary, oriented left to right in `x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interface {
    pub x: f64,
    pub left: (usize, usize),
    pub right: (usize, usize),
}

/// Value and first-derivative jumps at every interface.
#[derive(Debug, Clone, PartialEq)]
pub struct InterfaceJumps {
    pub value: Vec<f64>,
    pub derivative: Vec<f64>,
}

impl InterfaceJumps {
    pub fn max_value(&self) -> f64 {
        self.value.iter().copied().fold(0.0, f64::max)
    }

    pub fn max_derivative(&self) -> f64 {
        self.derivative.iter().copied().fold(0.0, f64::max)
    }
}

/// Complex values on every node of a [`MultiDomainGrid`], domain by domain.
#[derive(Debug, Clone, PartialEq)]
pub struct GlobalState {
    pub values: Vec<Complex64>,
    pub time: f64,
}

/// Finite Chebyshev domains covering `[-c, c]` plus a compactified domain
/// covering `|x| >= c` and infinity.
///
/// Global storage concatenates the finite domains left to right followed by
/// the compactified one; interface nodes are stored twice.
#[derive(Debug, Clone)]
pub struct MultiDomainGrid {
    layout: LayoutSpec,
    domains: Vec<DomainSpec>,
    offsets: Vec<usize>,
    interfaces: Vec<Interface>,
    physical: Vec<(usize, f64)>,
}

impl MultiDomainGrid {
    pub fn new(layout: &LayoutSpec) -> Result<Self> {
        layout.validate()?;
        let b = &layout.boundaries;
        let cut = b[b.len() - 1];
        let mut domains = Vec::with_capacity(b.len());
        for (d, w) in b.windows(2).enumerate() {
            domains.push(DomainSpec::new(ROMAN[d], DomainKind::Finite { a: w[0], b: w[1] }, layout.finite_n[d])?);
        }
        let nf = domains.len();
        domains.push(DomainSpec::new(ROMAN[nf], DomainKind::Compactified { cut }, layout.compact_n)?);
        let mut offsets = Vec::with_capacity(domains.len() + 1);
        let mut acc = 0;
        for d in &domains {
            offsets.push(acc);
            acc += d.node_count();
        }
        offsets.push(acc);

        let m = layout.compact_n;
        let mut interfaces = vec![Interface { x: -cut, left: (nf, 0), right: (0, 0) }];
        for d in 0..nf - 1 {
            interfaces.push(Interface { x: b[d + 1], left: (d, layout.finite_n[d]), right: (d + 1, 0) });
        }
        interfaces.push(Interface { x: cut, left: (nf - 1, layout.finite_n[nf - 1]), right: (nf, m) });

        // Ascending physical order; shared interface nodes once; infinity at
        // both ends.
        let mut physical = Vec::with_capacity(acc);
        let c0 = offsets[nf];
        physical.push((c0 + m / 2, f64::NEG_INFINITY));
        for j in (1..m / 2).rev() {
            physical.push((c0 + j, domains[nf].coords[j]));
        }
        for (d, dom) in domains[..nf].iter().enumerate() {
            let start = if d == 0 { 0 } else { 1 };
            for j in start..=dom.n {
                physical.push((offsets[d] + j, dom.coords[j]));
            }
        }
        for j in (m / 2 + 1..m).rev() {
            physical.push((c0 + j, domains[nf].coords[j]));
        }
        physical.push((c0 + m / 2, f64::INFINITY));

        Ok(Self { layout: layout.clone(), domains, offsets, interfaces, physical })
    }

    pub fn layout(&self) -> &LayoutSpec {
        &self.layout
    }

    pub fn domains(&self) -> &[DomainSpec] {
        &self.domains
    }

    pub fn interfaces(&self) -> &[Interface] {
        &self.interfaces
    }

    /// Total number of stored nodes (interface nodes counted twice).
    pub fn len(&self) -> usize {
        self.offsets[self.domains.len()]
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn offset(&self, domain: usize) -> usize {
        self.offsets[domain]
    }

    pub fn global_index(&self, domain: usize, node: usize) -> usize {
        self.offsets[domain] + node
    }

    pub fn domain_slice<'a, T>(&self, values: &'a [T], domain: usize) -> &'a [T] {
        &values[self.offsets[domain]..self.offsets[domain + 1]]
    }

    /// Index of the node at infinity.
    pub fn infinity_index(&self) -> usize {
        self.offsets[self.domains.len() - 1] + self.layout.compact_n / 2
    }

    /// Node coordinates in storage order (infinity reported as `+inf`).
    pub fn coords(&self) -> Vec<f64> {
        self.domains.iter().flat_map(|d| d.coords.iter().copied()).collect()
    }

    /// Samples `f(x)` on every stored node; the node at infinity gets
    /// `f(+inf)`.
    pub fn sample<F: Fn(f64) -> Complex64>(&self, f: F) -> Vec<Complex64> {
        self.coords().into_iter().map(f).collect()
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.len() {
            return Err(Error::LengthMismatch { expected: self.len(), got: len });
        }
        Ok(())
    }

    pub fn apply_dx(&self, u: &[Complex64]) -> Result<Vec<Complex64>> {
        self.check_len(u.len())?;
        let mut out = vec![Complex64::new(0.0, 0.0); u.len()];
        for (d, dom) in self.domains.iter().enumerate() {
            let r = self.offsets[d]..self.offsets[d + 1];
            dom.dx.apply_complex_centered(&u[r.clone()], &mut out[r]);
        }
        Ok(out)
    }

    /// Second derivative in `x`; identically zero at the point at infinity.
    pub fn apply_dxx(&self, u: &[Complex64]) -> Result<Vec<Complex64>> {
        self.check_len(u.len())?;
        let mut out = vec![Complex64::new(0.0, 0.0); u.len()];
        self.apply_dxx_into(u, &mut out);
        Ok(out)
    }

    pub(crate) fn apply_dxx_into(&self, u: &[Complex64], out: &mut [Complex64]) {
        for (d, dom) in self.domains.iter().enumerate() {
            let r = self.offsets[d]..self.offsets[d + 1];
            dom.dxx.apply_complex_centered(&u[r.clone()], &mut out[r]);
        }
    }

    pub fn apply_dxx_state(&self, state: &GlobalState) -> Result<GlobalState> {
        Ok(GlobalState { values: self.apply_dxx(&state.values)?, time: state.time })
    }

    /// Clenshaw–Curtis quadrature of nodal values over the whole line.
    ///
    /// Fails with [`Error::Undefined`] when the integrand does not vanish at
    /// infinity.
    pub fn integrate(&self, f: &[f64]) -> Result<f64> {
        self.check_len(f.len())?;
        let mut total = 0.0;
        for (d, dom) in self.domains.iter().enumerate() {
            total += dom.integrate(&f[self.offsets[d]..self.offsets[d + 1]])?;
        }
        Ok(total)
    }

    pub fn interface_jumps(&self, u: &[Complex64]) -> Result<InterfaceJumps> {
        self.check_len(u.len())?;
        let mut value = Vec::new();
        let mut derivative = Vec::new();
        for itf in &self.interfaces {
            let (dl, jl) = itf.left;
            let (dr, jr) = itf.right;
            let ul = u[self.global_index(dl, jl)];
            let ur = u[self.global_index(dr, jr)];
            value.push((ul - ur).norm());
            let gl = self.domains[dl].dx.row_dot_complex(jl, self.domain_slice(u, dl));
            let gr = self.domains[dr].dx.row_dot_complex(jr, self.domain_slice(u, dr));
            derivative.push((gl - gr).norm());
        }
        Ok(InterfaceJumps { value, derivative })
    }

    /// Sparse rows of the interface conditions: `(row, [(column, coefficient)])`.
    ///
    /// The left node of each interface carries value continuity and the right
    /// node carries continuity of the first derivative.
    pub(crate) fn constraint_rows(&self) -> Vec<(usize, Vec<(usize, f64)>)> {
        let mut rows = Vec::with_capacity(2 * self.interfaces.len());
        for itf in &self.interfaces {
            let (dl, jl) = itf.left;
            let (dr, jr) = itf.right;
            let gl = self.global_index(dl, jl);
            let gr = self.global_index(dr, jr);
            rows.push((gl, vec![(gl, 1.0), (gr, -1.0)]));
            let mut coeffs = Vec::new();
            for (k, &a) in self.domains[dl].dx.row(jl).iter().enumerate() {
                coeffs.push((self.offsets[dl] + k, a));
            }
            for (k, &a) in self.domains[dr].dx.row(jr).iter().enumerate() {
                coeffs.push((self.offsets[dr] + k, -a));
            }
            rows.push((gr, coeffs));
        }
        rows
    }

    /// Pairs of rows in the ascending physical ordering: `(storage index, x)`.
    /// The point at infinity appears first as `-inf` and last as `+inf`.
    pub fn physical_order(&self) -> &[(usize, f64)] {
        &self.physical
    }

    pub fn physical_coords(&self) -> Vec<f64> {
        self.physical.iter().map(|&(_, x)| x).collect()
    }

    pub fn to_physical(&self, u: &[Complex64]) -> Result<Vec<Complex64>> {
        self.check_len(u.len())?;
        Ok(self.physical.iter().map(|&(g, _)| u[g]).collect())
    }

    /// Inverse of [`to_physical`](Self::to_physical); duplicated interface
    /// nodes are refilled from their partner.
    pub fn from_physical(&self, values: &[Complex64]) -> Result<Vec<Complex64>> {
        if values.len() != self.physical.len() {
            return Err(Error::LengthMismatch { expected: self.physical.len(), got: values.len() });
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.len()];
        for (&(g, _), &v) in self.physical.iter().zip(values) {
            out[g] = v;
        }
        for itf in &self.interfaces {
            let gl = self.global_index(itf.left.0, itf.left.1);
            let gr = self.global_index(itf.right.0, itf.right.1);
            if itf.left.0 == self.domains.len() - 1 {
                out[gl] = out[gr];
            } else {
                out[gr] = out[gl];
            }
        }
        Ok(out)
    }

    /// Storage index of the mirror node `x ↦ -x` for every stored node.
    pub fn mirror_index(&self) -> Result<Vec<usize>> {
        if !self.layout.is_symmetric() {
            return Err(Error::GridMismatch("layout is not symmetric under x -> -x".into()));
        }
        let nd = self.domains.len();
        let nf = nd - 1;
        let mut out = Vec::with_capacity(self.len());
        for (d, dom) in self.domains.iter().enumerate() {
            let md = if d == nf { nf } else { nf - 1 - d };
            for j in 0..=dom.n {
                out.push(self.offsets[md] + dom.n - j);
            }
        }
        Ok(out)
    }

    /// Chebyshev coefficient magnitudes of each domain in its local variable.
    pub fn chebyshev_coefficients(&self, u: &[Complex64]) -> Result<Vec<(String, Vec<f64>)>> {
        self.check_len(u.len())?;
        Ok(self
            .domains
            .iter()
            .enumerate()
            .map(|(d, dom)| {
                let c = chebyshev_coefficients(self.domain_slice(u, d));
                (dom.name.clone(), c.iter().map(|z| z.norm()).collect())
            })
            .collect())
    }

    /// Barycentric interpolation at an arbitrary `x` (including `±inf`).
    pub fn interpolate(&self, u: &[Complex64], x: f64) -> Result<Complex64> {
        self.check_len(u.len())?;
        if x.is_nan() {
            return Err(Error::InvalidParameter("cannot interpolate at NaN".into()));
        }
        for (d, dom) in self.domains.iter().enumerate() {
            if let Some(xi) = dom.local_coordinate(x) {
                return Ok(barycentric_eval(&dom.local_nodes, &dom.bary_weights, self.domain_slice(u, d), xi));
            }
        }
        Err(Error::InvalidParameter(format!("{x} is outside the grid")))
    }

    pub fn is_compact_domain(&self, domain: usize) -> bool {
        self.domains[domain].is_compact()
    }
}

impl SpectralGrid for MultiDomainGrid {
    fn node_count(&self) -> usize {
        self.len()
    }

    fn node_coords(&self) -> Vec<f64> {
        self.coords()
    }

    fn derivative(&self, u: &[Complex64]) -> Result<Vec<Complex64>> {
        self.apply_dx(u)
    }

    /// Interface nodes are stored twice but each domain integrates only its
    /// own nodes, so nothing is counted twice.
    fn quadrature(&self, f: &[f64]) -> Result<f64> {
        self.integrate(f)
    }

    fn mirror_nodes(&self) -> Result<Vec<usize>> {
        self.mirror_index()
    }
}
