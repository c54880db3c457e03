//! One-dimensional node/weight rules.

use std::f64::consts::PI;

use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::Complex;

pub const MAX_TANH_SINH_LEVEL: u32 = 12;
pub const MAX_GAUSS_NODES: usize = 512;
pub const MAX_LOG_LAGUERRE_NODES: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RuleKind {
    /// On `[0, 1]`, step `2^-level`.
    TanhSinh { level: u32 },
    /// On `[-1, 1]` unless remapped.
    GaussLegendre { lo: f64, hi: f64 },
    /// Weight `x^alpha e^-x` on `(0, inf)`, folded into the weights.
    GaussLaguerre { alpha: f64 },
    /// Same weight as `GaussLaguerre`, but Gaussian in `s = ln x`; exact for
    /// polynomials in `ln x` rather than in `x`.
    LogLaguerre { alpha: f64 },
}

/// Nodes, weights and node complements (`hi - x` on finite intervals,
/// unused on half-lines). Complements near the upper endpoint are computed
/// directly rather than by subtraction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Rule1D {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub complements: Vec<f64>,
    pub kind: RuleKind,
}

impl Rule1D {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }

    pub fn integrate_complex<F: Fn(f64, f64) -> Complex>(&self, f: F) -> Complex {
        self.nodes
            .iter()
            .zip(&self.complements)
            .zip(&self.weights)
            .map(|((&x, &c), &w)| f(x, c) * w)
            .sum()
    }

    /// Sum of weights (the rule's mass).
    pub fn mass(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// Affine image of a Gauss-Legendre rule on `[lo, hi]`.
    pub fn mapped(&self, lo: f64, hi: f64) -> Self {
        let (a, b) = match self.kind {
            RuleKind::GaussLegendre { lo, hi } => (lo, hi),
            RuleKind::TanhSinh { .. } => (0.0, 1.0),
            _ => return self.clone(),
        };
        let scale = (hi - lo) / (b - a);
        Self {
            nodes: self.nodes.iter().map(|x| lo + (x - a) * scale).collect(),
            weights: self.weights.iter().map(|w| w * scale).collect(),
            complements: self.complements.iter().map(|c| c * scale).collect(),
            kind: match self.kind {
                RuleKind::GaussLegendre { .. } => RuleKind::GaussLegendre { lo, hi },
                k => k,
            },
        }
    }
}

/// Tanh-sinh rule on `[0, 1]`: `x = 1/(1 + exp(-pi sinh t))`, `t = j h`,
/// `h = 2^-level`, truncated where nodes or complements underflow.
pub fn tanh_sinh(level: u32) -> Result<Rule1D> {
    if level > MAX_TANH_SINH_LEVEL {
        return Err(domain("tanh_sinh", format!("level {level} > {MAX_TANH_SINH_LEVEL}")));
    }
    let h = 0.5f64.powi(level as i32);
    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    let mut complements = Vec::new();
    let jmax = (6.2 / h).ceil() as i64;
    for j in -jmax..=jmax {
        let t = j as f64 * h;
        let e = (-PI * t.sinh()).exp();
        let x = 1.0 / (1.0 + e);
        let c = e / (1.0 + e);
        let w = h * PI * t.cosh() * x * c;
        if x > 0.0 && c > 0.0 && w > 0.0 && w.is_finite() {
            nodes.push(x);
            complements.push(c);
            weights.push(w);
        }
    }
    Ok(Rule1D {
        nodes,
        weights,
        complements,
        kind: RuleKind::TanhSinh { level },
    })
}

/// Tanh-sinh integral on `[0, 1]` with the difference to the next-coarser
/// level as error estimate. `f` gets `(x, 1 - x)`.
pub fn tanh_sinh_estimate<F>(level: u32, f: F) -> Result<(Complex, f64)>
where
    F: Fn(f64, f64) -> Result<Complex>,
{
    if level == 0 || level > MAX_TANH_SINH_LEVEL {
        return Err(domain("tanh_sinh_estimate", format!("level {level} outside 1..=12")));
    }
    let h = 0.5f64.powi(level as i32);
    let jmax = (6.2 / h).ceil() as i64;
    let mut fine = Complex::new(0.0, 0.0);
    let mut coarse = Complex::new(0.0, 0.0);
    for j in -jmax..=jmax {
        let t = j as f64 * h;
        let e = (-PI * t.sinh()).exp();
        let x = 1.0 / (1.0 + e);
        let c = e / (1.0 + e);
        let w = PI * t.cosh() * x * c;
        if !(x > 0.0 && c > 0.0 && w > 0.0 && w.is_finite()) {
            continue;
        }
        let term = f(x, c)? * w;
        fine += term * h;
        if j % 2 == 0 {
            coarse += term * (2.0 * h);
        }
    }
    Ok((fine, (fine - coarse).norm()))
}

/// Gauss-Legendre on `[-1, 1]` by Newton iteration on `P_n`.
pub fn gauss_legendre(n: usize) -> Result<Rule1D> {
    if n == 0 || n > MAX_GAUSS_NODES {
        return Err(domain("gauss_legendre", format!("n = {n} outside 1..=512")));
    }
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        for _ in 0..100 {
            let (p, d) = legendre_pd(n, x);
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre_pd(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    let complements = nodes.iter().map(|x| 1.0 - x).collect();
    Ok(Rule1D {
        nodes,
        weights,
        complements,
        kind: RuleKind::GaussLegendre { lo: -1.0, hi: 1.0 },
    })
}

fn legendre_pd(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Generalized Gauss-Laguerre: `int_0^inf x^alpha e^-x f(x) dx ~ sum w_i f(x_i)`.
///
/// Golub-Welsch for the nodes, Newton polish, weights from the Christoffel
/// function of the orthonormal polynomials.
pub fn gauss_laguerre(n: usize, alpha: f64) -> Result<Rule1D> {
    if n == 0 || n > MAX_GAUSS_NODES {
        return Err(domain("gauss_laguerre", format!("n = {n} outside 1..=512")));
    }
    if !(alpha > -1.0) || !alpha.is_finite() {
        return Err(domain("gauss_laguerre", format!("alpha = {alpha} must exceed -1")));
    }
    let diag: Vec<f64> = (0..n).map(|i| 2.0 * i as f64 + alpha + 1.0).collect();
    let off: Vec<f64> = (1..n).map(|i| (i as f64 * (i as f64 + alpha)).sqrt()).collect();
    let mut nodes = jacobi_eigenvalues(&diag, &off);
    let log_mu0 = ln_gamma_pos(alpha + 1.0)?;
    let mut weights = Vec::with_capacity(n);
    for x in nodes.iter_mut() {
        for _ in 0..3 {
            let (p, dp, _) = orthonormal_eval(&diag, &off, *x);
            if dp == 0.0 {
                break;
            }
            let step = p / dp;
            let next = *x - step;
            if next > 0.0 {
                *x = next;
            }
        }
        let (_, _, log_sum) = orthonormal_eval(&diag, &off, *x);
        // p_0 = 1/sqrt(mu0) so the Christoffel sum carries a 1/mu0 factor
        weights.push((log_mu0 - log_sum).exp());
    }
    let complements = vec![f64::INFINITY; n];
    Ok(Rule1D {
        nodes,
        weights,
        complements,
        kind: RuleKind::GaussLaguerre { alpha },
    })
}

fn ln_gamma_pos(x: f64) -> Result<f64> {
    Ok(crate::specialfn::log_gamma(Complex::new(x, 0.0))?.re)
}

/// Sorted eigenvalues of the symmetric tridiagonal matrix.
fn jacobi_eigenvalues(diag: &[f64], off: &[f64]) -> Vec<f64> {
    let (vals, _) = jacobi_eigen(diag, off);
    vals
}

/// Sorted eigenvalues and squared first components of the eigenvectors.
fn jacobi_eigen(diag: &[f64], off: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let n = diag.len();
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = diag[i];
        if i + 1 < n {
            m[(i, i + 1)] = off[i];
            m[(i + 1, i)] = off[i];
        }
    }
    let eig = SymmetricEigen::new(m);
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|j| (eig.eigenvalues[j], eig.eigenvectors[(0, j)].powi(2)))
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    pairs.into_iter().unzip()
}

/// Orthonormal polynomials of the Jacobi matrix at `x` with `p_0 = 1`:
/// returns `(p_n, p_n', ln sum_{j<n} p_j^2)`, rescaled internally to avoid
/// overflow (the ratio `p_n / p_n'` is scale-free).
fn orthonormal_eval(diag: &[f64], off: &[f64], x: f64) -> (f64, f64, f64) {
    let n = diag.len();
    let (mut p_prev, mut p) = (0.0f64, 1.0f64);
    let (mut d_prev, mut d) = (0.0f64, 0.0f64);
    let mut sum = 0.0f64;
    let mut log_scale = 0.0f64;
    for j in 0..n {
        sum += p * p;
        let b_j = if j == 0 { 0.0 } else { off[j - 1] };
        let b_next = if j + 1 < n { off[j] } else { 1.0 };
        let p_next = ((x - diag[j]) * p - b_j * p_prev) / b_next;
        let d_next = ((x - diag[j]) * d + p - b_j * d_prev) / b_next;
        p_prev = p;
        p = p_next;
        d_prev = d;
        d = d_next;
        let mag = p.abs().max(p_prev.abs());
        if mag > 1e100 {
            let f = 1.0 / mag;
            p *= f;
            p_prev *= f;
            d *= f;
            d_prev *= f;
            sum *= f * f;
            log_scale -= mag.ln();
        }
    }
    // actual sum = sum * exp(-2 log_scale)
    (p, d, sum.ln() - 2.0 * log_scale)
}

/// Gauss rule for `int_0^inf x^alpha e^-x g(x) dx` that is exact for
/// polynomials of degree `<= 2n-1` in `s = ln x`.
///
/// The measure `exp((alpha+1)s - e^s) ds` is discretized (composite
/// Gauss-Legendre on `[-30, 4.5]` plus a Laguerre tail below `-30`), reduced
/// to a Jacobi matrix by Stieltjes' procedure with full reorthogonalization,
/// then diagonalized.
pub fn log_laguerre(n: usize, alpha: f64) -> Result<Rule1D> {
    if n == 0 || n > MAX_LOG_LAGUERRE_NODES {
        return Err(domain("log_laguerre", format!("n = {n} outside 1..=64")));
    }
    if !(alpha > -1.0) || !alpha.is_finite() {
        return Err(domain("log_laguerre", format!("alpha = {alpha} must exceed -1")));
    }
    let c = alpha + 1.0;
    let (s, w) = discretized_log_measure(c)?;
    let mu0: f64 = w.iter().sum();

    // Stieltjes with reorthogonalization on the discrete inner product.
    let npts = s.len();
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    let mut diag = Vec::with_capacity(n);
    let mut off = Vec::with_capacity(n);
    basis.push(vec![1.0 / mu0.sqrt(); npts]);
    for k in 0..n {
        let q = &basis[k];
        let a: f64 = (0..npts).map(|i| w[i] * s[i] * q[i] * q[i]).sum();
        diag.push(a);
        if k + 1 == n {
            break;
        }
        let mut r: Vec<f64> = (0..npts).map(|i| s[i] * q[i]).collect();
        for _ in 0..2 {
            for prev in &basis {
                let proj: f64 = (0..npts).map(|i| w[i] * r[i] * prev[i]).sum();
                for i in 0..npts {
                    r[i] -= proj * prev[i];
                }
            }
        }
        let norm = (0..npts).map(|i| w[i] * r[i] * r[i]).sum::<f64>().sqrt();
        off.push(norm);
        basis.push(r.into_iter().map(|x| x / norm).collect());
    }
    let (vals, v0) = jacobi_eigen(&diag, &off);
    let nodes: Vec<f64> = vals.iter().map(|s| s.exp()).collect();
    let weights: Vec<f64> = v0.iter().map(|v| v * mu0).collect();
    let complements = vec![f64::INFINITY; n];
    Ok(Rule1D {
        nodes,
        weights,
        complements,
        kind: RuleKind::LogLaguerre { alpha },
    })
}

fn discretized_log_measure(c: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    const S_LO: f64 = -30.0;
    const S_HI: f64 = 4.5;
    const PANEL: f64 = 0.25;
    let gl = gauss_legendre(12)?;
    let panels = ((S_HI - S_LO) / PANEL).round() as usize;
    let mut s = Vec::new();
    let mut w = Vec::new();
    for p in 0..panels {
        let lo = S_LO + p as f64 * PANEL;
        let rule = gl.mapped(lo, lo + PANEL);
        for (&x, &wt) in rule.nodes.iter().zip(&rule.weights) {
            let dens = (c * x - x.exp()).exp();
            s.push(x);
            w.push(wt * dens);
        }
    }
    // below S_LO: e^{-e^s} = 1 to rounding, so the density is e^{c s};
    // with r = -c (s - S_LO) this is e^{c S_LO} e^{-r} dr / c.
    let tail = gauss_laguerre(48, 0.0)?;
    let scale = (c * S_LO).exp() / c;
    for (&r, &wt) in tail.nodes.iter().zip(&tail.weights) {
        s.push(S_LO - r / c);
        w.push(wt * scale);
    }
    Ok((s, w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jets::jet_of_gamma;
    use crate::specialfn::gamma_real;

    #[test]
    fn legendre_odd_function() {
        let r = gauss_legendre(2).unwrap();
        assert!(r.integrate(|x| x.powi(3)).abs() < 1e-16);
    }

    #[test]
    fn legendre_moments() {
        for n in [1usize, 5, 20, 64, 200] {
            let r = gauss_legendre(n).unwrap();
            for j in 0..(2 * n).min(40) {
                let got = r.integrate(|x| x.powi(j as i32));
                let want = if j % 2 == 0 { 2.0 / (j as f64 + 1.0) } else { 0.0 };
                assert!((got - want).abs() < 1e-13, "n={n} j={j}: {got}");
            }
            assert!(r.weights.iter().all(|&w| w > 0.0));
        }
    }

    #[test]
    fn laguerre_examples() {
        let r = gauss_laguerre(5, 0.0).unwrap();
        assert!((r.mass() - 1.0).abs() < 1e-14);
        let r = gauss_laguerre(16, 0.75).unwrap();
        let want = gamma_real(1.75).unwrap();
        assert!((r.mass() - want).abs() < 1e-13 * want, "{}", r.mass());
        assert!((want - 0.919_062_526_848_883_5).abs() < 1e-14);
    }

    #[test]
    fn laguerre_monomial_moments() {
        for (n, alpha) in [(8usize, 0.0), (16, 0.75), (24, -0.6), (40, 2.3)] {
            let r = gauss_laguerre(n, alpha).unwrap();
            assert!(r.weights.iter().all(|&w| w > 0.0));
            for j in 0..(2 * n) {
                let want = gamma_real(alpha + j as f64 + 1.0).unwrap();
                let got = r.integrate(|x| x.powi(j as i32));
                assert!((got - want).abs() <= 1e-12 * want, "n={n} a={alpha} j={j}");
            }
        }
    }

    #[test]
    fn laguerre_large_n() {
        let r = gauss_laguerre(512, 0.3).unwrap();
        let want = gamma_real(1.3).unwrap();
        assert!((r.mass() - want).abs() < 1e-12 * want);
        assert!(r.integrate(|x| (-x).exp()) - want * 2f64.powf(-1.3) < 1e-12);
    }

    #[test]
    fn tanh_sinh_endpoint_singularities() {
        let r = tanh_sinh(6).unwrap();
        // int x^{-1/2} = 2, int (1-x)^{-0.9} = 10 via complements
        let a = r.integrate(|x| x.powf(-0.5));
        assert!((a - 2.0).abs() < 1e-12, "{a}");
        let b: f64 = r
            .complements
            .iter()
            .zip(&r.weights)
            .map(|(c, w)| w * c.powf(-0.9))
            .sum();
        assert!((b - 10.0).abs() < 1e-9, "{b}");
        let (v, e) = tanh_sinh_estimate(8, |x, _| Ok(Complex::new(x.ln() * x.ln(), 0.0))).unwrap();
        assert!((v.re - 2.0).abs() < 1e-13 && e < 1e-10);
    }

    #[test]
    fn level_checks() {
        assert!(tanh_sinh(13).is_err());
        assert!(gauss_legendre(513).is_err());
        assert!(gauss_laguerre(4, -1.0).is_err());
        assert!(log_laguerre(65, 0.0).is_err());
    }

    #[test]
    fn log_laguerre_log_moments() {
        // int x^alpha e^-x (ln x)^j dx = Gamma^{(j)}(alpha + 1)
        for alpha in [-0.75, 0.0, 0.75, 1.9] {
            let r = log_laguerre(20, alpha).unwrap();
            assert!(r.weights.iter().all(|&w| w > 0.0));
            let jet = jet_of_gamma(Complex::new(alpha + 1.0, 0.0), 10).unwrap();
            for j in 0..=10 {
                let want = jet.derivative(j).re;
                let got = r.integrate(|x| x.ln().powi(j as i32));
                let scale = want.abs().max(1.0);
                assert!((got - want).abs() < 1e-11 * scale, "alpha={alpha} j={j}: {got} vs {want}");
            }
        }
    }

    #[test]
    fn log_laguerre_handles_log_kernel() {
        // int_0^inf e^-x ln(x) sqrt(x) ... compare with a fine Laguerre rule where
        // the integrand is smooth: int x^{1/2} e^-x (1 + ln x)^2 dx
        let r = log_laguerre(24, 0.5).unwrap();
        let jet = jet_of_gamma(Complex::new(1.5, 0.0), 2).unwrap();
        let want = jet.derivative(0).re + 2.0 * jet.derivative(1).re + jet.derivative(2).re;
        let got = r.integrate(|x| (1.0 + x.ln()).powi(2));
        assert!((got - want).abs() < 1e-13 * want.abs().max(1.0));
    }
}
