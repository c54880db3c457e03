//! Six-dimensional tensor-product and randomized-QMC integration.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::exec::{map_indexed, Execution};
use crate::quad::rules::Rule1D;
use crate::quad::sobol::{digital_shifts, to_unit, Sobol, SOBOL_DIM};
use crate::{c64, Complex};

/// An integrand of the form `prod_i F_i(x_i) * K(sum_i g_i(x_i))`.
pub trait CoupledIntegrand: Sync {
    /// `F_axis(x)`, excluding the rule weight; `comp` is the node complement.
    fn factor(&self, axis: usize, x: f64, comp: f64) -> Result<Complex>;
    /// `g_axis(x)`.
    fn log_term(&self, axis: usize, x: f64) -> f64;
    /// `K(s)`.
    fn coupling(&self, s: f64) -> Complex;
}

/// A function on the open unit cube `(0, 1)^6`.
pub trait CubeIntegrand: Sync {
    fn eval(&self, u: &[f64; SOBOL_DIM]) -> Result<Complex>;
}

/// Per-axis nodes whose weighted factor is below this fraction of the
/// axis maximum are dropped (the coupling grows at most polynomially in the
/// log terms).
const PRUNE: f64 = 1e-18;

struct AxisTable {
    wf: Vec<Complex>,
    g: Vec<f64>,
    nodes: Vec<f64>,
}

fn axis_table<F: CoupledIntegrand>(f: &F, axis: usize, rule: &Rule1D) -> Result<AxisTable> {
    let mut raw = Vec::with_capacity(rule.len());
    for i in 0..rule.len() {
        let x = rule.nodes[i];
        let v = f.factor(axis, x, rule.complements[i])? * rule.weights[i];
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::NonFinite {
                function: "integrate_6d_tensor",
                location: format!("axis {axis} node {x:e}"),
            });
        }
        raw.push((v, f.log_term(axis, x), x));
    }
    let max = raw.iter().map(|r| r.0.norm()).fold(0.0, f64::max);
    let mut t = AxisTable {
        wf: Vec::new(),
        g: Vec::new(),
        nodes: Vec::new(),
    };
    for (v, g, x) in raw {
        if v.norm() > PRUNE * max {
            t.wf.push(v);
            t.g.push(g);
            t.nodes.push(x);
        }
    }
    Ok(t)
}

/// Tensor-product rule, one `Rule1D` per axis. Deterministic: the outer axis
/// is split into tasks whose partial sums are added in index order.
pub fn integrate_6d_tensor<F: CoupledIntegrand>(
    f: &F,
    rules: &[Rule1D; 6],
    exec: Execution,
) -> Result<Complex> {
    let tables: Vec<AxisTable> = (0..6)
        .map(|a| axis_table(f, a, &rules[a]))
        .collect::<Result<_>>()?;
    let pair = |a: usize, b: usize| -> Vec<(Complex, f64)> {
        let mut out = Vec::with_capacity(tables[a].wf.len() * tables[b].wf.len());
        for i in 0..tables[a].wf.len() {
            for j in 0..tables[b].wf.len() {
                out.push((tables[a].wf[i] * tables[b].wf[j], tables[a].g[i] + tables[b].g[j]));
            }
        }
        out
    };
    let p23 = pair(2, 3);
    let p45 = pair(4, 5);
    let (t0, t1) = (&tables[0], &tables[1]);

    let partials = map_indexed(exec, t0.wf.len(), |i0| -> Result<Complex> {
        let mut acc = c64(0.0, 0.0);
        for i1 in 0..t1.wf.len() {
            let s01 = t0.g[i0] + t1.g[i1];
            let mut inner01 = c64(0.0, 0.0);
            for &(w23, g23) in &p23 {
                let s = s01 + g23;
                let mut inner = c64(0.0, 0.0);
                for &(w45, g45) in &p45 {
                    inner += w45 * f.coupling(s + g45);
                }
                inner01 += w23 * inner;
            }
            if !(inner01.re.is_finite() && inner01.im.is_finite()) {
                return Err(Error::NonFinite {
                    function: "integrate_6d_tensor",
                    location: format!("x = {:e}, y = {:e}", t0.nodes[i0], t1.nodes[i1]),
                });
            }
            acc += t0.wf[i0] * t1.wf[i1] * inner01;
        }
        Ok(acc)
    });
    let mut total = c64(0.0, 0.0);
    for p in partials {
        total += p?;
    }
    Ok(total)
}

/// Sobol sampling plan.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QmcSpec {
    pub dimension: usize,
    /// Total points over all replicates; a power of two, at least `2^10`.
    pub count: u64,
    pub shift_seed: u64,
}

pub const QMC_REPLICATES: usize = 8;
const QMC_BLOCK: u64 = 4096;

impl QmcSpec {
    pub fn new(count: u64, shift_seed: u64) -> Result<Self> {
        let spec = Self {
            dimension: SOBOL_DIM,
            count,
            shift_seed,
        };
        spec.check()?;
        Ok(spec)
    }

    fn check(&self) -> Result<()> {
        if self.dimension != SOBOL_DIM {
            return Err(domain("QmcSpec", format!("dimension {} != 6", self.dimension)));
        }
        if !self.count.is_power_of_two() || self.count < 1 << 10 || self.count > 1 << 40 {
            return Err(domain(
                "QmcSpec",
                format!("count {} must be a power of two in [2^10, 2^40]", self.count),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QmcEstimate {
    pub value: Complex,
    /// Standard error of the mean over the digital-shift replicates.
    pub stderr: f64,
    pub replicates: Vec<Complex>,
}

/// Randomized QMC over `(0,1)^6`: 8 digitally shifted copies of the first
/// `count / 8` Sobol points. Bit-for-bit reproducible for a fixed spec,
/// independent of the execution mode.
pub fn integrate_6d_qmc<F: CubeIntegrand>(
    f: &F,
    spec: &QmcSpec,
    exec: Execution,
) -> Result<QmcEstimate> {
    spec.check()?;
    let per = spec.count / QMC_REPLICATES as u64;
    let block = QMC_BLOCK.min(per);
    let blocks = (per / block) as usize;
    let sobol = Sobol::new();
    let shifts = digital_shifts(spec.shift_seed, QMC_REPLICATES);

    let sums = map_indexed(exec, QMC_REPLICATES * blocks, |job| -> Result<Complex> {
        let (r, b) = (job / blocks, job % blocks);
        let start = b as u64 * block;
        let mut state = sobol.point(start);
        let mut acc = c64(0.0, 0.0);
        for i in start..start + block {
            let u = to_unit(&state, &shifts[r]);
            let v = f.eval(&u)?;
            if !(v.re.is_finite() && v.im.is_finite()) {
                return Err(Error::NonFinite {
                    function: "integrate_6d_qmc",
                    location: format!("u = {u:?}"),
                });
            }
            acc += v;
            sobol.advance(&mut state, i);
        }
        Ok(acc)
    });

    let mut means = vec![c64(0.0, 0.0); QMC_REPLICATES];
    for (job, s) in sums.into_iter().enumerate() {
        means[job / blocks] += s?;
    }
    for m in means.iter_mut() {
        *m /= per as f64;
    }
    let rf = QMC_REPLICATES as f64;
    let value = means.iter().sum::<Complex>() / rf;
    let var = means.iter().map(|m| (m - value).norm_sqr()).sum::<f64>() / (rf - 1.0);
    Ok(QmcEstimate {
        value,
        stderr: (var / rf).sqrt(),
        replicates: means,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::rules::{gauss_laguerre, gauss_legendre, tanh_sinh};

    struct One;
    impl CubeIntegrand for One {
        fn eval(&self, _: &[f64; 6]) -> Result<Complex> {
            Ok(c64(1.0, 0.0))
        }
    }

    #[test]
    fn constant_is_exact() {
        let est = integrate_6d_qmc(&One, &QmcSpec::new(1 << 12, 3).unwrap(), Execution::Parallel)
            .unwrap();
        assert_eq!(est.value, c64(1.0, 0.0));
        assert_eq!(est.stderr, 0.0);
    }

    struct Poly;
    impl CubeIntegrand for Poly {
        fn eval(&self, u: &[f64; 6]) -> Result<Complex> {
            let p: f64 = u.iter().enumerate().map(|(i, x)| (i as f64 + 1.0) * x.powi(i as i32)).product();
            Ok(c64(p, -p))
        }
    }

    #[test]
    fn qmc_smooth_product_and_determinism() {
        // int prod (i+1) x^i = 1
        let spec = QmcSpec::new(1 << 16, 11).unwrap();
        let a = integrate_6d_qmc(&Poly, &spec, Execution::Parallel).unwrap();
        let b = integrate_6d_qmc(&Poly, &spec, Execution::Sequential).unwrap();
        assert_eq!(a, b);
        assert!((a.value - c64(1.0, -1.0)).norm() < 5.0 * a.stderr.max(1e-6), "{a:?}");
        assert!(a.stderr < 1e-2);
    }

    #[test]
    fn spec_validation() {
        assert!(QmcSpec::new(1000, 0).is_err());
        assert!(QmcSpec::new(1 << 9, 0).is_err());
        let mut s = QmcSpec::new(1 << 10, 0).unwrap();
        s.dimension = 5;
        assert!(integrate_6d_qmc(&One, &s, Execution::Sequential).is_err());
    }

    /// Separable: K = 1, F_i(x) = x^i (cos / sin by axis parity).
    struct Separable;
    impl CoupledIntegrand for Separable {
        fn factor(&self, axis: usize, x: f64, _: f64) -> Result<Complex> {
            Ok(c64(x.powi(axis as i32), 0.1 * axis as f64))
        }
        fn log_term(&self, _: usize, x: f64) -> f64 {
            x
        }
        fn coupling(&self, _: f64) -> Complex {
            c64(1.0, 0.0)
        }
    }

    fn rules() -> [Rule1D; 6] {
        let gl = gauss_legendre(7).unwrap().mapped(0.0, 1.0);
        [
            tanh_sinh(3).unwrap(),
            gl.clone(),
            gauss_laguerre(5, 0.5).unwrap(),
            gl,
            gauss_laguerre(4, 0.0).unwrap(),
            tanh_sinh(2).unwrap(),
        ]
    }

    #[test]
    fn separable_equals_product_of_1d() {
        let rs = rules();
        let got = integrate_6d_tensor(&Separable, &rs, Execution::Parallel).unwrap();
        let mut want = c64(1.0, 0.0);
        for (a, r) in rs.iter().enumerate() {
            want *= r.integrate_complex(|x, c| Separable.factor(a, x, c).unwrap());
        }
        assert!((got - want).norm() <= 1e-13 * want.norm(), "{got} vs {want}");
        let seq = integrate_6d_tensor(&Separable, &rs, Execution::Sequential).unwrap();
        assert_eq!(got, seq);
    }

    struct Coupled;
    impl CoupledIntegrand for Coupled {
        fn factor(&self, _: usize, _: f64, _: f64) -> Result<Complex> {
            Ok(c64(1.0, 0.0))
        }
        fn log_term(&self, axis: usize, x: f64) -> f64 {
            if axis < 2 { x } else { 0.0 }
        }
        fn coupling(&self, s: f64) -> Complex {
            c64(s * s, 0.0)
        }
    }

    #[test]
    fn coupled_polynomial() {
        // over [0,1]^2 x (masses of the other axes): E[(x+y)^2] = 7/6
        let gl = gauss_legendre(4).unwrap().mapped(0.0, 1.0);
        let one = gauss_laguerre(3, 0.0).unwrap();
        let rs = [gl.clone(), gl, one.clone(), one.clone(), one.clone(), one];
        let got = integrate_6d_tensor(&Coupled, &rs, Execution::Parallel).unwrap();
        assert!((got.re - 7.0 / 6.0).abs() < 1e-14, "{got}");
    }

    struct Blowup;
    impl CoupledIntegrand for Blowup {
        fn factor(&self, _: usize, _: f64, _: f64) -> Result<Complex> {
            Ok(c64(1.0, 0.0))
        }
        fn log_term(&self, _: usize, _: f64) -> f64 {
            0.0
        }
        fn coupling(&self, _: f64) -> Complex {
            c64(f64::INFINITY, 0.0)
        }
    }

    #[test]
    fn non_finite_reported_with_coordinates() {
        match integrate_6d_tensor(&Blowup, &rules(), Execution::Sequential) {
            Err(Error::NonFinite { location, .. }) => assert!(location.contains("x =")),
            other => panic!("{other:?}"),
        }
    }
}
