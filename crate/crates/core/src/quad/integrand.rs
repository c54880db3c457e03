//! The sextuple integrand after `p = e^-L_p`, `q = e^-L_q`, `t = e^-L_t`,
//! `z = e^-L_z`:
//!
//! `x^(m-1) W_v^u(x) y^-m W_nu^mu(y) prod_i L_i^beta_i e^-L_i
//!  * log^k(a x sqrt(L_t L_z) / (y sqrt(L_p L_q)))`
//!
//! with `W_v^u(x) = (1-x^2)^(-u/2) P_v^u(x)`, on `(0,1)^2 x (0,inf)^4`.

use crate::error::{domain, Error, Result};
use crate::legendre::LegendreKernel;
use crate::params::{validate_parameters, ExponentQuad, ParameterSet};
use crate::quad::cube::{CoupledIntegrand, CubeIntegrand};
use crate::quad::rules::{log_laguerre, tanh_sinh, Rule1D};
use crate::specialfn::cpow;
use crate::{c64, Complex};

#[derive(Debug, Clone, Copy)]
enum Power {
    Int(i32),
    General(Complex),
}

/// Axis order: `x, y, L_p, L_q, L_t, L_z`.
#[derive(Debug, Clone)]
pub struct Integrand6D {
    pub ps: ParameterSet,
    pub exponents: ExponentQuad,
    log_a: Complex,
    kx: LegendreKernel,
    ky: LegendreKernel,
    power: Power,
    /// `(c_i, Re beta_i)` of the log-axis samplers
    samplers: [(f64, f64); 4],
}

/// `log(1/.)` signs of the four log axes in the coupling: `-1/2` for `p, q`,
/// `+1/2` for `t, z`.
const LOG_AXIS_SIGN: [f64; 4] = [-0.5, -0.5, 0.5, 0.5];

impl Integrand6D {
    /// Requires a valid parameter set with every parameter real except `a`,
    /// and a coupling without interior singularities: either integer
    /// `k >= 0`, or `log a` off the real axis (the log argument never
    /// vanishes).
    pub fn new(ps: ParameterSet) -> Result<Self> {
        let outcome = validate_parameters(&ps);
        if !outcome.is_valid() {
            return Err(Error::InvalidArgument(format!(
                "parameters violate {}",
                outcome.names().join(", ")
            )));
        }
        let real_others = [ps.k, ps.m, ps.u, ps.v, ps.mu, ps.nu]
            .iter()
            .all(|z| z.im == 0.0);
        if !real_others {
            return Err(Error::Unsupported {
                function: "Integrand6D",
                detail: "direct quadrature needs real k, m, u, v, mu, nu".into(),
            });
        }
        let log_a = ps.a.ln();
        let power = match ps.integer_k() {
            Some(k) if k <= 64 => Power::Int(k as i32),
            _ => {
                if log_a.im == 0.0 {
                    return Err(Error::Unsupported {
                        function: "Integrand6D",
                        detail: "non-integer or negative k with a > 0 has an interior log singularity"
                            .into(),
                    });
                }
                if ps.k.re.fract() == 0.0 && ps.k.re.abs() <= 64.0 {
                    Power::Int(ps.k.re as i32)
                } else {
                    Power::General(ps.k)
                }
            }
        };
        let exponents = ps.exponents();
        let mut samplers = [(0.0, 0.0); 4];
        for (s, b) in samplers.iter_mut().zip(exponents.as_array()) {
            *s = (1.0f64.min(b.re + 1.0), b.re);
        }
        Ok(Self {
            ps,
            exponents,
            log_a,
            kx: LegendreKernel::new(ps.v, ps.u)?,
            ky: LegendreKernel::new(ps.nu, ps.mu)?,
            power,
            samplers,
        })
    }

    /// `(log a + s)^k`.
    pub fn coupling_value(&self, s: f64) -> Complex {
        let base = self.log_a + s;
        match self.power {
            Power::Int(0) => c64(1.0, 0.0),
            Power::Int(k) => base.powi(k),
            Power::General(k) => cpow(base, k),
        }
    }

    /// The full integrand density with respect to `dx dy dL_p dL_q dL_t dL_z`.
    pub fn value(&self, x: f64, y: f64, logs: [f64; 4]) -> Result<Complex> {
        let beta = self.exponents.as_array();
        let mut v = cpow(c64(x, 0.0), self.ps.m - 1.0)
            * self.kx.weighted(x, 1.0 - x)?
            * cpow(c64(y, 0.0), -self.ps.m)
            * self.ky.weighted(y, 1.0 - y)?;
        let mut s = x.ln() - y.ln();
        for i in 0..4 {
            let l = logs[i];
            if !(l > 0.0) {
                return Err(domain("Integrand6D", format!("log variable {l} must be positive")));
            }
            v *= cpow(c64(l, 0.0), beta[i]) * (-l).exp();
            s += LOG_AXIS_SIGN[i] * l.ln();
        }
        Ok(v * self.coupling_value(s))
    }

    /// Per-axis rules for the tensor path: tanh-sinh (level) on `x, y` and
    /// `n`-point log-Laguerre rules with `alpha = Re beta` on the log axes.
    pub fn tensor_rules(&self, level: u32, n: usize) -> Result<[Rule1D; 6]> {
        let ts = tanh_sinh(level)?;
        let b = self.exponents.as_array();
        Ok([
            ts.clone(),
            ts,
            log_laguerre(n, b[0].re)?,
            log_laguerre(n, b[1].re)?,
            log_laguerre(n, b[2].re)?,
            log_laguerre(n, b[3].re)?,
        ])
    }
}

impl CoupledIntegrand for Integrand6D {
    fn factor(&self, axis: usize, x: f64, comp: f64) -> Result<Complex> {
        match axis {
            0 => Ok(cpow(c64(x, 0.0), self.ps.m - 1.0) * self.kx.weighted(x, comp)?),
            1 => Ok(cpow(c64(x, 0.0), -self.ps.m) * self.ky.weighted(x, comp)?),
            // the rule weight carries L^Re(beta) e^-L
            a => {
                let b = self.exponents.as_array()[a - 2];
                Ok(cpow(c64(x, 0.0), c64(0.0, b.im)))
            }
        }
    }

    fn log_term(&self, axis: usize, x: f64) -> f64 {
        match axis {
            0 => x.ln(),
            1 => -x.ln(),
            a => LOG_AXIS_SIGN[a - 2] * x.ln(),
        }
    }

    fn coupling(&self, s: f64) -> Complex {
        self.coupling_value(s)
    }
}

/// Importance-sampled map from the unit cube:
/// `x = U^(1/m)`, `y = U^(1/(1-m))` (real parts), and on each log axis the
/// Weibull inverse `L = (-ln U)^(1/c)`, `c = min(1, Re beta + 1)`, whose
/// weight `L^(beta+1-c) e^(L^c - L) / c` is bounded for `Re beta < 0` and
/// a power of `L` otherwise.
impl CubeIntegrand for Integrand6D {
    fn eval(&self, u: &[f64; 6]) -> Result<Complex> {
        let m = self.ps.m;
        let mr = m.re;

        let lx = u[0].ln() / mr;
        let x = lx.exp();
        let cx = -lx.exp_m1();
        let ly = u[1].ln() / (1.0 - mr);
        let y = ly.exp();
        let cy = -ly.exp_m1();
        if !(x > 0.0 && cx > 0.0 && y > 0.0 && cy > 0.0) {
            return Ok(c64(0.0, 0.0));
        }
        let mut v = self.kx.weighted(x, cx)? * self.ky.weighted(y, cy)? / (mr * (1.0 - mr));
        if m.im != 0.0 {
            v *= c64(0.0, m.im * (lx - ly)).exp();
        }
        let mut s = lx - ly;
        let beta = self.exponents.as_array();
        for i in 0..4 {
            let (c, b) = self.samplers[i];
            let e = -u[2 + i].ln();
            let ln_l = e.ln() / c;
            let l = ln_l.exp();
            let log_w = (b + 1.0 - c) * ln_l + e - l - c.ln();
            let mut w = c64(log_w.exp(), 0.0);
            if beta[i].im != 0.0 {
                w *= c64(0.0, beta[i].im * ln_l).exp();
            }
            v *= w;
            s += LOG_AXIS_SIGN[i] * ln_l;
        }
        if v == c64(0.0, 0.0) {
            return Ok(v);
        }
        Ok(v * self.coupling_value(s))
    }
}
