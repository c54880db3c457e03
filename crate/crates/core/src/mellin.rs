//! Mellin transform of the weighted Legendre kernel on `(0, 1)` and the
//! log-power moment.
//!
//! `M(s; u, v) = int_0^1 x^(s-1) (1-x^2)^(-u/2) P_v^u(x) dx
//!            = sqrt(pi) 2^(u-s) Gamma(s) / [Gamma((s-u+v)/2 + 1) Gamma((s-u-v+1)/2)]`

use std::f64::consts::{LN_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{domain, finite, Error, Result};
use crate::jets::{jet_of_log_gamma, Jet};
use crate::legendre::LegendreKernel;
use crate::quad::tanh_sinh_estimate;
use crate::specialfn::{cpow, gamma, is_nonpositive_integer, recip_gamma};
use crate::{c64, Complex};

/// Default tanh-sinh level of the quadrature oracle.
pub const MELLIN_QUAD_LEVEL: u32 = 10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MellinArgs {
    pub s: Complex,
    pub u: Complex,
    pub v: Complex,
}

impl MellinArgs {
    pub fn new(s: Complex, u: Complex, v: Complex) -> Self {
        Self { s, u, v }
    }

    /// Arguments of the two denominator gammas.
    fn denominators(&self) -> (Complex, Complex) {
        let Self { s, u, v } = *self;
        ((s - u + v) / 2.0 + 1.0, (s - u - v + 1.0) / 2.0)
    }

    pub fn check(&self) -> Result<()> {
        for z in [self.s, self.u, self.v] {
            if !(z.re.is_finite() && z.im.is_finite()) {
                return Err(domain("mellin", "non-finite argument"));
            }
        }
        if is_nonpositive_integer(self.s) {
            return Err(Error::Pole {
                function: "mellin_legendre_closed",
                at: self.s,
            });
        }
        // integrability at x = 0 and x = 1; the gamma quotient is entire
        // in the denominator arguments
        let mut bad = Vec::new();
        if !(self.s.re > 0.0) {
            bad.push("Re(s)>0");
        }
        if !(self.u.re < 1.0) {
            bad.push("Re(u)<1");
        }
        if bad.is_empty() {
            Ok(())
        } else {
            Err(domain("mellin", format!("violates {}", bad.join(", "))))
        }
    }
}

pub fn mellin_legendre_closed(s: Complex, u: Complex, v: Complex) -> Result<Complex> {
    let args = MellinArgs::new(s, u, v);
    args.check()?;
    let (t, z) = args.denominators();
    let value = PI.sqrt() * cpow(c64(2.0, 0.0), u - s) * gamma(s)? * recip_gamma(t)? * recip_gamma(z)?;
    finite("mellin_legendre_closed", value)
}

/// Jet of `w -> M(s0 + c w; u, v)`, built from log-gamma jets.
pub fn mellin_jet(s0: Complex, c: Complex, u: Complex, v: Complex, order: usize) -> Result<Jet> {
    let args = MellinArgs::new(s0, u, v);
    args.check()?;
    let (t, z) = args.denominators();
    let half = c / 2.0;
    let log = &(&jet_of_log_gamma(s0, c, order)? - &jet_of_log_gamma(t, half, order)?)
        - &jet_of_log_gamma(z, half, order)?;
    let linear = Jet::linear(
        c64(0.5 * PI.ln(), 0.0) + (u - s0) * LN_2,
        -c * LN_2,
        order,
    );
    Ok((&log + &linear).exp())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureValue {
    pub value: Complex,
    /// `|level - (level - 1)|` difference
    pub err: f64,
}

/// Relative error estimate above which the oracle reports non-convergence.
const QUAD_ACCEPT: f64 = 1e-6;

/// Tanh-sinh quadrature of the Mellin integral at `level`.
pub fn mellin_legendre_quadrature_at(
    s: Complex,
    u: Complex,
    v: Complex,
    level: u32,
) -> Result<QuadratureValue> {
    MellinArgs::new(s, u, v).check()?;
    let kernel = LegendreKernel::new(v, u)?;
    let (value, err) = tanh_sinh_estimate(level, |x, comp| {
        Ok(cpow(c64(x, 0.0), s - 1.0) * kernel.weighted(x, comp)?)
    })?;
    let value = finite("mellin_legendre_quadrature", value)?;
    if err > QUAD_ACCEPT * value.norm().max(1e-300) {
        return Err(Error::NonConvergence {
            function: "mellin_legendre_quadrature",
            iterations: level as usize,
        });
    }
    Ok(QuadratureValue { value, err })
}

pub fn mellin_legendre_quadrature(s: Complex, u: Complex, v: Complex) -> Result<QuadratureValue> {
    mellin_legendre_quadrature_at(s, u, v, MELLIN_QUAD_LEVEL)
}

/// `int_0^1 log^beta(1/z) dz = Gamma(beta + 1)`.
pub fn log_moment(beta: Complex) -> Result<Complex> {
    if !(beta.re > -1.0) {
        return Err(domain("log_moment", format!("Re(beta) = {} <= -1", beta.re)));
    }
    gamma(beta + 1.0)
}
