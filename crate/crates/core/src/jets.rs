//! Truncated Taylor series ("jets") in the contour variable `w`.
//!
//! Coefficient `j` stores `f^(j)(0) / j!`, so `k! * coeff(k)` is the `k`-th
//! derivative at `w = 0` — the residue of `a^w w^(-k-1) (...)`.

use std::f64::consts::PI;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::params::ParameterSet;
use crate::specialfn::{self, cpow, factorial};
use crate::{c64, Complex};

/// Jets are capped at this order; polygamma support bounds it.
pub const MAX_JET_ORDER: usize = 12;

/// Highest order accepted by the gamma/csc/closed-form constructors.
pub const MAX_DERIVATIVE_ORDER: usize = 10;

#[derive(Debug, Clone, PartialEq)]
pub struct Jet {
    coeffs: Vec<Complex>,
}

impl Jet {
    pub fn from_coeffs(coeffs: Vec<Complex>) -> Result<Self> {
        if coeffs.is_empty() || coeffs.len() > MAX_JET_ORDER + 1 {
            return Err(Error::InvalidArgument(format!(
                "jet needs 1..={} coefficients, got {}",
                MAX_JET_ORDER + 1,
                coeffs.len()
            )));
        }
        if let Some(c) = coeffs.iter().find(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(Error::NonFinite {
                function: "Jet",
                location: format!("coefficient {c}"),
            });
        }
        Ok(Self { coeffs })
    }

    pub fn constant(c: Complex, order: usize) -> Self {
        let mut coeffs = vec![c64(0.0, 0.0); order + 1];
        coeffs[0] = c;
        Self { coeffs }
    }

    /// The jet of `c0 + c1 w`.
    pub fn linear(c0: Complex, c1: Complex, order: usize) -> Self {
        let mut j = Self::constant(c0, order);
        if order >= 1 {
            j.coeffs[1] = c1;
        }
        j
    }

    /// `exp(rate * w)`.
    pub fn exp_linear(rate: Complex, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut c = c64(1.0, 0.0);
        for j in 0..=order {
            if j > 0 {
                c = c * rate / j as f64;
            }
            coeffs.push(c);
        }
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> Complex {
        self.coeffs[j]
    }

    /// `j! * coeff(j)`.
    pub fn derivative(&self, j: usize) -> Complex {
        self.coeffs[j] * factorial(j as u32)
    }

    pub fn scale(&self, c: Complex) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// The jet of `f(c w)` given the jet of `f(w)`.
    pub fn rescale_variable(&self, c: Complex) -> Self {
        let mut p = c64(1.0, 0.0);
        let coeffs = self
            .coeffs
            .iter()
            .map(|x| {
                let r = x * p;
                p *= c;
                r
            })
            .collect();
        Self { coeffs }
    }

    fn common_order(&self, other: &Self) -> usize {
        self.order().min(other.order())
    }

    /// Truncated Cauchy product.
    pub fn mul_jet(&self, other: &Self) -> Self {
        let n = self.common_order(other);
        let coeffs = (0..=n)
            .map(|i| (0..=i).map(|j| self.coeffs[j] * other.coeffs[i - j]).sum())
            .collect();
        Self { coeffs }
    }

    /// Coefficient moduli; Cauchy products of majorants bound the terms a
    /// product sums, hence its cancellation.
    pub fn majorant(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c64(c.norm(), 0.0)).collect(),
        }
    }

    pub fn add_jet(&self, other: &Self) -> Self {
        let n = self.common_order(other);
        Self {
            coeffs: (0..=n).map(|i| self.coeffs[i] + other.coeffs[i]).collect(),
        }
    }

    pub fn reciprocal(&self) -> Result<Self> {
        let f0 = self.coeffs[0];
        if f0 == c64(0.0, 0.0) {
            return Err(Error::ZeroConstantTerm);
        }
        let inv0 = f0.inv();
        let mut r: Vec<Complex> = Vec::with_capacity(self.coeffs.len());
        r.push(inv0);
        for n in 1..self.coeffs.len() {
            let s: Complex = (1..=n).map(|k| self.coeffs[k] * r[n - k]).sum();
            r.push(-s * inv0);
        }
        Ok(Self { coeffs: r })
    }

    pub fn exp(&self) -> Self {
        let f = &self.coeffs;
        let mut g = Vec::with_capacity(f.len());
        g.push(f[0].exp());
        for n in 1..f.len() {
            let s: Complex = (1..=n).map(|k| f[k] * g[n - k] * k as f64).sum();
            g.push(s / n as f64);
        }
        Self { coeffs: g }
    }
}

impl Add for &Jet {
    type Output = Jet;
    fn add(self, rhs: &Jet) -> Jet {
        self.add_jet(rhs)
    }
}

impl Sub for &Jet {
    type Output = Jet;
    fn sub(self, rhs: &Jet) -> Jet {
        self.add_jet(&-rhs)
    }
}

impl Mul for &Jet {
    type Output = Jet;
    fn mul(self, rhs: &Jet) -> Jet {
        self.mul_jet(rhs)
    }
}

impl Neg for &Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(c64(-1.0, 0.0))
    }
}

fn check_order(order: usize) -> Result<()> {
    if order > MAX_DERIVATIVE_ORDER {
        Err(Error::InvalidArgument(format!(
            "jet order {order} exceeds {MAX_DERIVATIVE_ORDER}"
        )))
    } else {
        Ok(())
    }
}

/// Jet of `ln Gamma(z0 + scale * w)`; coefficient `j >= 1` is
/// `psi^(j-1)(z0) scale^j / j!`.
pub fn jet_of_log_gamma(z0: Complex, scale: Complex, order: usize) -> Result<Jet> {
    check_order(order)?;
    let mut coeffs = Vec::with_capacity(order + 1);
    coeffs.push(specialfn::log_gamma(z0)?);
    for j in 1..=order {
        let psi = specialfn::polygamma(j as u32 - 1, z0)?;
        coeffs.push(psi / factorial(j as u32));
    }
    Ok(Jet { coeffs }.rescale_variable(scale))
}

/// Jet of `Gamma(z0 + w)`.
pub fn jet_of_gamma(z0: Complex, order: usize) -> Result<Jet> {
    Ok(jet_of_log_gamma(z0, c64(1.0, 0.0), order)?.exp())
}

fn is_integer(z: Complex) -> bool {
    z.im == 0.0 && z.re.fract() == 0.0
}

/// Jet of `csc(pi (m + w))`.
pub fn jet_csc(m: Complex, order: usize) -> Result<Jet> {
    check_order(order)?;
    if is_integer(m) {
        return Err(Error::Pole {
            function: "csc(pi (m + w))",
            at: m,
        });
    }
    let i_pi = c64(0.0, PI);
    let phase = (i_pi * m).exp();
    let plus = Jet::exp_linear(i_pi, order).scale(phase);
    let minus = Jet::exp_linear(-i_pi, order).scale(phase.inv());
    // sin = (e^{i x} - e^{-i x}) / 2i
    let sine = (&plus - &minus).scale(c64(0.0, -0.5));
    sine.reciprocal()
}

/// `pi^2 2^(mu + u - 1)`.
pub fn prefactor(ps: &ParameterSet) -> Complex {
    cpow(c64(2.0, 0.0), ps.mu + ps.u - 1.0) * (PI * PI)
}

/// Jet of `F(w) = a^w pi^2 2^(mu+u-1) csc(pi (m + w))` with the principal
/// branch of `log a`.
pub fn closed_form_jet(ps: &ParameterSet, order: usize) -> Result<Jet> {
    check_order(order)?;
    if ps.a == c64(0.0, 0.0) {
        return Err(Error::Pole {
            function: "log(a)",
            at: ps.a,
        });
    }
    let a_pow = Jet::exp_linear(ps.a.ln(), order);
    let csc = jet_csc(ps.m, order)?;
    Ok((&a_pow * &csc).scale(prefactor(ps)))
}
