//! Numerical verification of a sextuple integral over products of associated
//! Legendre functions `P_v^u(x) P_nu^mu(y)` with log-power weights, whose value
//! is a Hurwitz-Lerch zeta expression.
//!
//! The integral is evaluated along independent routes and compared:
//!
//! * `jet`: Taylor-coefficient extraction from the collapsed generating function
//!   `a^w pi^2 2^(mu+u-1) csc(pi (m + w))` (integer `k >= 0`),
//! * `moment`: the same coefficient from the uncollapsed product of Mellin
//!   transforms and log-power moments,
//! * `tensor` / `qmc`: direct six-dimensional quadrature and randomized
//!   quasi-Monte Carlo on the original integrand,
//! * `closed`: the Hurwitz-Lerch closed form, with analytic continuation of
//!   `Phi(z, s, v)` onto the unit circle,
//! * `special`: the special-case closed forms (Hurwitz zeta, harmonic numbers,
//!   `log 2`, `log 3`, `arccoth sqrt 2`, `zeta(3)`, ...).
//!
//! Heavy loops (quadrature grids, QMC, parameter sweeps) run on rayon when the
//! `parallel` feature is enabled; see [`exec::Execution`].

// `!(x > 0.0)` deliberately rejects NaN as well
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod engine;
pub mod error;
pub mod exec;
pub mod jets;
pub mod legendre;
pub mod lerch;
pub mod mellin;
pub mod params;
pub mod quad;
pub mod selftest;
pub mod specialfn;

pub use error::{Error, Result};
pub use params::{ExponentQuad, ParameterSet, Tolerances, ValidationOutcome};

/// Complex scalar used throughout: principal branches everywhere.
pub type Complex = num_complex::Complex64;

/// Shorthand constructor.
#[inline]
pub fn c64(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}
