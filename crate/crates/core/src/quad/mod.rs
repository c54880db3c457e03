//! Quadrature: 1-D rules, Sobol QMC and the 6-D integrators.

pub mod cube;
pub mod integrand;
pub mod rules;
pub mod sobol;

pub use cube::{
    integrate_6d_qmc, integrate_6d_tensor, CoupledIntegrand, CubeIntegrand, QmcEstimate, QmcSpec,
};
pub use integrand::Integrand6D;
pub use rules::{
    gauss_laguerre, gauss_legendre, log_laguerre, tanh_sinh, tanh_sinh_estimate, Rule1D, RuleKind,
};
