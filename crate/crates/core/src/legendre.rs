//! Ferrers (on-the-cut) associated Legendre functions `P_v^u(x)`, `0 < x < 1`,
//! for complex degree and order.
//!
//! Convention: `P_v^u(x) = ((1+x)/(1-x))^(u/2) 2F1(-v, v+1; 1-u; (1-x)/2) / Gamma(1-u)`,
//! which carries the Condon-Shortley phase at integer order
//! (`P_1^1(x) = -sqrt(1-x^2)`).
//!
//! Near `x = 1` the series in `(1-x)/2` is used; elsewhere the expansion about
//! `x = 0` (series in `x^2`) avoids the cancellation that the `(1-x)/2` series
//! suffers for large degree.

use std::f64::consts::PI;

use crate::error::{domain, finite, Error, Result};
use crate::specialfn::{cpow, gamma, is_nonpositive_integer, recip_gamma};
use crate::{c64, Complex};

/// Term cap for the Gauss series.
pub const HYP_MAX_TERMS: usize = 100_000;

/// Above this `x` the `(1-x)/2` series is used.
const X_SPLIT: f64 = 0.72;

/// Gauss series `2F1(a, b; c; x)` for `0 <= x <= 1/2`.
///
/// Stops once three consecutive terms fall below `1e-17 |sum|`.
pub fn hyp2f1(a: Complex, b: Complex, c: Complex, x: f64) -> Result<Complex> {
    if !(0.0..=0.5).contains(&x) {
        return Err(domain("hyp2f1", format!("x = {x} outside [0, 1/2]")));
    }
    if is_nonpositive_integer(c) {
        return Err(Error::Pole { function: "hyp2f1", at: c });
    }
    gauss_series(a, b, c, x)
}

fn gauss_series(a: Complex, b: Complex, c: Complex, x: f64) -> Result<Complex> {
    let mut sum = c64(1.0, 0.0);
    let mut term = c64(1.0, 0.0);
    let mut small = 0;
    for n in 0..HYP_MAX_TERMS {
        let nf = n as f64;
        term *= (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * x;
        sum += term;
        if term.norm() < 1e-17 * sum.norm() || term == c64(0.0, 0.0) {
            small += 1;
            if small == 3 {
                return finite("hyp2f1", sum);
            }
        } else {
            small = 0;
        }
    }
    Err(Error::NonConvergence {
        function: "hyp2f1",
        iterations: HYP_MAX_TERMS,
    })
}

/// `2F1(a, b; c; x) / Gamma(c)`, including the limit at `c = 1 - n`:
/// `(a)_n (b)_n x^n / n! * 2F1(a+n, b+n; n+1; x)`.
fn regularized_2f1(a: Complex, b: Complex, c: Complex, x: f64) -> Result<Complex> {
    if is_nonpositive_integer(c) {
        let n = (1.0 - c.re) as u32;
        let mut pre = c64(1.0, 0.0);
        for j in 0..n {
            let jf = j as f64;
            pre *= (a + jf) * (b + jf) * x / (jf + 1.0);
        }
        if pre == c64(0.0, 0.0) {
            return Ok(pre);
        }
        let nf = n as f64;
        return Ok(pre * gauss_series(a + nf, b + nf, c64(nf + 1.0, 0.0), x)?);
    }
    Ok(gauss_series(a, b, c, x)? / gamma(c)?)
}

fn check_x(function: &'static str, x: f64) -> Result<()> {
    if x > 0.0 && x < 1.0 {
        Ok(())
    } else {
        Err(domain(function, format!("x = {x} outside (0, 1)")))
    }
}

/// From this many unit steps above the order, the degree is lowered and the
/// value rebuilt with the (forward-stable) three-term recurrence in degree.
const LIFT_STEPS: f64 = 2.0;

/// Series evaluation at one fixed `(v, u)` with the gamma factors cached.
#[derive(Debug, Clone, Copy)]
struct Series {
    v: Complex,
    u: Complex,
    /// `1 / Gamma(1-u)`; unused at integer `u >= 1`
    inv_gamma_c: Complex,
    even_g: Complex,
    odd_g: Complex,
    /// `2^u sqrt(pi)`
    scale: Complex,
}

impl Series {
    fn new(v: Complex, u: Complex) -> Result<Self> {
        let c = 1.0 - u;
        let inv_gamma_c = if is_nonpositive_integer(c) {
            c64(0.0, 0.0)
        } else {
            gamma(c)?.inv()
        };
        Ok(Self {
            v,
            u,
            inv_gamma_c,
            even_g: recip_gamma((1.0 - v - u) / 2.0)? * recip_gamma(1.0 + (v - u) / 2.0)?,
            odd_g: recip_gamma((1.0 + v - u) / 2.0)? * recip_gamma(-(v + u) / 2.0)?,
            scale: cpow(c64(2.0, 0.0), u) * PI.sqrt(),
        })
    }

    /// `2F1(-v, v+1; 1-u; z) / Gamma(1-u)`, with the limit at integer `u >= 1`.
    fn regularized(&self, z: f64) -> Result<Complex> {
        let (a, b, c) = (-self.v, self.v + 1.0, 1.0 - self.u);
        if is_nonpositive_integer(c) {
            return regularized_2f1(a, b, c, z);
        }
        Ok(gauss_series(a, b, c, z)? * self.inv_gamma_c)
    }

    /// `2^u sqrt(pi) [F_even / (Gamma((1-v-u)/2) Gamma(1+(v-u)/2))
    ///   - 2x F_odd / (Gamma((1+v-u)/2) Gamma(-(v+u)/2))]`, so that
    /// `P_v^u(x) = (1-x^2)^(-u/2) * body`.
    fn near_zero_body(&self, x: f64) -> Result<Complex> {
        let (v, u) = (self.v, self.u);
        let w = x * x;
        let mut total = c64(0.0, 0.0);
        if self.even_g != c64(0.0, 0.0) {
            let f = gauss_series(-(v + u) / 2.0, 0.5 + (v - u) / 2.0, c64(0.5, 0.0), w)?;
            total += f * self.even_g;
        }
        if self.odd_g != c64(0.0, 0.0) {
            let f = gauss_series(0.5 - (v + u) / 2.0, 1.0 + (v - u) / 2.0, c64(1.5, 0.0), w)?;
            total -= f * self.odd_g * (2.0 * x);
        }
        Ok(total * self.scale)
    }

    /// `(1-x^2)^(-u/2) P_v^u(x)`.
    fn weighted(&self, x: f64, comp: f64) -> Result<Complex> {
        if x > X_SPLIT {
            // (1-x)^(-u) 2F1~(-v, v+1; 1-u; (1-x)/2)
            let f = self.regularized(comp / 2.0)?;
            return Ok(cpow(c64(comp, 0.0), -self.u) * f);
        }
        Ok(self.near_zero_body(x)? * cpow(c64(comp * (2.0 - comp), 0.0), -self.u))
    }
}

/// `P_v^u` prepared for repeated evaluation at many `x`.
#[derive(Debug, Clone, Copy)]
pub struct LegendreKernel {
    u: Complex,
    direct: Series,
    /// seeds at degrees `v0, v0 + 1` and the number of upward steps to `v`
    lift: Option<(Series, Series, usize)>,
}

impl LegendreKernel {
    pub fn new(v: Complex, u: Complex) -> Result<Self> {
        // P_v^u = P_{-v-1}^u
        let v = if v.re < -0.5 { -v - 1.0 } else { v };
        let direct = Series::new(v, u)?;
        // lower the degree to v0 with Re(v0 - u) in [0, 1) (or Re v0 in [0, 1)
        // for Re u < 0) so the recurrence denominators v0 + j - u + 1 stay away
        // from zero
        let mut lift = None;
        let floor_at = u.re.max(0.0);
        if v.re - floor_at >= LIFT_STEPS {
            let n = (v.re - floor_at).floor() as usize;
            let v0 = v - n as f64;
            lift = Some((Series::new(v0, u)?, Series::new(v0 + 1.0, u)?, n));
        }
        Ok(Self { u, direct, lift })
    }

    fn weighted_unchecked(&self, x: f64, comp: f64) -> Result<Complex> {
        let Some((s0, s1, n)) = &self.lift else {
            return self.direct.weighted(x, comp);
        };
        let u = self.u;
        let mut p_prev = s0.weighted(x, comp)?;
        let mut p = s1.weighted(x, comp)?;
        let mut nu = s1.v;
        for _ in 1..*n {
            let next = ((2.0 * nu + 1.0) * x * p - (nu + u) * p_prev) / (nu - u + 1.0);
            p_prev = p;
            p = next;
            nu += 1.0;
        }
        Ok(p)
    }

    /// `P_v^u(x)`.
    pub fn p(&self, x: f64) -> Result<Complex> {
        check_x("assoc_legendre_p", x)?;
        let comp = 1.0 - x;
        let w = self.weighted_unchecked(x, comp)?;
        finite(
            "assoc_legendre_p",
            w * cpow(c64(comp * (1.0 + x), 0.0), self.u / 2.0),
        )
    }

    /// `(1-x^2)^(-u/2) P_v^u(x)` from `x` and its complement `comp = 1 - x`,
    /// which quadrature rules know more accurately than `1.0 - x`.
    pub fn weighted(&self, x: f64, comp: f64) -> Result<Complex> {
        // x may round to 1 while its complement is still positive
        if !(x > 0.0 && x <= 1.0 && comp > 0.0 && comp <= 1.0) {
            return Err(domain(
                "legendre_kernel",
                format!("x = {x}, 1 - x = {comp} outside (0, 1)"),
            ));
        }
        finite("legendre_kernel", self.weighted_unchecked(x, comp)?)
    }
}

/// `(1-x^2)^(-u/2) P_v^u(x)`: the factor that multiplies `x^(m-1)` in the
/// integrand.
pub fn legendre_kernel(v: Complex, u: Complex, x: f64) -> Result<Complex> {
    LegendreKernel::new(v, u)?.weighted(x, 1.0 - x)
}

/// `P_v^u(x)` for `0 < x < 1`.
pub fn assoc_legendre_p(v: Complex, u: Complex, x: f64) -> Result<Complex> {
    check_x("assoc_legendre_p", x)?;
    LegendreKernel::new(v, u)?.p(x)
}

/// `P_n^mo(x)` for `n = 0..=nmax` (zero for `n < mo`) by the three-term
/// recurrence in degree, Condon-Shortley phase.
pub fn legendre_recurrence(nmax: usize, mo: usize, x: f64) -> Result<Vec<f64>> {
    check_x("legendre_recurrence", x)?;
    if mo > nmax || nmax > 200 {
        return Err(domain(
            "legendre_recurrence",
            format!("need 0 <= mo <= nmax <= 200, got mo={mo}, nmax={nmax}"),
        ));
    }
    let mut out = vec![0.0; nmax + 1];
    let s = ((1.0 - x) * (1.0 + x)).sqrt();
    let mut pmm = 1.0;
    for j in 0..mo {
        pmm *= -((2 * j + 1) as f64) * s;
    }
    out[mo] = pmm;
    if nmax > mo {
        out[mo + 1] = x * (2 * mo + 1) as f64 * pmm;
    }
    for n in (mo + 1)..nmax {
        let nf = n as f64;
        let m = mo as f64;
        out[n + 1] = ((2.0 * nf + 1.0) * x * out[n] - (nf + m) * out[n - 1]) / (nf - m + 1.0);
    }
    Ok(out)
}

#[cfg(test)]
#[allow(clippy::excessive_precision)] // reference values carry extra digits
mod tests {
    use super::*;

    fn close(a: Complex, b: Complex, rel: f64) -> bool {
        (a - b).norm() <= rel * b.norm().max(1e-300)
    }

    fn r(x: f64) -> Complex {
        c64(x, 0.0)
    }

    #[test]
    fn hyp2f1_examples() {
        assert_eq!(hyp2f1(r(0.3), r(2.0), r(1.5), 0.0).unwrap(), r(1.0));
        let x: f64 = 0.25;
        let log_oracle = -(1.0 - x).ln() / x;
        assert!(close(hyp2f1(r(1.0), r(1.0), r(2.0), x).unwrap(), r(log_oracle), 1e-14));
        let (b, c) = (c64(0.7, 0.2), c64(1.9, -0.4));
        let got = hyp2f1(r(-1.0), b, c, 0.4).unwrap();
        assert!(close(got, 1.0 - b * 0.4 / c, 1e-15));
    }

    #[test]
    fn hyp2f1_rejects() {
        assert!(matches!(hyp2f1(r(1.0), r(1.0), r(-2.0), 0.1), Err(Error::Pole { .. })));
        assert!(hyp2f1(r(1.0), r(1.0), r(2.0), 0.6).is_err());
    }

    #[test]
    fn low_degree_values() {
        for x in [0.05, 0.37, 0.8, 0.99] {
            assert!(close(assoc_legendre_p(r(0.0), r(0.0), x).unwrap(), r(1.0), 1e-14));
            assert!(close(assoc_legendre_p(r(1.0), r(0.0), x).unwrap(), r(x), 1e-14));
        }
    }

    #[test]
    fn half_degree_value() {
        // mpmath legenp(0.5, 0, 0.5, type=2)
        let got = assoc_legendre_p(r(0.5), r(0.0), 0.5).unwrap();
        assert!(close(got, r(0.795_248_908_186_023_857), 1e-13), "{got}");
    }

    #[test]
    fn half_degree_laplace_oracle() {
        // P_v(x) = (1/pi) int_0^pi (x + i sqrt(1-x^2) cos t)^v dt, 64-point
        // Gauss-Legendre in t.
        let (v, x) = (0.5, 0.5);
        let rule = crate::quad::gauss_legendre(64).unwrap().mapped(0.0, PI);
        let s = (1.0f64 - x * x).sqrt();
        let integral: Complex = rule
            .nodes
            .iter()
            .zip(&rule.weights)
            .map(|(&t, &w)| cpow(c64(x, s * t.cos()), r(v)) * w)
            .sum();
        let got = assoc_legendre_p(r(v), r(0.0), x).unwrap();
        assert!(close(got, integral / PI, 1e-12), "{got} vs {}", integral / PI);
    }

    #[test]
    fn complex_parameters() {
        // mpmath legenp(1.3+0.2j, 0.4-0.1j, 0.3, type=2)
        let got = assoc_legendre_p(c64(1.3, 0.2), c64(0.4, -0.1), 0.3).unwrap();
        let want = c64(-0.404_816_713_581_670_7, -0.030_322_153_429_840_91);
        assert!(close(got, want, 1e-12), "{got}");
        // both branches agree across the split
        let (v, u) = (c64(2.7, -0.6), c64(-0.35, 0.2));
        for x in [0.6, 0.7, 0.75, 0.85] {
            let comp = 1.0 - x;
            let a = Series::new(v, u).unwrap().near_zero_body(x).unwrap()
                * cpow(r(comp * (1.0 + x)), -u);
            let b = cpow(r(comp), -u) * regularized_2f1(-v, v + 1.0, 1.0 - u, comp / 2.0).unwrap();
            assert!(close(a, b, 1e-12), "x={x}: {a} vs {b}");
        }
    }

    #[test]
    fn recurrence_examples() {
        assert!((legendre_recurrence(2, 0, 0.5).unwrap()[2] - (-0.125)).abs() < 1e-15);
        assert!((legendre_recurrence(1, 1, 0.6).unwrap()[1] - (-0.8)).abs() < 1e-15);
        let p = legendre_recurrence(3, 2, 0.3).unwrap();
        assert!((p[3] - 15.0 * 0.3 * 0.91).abs() < 1e-13);
    }

    #[test]
    fn hypergeometric_matches_recurrence() {
        for mo in 0..=5usize {
            for x in [0.1, 0.3, 0.5, 0.7, 0.9] {
                let rec = legendre_recurrence(20, mo, x).unwrap();
                for (n, want) in rec.iter().enumerate().skip(mo) {
                    let got = assoc_legendre_p(r(n as f64), r(mo as f64), x).unwrap();
                    let err = (got - r(*want)).norm();
                    assert!(
                        err <= 1e-10 * want.abs().max(1e-300),
                        "n={n} mo={mo} x={x}: {got} vs {want}"
                    );
                }
            }
        }
    }

    #[test]
    fn condon_shortley_phase() {
        let x: f64 = 0.42;
        let got = assoc_legendre_p(r(1.0), r(1.0), x).unwrap();
        assert!(close(got, r(-(1.0 - x * x).sqrt()), 1e-14));
        let got = assoc_legendre_p(r(1.0), r(1.0), 0.9).unwrap();
        assert!(close(got, r(-(1.0f64 - 0.81).sqrt()), 1e-14));
    }

    #[test]
    fn kernel_equals_weighted_p() {
        for (v, u) in [(c64(0.75, 0.0), c64(0.25, 0.0)), (c64(1.4, 0.3), c64(-0.6, 0.1))] {
            for x in [1e-6, 0.2, 0.5, 0.8, 1.0 - 1e-6] {
                let k = legendre_kernel(v, u, x).unwrap();
                let p = assoc_legendre_p(v, u, x).unwrap();
                let w = cpow(r((1.0 - x) * (1.0 + x)), -u / 2.0);
                assert!(close(k, p * w, 1e-11), "x={x}");
            }
        }
    }

    #[test]
    fn rejects_endpoints() {
        assert!(assoc_legendre_p(r(1.0), r(0.0), 0.0).is_err());
        assert!(assoc_legendre_p(r(1.0), r(0.0), 1.0).is_err());
        assert!(legendre_recurrence(3, 4, 0.5).is_err());
    }
}
