//! Hurwitz-Lerch transcendent `Phi(z, s, v) = sum_{n>=0} z^n (v+n)^-s`
//! and its continuation to `|z| = 1`.
//!
//! Regimes:
//! * `Series`: direct summation, `|z| <= 1 - 1e-3`;
//! * `Apostol`: `s = -n`, elementary form from `(v + z d/dz)^n 1/(1-z)`;
//! * `UnitCircle` / `Accelerated`: a finite head `n < N` plus the tail
//!   `z^N sum_i binom(-s, i) (v+N)^(-s-i) A_i(z)`, `A_i(z) = sum_j j^i z^j`
//!   (Abel sums, themselves elementary), for `1 - 1e-3 < |z| <= 1`, `z != 1`;
//! * `z = 1`: Hurwitz zeta.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{domain, finite, Error, Result};
use crate::quad::rules::{gauss_laguerre, tanh_sinh_estimate};
use crate::specialfn::{cpow, digamma, gamma, hurwitz_zeta, is_nonpositive_integer};
use crate::{c64, Complex};

/// Largest `n` accepted by [`lerch_apostol`].
pub const MAX_APOSTOL_ORDER: u32 = 10;
/// Tolerance for recognizing `s` as a non-positive integer and `|z|` as 1.
pub const REGIME_TOL: f64 = 1e-12;
/// Closest approach to `z = 1` on the unit circle.
pub const MIN_DISTANCE_TO_ONE: f64 = 1e-6;

const SERIES_RADIUS: f64 = 1.0 - 1e-3;
const SERIES_MAX_TERMS: usize = 10_000_000;
const TAIL_MAX_TERMS: usize = 60;
const HEAD_MAX_TERMS: f64 = 2e6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LerchArgs {
    pub z: Complex,
    pub s: Complex,
    pub v: Complex,
}

impl LerchArgs {
    pub fn new(z: Complex, s: Complex, v: Complex) -> Self {
        Self { z, s, v }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LerchMethod {
    Series,
    Apostol,
    UnitCircle,
    Accelerated,
    HurwitzZeta,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LerchValue {
    pub value: Complex,
    /// Estimated absolute error.
    pub err: f64,
    pub method: LerchMethod,
}

/// `Some(n)` when `s` is within [`REGIME_TOL`] of `-n`, `n >= 0`.
pub fn nonpositive_integer_order(s: Complex) -> Option<u32> {
    let n = (-s.re).round();
    if n >= 0.0 && (s.re + n).abs() <= REGIME_TOL && s.im.abs() <= REGIME_TOL && n < 1e9 {
        Some(n as u32)
    } else {
        None
    }
}

/// `Phi(z, s, v)` with the regime chosen automatically.
pub fn lerch_phi(args: LerchArgs) -> Result<Complex> {
    lerch_phi_detailed(args).map(|r| r.value)
}

pub fn lerch_phi_detailed(args: LerchArgs) -> Result<LerchValue> {
    let LerchArgs { z, s, v } = args;
    for (name, x) in [("z", z), ("s", s), ("v", v)] {
        if !(x.re.is_finite() && x.im.is_finite()) {
            return Err(domain("lerch_phi", format!("{name} is not finite")));
        }
    }
    if is_nonpositive_integer(v) {
        return Err(Error::Pole {
            function: "lerch_phi",
            at: v,
        });
    }
    let r = z.norm();
    if r > 1.0 + REGIME_TOL {
        return Err(Error::Unsupported {
            function: "lerch_phi",
            detail: format!("|z| = {r} > 1"),
        });
    }
    if (z - 1.0).norm() <= REGIME_TOL {
        return Ok(LerchValue {
            value: hurwitz_zeta(s, v)?,
            err: 0.0,
            method: LerchMethod::HurwitzZeta,
        });
    }
    if let Some(n) = nonpositive_integer_order(s) {
        if n <= MAX_APOSTOL_ORDER {
            return Ok(LerchValue {
                value: lerch_apostol(z, n, v)?,
                err: 0.0,
                method: LerchMethod::Apostol,
            });
        }
    }
    if r <= SERIES_RADIUS {
        return lerch_series(z, s, v);
    }
    let mut out = continued(z, s, v)?;
    if (r - 1.0).abs() > REGIME_TOL {
        out.method = LerchMethod::Accelerated;
    }
    Ok(out)
}

/// Plain power series, `|z| < 1`.
fn lerch_series(z: Complex, s: Complex, v: Complex) -> Result<LerchValue> {
    let r = z.norm();
    if r >= 1.0 {
        return Err(domain("lerch_series", format!("|z| = {r} >= 1")));
    }
    // terms grow like n^(-Re s) r^n until n ~ -Re s / ln(1/r)
    let peak = if s.re < 0.0 && r > 0.0 {
        -s.re / -r.ln()
    } else {
        0.0
    };
    let mut sum = c64(0.0, 0.0);
    let mut zn = c64(1.0, 0.0);
    let mut max_term = 0.0f64;
    for n in 0..SERIES_MAX_TERMS {
        let term = zn * cpow(v + n as f64, -s);
        sum += term;
        max_term = max_term.max(term.norm());
        if (n as f64 > peak && term.norm() <= 1e-17 * sum.norm()) || zn == c64(0.0, 0.0) {
            return Ok(LerchValue {
                value: finite("lerch_phi", sum)?,
                err: 4.0 * f64::EPSILON * max_term * (n as f64 + 1.0).sqrt(),
                method: LerchMethod::Series,
            });
        }
        zn *= z;
    }
    Err(Error::NonConvergence {
        function: "lerch_series",
        iterations: SERIES_MAX_TERMS,
    })
}

/// Coefficients `c_i` with `Phi(z, -n, v) = sum_i c_i z^i / (1-z)^(i+1)`.
fn apostol_coefficients(n: usize, v: Complex) -> Vec<Complex> {
    let mut c = vec![c64(1.0, 0.0)];
    for _ in 0..n {
        let mut next = vec![c64(0.0, 0.0); c.len() + 1];
        for (i, ci) in c.iter().enumerate() {
            // (v + z d/dz) b_i = (v + i) b_i + (i + 1) b_{i+1}
            next[i] += (v + i as f64) * ci;
            next[i + 1] += *ci * (i as f64 + 1.0);
        }
        c = next;
    }
    c
}

fn apostol_eval(z: Complex, n: usize, v: Complex) -> Complex {
    let c = apostol_coefficients(n, v);
    let inv = (1.0 - z).inv();
    let ratio = z * inv;
    // Horner in ratio
    let mut acc = c64(0.0, 0.0);
    for ci in c.iter().rev() {
        acc = acc * ratio + ci;
    }
    acc * inv
}

/// `Phi(z, -n, v)` for `n <= 10`, any `z != 1`.
pub fn lerch_apostol(z: Complex, n: u32, v: Complex) -> Result<Complex> {
    if n > MAX_APOSTOL_ORDER {
        return Err(domain("lerch_apostol", format!("n = {n} > {MAX_APOSTOL_ORDER}")));
    }
    if z == c64(1.0, 0.0) {
        return Err(Error::Pole {
            function: "lerch_apostol",
            at: z,
        });
    }
    finite("lerch_apostol", apostol_eval(z, n as usize, v))
}

/// Continuation onto `|z| = 1` (Abel sense), `z != 1`, with an error
/// estimate that grows as `z -> 1`.
pub fn lerch_unit_circle(z: Complex, s: Complex, v: Complex) -> Result<LerchValue> {
    if (z.norm() - 1.0).abs() > REGIME_TOL {
        return Err(domain("lerch_unit_circle", format!("|z| = {} != 1", z.norm())));
    }
    continued(z, s, v)
}

fn continued(z: Complex, s: Complex, v: Complex) -> Result<LerchValue> {
    let d = (1.0 - z).norm();
    if d < MIN_DISTANCE_TO_ONE {
        return Err(domain(
            "lerch_unit_circle",
            format!("|z - 1| = {d:e} below {MIN_DISTANCE_TO_ONE:e}"),
        ));
    }
    if !(v.re > 0.0) {
        return Err(domain("lerch_unit_circle", "needs Re(v) > 0"));
    }
    if is_nonpositive_integer(v) {
        return Err(Error::Pole {
            function: "lerch_unit_circle",
            at: v,
        });
    }
    // tail terms shrink roughly like ((|s| + i) / (|v+N| |1-z|))^i
    let want = 2.0 * (s.norm() + 20.0) / d;
    let n_head = (want - v.re).ceil().clamp(8.0, HEAD_MAX_TERMS) as usize;

    let log_z = z.ln();
    let mut head = c64(0.0, 0.0);
    let mut comp = c64(0.0, 0.0);
    let mut max_term = 0.0f64;
    for n in 0..n_head {
        let term = (log_z * n as f64).exp() * cpow(v + n as f64, -s);
        max_term = max_term.max(term.norm());
        // Neumaier summation: the head can be long and oscillating
        let t = head + term;
        if head.re.abs() >= term.re.abs() {
            comp.re += (head.re - t.re) + term.re;
        } else {
            comp.re += (term.re - t.re) + head.re;
        }
        if head.im.abs() >= term.im.abs() {
            comp.im += (head.im - t.im) + term.im;
        } else {
            comp.im += (term.im - t.im) + head.im;
        }
        head = t;
    }
    head += comp;

    let w = v + n_head as f64;
    let mut binom_pow = cpow(w, -s); // binom(-s, i) w^(-s-i)
    let mut tail = c64(0.0, 0.0);
    let mut last_pair = f64::INFINITY;
    let mut prev_mag = 0.0;
    let mut tail_err = 0.0;
    // A_i(z) = Phi(z, -i, 0): coefficients built incrementally
    let mut coeffs = vec![c64(1.0, 0.0)];
    let inv = (1.0 - z).inv();
    let ratio = z * inv;
    for i in 0..=TAIL_MAX_TERMS {
        if i > 0 {
            binom_pow *= (-s - (i as f64 - 1.0)) / (w * i as f64);
            let mut next = vec![c64(0.0, 0.0); coeffs.len() + 1];
            for (j, cj) in coeffs.iter().enumerate() {
                next[j] += *cj * j as f64;
                next[j + 1] += *cj * (j as f64 + 1.0);
            }
            coeffs = next;
        }
        if binom_pow == c64(0.0, 0.0) {
            // s a non-positive integer: the expansion terminates
            tail_err = 0.0;
            break;
        }
        let mut a_i = c64(0.0, 0.0);
        for cj in coeffs.iter().rev() {
            a_i = a_i * ratio + cj;
        }
        a_i *= inv;
        let term = binom_pow * a_i;
        // A_i(z) can vanish for every other i (z = -1), so decisions use the
        // magnitude of two consecutive terms
        let mag = term.norm();
        let pair = mag + prev_mag;
        if i >= 2 && pair > last_pair {
            // asymptotic series started to diverge
            break;
        }
        tail += term;
        tail_err = pair;
        if i >= 1 {
            last_pair = pair;
        }
        prev_mag = mag;
        if i >= 1 && pair <= 1e-17 * (head + tail).norm() {
            break;
        }
    }
    let value = head + (log_z * n_head as f64).exp() * tail;
    let rounding = 8.0 * f64::EPSILON * max_term * (n_head as f64).sqrt();
    Ok(LerchValue {
        value: finite("lerch_unit_circle", value)?,
        err: tail_err + rounding,
        method: LerchMethod::UnitCircle,
    })
}

/// `Phi(-1, s, v) = 2^-s [zeta(s, v/2) - zeta(s, (v+1)/2)]`; at `s = 1` the
/// difference limit `(psi((v+1)/2) - psi(v/2)) / 2`.
pub fn lerch_minus_one_split(s: Complex, v: Complex) -> Result<Complex> {
    if !(v.re > 0.0) {
        return Err(domain("lerch_minus_one_split", "needs Re(v) > 0"));
    }
    if s == c64(1.0, 0.0) {
        return finite(
            "lerch_minus_one_split",
            (digamma((v + 1.0) / 2.0)? - digamma(v / 2.0)?) / 2.0,
        );
    }
    let two_s = cpow(c64(2.0, 0.0), -s);
    finite(
        "lerch_minus_one_split",
        two_s * (hurwitz_zeta(s, v / 2.0)? - hurwitz_zeta(s, (v + 1.0) / 2.0)?),
    )
}

/// `Phi(z, s, v) = Gamma(s)^-1 int_0^inf t^(s-1) e^(-vt) / (1 - z e^-t) dt`
/// by tanh-sinh on `[0, 1]` and Gauss-Laguerre on `[1, inf)`. Cross-check
/// only.
pub fn lerch_integral_oracle(z: Complex, s: Complex, v: Complex) -> Result<Complex> {
    if !(v.re > 0.0) {
        return Err(domain("lerch_integral_oracle", "needs Re(v) > 0"));
    }
    let r = z.norm();
    let at_one = (z - 1.0).norm() <= REGIME_TOL;
    if at_one {
        if !(s.re > 1.0) {
            return Err(domain("lerch_integral_oracle", "z = 1 needs Re(s) > 1"));
        }
    } else if r > 1.0 + REGIME_TOL || !(s.re > 0.0) {
        return Err(domain(
            "lerch_integral_oracle",
            "needs |z| <= 1, z != 1 and Re(s) > 0",
        ));
    }
    let integrand = |t: f64| -> Complex {
        if t <= 0.0 {
            // underflowed node; the integrand is integrable there
            return c64(0.0, 0.0);
        }
        let num = cpow(c64(t, 0.0), s - 1.0) * (-v * t).exp();
        if at_one {
            // 1 - e^-t = -expm1(-t); real division, since complex division
            // squares the (tiny) denominator
            num / -(-t).exp_m1()
        } else {
            num / (1.0 - z * (-t).exp())
        }
    };
    let (head, _) = tanh_sinh_estimate(8, |t, _| Ok(integrand(t)))?;

    // t = 1 + sigma / Re(v)
    let vr = v.re;
    let rule = gauss_laguerre(96, 0.0)?;
    let mut tail = c64(0.0, 0.0);
    for (&sigma, &w) in rule.nodes.iter().zip(&rule.weights) {
        let t = 1.0 + sigma / vr;
        // e^{-v t} = e^{-sigma} e^{-v} e^{-i Im(v) sigma / vr}; e^{-sigma} is in w
        let phase = (-v - c64(0.0, v.im * sigma / vr)).exp();
        let denom = 1.0 - z * (-t).exp();
        tail += cpow(c64(t, 0.0), s - 1.0) * phase / denom * w;
    }
    tail /= vr;
    finite("lerch_integral_oracle", (head + tail) / gamma(s)?)
}

/// `pi`-periodic helper used by callers that build `z = e^{2 pi i m}`.
pub fn unit_phase(turns: Complex) -> Complex {
    (c64(0.0, 2.0 * PI) * turns).exp()
}

#[cfg(test)]
#[allow(clippy::excessive_precision)] // reference values carry extra digits
mod tests {
    use super::*;
    use std::f64::consts::LN_2;

    const ZETA3: f64 = 1.202_056_903_159_594_3;

    fn r(x: f64) -> Complex {
        c64(x, 0.0)
    }

    fn close(a: Complex, b: Complex, rel: f64) -> bool {
        (a - b).norm() <= rel * b.norm().max(1e-300)
    }

    /// Abel sum of `sum (-1)^n (n + v)^p` by polynomial extrapolation of
    /// `f(r) = sum (-r)^n (n+v)^p` to `r = 1`.
    fn abel_alternating(v: f64, p: i32) -> f64 {
        let hs: Vec<f64> = (0..6).map(|j| 0.1 * 0.5f64.powi(j)).collect();
        let vals: Vec<f64> = hs
            .iter()
            .map(|h| {
                let r = 1.0 - h;
                let mut sum = 0.0;
                let mut rn = 1.0;
                let mut n = 0;
                while rn > 1e-20 {
                    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                    sum += sign * rn * (n as f64 + v).powi(p);
                    rn *= r;
                    n += 1;
                }
                sum
            })
            .collect();
        // Neville at h = 0
        let mut t = vals.clone();
        for k in 1..t.len() {
            for i in (k..t.len()).rev() {
                t[i] = (hs[i] * t[i - 1] - hs[i - k] * t[i]) / (hs[i] - hs[i - k]);
            }
        }
        t[t.len() - 1]
    }

    #[test]
    fn trivial_values() {
        let v = c64(0.7, 0.2);
        let s = c64(1.3, -0.4);
        assert!(close(lerch_phi(LerchArgs::new(r(0.0), s, v)).unwrap(), cpow(v, -s), 1e-15));
        let z = c64(0.3, 0.5);
        assert!(close(lerch_phi(LerchArgs::new(z, r(0.0), v)).unwrap(), (1.0 - z).inv(), 1e-14));
        let z = c64(0.6, 0.8);
        assert!(close(lerch_phi(LerchArgs::new(z, r(0.0), v)).unwrap(), (1.0 - z).inv(), 1e-14));
    }

    #[test]
    fn half_one_one() {
        // partial sums of sum 2^-n / (n+1) with remainder bound 2^-N
        let mut oracle = 0.0;
        for n in 0..60 {
            oracle += 0.5f64.powi(n) / (n as f64 + 1.0);
        }
        assert!((oracle - 2.0 * LN_2).abs() < 1e-15);
        let got = lerch_phi(LerchArgs::new(r(0.5), r(1.0), r(1.0))).unwrap();
        assert!(close(got, r(oracle), 1e-14), "{got}");
    }

    #[test]
    fn apostol_examples() {
        assert!(lerch_apostol(r(-1.0), 1, r(0.5)).unwrap().norm() < 1e-16);
        let oracle = abel_alternating(0.5, 1);
        assert!(oracle.abs() < 1e-9, "{oracle}");

        let got = lerch_apostol(r(-1.0), 2, r(0.25)).unwrap();
        let oracle = abel_alternating(0.25, 2);
        assert!((oracle + 0.09375).abs() < 1e-9, "{oracle}");
        assert!(close(got, r(-0.09375), 1e-15), "{got}");
        // eta cross-check: sum (-1)^n (n + 1/4)^2 = eta(-2) + eta(-1)/2 + eta(0)/16
        // with eta(-2) = 0, eta(-1) = 1/4, eta(0) = 1/2
        assert!((0.0 - 0.25 / 2.0 + 0.5 / 16.0 - got.re).abs() < 1e-15);
    }

    #[test]
    fn apostol_is_polynomial_in_v() {
        let z = c64(0.3, -0.9);
        for n in 0..=6u32 {
            // (n+1)-th finite difference in v vanishes
            let mut diff = c64(0.0, 0.0);
            let mut binom = 1.0;
            for j in 0..=(n + 1) {
                let sign = if (n + 1 - j) % 2 == 0 { 1.0 } else { -1.0 };
                diff += lerch_apostol(z, n, r(0.3 + j as f64)).unwrap() * (sign * binom);
                binom = binom * (n + 1 - j) as f64 / (j as f64 + 1.0);
            }
            let scale = lerch_apostol(z, n, r(0.3 + n as f64)).unwrap().norm().max(1.0);
            assert!(diff.norm() < 1e-11 * scale * 2f64.powi(n as i32), "n={n}: {diff}");
        }
    }

    #[test]
    fn minus_one_three_one() {
        // averaged alternating partial sums
        let n = 100_000;
        let mut s = 0.0;
        let mut prev = 0.0;
        for k in 0..=n {
            prev = s;
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            s += sign / ((k + 1) as f64).powi(3);
        }
        let oracle = 0.5 * (s + prev);
        assert!((oracle - 0.75 * ZETA3).abs() < 1e-14);
        let uc = lerch_unit_circle(r(-1.0), r(3.0), r(1.0)).unwrap();
        assert!(close(uc.value, r(oracle), 1e-13), "{uc:?}");
        let split = lerch_minus_one_split(r(3.0), r(1.0)).unwrap();
        assert!(close(split, r(oracle), 1e-13));
        let integral = lerch_integral_oracle(r(-1.0), r(3.0), r(1.0)).unwrap();
        assert!(close(integral, r(oracle), 1e-10), "{integral}");
    }

    #[test]
    fn split_examples() {
        let v = c64(0.8, 0.3);
        assert!(close(lerch_minus_one_split(r(0.0), v).unwrap(), r(0.5), 1e-14));
        let eta2 = PI * PI / 12.0;
        assert!(close(lerch_minus_one_split(r(2.0), r(1.0)).unwrap(), r(eta2), 1e-13));
        let split = lerch_minus_one_split(r(2.5), r(0.8)).unwrap();
        let uc = lerch_unit_circle(r(-1.0), r(2.5), r(0.8)).unwrap();
        assert!(close(uc.value, split, 1e-9), "{uc:?} vs {split}");
        // s = 1: log 2 at v = 1
        assert!(close(lerch_minus_one_split(r(1.0), r(1.0)).unwrap(), r(LN_2), 1e-14));
    }

    #[test]
    fn i_two_one_brute_force() {
        // 10^6 terms, then average over one period of z^n = i^n
        let n = 1_000_000usize;
        let mut partial = Vec::with_capacity(4);
        let mut sum = c64(0.0, 0.0);
        let pows = [r(1.0), c64(0.0, 1.0), r(-1.0), c64(0.0, -1.0)];
        for k in 0..n + 4 {
            sum += pows[k % 4] / ((k + 1) as f64).powi(2);
            if k >= n {
                partial.push(sum);
            }
        }
        let oracle: Complex = partial.iter().sum::<Complex>() / 4.0;
        // frozen high-precision value: Catalan + i pi^2/48
        let frozen = c64(0.915_965_594_177_219_015, 0.205_616_758_356_028_305);
        assert!(close(oracle, frozen, 1e-12), "{oracle}");
        let got = lerch_unit_circle(c64(0.0, 1.0), r(2.0), r(1.0)).unwrap();
        assert!(close(got.value, oracle, 1e-12), "{got:?}");
        assert!(got.err < 1e-12);
    }

    #[test]
    fn integral_oracle_examples() {
        assert!(close(lerch_integral_oracle(r(0.0), r(2.0), r(1.0)).unwrap(), r(1.0), 1e-11));
        let got = lerch_integral_oracle(r(0.5), r(1.0), r(1.0)).unwrap();
        assert!(close(got, r(2.0 * LN_2), 1e-10), "{got}");
        let z1 = lerch_integral_oracle(r(1.0), r(3.0), r(1.0));
        let z1 = z1.unwrap_or_else(|e| panic!("{e}"));
        assert!(close(z1, r(ZETA3), 1e-10), "{z1}");
        assert!(lerch_integral_oracle(r(1.0), r(1.0), r(1.0)).is_err());
        assert!(lerch_integral_oracle(r(0.5), r(-0.5), r(1.0)).is_err());
    }

    #[test]
    fn regimes_agree() {
        let cases = [
            (c64(0.6, 0.79), c64(1.7, 0.3), c64(0.9, -0.2)),
            (c64(-0.999, 0.0), c64(2.2, 0.0), c64(0.4, 0.0)),
            (c64(0.0, 0.9995), c64(0.5, 0.0), c64(1.5, 0.1)),
            (c64(-0.5, 0.5), c64(3.0, -1.0), c64(2.0, 0.0)),
        ];
        for (z, s, v) in cases {
            let via_dispatch = lerch_phi(LerchArgs::new(z, s, v)).unwrap();
            let via_integral = lerch_integral_oracle(z, s, v).unwrap();
            assert!(close(via_dispatch, via_integral, 1e-8), "{z} {s} {v}: {via_dispatch} vs {via_integral}");
            let via_tail = continued(z, s, v).unwrap();
            assert!(close(via_tail.value, via_integral, 1e-8));
        }
        // apostol vs continuation at s = -n on the circle
        let z = unit_phase(c64(0.3, 0.0));
        for n in 0..=6u32 {
            let a = lerch_apostol(z, n, c64(0.7, 0.1)).unwrap();
            let c = continued(z, r(-(n as f64)), c64(0.7, 0.1)).unwrap();
            // the head sums growing terms, so the bound is the rounding estimate
            assert!((c.value - a).norm() <= c.err + 1e-13, "n={n}: {c:?} vs {a}");
        }
    }

    #[test]
    fn recurrence_in_v() {
        let cases = [
            (c64(0.3, 0.4), c64(1.5, 0.0), c64(0.5, 0.0)),
            (unit_phase(r(0.37)), c64(-2.5, 0.3), c64(0.8, 0.0)),
            (r(-1.0), c64(0.5, 0.0), c64(1.2, -0.5)),
            (unit_phase(r(0.1)), r(-3.0), c64(0.25, 0.0)),
        ];
        for (z, s, v) in cases {
            let lhs = lerch_phi_detailed(LerchArgs::new(z, s, v)).unwrap();
            let next = lerch_phi_detailed(LerchArgs::new(z, s, v + 1.0)).unwrap();
            let rhs = cpow(v, -s) + z * next.value;
            let tol = lhs.err + next.err + 1e-12 * rhs.norm();
            assert!((lhs.value - rhs).norm() <= tol, "{z} {s} {v}: {lhs:?} vs {rhs}");
        }
    }

    #[test]
    fn rejects() {
        assert!(matches!(
            lerch_phi(LerchArgs::new(r(1.5), r(1.0), r(1.0))),
            Err(Error::Unsupported { .. })
        ));
        assert!(lerch_phi(LerchArgs::new(r(0.5), r(1.0), r(-2.0))).is_err());
        assert!(lerch_apostol(r(1.0), 2, r(1.0)).is_err());
        assert!(lerch_unit_circle(unit_phase(r(1e-9)), r(2.0), r(1.0)).is_err());
    }
}
