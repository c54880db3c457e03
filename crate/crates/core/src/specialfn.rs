//! Complex gamma-family and zeta-family functions.
//!
//! Everything here works on principal branches. `log_gamma` is the analytic
//! log-gamma function with its cut on `(-inf, 0]`; `gamma(z) == exp(log_gamma(z))`.

use std::f64::consts::{LN_2, PI};

use crate::error::{domain, finite, Error, Result};
use crate::{c64, Complex};

/// Euler-Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// Highest polygamma order supported.
pub const MAX_POLYGAMMA_ORDER: u32 = 12;

/// `B_2, B_4, ..., B_30`.
pub(crate) const BERNOULLI_EVEN: [f64; 15] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
];

/// Euler-Maclaurin corrections for the zeta functions stop at `B_16`.
const ZETA_BERNOULLI_TERMS: usize = 8;

/// `z` equals a non-positive integer exactly.
pub fn is_nonpositive_integer(z: Complex) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0
}

/// Principal complex power `base^exponent`, with `0^e = 0` for `Re(e) > 0`.
pub fn cpow(base: Complex, exponent: Complex) -> Complex {
    if base == c64(0.0, 0.0) {
        if exponent == c64(0.0, 0.0) {
            return c64(1.0, 0.0);
        }
        return c64(0.0, 0.0);
    }
    (exponent * base.ln()).exp()
}

fn check_pole(function: &'static str, z: Complex) -> Result<()> {
    if is_nonpositive_integer(z) {
        Err(Error::Pole { function, at: z })
    } else {
        Ok(())
    }
}

/// Stirling series for `ln Gamma(w)`, valid for `|w| >= 15`, `Re(w) >= 0`.
fn stirling_log_gamma(w: Complex) -> Complex {
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut pow = inv;
    let mut series = c64(0.0, 0.0);
    for (j, b) in BERNOULLI_EVEN.iter().enumerate().take(12) {
        let n = 2.0 * (j as f64 + 1.0);
        series += pow * (b / (n * (n - 1.0)));
        pow *= inv2;
    }
    (w - 0.5) * w.ln() - w + LN_SQRT_2PI + series
}

/// Analytic log-gamma. Relative accuracy of `exp(log_gamma)` is about 1e-14
/// for `|z| <= 50`.
pub fn log_gamma(z: Complex) -> Result<Complex> {
    check_pole("log_gamma", z)?;
    let mut w = z;
    let mut shift = c64(0.0, 0.0);
    while !(w.re >= 0.0 && w.norm() >= 15.0) {
        shift += w.ln();
        w += 1.0;
    }
    finite("log_gamma", stirling_log_gamma(w) - shift)
}

/// `Gamma(z)`, using reflection for `Re(z) < 1/2`.
pub fn gamma(z: Complex) -> Result<Complex> {
    check_pole("gamma", z)?;
    if z.re < 0.5 {
        let s = (z * PI).sin();
        let g = log_gamma(1.0 - z)?.exp();
        return finite("gamma", PI / (s * g));
    }
    finite("gamma", log_gamma(z)?.exp())
}

pub fn gamma_real(x: f64) -> Result<f64> {
    gamma(c64(x, 0.0)).map(|g| g.re)
}

/// `1 / Gamma(z)`, entire: zero at the poles of `Gamma`.
pub fn recip_gamma(z: Complex) -> Result<Complex> {
    if is_nonpositive_integer(z) {
        return Ok(c64(0.0, 0.0));
    }
    Ok(gamma(z)?.inv())
}

/// `psi(z) = Gamma'(z) / Gamma(z)`.
pub fn digamma(z: Complex) -> Result<Complex> {
    polygamma(0, z)
}

/// `psi^(n)(z)` for `n <= 12`: upward recurrence to `|z| >= 20`, then the
/// asymptotic series.
pub fn polygamma(n: u32, z: Complex) -> Result<Complex> {
    check_pole("polygamma", z)?;
    if n > MAX_POLYGAMMA_ORDER {
        return Err(domain(
            "polygamma",
            format!("order {n} exceeds {MAX_POLYGAMMA_ORDER}"),
        ));
    }
    let n_fact = factorial(n);
    // (-1)^n n!
    let signed_fact = if n.is_multiple_of(2) { n_fact } else { -n_fact };

    let mut w = z;
    let mut shift = c64(0.0, 0.0);
    while !(w.re >= 0.0 && w.norm() >= 20.0) {
        shift += signed_fact * w.powi(-(n as i32) - 1);
        w += 1.0;
    }

    let inv = w.inv();
    let inv2 = inv * inv;
    let asym = if n == 0 {
        let mut acc = w.ln() - inv * 0.5;
        let mut pow = inv2;
        for (j, b) in BERNOULLI_EVEN.iter().enumerate().take(13) {
            let k2 = 2.0 * (j as f64 + 1.0);
            acc -= pow * (b / k2);
            pow *= inv2;
        }
        acc
    } else {
        let n_minus_1_fact = factorial(n - 1);
        let inv_n = inv.powi(n as i32);
        let mut acc = inv_n * n_minus_1_fact + inv_n * inv * (n_fact * 0.5);
        // term_k = B_2k (2k+n-1)! / (2k)! / w^(2k+n)
        let mut pow = inv_n * inv2;
        for (j, b) in BERNOULLI_EVEN.iter().enumerate().take(13) {
            let k2 = 2 * (j as u32 + 1);
            let ratio = falling_ratio(k2 + n - 1, k2);
            acc += pow * (b * ratio);
            pow *= inv2;
        }
        if n % 2 == 1 {
            acc
        } else {
            -acc
        }
    };
    finite("polygamma", asym - shift)
}

/// `hi! / lo!` for `hi >= lo`.
fn falling_ratio(hi: u32, lo: u32) -> f64 {
    ((lo + 1)..=hi).fold(1.0, |acc, j| acc * j as f64)
}

pub(crate) fn factorial(n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, j| acc * j as f64)
}

/// Harmonic number `H_w = psi(w + 1) + gamma`.
pub fn harmonic(w: Complex) -> Result<Complex> {
    let z = w + 1.0;
    if is_nonpositive_integer(z) {
        return Err(Error::Pole {
            function: "harmonic",
            at: w,
        });
    }
    Ok(digamma(z)? + EULER_GAMMA)
}

/// Hurwitz zeta `zeta(s, v) = sum_{n>=0} (n + v)^(-s)` continued to all
/// `s != 1`, for `Re(v) > 0`, by Euler-Maclaurin summation.
pub fn hurwitz_zeta(s: Complex, v: Complex) -> Result<Complex> {
    if s == c64(1.0, 0.0) {
        return Err(Error::Pole {
            function: "hurwitz_zeta",
            at: s,
        });
    }
    if !(v.re > 0.0) {
        return Err(domain("hurwitz_zeta", format!("Re(v) must be > 0, got v = {v}")));
    }
    // At s = -n (n <= 15) the expansion terminates: no shift needed.
    let exact = s.im == 0.0 && s.re <= 0.0 && s.re.fract() == 0.0 && s.re >= -15.0;
    let (target, terms) = if exact {
        (0.0, BERNOULLI_EVEN.len())
    } else if s.re >= 0.0 {
        (10.0 + s.norm(), ZETA_BERNOULLI_TERMS)
    } else {
        // Head terms grow like n^(-Re s) and cancel against the integral
        // term; keep the shift short and use the full Bernoulli table.
        ((s.norm() + 31.0) / (2.0 * PI) * EM_NEG_FACTOR, BERNOULLI_EVEN.len())
    };
    finite("hurwitz_zeta", euler_maclaurin_zeta(s, v, target, terms))
}

pub(crate) const EM_NEG_FACTOR: f64 = 0.8;

pub(crate) fn euler_maclaurin_zeta(s: Complex, v: Complex, target: f64, terms: usize) -> Complex {
    let mut head = c64(0.0, 0.0);
    let mut w = v;
    while w.norm() < target {
        head += cpow(w, -s);
        w += 1.0;
    }
    let w_pow = cpow(w, -s);
    let mut tail = w * w_pow / (s - 1.0) + w_pow * 0.5;
    // B_2j / (2j)! * (s)_(2j-1) * w^(-s-2j+1)
    let inv = w.inv();
    let mut rising = s;
    let mut pow = w_pow * inv;
    let mut fact = 2.0;
    for (j, b) in BERNOULLI_EVEN.iter().enumerate().take(terms) {
        tail += rising * pow * (b / fact);
        let jf = (2 * j + 2) as f64;
        rising *= (s + jf - 1.0) * (s + jf);
        pow *= inv * inv;
        fact *= (jf + 1.0) * (jf + 2.0);
        if rising == c64(0.0, 0.0) {
            break;
        }
    }
    head + tail
}

/// Riemann zeta via `zeta(s, 1)`; the trivial zeros are returned exactly.
pub fn riemann_zeta(s: Complex) -> Result<Complex> {
    if s.im == 0.0 && s.re < 0.0 && s.re % 2.0 == 0.0 {
        return Ok(c64(0.0, 0.0));
    }
    hurwitz_zeta(s, c64(1.0, 0.0))
}

/// Dirichlet eta `(1 - 2^(1-s)) zeta(s)`; `eta(1) = ln 2`.
pub fn dirichlet_eta(s: Complex) -> Result<Complex> {
    if s == c64(1.0, 0.0) {
        return Ok(c64(LN_2, 0.0));
    }
    let factor = 1.0 - cpow(c64(2.0, 0.0), 1.0 - s);
    Ok(factor * riemann_zeta(s)?)
}
