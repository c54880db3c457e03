//! The seven complex parameters of the identity and their convergence strip.

use serde::{Deserialize, Serialize};

use crate::{c64, Complex};

/// Parameters `(k, a, m, u, v, mu, nu)`.
///
/// `(u, v)` are the order and degree of `P_v^u(x)`, `(mu, nu)` those of
/// `P_nu^mu(y)`, `m` is the Mellin exponent, `k` the power of the coupling
/// logarithm and `a` its scale.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParameterSet {
    pub k: Complex,
    pub a: Complex,
    pub m: Complex,
    pub u: Complex,
    pub v: Complex,
    pub mu: Complex,
    pub nu: Complex,
}

impl Default for ParameterSet {
    /// `k = 0, a = 1, m = 1/2, u = mu = 0, v = nu = 1`.
    fn default() -> Self {
        Self::real(0.0, 1.0, 0.5, 0.0, 1.0, 0.0, 1.0)
    }
}

impl ParameterSet {
    pub fn real(k: f64, a: f64, m: f64, u: f64, v: f64, mu: f64, nu: f64) -> Self {
        Self {
            k: c64(k, 0.0),
            a: c64(a, 0.0),
            m: c64(m, 0.0),
            u: c64(u, 0.0),
            v: c64(v, 0.0),
            mu: c64(mu, 0.0),
            nu: c64(nu, 0.0),
        }
    }

    pub fn with_k(mut self, k: f64) -> Self {
        self.k = c64(k, 0.0);
        self
    }

    pub fn with_a(mut self, a: Complex) -> Self {
        self.a = a;
        self
    }

    pub fn with_m(mut self, m: Complex) -> Self {
        self.m = m;
        self
    }

    /// Named fields in canonical order.
    pub fn fields(&self) -> [(&'static str, Complex); 7] {
        [
            ("k", self.k),
            ("a", self.a),
            ("m", self.m),
            ("u", self.u),
            ("v", self.v),
            ("mu", self.mu),
            ("nu", self.nu),
        ]
    }

    /// True when every parameter has zero imaginary part.
    pub fn is_real(&self) -> bool {
        self.fields().iter().all(|(_, z)| z.im == 0.0)
    }

    /// `k` as a non-negative integer, if it is one exactly.
    pub fn integer_k(&self) -> Option<u32> {
        let k = self.k;
        if k.im == 0.0 && k.re >= 0.0 && k.re.fract() == 0.0 && k.re <= u32::MAX as f64 {
            Some(k.re as u32)
        } else {
            None
        }
    }

    pub fn exponents(&self) -> ExponentQuad {
        derive_exponents(self)
    }
}

/// Exponents of the four log-power factors `log^beta(1/p)`, `log^beta(1/q)`,
/// `log^beta(1/t)`, `log^beta(1/z)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExponentQuad {
    pub beta_p: Complex,
    pub beta_q: Complex,
    pub beta_t: Complex,
    pub beta_z: Complex,
}

impl ExponentQuad {
    /// In axis order `p, q, t, z`.
    pub fn as_array(&self) -> [Complex; 4] {
        [self.beta_p, self.beta_q, self.beta_t, self.beta_z]
    }
}

pub fn derive_exponents(ps: &ParameterSet) -> ExponentQuad {
    let ParameterSet { m, u, v, mu, nu, .. } = *ps;
    ExponentQuad {
        beta_p: (-mu - m - nu) / 2.0,
        beta_q: (-mu - m + nu + 1.0) / 2.0,
        beta_t: (m - u + v) / 2.0,
        beta_z: (m - u - v - 1.0) / 2.0,
    }
}

/// Absolute and relative tolerance pair; a comparison passes when
/// `|x - y| <= abs_tol + rel_tol * max(|x|, |y|)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub abs_tol: f64,
    pub rel_tol: f64,
}

impl Tolerances {
    pub fn new(abs_tol: f64, rel_tol: f64) -> crate::Result<Self> {
        if !(abs_tol >= 0.0 && rel_tol >= 0.0) || !abs_tol.is_finite() || !rel_tol.is_finite() {
            return Err(crate::Error::InvalidArgument(format!(
                "tolerances must be finite and non-negative, got abs={abs_tol}, rel={rel_tol}"
            )));
        }
        if abs_tol == 0.0 && rel_tol == 0.0 {
            return Err(crate::Error::InvalidArgument(
                "abs_tol and rel_tol cannot both be zero".into(),
            ));
        }
        Ok(Self { abs_tol, rel_tol })
    }

    pub fn relative(rel_tol: f64) -> Self {
        Self {
            abs_tol: 0.0,
            rel_tol,
        }
    }

    pub fn bound(&self, x: Complex, y: Complex) -> f64 {
        self.abs_tol + self.rel_tol * x.norm().max(y.norm())
    }

    pub fn accepts(&self, x: Complex, y: Complex) -> bool {
        (x - y).norm() <= self.bound(x, y)
    }
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            abs_tol: 1e-12,
            rel_tol: 1e-9,
        }
    }
}

/// A failed strip inequality.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub constraint: String,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ValidationOutcome {
    pub violations: Vec<Violation>,
    /// Non-fatal notes: near-boundary parameters, or the stricter
    /// `Re(u) < Re(m) < 1/2, Re(m) < Re(v)` conditions failing.
    pub warnings: Vec<String>,
}

impl ValidationOutcome {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn names(&self) -> Vec<&str> {
        self.violations
            .iter()
            .map(|v| v.constraint.as_str())
            .collect()
    }
}

const BOUNDARY_WARN: f64 = 1e-8;

/// Checks the convergence strip. Never fails; every violated inequality is
/// listed by name.
pub fn validate_parameters(ps: &ParameterSet) -> ValidationOutcome {
    let mut out = ValidationOutcome::default();

    let non_finite: Vec<&str> = ps
        .fields()
        .iter()
        .filter(|(_, z)| !(z.re.is_finite() && z.im.is_finite()))
        .map(|(n, _)| *n)
        .collect();
    if !non_finite.is_empty() {
        out.violations.push(Violation {
            constraint: "finite".into(),
            detail: format!("non-finite parameters: {}", non_finite.join(", ")),
        });
        return out;
    }

    // (name, slack) with slack > 0 meaning satisfied
    let mut checks: Vec<(String, f64)> = vec![
        ("Re(u)<1".into(), 1.0 - ps.u.re),
        ("0<Re(m)<1".into(), ps.m.re.min(1.0 - ps.m.re)),
        ("Re(v)>0".into(), ps.v.re),
        ("Re(m)<|Re(v)|".into(), ps.v.re.abs() - ps.m.re),
        ("Re(mu)<1".into(), 1.0 - ps.mu.re),
        ("Re(nu)>0".into(), ps.nu.re),
        ("Re(m)<|Re(nu)|".into(), ps.nu.re.abs() - ps.m.re),
    ];
    let beta = ps.exponents();
    for (name, b) in [
        ("beta_p", beta.beta_p),
        ("beta_q", beta.beta_q),
        ("beta_t", beta.beta_t),
        ("beta_z", beta.beta_z),
    ] {
        checks.push((format!("Re({name})>-1"), b.re + 1.0));
    }

    for (name, slack) in checks {
        if slack <= 0.0 {
            out.violations.push(Violation {
                detail: format!("{name} fails (margin {slack:e})"),
                constraint: name,
            });
        } else if slack < BOUNDARY_WARN {
            out.warnings
                .push(format!("{name} holds only by {slack:e}; quadrature degrades near the boundary"));
        }
    }

    if ps.a == c64(0.0, 0.0) {
        out.violations.push(Violation {
            constraint: "a!=0".into(),
            detail: "log(a) undefined".into(),
        });
    }

    if out.violations.is_empty() && !(ps.u.re < ps.m.re && ps.m.re < 0.5 && ps.m.re < ps.v.re) {
        out.warnings.push(
            "stricter conditions Re(u)<Re(m)<1/2, Re(m)<Re(v) do not hold; the identity's own hypotheses do"
                .into(),
        );
    }
    out
}

/// Shortest round-trip decimal; scientific outside `[1e-4, 1e15)`.
fn format_real(x: f64) -> String {
    let a = x.abs();
    if a != 0.0 && !(1e-4..1e15).contains(&a) {
        format!("{x:e}")
    } else {
        format!("{x}")
    }
}

/// `re`, `re+imi` or `re-imi`.
pub fn format_complex(z: Complex) -> String {
    if z.im == 0.0 {
        format_real(z.re)
    } else if z.im.is_sign_negative() {
        format!("{}-{}i", format_real(z.re), format_real(-z.im))
    } else {
        format!("{}+{}i", format_real(z.re), format_real(z.im))
    }
}

/// Inverse of [`format_complex`]; also accepts `i`, `-2i`, `1e-3+4i`.
pub fn parse_complex(s: &str) -> crate::Result<Complex> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || crate::Error::InvalidArgument(format!("cannot parse complex number '{s}'"));
    if t.is_empty() {
        return Err(bad());
    }
    let Some(body) = t.strip_suffix('i').or_else(|| t.strip_suffix('j')) else {
        return t.parse::<f64>().map(|re| c64(re, 0.0)).map_err(|_| bad());
    };
    // split at the last sign that is not the leading one or an exponent sign
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    let imag = |x: &str| -> crate::Result<f64> {
        match x {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => x.parse().map_err(|_| bad()),
        }
    };
    match split {
        Some(i) => {
            let re: f64 = body[..i].parse().map_err(|_| bad())?;
            Ok(c64(re, imag(&body[i..])?))
        }
        None => Ok(c64(0.0, imag(body)?)),
    }
}
