//! The identity catalog: the general identity and its special cases.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lerch::unit_phase;
use crate::params::{validate_parameters, ParameterSet, Violation};
use crate::{c64, Complex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseTag {
    Theorem,
    Degenerate,
    HurwitzZetaForm,
    HarmonicLimit,
    DifferenceArctanh,
    Log3,
    ArccothSqrt2,
    AltLerch,
    EtaZetaLine,
    Log2Limit,
    Apery,
}

pub const ALL_TAGS: [CaseTag; 11] = [
    CaseTag::Theorem,
    CaseTag::Degenerate,
    CaseTag::HurwitzZetaForm,
    CaseTag::HarmonicLimit,
    CaseTag::DifferenceArctanh,
    CaseTag::Log3,
    CaseTag::ArccothSqrt2,
    CaseTag::AltLerch,
    CaseTag::EtaZetaLine,
    CaseTag::Log2Limit,
    CaseTag::Apery,
];

impl CaseTag {
    pub fn name(self) -> &'static str {
        match self {
            CaseTag::Theorem => "theorem",
            CaseTag::Degenerate => "degenerate",
            CaseTag::HurwitzZetaForm => "hurwitz_zeta_form",
            CaseTag::HarmonicLimit => "harmonic_limit",
            CaseTag::DifferenceArctanh => "difference_arctanh",
            CaseTag::Log3 => "log3",
            CaseTag::ArccothSqrt2 => "arccoth_sqrt2",
            CaseTag::AltLerch => "alt_lerch",
            CaseTag::EtaZetaLine => "eta_zeta_line",
            CaseTag::Log2Limit => "log2_limit",
            CaseTag::Apery => "apery",
        }
    }

    pub fn title(self) -> &'static str {
        match self {
            CaseTag::Theorem => "general identity, Hurwitz-Lerch form",
            CaseTag::Degenerate => "degenerate case k = 0",
            CaseTag::HurwitzZetaForm => "Hurwitz zeta split at m = 1/2",
            CaseTag::HarmonicLimit => "harmonic numbers, limit k -> -1 at a = -2",
            CaseTag::DifferenceArctanh => "difference m vs n at k = -1, a = 1 (arctanh form)",
            CaseTag::Log3 => "log 3 from the difference at (m, n) = (1/2, 1/3)",
            CaseTag::ArccothSqrt2 => "arccoth(sqrt 2) from the difference at (m, n) = (1/2, 1/4)",
            CaseTag::AltLerch => "alternate Lerch form Phi(e^(i pi m'), -k, a')",
            CaseTag::EtaZetaLine => "Riemann zeta line (alternate form at m' = a' = 1)",
            CaseTag::Log2Limit => "log 2, limit k -> -1 of the zeta line",
            CaseTag::Apery => "Apery's constant zeta(3), zeta line at k = -3",
        }
    }

    /// Pinned parameters, in the identity's own variables.
    pub fn constraint(self) -> &'static str {
        match self {
            CaseTag::Theorem => "validity strip only",
            CaseTag::Degenerate => "k=0",
            CaseTag::HurwitzZetaForm => "m=1/2",
            CaseTag::HarmonicLimit => "k=-1, a=-2, m=1/2",
            CaseTag::DifferenceArctanh => "k=-1, a=1, extra n",
            CaseTag::Log3 => "k=-1, a=1, m=1/2, n=1/3",
            CaseTag::ArccothSqrt2 => "k=-1, a=1, m=1/2, n=1/4",
            CaseTag::AltLerch => "m=m'/2, a=-exp(2 pi i a'), 0<Re(a')<=1",
            CaseTag::EtaZetaLine => "m=1/2, a=-1",
            CaseTag::Log2Limit => "k=-1, m=1/2, a=-1",
            CaseTag::Apery => "k=-3, m=1/2, a=-1",
        }
    }

    pub fn formula(self) -> &'static str {
        match self {
            CaseTag::Theorem => {
                "i^(k-1) pi^(k+2) e^(i pi m) 2^(k+mu+u) Phi(e^(2 i pi m), -k, (pi - i log a)/(2 pi))"
            }
            CaseTag::Degenerate => "pi^2 csc(pi m) 2^(mu+u-1)",
            CaseTag::HurwitzZetaForm => {
                "i^k pi^(k+2) 2^(k+mu+u) 2^k [zeta(-k, V/2) - zeta(-k, (V+1)/2)], V = (pi - i log a)/(2 pi)"
            }
            CaseTag::HarmonicLimit => {
                "-i pi (H_(-i log2/(4 pi)) - H_(-1/2 - i log2/(4 pi))) 2^(mu+u-2)"
            }
            CaseTag::DifferenceArctanh => "pi 2^(mu+u) (arctanh(e^(i pi m)) - arctanh(e^(i pi n)))",
            CaseTag::Log3 => "-pi log(3) 2^(mu+u-2)",
            CaseTag::ArccothSqrt2 => "-pi arccoth(sqrt 2) 2^(mu+u-1)",
            CaseTag::AltLerch => "-i pi^(k+2) e^(i pi (k+m')/2) 2^(k+mu+u) Phi(e^(i pi m'), -k, a')",
            CaseTag::EtaZetaLine => "-(2^(k+1)-1) e^(i pi k/2) pi^(k+2) zeta(-k) 2^(k+mu+u)",
            CaseTag::Log2Limit => "-i pi log(2) 2^(mu+u-1)",
            CaseTag::Apery => "3 i zeta(3) 2^(mu+u-5) / pi",
        }
    }

    /// Whether the integrand is the single identity integrand at the
    /// case's parameters (false for the difference cases).
    pub fn is_single_integral(self) -> bool {
        !matches!(
            self,
            CaseTag::DifferenceArctanh | CaseTag::Log3 | CaseTag::ArccothSqrt2
        )
    }

    pub fn has_special_form(self) -> bool {
        self != CaseTag::Theorem
    }

    /// Cases whose special form needs (or is defined through) a limit in `k`.
    pub fn has_limit(self) -> bool {
        matches!(
            self,
            CaseTag::HarmonicLimit | CaseTag::Log2Limit | CaseTag::Apery
        )
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CaseTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ALL_TAGS
            .iter()
            .copied()
            .find(|t| t.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = ALL_TAGS.iter().map(|t| t.name()).collect();
                Error::InvalidArgument(format!(
                    "unknown case '{s}' (expected one of {})",
                    names.join(", ")
                ))
            })
    }
}

/// A catalog entry together with its extras.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IdentityCase {
    pub tag: CaseTag,
    /// Second exponent of the difference cases.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<Complex>,
    /// `(m', a')` of the alternate Lerch form.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alt: Option<(Complex, Complex)>,
}

const PIN_TOL: f64 = 1e-12;

fn r(x: f64) -> Complex {
    c64(x, 0.0)
}

/// `a = -e^(2 pi i a')`, snapped onto the negative real axis from above
/// when `a'` is real and (numerically) an integer, so that `log a = i pi`.
pub fn alt_scale(a_alt: Complex) -> Complex {
    let a = -unit_phase(a_alt);
    if a_alt.im == 0.0 && (a_alt.re - a_alt.re.round()).abs() < PIN_TOL {
        c64(-1.0, 0.0)
    } else {
        a
    }
}

impl IdentityCase {
    /// The case with its default extras.
    pub fn new(tag: CaseTag) -> Self {
        let (n, alt) = match tag {
            CaseTag::DifferenceArctanh | CaseTag::Log3 => (Some(r(1.0 / 3.0)), None),
            CaseTag::ArccothSqrt2 => (Some(r(0.25)), None),
            CaseTag::AltLerch => (None, Some((r(1.0), r(1.0)))),
            _ => (None, None),
        };
        Self { tag, n, alt }
    }

    pub fn with_n(mut self, n: Complex) -> Self {
        self.n = Some(n);
        self
    }

    pub fn with_alt(mut self, m_alt: Complex, a_alt: Complex) -> Self {
        self.alt = Some((m_alt, a_alt));
        self
    }

    /// Pinned `(name, value)` pairs in the identity's variables.
    pub fn pins(&self) -> Vec<(&'static str, Complex)> {
        let half = r(0.5);
        match self.tag {
            CaseTag::Theorem => vec![],
            CaseTag::Degenerate => vec![("k", r(0.0))],
            CaseTag::HurwitzZetaForm => vec![("m", half)],
            CaseTag::HarmonicLimit => vec![("k", r(-1.0)), ("a", r(-2.0)), ("m", half)],
            CaseTag::DifferenceArctanh => vec![("k", r(-1.0)), ("a", r(1.0))],
            CaseTag::Log3 | CaseTag::ArccothSqrt2 => {
                vec![("k", r(-1.0)), ("a", r(1.0)), ("m", half)]
            }
            CaseTag::AltLerch => match self.alt {
                Some((m_alt, a_alt)) => vec![("m", m_alt / 2.0), ("a", alt_scale(a_alt))],
                None => vec![],
            },
            CaseTag::EtaZetaLine => vec![("m", half), ("a", r(-1.0))],
            CaseTag::Log2Limit => vec![("k", r(-1.0)), ("m", half), ("a", r(-1.0))],
            CaseTag::Apery => vec![("k", r(-3.0)), ("m", half), ("a", r(-1.0))],
        }
    }

    /// Default parameters: the reference set `u = mu = 0, v = nu = 1,
    /// m = 1/2, a = 1, k = 0` with this case's pins applied.
    pub fn default_params(&self) -> ParameterSet {
        let mut ps = ParameterSet::default();
        if self.tag == CaseTag::EtaZetaLine {
            ps.k = r(2.0);
        }
        self.apply_pins(ps)
    }

    pub fn apply_pins(&self, mut ps: ParameterSet) -> ParameterSet {
        for (name, value) in self.pins() {
            match name {
                "k" => ps.k = value,
                "a" => ps.a = value,
                "m" => ps.m = value,
                _ => unreachable!("pins only touch k, a, m"),
            }
        }
        ps
    }

    /// Every violated constraint: the validity strip (also at `m -> n` for
    /// the difference cases), pinned values, and missing extras.
    pub fn violations(&self, ps: &ParameterSet) -> Vec<Violation> {
        let mut out = validate_parameters(ps).violations;
        for (name, want) in self.pins() {
            let got = match name {
                "k" => ps.k,
                "a" => ps.a,
                _ => ps.m,
            };
            if (got - want).norm() > PIN_TOL * want.norm().max(1.0) {
                out.push(Violation {
                    constraint: format!("{name}={want}"),
                    detail: format!("case {} pins {name} = {want}, got {got}", self.tag),
                });
            }
        }
        match self.tag {
            CaseTag::DifferenceArctanh | CaseTag::Log3 | CaseTag::ArccothSqrt2 => match self.n {
                None => out.push(Violation {
                    constraint: "n given".into(),
                    detail: "difference cases need the second exponent n".into(),
                }),
                Some(n) => {
                    let pinned = match self.tag {
                        CaseTag::Log3 => Some(1.0 / 3.0),
                        CaseTag::ArccothSqrt2 => Some(0.25),
                        _ => None,
                    };
                    if let Some(want) = pinned {
                        if (n - want).norm() > PIN_TOL {
                            out.push(Violation {
                                constraint: format!("n={want}"),
                                detail: format!("case {} pins n, got {n}", self.tag),
                            });
                        }
                    }
                    for v in validate_parameters(&ps.with_m(n)).violations {
                        out.push(Violation {
                            constraint: format!("{} (m -> n)", v.constraint),
                            detail: v.detail,
                        });
                    }
                }
            },
            CaseTag::AltLerch => match self.alt {
                None => out.push(Violation {
                    constraint: "alternate parameters given".into(),
                    detail: "alt_lerch needs m' and a'".into(),
                }),
                Some((_, a_alt)) => {
                    // the third Lerch argument equals a' only on this strip
                    if !(a_alt.re > 0.0 && a_alt.re <= 1.0) {
                        out.push(Violation {
                            constraint: "0<Re(a')<=1".into(),
                            detail: format!("a' = {a_alt}"),
                        });
                    }
                }
            },
            _ => {}
        }
        out
    }
}

/// `(pi - i log a) / (2 pi)`, the third Lerch argument.
pub fn lerch_shift(a: Complex) -> Complex {
    (PI - c64(0.0, 1.0) * a.ln()) / (2.0 * PI)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_is_complete_and_parseable() {
        assert_eq!(ALL_TAGS.len(), 11);
        for t in ALL_TAGS {
            assert_eq!(t.name().parse::<CaseTag>().unwrap(), t);
            let case = IdentityCase::new(t);
            let ps = case.default_params();
            assert!(case.violations(&ps).is_empty(), "{t}: {:?}", case.violations(&ps));
        }
        assert!("nope".parse::<CaseTag>().is_err());
    }

    #[test]
    fn pins_are_enforced() {
        let case = IdentityCase::new(CaseTag::Apery);
        let ps = case.default_params().with_k(-2.0);
        let v = case.violations(&ps);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].constraint, "k=-3+0i");
    }

    #[test]
    fn alt_mapping() {
        let case = IdentityCase::new(CaseTag::AltLerch).with_alt(r(1.0), r(1.0));
        let ps = case.default_params();
        assert_eq!(ps.m, r(0.5));
        assert_eq!(ps.a, r(-1.0));
        assert!((lerch_shift(ps.a) - 1.0).norm() < 1e-15);
        // a' = 0.3: third argument comes back as a'
        let a = alt_scale(r(0.3));
        assert!((lerch_shift(a) - 0.3).norm() < 1e-14);
        let bad = IdentityCase::new(CaseTag::AltLerch).with_alt(r(1.0), r(1.5));
        assert!(!bad.violations(&bad.default_params()).is_empty());
    }

    #[test]
    fn difference_checks_both_exponents() {
        let case = IdentityCase::new(CaseTag::DifferenceArctanh).with_n(r(1.2));
        let v = case.violations(&case.default_params());
        assert!(v.iter().any(|v| v.constraint == "0<Re(m)<1 (m -> n)"), "{v:?}");
    }
}
