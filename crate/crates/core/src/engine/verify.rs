//! Multi-path verification of one catalog case.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::engine::catalog::IdentityCase;
use crate::engine::formulas::{
    lhs_jet, lhs_moment_estimate, rhs_closed, rhs_example, rhs_limit, Estimate,
    DEFAULT_LIMIT_STEPS,
};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::jets::MAX_DERIVATIVE_ORDER;
use crate::params::{format_complex, validate_parameters, ParameterSet, Tolerances, Violation};
use crate::quad::{integrate_6d_qmc, integrate_6d_tensor, Integrand6D, QmcSpec};
use crate::Complex;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PathKind {
    Jet,
    Moment,
    Tensor,
    Qmc,
    Closed,
    Special,
    Limit,
}

pub const ALL_PATHS: [PathKind; 7] = [
    PathKind::Jet,
    PathKind::Moment,
    PathKind::Tensor,
    PathKind::Qmc,
    PathKind::Closed,
    PathKind::Special,
    PathKind::Limit,
];

impl PathKind {
    pub fn name(self) -> &'static str {
        match self {
            PathKind::Jet => "jet",
            PathKind::Moment => "moment",
            PathKind::Tensor => "tensor",
            PathKind::Qmc => "qmc",
            PathKind::Closed => "closed",
            PathKind::Special => "special",
            PathKind::Limit => "limit",
        }
    }
}

impl fmt::Display for PathKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PathKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ALL_PATHS
            .iter()
            .copied()
            .find(|p| p.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = ALL_PATHS.iter().map(|p| p.name()).collect();
                Error::InvalidArgument(format!("unknown path '{s}' (expected {})", names.join(", ")))
            })
    }
}

/// Parses a comma-separated path list, dropping duplicates.
pub fn parse_paths(list: &str) -> Result<Vec<PathKind>> {
    let mut out: Vec<PathKind> = Vec::new();
    for item in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let p = item.parse()?;
        if !out.contains(&p) {
            out.push(p);
        }
    }
    if out.is_empty() {
        return Err(Error::InvalidArgument("empty path list".into()));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyOptions {
    /// `None`: the case's default paths.
    pub paths: Option<Vec<PathKind>>,
    pub tol: Tolerances,
    pub qmc_count: u64,
    pub seed: u64,
    /// Tanh-sinh level on `x, y`; the error estimate reruns one level lower.
    pub tensor_level: u32,
    /// Log-Laguerre nodes per log axis; the error estimate uses 4 fewer.
    pub tensor_nodes: usize,
    pub limit_steps: Vec<f64>,
    pub exec: Execution,
    pub record_times: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            paths: None,
            tol: Tolerances::default(),
            qmc_count: 1 << 20,
            seed: 1,
            tensor_level: 4,
            tensor_nodes: 12,
            limit_steps: DEFAULT_LIMIT_STEPS.to_vec(),
            exec: Execution::Parallel,
            record_times: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum PathOutcome {
    Computed { value: Complex, err: f64 },
    Failed { error: String },
    Inadmissible { reason: String },
    /// Not attempted because the parameters are invalid.
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathResult {
    pub path: PathKind,
    pub outcome: PathOutcome,
    pub seconds: Option<f64>,
}

impl PathResult {
    pub fn estimate(&self) -> Option<Estimate> {
        match self.outcome {
            PathOutcome::Computed { value, err } => Some(Estimate { value, err }),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairDiff {
    pub a: PathKind,
    pub b: PathKind,
    pub abs: f64,
    pub rel: f64,
    /// `abs_tol + rel_tol max(|a|, |b|) + 3 (err_a + err_b)`
    pub bound: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    InvalidParameters,
    InadmissiblePath,
    NumericFailure,
}

impl Verdict {
    /// 0 pass, 1 verdict fail, 2 invalid request, 3 numeric failure.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::InvalidParameters | Verdict::InadmissiblePath => 2,
            Verdict::NumericFailure => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::InvalidParameters => "invalid_parameters",
            Verdict::InadmissiblePath => "inadmissible_path",
            Verdict::NumericFailure => "numeric_failure",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub case: IdentityCase,
    pub params: ParameterSet,
    pub tol: Tolerances,
    pub paths: Vec<PathResult>,
    pub diffs: Vec<PairDiff>,
    pub verdict: Verdict,
    pub violations: Vec<Violation>,
    pub warnings: Vec<String>,
}

/// Paths run when none are requested.
pub fn default_paths(case: &IdentityCase, ps: &ParameterSet) -> Vec<PathKind> {
    let mut out = Vec::new();
    if admissible(case, ps, PathKind::Jet).is_ok() {
        out.extend([PathKind::Jet, PathKind::Moment]);
    }
    out.push(PathKind::Closed);
    if case.tag.has_special_form() {
        out.push(PathKind::Special);
    }
    if case.tag.has_limit() {
        out.push(PathKind::Limit);
    }
    out
}

/// `Ok` when `path` applies to `(case, ps)`, else the reason.
pub fn admissible(case: &IdentityCase, ps: &ParameterSet, path: PathKind) -> std::result::Result<(), String> {
    let single = || {
        if case.tag.is_single_integral() {
            Ok(())
        } else {
            Err(format!("case {} is a difference of two integrals", case.tag))
        }
    };
    match path {
        PathKind::Jet | PathKind::Moment => {
            single()?;
            match ps.integer_k() {
                Some(k) if k as usize <= MAX_DERIVATIVE_ORDER => Ok(()),
                _ => Err(format!(
                    "derivative paths need integer 0 <= k <= {MAX_DERIVATIVE_ORDER}, got k = {}",
                    format_complex(ps.k)
                )),
            }
        }
        PathKind::Tensor | PathKind::Qmc => {
            single()?;
            Integrand6D::new(*ps).map(|_| ()).map_err(|e| e.to_string())
        }
        PathKind::Closed => Ok(()),
        PathKind::Special => {
            if case.tag.has_special_form() {
                Ok(())
            } else {
                Err("the general case has no separate closed form".into())
            }
        }
        PathKind::Limit => {
            if case.tag.has_limit() {
                Ok(())
            } else {
                Err(format!("case {} is not defined through a limit in k", case.tag))
            }
        }
    }
}

fn tensor_estimate(ps: &ParameterSet, opts: &VerifyOptions) -> Result<Estimate> {
    let f = Integrand6D::new(*ps)?;
    if opts.tensor_level < 2 || opts.tensor_nodes < 6 {
        return Err(Error::InvalidArgument(
            "tensor path needs level >= 2 and at least 6 log nodes".into(),
        ));
    }
    let fine = integrate_6d_tensor(&f, &f.tensor_rules(opts.tensor_level, opts.tensor_nodes)?, opts.exec)?;
    let coarse = integrate_6d_tensor(
        &f,
        &f.tensor_rules(opts.tensor_level - 1, opts.tensor_nodes - 4)?,
        opts.exec,
    )?;
    Ok(Estimate {
        value: fine,
        err: (fine - coarse).norm(),
    })
}

fn qmc_estimate(ps: &ParameterSet, opts: &VerifyOptions) -> Result<Estimate> {
    let f = Integrand6D::new(*ps)?;
    let est = integrate_6d_qmc(&f, &QmcSpec::new(opts.qmc_count, opts.seed)?, opts.exec)?;
    Ok(Estimate {
        value: est.value,
        err: est.stderr,
    })
}

/// Runs one path; the caller has checked admissibility.
pub fn run_path(
    case: &IdentityCase,
    ps: &ParameterSet,
    path: PathKind,
    opts: &VerifyOptions,
) -> Result<Estimate> {
    match path {
        PathKind::Jet => lhs_jet(ps).map(Estimate::exact),
        PathKind::Moment => lhs_moment_estimate(ps),
        PathKind::Tensor => tensor_estimate(ps, opts),
        PathKind::Qmc => qmc_estimate(ps, opts),
        PathKind::Closed => rhs_closed(case, ps),
        PathKind::Special => rhs_example(case, ps).map(Estimate::exact),
        PathKind::Limit => rhs_limit(case, ps, &opts.limit_steps),
    }
}

fn pair_diff(a: (PathKind, Estimate), b: (PathKind, Estimate), tol: &Tolerances) -> PairDiff {
    let abs = (a.1.value - b.1.value).norm();
    let scale = a.1.value.norm().max(b.1.value.norm());
    let rel = if scale > 0.0 { abs / scale } else { 0.0 };
    let bound = tol.bound(a.1.value, b.1.value) + 3.0 * (a.1.err + b.1.err);
    PairDiff {
        a: a.0,
        b: b.0,
        abs,
        rel,
        bound,
        pass: abs <= bound,
    }
}

/// Verifies `case` at `ps`. Errors are captured in the report; every
/// requested path appears in it.
pub fn verify(case: &IdentityCase, ps: &ParameterSet, opts: &VerifyOptions) -> VerificationReport {
    let validation = validate_parameters(ps);
    let violations = case.violations(ps);
    let requested = opts
        .paths
        .clone()
        .unwrap_or_else(|| default_paths(case, ps));
    let mut report = VerificationReport {
        case: *case,
        params: *ps,
        tol: opts.tol,
        paths: Vec::new(),
        diffs: Vec::new(),
        verdict: Verdict::Pass,
        violations,
        warnings: validation.warnings,
    };
    if !report.violations.is_empty() {
        report.verdict = Verdict::InvalidParameters;
        report.paths = requested
            .iter()
            .map(|&path| PathResult {
                path,
                outcome: PathOutcome::Skipped,
                seconds: None,
            })
            .collect();
        return report;
    }

    for &path in &requested {
        let start = Instant::now();
        let outcome = match admissible(case, ps, path) {
            Err(reason) => PathOutcome::Inadmissible { reason },
            Ok(()) => match run_path(case, ps, path, opts) {
                Ok(e) => PathOutcome::Computed {
                    value: e.value,
                    err: e.err,
                },
                Err(e) => PathOutcome::Failed {
                    error: e.to_string(),
                },
            },
        };
        report.paths.push(PathResult {
            path,
            outcome,
            seconds: opts.record_times.then(|| start.elapsed().as_secs_f64()),
        });
    }

    let computed: Vec<(PathKind, Estimate)> = report
        .paths
        .iter()
        .filter_map(|r| r.estimate().map(|e| (r.path, e)))
        .collect();
    for i in 0..computed.len() {
        for j in i + 1..computed.len() {
            report.diffs.push(pair_diff(computed[i], computed[j], &opts.tol));
        }
    }

    let any = |pred: fn(&PathOutcome) -> bool| report.paths.iter().any(|r| pred(&r.outcome));
    report.verdict = if any(|o| matches!(o, PathOutcome::Inadmissible { .. })) {
        Verdict::InadmissiblePath
    } else if any(|o| matches!(o, PathOutcome::Failed { .. })) {
        Verdict::NumericFailure
    } else if report.diffs.is_empty() || report.diffs.iter().any(|d| !d.pass) {
        // a single path verifies nothing
        Verdict::Fail
    } else {
        Verdict::Pass
    };
    report
}

fn complex_json(z: Complex) -> Value {
    json!([z.re, z.im])
}

impl VerificationReport {
    pub fn value_of(&self, path: PathKind) -> Option<Estimate> {
        self.paths
            .iter()
            .find(|r| r.path == path)
            .and_then(PathResult::estimate)
    }

    /// JSON object `{case, params, paths, diffs, verdict[, times]}`; times
    /// only when recorded, so that reports are reproducible byte for byte.
    pub fn to_json(&self) -> Value {
        let mut params = Map::new();
        for (name, z) in self.params.fields() {
            params.insert(name.into(), complex_json(z));
        }
        let mut case = Map::new();
        case.insert("tag".into(), json!(self.case.tag.name()));
        if let Some(n) = self.case.n {
            case.insert("n".into(), complex_json(n));
        }
        if let Some((m_alt, a_alt)) = self.case.alt {
            case.insert("m_alt".into(), complex_json(m_alt));
            case.insert("a_alt".into(), complex_json(a_alt));
        }
        let mut paths = Map::new();
        let mut times = Map::new();
        for r in &self.paths {
            let entry = match &r.outcome {
                PathOutcome::Computed { value, err } => {
                    json!({"status": "computed", "value": complex_json(*value), "err": err})
                }
                PathOutcome::Failed { error } => json!({"status": "failed", "error": error}),
                PathOutcome::Inadmissible { reason } => {
                    json!({"status": "inadmissible", "reason": reason})
                }
                PathOutcome::Skipped => json!({"status": "skipped"}),
            };
            paths.insert(r.path.name().into(), entry);
            if let Some(t) = r.seconds {
                times.insert(r.path.name().into(), json!(t));
            }
        }
        let diffs: Vec<Value> = self
            .diffs
            .iter()
            .map(|d| {
                json!({"a": d.a.name(), "b": d.b.name(), "abs": d.abs, "rel": d.rel,
                       "bound": d.bound, "pass": d.pass})
            })
            .collect();
        let violations: Vec<Value> = self
            .violations
            .iter()
            .map(|v| json!({"constraint": v.constraint, "detail": v.detail}))
            .collect();
        let mut out = Map::new();
        out.insert("case".into(), Value::Object(case));
        out.insert("params".into(), Value::Object(params));
        out.insert(
            "tol".into(),
            json!({"abs": self.tol.abs_tol, "rel": self.tol.rel_tol}),
        );
        out.insert("paths".into(), Value::Object(paths));
        out.insert("diffs".into(), Value::Array(diffs));
        out.insert("verdict".into(), json!(self.verdict.name()));
        out.insert("violations".into(), Value::Array(violations));
        out.insert("warnings".into(), json!(self.warnings));
        if !times.is_empty() {
            out.insert("times".into(), Value::Object(times));
        }
        Value::Object(out)
    }

    pub fn csv_header(with_times: bool) -> String {
        let mut h = String::from(
            "case,k,a,m,u,v,mu,nu,n,path,status,value_re,value_im,err,max_rel_diff,verdict",
        );
        if with_times {
            h.push_str(",seconds");
        }
        h
    }

    /// One row per path; `max_rel_diff` is the worst pair involving it.
    pub fn csv_rows(&self) -> Vec<String> {
        let p = &self.params;
        let n = self.case.n.map(format_complex).unwrap_or_default();
        let with_times = self.paths.iter().any(|r| r.seconds.is_some());
        self.paths
            .iter()
            .map(|r| {
                let (status, re, im, err) = match &r.outcome {
                    PathOutcome::Computed { value, err } => (
                        "computed",
                        format!("{:e}", value.re),
                        format!("{:e}", value.im),
                        format!("{err:e}"),
                    ),
                    PathOutcome::Failed { .. } => ("failed", String::new(), String::new(), String::new()),
                    PathOutcome::Inadmissible { .. } => {
                        ("inadmissible", String::new(), String::new(), String::new())
                    }
                    PathOutcome::Skipped => ("skipped", String::new(), String::new(), String::new()),
                };
                let worst = self
                    .diffs
                    .iter()
                    .filter(|d| d.a == r.path || d.b == r.path)
                    .map(|d| d.rel)
                    .fold(None, |acc: Option<f64>, x| Some(acc.map_or(x, |a| a.max(x))))
                    .map(|x| format!("{x:e}"))
                    .unwrap_or_default();
                let mut row = [
                    self.case.tag.name().to_string(),
                    format_complex(p.k),
                    format_complex(p.a),
                    format_complex(p.m),
                    format_complex(p.u),
                    format_complex(p.v),
                    format_complex(p.mu),
                    format_complex(p.nu),
                    n.clone(),
                    r.path.name().to_string(),
                    status.to_string(),
                    re,
                    im,
                    err,
                    worst,
                    self.verdict.name().to_string(),
                ]
                .join(",");
                if with_times {
                    row.push(',');
                    row.push_str(&r.seconds.map(|s| format!("{s:e}")).unwrap_or_default());
                }
                row
            })
            .collect()
    }

    /// Human-readable multi-line summary.
    pub fn to_text(&self) -> String {
        let mut s = format!("case {} ({})\n", self.case.tag, self.case.tag.title());
        let params: Vec<String> = self
            .params
            .fields()
            .iter()
            .map(|(n, z)| format!("{n}={}", format_complex(*z)))
            .collect();
        s.push_str(&format!("  params: {}", params.join(" ")));
        if let Some(n) = self.case.n {
            s.push_str(&format!(" n={}", format_complex(n)));
        }
        if let Some((m_alt, a_alt)) = self.case.alt {
            s.push_str(&format!(" m'={} a'={}", format_complex(m_alt), format_complex(a_alt)));
        }
        s.push('\n');
        for v in &self.violations {
            s.push_str(&format!("  violation: {}\n", v.detail));
        }
        for w in &self.warnings {
            s.push_str(&format!("  warning: {w}\n"));
        }
        for r in &self.paths {
            let body = match &r.outcome {
                PathOutcome::Computed { value, err } => {
                    format!("{:>+.15e} {:>+.15e}i  err {:.1e}", value.re, value.im, err)
                }
                PathOutcome::Failed { error } => format!("FAILED: {error}"),
                PathOutcome::Inadmissible { reason } => format!("inadmissible: {reason}"),
                PathOutcome::Skipped => "skipped".into(),
            };
            let time = r.seconds.map(|t| format!("  ({t:.3} s)")).unwrap_or_default();
            s.push_str(&format!("  {:<8} {body}{time}\n", r.path.name()));
        }
        for d in &self.diffs {
            s.push_str(&format!(
                "  {:>7} vs {:<7} |diff| {:.2e}  rel {:.2e}  bound {:.2e}  {}\n",
                d.a.name(),
                d.b.name(),
                d.abs,
                d.rel,
                d.bound,
                if d.pass { "ok" } else { "FAIL" }
            ));
        }
        s.push_str(&format!("  verdict: {}\n", self.verdict.name()));
        s
    }
}
