//! `sextuple`: list the identity catalog, verify cases along independent
//! numerical paths, sweep parameter grids, run the acceptance suite.
//!
//! Exit codes: 0 pass, 1 verdict fail, 2 invalid request (bad flags,
//! parameters outside the strip, inadmissible paths), 3 numeric failure or
//! I/O error.

mod config;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use sextuple_core::engine::{
    default_paths, parse_paths, verify, CaseTag, IdentityCase, VerificationReport, VerifyOptions,
    ALL_TAGS,
};
use sextuple_core::exec::{map_slice, Execution};
use sextuple_core::params::{format_complex, parse_complex, Tolerances};
use sextuple_core::selftest::run_selected;
use sextuple_core::{Complex, ParameterSet};

use config::ConfigFile;

/// Directory for reports when `--output` is not given.
const OUTPUT_DIR_ENV: &str = "SEXTUPLE_OUTPUT_DIR";

#[derive(Parser, Debug)]
#[command(name = "sextuple", version, about = "Multi-path verification of a sextuple Legendre integral identity")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List catalog cases with their constraints and closed forms.
    List(ListArgs),
    /// Verify one case at one parameter point.
    Verify(RunArgs),
    /// Verify over the Cartesian product of comma-separated parameter lists.
    Sweep(RunArgs),
    /// Run the acceptance suite.
    Selftest(SelftestArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

impl Format {
    fn extension(self) -> &'static str {
        match self {
            Format::Text => "txt",
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }

    fn parse(s: &str) -> Result<Self, CliError> {
        Format::from_str(s, true).map_err(|_| CliError::invalid(format!("unknown format '{s}' (text, json, csv)")))
    }
}

#[derive(Args, Debug)]
struct ListArgs {
    /// Show only this case.
    #[arg(long)]
    case: Option<String>,
    #[arg(long, value_name = "text|json|csv")]
    format: Option<String>,
    /// Output file; `-` for stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

/// Parameter values are complex literals `re`, `re+imi` or `re-imi`.
#[derive(Args, Debug, Default)]
struct RunArgs {
    /// `key = value` file mirroring these flags; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Catalog case (see `list`).
    #[arg(long)]
    case: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    k: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    m: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    u: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    v: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    nu: Option<String>,
    /// Second exponent of the difference cases.
    #[arg(long, allow_hyphen_values = true)]
    n: Option<String>,
    /// `m'` of the alternate Lerch form.
    #[arg(long = "m-alt", allow_hyphen_values = true)]
    m_alt: Option<String>,
    /// `a'` of the alternate Lerch form.
    #[arg(long = "a-alt", allow_hyphen_values = true)]
    a_alt: Option<String>,
    /// Comma-separated subset of jet,moment,tensor,qmc,closed,special,limit.
    #[arg(long)]
    paths: Option<String>,
    /// Relative tolerance of the pairwise comparisons.
    #[arg(long)]
    tol: Option<String>,
    /// Absolute tolerance of the pairwise comparisons.
    #[arg(long = "abs-tol")]
    abs_tol: Option<String>,
    /// Total QMC points, a power of two in [2^10, 2^40].
    #[arg(long = "qmc-count")]
    qmc_count: Option<String>,
    /// QMC randomization seed.
    #[arg(long)]
    seed: Option<String>,
    /// Tanh-sinh level of the tensor rule.
    #[arg(long = "tensor-level")]
    tensor_level: Option<String>,
    /// Log-Laguerre nodes per log axis of the tensor rule.
    #[arg(long = "tensor-nodes")]
    tensor_nodes: Option<String>,
    /// Decreasing comma-separated steps of the limit extrapolation.
    #[arg(long = "limit-steps")]
    limit_steps: Option<String>,
    #[arg(long, value_name = "text|json|csv")]
    format: Option<String>,
    /// Output file; `-` for stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Record per-path wall-clock times (reports are then not reproducible).
    #[arg(long)]
    times: bool,
    /// Disable data parallelism.
    #[arg(long)]
    sequential: bool,
}

const CONFIG_KEYS: [&str; 24] = [
    "case", "k", "a", "m", "u", "v", "mu", "nu", "n", "m-alt", "a-alt", "paths", "tol", "abs-tol",
    "qmc-count", "seed", "tensor-level", "tensor-nodes", "limit-steps", "format", "output", "times",
    "sequential", "config",
];

#[derive(Args, Debug)]
struct SelftestArgs {
    /// Criterion id (`A4`), id prefix (`A10`) or tag (`lerch`, `qmc`, ...).
    #[arg(long)]
    only: Option<String>,
    #[arg(long, value_name = "text|json")]
    format: Option<String>,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long)]
    sequential: bool,
}

#[derive(Debug)]
enum CliError {
    Invalid(String),
    Io(String),
}

impl CliError {
    fn invalid(msg: impl Into<String>) -> Self {
        CliError::Invalid(msg.into())
    }

    fn code(&self) -> u8 {
        match self {
            CliError::Invalid(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Invalid(m) | CliError::Io(m) => f.write_str(m),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

/// Flag value, else config value.
struct Resolver<'a> {
    config: &'a ConfigFile,
}

impl Resolver<'_> {
    fn get(&self, flag: &Option<String>, key: &str) -> Option<String> {
        flag.clone().or_else(|| self.config.get(key).map(str::to_string))
    }

    fn parsed<T: std::str::FromStr>(&self, flag: &Option<String>, key: &str) -> CliResult<Option<T>>
    where
        T::Err: std::fmt::Display,
    {
        self.get(flag, key)
            .map(|s| {
                s.trim()
                    .parse::<T>()
                    .map_err(|e| CliError::invalid(format!("--{key} '{s}': {e}")))
            })
            .transpose()
    }

    fn switch(&self, flag: bool, key: &str) -> CliResult<bool> {
        Ok(flag || self.config.flag(key).map_err(CliError::invalid)?.unwrap_or(false))
    }
}

fn complex_list(key: &str, s: &str) -> CliResult<Vec<Complex>> {
    s.split(',')
        .map(|item| parse_complex(item).map_err(|e| CliError::invalid(format!("--{key}: {e}"))))
        .collect()
}

/// Everything that is fixed across a sweep.
struct Shared {
    opts: VerifyOptions,
    format: Format,
    output: Option<PathBuf>,
}

/// One parameter axis: `None` keeps the case default.
type Axis = Vec<Option<Complex>>;

struct Plan {
    cases: Vec<CaseTag>,
    axes: [(&'static str, Axis); 10],
}

impl Plan {
    fn points(&self) -> Vec<(IdentityCase, ParameterSet)> {
        let mut combos: Vec<Vec<Option<Complex>>> = vec![vec![]];
        for (_, axis) in &self.axes {
            combos = combos
                .into_iter()
                .flat_map(|c| {
                    axis.iter().map(move |x| {
                        let mut c = c.clone();
                        c.push(*x);
                        c
                    })
                })
                .collect();
        }
        let mut out = Vec::new();
        for &tag in &self.cases {
            for c in &combos {
                out.push(build_point(tag, c));
            }
        }
        out
    }
}

/// Order of [`Plan::axes`].
const AXES: [&str; 10] = ["k", "a", "m", "u", "v", "mu", "nu", "n", "m-alt", "a-alt"];

fn build_point(tag: CaseTag, values: &[Option<Complex>]) -> (IdentityCase, ParameterSet) {
    let mut case = IdentityCase::new(tag);
    if let Some(n) = values[7] {
        case = case.with_n(n);
    }
    if values[8].is_some() || values[9].is_some() {
        let (m0, a0) = case.alt.unwrap_or((Complex::new(1.0, 0.0), Complex::new(1.0, 0.0)));
        case = case.with_alt(values[8].unwrap_or(m0), values[9].unwrap_or(a0));
    }
    let mut ps = case.default_params();
    let fields = [&mut ps.k, &mut ps.a, &mut ps.m, &mut ps.u, &mut ps.v, &mut ps.mu, &mut ps.nu];
    for (slot, value) in fields.into_iter().zip(values) {
        if let Some(x) = value {
            *slot = *x;
        }
    }
    (case, ps)
}

fn load_config(path: &Option<PathBuf>) -> CliResult<ConfigFile> {
    let Some(path) = path else {
        return Ok(ConfigFile::default());
    };
    let cfg = ConfigFile::load(path).map_err(CliError::invalid)?;
    let unknown = cfg.unknown_keys(&CONFIG_KEYS);
    if !unknown.is_empty() {
        return Err(CliError::invalid(format!(
            "{}: unknown keys {}",
            path.display(),
            unknown.join(", ")
        )));
    }
    Ok(cfg)
}

fn resolve_run(args: &RunArgs, sweep: bool) -> CliResult<(Plan, Shared)> {
    let cfg = load_config(&args.config)?;
    let r = Resolver { config: &cfg };

    let single = |key: &str, s: String| -> CliResult<String> {
        if !sweep && s.contains(',') {
            Err(CliError::invalid(format!("--{key} '{s}': lists are only accepted by `sweep`")))
        } else {
            Ok(s)
        }
    };

    let case_text = r.get(&args.case, "case").unwrap_or_else(|| "theorem".into());
    let cases = single("case", case_text)?
        .split(',')
        .map(|c| c.trim().parse::<CaseTag>().map_err(|e| CliError::invalid(e.to_string())))
        .collect::<CliResult<Vec<_>>>()?;

    let flags = [
        &args.k, &args.a, &args.m, &args.u, &args.v, &args.mu, &args.nu, &args.n, &args.m_alt, &args.a_alt,
    ];
    let mut axes: [(&'static str, Axis); 10] = AXES.map(|k| (k, vec![None]));
    for (i, key) in AXES.iter().enumerate() {
        if let Some(s) = r.get(flags[i], key) {
            let s = single(key, s)?;
            axes[i].1 = complex_list(key, &s)?.into_iter().map(Some).collect();
        }
    }

    let mut opts = VerifyOptions::default();
    if let Some(p) = r.get(&args.paths, "paths") {
        opts.paths = Some(parse_paths(&p).map_err(|e| CliError::invalid(e.to_string()))?);
    }
    let rel = r.parsed::<f64>(&args.tol, "tol")?;
    let abs = r.parsed::<f64>(&args.abs_tol, "abs-tol")?;
    if rel.is_some() || abs.is_some() {
        let d = Tolerances::default();
        opts.tol = Tolerances::new(abs.unwrap_or(d.abs_tol), rel.unwrap_or(d.rel_tol))
            .map_err(|e| CliError::invalid(e.to_string()))?;
    }
    if let Some(c) = r.parsed::<u64>(&args.qmc_count, "qmc-count")? {
        opts.qmc_count = c;
    }
    if let Some(s) = r.parsed::<u64>(&args.seed, "seed")? {
        opts.seed = s;
    }
    if let Some(l) = r.parsed::<u32>(&args.tensor_level, "tensor-level")? {
        opts.tensor_level = l;
    }
    if let Some(n) = r.parsed::<usize>(&args.tensor_nodes, "tensor-nodes")? {
        opts.tensor_nodes = n;
    }
    if let Some(steps) = r.get(&args.limit_steps, "limit-steps") {
        opts.limit_steps = steps
            .split(',')
            .map(|x| x.trim().parse::<f64>().map_err(|e| CliError::invalid(format!("--limit-steps '{x}': {e}"))))
            .collect::<CliResult<_>>()?;
    }
    opts.record_times = r.switch(args.times, "times")?;
    opts.exec = if r.switch(args.sequential, "sequential")? {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    let format = r.get(&args.format, "format").map(|f| Format::parse(&f)).transpose()?.unwrap_or(Format::Text);
    let output = args.output.clone().or_else(|| cfg.get("output").map(PathBuf::from));
    Ok((Plan { cases, axes }, Shared { opts, format, output }))
}

/// `--output` if given (`-` is stdout), else `$SEXTUPLE_OUTPUT_DIR/<default>`,
/// else stdout.
fn destination(output: &Option<PathBuf>, default_name: &str) -> Option<PathBuf> {
    match output {
        Some(p) if p.as_os_str() == "-" => None,
        Some(p) => Some(p.clone()),
        None => std::env::var_os(OUTPUT_DIR_ENV)
            .filter(|d| !d.is_empty())
            .map(|d| Path::new(&d).join(default_name)),
    }
}

fn emit(content: &str, output: &Option<PathBuf>, default_name: &str) -> CliResult<()> {
    match destination(output, default_name) {
        None => {
            print!("{content}");
            Ok(())
        }
        Some(path) => {
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir)
                    .map_err(|e| CliError::Io(format!("cannot create {}: {e}", dir.display())))?;
            }
            std::fs::write(&path, content)
                .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
            eprintln!("wrote {}", path.display());
            Ok(())
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn render_reports(reports: &[VerificationReport], format: Format, as_array: bool) -> String {
    match format {
        Format::Text => reports.iter().map(|r| r.to_text()).collect::<Vec<_>>().join("\n"),
        Format::Json => {
            if as_array {
                pretty(&Value::Array(reports.iter().map(|r| r.to_json()).collect()))
            } else {
                pretty(&reports[0].to_json())
            }
        }
        Format::Csv => {
            let with_times = reports.iter().any(|r| r.paths.iter().any(|p| p.seconds.is_some()));
            let mut s = VerificationReport::csv_header(with_times);
            s.push('\n');
            for r in reports {
                for row in r.csv_rows() {
                    s.push_str(&row);
                    s.push('\n');
                }
            }
            s
        }
    }
}

fn exit_code(reports: &[VerificationReport]) -> u8 {
    reports.iter().map(|r| r.verdict.exit_code() as u8).max().unwrap_or(0)
}

fn cmd_verify(args: &RunArgs) -> CliResult<u8> {
    let (plan, shared) = resolve_run(args, false)?;
    let (case, ps) = plan.points().remove(0);
    let report = verify(&case, &ps, &shared.opts);
    let name = format!("verify-{}.{}", case.tag, shared.format.extension());
    emit(&render_reports(std::slice::from_ref(&report), shared.format, false), &shared.output, &name)?;
    Ok(exit_code(&[report]))
}

fn cmd_sweep(args: &RunArgs) -> CliResult<u8> {
    let (plan, shared) = resolve_run(args, true)?;
    let points = plan.points();
    // points run in parallel; the paths inside each one then run sequentially
    let inner = VerifyOptions {
        exec: Execution::Sequential,
        ..shared.opts.clone()
    };
    let reports = map_slice(shared.opts.exec, &points, |(case, ps)| verify(case, ps, &inner));
    let mut body = render_reports(&reports, shared.format, true);
    if shared.format == Format::Text {
        let mut tally = std::collections::BTreeMap::new();
        for r in &reports {
            *tally.entry(r.verdict.name()).or_insert(0usize) += 1;
        }
        let parts: Vec<String> = tally.iter().map(|(k, v)| format!("{k} {v}")).collect();
        let _ = writeln!(body, "\nsweep: {} points: {}", reports.len(), parts.join(", "));
    }
    let name = format!("sweep-{}.{}", plan.cases[0], shared.format.extension());
    emit(&body, &shared.output, &name)?;
    Ok(exit_code(&reports))
}

fn case_entry(tag: CaseTag) -> Value {
    let case = IdentityCase::new(tag);
    let ps = case.default_params();
    let defaults: serde_json::Map<String, Value> = ps
        .fields()
        .iter()
        .map(|(n, z)| (n.to_string(), json!(format_complex(*z))))
        .collect();
    let paths: Vec<&str> = default_paths(&case, &ps).iter().map(|p| p.name()).collect();
    json!({
        "name": tag.name(),
        "title": tag.title(),
        "constraint": tag.constraint(),
        "formula": tag.formula(),
        "defaults": defaults,
        "default_paths": paths,
    })
}

fn cmd_list(args: &ListArgs) -> CliResult<u8> {
    let tags: Vec<CaseTag> = match &args.case {
        Some(c) => vec![c.parse().map_err(|e: sextuple_core::Error| CliError::invalid(e.to_string()))?],
        None => ALL_TAGS.to_vec(),
    };
    let format = args.format.as_deref().map(Format::parse).transpose()?.unwrap_or(Format::Text);
    let body = match format {
        Format::Text => {
            let mut s = String::new();
            for &t in &tags {
                let _ = writeln!(s, "{:<19} {}", t.name(), t.title());
                let _ = writeln!(s, "{:<19} constraint: {}", "", t.constraint());
                let _ = writeln!(s, "{:<19} value: {}", "", t.formula());
            }
            s
        }
        Format::Json => pretty(&Value::Array(tags.iter().map(|&t| case_entry(t)).collect())),
        Format::Csv => {
            let quote = |x: &str| format!("\"{}\"", x.replace('"', "\"\""));
            let mut s = String::from("name,title,constraint,formula\n");
            for &t in &tags {
                let _ = writeln!(s, "{},{},{},{}", t.name(), quote(t.title()), quote(t.constraint()), quote(t.formula()));
            }
            s
        }
    };
    emit(&body, &args.output, &format!("list.{}", format.extension()))?;
    Ok(0)
}

fn cmd_selftest(args: &SelftestArgs) -> CliResult<u8> {
    let format = args.format.as_deref().map(Format::parse).transpose()?.unwrap_or(Format::Text);
    if format == Format::Csv {
        return Err(CliError::invalid("selftest supports text and json"));
    }
    let exec = if args.sequential { Execution::Sequential } else { Execution::Parallel };
    let selector = args.only.as_deref();
    if sextuple_core::selftest::select(selector).is_empty() {
        return Err(CliError::invalid(format!("--only '{}' matches no criterion", selector.unwrap_or(""))));
    }
    let results = if format == Format::Text && destination(&args.output, "selftest.txt").is_none() {
        // stream lines as criteria finish
        let mut out = Vec::new();
        for c in sextuple_core::selftest::select(selector) {
            let res = c.run(exec);
            println!("{}", res.line());
            out.push(res);
        }
        out
    } else {
        let results = run_selected(selector, exec);
        let body = match format {
            Format::Json => pretty(&serde_json::to_value(&results).expect("serializable")),
            _ => results.iter().map(|r| r.line() + "\n").collect(),
        };
        emit(&body, &args.output, &format!("selftest.{}", format.extension()))?;
        results
    };
    let failed = results.iter().filter(|r| !r.passed).count();
    eprintln!("selftest: {} passed, {failed} failed", results.len() - failed);
    Ok(if failed == 0 { 0 } else { 1 })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::List(a) => cmd_list(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Selftest(a) => cmd_selftest(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
