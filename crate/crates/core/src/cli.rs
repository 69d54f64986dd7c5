//! The `logsob` command line: run configuration, the five commands and their
//! reports.
//!
//! A run is described by a [`RunConfig`], read from an optional JSON file and
//! then overridden by flags. Reports are JSON, sequences are CSV; both are
//! byte-identical for identical configurations.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extremals::{make_log_sobolev_extremal, ProfileDescriptor};
use crate::functionals::{deficit, DeficitReport};
use crate::identities::{identity_matrix, IdentityMatrixReport};
use crate::minimizer::{minimize_deficit, MinimizeOptions, MinimizeResult, ProfileFamily};
use crate::monomial::{ln_log_sobolev_constant, ln_weighted_ball_measure, sharp_sobolev_constant, MonomialWeight};
use crate::norms::NormSpec;
use crate::quadrature::{ball_measure_by_quadrature, QuadratureSpec, Scheme};
use crate::tensorization::{log_grid, tensorized_constant_sequence, write_csv, SequenceRow};

/// Tolerance for the closed-form identity matrix.
pub const IDENTITY_TOL: f64 = 1e-6;
/// Largest dimension in the identity matrix.
pub const IDENTITY_MAX_DIM: usize = 3;
/// Quadrature tolerance of the identity matrix unless configured.
pub const IDENTITY_QUADRATURE_TOL: f64 = 1e-7;
/// A reported deficit below this is a verification failure.
pub const NEGATIVE_DEFICIT_TOL: f64 = -1e-6;
/// A minimized deficit below this is a verification failure.
pub const NEGATIVE_MINIMUM_TOL: f64 = -1e-5;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum, Subcommand)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Π(A), m(B_A), D, the log-Sobolev constant and the Sobolev constant.
    Constants,
    /// Closed-form Γ-integrals against quadrature.
    VerifyLemmas,
    /// Deficit of a described function.
    Deficit,
    /// The tensorized Sobolev constants against their limit, as CSV.
    Tensorize,
    /// Nelder–Mead search for deficit minimizers.
    Minimize,
}

/// Everything a run needs. Missing fields take their defaults.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub command: Option<Command>,
    pub p: f64,
    #[serde(rename = "A")]
    pub a: Vec<f64>,
    pub norm: NormSpec,
    /// Command-specific default when absent.
    pub quadrature: Option<QuadratureSpec>,
    pub output_path: Option<PathBuf>,
    pub seed: u64,
    pub l_max: u64,
    /// The function for `deficit`; the extremal with `σ = 1` when absent.
    pub function: Option<ProfileDescriptor>,
    /// The family for `minimize`; stretched exponentials when absent.
    pub family: Option<ProfileFamily>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            command: None,
            p: 2.0,
            a: vec![0.0],
            norm: NormSpec::Euclidean,
            quadrature: None,
            output_path: None,
            seed: 0,
            l_max: 1_000_000,
            function: None,
            family: None,
        }
    }
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(format!("config: {e}")))
    }

    pub fn weight(&self) -> Result<MonomialWeight> {
        MonomialWeight::new(self.a.clone())
    }

    fn quadrature_or(&self, default: QuadratureSpec) -> QuadratureSpec {
        self.quadrature.clone().unwrap_or(default)
    }
}

#[derive(Debug, Parser)]
#[command(name = "logsob", version, about = "Sharp weighted L^p log-Sobolev inequalities, numerically")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub flags: Flags,
}

/// Flags shared by every command; each overrides the config file.
#[derive(Debug, Default, Clone, Args)]
pub struct Flags {
    #[arg(long, global = true)]
    pub p: Option<f64>,
    /// Weight exponents, comma separated.
    #[arg(long = "A", global = true, value_delimiter = ',', allow_negative_numbers = true)]
    pub a: Option<Vec<f64>>,
    /// `euclidean`, `lq` (with `--q`) or `l<q>` such as `l1`, `l3`.
    #[arg(long, global = true)]
    pub norm: Option<String>,
    /// Exponent of an ℓ^q norm.
    #[arg(long, global = true)]
    pub q: Option<f64>,
    #[arg(long, global = true)]
    pub nodes: Option<usize>,
    #[arg(long, global = true)]
    pub rtol: Option<f64>,
    #[arg(long, global = true)]
    pub radius: Option<f64>,
    /// `adaptive` or `tensor-gauss`.
    #[arg(long, global = true)]
    pub scheme: Option<String>,
    #[arg(long = "l-max", global = true)]
    pub l_max: Option<u64>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

/// `euclidean`, `l2`, `lq` with `q`, or `l<q>`.
pub fn parse_norm(name: &str, q: Option<f64>) -> Result<NormSpec> {
    let lower = name.trim().to_ascii_lowercase();
    match lower.as_str() {
        "euclidean" | "l2" => Ok(NormSpec::Euclidean),
        "lq" | "q" => {
            let q = q.ok_or_else(|| Error::Config("--norm lq needs --q".into()))?;
            NormSpec::q_norm(q)
        }
        _ => {
            let q: f64 = lower
                .strip_prefix('l')
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| Error::Config(format!("unknown norm '{name}'")))?;
            NormSpec::q_norm(q)
        }
    }
}

/// The config file (if any) with every given flag applied on top.
pub fn resolve_config(command: Command, flags: &Flags) -> Result<RunConfig> {
    let mut cfg = match &flags.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| Error::Config(format!("reading {}: {e}", path.display())))?;
            RunConfig::from_json(&text)?
        }
        None => RunConfig::default(),
    };
    if let Some(c) = cfg.command {
        if c != command {
            return Err(Error::Config(format!("config is for {c:?}, command line asks for {command:?}")));
        }
    }
    cfg.command = Some(command);
    if let Some(p) = flags.p {
        cfg.p = p;
    }
    if let Some(a) = &flags.a {
        cfg.a = a.clone();
    }
    match (&flags.norm, flags.q) {
        (Some(name), q) => cfg.norm = parse_norm(name, q)?,
        (None, Some(q)) => cfg.norm = NormSpec::q_norm(q)?,
        (None, None) => {}
    }
    if flags.nodes.is_some() || flags.rtol.is_some() || flags.radius.is_some() || flags.scheme.is_some() {
        let mut spec = cfg.quadrature.take().unwrap_or_else(|| default_quadrature(command));
        if let Some(n) = flags.nodes {
            spec.nodes_per_axis = n;
        }
        if let Some(r) = flags.rtol {
            spec.rel_tol = r;
        }
        if let Some(r) = flags.radius {
            spec.truncation_radius = r;
        }
        if let Some(s) = &flags.scheme {
            spec.scheme = s.parse::<Scheme>()?;
        }
        cfg.quadrature = Some(spec);
    }
    if let Some(l) = flags.l_max {
        cfg.l_max = l;
    }
    if let Some(s) = flags.seed {
        cfg.seed = s;
    }
    if let Some(out) = &flags.out {
        cfg.output_path = Some(out.clone());
    }
    cfg.weight()?;
    cfg.norm.validate()?;
    if let Some(spec) = &cfg.quadrature {
        spec.validate()?;
    }
    Ok(cfg)
}

fn default_quadrature(command: Command) -> QuadratureSpec {
    match command {
        Command::VerifyLemmas => QuadratureSpec::adaptive(IDENTITY_QUADRATURE_TOL),
        _ => QuadratureSpec::default(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstantsReport {
    pub p: f64,
    #[serde(rename = "A")]
    pub a: Vec<f64>,
    pub n: usize,
    pub homogeneous_dim: f64,
    pub norm: NormSpec,
    pub pi_a: f64,
    pub ball_measure: f64,
    /// `m` of the configured norm's unit ball, when not Euclidean.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub norm_ball_measure: Option<f64>,
    pub log_sobolev_constant: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sobolev_constant: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sobolev_omitted: Option<String>,
}

pub fn cmd_constants(cfg: &RunConfig) -> Result<ConstantsReport> {
    let w = cfg.weight()?;
    let d = w.homogeneous_dim();
    let ln_m_norm = match ln_weighted_ball_measure(&cfg.norm, &w) {
        Ok(v) => v,
        Err(Error::InvalidRegime(_)) => ball_measure_by_quadrature(&cfg.norm, &w, &cfg.quadrature_or(QuadratureSpec::adaptive(1e-12)))?.value.ln(),
        Err(e) => return Err(e),
    };
    let (sobolev_constant, sobolev_omitted) = if !cfg.norm.is_euclidean() {
        (None, Some("the Sobolev constant is reported for the Euclidean norm only".to_string()))
    } else {
        match sharp_sobolev_constant(cfg.p, &w) {
            Ok(c) => (Some(c), None),
            Err(e @ Error::InvalidRegime(_)) => (None, Some(e.to_string())),
            Err(e) => return Err(e),
        }
    };
    Ok(ConstantsReport {
        p: cfg.p,
        a: cfg.a.clone(),
        n: w.dim(),
        homogeneous_dim: d,
        norm: cfg.norm.clone(),
        pi_a: w.pi_constant(),
        ball_measure: w.ball_measure(),
        norm_ball_measure: (!cfg.norm.is_euclidean()).then(|| ln_m_norm.exp()),
        log_sobolev_constant: ln_log_sobolev_constant(cfg.p, d, ln_m_norm)?.exp(),
        sobolev_constant,
        sobolev_omitted,
    })
}

pub fn cmd_verify_lemmas(cfg: &RunConfig) -> Result<IdentityMatrixReport> {
    identity_matrix(IDENTITY_MAX_DIM, IDENTITY_TOL, &cfg.quadrature_or(default_quadrature(Command::VerifyLemmas)))
}

pub fn cmd_deficit(cfg: &RunConfig) -> Result<DeficitReport> {
    let w = cfg.weight()?;
    let spec = cfg.quadrature_or(QuadratureSpec::default());
    let descriptor = match &cfg.function {
        Some(d) => d.clone(),
        None => make_log_sobolev_extremal(cfg.p, 1.0, vec![0.0; w.dim()], &w, cfg.norm.clone())?.descriptor(),
    };
    if descriptor.a != cfg.a {
        return Err(Error::Config(format!("function weight {:?} differs from run weight {:?}", descriptor.a, cfg.a)));
    }
    let f = descriptor.build()?;
    let json = serde_json::to_value(&descriptor).map_err(|e| Error::Config(e.to_string()))?;
    Ok(deficit(&f, cfg.p, &w, &cfg.norm, &spec)?.with_descriptor(json))
}

pub fn cmd_tensorize(cfg: &RunConfig) -> Result<Vec<SequenceRow>> {
    if cfg.p != 2.0 {
        return Err(Error::Config(format!("the tensorized sequence is defined for p = 2, got {}", cfg.p)));
    }
    tensorized_constant_sequence(&cfg.weight()?, &log_grid(10, cfg.l_max))
}

pub fn cmd_minimize(cfg: &RunConfig) -> Result<MinimizeResult> {
    let w = cfg.weight()?;
    let family = match &cfg.family {
        Some(f) => f.clone(),
        None => ProfileFamily::stretched_exponential(w.dim(), 3.5, 1.0)?,
    };
    let opts = MinimizeOptions { seed: cfg.seed, quadrature: cfg.quadrature_or(QuadratureSpec::default()), ..MinimizeOptions::default() };
    minimize_deficit(&family, cfg.p, &w, &cfg.norm, &opts)
}

/// A finished command: the report text, a one-line summary and whether the
/// checks it embodies passed.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub report: String,
    pub summary: String,
    pub verified: bool,
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| Error::Config(e.to_string()))?;
    text.push('\n');
    Ok(text)
}

/// Runs `command` on a resolved configuration.
pub fn execute(command: Command, cfg: &RunConfig) -> Result<Outcome> {
    match command {
        Command::Constants => {
            let r = cmd_constants(cfg)?;
            let sobolev = r.sobolev_constant.map_or_else(|| "n/a".to_string(), |c| format!("{c:.12}"));
            Ok(Outcome {
                summary: format!("D = {}, Pi(A) = {:.12}, L_p = {:.12}, C_p = {sobolev}", r.homogeneous_dim, r.pi_a, r.log_sobolev_constant),
                report: to_json(&r)?,
                verified: true,
            })
        }
        Command::VerifyLemmas => {
            let r = cmd_verify_lemmas(cfg)?;
            Ok(Outcome {
                summary: format!("{} identities, {} failures, max rel error {:.3e} (tol {:e})", r.count, r.failures, r.max_rel_error, r.rel_tol),
                verified: r.passed(),
                report: to_json(&r)?,
            })
        }
        Command::Deficit => {
            let r = cmd_deficit(cfg)?;
            Ok(Outcome {
                summary: format!("deficit = {:.3e} (entropy {:.12}, energy {:.12})", r.deficit, r.entropy, r.energy),
                verified: r.deficit >= NEGATIVE_DEFICIT_TOL,
                report: to_json(&r)?,
            })
        }
        Command::Tensorize => {
            let rows = cmd_tensorize(cfg)?;
            let mut buf = Vec::new();
            write_csv(&rows, &mut buf)?;
            let monotone = rows.windows(2).all(|r| r[1].rel_error < r[0].rel_error);
            let last = rows.last().map_or(f64::NAN, |r| r.rel_error);
            Ok(Outcome {
                summary: format!("{} rows, final rel error {last:.3e}, monotone: {monotone}", rows.len()),
                report: String::from_utf8(buf).map_err(|e| Error::Config(e.to_string()))?,
                verified: monotone,
            })
        }
        Command::Minimize => {
            let r = cmd_minimize(cfg)?;
            Ok(Outcome {
                summary: format!(
                    "deficit* = {:.3e} at {:?}, distance to extremal {:.3e}, converged: {}",
                    r.deficit_star, r.theta_star, r.distance_to_extremal, r.converged
                ),
                verified: r.deficit_star >= NEGATIVE_MINIMUM_TOL,
                report: to_json(&r)?,
            })
        }
    }
}

/// Parses `args`, runs the command and writes its output; returns the exit
/// code.
///
/// The report goes to `--out` when given, with the summary on stdout;
/// otherwise the report goes to stdout and the summary to stderr.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if code == EXIT_OK { write!(stdout, "{}", e.render()) } else { write!(stderr, "{}", e.render()) };
            return code;
        }
    };
    let cfg = match resolve_config(cli.command, &cli.flags) {
        Ok(cfg) => cfg,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let outcome = match execute(cli.command, &cfg) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return exit_code(&e);
        }
    };
    let written = match &cfg.output_path {
        Some(path) => fs::write(path, &outcome.report).map(|_| writeln!(stdout, "{}", outcome.summary)),
        None => Ok(stdout.write_all(outcome.report.as_bytes()).and_then(|_| writeln!(stderr, "{}", outcome.summary))),
    };
    if let Err(e) | Ok(Err(e)) = written {
        let _ = writeln!(stderr, "error: writing output: {e}");
        return EXIT_USAGE;
    }
    if outcome.verified {
        EXIT_OK
    } else {
        EXIT_VERIFICATION
    }
}

/// Bad input maps to the usage code, failed computations to the
/// verification code.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Domain(_) | Error::DimensionMismatch { .. } | Error::InadmissibleCenter { .. } | Error::InvalidRegime(_) | Error::Config(_) => EXIT_USAGE,
        _ => EXIT_VERIFICATION,
    }
}
