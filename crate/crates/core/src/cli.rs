//! Command-line driver: `basis`, `solve`, `picard` and `verify`, configured
//! by one JSON file plus `--set dot.path=value` overrides. Every command
//! writes into `--out` and finishes with `manifest.json`.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::io::{fmt_float, write_diagnostics_csv, write_file, write_json, write_spectral_csv};
use crate::spectral::{DiskSpace, EigenBasis, SpectralField};
use crate::sqg::{picard_auto_horizon, picard_sequence, run_direct, run_regularized, Drive, RunOutput, SolverConfig};
use crate::verify::{self, Context, EnsembleSpec, Status, VerifyConfig};

/// Exit status for configuration and usage errors.
pub const EXIT_USAGE: i32 = 2;
/// Exit status when a run aborts or a check does not pass.
pub const EXIT_FAILURE: i32 = 1;

#[derive(Debug, Parser)]
#[command(name = "sqg-disk", version, about = "Critical SQG on the unit disk: solver and inequality checks")]
pub struct Cli {
    /// JSON configuration file.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true, default_value = "out")]
    pub out: PathBuf,
    /// Seed for random initial data and the verification ensemble.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Override one config key, e.g. `--set solver.dt=1e-3`.
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    pub overrides: Vec<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate the eigenbasis.
    Basis,
    /// Run the direct solver.
    Solve,
    /// Run the Picard iteration.
    Picard,
    /// Run inequality checks.
    Verify {
        /// Check name or `all`.
        #[arg(long, default_value = "all")]
        check: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InitialKind {
    Zero,
    /// Gaussian coefficients scaled by `λ^{-profile}`, optionally cut at
    /// `λ < band`.
    Random,
    /// The real unit mode `(m, k)`.
    Mode,
}

/// Initial datum for `solve` and `picard`, scaled to sup norm `amplitude`
/// (random) or coefficient `amplitude` (mode). Fields unused by `kind` are
/// ignored.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct InitialData {
    pub kind: InitialKind,
    pub profile: f64,
    pub amplitude: f64,
    pub band: Option<f64>,
    pub m: usize,
    pub k: usize,
}

impl Default for InitialData {
    fn default() -> Self {
        Self { kind: InitialKind::Random, profile: 2.0, amplitude: 0.1, band: None, m: 0, k: 1 }
    }
}

impl InitialData {
    pub fn build(&self, space: &DiskSpace, seed: u64) -> Result<SpectralField> {
        let basis = space.basis();
        match self.kind {
            InitialKind::Zero => Ok(space.zeros()),
            InitialKind::Mode => {
                let (m, k) = (self.m, self.k);
                if m > basis.max_m() || k == 0 || k > basis.max_k() {
                    return Err(Error::Config(format!("mode ({m}, {k}) is outside the basis")));
                }
                Ok(SpectralField::unit_mode(basis, m, k).scale(self.amplitude))
            }
            InitialKind::Random => {
                let spec = EnsembleSpec { seed, draws: 1, profiles: vec![self.profile] };
                let f = spec.generate(basis)?.remove(0).primary;
                let lambdas = basis.lambdas();
                let f = match self.band {
                    Some(b) => f.map_indexed(|i, c| if lambdas[i] < b { c } else { c * 0.0 }),
                    None => f,
                };
                let sup = space.sup_norm(&f)?;
                if sup == 0.0 {
                    return Err(Error::Config("band removes every mode of the initial datum".into()));
                }
                Ok(f.scale(self.amplitude / sup))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PicardCommand {
    pub iterations: usize,
    /// Halve `T` until `D_{n+1}/D_n <= target` for `n >= 3`.
    pub auto_horizon: bool,
    pub target: f64,
}

impl Default for PicardCommand {
    fn default() -> Self {
        Self { iterations: 6, auto_horizon: true, target: 0.6 }
    }
}

/// The whole configuration file.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AppConfig {
    /// When set, overrides `verify.ensemble.seed` and seeds random initial
    /// data.
    pub seed: Option<u64>,
    pub solver: SolverConfig,
    pub initial: InitialData,
    pub picard: PicardCommand,
    pub verify: VerifyConfig,
}

impl AppConfig {
    /// Reads `path` (or starts from defaults), applies `key=value`
    /// overrides and the seed flag, and validates.
    pub fn load(path: Option<&Path>, overrides: &[String], seed: Option<u64>) -> Result<Self> {
        let mut value = match path {
            Some(p) => {
                let text =
                    fs::read_to_string(p).map_err(|e| Error::Config(format!("cannot read {}: {e}", p.display())))?;
                serde_json::from_str::<Value>(&text).map_err(|e| Error::Config(format!("{}: {e}", p.display())))?
            }
            None => Value::Object(Default::default()),
        };
        for o in overrides {
            apply_override(&mut value, o)?;
        }
        let mut cfg: AppConfig = serde_json::from_value(value).map_err(|e| Error::Config(e.to_string()))?;
        if seed.is_some() {
            cfg.seed = seed;
        }
        if let Some(s) = cfg.seed {
            cfg.verify.ensemble.seed = s;
        }
        cfg.solver.validate()?;
        cfg.verify.validate()?;
        if cfg.picard.iterations < 2 {
            return Err(Error::Config("picard.iterations must be at least 2".into()));
        }
        Ok(cfg)
    }

    pub fn data_seed(&self) -> u64 {
        self.seed.unwrap_or(self.verify.ensemble.seed)
    }
}

/// `a.b.c=value`: `value` is parsed as JSON, or taken as a string if that
/// fails. Missing intermediate objects are created.
pub fn apply_override(root: &mut Value, spec: &str) -> Result<()> {
    let (key, raw) =
        spec.split_once('=').ok_or_else(|| Error::Config(format!("override `{spec}` is not of the form key=value")))?;
    let parsed = serde_json::from_str(raw).unwrap_or_else(|_| Value::String(raw.to_string()));
    let mut node = root;
    let parts: Vec<&str> = key.split('.').collect();
    if parts.iter().any(|p| p.is_empty()) {
        return Err(Error::Config(format!("override key `{key}` has an empty segment")));
    }
    for (i, part) in parts.iter().enumerate() {
        let obj = node
            .as_object_mut()
            .ok_or_else(|| Error::Config(format!("override `{key}`: `{}` is not an object", parts[..i].join("."))))?;
        if i + 1 == parts.len() {
            obj.insert((*part).to_string(), parsed);
            return Ok(());
        }
        node = obj.entry((*part).to_string()).or_insert_with(|| Value::Object(Default::default()));
    }
    Ok(())
}

/// Written last by every command.
#[derive(Clone, Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub version: String,
    pub seed: u64,
    pub config: AppConfig,
    pub wall_clock_seconds: f64,
    /// File names relative to the output directory.
    pub outputs: Vec<String>,
    pub exit_code: i32,
}

struct Outputs {
    dir: PathBuf,
    files: Vec<String>,
}

impl Outputs {
    fn new(dir: &Path) -> Result<Self> {
        fs::create_dir_all(dir)?;
        Ok(Self { dir: dir.to_path_buf(), files: Vec::new() })
    }

    fn write(&mut self, name: &str, body: impl FnOnce(&mut fs::File) -> Result<()>) -> Result<()> {
        write_file(&self.dir.join(name), body)?;
        self.files.push(name.to_string());
        Ok(())
    }
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Config(_) | Error::UnknownCheck(_) => EXIT_USAGE,
                _ => EXIT_FAILURE,
            }
        }
    }
}

fn execute(cli: &Cli) -> Result<i32> {
    let cfg = AppConfig::load(cli.config.as_deref(), &cli.overrides, cli.seed)?;
    let checks = match &cli.command {
        Command::Verify { check } => match verify::select(check) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("error: {e}\nknown checks: all, {}", verify::check_names().collect::<Vec<_>>().join(", "));
                return Ok(EXIT_USAGE);
            }
        },
        _ => Vec::new(),
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs.unwrap_or(0))
        .build()
        .map_err(|e| Error::Config(format!("cannot start {} worker threads: {e}", cli.jobs.unwrap_or(0))))?;
    let started = Instant::now();
    let mut out = Outputs::new(&cli.out)?;
    let (name, code) = pool.install(|| -> Result<(&str, i32)> {
        Ok(match &cli.command {
            Command::Basis => ("basis", cmd_basis(&cfg, &mut out)?),
            Command::Solve => ("solve", cmd_solve(&cfg, &mut out)?),
            Command::Picard => ("picard", cmd_picard(&cfg, &mut out)?),
            Command::Verify { .. } => ("verify", cmd_verify(&cfg, &checks, &mut out)?),
        })
    })?;
    let manifest = RunManifest {
        command: name.to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        seed: cfg.data_seed(),
        config: cfg.clone(),
        wall_clock_seconds: started.elapsed().as_secs_f64(),
        outputs: out.files.clone(),
        exit_code: code,
    };
    write_file(&out.dir.join("manifest.json"), |f| write_json(f, &manifest))?;
    Ok(code)
}

fn cmd_basis(cfg: &AppConfig, out: &mut Outputs) -> Result<i32> {
    use std::io::Write;
    let basis = EigenBasis::new(cfg.solver.max_m, cfg.solver.max_k)?;
    out.write("basis.csv", |f| {
        let mut w = std::io::BufWriter::new(f);
        writeln!(w, "m,k,lambda,norm_const")?;
        for m in 0..=basis.max_m() {
            for k0 in 0..basis.max_k() {
                let (l, n) = (basis.lambda(m, k0), basis.norm_const(m, k0));
                writeln!(w, "{m},{},{},{}", k0 + 1, fmt_float(l), fmt_float(n))?;
            }
        }
        w.flush()?;
        Ok(())
    })?;
    Ok(0)
}

fn cmd_solve(cfg: &AppConfig, out: &mut Outputs) -> Result<i32> {
    let space = cfg.solver.space()?;
    let theta0 = cfg.initial.build(&space, cfg.data_seed())?;
    out.write("initial.csv", |f| write_spectral_csv(f, space.basis(), &theta0))?;
    let result = if cfg.solver.epsilon > 0.0 {
        run_regularized(&space, &theta0, &cfg.solver, Drive::SelfAdvect)
    } else {
        run_direct(&space, &theta0, &cfg.solver)
    };
    match result {
        Ok(RunOutput { trajectory, diagnostics }) => {
            out.write("diagnostics.csv", |f| write_diagnostics_csv(f, &diagnostics))?;
            let last = trajectory.last().cloned().unwrap_or_else(|| theta0.clone());
            out.write("final.csv", |f| write_spectral_csv(f, space.basis(), &last))?;
            Ok(0)
        }
        Err(Error::Aborted { t, reason, partial }) => {
            eprintln!("run aborted at t = {t}: {reason}");
            out.write("diagnostics.csv", |f| write_diagnostics_csv(f, &partial))?;
            Ok(EXIT_FAILURE)
        }
        Err(e) => Err(e),
    }
}

fn cmd_picard(cfg: &AppConfig, out: &mut Outputs) -> Result<i32> {
    use std::io::Write;
    let space = cfg.solver.space()?;
    let theta0 = cfg.initial.build(&space, cfg.data_seed())?;
    let p = &cfg.picard;
    let outcome = if p.auto_horizon {
        picard_auto_horizon(&space, &theta0, &cfg.solver, p.iterations, p.target)?.0
    } else {
        picard_sequence(&space, &theta0, &cfg.solver, p.iterations)?
    };
    out.write("picard.csv", |f| {
        let mut w = std::io::BufWriter::new(f);
        writeln!(w, "n,horizon,distance,ratio,besov1_integral")?;
        let ratios = outcome.ratios();
        for s in &outcome.iterations {
            let d = s.distance.map_or_else(String::new, fmt_float);
            let r = ratios.iter().find(|r| r.0 + 1 == s.n).map_or_else(String::new, |r| fmt_float(r.1));
            writeln!(w, "{},{},{d},{r},{}", s.n, fmt_float(outcome.horizon), fmt_float(s.besov1_integral))?;
        }
        w.flush()?;
        Ok(())
    })?;
    if let Some(last) = outcome.last.last() {
        out.write("final.csv", |f| write_spectral_csv(f, space.basis(), last))?;
    }
    Ok(0)
}

fn cmd_verify(cfg: &AppConfig, checks: &[&str], out: &mut Outputs) -> Result<i32> {
    let ctx = Context::new(cfg.verify.clone())?;
    let mut reports = Vec::with_capacity(checks.len());
    for name in checks {
        let report = verify::run_check(&ctx, name)?;
        eprintln!("{:<24} {:<8} ({:.1} s)", report.check, report.status, report.runtime_seconds);
        if report.status == Status::Unstable {
            eprintln!("  UNSTABLE: a constant drifted by {:.3}x under refinement", report.max_drift());
        }
        out.write(&format!("{name}.json"), |f| write_json(f, &report))?;
        reports.push(report);
    }
    out.write("summary.csv", |f| verify::write_summary(f, &reports))?;
    Ok(if reports.iter().all(|r| r.pass) { 0 } else { EXIT_FAILURE })
}
