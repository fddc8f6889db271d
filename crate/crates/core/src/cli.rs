//! Command-line front end.
//!
//! Values are resolved as flag, then config file (`key = value` lines, keys
//! named like the long flags), then built-in default. The effective
//! configuration is written to `effective_config.json` in the output
//! directory.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::eigen;
use crate::error::{Error, Result};
use crate::grid::{make_grid, Grid};
use crate::model_problems::{self, Params};
use crate::monotone_iteration::{self, IterationStatus};
use crate::solver::SolverConfig;
use crate::threshold;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_DIVERGED: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;
pub const EXIT_CHECK_FAILED: i32 = 4;

pub const SEED_ENV: &str = "PLAP_SEED";

#[derive(Parser, Debug)]
#[command(name = "plap", version, about = "Concave-convex p-Laplacian problems on an interval")]
pub struct Cli {
    /// Flat `key = value` config file.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Print progress to stderr and write iteration traces.
    #[arg(long, short, global = true)]
    pub verbose: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// First eigenvalue and eigenfunction.
    Eigen(CommonArgs),
    /// One of the model problems.
    Solve {
        kind: SolveKind,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Monotone iteration for the concave-convex problem with its trace.
    Iterate(CommonArgs),
    /// Closed-form bounds and the empirical threshold for one q.
    Threshold(CommonArgs),
    /// Threshold bracket for every q in a list.
    Sweep(CommonArgs),
    /// Sup-norm sandwich and c-constant checks.
    Verify(CommonArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolveKind {
    Concave,
    LinearConcave,
    ConcaveConvex,
}

#[derive(Args, Debug, Default, Clone)]
pub struct CommonArgs {
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long)]
    pub q: Option<f64>,
    #[arg(long)]
    pub r: Option<f64>,
    /// Coefficient Λ of the concave term.
    #[arg(long = "Lambda")]
    pub big_lambda: Option<f64>,
    /// Coefficient λ of the linear term.
    #[arg(long)]
    pub lambda: Option<f64>,
    /// λ as a fraction of λ₁.
    #[arg(long)]
    pub lambda_frac: Option<f64>,
    /// Concave coefficient of the linear-concave problem.
    #[arg(long)]
    pub coeff: Option<f64>,
    #[arg(long)]
    pub cells: Option<usize>,
    #[arg(long)]
    pub a: Option<f64>,
    #[arg(long)]
    pub b: Option<f64>,
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
    #[arg(long)]
    pub tol_residual: Option<f64>,
    #[arg(long)]
    pub tol_step: Option<f64>,
    #[arg(long)]
    pub max_inner_iters: Option<usize>,
    #[arg(long)]
    pub epsilon_reg: Option<f64>,
    #[arg(long)]
    pub blowup_cap: Option<f64>,
    #[arg(long)]
    pub max_outer_iters: Option<usize>,
    /// Worker threads for the sweep.
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Rerun the last sweep row at twice the cells.
    #[arg(long)]
    pub refine: bool,
    /// Comma-separated, increasing.
    #[arg(long)]
    pub q_list: Option<String>,
    /// Comma-separated fractions of λ₁.
    #[arg(long)]
    pub lambda_fracs: Option<String>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Start the eigen iteration from a seeded random positive vector.
    #[arg(long)]
    pub random_start: bool,
}

const CONFIG_KEYS: &[&str] = &[
    "p",
    "q",
    "r",
    "Lambda",
    "lambda",
    "lambda-frac",
    "coeff",
    "cells",
    "a",
    "b",
    "out-dir",
    "tol-residual",
    "tol-step",
    "max-inner-iters",
    "epsilon-reg",
    "blowup-cap",
    "max-outer-iters",
    "jobs",
    "refine",
    "q-list",
    "lambda-fracs",
    "seed",
    "random-start",
    "verbose",
];

/// Parses the flat config format: `key = value`, `#` starts a comment.
pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::InvalidConfig(format!("line {}: expected `key = value`", n + 1)))?;
        let k = k.trim().replace('_', "-");
        if !CONFIG_KEYS.contains(&k.as_str()) {
            return Err(Error::InvalidConfig(format!("line {}: unknown key `{k}`", n + 1)));
        }
        out.insert(k, v.trim().to_string());
    }
    Ok(out)
}

struct Layered<'a> {
    file: &'a BTreeMap<String, String>,
}

impl Layered<'_> {
    fn get<T: FromStr>(&self, flag: Option<T>, key: &str) -> Result<Option<T>> {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.file.get(key) {
            None => Ok(None),
            Some(s) => s
                .parse()
                .map(Some)
                .map_err(|_| Error::InvalidConfig(format!("config key `{key}`: cannot parse `{s}`"))),
        }
    }

    fn or<T: FromStr>(&self, flag: Option<T>, key: &str, default: T) -> Result<T> {
        Ok(self.get(flag, key)?.unwrap_or(default))
    }

    fn switch(&self, flag: bool, key: &str) -> Result<bool> {
        Ok(flag || self.get(None, key)?.unwrap_or(false))
    }
}

fn parse_list(s: &str, what: &str) -> Result<Vec<f64>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            t.trim().parse::<f64>().map_err(|_| Error::InvalidConfig(format!("{what}: cannot parse `{}`", t.trim())))
        })
        .collect()
}

/// Fully resolved run settings.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub kind: Option<SolveKind>,
    pub p: f64,
    pub q: f64,
    pub r: f64,
    #[serde(rename = "Lambda")]
    pub big_lambda: Option<f64>,
    pub lambda: Option<f64>,
    pub lambda_frac: Option<f64>,
    pub coeff: f64,
    pub cells: usize,
    pub a: f64,
    pub b: f64,
    pub out_dir: PathBuf,
    pub solver: SolverConfig,
    pub jobs: usize,
    pub refine: bool,
    pub q_list: Vec<f64>,
    #[serde(skip)]
    q_list_given: bool,
    pub lambda_fracs: Vec<f64>,
    pub seed: u64,
    pub random_start: bool,
    pub verbose: bool,
}

impl RunConfig {
    pub fn resolve(
        command: &str,
        kind: Option<SolveKind>,
        args: &CommonArgs,
        file: &BTreeMap<String, String>,
        verbose: bool,
        env_seed: Option<&str>,
    ) -> Result<Self> {
        let l = Layered { file };
        let d = SolverConfig::default();
        let solver = SolverConfig {
            tol_residual: l.or(args.tol_residual, "tol-residual", d.tol_residual)?,
            tol_step: l.or(args.tol_step, "tol-step", d.tol_step)?,
            max_inner_iters: l.or(args.max_inner_iters, "max-inner-iters", d.max_inner_iters)?,
            epsilon_reg: l.or(args.epsilon_reg, "epsilon-reg", d.epsilon_reg)?,
            blowup_cap: l.or(args.blowup_cap, "blowup-cap", d.blowup_cap)?,
            max_outer_iters: l.or(args.max_outer_iters, "max-outer-iters", d.max_outer_iters)?,
        };
        let seed = match env_seed {
            Some(s) => s
                .trim()
                .parse()
                .map_err(|_| Error::InvalidConfig(format!("{SEED_ENV}: cannot parse `{s}` as an integer")))?,
            None => l.or(args.seed, "seed", 0)?,
        };
        let q_list_raw = l.get(args.q_list.clone(), "q-list")?;
        let q_list_given = q_list_raw.is_some();
        let q_list = match q_list_raw {
            Some(s) => parse_list(&s, "q-list")?,
            None => vec![1.6, 1.8, 1.9, 1.95],
        };
        let lambda_fracs = match l.get(args.lambda_fracs.clone(), "lambda-fracs")? {
            Some(s) => parse_list(&s, "lambda-fracs")?,
            None => vec![0.0, 0.3, 0.6],
        };
        let cfg = Self {
            command: command.to_string(),
            kind,
            p: l.or(args.p, "p", 2.0)?,
            q: l.or(args.q, "q", 1.5)?,
            r: l.or(args.r, "r", 3.0)?,
            big_lambda: l.get(args.big_lambda, "Lambda")?,
            lambda: l.get(args.lambda, "lambda")?,
            lambda_frac: l.get(args.lambda_frac, "lambda-frac")?,
            coeff: l.or(args.coeff, "coeff", 1.0)?,
            cells: l.or(args.cells, "cells", 1024)?,
            a: l.or(args.a, "a", 0.0)?,
            b: l.or(args.b, "b", 1.0)?,
            out_dir: l.or(args.out_dir.clone(), "out-dir", PathBuf::from("."))?,
            solver,
            jobs: l.or(args.jobs, "jobs", 1)?,
            refine: l.switch(args.refine, "refine")?,
            q_list,
            q_list_given,
            lambda_fracs,
            seed,
            random_start: l.switch(args.random_start, "random-start")?,
            verbose: l.switch(verbose, "verbose")?,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Checks everything that can be checked before computing.
    pub fn validate(&self) -> Result<()> {
        self.solver.validate()?;
        crate::solver::check_exponent(self.p)?;
        self.grid()?;
        if self.jobs == 0 {
            return Err(Error::InvalidConfig("jobs must be at least 1".into()));
        }
        if matches!(self.command.as_str(), "solve" | "iterate" | "threshold") {
            Params::new(self.p, self.q, self.r)?;
        }
        if self.command == "verify" {
            for &q in &self.q_verify() {
                Params::new(self.p, q, self.r)?;
            }
            if self.lambda_fracs.is_empty() {
                return Err(Error::InvalidParams("lambda-fracs is empty".into()));
            }
        }
        if self.command == "sweep" && self.q_list.is_empty() {
            return Err(Error::InvalidParams("q list is empty".into()));
        }
        if self.lambda.is_some() && self.lambda_frac.is_some() {
            return Err(Error::InvalidConfig("give at most one of lambda and lambda-frac".into()));
        }
        let needs_big_lambda =
            self.command == "iterate" || (self.command == "solve" && self.kind == Some(SolveKind::ConcaveConvex));
        if needs_big_lambda && self.big_lambda.is_none() {
            return Err(Error::InvalidParams("Lambda is required for the concave-convex problem".into()));
        }
        Ok(())
    }

    pub fn grid(&self) -> Result<Grid> {
        make_grid(self.a, self.b, self.cells)
    }

    /// `verify` uses `q-list` only when it was given explicitly.
    fn q_verify(&self) -> Vec<f64> {
        if self.q_list_given {
            self.q_list.clone()
        } else {
            vec![self.q]
        }
    }
}

/// Parses arguments and runs; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let env_seed = std::env::var(SEED_ENV).ok();
    match execute(&cli, env_seed.as_deref()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INVALID
        }
    }
}

fn execute(cli: &Cli, env_seed: Option<&str>) -> Result<i32> {
    let file = match &cli.config {
        Some(path) => parse_config(&fs::read_to_string(path)?)?,
        None => BTreeMap::new(),
    };
    let (name, kind, args) = match &cli.command {
        Command::Eigen(a) => ("eigen", None, a),
        Command::Solve { kind, common } => ("solve", Some(*kind), common),
        Command::Iterate(a) => ("iterate", None, a),
        Command::Threshold(a) => ("threshold", None, a),
        Command::Sweep(a) => ("sweep", None, a),
        Command::Verify(a) => ("verify", None, a),
    };
    let cfg = RunConfig::resolve(name, kind, args, &file, cli.verbose, env_seed)?;
    fs::create_dir_all(&cfg.out_dir)?;
    write_json(&cfg.out_dir.join("effective_config.json"), &cfg)?;
    match name {
        "eigen" => cmd_eigen(&cfg),
        "solve" => cmd_solve(&cfg),
        "iterate" => cmd_iterate(&cfg),
        "threshold" => cmd_threshold(&cfg),
        "sweep" => cmd_sweep(&cfg),
        _ => cmd_verify(&cfg),
    }
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

fn progress(cfg: &RunConfig, msg: impl AsRef<str>) {
    if cfg.verbose {
        eprintln!("{}", msg.as_ref());
    }
}

fn eigenpair(cfg: &RunConfig, grid: Grid) -> Result<eigen::EigenResult> {
    let eig = if cfg.random_start {
        eigen::first_eigenpair_from(cfg.p, &eigen::random_positive_start(grid, cfg.seed), &cfg.solver)?
    } else {
        eigen::first_eigenpair(cfg.p, grid, &cfg.solver)?
    };
    progress(cfg, format!("eigen: lambda1 = {} after {} iterations", eig.lambda1, eig.iterations));
    Ok(eig)
}

#[derive(Serialize)]
struct EigenSummary {
    p: f64,
    cells: usize,
    lambda1: f64,
    iterations: usize,
    rayleigh_history: Vec<f64>,
}

fn cmd_eigen(cfg: &RunConfig) -> Result<i32> {
    let grid = cfg.grid()?;
    let eig = eigenpair(cfg, grid)?;
    eig.eigenfunction.save_csv(cfg.out_dir.join("eigenfunction.csv"))?;
    let summary = EigenSummary {
        p: cfg.p,
        cells: cfg.cells,
        lambda1: eig.lambda1,
        iterations: eig.iterations,
        rayleigh_history: eig.rayleigh_history.clone(),
    };
    write_json(&cfg.out_dir.join("eigen.json"), &summary)?;
    println!("lambda1={}", eig.lambda1);
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct SolveSummary {
    kind: SolveKind,
    p: f64,
    q: f64,
    r: f64,
    #[serde(rename = "Lambda")]
    big_lambda: Option<f64>,
    lambda: Option<f64>,
    lambda1: Option<f64>,
    coeff: Option<f64>,
    status: String,
    sup_norm: Option<f64>,
    c_value: Option<f64>,
    iterations: usize,
    residual: f64,
    with_supersolution: Option<bool>,
    diagnostic: Option<String>,
}

fn cmd_solve(cfg: &RunConfig) -> Result<i32> {
    let grid = cfg.grid()?;
    let params = Params::new(cfg.p, cfg.q, cfg.r)?;
    let kind = cfg.kind.unwrap_or(SolveKind::Concave);
    let mut summary = SolveSummary {
        kind,
        p: cfg.p,
        q: cfg.q,
        r: cfg.r,
        big_lambda: None,
        lambda: None,
        lambda1: None,
        coeff: None,
        status: "converged".into(),
        sup_norm: None,
        c_value: None,
        iterations: 0,
        residual: 0.0,
        with_supersolution: None,
        diagnostic: None,
    };
    let code = match kind {
        SolveKind::Concave => {
            let coeff = cfg.big_lambda.unwrap_or(1.0);
            let s = model_problems::solve_concave(coeff, &params, grid, &cfg.solver)?;
            s.u.save_csv(cfg.out_dir.join("solution.csv"))?;
            summary.big_lambda = Some(coeff);
            summary.sup_norm = Some(s.sup_norm);
            summary.iterations = s.report.iterations;
            summary.residual = s.report.final_residual;
            EXIT_OK
        }
        SolveKind::LinearConcave => {
            let eig = eigenpair(cfg, grid)?;
            let lambda = match (cfg.lambda, cfg.lambda_frac) {
                (Some(l), _) => l,
                (None, Some(f)) => f * eig.lambda1,
                (None, None) => 0.0,
            };
            let s = model_problems::solve_linear_concave(lambda, cfg.coeff, &params, grid, &eig, &cfg.solver)?;
            s.u.save_csv(cfg.out_dir.join("solution.csv"))?;
            summary.lambda = Some(lambda);
            summary.lambda1 = Some(eig.lambda1);
            summary.coeff = Some(cfg.coeff);
            summary.sup_norm = Some(s.sup_norm);
            summary.c_value = Some(s.c_value);
            summary.iterations = s.report.iterations;
            summary.residual = s.report.final_residual;
            EXIT_OK
        }
        SolveKind::ConcaveConvex => {
            let run = concave_convex(cfg, &params, grid)?;
            if let Some(u) = &run.outcome.solution {
                u.save_csv(cfg.out_dir.join("solution.csv"))?;
                summary.sup_norm = Some(crate::grid::sup_norm(u)?);
            }
            if cfg.verbose {
                write_trace(cfg, &run.outcome.trace)?;
            }
            summary.big_lambda = cfg.big_lambda;
            summary.lambda1 = Some(run.lambda1);
            summary.status = run.outcome.status.as_str().into();
            summary.iterations = run.outcome.k_final;
            summary.residual = run.outcome.residual;
            summary.with_supersolution = Some(run.with_supersolution);
            summary.diagnostic = run.outcome.diagnostic.clone();
            status_code(run.outcome.status)
        }
    };
    write_json(&cfg.out_dir.join("report.json"), &summary)?;
    println!("status={}", summary.status);
    if let Some(s) = summary.sup_norm {
        println!("sup_norm={s}");
    }
    if let Some(c) = summary.c_value {
        println!("c_value={c}");
    }
    Ok(code)
}

fn status_code(status: IterationStatus) -> i32 {
    match status {
        IterationStatus::Converged => EXIT_OK,
        IterationStatus::Diverged => EXIT_DIVERGED,
        IterationStatus::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

struct ConcaveConvexRun {
    outcome: monotone_iteration::IterationOutcome,
    lambda1: f64,
    with_supersolution: bool,
}

fn concave_convex(cfg: &RunConfig, params: &Params, grid: Grid) -> Result<ConcaveConvexRun> {
    let coeff = cfg.big_lambda.ok_or_else(|| Error::InvalidParams("Lambda is required".into()))?;
    let eig = eigenpair(cfg, grid)?;
    let sub = monotone_iteration::build_subsolution(coeff, params, grid, &cfg.solver)?;
    let sup = monotone_iteration::build_supersolution(coeff, cfg.lambda, params, &eig, &cfg.solver)?;
    progress(cfg, format!("supersolution: {}", if sup.is_some() { "found" } else { "none" }));
    let outcome = monotone_iteration::iterate(coeff, params, &sub, sup.as_ref(), &cfg.solver)?;
    progress(cfg, format!("iteration: {} after {} steps", outcome.status.as_str(), outcome.k_final));
    Ok(ConcaveConvexRun { outcome, lambda1: eig.lambda1, with_supersolution: sup.is_some() })
}

fn write_trace(cfg: &RunConfig, trace: &[monotone_iteration::TraceRow]) -> Result<()> {
    let file = fs::File::create(cfg.out_dir.join("trace.csv"))?;
    monotone_iteration::write_trace_csv(trace, file)
}

fn cmd_iterate(cfg: &RunConfig) -> Result<i32> {
    let grid = cfg.grid()?;
    let params = Params::new(cfg.p, cfg.q, cfg.r)?;
    let run = concave_convex(cfg, &params, grid)?;
    write_trace(cfg, &run.outcome.trace)?;
    if let Some(u) = &run.outcome.solution {
        u.save_csv(cfg.out_dir.join("solution.csv"))?;
    }
    #[derive(Serialize)]
    struct Summary<'a> {
        status: IterationStatus,
        k_final: usize,
        residual: f64,
        lambda1: f64,
        with_supersolution: bool,
        diagnostic: &'a Option<String>,
    }
    let o = &run.outcome;
    write_json(
        &cfg.out_dir.join("outcome.json"),
        &Summary {
            status: o.status,
            k_final: o.k_final,
            residual: o.residual,
            lambda1: run.lambda1,
            with_supersolution: run.with_supersolution,
            diagnostic: &o.diagnostic,
        },
    )?;
    println!("status={}", o.status.as_str());
    println!("k_final={}", o.k_final);
    Ok(status_code(o.status))
}

fn cmd_threshold(cfg: &RunConfig) -> Result<i32> {
    let grid = cfg.grid()?;
    let params = Params::new(cfg.p, cfg.q, cfg.r)?;
    let eig = eigenpair(cfg, grid)?;
    let b = threshold::empirical_threshold(&params, grid, &eig, &cfg.solver)?;
    #[derive(Serialize)]
    struct Summary<'a> {
        #[serde(flatten)]
        bracket: &'a threshold::ThresholdBracket,
        c_at_tq: f64,
        t_q: f64,
        probes: &'a [threshold::Probe],
    }
    write_json(
        &cfg.out_dir.join("threshold.json"),
        &Summary { bracket: &b, c_at_tq: b.c_at_tq, t_q: threshold::t_q(&params), probes: &b.probes },
    )?;
    println!("lambda1={}", b.lambda1);
    println!("lambda_tilde={}", b.lambda_tilde);
    match b.lambda_emp {
        Some(e) => println!("lambda_emp={e}"),
        None => println!("lambda_emp="),
    }
    println!("lambda_hat={}", b.lambda_hat);
    println!("bracket=[{}, {}]", b.bracket_lo, b.bracket_hi);
    println!("n_inconclusive={}", b.n_inconclusive);
    Ok(EXIT_OK)
}

fn cmd_sweep(cfg: &RunConfig) -> Result<i32> {
    let grid = cfg.grid()?;
    let out = threshold::sweep_q(cfg.p, cfg.r, &cfg.q_list, grid, &cfg.solver, cfg.jobs)?;
    let brackets: Vec<_> = out.rows.iter().map(|r| &r.bracket).collect();
    threshold::write_sweep_csv(brackets.iter().copied(), fs::File::create(cfg.out_dir.join("sweep.csv"))?)?;
    fs::write(cfg.out_dir.join("sweep.gp"), threshold::plot_script("sweep.csv"))?;
    if !out.errors.is_empty() {
        threshold::write_sweep_errors_csv(&out.errors, fs::File::create(cfg.out_dir.join("sweep_errors.csv"))?)?;
    }
    for row in &out.rows {
        let b = &row.bracket;
        println!(
            "q={} lambda_tilde={} lambda_emp={} lambda_hat={} n_inconclusive={}",
            b.q,
            b.lambda_tilde,
            b.lambda_emp.map_or_else(String::new, |e| e.to_string()),
            b.lambda_hat,
            b.n_inconclusive
        );
    }
    for e in &out.errors {
        eprintln!("row q={} failed: {}", e.q, e.error);
    }
    if cfg.refine {
        if let Some(&q) = cfg.q_list.last() {
            let fine = make_grid(cfg.a, cfg.b, 2 * cfg.cells)?;
            let refined = threshold::sweep_q(cfg.p, cfg.r, &[q], fine, &cfg.solver, 1)?;
            let rows: Vec<_> = refined.rows.iter().map(|r| &r.bracket).collect();
            threshold::write_sweep_csv(rows.iter().copied(), fs::File::create(cfg.out_dir.join("sweep_refined.csv"))?)?;
            for e in &refined.errors {
                eprintln!("refined row q={} failed: {}", e.q, e.error);
            }
        }
    }
    Ok(if out.rows.is_empty() { EXIT_INVALID } else { EXIT_OK })
}

#[derive(Serialize)]
struct CRow {
    p: f64,
    q: f64,
    lambda: f64,
    c_value: f64,
    holds: bool,
}

fn cmd_verify(cfg: &RunConfig) -> Result<i32> {
    let grid = cfg.grid()?;
    let eig = eigenpair(cfg, grid)?;
    let mut rows = Vec::new();
    let mut c_rows = Vec::new();
    for q in cfg.q_verify() {
        let params = Params::new(cfg.p, q, cfg.r)?;
        for &f in &cfg.lambda_fracs {
            let rep = model_problems::verify_supnorm_sandwich(f * eig.lambda1, &params, grid, &eig, &cfg.solver)?;
            let c_ok = rep.c_value >= 1.0 - 1e-3;
            println!(
                "q={q} lambda_frac={f} lower={} sup_norm={} upper={} sandwich={} c={} c_check={}",
                rep.lower,
                rep.sup_norm,
                rep.upper.map_or_else(|| "undefined".to_string(), |u| u.to_string()),
                pass(rep.holds),
                rep.c_value,
                pass(c_ok)
            );
            c_rows.push(CRow { p: cfg.p, q, lambda: rep.lambda, c_value: rep.c_value, holds: c_ok });
            rows.push(rep);
        }
    }
    model_problems::write_sandwich_csv(&rows, fs::File::create(cfg.out_dir.join("sandwich.csv"))?)?;
    let mut w = csv::Writer::from_writer(fs::File::create(cfg.out_dir.join("c_constant.csv"))?);
    for r in &c_rows {
        w.serialize(r)?;
    }
    w.flush()?;
    let ok = rows.iter().all(|r| r.holds) && c_rows.iter().all(|r| r.holds);
    Ok(if ok { EXIT_OK } else { EXIT_CHECK_FAILED })
}

fn pass(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}
