//! Command-line frontend.
//!
//! Exit codes: 0 success, 1 axiom failure, 2 input error, 3 optimizer did not
//! converge (the value is still printed).

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::axioms::{run_suite, Axiom, AxiomReport, MeasureFn, ScalarFn};
use crate::entropy::{Alpha, Regime};
use crate::error::{CoherenceError, Result};
use crate::format::{read_state, state_to_string, write_state, StateFile};
use crate::measures::{c_s1_with, c_s_with, l1_coherence_qubit, MeasureResult, Solver};
use crate::simplexopt::{OptimizerConfig, GRID_MAX_DIM};
use crate::states::{random_density, random_pure, DensityMatrix, RngSeed};

pub const EXIT_OK: i32 = 0;
pub const EXIT_AXIOM_FAILURE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NOT_CONVERGED: i32 = 3;

/// Largest dimension for which `--oracle grid` is honored.
pub const GRID_ORACLE_MAX_DIM: usize = 3;

#[derive(Debug, Parser)]
#[command(
    name = "coherence",
    version,
    about = "Sandwiched Renyi coherence measures"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one measure on a state file.
    Measure(MeasureArgs),
    /// Run the randomized axiom suite.
    Axioms(AxiomsArgs),
    /// Evaluate measures over states and alphas into a CSV table.
    Sweep(SweepArgs),
    /// Write a random state file.
    Random(RandomArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MeasureName {
    S1,
    S,
    Geometric,
    #[value(name = "l1-qubit")]
    L1Qubit,
}

impl MeasureName {
    pub fn as_str(self) -> &'static str {
        match self {
            MeasureName::S1 => "s1",
            MeasureName::S => "s",
            MeasureName::Geometric => "geometric",
            MeasureName::L1Qubit => "l1-qubit",
        }
    }

    fn regime(self) -> Option<Regime> {
        match self {
            MeasureName::S1 => Some(Regime::S1),
            MeasureName::S => Some(Regime::S),
            MeasureName::Geometric | MeasureName::L1Qubit => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Oracle {
    Mirror,
    Grid,
}

#[derive(Debug, Clone, Args)]
pub struct SolverArgs {
    /// Root seed for optimizer restarts and random draws.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Convergence threshold on the projected-gradient residual.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub restarts: Option<usize>,
    #[arg(long)]
    pub max_iters: Option<usize>,
    /// `grid` uses the lattice oracle for dimensions up to 3.
    #[arg(long, value_enum, default_value_t = Oracle::Mirror)]
    pub oracle: Oracle,
}

impl SolverArgs {
    fn config(&self) -> Result<OptimizerConfig> {
        let mut cfg = OptimizerConfig::default();
        if let Some(t) = self.tol {
            cfg.tol = t;
        }
        if let Some(r) = self.restarts {
            cfg.restarts = r;
        }
        if let Some(m) = self.max_iters {
            cfg.max_iters = m;
        }
        cfg.validate(2)?;
        Ok(cfg)
    }

    fn solver(&self, dim: usize) -> Result<Solver> {
        let config = self.config()?;
        match self.oracle {
            Oracle::Grid if dim <= GRID_ORACLE_MAX_DIM.min(GRID_MAX_DIM) => {
                Ok(Solver::grid_for_dim(dim))
            }
            Oracle::Grid => {
                eprintln!(
                    "notice: grid oracle covers dimensions up to {GRID_ORACLE_MAX_DIM}; using mirror ascent for dimension {dim}"
                );
                Ok(Solver::Mirror {
                    config,
                    seed: RngSeed(self.seed),
                })
            }
            Oracle::Mirror => Ok(Solver::Mirror {
                config,
                seed: RngSeed(self.seed),
            }),
        }
    }
}

#[derive(Debug, Args)]
pub struct MeasureArgs {
    #[arg(long)]
    pub state: PathBuf,
    #[arg(long, value_enum)]
    pub measure: MeasureName,
    /// Required for `s1` and `s`.
    #[arg(long)]
    pub alpha: Option<f64>,
    #[command(flatten)]
    pub solver: SolverArgs,
}

#[derive(Debug, Args)]
pub struct AxiomsArgs {
    /// `s1`, `s`, `geometric`, `l1-qubit`, or the negative control `broken`.
    #[arg(long)]
    pub measure: String,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long, default_value_t = 3)]
    pub dim: usize,
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
    /// Test `f(C)` instead of `C`: `identity`, `sqrt`, or `square`.
    #[arg(long)]
    pub compose: Option<String>,
    #[command(flatten)]
    pub solver: SolverArgs,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Comma-separated alpha values.
    #[arg(long, value_delimiter = ',', required = true)]
    pub alphas: Vec<f64>,
    #[arg(long, value_enum, value_delimiter = ',', required = true)]
    pub measures: Vec<MeasureName>,
    /// State file; repeatable.
    #[arg(long)]
    pub state: Vec<PathBuf>,
    /// Random states as `dim:rank:count:seed`; repeatable.
    #[arg(long)]
    pub generate: Vec<GenSpec>,
    /// Output CSV path; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub solver: SolverArgs,
}

#[derive(Debug, Args)]
pub struct RandomArgs {
    #[arg(long)]
    pub dim: usize,
    /// Rank of the mixed state; full rank when absent.
    #[arg(long, conflicts_with = "pure")]
    pub rank: Option<usize>,
    /// Write a state vector instead of a density matrix.
    #[arg(long)]
    pub pure: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output path; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Generator spec `dim:rank:count:seed`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenSpec {
    pub dim: usize,
    pub rank: usize,
    pub count: usize,
    pub seed: u64,
}

impl std::str::FromStr for GenSpec {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 4 {
            return Err(format!("expected dim:rank:count:seed, got `{s}`"));
        }
        let num = |i: usize, what: &str| -> std::result::Result<u64, String> {
            parts[i]
                .trim()
                .parse::<u64>()
                .map_err(|e| format!("{what} `{}`: {e}", parts[i]))
        };
        let spec = GenSpec {
            dim: num(0, "dim")? as usize,
            rank: num(1, "rank")? as usize,
            count: num(2, "count")? as usize,
            seed: num(3, "seed")?,
        };
        if spec.dim == 0 || spec.rank == 0 || spec.rank > spec.dim {
            return Err(format!(
                "rank {} invalid for dimension {}",
                spec.rank, spec.dim
            ));
        }
        Ok(spec)
    }
}

/// Full-precision float for CSV output.
pub fn fmt_f64(x: f64) -> String {
    if x.is_nan() {
        "NaN".into()
    } else {
        format!("{x:.16e}")
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let outcome = match cli.command {
        Command::Measure(a) => cmd_measure(&a),
        Command::Axioms(a) => cmd_axioms(&a),
        Command::Sweep(a) => cmd_sweep(&a),
        Command::Random(a) => cmd_random(&a),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INPUT
        }
    }
}

fn load_state(path: &Path) -> Result<DensityMatrix> {
    read_state(path)
        .map(|s| s.to_density())
        .map_err(|e| match e {
            CoherenceError::Io(io) => CoherenceError::Parse(format!("{}: {io}", path.display())),
            other => CoherenceError::Parse(format!("{}: {other}", path.display())),
        })
}

fn resolve_alpha(name: MeasureName, alpha: Option<f64>) -> Result<Option<Alpha>> {
    match name.regime() {
        Some(regime) => {
            let v = alpha.ok_or_else(|| {
                CoherenceError::Parse(format!("measure `{}` needs --alpha", name.as_str()))
            })?;
            Alpha::new(v, regime).map(Some)
        }
        None => Ok(None),
    }
}

/// One evaluated cell: value, converged flag, agreeing restarts, method.
struct Cell {
    value: f64,
    converged: bool,
    restarts_agreeing: Option<usize>,
    method: &'static str,
}

impl From<MeasureResult> for Cell {
    fn from(r: MeasureResult) -> Self {
        Cell {
            value: r.value,
            converged: r.report.converged,
            restarts_agreeing: Some(r.report.restarts_agreeing),
            method: r.method.as_str(),
        }
    }
}

fn evaluate(
    name: MeasureName,
    alpha: Option<Alpha>,
    rho: &DensityMatrix,
    solver: &Solver,
) -> Result<Cell> {
    match name {
        MeasureName::S1 => Ok(c_s1_with(rho, alpha.expect("resolved"), solver)?.into()),
        MeasureName::S => Ok(c_s_with(rho, alpha.expect("resolved"), solver)?.into()),
        MeasureName::Geometric => Ok(c_s1_with(rho, Alpha::half(), solver)?.into()),
        MeasureName::L1Qubit => Ok(Cell {
            value: l1_coherence_qubit(rho)?,
            converged: true,
            restarts_agreeing: None,
            method: "closed-form",
        }),
    }
}

fn alpha_field(alpha: Option<Alpha>) -> String {
    alpha.map(|a| fmt_f64(a.value())).unwrap_or_default()
}

pub fn cmd_measure(args: &MeasureArgs) -> Result<i32> {
    let alpha = resolve_alpha(args.measure, args.alpha)?;
    let rho = load_state(&args.state)?;
    let solver = args.solver.solver(rho.dim())?;
    let cell = evaluate(args.measure, alpha, &rho, &solver)?;
    println!("measure,alpha,value,converged,restarts_agreeing,method");
    println!(
        "{},{},{},{},{},{}",
        args.measure.as_str(),
        alpha_field(alpha),
        fmt_f64(cell.value),
        cell.converged,
        cell.restarts_agreeing
            .map(|n| n.to_string())
            .unwrap_or_default(),
        cell.method
    );
    if cell.converged {
        Ok(EXIT_OK)
    } else {
        eprintln!("warning: optimizer did not converge");
        Ok(EXIT_NOT_CONVERGED)
    }
}

fn axiom_row(m: &MeasureFn, r: &AxiomReport) -> String {
    format!(
        "{},{},{},{},{},{},{}",
        csv_field(m.name()),
        alpha_field(m.alpha()),
        r.axiom,
        r.trials,
        fmt_f64(r.max_violation),
        r.worst_case_seed.0,
        if r.passed { "pass" } else { "fail" }
    )
}

pub fn cmd_axioms(args: &AxiomsArgs) -> Result<i32> {
    if args.dim < 2 {
        return Err(CoherenceError::DimensionTooSmall {
            dim: args.dim,
            min: 2,
        });
    }
    if args.measure == "l1-qubit" && args.dim != 2 {
        return Err(CoherenceError::NotQubit(args.dim));
    }
    let solver = args.solver.solver(args.dim)?;
    let mut m = MeasureFn::by_name(&args.measure, args.alpha, solver)?;
    if let Some(f) = &args.compose {
        m = m.compose(&ScalarFn::by_name(f)?);
    }
    let suite = run_suite(&m, args.dim, args.trials, RngSeed(args.solver.seed));
    let mut out = String::from("measure,alpha,axiom,trials,max_violation,worst_case_seed,status\n");
    for r in &suite.reports {
        out.push_str(&axiom_row(&m, r));
        out.push('\n');
    }
    if suite.get(Axiom::C5).is_none() {
        let _ = writeln!(
            out,
            "{},{},C5,0,,,skipped",
            csv_field(m.name()),
            alpha_field(m.alpha())
        );
    }
    print!("{out}");
    Ok(if suite.passed() {
        EXIT_OK
    } else {
        EXIT_AXIOM_FAILURE
    })
}

pub const SWEEP_HEADER: &str = "state_id,measure,alpha,value,method,converged";

/// Loads or generates the sweep states, in command-line order: files first,
/// then generators.
fn sweep_states(args: &SweepArgs) -> Result<Vec<(String, DensityMatrix)>> {
    let mut states = Vec::new();
    for path in &args.state {
        states.push((path.display().to_string(), load_state(path)?));
    }
    for g in &args.generate {
        for i in 0..g.count {
            let seed = RngSeed(g.seed).derive(i as u64);
            let rho = random_density(g.dim, g.rank, seed)?;
            states.push((format!("gen-{}-{}-{}-{}", g.dim, g.rank, g.seed, i), rho));
        }
    }
    if states.is_empty() {
        return Err(CoherenceError::InvalidConfig(
            "sweep needs at least one --state or --generate".into(),
        ));
    }
    Ok(states)
}

/// Renders the sweep table. Cells run in parallel; rows keep the order
/// states, then measures, then ascending alpha.
pub fn sweep_csv(args: &SweepArgs) -> Result<String> {
    let states = sweep_states(args)?;
    let mut alphas = args.alphas.clone();
    alphas.sort_by(f64::total_cmp);
    alphas.dedup();
    let mut jobs: Vec<(usize, MeasureName, Option<Alpha>)> = Vec::new();
    for (si, (id, rho)) in states.iter().enumerate() {
        for &m in &args.measures {
            match m.regime() {
                Some(regime) => {
                    for &a in &alphas {
                        match Alpha::new(a, regime) {
                            Ok(alpha) => jobs.push((si, m, Some(alpha))),
                            Err(e) => {
                                eprintln!("notice: skipping {id} {} alpha={a}: {e}", m.as_str())
                            }
                        }
                    }
                }
                None if m == MeasureName::L1Qubit && rho.dim() != 2 => {
                    eprintln!("notice: skipping {id} l1-qubit: dimension {}", rho.dim());
                }
                None => jobs.push((si, m, None)),
            }
        }
    }
    let rows: Vec<String> = jobs
        .par_iter()
        .map(|&(si, m, alpha)| -> Result<String> {
            let (id, rho) = &states[si];
            let solver = args.solver.solver(rho.dim())?;
            let (value, method, converged) = match evaluate(m, alpha, rho, &solver) {
                Ok(c) => (c.value, c.method, c.converged),
                Err(e) => {
                    eprintln!("warning: {id} {} failed: {e}", m.as_str());
                    (f64::NAN, "failed", false)
                }
            };
            Ok(format!(
                "{},{},{},{},{},{}",
                csv_field(id),
                m.as_str(),
                alpha_field(alpha),
                fmt_f64(value),
                method,
                converged
            ))
        })
        .collect::<Result<_>>()?;
    let mut out = String::from(SWEEP_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&r);
        out.push('\n');
    }
    Ok(out)
}

pub fn cmd_sweep(args: &SweepArgs) -> Result<i32> {
    let csv = sweep_csv(args)?;
    match &args.out {
        Some(path) => fs::write(path, csv)?,
        None => io::stdout().write_all(csv.as_bytes())?,
    }
    Ok(EXIT_OK)
}

pub fn cmd_random(args: &RandomArgs) -> Result<i32> {
    let seed = RngSeed(args.seed);
    let state = if args.pure {
        StateFile::Pure(random_pure(args.dim, seed)?)
    } else {
        StateFile::Mixed(random_density(
            args.dim,
            args.rank.unwrap_or(args.dim),
            seed,
        )?)
    };
    match &args.out {
        Some(path) => write_state(path, &state)?,
        None => println!("{}", state_to_string(&state)),
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gen_spec_parses() {
        let g: GenSpec = "3:2:5:11".parse().unwrap();
        assert_eq!(
            g,
            GenSpec {
                dim: 3,
                rank: 2,
                count: 5,
                seed: 11
            }
        );
        assert!("3:4:1:0".parse::<GenSpec>().is_err());
        assert!("3:2:1".parse::<GenSpec>().is_err());
        assert!("a:2:1:0".parse::<GenSpec>().is_err());
    }

    #[test]
    fn floats_round_trip() {
        for x in [0.1, 1.0 / 3.0, 2f64.sqrt() - 1.0, 1e-300, -0.0] {
            assert_eq!(fmt_f64(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(fmt_f64(f64::NAN), "NaN");
    }

    #[test]
    fn csv_quoting() {
        assert_eq!(csv_field("a.state"), "a.state");
        assert_eq!(csv_field("a,b"), "\"a,b\"");
    }

    #[test]
    fn bad_flags_exit_two() {
        assert_eq!(run(["coherence", "measure"]), EXIT_INPUT);
        assert_eq!(run(["coherence", "frobnicate"]), EXIT_INPUT);
    }
}
