//! Command-line front end: solves, order sweeps, bracket certificates,
//! stability probes, and the receiver coefficient pipeline.

use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use fracroot::complex::ComplexVector;
use fracroot::fracderiv::FracOrder;
use fracroot::output::{
    to_json, BracketBoxDoc, BracketScanDoc, CurveDoc, ReceiverInfoDoc, SolveDoc, StabilityDoc,
    SweepDoc,
};
use fracroot::probing;
use fracroot::problems::{self, ProblemDef, ReceiverParams};
use fracroot::solver::{solve, SolveStatus, SolverConfig};
use fracroot::sweep::{alpha_sweep, AlphaSampling, SweepPlan};

#[derive(Parser)]
#[command(
    name = "fracroot",
    version,
    about = "Fractional pseudo-Newton root finding: real starts, complex roots, order sweeps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the fractional pseudo-Newton solver once.
    Solve(SolveArgs),
    /// Sweep the derivative order and collect distinct roots.
    Sweep(SweepArgs),
    /// Sign-change certificates: box check or 1-D coordinate scan.
    Bracket(BracketArgs),
    /// Perturbation probe or residual curve along one component.
    Stability(StabilityArgs),
    /// Print the receiver parameters and derived coefficients.
    ReceiverInfo(ReceiverInfoArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Args)]
struct OutputArgs {
    /// Write the result to this file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Decimals shown in table and CSV output (JSON is full precision).
    #[arg(long, default_value_t = 8)]
    precision: usize,
}

impl OutputArgs {
    fn validate(&self) -> anyhow::Result<()> {
        if self.precision < 1 {
            bail!("--precision must be at least 1");
        }
        Ok(())
    }

    fn emit(&self, content: &str) -> anyhow::Result<()> {
        match &self.output {
            Some(path) => {
                fs::write(path, content).with_context(|| format!("writing {}", path.display()))?
            }
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout.write_all(content.as_bytes())?;
            }
        }
        Ok(())
    }
}

#[derive(Args)]
struct ProblemArgs {
    /// Built-in problem: example1, example2, example3, receiver.
    #[arg(long)]
    problem: String,
    /// JSON file overriding receiver parameters (receiver only).
    #[arg(long)]
    config: Option<PathBuf>,
}

impl ProblemArgs {
    fn load(&self) -> anyhow::Result<ProblemDef> {
        if self.problem == "receiver" {
            let params = match &self.config {
                Some(path) => {
                    let text = fs::read_to_string(path)
                        .with_context(|| format!("reading {}", path.display()))?;
                    ReceiverParams::from_json(&text)
                        .with_context(|| format!("parsing {}", path.display()))?
                }
                None => ReceiverParams::default(),
            };
            return Ok(problems::receiver_problem(&params));
        }
        if self.config.is_some() {
            bail!("--config applies only to the receiver problem");
        }
        problems::builtin(&self.problem).ok_or_else(|| {
            anyhow!(
                "unknown problem {:?}; built-ins: {}",
                self.problem,
                problems::BUILTIN_NAMES.join(", ")
            )
        })
    }
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    /// Fractional derivative order in [0, 2], away from 0, 1, 2.
    #[arg(long)]
    alpha: f64,
    /// Pseudo-Jacobian regularizer; defaults to the problem's usual value.
    #[arg(long)]
    epsilon: Option<f64>,
    /// Comma-separated real start point; defaults to the problem's.
    #[arg(long)]
    x0: Option<String>,
    /// Residual norm declaring convergence; per-problem default.
    #[arg(long)]
    tol_residual: Option<f64>,
    /// Step-norm display threshold.
    #[arg(long, default_value_t = 1e-4)]
    tol_step: f64,
    #[arg(long, default_value_t = 2000)]
    max_iter: usize,
    /// Iterate norm treated as divergence.
    #[arg(long, default_value_t = 1e10)]
    divergence_bound: f64,
    /// Record and emit the full iteration history.
    #[arg(long)]
    trace: bool,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    /// Number of random orders to draw.
    #[arg(long, default_value_t = 2000)]
    samples: usize,
    /// Seed for order sampling (env fallback FRACROOT_SEED).
    #[arg(long, env = "FRACROOT_SEED", default_value_t = 0)]
    seed: u64,
    /// Sample orders on a fixed grid with this step instead of randomly.
    #[arg(long)]
    grid_step: Option<f64>,
    #[arg(long, default_value_t = 0.0)]
    alpha_min: f64,
    #[arg(long, default_value_t = 2.0)]
    alpha_max: f64,
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long)]
    x0: Option<String>,
    #[arg(long)]
    tol_residual: Option<f64>,
    #[arg(long, default_value_t = 2000)]
    max_iter: usize,
    /// Roots closer than this merge into one row.
    #[arg(long, default_value_t = 1e-3)]
    dedup_tol: f64,
    /// Largest |Im| for a root to be reported as real.
    #[arg(long, default_value_t = 1e-6)]
    real_threshold: f64,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct BracketArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    /// First box corner (comma-separated reals) for the certificate check.
    #[arg(long, requires = "xb")]
    xa: Option<String>,
    /// Second box corner.
    #[arg(long, requires = "xa")]
    xb: Option<String>,
    /// 1-based component for the coordinate scan mode.
    #[arg(long, conflicts_with = "xa")]
    component: Option<usize>,
    /// Scan range lo,hi for the chosen component.
    #[arg(long)]
    range: Option<String>,
    /// Random sample count for the scan.
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, env = "FRACROOT_SEED", default_value_t = 0)]
    seed: u64,
    /// Base point for the scan; defaults to the problem's start point.
    #[arg(long)]
    base: Option<String>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct StabilityArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    /// Base point; defaults to the problem's start point.
    #[arg(long)]
    base: Option<String>,
    /// 1-based component to perturb.
    #[arg(long)]
    component: usize,
    /// Probe offsets (comma-separated).
    #[arg(long, default_value = "-0.1,0,0.1", allow_hyphen_values = true)]
    offsets: String,
    /// Emit a residual curve over --range instead of a probe table.
    #[arg(long)]
    curve: bool,
    /// Curve range lo,hi.
    #[arg(long, default_value = "0,1", allow_hyphen_values = true)]
    range: String,
    /// Curve point count.
    #[arg(long, default_value_t = 101)]
    points: usize,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct ReceiverInfoArgs {
    /// JSON file overriding receiver parameters.
    #[arg(long)]
    config: Option<PathBuf>,
    #[command(flatten)]
    out: OutputArgs,
}

fn parse_reals(what: &str, s: &str) -> anyhow::Result<Vec<f64>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| anyhow!("{what}: {t:?} is not a number"))
        })
        .collect()
}

fn parse_pair(what: &str, s: &str) -> anyhow::Result<(f64, f64)> {
    let v = parse_reals(what, s)?;
    if v.len() != 2 {
        bail!("{what} needs exactly two comma-separated numbers, got {s:?}");
    }
    Ok((v[0], v[1]))
}

fn start_point(problem: &ProblemDef, flag: &Option<String>) -> anyhow::Result<ComplexVector> {
    match flag {
        Some(s) => {
            let values = parse_reals("--x0", s)?;
            if values.len() != problem.dim() {
                bail!(
                    "--x0 has {} components; {} needs {}",
                    values.len(),
                    problem.name(),
                    problem.dim()
                );
            }
            Ok(ComplexVector::from_real(&values))
        }
        None => problem
            .reference_x0()
            .ok_or_else(|| anyhow!("{} has no default start point; pass --x0", problem.name())),
    }
}

fn base_point(problem: &ProblemDef, flag: &Option<String>) -> anyhow::Result<Vec<f64>> {
    match flag {
        Some(s) => {
            let values = parse_reals("--base", s)?;
            if values.len() != problem.dim() {
                bail!(
                    "--base has {} components; {} needs {}",
                    values.len(),
                    problem.name(),
                    problem.dim()
                );
            }
            Ok(values)
        }
        None => Ok(problem
            .reference_x0()
            .ok_or_else(|| anyhow!("{} has no default base point; pass --base", problem.name()))?
            .real_parts()),
    }
}

fn component_index(problem: &ProblemDef, one_based: usize) -> anyhow::Result<usize> {
    if one_based == 0 || one_based > problem.dim() {
        bail!(
            "--component must be between 1 and {} for {}",
            problem.dim(),
            problem.name()
        );
    }
    Ok(one_based - 1)
}

fn cmd_solve(args: &SolveArgs) -> anyhow::Result<u8> {
    args.out.validate()?;
    let problem = args.problem.load()?;
    let x0 = start_point(&problem, &args.x0)?;
    let alpha = FracOrder::new(args.alpha)?;
    let mut config = SolverConfig::new(alpha);
    config.epsilon = args.epsilon.unwrap_or_else(|| problem.default_epsilon());
    config.tol_residual = args
        .tol_residual
        .unwrap_or_else(|| problem.default_tol_residual());
    config.tol_step = args.tol_step;
    config.max_iter = args.max_iter;
    config.divergence_bound = args.divergence_bound;

    let outcome = solve(&problem, &x0, &config, args.trace)?;
    let doc = SolveDoc::pseudo_newton(problem.name(), args.alpha, config.epsilon, &outcome);
    let rendered = match args.out.format {
        Format::Table => doc.to_table(args.out.precision),
        Format::Csv => doc.to_csv(args.out.precision),
        Format::Json => to_json(&doc),
    };
    args.out.emit(&rendered)?;
    if outcome.status == SolveStatus::Converged {
        Ok(0)
    } else {
        eprintln!("solve did not converge: {}", outcome.status.as_str());
        Ok(1)
    }
}

fn cmd_sweep(args: &SweepArgs) -> anyhow::Result<u8> {
    args.out.validate()?;
    let problem = args.problem.load()?;
    let x0 = start_point(&problem, &args.x0)?;
    let mut base_config = SolverConfig::new(FracOrder::new(0.5).expect("valid placeholder order"));
    base_config.epsilon = args.epsilon.unwrap_or_else(|| problem.default_epsilon());
    base_config.tol_residual = args
        .tol_residual
        .unwrap_or_else(|| problem.default_tol_residual());
    base_config.max_iter = args.max_iter;

    let mut plan = SweepPlan::new(base_config, x0, args.samples, args.seed);
    if let Some(step) = args.grid_step {
        plan.sampling = AlphaSampling::Grid { step };
    }
    plan.alpha_lo = args.alpha_min;
    plan.alpha_hi = args.alpha_max;
    plan.dedup_tol = args.dedup_tol;
    plan.real_threshold = args.real_threshold;

    let report = alpha_sweep(&problem, &plan)?;
    let seed = matches!(plan.sampling, AlphaSampling::UniformRandom { .. }).then_some(args.seed);
    let doc = SweepDoc::new(problem.name(), seed, &report);
    let rendered = match args.out.format {
        Format::Table => doc.to_table(args.out.precision),
        Format::Csv => doc.to_csv(args.out.precision),
        Format::Json => to_json(&doc),
    };
    args.out.emit(&rendered)?;
    if args.out.format != Format::Table {
        eprintln!("{}", doc.summary_line());
    }
    Ok(0)
}

fn cmd_bracket(args: &BracketArgs) -> anyhow::Result<u8> {
    args.out.validate()?;
    let problem = args.problem.load()?;
    match (&args.xa, &args.xb, args.component) {
        (Some(xa), Some(xb), None) => {
            let xa = parse_reals("--xa", xa)?;
            let xb = parse_reals("--xb", xb)?;
            match probing::box_bracket_check(&problem, &xa, &xb) {
                Ok(cert) => {
                    let doc = BracketBoxDoc::new(problem.name(), &cert);
                    let rendered = match args.out.format {
                        Format::Table => doc.to_table(args.out.precision),
                        Format::Csv => doc.to_csv(args.out.precision),
                        Format::Json => to_json(&doc),
                    };
                    args.out.emit(&rendered)?;
                    Ok(0)
                }
                Err(fracroot::Error::BracketViolation { components }) => {
                    let display: Vec<usize> = components.iter().map(|k| k + 1).collect();
                    eprintln!("no certificate: components {display:?} have positive products");
                    Ok(1)
                }
                Err(e) => Err(e.into()),
            }
        }
        (None, None, Some(component)) => {
            let k = component_index(&problem, component)?;
            let range = args
                .range
                .as_deref()
                .ok_or_else(|| anyhow!("scan mode needs --range lo,hi"))?;
            let (lo, hi) = parse_pair("--range", range)?;
            let base = base_point(&problem, &args.base)?;
            // scan the k-th residual component along the k-th coordinate
            let scan_fn = |t: f64| {
                let mut point = base.clone();
                point[k] = t;
                problem
                    .residual(&ComplexVector::from_real(&point))
                    .map(|f| f[k].re)
                    .unwrap_or(f64::NAN)
            };
            let brackets = probing::bracket_scan_1d(scan_fn, (lo, hi), args.samples, args.seed)?;
            let doc = BracketScanDoc::new(problem.name(), component, &brackets);
            let rendered = match args.out.format {
                Format::Table => doc.to_table(args.out.precision),
                Format::Csv => doc.to_csv(args.out.precision),
                Format::Json => to_json(&doc),
            };
            args.out.emit(&rendered)?;
            Ok(0)
        }
        _ => bail!("pass either --xa and --xb (box check) or --component and --range (scan)"),
    }
}

fn cmd_stability(args: &StabilityArgs) -> anyhow::Result<u8> {
    args.out.validate()?;
    let problem = args.problem.load()?;
    let base = base_point(&problem, &args.base)?;
    let k = component_index(&problem, args.component)?;
    if args.curve {
        let (lo, hi) = parse_pair("--range", &args.range)?;
        let points = probing::stability_curve(&problem, &base, k, (lo, hi), args.points)?;
        let doc = CurveDoc::new(problem.name(), args.component, &points);
        let rendered = match args.out.format {
            Format::Table => doc.to_table(args.out.precision),
            Format::Csv => doc.to_csv(args.out.precision),
            Format::Json => to_json(&doc),
        };
        args.out.emit(&rendered)?;
    } else {
        let offsets = parse_reals("--offsets", &args.offsets)?;
        let report = probing::stability_probe(&problem, &base, k, &offsets)?;
        let doc = StabilityDoc::new(problem.name(), &report);
        let rendered = match args.out.format {
            Format::Table => doc.to_table(args.out.precision),
            Format::Csv => doc.to_csv(args.out.precision),
            Format::Json => to_json(&doc),
        };
        args.out.emit(&rendered)?;
    }
    Ok(0)
}

fn cmd_receiver_info(args: &ReceiverInfoArgs) -> anyhow::Result<u8> {
    args.out.validate()?;
    let params = match &args.config {
        Some(path) => {
            let text =
                fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            ReceiverParams::from_json(&text)
                .with_context(|| format!("parsing {}", path.display()))?
        }
        None => ReceiverParams::default(),
    };
    let coefficients = problems::receiver_coefficients(&params);
    let doc = ReceiverInfoDoc::new(params, coefficients);
    let rendered = match args.out.format {
        Format::Table => doc.to_table(),
        Format::Csv => doc.to_csv(),
        Format::Json => to_json(&doc),
    };
    args.out.emit(&rendered)?;
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Solve(args) => cmd_solve(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Bracket(args) => cmd_bracket(args),
        Command::Stability(args) => cmd_stability(args),
        Command::ReceiverInfo(args) => cmd_receiver_info(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
