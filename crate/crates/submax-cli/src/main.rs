//! `submax`: solve, check, and benchmark set-function maximization instances
//! from the command line.
//!
//! Exit codes: 0 success (and, for `check`, all properties hold); 1 a checked
//! property fails; 2 argument errors; 3 file parse or domain errors; 4 a
//! requested computation exceeds its enumeration cap.

mod instance;
mod report;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use submax::check::{
    check_monotone, check_submodular_derivative, check_submodular_intersection, CheckMode,
};
use submax::oracle::{brute_force_opt_with_cap, OracleResult};
use submax::solve::{
    gap_diagnostic, greedy, lazy_greedy, stochastic_greedy, stochastic_trials, GapDiagnostic,
    SampleSpec, SolveResult, StochasticConfig,
};
use submax::Error;

use instance::{Instance, Kind};
use report::{
    BenchOracleBlock, BenchReport, BenchRow, CheckReport, InstanceBlock, Meta, ModeBlock,
    OracleBlock, PropertyBlock, SolveReport, Stats,
};

/// Error carrying its process exit code. Codes 2 (arguments) and 3 (parse or
/// domain) match the conventions above; library errors map via `From`.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn args(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

    fn parse(message: impl Into<String>) -> Self {
        Failure {
            code: 3,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::OracleCap { .. } | Error::ExhaustiveLimit { .. } => 4,
            Error::InvalidEpsilon { .. } | Error::ZeroSampleSize => 2,
            _ => 3,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

#[derive(Parser)]
#[command(name = "submax", version, about = "Greedy maximization toolkit for monotone submodular set functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one algorithm on an instance and report the full trace.
    Solve(SolveArgs),
    /// Verify structural properties of an instance, with witnesses.
    Check(CheckArgs),
    /// Compare all three algorithms on one instance.
    Bench(BenchArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Instance file (.csv facility matrix, .weights, .profile).
    #[arg(long)]
    input: PathBuf,
    /// Override the kind inferred from the file extension.
    #[arg(long, value_enum)]
    kind: Option<Kind>,
    /// Skip a single header row.
    #[arg(long)]
    header: bool,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Output::Json)]
    output: Output,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Algo {
    Greedy,
    Lazy,
    Stochastic,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Number of elements to select.
    #[arg(long)]
    k: usize,
    #[arg(long, value_enum)]
    algorithm: Algo,
    /// Stochastic accuracy target in (0, 1); sample size is derived from it.
    #[arg(long, conflicts_with = "sample_size")]
    epsilon: Option<f64>,
    /// Explicit stochastic per-step sample size.
    #[arg(long)]
    sample_size: Option<usize>,
    /// Stochastic RNG seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also compute the exact optimum and the approximation ratio.
    #[arg(long)]
    with_oracle: bool,
    /// Largest subset count the oracle may enumerate.
    #[arg(long, default_value_t = submax::oracle::DEFAULT_CAP)]
    oracle_cap: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Property {
    Monotone,
    SubmodularDerivative,
    SubmodularIntersection,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exhaustive,
    Sampled,
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum)]
    property: Property,
    #[arg(long, value_enum)]
    mode: Mode,
    /// Sampled mode: number of random trials per property.
    #[arg(long, default_value_t = 100_000)]
    budget: u64,
    /// Sampled mode RNG seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct BenchArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long)]
    k: usize,
    /// Stochastic repetitions (greedy and lazy are deterministic and run once).
    #[arg(long, default_value_t = 100)]
    trials: u64,
    /// Stochastic accuracy target; defaults to 0.2 when --sample-size is not
    /// given either.
    #[arg(long, conflicts_with = "sample_size")]
    epsilon: Option<f64>,
    #[arg(long)]
    sample_size: Option<usize>,
    /// Base seed; trial t derives its own stream from it.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    with_oracle: bool,
    #[arg(long, default_value_t = submax::oracle::DEFAULT_CAP)]
    oracle_cap: u64,
}

fn main() {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Solve(args) => cmd_solve(args),
        Command::Check(args) => cmd_check(args),
        Command::Bench(args) => cmd_bench(args),
    };
    match outcome {
        Ok(code) => std::process::exit(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            std::process::exit(failure.code);
        }
    }
}

fn emit<T: serde::Serialize>(output: Output, report: &T, csv: impl FnOnce() -> String) {
    match output {
        Output::Json => {
            let text = serde_json::to_string_pretty(report).expect("reports serialize");
            println!("{text}");
        }
        Output::Csv => print!("{}", csv()),
    }
}

fn run_oracle(
    inst: &Instance,
    k: usize,
    cap: u64,
    result: Option<&SolveResult>,
) -> Result<(OracleResult, Option<GapDiagnostic>), Failure> {
    let oracle = brute_force_opt_with_cap(&inst.objective, k, cap)?;
    let gap = result
        .map(|r| gap_diagnostic(r, &oracle))
        .transpose()?;
    Ok((oracle, gap))
}

fn cmd_solve(args: SolveArgs) -> Result<i32, Failure> {
    let start = Instant::now();
    let inst = instance::load(&args.input.input, args.input.kind, args.input.header)?;
    let sample = match args.algorithm {
        Algo::Stochastic => Some(sample_spec(args.epsilon, args.sample_size, false)?),
        Algo::Greedy | Algo::Lazy => {
            if args.epsilon.is_some() || args.sample_size.is_some() {
                return Err(Failure::args(
                    "--epsilon and --sample-size apply only to --algorithm stochastic",
                ));
            }
            None
        }
    };
    let result = match args.algorithm {
        Algo::Greedy => greedy(&inst.objective, args.k)?,
        Algo::Lazy => lazy_greedy(&inst.objective, args.k)?,
        Algo::Stochastic => stochastic_greedy(
            &inst.objective,
            args.k,
            &StochasticConfig {
                sample: sample.expect("set above"),
                seed: args.seed,
            },
        )?,
    };
    let oracle = if args.with_oracle {
        let (oracle, gap) = run_oracle(&inst, args.k, args.oracle_cap, Some(&result))?;
        Some(OracleBlock::of(&oracle, result.objective(), gap.as_ref()))
    } else {
        None
    };
    let report = SolveReport::new(
        &inst,
        &result,
        args.epsilon,
        oracle,
        Meta {
            wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
        },
    );
    emit(args.input.output, &report, || report.to_csv());
    Ok(0)
}

fn sample_spec(
    epsilon: Option<f64>,
    sample_size: Option<usize>,
    defaulted: bool,
) -> Result<SampleSpec, Failure> {
    match (epsilon, sample_size) {
        (Some(e), None) => {
            if !(e > 0.0 && e < 1.0) {
                return Err(Failure::args(format!(
                    "epsilon must lie in (0, 1), got {e}"
                )));
            }
            Ok(SampleSpec::Epsilon(e))
        }
        (None, Some(0)) => Err(Failure::args("sample size must be at least 1")),
        (None, Some(s)) => Ok(SampleSpec::Size(s)),
        (None, None) if defaulted => Ok(SampleSpec::Epsilon(0.2)),
        (None, None) => Err(Failure::args(
            "stochastic solve needs --epsilon or --sample-size",
        )),
        (Some(_), Some(_)) => unreachable!("clap rejects the conflict"),
    }
}

fn cmd_check(args: CheckArgs) -> Result<i32, Failure> {
    let start = Instant::now();
    let inst = instance::load(&args.input.input, args.input.kind, args.input.header)?;
    let (mode, mode_block) = match args.mode {
        Mode::Exhaustive => (CheckMode::Exhaustive, ModeBlock::Exhaustive),
        Mode::Sampled => (
            CheckMode::Sampled {
                budget: args.budget,
                seed: args.seed,
            },
            ModeBlock::Sampled {
                budget: args.budget,
                seed: args.seed,
            },
        ),
    };
    let advisory = |e: Failure| {
        if e.code == 4 {
            Failure {
                code: 4,
                message: format!("{}; rerun with --mode sampled", e.message),
            }
        } else {
            e
        }
    };
    let f = &inst.objective;
    let mut properties = Vec::new();
    let selected = |p: Property| matches!(args.property, Property::All) || {
        matches!(
            (args.property, p),
            (Property::Monotone, Property::Monotone)
                | (Property::SubmodularDerivative, Property::SubmodularDerivative)
                | (Property::SubmodularIntersection, Property::SubmodularIntersection)
        )
    };
    if selected(Property::Monotone) {
        let r = check_monotone(f, mode).map_err(Failure::from).map_err(advisory)?;
        properties.push(PropertyBlock::of("monotone", &r));
    }
    if selected(Property::SubmodularDerivative) {
        let r = check_submodular_derivative(f, mode)
            .map_err(Failure::from)
            .map_err(advisory)?;
        properties.push(PropertyBlock::of("submodular-derivative", &r));
    }
    if selected(Property::SubmodularIntersection) {
        let r = check_submodular_intersection(f, mode)
            .map_err(Failure::from)
            .map_err(advisory)?;
        properties.push(PropertyBlock::of("submodular-intersection", &r));
    }
    let all_hold = properties.iter().all(|p| p.holds);
    let report = CheckReport {
        instance: InstanceBlock::of(&inst),
        mode: mode_block,
        properties,
        all_hold,
        meta: Meta {
            wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
        },
    };
    emit(args.input.output, &report, || report.to_csv());
    Ok(if all_hold { 0 } else { 1 })
}

fn cmd_bench(args: BenchArgs) -> Result<i32, Failure> {
    let start = Instant::now();
    let inst = instance::load(&args.input.input, args.input.kind, args.input.header)?;
    if args.trials == 0 {
        return Err(Failure::args("--trials must be at least 1"));
    }
    let sample = sample_spec(args.epsilon, args.sample_size, true)?;
    let f = &inst.objective;

    let greedy_run = greedy(f, args.k)?;
    let lazy_run = lazy_greedy(f, args.k)?;
    let trials = stochastic_trials(f, args.k, sample, args.seed, args.trials)?;
    let sample_size = trials[0].sample_size.expect("stochastic results carry s");

    let oracle = if args.with_oracle {
        Some(run_oracle(&inst, args.k, args.oracle_cap, None)?.0)
    } else {
        None
    };
    let opt = oracle.as_ref().map(|o| o.best_value);
    // An all-zero instance has OPT = 0; every solution attains it.
    let ratio = |objective: f64| {
        opt.map(|opt| if opt == 0.0 { 1.0 } else { objective / opt })
    };

    let single = |name: &'static str, run: &SolveResult| BenchRow {
        algorithm: name,
        runs: 1,
        objective: Stats::over(std::iter::once(run.objective())),
        evaluations: Stats::over(std::iter::once(run.evaluations as f64)),
        ratio: ratio(run.objective()).map(|r| Stats::over(std::iter::once(r))),
    };
    let rows = vec![
        single("greedy", &greedy_run),
        single("lazy", &lazy_run),
        BenchRow {
            algorithm: "stochastic",
            runs: args.trials,
            objective: Stats::over(trials.iter().map(SolveResult::objective)),
            evaluations: Stats::over(trials.iter().map(|t| t.evaluations as f64)),
            ratio: opt.map(|_| {
                Stats::over(
                    trials
                        .iter()
                        .map(|t| ratio(t.objective()).expect("oracle present")),
                )
            }),
        },
    ];
    let report = BenchReport {
        instance: InstanceBlock::of(&inst),
        k: args.k,
        trials: args.trials,
        seed: args.seed,
        epsilon: match sample {
            SampleSpec::Epsilon(e) => Some(e),
            SampleSpec::Size(_) => None,
        },
        sample_size,
        oracle: oracle.as_ref().map(BenchOracleBlock::from),
        rows,
        meta: Meta {
            wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
        },
    };
    emit(args.input.output, &report, || report.to_csv());
    Ok(0)
}
