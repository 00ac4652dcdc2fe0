//! `lsp`: solve last-success stopping problems, evaluate their lower
//! bounds, cross-check the solver against independent oracles, and run
//! seeded Monte Carlo simulations.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 validation or parse failure,
//! 3 internal invariant violation (oracle mismatch or bound violation).

use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use last_success::{
    bounds, montecarlo, oracle, solver, Error, Game, ProblemInstance, SimulationConfig,
};
use lsp::grid::{parse_int_grid, parse_real_grid};
use lsp::output::{csv_real, to_json_string};
use lsp::report::{InstanceFile, Meta, ReportFile, SimulationJson};

#[derive(Parser)]
#[command(
    name = "lsp",
    version,
    about = "Last-success stopping problems: odds-theorem solver, lower bounds, oracles, simulation"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Optimal threshold and the values of all three games
    Solve(SolveArgs),
    /// Solve plus every applicable lower bound with its gap
    Bounds(SolveArgs),
    /// Cross-check the solver against enumeration, DP, and a threshold sweep
    Check {
        #[command(flatten)]
        instance: InstanceArgs,
        /// Largest n for which the exhaustive engine participates
        #[arg(long, default_value_t = 24)]
        max_n_enumerate: usize,
    },
    /// Seeded Monte Carlo run of one game
    Simulate {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long, value_enum, default_value_t = GameArg::Standard)]
        game: GameArg,
        #[arg(long, default_value_t = 100_000)]
        reps: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Simulate this threshold instead of the optimal one
        #[arg(long)]
        threshold: Option<usize>,
    },
    /// CSV sweep over a homogeneous (p, n) grid
    Sweep {
        /// p values: `a,b,c` or `a:b:step`
        #[arg(long)]
        p_grid: String,
        /// n values: `a,b,c` or `a:b:step`
        #[arg(long)]
        n_grid: String,
        #[arg(long, value_enum, default_value_t = SweepWhat::Threshold)]
        what: SweepWhat,
    },
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    /// JSON report (the default)
    #[arg(long)]
    json: bool,
    /// One CSV row instead of JSON
    #[arg(long, conflicts_with = "json")]
    csv: bool,
}

#[derive(Args)]
struct InstanceArgs {
    /// Instance file (JSON); `-` reads stdin
    file: Option<PathBuf>,
    /// Inline comma-separated success probabilities
    #[arg(long, conflicts_with = "file", value_name = "P1,P2,...")]
    inline: Option<String>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum GameArg {
    Standard,
    Variant1,
    Variant2,
}

impl GameArg {
    fn game(self) -> Game {
        match self {
            GameArg::Standard => Game::Standard,
            GameArg::Variant1 => Game::VariantI,
            GameArg::Variant2 => Game::VariantII,
        }
    }

    fn name(self) -> &'static str {
        match self {
            GameArg::Standard => "standard",
            GameArg::Variant1 => "variant1",
            GameArg::Variant2 => "variant2",
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum SweepWhat {
    Threshold,
    Bounds,
    Mal,
}

struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn io(message: impl Into<String>) -> Self {
        CliError {
            code: 1,
            message: message.into(),
        }
    }

    fn parse(message: impl Into<String>) -> Self {
        CliError {
            code: 2,
            message: message.into(),
        }
    }

    fn internal(message: impl Into<String>) -> Self {
        CliError {
            code: 3,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::BoundViolation { .. } | Error::Mismatch(_) => CliError::internal(e.to_string()),
            _ => CliError::parse(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.cmd {
        Cmd::Solve(args) => cmd_solve(args, false),
        Cmd::Bounds(args) => cmd_solve(args, true),
        Cmd::Check {
            instance,
            max_n_enumerate,
        } => cmd_check(instance, max_n_enumerate),
        Cmd::Simulate {
            instance,
            game,
            reps,
            seed,
            threshold,
        } => cmd_simulate(instance, game, reps, seed, threshold),
        Cmd::Sweep {
            p_grid,
            n_grid,
            what,
        } => cmd_sweep(&p_grid, &n_grid, what),
    }
}

/// Read the instance from a file, stdin, or the inline flag.
fn load_instance(args: &InstanceArgs) -> Result<(ProblemInstance, Option<String>), CliError> {
    if let Some(inline) = &args.inline {
        let probs: Vec<f64> = inline
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<f64>()
                    .map_err(|_| CliError::parse(format!("not a probability: {s:?}")))
            })
            .collect::<Result<_, _>>()?;
        let inst = ProblemInstance::new(probs)?;
        return Ok((inst, None));
    }
    let path = args
        .file
        .as_ref()
        .ok_or_else(|| CliError::parse("no instance given: pass a file path or --inline"))?;
    let text = if path.as_os_str() == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliError::io(format!("stdin: {e}")))?;
        buf
    } else {
        fs::read_to_string(path).map_err(|e| CliError::io(format!("{}: {e}", path.display())))?
    };
    let file: InstanceFile = serde_json::from_str(&text)
        .map_err(|e| CliError::parse(format!("{}: {e}", path.display())))?;
    let inst = file.instance().map_err(CliError::parse)?;
    Ok((inst, file.label))
}

fn cmd_solve(args: SolveArgs, with_bounds: bool) -> Result<(), CliError> {
    let (inst, label) = load_instance(&args.instance)?;
    let report = if with_bounds {
        let (sol, bound_report) = bounds::full_report(&inst)?;
        ReportFile::from_solution(&inst, label, &sol).with_bounds(&bound_report)
    } else {
        let sol = solver::solve(&inst)?;
        ReportFile::from_solution(&inst, label, &sol)
    };
    if args.csv {
        print_report_csv(&report, with_bounds);
    } else {
        println!("{}", to_json_string(&report));
    }
    Ok(())
}

fn print_report_csv(report: &ReportFile, with_bounds: bool) {
    println!("label,n,s,V,V_star,V_double_star,decision,R1,Rs,r1_near_one,case");
    println!(
        "{},{},{},{},{},{},{},{},{},{},{}",
        report.label.as_deref().unwrap_or(""),
        report.n,
        report.s,
        csv_real(report.value),
        csv_real(report.v_star),
        csv_real(report.v_double_star),
        report.decision,
        csv_real(report.r1),
        csv_real(report.rs),
        report.r1_near_one,
        report.case.as_deref().unwrap_or(""),
    );
    if with_bounds {
        println!("bound,value,gap");
        for (name, b) in &report.bounds {
            println!("{name},{},{}", csv_real(b.value), csv_real(b.gap));
        }
    }
}

fn cmd_check(instance: InstanceArgs, max_n_enumerate: usize) -> Result<(), CliError> {
    let (inst, label) = load_instance(&instance)?;
    if inst.n() > max_n_enumerate {
        return Err(CliError::parse(format!(
            "full check needs n <= {max_n_enumerate}, got n = {}",
            inst.n()
        )));
    }
    let verdict = oracle::cross_validate(&inst)?;
    let report = ReportFile::from_solution(&inst, label, &verdict.solution).with_oracle(&verdict);
    println!("{}", to_json_string(&report));
    Ok(())
}

fn cmd_simulate(
    instance: InstanceArgs,
    game: GameArg,
    reps: u64,
    seed: u64,
    threshold: Option<usize>,
) -> Result<(), CliError> {
    let (inst, label) = load_instance(&instance)?;
    let sol = solver::solve(&inst)?;
    let mut cfg = SimulationConfig::new(reps, seed, game.game());
    cfg.threshold_override = threshold;
    let result = montecarlo::simulate(&inst, &cfg)?;
    let report = SimulationJson {
        label,
        game: game.name().to_string(),
        threshold: threshold.unwrap_or(sol.threshold),
        wins: result.wins,
        replicates: result.replicates,
        frequency: result.frequency,
        std_error: result.std_error,
        exact: result.exact,
        z_score: result.z_score,
        rejection_cap_hits: result.rejection_cap_hits,
        meta: Meta {
            version: env!("CARGO_PKG_VERSION").to_string(),
            seed: Some(result.seed_echo),
        },
    };
    println!("{}", to_json_string(&report));
    Ok(())
}

fn cmd_sweep(p_grid: &str, n_grid: &str, what: SweepWhat) -> Result<(), CliError> {
    let ps = parse_real_grid(p_grid).map_err(CliError::parse)?;
    let ns = parse_int_grid(n_grid).map_err(CliError::parse)?;
    match what {
        SweepWhat::Threshold => {
            println!("p,n,s,argmax,V");
            for &p in &ps {
                for &n in &ns {
                    let inst = ProblemInstance::homogeneous(p, n)?;
                    let sol = solver::solve(&inst)?;
                    let sweep = oracle::threshold_sweep(&inst)?;
                    let argmax = sweep
                        .argmax_set
                        .iter()
                        .map(|k| k.to_string())
                        .collect::<Vec<_>>()
                        .join(";");
                    println!(
                        "{},{n},{},{argmax},{}",
                        csv_real(p),
                        sol.threshold,
                        csv_real(sol.value)
                    );
                }
            }
        }
        SweepWhat::Bounds => {
            println!("p,n,case,bound,value,gap");
            for &p in &ps {
                for &n in &ns {
                    let inst = ProblemInstance::homogeneous(p, n)?;
                    let (_, report) = bounds::full_report(&inst)?;
                    for b in report
                        .standard_bounds
                        .iter()
                        .chain(report.variant1_bounds.iter())
                    {
                        println!(
                            "{},{n},{},{},{},{}",
                            csv_real(p),
                            report.case_label.as_str(),
                            b.name,
                            csv_real(b.value),
                            csv_real(b.gap)
                        );
                    }
                }
            }
        }
        SweepWhat::Mal => {
            println!("p,n,s,s_star,V_s,V_sstar,mismatch");
            for &p in &ps {
                for &n in &ns {
                    let spec = solver::HomogeneousSpec::new(p, n)?;
                    let sol = solver::homogeneous_solve(&spec)?;
                    let s_star = solver::mal_threshold(&spec).clamped;
                    let sweep = oracle::threshold_sweep(&spec.instance())?;
                    let v_s = sweep.values[sol.threshold - 1];
                    let v_sstar = sweep.values[s_star - 1];
                    println!(
                        "{},{n},{},{s_star},{},{},{}",
                        csv_real(p),
                        sol.threshold,
                        csv_real(v_s),
                        csv_real(v_sstar),
                        sol.threshold != s_star
                    );
                }
            }
        }
    }
    Ok(())
}
