//! The `optimin` command line.
//!
//! Exit codes: 0 success, 1 usage error, 2 parse or validation error,
//! 3 unsupported operation, 4 property violation found by `check`.

use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::deviation::guarantee_table;
use crate::error::Error;
use crate::game::Game;
use crate::generators::{
    gen_figure1, gen_pd_stage, gen_repeated_meta, gen_traveler, parse_strategy_list,
    RepeatedStrategy, TravelerConfig,
};
use crate::io::{parse_game, serialize_game, serialize_report, Report, ReportFormat};
use crate::mixed::check_mixed_equilibria;
use crate::rational::Rational;
use crate::solvers::{
    check_super_nash_with, maximin_pure, optimin_from_table, pure_nash_with, OptiminMode,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;
pub const EXIT_VIOLATION: i32 = 4;

pub const JOBS_ENV: &str = "OPTIMIN_JOBS";

#[derive(Debug, Parser)]
#[command(
    name = "optimin",
    version,
    about = "Optimin, guarantee and Nash analysis of normal-form games"
)]
struct Cli {
    /// Worker threads for profile scans (default: $OPTIMIN_JOBS or 1).
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    jobs: Option<u32>,

    /// Progress messages on stderr.
    #[arg(long, short, global = true)]
    verbose: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a generated game document.
    Gen(GenArgs),
    /// Analyse a game document ("-" reads stdin).
    Solve(SolveArgs),
    /// Check a property of a game document.
    Check {
        #[command(subcommand)]
        what: CheckCommand,
    },
}

#[derive(Debug, Args)]
struct GenArgs {
    /// Output path ("-" or absent for stdout).
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    game: GenGame,
}

#[derive(Debug, Subcommand)]
enum GenGame {
    /// The 3x3 illustrative game.
    Figure1,
    /// The prisoner's dilemma stage game.
    PdStage,
    /// The traveler's dilemma.
    Traveler {
        #[arg(long, default_value_t = 2, allow_negative_numbers = true)]
        low: i64,
        #[arg(long, default_value_t = 100, allow_negative_numbers = true)]
        high: i64,
        /// Reward/punishment parameter, e.g. 2 or 5/2.
        #[arg(long, default_value = "2", value_parser = parse_rational)]
        reward: Rational,
    },
    /// Meta-game of the finitely repeated prisoner's dilemma.
    PdRepeated {
        #[arg(long, default_value_t = 100)]
        rounds: usize,
        /// Comma-separated strategies: AllC, AllD, TFT, Grim, EndDefector(k).
        #[arg(long, default_value = "AllC,AllD,TFT,Grim,EndDefector(1)", value_parser = parse_strategies)]
        strategies: StrategyList,
    },
}

#[derive(Debug, Clone)]
struct StrategyList(Vec<RepeatedStrategy>);

fn parse_rational(s: &str) -> Result<Rational, String> {
    s.parse()
        .map_err(|e: crate::rational::ParseRationalError| e.to_string())
}

fn parse_strategies(s: &str) -> Result<StrategyList, String> {
    parse_strategy_list(s)
        .map(StrategyList)
        .map_err(|e| e.to_string())
}

fn parse_mode(s: &str) -> Result<OptiminMode, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_format(s: &str) -> Result<ReportFormat, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug, Args)]
struct SolveArgs {
    file: String,
    #[arg(long)]
    optimin: bool,
    /// pareto or simultaneous.
    #[arg(long, default_value = "pareto", value_parser = parse_mode)]
    mode: OptiminMode,
    #[arg(long)]
    nash: bool,
    #[arg(long)]
    maximin: bool,
    #[arg(long)]
    guarantees: bool,
    /// json, table or csv.
    #[arg(long, default_value = "json", value_parser = parse_format)]
    format: ReportFormat,
}

#[derive(Debug, Subcommand)]
enum CheckCommand {
    /// Every pure Nash equilibrium is matched by an optimin guarantee.
    SuperNash {
        file: String,
        #[arg(long, default_value = "pareto", value_parser = parse_mode)]
        mode: OptiminMode,
        /// Also check 2-player mixed equilibria.
        #[arg(long)]
        mixed: bool,
        #[arg(long, default_value = "json", value_parser = parse_format)]
        format: ReportFormat,
    },
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Unsupported(_) => EXIT_UNSUPPORTED,
            _ => EXIT_INVALID,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn io_failure(what: &str, e: std::io::Error) -> Failure {
    Failure {
        code: EXIT_INVALID,
        message: format!("{what}: {e}"),
    }
}

struct Context<'a> {
    stdin: &'a mut dyn Read,
    stdout: &'a mut dyn Write,
    stderr: &'a mut dyn Write,
    jobs: usize,
    verbose: bool,
}

impl Context<'_> {
    fn progress(&mut self, msg: &str) {
        if self.verbose {
            let _ = writeln!(self.stderr, "optimin: {msg}");
        }
    }

    fn read_game(&mut self, file: &str) -> Result<Game, Failure> {
        let text = if file == "-" {
            let mut s = String::new();
            self.stdin
                .read_to_string(&mut s)
                .map_err(|e| io_failure("cannot read stdin", e))?;
            s
        } else {
            std::fs::read_to_string(file)
                .map_err(|e| io_failure(&format!("cannot read {file}"), e))?
        };
        let game = parse_game(&text)?;
        self.progress(&format!(
            "loaded {:?}: {} players, {} profiles",
            game.title(),
            game.num_players(),
            game.num_profiles()
        ));
        Ok(game)
    }

    fn emit(&mut self, text: &str) -> Result<(), Failure> {
        self.stdout
            .write_all(text.as_bytes())
            .map_err(|e| io_failure("cannot write output", e))
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    return EXIT_OK;
                }
                _ => EXIT_USAGE,
            };
            let _ = write!(stderr, "{e}");
            return code;
        }
    };
    let jobs = match cli.jobs {
        Some(j) => j as usize,
        None => match std::env::var(JOBS_ENV) {
            Ok(v) => match v.trim().parse::<usize>() {
                Ok(j) if j >= 1 => j,
                _ => {
                    let _ = writeln!(
                        stderr,
                        "error: {JOBS_ENV} must be a positive integer, got {v:?}"
                    );
                    return EXIT_USAGE;
                }
            },
            Err(_) => 1,
        },
    };
    let mut ctx = Context {
        stdin,
        stdout,
        stderr,
        jobs,
        verbose: cli.verbose,
    };
    let result = match cli.command {
        Command::Gen(args) => run_gen(&mut ctx, args),
        Command::Solve(args) => run_solve(&mut ctx, args),
        Command::Check { what } => run_check(&mut ctx, what),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(ctx.stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn run_gen(ctx: &mut Context<'_>, args: GenArgs) -> Result<(), Failure> {
    let game = match args.game {
        GenGame::Figure1 => gen_figure1(),
        GenGame::PdStage => gen_pd_stage(),
        GenGame::Traveler { low, high, reward } => {
            gen_traveler(&TravelerConfig { low, high, reward })?
        }
        GenGame::PdRepeated { rounds, strategies } => {
            ctx.progress(&format!(
                "simulating {} pairings over {rounds} rounds",
                strategies.0.len().pow(2)
            ));
            gen_repeated_meta(&gen_pd_stage(), &strategies.0, rounds)?
        }
    };
    let text = serialize_game(&game);
    match args.out {
        Some(path) if path.as_os_str() != "-" => std::fs::write(&path, text)
            .map_err(|e| io_failure(&format!("cannot write {}", path.display()), e)),
        _ => ctx.emit(&text),
    }
}

fn run_solve(ctx: &mut Context<'_>, args: SolveArgs) -> Result<(), Failure> {
    let game = ctx.read_game(&args.file)?;
    let all = !(args.optimin || args.nash || args.maximin || args.guarantees);
    let mut report = Report::new(&game, args.mode);
    if all || args.optimin || args.guarantees || args.format == ReportFormat::Csv {
        ctx.progress(&format!("scanning guarantees with {} job(s)", ctx.jobs));
        let table = guarantee_table(&game, ctx.jobs);
        if all || args.optimin {
            report.optimin = Some(optimin_from_table(&table, args.mode));
        }
        if all || args.guarantees || args.format == ReportFormat::Csv {
            report.guarantees = Some(table);
        }
    }
    if all || args.nash {
        report.nash = Some(pure_nash_with(&game, ctx.jobs));
    }
    if all || args.maximin {
        report.maximin = Some(
            (0..game.num_players())
                .map(|i| maximin_pure(&game, i))
                .collect::<Result<Vec<_>, _>>()?,
        );
    }
    let text = serialize_report(&report, args.format);
    ctx.emit(&text)
}

fn run_check(ctx: &mut Context<'_>, what: CheckCommand) -> Result<(), Failure> {
    let CheckCommand::SuperNash {
        file,
        mode,
        mixed,
        format,
    } = what;
    let game = ctx.read_game(&file)?;
    let mixed_check = if mixed {
        ctx.progress("enumerating mixed equilibria");
        Some(check_mixed_equilibria(&game)?)
    } else {
        None
    };
    ctx.progress(&format!(
        "checking super-Nash property with {} job(s)",
        ctx.jobs
    ));
    let result = check_super_nash_with(&game, mode, ctx.jobs);
    let holds = result.holds() && mixed_check.as_ref().is_none_or(|m| m.holds());
    let mut report = Report::new(&game, mode);
    report.super_nash = Some(result);
    report.mixed = mixed_check;
    let text = serialize_report(&report, format);
    ctx.emit(&text)?;
    if holds {
        Ok(())
    } else {
        Err(Failure {
            code: EXIT_VIOLATION,
            message: "super-Nash property violated".to_owned(),
        })
    }
}
