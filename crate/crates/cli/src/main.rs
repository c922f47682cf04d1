use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use rankprover::certificate::{
    check_certificate, extract_certificate, extract_full_certificate, parse_certificate,
    write_certificate, Goal,
};
use rankprover::engine::{
    decide, saturate, write_rank_table, ConclusionStatus, LimitKind, Limits, Outcome, Strategy,
};
use rankprover::oracle::{search_countermodel, FiniteField, SearchOutcome};
use rankprover::parser::{parse_source, ParseOptions, SourceStatement};
use rankprover::{Gf2, Gf3, ProjectiveModel, SaturationState, Statement, HARD_MAX_POINTS};

/// Exit code for bad invocations, unreadable or invalid input.
const EXIT_USAGE: u8 = 3;
/// Exit code when a wall-time or pass limit stops saturation.
const EXIT_RESOURCE: u8 = 4;

#[derive(Parser)]
#[command(name = "rankprover", version, about = "Rank-based prover for projective incidence geometry")]
struct Cli {
    /// More output; repeat for more detail.
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Saturate a statement and report each conclusion.
    Prove(ProveArgs),
    /// Replay a certificate against its statement.
    Check(CheckArgs),
    /// Search a finite projective space for a countermodel.
    Refute(RefuteArgs),
    /// Saturate and dump the rank interval of every subset.
    Rank(RankArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Statement file.
    statement: PathBuf,
    /// Dimension for files without a `dimension` line.
    #[arg(long)]
    dim: Option<u32>,
    /// Largest accepted number of points.
    #[arg(long, env = "RANKPROVER_MAX_POINTS", default_value_t = 25)]
    max_points: usize,
}

#[derive(Args)]
struct SaturationArgs {
    #[arg(long, value_enum, default_value_t = StrategyArg::Worklist)]
    strategy: StrategyArg,
    /// Stop saturation after this many seconds.
    #[arg(long)]
    max_seconds: Option<f64>,
    /// Stop saturation after this many passes.
    #[arg(long)]
    max_passes: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Full,
    Worklist,
}

#[derive(Args)]
struct ProveArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    saturation: SaturationArgs,
    /// Write a certificate here.
    #[arg(long)]
    cert: Option<PathBuf>,
    /// Keep every trace step in the certificate instead of pruning.
    #[arg(long, requires = "cert")]
    full_trace: bool,
    /// Write the rank table here.
    #[arg(long)]
    ranks: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Certificate file.
    certificate: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    /// PG(d, 2)
    Pg2,
    /// PG(d, 3)
    Pg3,
}

#[derive(Args)]
struct RefuteArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum, default_value_t = ModelArg::Pg2)]
    model: ModelArg,
    /// Largest number of point placements to try.
    #[arg(long, default_value_t = 1_000_000)]
    budget: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct RankArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    saturation: SaturationArgs,
    /// Output file; standard output if omitted.
    #[arg(long)]
    ranks: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let verbose = cli.verbose;
    let result = match cli.command {
        Command::Prove(args) => prove(args, verbose),
        Command::Check(args) => check(args),
        Command::Refute(args) => refute(args),
        Command::Rank(args) => rank(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn load(input: &InputArgs) -> Result<SourceStatement> {
    if input.max_points > HARD_MAX_POINTS {
        bail!("--max-points {} exceeds the supported maximum of {HARD_MAX_POINTS}", input.max_points);
    }
    let path = &input.statement;
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let opts = ParseOptions {
        default_dimension: input.dim.unwrap_or(ParseOptions::default().default_dimension),
        max_points: input.max_points,
    };
    let src = parse_source(&text, &opts).map_err(|e| anyhow::anyhow!("{}: {e}", path.display()))?;
    if let (Some(flag), Some(file)) = (input.dim, src.declared_dimension) {
        if flag != file {
            eprintln!(
                "warning: {} declares dimension {file}; ignoring --dim {flag}",
                path.display()
            );
        }
    }
    Ok(src)
}

fn distinct_paths(paths: &[&Path]) -> Result<()> {
    for (i, a) in paths.iter().enumerate() {
        for b in &paths[i + 1..] {
            if a == b {
                bail!("{} is given for two different files", a.display());
            }
        }
    }
    Ok(())
}

fn limits(args: &SaturationArgs) -> Result<Limits> {
    let max_duration = match args.max_seconds {
        Some(s) if !(s > 0.0 && s.is_finite()) => bail!("--max-seconds must be positive"),
        Some(s) => Some(Duration::from_secs_f64(s)),
        None => None,
    };
    if args.max_passes == Some(0) {
        bail!("--max-passes must be positive");
    }
    Ok(Limits {
        max_passes: args.max_passes,
        max_duration,
    })
}

fn strategy(arg: StrategyArg) -> Strategy {
    match arg {
        StrategyArg::Full => Strategy::FullRescan,
        StrategyArg::Worklist => Strategy::Worklist,
    }
}

/// Saturates and times the run. A `None` outcome means a limit was hit and
/// has been reported.
fn run_saturation(
    stmt: &Statement,
    args: &SaturationArgs,
) -> Result<(SaturationState, Option<Outcome>, Duration)> {
    let limits = limits(args)?;
    let start = Instant::now();
    let mut state = SaturationState::initialize(stmt);
    let outcome = match saturate(&mut state, strategy(args.strategy), limits) {
        Ok(o) => Some(o),
        Err(e) => {
            let what = match e.kind {
                LimitKind::Passes => "pass limit",
                LimitKind::WallTime => "time limit",
                LimitKind::PassCeiling => "pass ceiling",
            };
            eprintln!("stopped: {what} reached after {} passes", e.passes);
            None
        }
    };
    Ok((state, outcome, start.elapsed()))
}

fn create(path: &Path) -> Result<BufWriter<fs::File>> {
    let f = fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
    Ok(BufWriter::new(f))
}

fn prove(args: ProveArgs, verbose: u8) -> Result<u8> {
    let mut outputs = vec![args.input.statement.as_path()];
    outputs.extend(args.cert.as_deref());
    outputs.extend(args.ranks.as_deref());
    distinct_paths(&outputs)?;
    let src = load(&args.input)?;
    let stmt = &src.statement;
    let universe = stmt.universe();

    let (state, outcome, elapsed) = run_saturation(stmt, &args.saturation)?;
    let Some(outcome) = outcome else {
        return Ok(EXIT_RESOURCE);
    };
    let ms = elapsed.as_millis();
    if verbose > 0 {
        eprintln!(
            "{} points, {} sets, {} passes, {} rule steps",
            universe.len(),
            universe.powerset_size(),
            state.pass_count(),
            state.rule_steps()
        );
    }

    if let Some(path) = &args.ranks {
        let mut out = create(path)?;
        write_rank_table(&state, universe, &mut out)?;
        out.flush()?;
    }
    if let Some(path) = &args.cert {
        let mut cert = if args.full_trace {
            extract_full_certificate(&state, stmt)
        } else {
            extract_certificate(&state, stmt)
        };
        cert.header.elapsed_ms = ms as u64;
        let mut out = create(path)?;
        write_certificate(&cert, &mut out)?;
        out.flush()?;
        println!(
            "certificate: {} ({} steps, {} lemmas)",
            path.display(),
            cert.step_count(),
            cert.lemmas.len()
        );
        if verbose > 1 {
            for (i, lemma) in cert.lemmas.iter().enumerate() {
                let goal = match lemma.goal {
                    Goal::Bound { set, interval } => {
                        format!("{} : {} {}", universe.display_set(set), interval.lo, interval.hi)
                    }
                    Goal::Bottom => "⊥".to_string(),
                };
                eprintln!("lemma {i}: {goal} ({} steps)", lemma.steps.len());
            }
        }
    }

    if outcome == Outcome::Contradiction {
        let c = state.contradiction_info().expect("contradiction recorded");
        let origin = match c.hypothesis {
            Some(h) => format!("the hypothesis on line {}", src.hypothesis_spans[h].line),
            None => format!("step {}", c.step),
        };
        println!(
            "contradiction: hypotheses are inconsistent ({} gets [{}, {}] at {origin})",
            universe.display_set(c.set),
            c.interval.lo,
            c.interval.hi
        );
        println!("time: {ms} ms");
        return Ok(2);
    }

    let verdict = decide(&state, stmt);
    for v in &verdict.conclusions {
        print!("{} {}", v.conclusion.display(universe), v.status);
        if verbose > 0 || v.status != ConclusionStatus::Proved {
            print!("  [{}, {}]", v.interval.lo, v.interval.hi);
        }
        println!();
    }
    println!("time: {ms} ms");
    Ok(if verdict.is_proved() { 0 } else { 1 })
}

fn check(args: CheckArgs) -> Result<u8> {
    distinct_paths(&[&args.input.statement, &args.certificate])?;
    let src = load(&args.input)?;
    let stmt = &src.statement;
    let path = &args.certificate;
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let cert = match parse_certificate(&text) {
        Ok(c) => c,
        Err(e) => {
            println!("invalid: malformed {e}");
            return Ok(1);
        }
    };
    match check_certificate(&cert, stmt) {
        Ok(summary) => {
            println!("valid: {} steps, {} lemmas", summary.steps, summary.lemmas);
            if summary.contradiction {
                println!("certifies that the hypotheses are inconsistent");
            }
            for (c, status) in stmt.conclusions().iter().zip(&summary.statuses) {
                println!("{} {status}", c.display(stmt.universe()));
            }
            Ok(0)
        }
        Err(e) => {
            match e.step {
                Some(step) => println!("invalid: step {step}: {} ({})", e.reason, e.detail),
                None => println!("invalid: {} ({})", e.reason, e.detail),
            }
            Ok(1)
        }
    }
}

fn refute(args: RefuteArgs) -> Result<u8> {
    let src = load(&args.input)?;
    let stmt = &src.statement;
    if stmt.dimension() > 7 {
        bail!("models are limited to dimension 7");
    }
    match args.model {
        ModelArg::Pg2 => run_refute::<Gf2>(stmt, &args),
        ModelArg::Pg3 => run_refute::<Gf3>(stmt, &args),
    }
}

fn run_refute<F: FiniteField + std::fmt::Display>(stmt: &Statement, args: &RefuteArgs) -> Result<u8> {
    let d = stmt.dimension();
    let model = ProjectiveModel::<F>::pg(d);
    let q = model.field_order();
    let start = Instant::now();
    let outcome = search_countermodel(stmt, &model, args.budget, args.seed);
    let ms = start.elapsed().as_millis();
    let universe = stmt.universe();
    match outcome {
        SearchOutcome::Found {
            assignment,
            conclusion,
            trials,
        } => {
            let c = &stmt.conclusions()[conclusion];
            println!(
                "disproved: `{}` fails in PG({d},{q}) (seed {}, {trials} trials)",
                c.display(universe),
                args.seed
            );
            let width = universe.names().iter().map(|n| n.chars().count()).max().unwrap_or(0);
            for (name, &m) in universe.names().iter().zip(&assignment.0) {
                let coords: Vec<String> = model.point(m).iter().map(|x| x.to_string()).collect();
                println!("  {name:<width$} -> ({})", coords.join(","));
            }
            println!(
                "  rank of {} is {}",
                universe.display_set(c.set),
                assignment.rank(&model, c.set)
            );
            println!("time: {ms} ms");
            Ok(0)
        }
        SearchOutcome::NotFound { trials, exhaustive } => {
            let scope = if exhaustive { "search space exhausted" } else { "budget spent" };
            println!(
                "no countermodel found (not a proof): {trials} trials in PG({d},{q}), {scope}"
            );
            println!("time: {ms} ms");
            Ok(1)
        }
    }
}

fn rank(args: RankArgs) -> Result<u8> {
    if let Some(out) = &args.ranks {
        distinct_paths(&[&args.input.statement, out])?;
    }
    let src = load(&args.input)?;
    let stmt = &src.statement;
    let (state, outcome, elapsed) = run_saturation(stmt, &args.saturation)?;
    let Some(outcome) = outcome else {
        return Ok(EXIT_RESOURCE);
    };
    if outcome == Outcome::Contradiction {
        eprintln!("contradiction: hypotheses are inconsistent, no rank table written");
        return Ok(2);
    }
    let universe = stmt.universe();
    let summary = format!(
        "determined {}/{} nonempty sets in {} ms",
        state.determined_count(),
        universe.powerset_size() - 1,
        elapsed.as_millis()
    );
    match &args.ranks {
        Some(path) => {
            let mut out = create(path)?;
            write_rank_table(&state, universe, &mut out)?;
            out.flush()?;
            println!("{summary}");
        }
        None => {
            let stdout = io::stdout();
            let mut out = BufWriter::new(stdout.lock());
            write_rank_table(&state, universe, &mut out)?;
            out.flush()?;
            eprintln!("{summary}");
        }
    }
    Ok(0)
}
