use std::io::Write;
use std::path::PathBuf;
use std::process;

use clap::{Args, Parser, Subcommand};
use lcx_cli::calibration;
use lcx_cli::commands::{self, parse_family, parse_rational, DecomposeConfig, GenerateConfig, GenerateKind};
use lcx_cli::{run_campaign, Budgets, CampaignConfig, CliError, ExitCode, Lemma};
use lcx_core::decomposition::FinderFamily;
use lcx_core::Rational;

/// Parallel-greedy graphs, length-constrained cuts and expander
/// decompositions, checked in exact arithmetic.
#[derive(Parser, Debug)]
#[command(name = "lcx", version, about)]
struct Cli {
    /// Master seed; per-instance seeds derive from it and the instance index.
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,

    /// Worker threads (0 = one per core). Output does not depend on it.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    /// Output directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Search-step budget for one cycle enumeration.
    #[arg(long, global = true, env = "LCX_BUDGET_CYCLES")]
    budget_cycles: Option<u64>,

    /// Candidate budget for one exhaustive sparse-cut search.
    #[arg(long, global = true, env = "LCX_BUDGET_EXHAUSTIVE")]
    budget_exhaustive: Option<u64>,

    /// Maximum number of cuts in one decomposition.
    #[arg(long, global = true, env = "LCX_BUDGET_ITERATIONS")]
    budget_iterations: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write random instances and a manifest of their seeds.
    Generate(GenerateArgs),
    /// Run a lemma campaign and emit one CSV row per instance.
    Check(CheckArgs),
    /// Build a decomposition of one graph and print it as JSON.
    Decompose(DecomposeArgs),
    /// Write the named fixture instances.
    Fixtures,
    /// Measure the constants of the counting, arboricity and slack bounds.
    Calibrate(CalibrateArgs),
}

#[derive(Args, Debug)]
struct GenerateArgs {
    #[arg(long, value_enum, default_value = "parallel-greedy")]
    kind: GenerateKind,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 4)]
    s: usize,
    #[arg(long, default_value_t = 16)]
    rounds: usize,
    #[arg(long, default_value_t = 1)]
    count: usize,
}

#[derive(Args, Debug)]
struct CheckArgs {
    #[arg(value_enum)]
    lemma: Lemma,
    /// Instances per campaign (default depends on the campaign).
    #[arg(long)]
    instances: Option<usize>,
    /// Fix n (graph campaigns) or cap it (cut campaigns).
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    s: Option<usize>,
    #[arg(long)]
    rounds: Option<usize>,
    /// Edge cap of the exhaustive finder in the decomposition campaign.
    #[arg(long, default_value_t = 3)]
    max_edges: usize,
    /// Add float columns normalized by s·n^{2/s}.
    #[arg(long)]
    report_ratio: bool,
}

#[derive(Args, Debug)]
struct DecomposeArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Node-weighting file, or `deg` for the degree weighting.
    #[arg(long, default_value = "deg")]
    weights: String,
    #[arg(long, value_parser = parse_rational)]
    h: Rational,
    #[arg(long, value_parser = parse_rational)]
    s: Rational,
    #[arg(long, value_parser = parse_rational)]
    phi: Rational,
    /// exhaustive[:K], balls or singletons.
    #[arg(long, value_parser = parse_family, default_value = "exhaustive:3")]
    family: FinderFamily,
    /// Also verify the cut sequence and the union bound.
    #[arg(long)]
    check: bool,
}

#[derive(Args, Debug)]
struct CalibrateArgs {
    #[arg(long, default_value_t = 200)]
    instances: usize,
}

fn budgets(cli: &Cli) -> Budgets {
    let defaults = Budgets::default();
    Budgets {
        cycle_steps: cli.budget_cycles.unwrap_or(defaults.cycle_steps),
        exhaustive_candidates: cli.budget_exhaustive.unwrap_or(defaults.exhaustive_candidates),
        iterations: cli.budget_iterations.unwrap_or(defaults.iterations),
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    if cli.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    let stdout = std::io::stdout();
    let mut sink = stdout.lock();
    let budgets = budgets(&cli);
    let out = cli.out.as_deref();
    match &cli.command {
        Command::Generate(args) => {
            let config = GenerateConfig {
                kind: args.kind,
                n: args.n,
                s: args.s,
                rounds: args.rounds,
                count: args.count,
                seed: cli.seed,
            };
            for path in commands::generate(&config, out, &mut sink)? {
                eprintln!("wrote {}", path.display());
            }
            Ok(ExitCode::Pass)
        }
        Command::Check(args) => {
            let config = CampaignConfig {
                lemma: args.lemma,
                instances: args.instances,
                n: args.n,
                s: args.s,
                rounds: args.rounds,
                seed: cli.seed,
                budgets,
                max_edges: args.max_edges,
                report_ratio: args.report_ratio,
            };
            config.validate().map_err(CliError::Usage)?;
            let report = run_campaign(&config);
            commands::write_report(&report, out, &mut sink)?;
            Ok(commands::exit_code(&report))
        }
        Command::Decompose(args) => {
            let config = DecomposeConfig {
                graph: args.graph.clone(),
                weights: args.weights.clone(),
                h: args.h.clone(),
                s: args.s.clone(),
                phi: args.phi.clone(),
                family: args.family,
                limits: budgets.search_limits(),
                check: args.check,
            };
            commands::decompose(&config, &mut sink)?;
            Ok(ExitCode::Pass)
        }
        Command::Fixtures => {
            let dir = out.ok_or_else(|| CliError::Usage("fixtures needs --out".into()))?;
            for path in commands::write_fixtures(dir)? {
                eprintln!("wrote {}", path.display());
            }
            Ok(ExitCode::Pass)
        }
        Command::Calibrate(args) => {
            let base = CampaignConfig {
                budgets,
                ..CampaignConfig::new(Lemma::All, cli.seed)
            };
            let measured = calibration::measure(cli.seed, args.instances, &base);
            let json = serde_json::to_string_pretty(&measured).expect("plain data");
            writeln!(sink, "{json}").map_err(|e| CliError::io("<stdout>", e))?;
            Ok(ExitCode::Pass)
        }
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { ExitCode::Usage } else { ExitCode::Pass };
            let _ = err.print();
            process::exit(code as i32);
        }
    };
    let code = match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            err.exit_code()
        }
    };
    process::exit(code as i32);
}
