use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use randsub::exact::{exact_connectivity, exact_longest_cycle, exact_longest_path};
use randsub::graph::read_edge_list;
use randsub::harness::{
    bound_combine, bound_dfs_cycle, bound_grow_cycle, bound_linear_path, directed_counterexample_probability,
    Experiment, ExperimentConfig,
};
use randsub::rotation::sprinkle_defaults;
use randsub::Error;
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "randsub",
    version,
    about = "Seeded experiments on long paths and cycles in random subgraphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the experiment described by a JSON config file.
    Run(RunArgs),
    /// Evaluate a closed-form bound.
    #[command(subcommand)]
    Bounds(BoundCommand),
    /// Solve a small instance exactly.
    Oracle(OracleArgs),
}

#[derive(Args)]
struct RunArgs {
    config: PathBuf,
    /// Directory for report.json, trials.csv and summary.txt.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Rerun every trial from its seed and check the witnesses.
    #[arg(long)]
    audit: bool,
    /// Print the JSON report instead of the summary table.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum BoundCommand {
    /// Path length (1 - 2/sqrt(c))k, or (2 - 6/sqrt(c))k when bipartite.
    LinearPath {
        #[arg(long)]
        c: f64,
        #[arg(long)]
        k: f64,
        #[arg(long)]
        bipartite: bool,
        /// Path must start at a given vertex.
        #[arg(long)]
        start: bool,
    },
    /// DFS cycle length (1/2 - 5/sqrt(omega)) alpha k, or the bipartite form.
    DfsCycle {
        #[arg(long)]
        omega: f64,
        #[arg(long)]
        k: f64,
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        #[arg(long)]
        bipartite: bool,
    },
    /// Length after combining s disjoint cycles of length ell in a t-connected graph.
    Combine {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        ell: usize,
    },
    /// Cycle growth target (1 - 10/t) alpha k.
    Grow {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        k: f64,
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
    },
    /// Probability that every block of the directed blow-up keeps an arc.
    Counterexample {
        #[arg(long)]
        parts: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        p: f64,
    },
    /// Default sprinkling schedule for minimum degree k.
    Sprinkle {
        #[arg(long)]
        k: f64,
    },
}

#[derive(Args)]
struct OracleArgs {
    /// Edge-list file: header `n m`, then one `u v` per line.
    graph: PathBuf,
    #[arg(long)]
    directed: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(args) => run(args),
        Command::Bounds(cmd) => bounds(cmd),
        Command::Oracle(args) => oracle(args),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Config(_) | Error::Json(_) | Error::Parse { .. } | Error::Io(_) => ExitCode::from(2),
                _ => ExitCode::FAILURE,
            }
        }
    }
}

fn run(args: RunArgs) -> randsub::Result<ExitCode> {
    let config = ExperimentConfig::from_path(&args.config)?;
    let base = args.config.parent().filter(|p| !p.as_os_str().is_empty());
    let experiment = Experiment::prepare(&config, base)?;
    let report = experiment.run()?;
    if let Some(dir) = &args.out {
        let paths = report.write_outputs(dir)?;
        eprintln!(
            "wrote {}, {}, {}",
            paths.json.display(),
            paths.csv.display(),
            paths.summary.display()
        );
    }
    if args.json {
        println!("{}", report.to_json_string()?);
    } else {
        print!("{}", report.summary_text());
    }
    if args.audit {
        let audit = experiment.audit(&report)?;
        eprintln!(
            "audit: {} trials rerun, {} successes, {} mismatches",
            audit.checked,
            audit.successes_checked,
            audit.mismatches.len()
        );
        if !audit.passed() {
            eprintln!("audit mismatches in trials {:?}", audit.mismatches);
            return Ok(ExitCode::FAILURE);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn bounds(cmd: BoundCommand) -> randsub::Result<ExitCode> {
    let value = match cmd {
        BoundCommand::LinearPath { c, k, bipartite, start } => {
            json!({ "bound": bound_linear_path(c, k, bipartite, start)? })
        }
        BoundCommand::DfsCycle {
            omega,
            k,
            alpha,
            bipartite,
        } => {
            json!({ "bound": bound_dfs_cycle(alpha, omega, k, bipartite) })
        }
        BoundCommand::Combine { s, t, ell } => serde_json::to_value(bound_combine(s, t, ell)?)?,
        BoundCommand::Grow { t, k, alpha } => json!({ "bound": bound_grow_cycle(t, alpha, k)? }),
        BoundCommand::Counterexample { parts, k, p } => {
            json!({ "probability": directed_counterexample_probability(parts, k, p)? })
        }
        BoundCommand::Sprinkle { k } => {
            let s = sprinkle_defaults(k)?;
            json!({
                "rounds": s.len(),
                "per_round": s.rounds().first().copied().unwrap_or(0.0),
                "union_marginal": s.union_marginal(),
            })
        }
    };
    println!("{}", serde_json::to_string_pretty(&value)?);
    Ok(ExitCode::SUCCESS)
}

fn oracle(args: OracleArgs) -> randsub::Result<ExitCode> {
    let file = std::fs::File::open(&args.graph)?;
    let g = read_edge_list(std::io::BufReader::new(file), args.directed)?;
    let path = exact_longest_path(&g)?;
    let cycle = exact_longest_cycle(&g)?;
    let value = json!({
        "vertex_count": g.vertex_count(),
        "edge_count": g.edge_count(),
        "longest_path": path,
        "longest_cycle": cycle,
        "connectivity": exact_connectivity(&g),
    });
    println!("{}", serde_json::to_string_pretty(&value)?);
    Ok(ExitCode::SUCCESS)
}
