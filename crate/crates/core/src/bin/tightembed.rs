use std::process::ExitCode;

use clap::Parser;
use tightembed::io::{run, Command, ExitStatus, Inputs, Job, Options, OutputFormat};

/// Tight partition embeddings of finite modular lattices.
///
/// Exit status: 0 success, 1 certified negative, 2 bound exceeded, 3 input
/// error. Inputs that are not found on disk are looked up in
/// $TIGHTEMBED_FIXTURE_DIR, then among the built-in fixtures by name
/// (`m3.lat`, `lambda1.pls`, ...).
#[derive(Debug, Parser)]
#[command(name = "tightembed", version)]
struct Cli {
    #[arg(value_enum)]
    command: Command,
    /// Lattice: `lower upper` cover lines, or JSON {elements, covers}.
    #[arg(long)]
    lattice: Option<String>,
    /// Partial linear space: `points: ...` then `line: x y z` lines, or JSON.
    #[arg(long)]
    pls: Option<String>,
    /// Graph: `u v label` edge lines, or JSON.
    #[arg(long)]
    graph: Option<String>,
    /// Binary matroid: `name bits` column lines, or JSON.
    #[arg(long)]
    matroid: Option<String>,
    /// Embedding: `part: n` then `element partition` lines, or JSON.
    #[arg(long)]
    embedding: Option<String>,
    /// Most points per enumerated cycle (classify-pls).
    #[arg(long)]
    bound_cycles: Option<usize>,
    /// Ground size n of Part(n) to search (search); defaults to height + 1.
    #[arg(long)]
    bound_search: Option<usize>,
    /// Print the report as JSON.
    #[arg(long)]
    json: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let informational = !e.use_stderr();
            let _ = e.print();
            return ExitCode::from(if informational { 0 } else { ExitStatus::InputError.code() });
        }
    };
    let job = Job {
        command: cli.command,
        inputs: Inputs {
            lattice: cli.lattice,
            pls: cli.pls,
            graph: cli.graph,
            matroid: cli.matroid,
            embedding: cli.embedding,
        },
        options: Options { bound_cycles: cli.bound_cycles, bound_search: cli.bound_search },
        format: if cli.json { OutputFormat::Json } else { OutputFormat::Text },
    };
    let out = run(&job);
    print!("{}", out.report);
    ExitCode::from(out.status.code())
}
