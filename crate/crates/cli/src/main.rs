use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use pathdecomp::generate::GenSpec;
use pathdecomp_cli::{cmd_decompose, cmd_fuzz, cmd_gen, cmd_verify, exit, FuzzConfig, Outcome};

#[derive(Parser)]
#[command(
    name = "pathdecomp",
    version,
    about = "Path decompositions of 2-degenerate graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decompose a graph given as an edge list ("-" reads stdin).
    Decompose {
        graph: PathBuf,
        #[arg(long)]
        json: bool,
        /// Write the reduction trace here.
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check a decomposition file against a graph.
    Verify {
        graph: PathBuf,
        decomposition: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Generate a 2-degenerate graph.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Probability that a new vertex attaches to two earlier ones.
        #[arg(long, default_value_t = 0.5)]
        p2: f64,
        #[arg(long)]
        connected: bool,
        /// A named family instead of a random graph.
        #[arg(long)]
        family: Option<String>,
        /// Push toward a single low-degree vertex.
        #[arg(long)]
        densify: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Decompose and verify many random graphs.
    Fuzz {
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 50)]
        max_n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Compare with the exact minimum up to this many edges (0 disables).
        #[arg(long, default_value_t = 0)]
        oracle_max_edges: usize,
        #[arg(long)]
        densify: bool,
        /// Also run the built-in families.
        #[arg(long)]
        families: bool,
        #[arg(long)]
        json: bool,
    },
}

fn read_input(path: &Path) -> io::Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path)
    }
}

fn emit(out: &Outcome, target: Option<&Path>) -> ExitCode {
    if let Some(path) = target {
        if let Err(e) = fs::write(path, &out.stdout) {
            eprintln!("error: {}: {e}", path.display());
            return ExitCode::from(exit::ERROR as u8);
        }
    } else {
        let _ = io::stdout().write_all(out.stdout.as_bytes());
    }
    let _ = io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code as u8)
}

fn fail(message: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(exit::ERROR as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(exit::ERROR as u8)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match cli.command {
        Command::Decompose {
            graph,
            json,
            trace,
            output,
        } => {
            let text = match read_input(&graph) {
                Ok(t) => t,
                Err(e) => return fail(format!("{}: {e}", graph.display())),
            };
            let result = cmd_decompose(&text, json);
            if let Some(path) = trace {
                if let Err(e) = fs::write(&path, &result.trace) {
                    return fail(format!("{}: {e}", path.display()));
                }
            }
            emit(&result.outcome, output.as_deref())
        }
        Command::Verify {
            graph,
            decomposition,
            json,
        } => {
            let g = match read_input(&graph) {
                Ok(t) => t,
                Err(e) => return fail(format!("{}: {e}", graph.display())),
            };
            let d = match read_input(&decomposition) {
                Ok(t) => t,
                Err(e) => return fail(format!("{}: {e}", decomposition.display())),
            };
            emit(&cmd_verify(&g, &d, json), None)
        }
        Command::Gen {
            n,
            seed,
            p2,
            connected,
            family,
            densify,
            output,
        } => {
            let spec = GenSpec {
                n,
                seed,
                connect: connected,
                p2,
                family,
                densify,
            };
            emit(&cmd_gen(&spec), output.as_deref())
        }
        Command::Fuzz {
            trials,
            max_n,
            seed,
            oracle_max_edges,
            densify,
            families,
            json,
        } => {
            let cfg = FuzzConfig {
                trials,
                max_n,
                seed,
                oracle_max_edges,
                densify,
                families,
            };
            emit(&cmd_fuzz(&cfg, json).0, None)
        }
    }
}
