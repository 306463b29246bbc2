mod commands;
mod report;

use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use chainalg::format::{emit_ranked_poset, parse_poset, parse_weights};
use chainalg::{BuildOptions, Budget, Poset, RankedPoset};
use clap::{ArgGroup, Parser, Subcommand};
use serde_json::json;

use commands::{CmdResult, Failure, Outcome};
use report::{digest, Report};

/// Chain semigroups, chain algebras and chain polytopes of finite pure posets.
#[derive(Debug, Parser)]
#[command(name = "chainalg", version)]
struct Cli {
    /// Print the machine-readable report instead of the table.
    #[arg(long, global = true)]
    json: bool,

    /// Drop cover pairs implied by transitivity instead of rejecting them.
    #[arg(long, global = true)]
    auto_reduce: bool,

    /// Node budget for enumerations (overrides CHAINALG_BUDGET).
    #[arg(long, global = true, value_name = "NODES")]
    budget: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check that a poset file is a valid pure poset.
    Validate { poset: PathBuf },
    /// Krull dimension, polytope dimension, level components, indecomposability.
    Invariants { poset: PathBuf },
    /// Decide membership of a weight function in the chain semigroup.
    Member {
        poset: PathBuf,
        weights: PathBuf,
        /// Write the function as a sum of maximal chains.
        #[arg(long)]
        decompose: bool,
    },
    /// Canonical module: one graded piece or the a-invariant.
    #[command(group(ArgGroup::new("mode").required(true).args(["degree", "a_invariant"])))]
    Canonical {
        poset: PathBuf,
        /// List the canonical elements of this degree.
        #[arg(long)]
        degree: Option<u64>,
        /// Compute the a-invariant, regularity and least-degree elements.
        #[arg(long)]
        a_invariant: bool,
        /// Search limit for the least canonical degree (default |P| + 2).
        #[arg(long, requires = "a_invariant")]
        cap: Option<u64>,
    },
    /// Gorenstein classification of a poset of width at most 2.
    Width2 {
        poset: PathBuf,
        /// Also compare K_P with a translate of C_P degree by degree.
        #[arg(long)]
        witness: bool,
        /// Last degree compared by --witness (default 2 - a).
        #[arg(long, requires = "witness")]
        witness_cap: Option<u64>,
    },
    /// Cross-check every computation against brute-force oracles.
    Oracle {
        poset: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_degree: u64,
        #[arg(long, hide = true)]
        mutate: Option<String>,
    },
    /// Write a poset file: NAME, basic:C1,C2,..., chain:N or antichain:N,
    /// joined by `+` for ordinal sums.
    Generate {
        expr: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Validate { .. } => "validate",
            Command::Invariants { .. } => "invariants",
            Command::Member { .. } => "member",
            Command::Canonical { .. } => "canonical",
            Command::Width2 { .. } => "width2",
            Command::Oracle { .. } => "oracle",
            Command::Generate { .. } => "generate",
        }
    }
}

fn read(path: &PathBuf) -> Result<Vec<u8>, Failure> {
    std::fs::read(path).map_err(|e| Failure::io(&path.display().to_string(), e))
}

fn text(bytes: &[u8]) -> Result<&str, Failure> {
    std::str::from_utf8(bytes).map_err(|e| chainalg::Error::Format(e.to_string()).into())
}

struct Runner {
    options: BuildOptions,
    budget: Budget,
    inputs: Vec<Vec<u8>>,
}

impl Runner {
    fn poset(&mut self, path: &PathBuf) -> Result<Poset, Failure> {
        let bytes = read(path)?;
        let p = parse_poset(text(&bytes)?, self.options)?;
        self.inputs.push(bytes);
        Ok(p)
    }

    fn ranked(&mut self, path: &PathBuf) -> Result<RankedPoset, Failure> {
        Ok(self.poset(path)?.certify_pure()?)
    }

    fn run(&mut self, command: &Command) -> CmdResult {
        match command {
            Command::Validate { poset } => {
                let p = self.poset(poset)?;
                commands::validate(&p)
            }
            Command::Invariants { poset } => commands::invariants(&self.ranked(poset)?),
            Command::Member {
                poset,
                weights,
                decompose,
            } => {
                let rp = self.ranked(poset)?;
                let bytes = read(weights)?;
                let f = parse_weights(text(&bytes)?, &rp)?;
                self.inputs.push(bytes);
                commands::member(&rp, &f, *decompose)
            }
            Command::Canonical {
                poset,
                degree,
                a_invariant: _,
                cap,
            } => {
                let rp = self.ranked(poset)?;
                match degree {
                    Some(d) => commands::canonical_degree(&rp, *d, self.budget),
                    None => commands::canonical_a_invariant(&rp, *cap, self.budget),
                }
            }
            Command::Width2 {
                poset,
                witness,
                witness_cap,
            } => {
                let rp = self.ranked(poset)?;
                commands::width2(&rp, witness.then_some(*witness_cap), self.budget)
            }
            Command::Oracle {
                poset,
                max_degree,
                mutate,
            } => {
                let rp = self.ranked(poset)?;
                let fault = match mutate {
                    None => None,
                    Some(name) => Some(commands::fault(name).ok_or_else(|| Failure {
                        code: commands::EXIT_INVALID,
                        message: format!("unknown mutation `{name}`"),
                        details: json!({"kind": "rejected"}),
                    })?),
                };
                commands::oracle(&rp, *max_degree, self.budget, fault)
            }
            Command::Generate { .. } => unreachable!("handled before dispatch"),
        }
    }
}

fn generate(expr: &str, output: Option<&PathBuf>) -> anyhow::Result<i32> {
    let rp = match commands::generate(expr) {
        Ok(rp) => rp,
        Err(f) => {
            eprintln!("error: {}", f.message);
            return Ok(f.code);
        }
    };
    let doc = emit_ranked_poset(&rp);
    match output {
        Some(path) => std::fs::write(path, doc)?,
        None => std::io::stdout().write_all(doc.as_bytes())?,
    }
    Ok(commands::EXIT_OK)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match &cli.command {
        Command::Generate { expr, output } => generate(expr, output.as_ref()).unwrap_or_else(|e| {
            eprintln!("error: {e}");
            commands::EXIT_OTHER
        }),
        command => {
            let mut runner = Runner {
                options: BuildOptions {
                    auto_reduce: cli.auto_reduce,
                },
                budget: cli.budget.map(Budget::new).unwrap_or_else(Budget::from_env),
                inputs: Vec::new(),
            };
            let start = Instant::now();
            let outcome = runner.run(command);
            let elapsed = start.elapsed().as_micros();
            let inputs: Vec<&[u8]> = runner.inputs.iter().map(Vec::as_slice).collect();
            emit(&cli, command.name(), digest(&inputs), outcome, elapsed)
        }
    };
    ExitCode::from(code as u8)
}

fn emit(cli: &Cli, name: &str, digest: String, outcome: CmdResult, elapsed: u128) -> i32 {
    let (code, results, rules, human) = match outcome {
        Ok(Outcome {
            code,
            results,
            rules,
            human,
        }) => (code, results, rules, Some(human)),
        Err(f) => {
            eprintln!("error: {}", f.message);
            let results = json!({"error": {"message": f.message, "details": f.details}});
            (f.code, results, Vec::new(), None)
        }
    };
    let mut stdout = std::io::stdout().lock();
    let written = if cli.json {
        let report = Report::new(name, digest, code, results, rules, elapsed);
        stdout.write_all(report.to_json().as_bytes())
    } else {
        stdout.write_all(human.unwrap_or_default().as_bytes())
    };
    match written {
        Ok(()) => code,
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => code,
        Err(e) => {
            eprintln!("error: {e}");
            commands::EXIT_OTHER
        }
    }
}
