//! `homlab`: batch front end for the homlab library.
//!
//! Every command prints one JSON report on stdout:
//! `{"command", "inputs", "result", "witness", "elapsed_ms"}` with sorted
//! keys. Diagnostics go to stderr. Exit codes: 0 computed, 2 bad input,
//! 3 budget exceeded, 4 internal check failed.

mod commands;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use homlab::{Budgets, Error, Exec};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "homlab", version, about = "Finite structures, tolerant powers and compactness constructions")]
struct Cli {
    /// Budget file (TOML), e.g. `max_power_size = 200000`.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write generated artifacts (powers, quotients) to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Disable data parallelism.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Search for a homomorphism B → A.
    Hom {
        source: PathBuf,
        target: PathBuf,
        /// Also count homomorphisms, up to this many.
        #[arg(long)]
        count: Option<usize>,
    },
    /// Arc-consistent domains for B → A.
    Ac { source: PathBuf, target: PathBuf },
    /// Decide width one via P(A) → A.
    Width1 { structure: PathBuf },
    /// Build a filter-tolerant power.
    Power {
        structure: PathBuf,
        #[command(flatten)]
        filter: FilterArgs,
        /// Also build the agreement quotient.
        #[arg(long)]
        quotient: bool,
    },
    /// The pp-definable relation R_(B,x,y) on a target.
    Ppdef {
        gadget: PathBuf,
        target: PathBuf,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        /// Report whether the relation is the clique relation ≠.
        #[arg(long)]
        check_clique: bool,
    },
    /// Extract an ultrafilter from a coloring of (K_n)^I_F.
    Extract {
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[command(flatten)]
        filter: FilterArgs,
        /// Coloring file; without it the solver picks one.
        #[arg(long)]
        hom: Option<PathBuf>,
    },
    /// Directed cycle constructions.
    Cycles {
        #[command(subcommand)]
        command: CyclesCommand,
    },
    /// Choice-axiom criteria.
    Choice {
        #[command(subcommand)]
        command: ChoiceCommand,
    },
    /// Scripted experiments.
    Experiment {
        #[command(subcommand)]
        command: ExperimentCommand,
    },
}

#[derive(Args, Debug, Clone)]
struct FilterArgs {
    #[arg(long)]
    index_size: usize,
    /// Filter base, e.g. `0,1`. Defaults to the whole index set.
    #[arg(long, conflicts_with = "generators")]
    filter_base: Option<String>,
    /// Generator sets, e.g. `0,1;1,2`.
    #[arg(long)]
    generators: Option<String>,
}

#[derive(Subcommand, Debug)]
enum CyclesCommand {
    /// k ↦ (k mod p, k mod q) as an isomorphism C_pq ≅ C_p × C_q.
    Crt {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
    },
    /// Components of the agreement quotient of a C_n power.
    Census {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        filter: FilterArgs,
    },
    /// Distinguished subsets from the partial-choice-function filter.
    Kw {
        #[arg(long)]
        p: usize,
        /// Family of sets, e.g. `a,b;c,d`.
        #[arg(long)]
        sets: String,
        /// Coloring: evaluation at this index (default: every base index).
        #[arg(long)]
        index: Option<usize>,
    },
    /// Order-extension map for ({0,1}; ≤, ≠).
    Orderhom {
        #[command(flatten)]
        filter: FilterArgs,
    },
}

#[derive(Subcommand, Debug)]
enum ChoiceCommand {
    /// The subgroup criterion for S_m and a set S of sizes.
    Gauntt {
        #[arg(long)]
        m: usize,
        /// Members of S; repeat or separate by commas.
        #[arg(long = "set", value_delimiter = ',', required = true)]
        set: Vec<usize>,
    },
    /// Every prime partition of m has a part ≤ n.
    Primesum {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand, Debug)]
enum ExperimentCommand {
    LauchliRoundtrip {
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        index_size: usize,
        /// Colorings enumerated per filter.
        #[arg(long, default_value_t = 10_000)]
        limit: usize,
    },
    ComFtRoundtrip,
    PpLift {
        #[arg(long, default_value_t = 2)]
        max_index: usize,
        /// Solver colorings per filter, besides the ultrafilter ones.
        #[arg(long, default_value_t = 3)]
        colorings: usize,
    },
    PkInduction {
        #[arg(long, default_value_t = 2)]
        p: usize,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 2)]
        index_size: usize,
    },
}

/// What a command hands back for the report.
pub struct Outcome {
    pub inputs: Value,
    pub result: Value,
    pub witness: Value,
    /// Artifact written with `--out`, if any.
    pub artifact: Option<Value>,
}

/// Failures with their exit codes.
#[derive(Debug)]
pub enum Failure {
    Input(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Lib(Error::BudgetExceeded { .. }) => 3,
            Failure::Lib(e) if e.is_internal() => 4,
            Failure::Lib(_) => 2,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Input(m) => write!(f, "{m}"),
            Failure::Lib(e) => write!(f, "{e}"),
        }
    }
}

pub struct Ctx {
    pub budgets: Budgets,
    pub exec: Exec,
}

fn load_budgets(path: Option<&PathBuf>) -> Result<Budgets, Failure> {
    let Some(path) = path else {
        return Ok(Budgets::default());
    };
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn run(cli: &Cli) -> Result<(String, Outcome), Failure> {
    let ctx = Ctx {
        budgets: load_budgets(cli.config.as_ref())?,
        exec: if cli.sequential { Exec::Sequential } else { Exec::default() },
    };
    use commands as c;
    Ok(match &cli.command {
        Command::Hom { source, target, count } => ("hom".into(), c::hom(source, target, *count)?),
        Command::Ac { source, target } => ("ac".into(), c::ac(source, target)?),
        Command::Width1 { structure } => ("width1".into(), c::width1(&ctx, structure)?),
        Command::Power { structure, filter, quotient } => {
            ("power".into(), c::power(&ctx, structure, &filter.clone().into(), *quotient)?)
        }
        Command::Ppdef { gadget, target, x, y, check_clique } => {
            ("ppdef".into(), c::ppdef(&ctx, gadget, target, x, y, *check_clique)?)
        }
        Command::Extract { n, filter, hom } => {
            ("extract".into(), c::extract(&ctx, *n, &filter.clone().into(), hom.as_ref())?)
        }
        Command::Cycles { command } => match command {
            CyclesCommand::Crt { p, q } => ("cycles crt".into(), c::crt(*p, *q)?),
            CyclesCommand::Census { n, filter } => ("cycles census".into(), c::census(&ctx, *n, &filter.clone().into())?),
            CyclesCommand::Kw { p, sets, index } => ("cycles kw".into(), c::kw(&ctx, *p, sets, *index)?),
            CyclesCommand::Orderhom { filter } => ("cycles orderhom".into(), c::orderhom(&ctx, &filter.clone().into())?),
        },
        Command::Choice { command } => match command {
            ChoiceCommand::Gauntt { m, set } => ("choice gauntt".into(), c::gauntt(&ctx, *m, set)?),
            ChoiceCommand::Primesum { m, n } => ("choice primesum".into(), c::primesum(*m, *n)?),
        },
        Command::Experiment { command } => match command {
            ExperimentCommand::LauchliRoundtrip { n, index_size, limit } => {
                ("experiment lauchli-roundtrip".into(), c::lauchli(&ctx, *n, *index_size, *limit)?)
            }
            ExperimentCommand::ComFtRoundtrip => ("experiment com-ft-roundtrip".into(), c::com_ft(&ctx)?),
            ExperimentCommand::PpLift { max_index, colorings } => {
                ("experiment pp-lift".into(), c::pp_lift(&ctx, *max_index, *colorings)?)
            }
            ExperimentCommand::PkInduction { p, k, index_size } => {
                ("experiment pk-induction".into(), c::pk_induction(&ctx, *p, *k, *index_size)?)
            }
        },
    })
}

/// Parsed filter arguments.
pub struct FilterSpec {
    pub index_size: usize,
    pub base: Option<String>,
    pub generators: Option<String>,
}

impl From<FilterArgs> for FilterSpec {
    fn from(a: FilterArgs) -> Self {
        FilterSpec { index_size: a.index_size, base: a.filter_base, generators: a.generators }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match run(&cli) {
        Ok((command, outcome)) => {
            let mut witness = outcome.witness;
            if let Some(artifact) = outcome.artifact {
                match &cli.out {
                    Some(path) => {
                        let text = serde_json::to_string_pretty(&artifact).expect("JSON values serialize");
                        if let Err(e) = std::fs::write(path, text + "\n") {
                            eprintln!("error: {}: {e}", path.display());
                            return ExitCode::from(2);
                        }
                        witness = json!({ "artifact": path.display().to_string() });
                    }
                    None => witness = artifact,
                }
            }
            let report = json!({
                "command": command,
                "inputs": outcome.inputs,
                "result": outcome.result,
                "witness": witness,
                "elapsed_ms": start.elapsed().as_millis() as u64,
            });
            let text = serde_json::to_string_pretty(&report).expect("JSON values serialize");
            // a closed pipe on stdout is not a failure of the computation
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            ExitCode::SUCCESS
        }
        Err(failure) => {
            eprintln!("error: {failure}");
            ExitCode::from(failure.exit_code())
        }
    }
}
