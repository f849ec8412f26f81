//! `psl`: batch driver for product-set statistics, atom searches, relator
//! case analysis and group-algebra certificates.

mod commands;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use psl_core::PslError;

#[derive(Parser, Debug)]
#[command(name = "psl", version, about = "Product sets, atoms and relator case analysis")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = OutFormat::Json)]
    pub out: OutFormat,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out_path: Option<PathBuf>,

    /// Worker threads for parallel searches (0: one per core).
    #[arg(long, global = true, env = "PSL_WORKERS", default_value_t = 0)]
    pub workers: usize,

    /// Recorded in every report.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutFormat {
    Json,
    Tsv,
    Dot,
}

#[derive(Args, Debug, Clone)]
pub struct PairArgs {
    /// Model: free2, z2, klein, heisenberg or `quotient<x, y | ...>`.
    #[arg(long, default_value = "klein")]
    pub model: String,
    /// `C` as `;`-separated literals, e.g. `e;0,1;1,1`.
    #[arg(long)]
    pub cset: String,
    #[arg(long)]
    pub bset: String,
}

#[derive(Args, Debug, Clone)]
pub struct SearchArgs {
    #[arg(long, default_value = "klein")]
    pub model: String,
    #[arg(long)]
    pub cset: String,
    /// Minimum `|B|`.
    #[arg(long)]
    pub k: usize,
    /// Universe: ball of this radius in `x, y`.
    #[arg(long, default_value_t = 3)]
    pub radius: usize,
    /// Largest `|B|` tried (default `k + 3`).
    #[arg(long)]
    pub size_cap: Option<usize>,
    #[arg(long, default_value_t = 16)]
    pub witnesses: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Fibers, boundary and histogram of `BC`.
    Stats(PairArgs),
    /// The product-set graph on `B`, its short cycles and forbidden patterns.
    Graph(PairArgs),
    /// Least boundary `|BC \ B|` over `|B| ≥ k` inside a ball.
    Kappa(SearchArgs),
    /// Minimisers of the kappa search checked against the atom properties.
    Atoms(SearchArgs),
    /// The 36 square relator classes with their marks.
    TableC4,
    /// The 13 triangle relator classes and the survivors' exclusivity.
    Triangles {
        #[arg(long, default_value_t = 1_000_000)]
        max_cosets: usize,
    },
    /// All pairs of non-Klein starred square relators.
    Pairs {
        #[arg(long, default_value_t = 1_000_000)]
        max_cosets: usize,
        #[arg(long, default_value_t = 10_000)]
        max_rules: usize,
    },
    /// The 4-, 5- and 6-atom families.
    Families {
        #[arg(long, default_value_t = 10_000)]
        max_rules: usize,
        #[arg(long, default_value_t = 50)]
        max_passes: usize,
        /// Ball radius for the 7-set extension of the 6-atom.
        #[arg(long, default_value_t = 4)]
        radius: usize,
    },
    /// Restricted searches for the proved lower bounds on `|BC|`.
    DeskChecks {
        #[arg(long, default_value_t = 4)]
        klein_radius: usize,
        #[arg(long, default_value_t = 3)]
        free_radius: usize,
        #[arg(long, default_value_t = 3)]
        heisenberg_radius: usize,
    },
    /// Support sizes for zero divisors and units with `|supp(alpha)| = 3`.
    ScanSupports {
        #[arg(long, default_value = "klein")]
        model: String,
        #[arg(long)]
        cset: String,
        #[arg(long, default_value_t = 3)]
        radius: usize,
        #[arg(long, default_value_t = 12)]
        max_support: usize,
    },
    /// Certificate from a pair `(A, C)`, or a finite positive control.
    Certify {
        #[arg(long, conflicts_with_all = ["model", "cset", "bset"])]
        control: Option<u32>,
        #[arg(long)]
        model: Option<String>,
        #[arg(long)]
        cset: Option<String>,
        /// The atom `A`.
        #[arg(long)]
        bset: Option<String>,
    },
    /// Load and verify a certificate.
    VerifyCert {
        #[arg(long = "in")]
        input: PathBuf,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Stats(_) => "stats",
            Command::Graph(_) => "graph",
            Command::Kappa(_) => "kappa",
            Command::Atoms(_) => "atoms",
            Command::TableC4 => "table-c4",
            Command::Triangles { .. } => "triangles",
            Command::Pairs { .. } => "pairs",
            Command::Families { .. } => "families",
            Command::DeskChecks { .. } => "desk-checks",
            Command::ScanSupports { .. } => "scan-supports",
            Command::Certify { .. } => "certify",
            Command::VerifyCert { .. } => "verify-cert",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Ok,
    /// A computed value contradicts the claim checked.
    Contradiction(String),
    /// A verdict was required but a cap was reached first.
    CapExhausted(String),
}

impl Verdict {
    fn label(&self) -> &'static str {
        match self {
            Verdict::Ok => "ok",
            Verdict::Contradiction(_) => "contradiction",
            Verdict::CapExhausted(_) => "cap-exhausted",
        }
    }

    fn detail(&self) -> Option<&str> {
        match self {
            Verdict::Ok => None,
            Verdict::Contradiction(s) | Verdict::CapExhausted(s) => Some(s),
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            Verdict::Ok => 0,
            Verdict::Contradiction(_) => 2,
            Verdict::CapExhausted(_) => 3,
        }
    }
}

pub struct Report {
    pub claim: String,
    pub caps: Value,
    pub restricted: bool,
    pub payload: Value,
    pub tsv: Option<String>,
    pub dot: Option<String>,
    pub verdict: Verdict,
}

impl Report {
    pub fn new(claim: impl Into<String>, caps: Value, payload: Value) -> Report {
        Report {
            claim: claim.into(),
            caps,
            restricted: false,
            payload,
            tsv: None,
            dot: None,
            verdict: Verdict::Ok,
        }
    }
}

fn render(cli: &Cli, r: &Report) -> Result<String, PslError> {
    let name = cli.command.name();
    let header = format!("command={name} seed={} verdict={}", cli.seed, r.verdict.label());
    let missing = |fmt: &str| PslError::InvalidInput(format!("{name} has no {fmt} output"));
    Ok(match cli.out {
        OutFormat::Json => {
            let v = json!({
                "command": name,
                "seed": cli.seed,
                "claim": r.claim,
                "caps": r.caps,
                "restricted": r.restricted,
                "verdict": r.verdict.label(),
                "verdict_detail": r.verdict.detail(),
                "report": r.payload,
            });
            serde_json::to_string_pretty(&v)? + "\n"
        }
        OutFormat::Tsv => format!("# {header}\n{}", r.tsv.as_ref().ok_or_else(|| missing("tsv"))?),
        OutFormat::Dot => format!("// {header}\n{}", r.dot.as_ref().ok_or_else(|| missing("dot"))?),
    })
}

fn error_code(e: &PslError) -> u8 {
    match e {
        PslError::Contradiction(_) => 2,
        PslError::Undecidable(_) => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if cli.workers > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.workers).build_global() {
            eprintln!("psl: {e}");
            return ExitCode::from(1);
        }
    }
    let outcome = commands::run(&cli.command).and_then(|r| Ok((render(&cli, &r)?, r.verdict)));
    match outcome {
        Ok((text, verdict)) => {
            let written = match &cli.out_path {
                Some(p) => std::fs::write(p, &text),
                None => std::io::stdout().lock().write_all(text.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("psl: {e}");
                return ExitCode::from(1);
            }
            if let Some(d) = verdict.detail() {
                eprintln!("psl: {}: {d}", verdict.label());
            }
            ExitCode::from(verdict.exit_code())
        }
        Err(e) => {
            eprintln!("psl: {e}");
            ExitCode::from(error_code(&e))
        }
    }
}
