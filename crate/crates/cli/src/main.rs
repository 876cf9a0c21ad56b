use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use anyhow::Result;
use clap::{Args, Parser, Subcommand};
use indcomplex_cli::{
    explore_family, export_dot, parse_input, run_check, run_suite, verify_only, CheckKind,
    RunConfig, SuiteReport, DEFAULT_SEED,
};

/// Independence complexes of graphs: constructions, certified checks and
/// theorem suites.
#[derive(Parser)]
#[command(name = "indcomplex", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a graph as JSON (default) or DOT.
    Graph {
        /// C<n>(d,...), K<m>, E<n>, inline JSON or a JSON file.
        desc: String,
        #[arg(long, conflicts_with = "json")]
        dot: bool,
        #[arg(long)]
        json: bool,
    },
    /// Decide one property of Ind(G) (or of a JSON complex).
    Check {
        kind: CheckKind,
        desc: String,
        #[command(flatten)]
        run: RunArgs,
        /// Write the certificate of a yes verdict here.
        #[arg(long, conflicts_with = "verify_only")]
        certificate: Option<PathBuf>,
        /// Only replay this certificate file through the verifier.
        #[arg(long)]
        verify_only: Option<PathBuf>,
    },
    /// Run a named suite.
    Suite {
        name: String,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Include the long-running milestones.
        #[arg(long)]
        deep: bool,
        /// Record regression constants instead of comparing them.
        #[arg(long)]
        bless: bool,
        #[arg(long)]
        regression: Option<PathBuf>,
    },
    /// Attempt Ind(C_{4s}(1,s,2s)) for s-min <= s <= s-max under a budget.
    Family {
        s_min: usize,
        s_max: usize,
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(Args)]
struct RunArgs {
    /// Per-check limit in seconds.
    #[arg(long)]
    timeout: Option<f64>,
    #[arg(long)]
    threads: Option<usize>,
    /// Reduce the VD search modulo cyclic rotation of the labels.
    #[arg(long)]
    symmetry: bool,
    #[arg(long, default_value = "certificates")]
    cert_dir: PathBuf,
}

impl RunArgs {
    fn config(&self, default_timeout: Option<f64>) -> RunConfig {
        let mut cfg = RunConfig {
            timeout: self.timeout.or(default_timeout).map(Duration::from_secs_f64),
            symmetry: self.symmetry,
            cert_dir: Some(self.cert_dir.clone()),
            ..RunConfig::default()
        };
        if let Some(t) = self.threads {
            cfg.threads = t.max(1);
        }
        cfg
    }
}

fn emit(report: &SuiteReport) -> Result<ExitCode> {
    println!("{}", serde_json::to_string_pretty(report)?);
    eprint!("{report}");
    Ok(ExitCode::from(report.exit_code() as u8))
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Graph { desc, dot, .. } => {
            if dot {
                print!("{}", export_dot(&desc)?);
            } else {
                let input = parse_input(&desc)?;
                println!("{}", serde_json::to_string(input.graph()?)?);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Check {
            kind,
            desc,
            run,
            certificate,
            verify_only: replay,
        } => {
            let report = match replay {
                Some(path) => verify_only(kind, &desc, &path)?,
                None => run_check(kind, &desc, &run.config(None), certificate.as_deref())?,
            };
            emit(&report)
        }
        Command::Suite {
            name,
            run,
            seed,
            deep,
            bless,
            regression,
        } => {
            let mut cfg = run.config(None);
            cfg.seed = seed;
            cfg.deep = deep;
            cfg.bless = bless;
            if let Some(path) = regression {
                cfg.regression = path;
            }
            emit(&run_suite(&name, &cfg)?)
        }
        Command::Family { s_min, s_max, run } => emit(&explore_family(s_min, s_max, &run.config(Some(60.0)))?),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
