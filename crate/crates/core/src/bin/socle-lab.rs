use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use socle_lab::cli::{self, RunFlags, SearchConfig, SearchTarget, EXIT_AGREEMENT, EXIT_OK, EXIT_PARSE};
use socle_lab::local::DEFAULT_MAX_PRECISION;
use socle_lab::polynomial::FieldSpec;

#[derive(Parser)]
#[command(name = "socle-lab", version, about = "Exact socle, splitting and Koszul-length computations")]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every task of a session file.
    Run {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        /// Cap on the m-adic precision; defaults to SOCLE_LAB_MAX_PRECISION or 64.
        #[arg(long)]
        max_precision: Option<u32>,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Seeded random search for counterexamples.
    Search {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        count: usize,
        /// `Q` or `F<p>`, e.g. `F5`.
        #[arg(long, default_value = "F5")]
        field: String,
        #[arg(long, default_value_t = 2)]
        vars: usize,
        #[arg(long, default_value_t = 4)]
        deg: u32,
        #[arg(long, value_enum, default_value_t = Target::Spc)]
        target: Target,
        #[arg(long)]
        max_precision: Option<u32>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Spc,
    Split,
}

fn env_precision() -> Option<u32> {
    std::env::var("SOCLE_LAB_MAX_PRECISION").ok()?.trim().parse().ok()
}

fn parse_field(s: &str) -> Option<FieldSpec> {
    if s == "Q" {
        return Some(FieldSpec::Rationals);
    }
    FieldSpec::prime(s.strip_prefix('F')?.parse().ok()?).ok()
}

fn main() -> ExitCode {
    let args = Args::parse();
    let code = match args.command {
        Command::Run {
            file,
            json,
            max_precision,
            jobs,
        } => {
            let text = match std::fs::read_to_string(&file) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("{}: {e}", file.display());
                    return ExitCode::from(EXIT_PARSE as u8);
                }
            };
            let session = match cli::parse_session(&text) {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("{}: {e}", file.display());
                    return ExitCode::from(EXIT_PARSE as u8);
                }
            };
            let flags = RunFlags {
                max_precision: max_precision.or_else(env_precision).unwrap_or(DEFAULT_MAX_PRECISION),
                jobs,
            };
            match cli::run_tasks(&session, &flags) {
                Ok(doc) => {
                    if json {
                        println!("{}", doc.to_json());
                    } else {
                        print!("{}", doc.to_text());
                    }
                    doc.exit_code()
                }
                Err(e) => {
                    eprintln!("{}: {e}", file.display());
                    EXIT_PARSE
                }
            }
        }
        Command::Search {
            seed,
            count,
            field,
            vars,
            deg,
            target,
            max_precision,
            json,
        } => {
            let Some(field) = parse_field(&field) else {
                eprintln!("unknown field `{field}`; use Q or F<p>");
                return ExitCode::from(EXIT_PARSE as u8);
            };
            let mut config = SearchConfig {
                seed,
                count,
                field,
                vars,
                deg,
                target: match target {
                    Target::Spc => SearchTarget::Spc,
                    Target::Split => SearchTarget::Split,
                },
                ..SearchConfig::default()
            };
            if let Some(p) = max_precision.or_else(env_precision) {
                config.max_precision = p;
            }
            let report = cli::random_search(&config);
            if json {
                println!("{}", report.to_json(&config));
            } else {
                print!("{}", report.document.to_text());
                println!("skipped {} instances; {} counterexamples", report.skipped, report.counterexamples.len());
                for c in &report.counterexamples {
                    println!("counterexample #{}: {}", c.index, c.reasons.join(", "));
                }
            }
            if report.counterexamples.is_empty() {
                EXIT_OK
            } else {
                EXIT_AGREEMENT
            }
        }
    };
    ExitCode::from(code as u8)
}
