//! Command-line harness: runs the verification suites and prints the
//! classification table.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails (the report
//! is still emitted), 2 on usage errors.

use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use minrep_core::jordan;
use minrep_core::report::SuiteConfig;
use minrep_core::suites::{run_suite, Suite};

#[derive(Parser)]
#[command(
    name = "minrep",
    about = "Exact verification harness for Fock/Schrödinger models over complex Jordan algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Markdown,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite and emit a report.
    Verify {
        /// Suite: pspace, sl2, norms, kernel, fock-weight, schrodinger,
        /// bargmann, sl2-golden, all.
        #[arg(long, default_value = "all")]
        suite: String,
        /// Rank of the model (1 for the rank-1 algebra, r for Sym(r,C)).
        #[arg(long, default_value_t = 2)]
        rank: usize,
        /// Degree cap for operator-identity bases.
        #[arg(long, default_value_t = 6)]
        max_degree: i64,
        /// Cap on the norm-constant index m.
        #[arg(long, default_value_t = 5)]
        max_m: u64,
        /// Seed for the translate sampler and the Monte-Carlo oracle.
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Monte-Carlo sample count for the moment oracle.
        #[arg(long, default_value_t = 200_000)]
        mc_samples: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<String>,
    },
    /// Print the classification table of the underlying algebras.
    Table {
        #[arg(long, value_enum, default_value_t = Format::Markdown)]
        format: Format,
    },
}

fn emit(text: String, out: Option<&str>) -> std::io::Result<()> {
    match out {
        Some(path) => fs::write(path, text),
        None => {
            println!("{}", text);
            Ok(())
        }
    }
}

fn render_table(format: Format) -> String {
    let rows = jordan::classification_table();
    match format {
        Format::Json => serde_json::to_string_pretty(&rows).expect("table serializes"),
        Format::Markdown => {
            let mut out = String::new();
            out.push_str("| V | Q | l | g | g~_R | l_R | g_R |\n");
            out.push_str("|---|---|---|---|---|---|---|\n");
            for row in rows {
                out.push_str(&format!(
                    "| {} | {} | {} | {} | {} | {} | {} |\n",
                    row.v, row.q, row.l, row.g, row.g_r_real_form, row.l_r, row.g_r
                ));
            }
            out
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Table { format } => {
            println!("{}", render_table(format));
            ExitCode::SUCCESS
        }
        Command::Verify {
            suite,
            rank,
            max_degree,
            max_m,
            seed,
            mc_samples,
            format,
            out,
        } => {
            let parsed = match Suite::parse(&suite) {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("error: {}", e);
                    return ExitCode::from(2);
                }
            };
            let cfg = SuiteConfig {
                suite,
                rank,
                max_degree,
                max_m,
                seed,
                mc_samples,
            };
            let report = match run_suite(parsed, &cfg) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("error: {}", e);
                    return ExitCode::from(2);
                }
            };
            let text = match format {
                Format::Json => report.to_json(),
                Format::Markdown => report.to_markdown(),
            };
            if let Err(e) = emit(text, out.as_deref()) {
                eprintln!("error: cannot write report: {}", e);
                return ExitCode::FAILURE;
            }
            if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
    }
}
