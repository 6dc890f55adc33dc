//! `famlab`: enumerations, exact searches and theorem suites from the shell.

mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "famlab", version, about = "Exact search over intersecting set families")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a family in canonical order.
    Enumerate(TargetArgs),
    /// Decide whether a largest star is a largest intersecting subfamily.
    StarProperty(SearchArgs),
    /// Find the lexicographically first largest intersecting subfamily.
    MaxIntersecting(SearchArgs),
    /// Apply the full label compression to an intersecting labeled family.
    Compress(CompressArgs),
    /// Run a theorem suite, or list the suites with --list.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Target {
    /// ([n] choose r)
    Knr,
    /// L_{n,k}^(r)
    Lnk,
    /// independent r-sets of the depth-two claw T_n
    Itn,
    /// all subsets of [n]
    Powerset,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Ekr,
    Thm2,
    Fjt,
    Lemma6,
    Gamma,
    Eq1,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
    Text,
}

#[derive(Args, Debug)]
struct Output {
    #[arg(long, value_enum, default_value = "json")]
    format: FormatArg,
    /// Write the report here instead of standard output.
    #[arg(long, value_name = "PATH")]
    out: Option<std::path::PathBuf>,
}

#[derive(Args, Debug)]
struct TargetArgs {
    #[arg(long, value_enum)]
    target: Target,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[arg(long, value_enum, required_unless_present = "input", conflicts_with = "input")]
    target: Option<Target>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    /// Read the family from a family text file instead of --target.
    #[arg(long, value_name = "PATH")]
    input: Option<std::path::PathBuf>,
    /// Largest family the search accepts.
    #[arg(long, value_name = "GUARD")]
    max_members: Option<usize>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct CompressArgs {
    /// Labeled family text file; without it a seeded random intersecting
    /// subfamily of L_{n,k}^(r) is compressed.
    #[arg(long, value_name = "PATH", conflicts_with_all = ["n", "k", "r", "seed"])]
    input: Option<std::path::PathBuf>,
    #[arg(long, required_unless_present = "input")]
    n: Option<usize>,
    #[arg(long, required_unless_present = "input")]
    k: Option<usize>,
    #[arg(long, required_unless_present = "input")]
    r: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, value_enum, required_unless_present = "list")]
    suite: Option<SuiteArg>,
    /// Print each suite with the invariant it checks.
    #[arg(long, conflicts_with_all = ["suite", "n_max", "seed", "trials", "max_members"])]
    list: bool,
    #[arg(long)]
    n_max: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    trials: Option<u64>,
    #[arg(long, value_name = "GUARD")]
    max_members: Option<usize>,
    #[command(flatten)]
    output: Output,
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            if wants_json(&argv) {
                println!("{}", commands::error_json("usage", &first_line(&e.to_string())));
            }
            return ExitCode::from(1);
        }
    };
    commands::run(cli)
}

/// Whether the raw arguments ask for JSON, for reporting parse errors.
fn wants_json(argv: &[String]) -> bool {
    argv.windows(2).any(|w| w[0] == "--format" && w[1] == "json")
        || argv.iter().any(|a| a == "--format=json")
        || !argv.iter().any(|a| a == "--format" || a.starts_with("--format="))
}

fn first_line(s: &str) -> String {
    s.lines().next().unwrap_or("").trim_start_matches("error: ").to_owned()
}
