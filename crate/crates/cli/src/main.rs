//! `kirwan`: JSON front end for the Kirwan blow-up computations.

mod commands;
mod fixtures;
mod input;
mod render;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kirwan_core::trees::DEFAULT_CHARGE_BOUND;

use report::{CliError, Report};

#[derive(Parser, Debug)]
#[command(name = "kirwan", version, about = "Kirwan blow-up coordinates, stability and limit tree bundles")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Whether results may use a quadratic field extension.
    #[arg(long = "field-ext", global = true, value_enum, default_value_t = FieldExt::Allow)]
    field_ext: FieldExt,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FieldExt {
    Allow,
    Deny,
}

#[derive(Args, Debug)]
struct InputArgs {
    /// JSON file with the payload.
    #[arg(long, conflicts_with = "json")]
    input: Option<PathBuf>,
    /// Inline JSON payload.
    #[arg(long)]
    json: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Determinant conic, stability, singularities and complete conic of a pencil.
    ClassifyPencil(InputArgs),
    /// Limit in Y, degeneration type and limiting tree bundle of a family.
    ClassifyFamily(InputArgs),
    /// Coordinates in the two blow-ups of a pencil, or the limit of a family.
    Lift(InputArgs),
    /// Normal form of a triple (xi, omega, eta) with its witness.
    Canonical(InputArgs),
    /// Weighted trees of a given total charge.
    Trees {
        #[arg(long)]
        charge: u32,
        #[arg(long, default_value_t = DEFAULT_CHARGE_BOUND)]
        bound: u32,
    },
    /// Dual conic of a pencil or of a point of the first blow-up.
    Dual(InputArgs),
    /// Run the built-in family and pencil corpus.
    Fixtures,
}

fn read_input(args: &InputArgs) -> Result<String, CliError> {
    match (&args.input, &args.json) {
        (Some(path), None) => std::fs::read_to_string(path)
            .map_err(|e| CliError::Schema(format!("cannot read {}: {e}", path.display()))),
        (None, Some(text)) => Ok(text.clone()),
        _ => Err(CliError::Schema("exactly one of --input or --json is required".into())),
    }
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    let (name, payload, out) = match &cli.command {
        Command::ClassifyPencil(a) => {
            let v = input::parse_json(&read_input(a)?)?;
            ("classify-pencil", v.clone(), commands::classify_pencil(&v)?)
        }
        Command::ClassifyFamily(a) => {
            let v = input::parse_json(&read_input(a)?)?;
            ("classify-family", v.clone(), commands::classify_family(&v)?)
        }
        Command::Lift(a) => {
            let v = input::parse_json(&read_input(a)?)?;
            ("lift", v.clone(), commands::lift(&v)?)
        }
        Command::Canonical(a) => {
            let v = input::parse_json(&read_input(a)?)?;
            ("canonical", v.clone(), commands::canonical(&v)?)
        }
        Command::Dual(a) => {
            let v = input::parse_json(&read_input(a)?)?;
            ("dual", v.clone(), commands::dual(&v)?)
        }
        Command::Trees { charge, bound } => {
            let v = serde_json::json!({ "charge": charge, "bound": bound });
            ("trees", v, commands::trees(*charge, *bound)?)
        }
        Command::Fixtures => ("fixtures", fixtures::corpus_json(), fixtures::run()?),
    };
    Report::new(name, &payload, out, cli.field_ext)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(&cli) {
        Ok(report) => {
            let text = match cli.format {
                Format::Json => format!("{}\n", report.to_json()),
                Format::Text => render::report(&report),
            };
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
