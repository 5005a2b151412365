mod error;
mod model;
mod report;
mod run;
mod spec;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use leafalg::MonomialOrder;

use crate::error::CliError;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Order {
    Grevlex,
    Lex,
}

/// Batch computations on Poisson structures, leaf ideals and Lie algebras.
#[derive(Debug, Parser)]
#[command(name = "leafalg", version)]
struct Args {
    /// Spec file to execute.
    #[arg(long)]
    spec: PathBuf,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Coefficient degree bound for derivation-module queries.
    #[arg(long, default_value_t = 3)]
    degree_bound: u32,
    /// Monomial order used for every ideal.
    #[arg(long, value_enum, default_value_t = Order::Grevlex)]
    order: Order,
}

fn execute(args: &Args) -> Result<i32, CliError> {
    let text = std::fs::read_to_string(&args.spec)
        .map_err(|e| CliError::Io(format!("{}: {e}", args.spec.display())))?;
    let order = match args.order {
        Order::Grevlex => MonomialOrder::Grevlex,
        Order::Lex => MonomialOrder::Lex,
    };
    let spec = model::resolve(&text, order)?;
    let report = run::run(
        &spec,
        run::Flags {
            degree_bound: args.degree_bound,
        },
    );
    let rendered = report.render();
    match &args.out {
        Some(path) => std::fs::write(path, rendered)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?,
        None => print!("{rendered}"),
    }
    Ok(report.exit_code())
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(3) } else { ExitCode::SUCCESS };
        }
    };
    match execute(&args) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
