//! Command line front end: transformation tables, coefficient prediction
//! and method comparisons in JSON or CSV.

mod args;
mod commands;
mod error;
mod input;
mod method;
mod report;

use std::process::ExitCode;

use clap::Parser;
use seqtrans::Rational;

use args::{Cli, Command, ScalarMode};
use error::CliResult;

fn execute(cli: &Cli) -> CliResult<()> {
    let (text, output) = match &cli.command {
        Command::Accelerate(a) => (
            match a.scalar {
                ScalarMode::F64 => commands::accelerate::<f64>(a)?,
                ScalarMode::Rational => commands::accelerate::<Rational>(a)?,
            },
            a.out.output.as_deref(),
        ),
        Command::Predict(a) => (
            match a.scalar {
                ScalarMode::F64 => commands::predict::<f64>(a)?,
                ScalarMode::Rational => commands::predict::<Rational>(a)?,
            },
            a.out.output.as_deref(),
        ),
        Command::Compare(a) => (
            match a.scalar {
                ScalarMode::F64 => commands::compare::<f64>(a)?,
                ScalarMode::Rational => commands::compare::<Rational>(a)?,
            },
            a.out.output.as_deref(),
        ),
        Command::ListProblems(o) => (commands::list_problems(o.format)?, o.output.as_deref()),
    };
    report::emit(&text, output)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("seqtrans: {e}");
            e.exit_code()
        }
    }
}
