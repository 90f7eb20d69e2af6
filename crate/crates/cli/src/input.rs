use std::fs;
use std::path::Path;

use seqtrans::corpus::{find_problem, oracle_value};
use seqtrans::{ReferenceProblem, Scalar, Sequence};
use serde::Serialize;

use crate::args::InputArgs;
use crate::error::{CliError, CliResult};

/// Raw literals from a text file (one per line, `#` comments) or a JSON array.
pub fn read_literals(path: &Path) -> CliResult<Vec<String>> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    if text.trim_start().starts_with('[') {
        let items: Vec<serde_json::Value> = serde_json::from_str(&text)
            .map_err(|e| CliError::Input(format!("{}: invalid JSON array: {e}", path.display())))?;
        return items
            .into_iter()
            .enumerate()
            .map(|(i, v)| match v {
                serde_json::Value::Number(n) => Ok(n.to_string()),
                serde_json::Value::String(s) => Ok(s),
                other => Err(CliError::Input(format!("{}: element {i} is not a number: {other}", path.display()))),
            })
            .collect();
    }
    Ok(text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(str::to_string)
        .collect())
}

pub fn parse_values<S: Scalar>(literals: &[String], origin: &str) -> CliResult<Vec<S>> {
    literals
        .iter()
        .enumerate()
        .map(|(i, l)| {
            S::parse_literal(l).map_err(|_| CliError::Input(format!("{origin}: value {i} ({l:?}) is not a number")))
        })
        .collect()
}

pub fn read_values<S: Scalar>(path: &Path) -> CliResult<Vec<S>> {
    parse_values(&read_literals(path)?, &path.display().to_string())
}

/// Where the data came from, echoed in every report.
#[derive(Debug, Clone, Serialize)]
pub struct Source {
    pub origin: String,
    pub count: usize,
    /// Reference value, when one is known.
    pub oracle: Option<f64>,
}

pub fn lookup_problem(name: &str) -> CliResult<ReferenceProblem> {
    Ok(find_problem(name)?)
}

fn either<'a>(input: &'a Option<std::path::PathBuf>, problem: &'a Option<String>) -> CliResult<()> {
    match (input, problem) {
        (None, None) => Err(CliError::Config("one of --input or --problem is required".to_string())),
        _ => Ok(()),
    }
}

/// The sequence of partial sums selected by the input flags.
pub fn load_sequence<S: Scalar>(args: &InputArgs) -> CliResult<(Sequence<S>, Source)> {
    either(&args.input, &args.problem)?;
    if let Some(name) = &args.problem {
        if args.as_sums {
            return Err(CliError::Config("--as-sums applies to --input only".to_string()));
        }
        let p = lookup_problem(name)?;
        let oracle = oracle_value(&p).map_err(CliError::from)?;
        let seq = p.partial_sums(args.terms);
        let source = Source { origin: format!("problem:{name}"), count: args.terms, oracle: Some(oracle) };
        return Ok((seq, source));
    }
    let path = args.input.as_ref().expect("checked above");
    let values = read_values::<S>(path)?;
    if values.is_empty() {
        return Err(CliError::Input(format!("{} contains no values", path.display())));
    }
    let count = values.len();
    let seq = if args.as_sums {
        Sequence::from_partial_sums(0, values)
    } else {
        Sequence::from_terms(0, values)
    };
    Ok((seq, Source { origin: format!("file:{}", path.display()), count, oracle: None }))
}

/// Power series coefficients selected by `--input`/`--problem`.
pub fn load_coefficients<S: Scalar>(
    input: &Option<std::path::PathBuf>,
    problem: &Option<String>,
    terms: usize,
) -> CliResult<(Vec<S>, Source)> {
    either(input, problem)?;
    if let Some(name) = problem {
        let p = lookup_problem(name)?;
        let gamma = p.coefficients::<S>(terms).gamma;
        return Ok((gamma, Source { origin: format!("problem:{name}"), count: terms, oracle: None }));
    }
    let path = input.as_ref().expect("checked above");
    let gamma = read_values::<S>(path)?;
    let count = gamma.len();
    Ok((gamma, Source { origin: format!("file:{}", path.display()), count, oracle: None }))
}
