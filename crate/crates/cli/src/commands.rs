use std::thread;

use seqtrans::approximant::{check_order, predict as predict_coefficients, FLOAT_MATCH_TOLERANCE};
use seqtrans::corpus::{oracle_value, registry, Classification};
use seqtrans::{PowerSeriesCoefficients, Scalar, Sequence};
use serde::Serialize;
use serde_json::Value;

use crate::args::{AccelerateArgs, CompareArgs, Format, MethodArgs, PredictArgs};
use crate::error::{CliError, CliResult};
use crate::input::{load_coefficients, load_sequence, Source};
use crate::method::{check_params, run, Grid, Method, Params, Variant};
use crate::report::{approx, csv_field, csv_lines, csv_value, num, opt_num, to_json};

const ERROR_RULE: &str = "heuristic: |difference of the last two valid first-column entries|";

#[derive(Serialize)]
struct Entry {
    k: usize,
    n: usize,
    valid: bool,
    value: Value,
    value_f64: Option<f64>,
    denominator: Value,
    denominator_magnitude: Option<f64>,
}

#[derive(Serialize)]
struct Row {
    k: usize,
    entries: Vec<Entry>,
}

#[derive(Serialize)]
struct Recommended {
    k: usize,
    n: usize,
    value: Value,
    value_f64: Option<f64>,
}

#[derive(Serialize)]
struct AccelerateReport<'a> {
    command: &'static str,
    config: &'a AccelerateArgs,
    source: Source,
    method: String,
    k_max: usize,
    table: Vec<Row>,
    recommended: Option<Recommended>,
    error_estimate: Value,
    error_estimate_rule: &'static str,
    /// `|recommended − oracle|` when a reference value is known.
    oracle_error: Option<f64>,
    diagnostics: Vec<String>,
}

fn order_for(method: Method, len: usize, omega_len: Option<usize>, requested: Option<usize>) -> CliResult<usize> {
    let too_short = |k: usize| {
        CliError::Input(format!(
            "{} at order {k} needs at least {} values, got {len}",
            method.label(),
            method.needed(k)
        ))
    };
    let max = method.max_order(len, omega_len).ok_or_else(|| too_short(0))?;
    match requested {
        Some(k) if k > max => Err(too_short(k)),
        Some(k) => Ok(k),
        None => Ok(max),
    }
}

pub fn accelerate<S: Scalar>(args: &AccelerateArgs) -> CliResult<String> {
    let method = Method::parse(&args.method.family, args.method.variant.as_deref())?;
    check_params(&[method], &args.method)?;
    let params = Params::<S>::resolve(&args.method)?;
    let (seq, source) = load_sequence::<S>(&args.input)?;
    let k_max = order_for(method, seq.len(), params.omega_len(), args.kmax)?;
    let grid = run(method, &params, &seq, k_max)?;

    let mut invalid = 0;
    let table: Vec<Row> = grid
        .rows
        .iter()
        .enumerate()
        .map(|(k, row)| Row {
            k,
            entries: row
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    invalid += usize::from(c.value.is_none());
                    Entry {
                        k,
                        n: grid.start + i,
                        valid: c.value.is_some(),
                        value: opt_num(c.value.as_ref()),
                        value_f64: c.value.as_ref().and_then(approx),
                        denominator: opt_num(c.denominator.as_ref()),
                        denominator_magnitude: c.denominator_magnitude,
                    }
                })
                .collect(),
        })
        .collect();
    let recommended = grid.recommended();
    let mut diagnostics = Vec::new();
    if invalid > 0 {
        diagnostics.push(format!("{invalid} entries flagged invalid (vanishing denominator or difference)"));
    }
    if recommended.is_none() {
        diagnostics.push("no valid entry in the first column".to_string());
    }
    let oracle_error = match (&recommended, source.oracle) {
        (Some((_, v)), Some(o)) => Some((v.to_f64() - o).abs()),
        _ => None,
    };
    let report = AccelerateReport {
        command: "accelerate",
        config: args,
        method: method.label(),
        k_max,
        recommended: recommended.as_ref().map(|(k, v)| Recommended {
            k: *k,
            n: grid.start,
            value: num(v),
            value_f64: approx(v),
        }),
        error_estimate: opt_num(grid.error_estimate().as_ref()),
        error_estimate_rule: ERROR_RULE,
        oracle_error,
        diagnostics,
        source,
        table,
    };
    match args.out.format {
        Format::Json => to_json(&report),
        Format::Csv => Ok(csv_lines(
            &["k", "n", "valid", "value", "denominator_magnitude"],
            report.table.iter().flat_map(|r| &r.entries).map(|e| {
                vec![
                    e.k.to_string(),
                    e.n.to_string(),
                    e.valid.to_string(),
                    csv_value(&e.value),
                    e.denominator_magnitude.map_or(String::new(), |m| m.to_string()),
                ]
            }),
        )),
    }
}

#[derive(Serialize)]
struct ApproximantReport {
    variant: &'static str,
    k: usize,
    n: usize,
    schedule: String,
    numerator: Vec<Value>,
    denominator: Vec<Value>,
}

#[derive(Serialize)]
struct PredictedCoefficient {
    index: usize,
    value: Value,
    value_f64: Option<f64>,
    /// The supplied coefficient at this index, if the input reaches it.
    supplied: Value,
}

#[derive(Serialize)]
struct Provenance {
    method: String,
    coefficients_used: usize,
    scalar: &'static str,
    matched_order_rule: String,
}

#[derive(Serialize)]
struct PredictReport<'a> {
    command: &'static str,
    config: &'a PredictArgs,
    source: Source,
    approximant: ApproximantReport,
    guaranteed_order: usize,
    /// Leading supplied coefficients the approximant reproduces.
    matched_order: usize,
    predictions: Vec<PredictedCoefficient>,
    provenance: Provenance,
}

pub fn predict<S: Scalar>(args: &PredictArgs) -> CliResult<String> {
    let kind = match crate::method::parse_variant(&args.variant)? {
        Variant::Standard(kind) => kind,
        Variant::ExplicitOmega => {
            return Err(CliError::Config("predict builds its estimates from the coefficients; use u, t, d or v".into()))
        }
    };
    let method = Method::parse(&args.family, Some(&args.variant))?;
    let Method::Omega { family, .. } = method else {
        return Err(CliError::Config(format!("predict needs one of G, L, S, M, C, got {}", args.family)));
    };
    let method_args = MethodArgs {
        family: args.family.clone(),
        variant: Some(args.variant.clone()),
        omega: None,
        beta: args.beta.clone(),
        xi: args.xi.clone(),
        alpha: args.alpha.clone(),
        chi: None,
        zeta: None,
        q: args.q.clone(),
    };
    check_params(&[method], &method_args)?;
    let params = Params::<S>::resolve(&method_args)?;
    let (gamma, source) = load_coefficients::<S>(&args.input, &args.problem, args.terms)?;
    let needed = args.k + args.n + 1 + kind.lookahead();
    if gamma.len() < needed {
        return Err(CliError::Input(format!(
            "the {} variant at k={}, n={} needs at least {needed} coefficients (k+n+{}), got {}",
            kind.name(),
            args.k,
            args.n,
            1 + kind.lookahead(),
            gamma.len()
        )));
    }
    let schedule = params.family(family).schedule();
    let coefficients = PowerSeriesCoefficients::new(gamma.clone());
    let p = predict_coefficients(kind, &schedule, args.k, args.n, &coefficients, args.count)?;
    let matched_order = check_order(&p.approximant, &coefficients)?;
    let rule = if S::EXACT {
        "exact comparison".to_string()
    } else {
        format!("relative tolerance {FLOAT_MATCH_TOLERANCE:e}")
    };
    let report = PredictReport {
        command: "predict",
        config: args,
        approximant: ApproximantReport {
            variant: kind.name(),
            k: args.k,
            n: args.n,
            schedule: schedule.describe(),
            numerator: p.approximant.numerator.coeffs.iter().map(num).collect(),
            denominator: p.approximant.denominator.coeffs.iter().map(num).collect(),
        },
        guaranteed_order: p.guaranteed,
        matched_order,
        predictions: p
            .predicted
            .iter()
            .map(|(i, v)| PredictedCoefficient {
                index: *i,
                value: num(v),
                value_f64: approx(v),
                supplied: opt_num(gamma.get(*i)),
            })
            .collect(),
        provenance: Provenance {
            method: format!("{}-family {}-variant rational approximant", args.family, kind.name()),
            coefficients_used: needed,
            scalar: S::NAME,
            matched_order_rule: rule,
        },
        source,
    };
    match args.out.format {
        Format::Json => to_json(&report),
        Format::Csv => Ok(csv_lines(
            &["index", "value", "supplied"],
            report
                .predictions
                .iter()
                .map(|p| vec![p.index.to_string(), csv_value(&p.value), csv_value(&p.supplied)]),
        )),
    }
}

#[derive(Serialize)]
struct CompareRow {
    k: usize,
    values: Vec<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    errors: Option<Vec<Option<f64>>>,
}

#[derive(Serialize)]
struct CompareReport<'a> {
    command: &'static str,
    config: &'a CompareArgs,
    source: Source,
    oracle: Option<f64>,
    methods: Vec<String>,
    rows: Vec<CompareRow>,
    diagnostics: Vec<String>,
}

pub fn compare<S: Scalar>(args: &CompareArgs) -> CliResult<String> {
    let mut methods = vec![Method::parse(&args.method.family, args.method.variant.as_deref())?];
    for spec in &args.baselines {
        methods.push(Method::parse_spec(spec)?);
    }
    check_params(&methods, &args.method)?;
    if args.exact.is_some() && args.input.problem.is_some() {
        return Err(CliError::Config("--exact applies to --input only; problems carry their own reference".into()));
    }
    let params = Params::<S>::resolve(&args.method)?;
    let (seq, source) = load_sequence::<S>(&args.input)?;
    let oracle = args.exact.or(source.oracle);
    let mut diagnostics = Vec::new();
    let mut orders = Vec::with_capacity(methods.len());
    for m in &methods {
        let max = order_for(*m, seq.len(), params.omega_len(), None)?;
        if args.kmax.is_some_and(|k| k > max) {
            diagnostics.push(format!("{} stops at order {max}", m.label()));
        }
        orders.push(args.kmax.map_or(max, |k| k.min(max)));
    }
    let grids = run_all(&methods, &orders, &params, &seq)?;
    let top = grids.iter().map(|g| g.orders.len()).max().unwrap_or(0);
    let last = args.kmax.map_or(top.saturating_sub(1), |k| k.min(top.saturating_sub(1)));
    let rows = (0..=last)
        .map(|k| {
            let vals: Vec<Option<&S>> = grids.iter().map(|g| g.orders.get(k).and_then(Option::as_ref)).collect();
            CompareRow {
                k,
                values: vals.iter().map(|v| opt_num(*v)).collect(),
                errors: oracle.map(|o| vals.iter().map(|v| v.map(|x| (x.to_f64() - o).abs())).collect()),
            }
        })
        .collect();
    if oracle.is_none() {
        diagnostics.push("no reference value; errors omitted".to_string());
    }
    let report = CompareReport {
        command: "compare",
        config: args,
        source,
        oracle,
        methods: methods.iter().map(Method::label).collect(),
        rows,
        diagnostics,
    };
    match args.out.format {
        Format::Json => to_json(&report),
        Format::Csv => {
            let mut header = vec!["k".to_string()];
            for m in &report.methods {
                header.push(csv_field(m));
                if oracle.is_some() {
                    header.push(csv_field(&format!("{m} error")));
                }
            }
            let header: Vec<&str> = header.iter().map(String::as_str).collect();
            Ok(csv_lines(
                &header,
                report.rows.iter().map(|r| {
                    let mut line = vec![r.k.to_string()];
                    for (i, v) in r.values.iter().enumerate() {
                        line.push(csv_value(v));
                        if let Some(errs) = &r.errors {
                            line.push(errs[i].map_or(String::new(), |e| e.to_string()));
                        }
                    }
                    line
                }),
            ))
        }
    }
}

/// Runs every method on its own thread; results keep the input order.
fn run_all<S: Scalar>(
    methods: &[Method],
    orders: &[usize],
    params: &Params<S>,
    seq: &Sequence<S>,
) -> CliResult<Vec<Grid<S>>> {
    thread::scope(|scope| {
        let handles: Vec<_> = methods
            .iter()
            .zip(orders)
            .map(|(m, k)| scope.spawn(move || run(*m, params, seq, *k)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().unwrap_or_else(|_| Err(CliError::Numerical("worker thread panicked".into()))))
            .collect()
    })
}

#[derive(Serialize)]
struct ProblemEntry {
    name: &'static str,
    classification: &'static str,
    value: Option<f64>,
    description: &'static str,
}

pub fn list_problems(format: Format) -> CliResult<String> {
    let entries: Vec<ProblemEntry> = registry()
        .into_iter()
        .map(|p| ProblemEntry {
            name: p.name,
            classification: match p.classification {
                Classification::Linear => "linear",
                Classification::Logarithmic => "logarithmic",
                Classification::AlternatingDivergent => "alternating-divergent",
            },
            value: oracle_value(&p).ok(),
            description: p.description,
        })
        .collect();
    match format {
        Format::Json => to_json(&entries),
        Format::Csv => Ok(csv_lines(
            &["name", "classification", "value", "description"],
            entries.iter().map(|e| {
                vec![
                    e.name.to_string(),
                    e.classification.to_string(),
                    e.value.map_or(String::new(), |v| v.to_string()),
                    csv_field(e.description),
                ]
            }),
        )),
    }
}
