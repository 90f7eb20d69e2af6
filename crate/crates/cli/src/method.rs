use seqtrans::approximant::pade_epsilon;
use seqtrans::engine::transform_family;
use seqtrans::{
    EstimateKind, Family, QSchedule, RemainderEstimator, RichardsonFamily, Scalar, Sequence, ZeroPolicy,
};

use crate::args::MethodArgs;
use crate::error::{CliError, CliResult};
use crate::input::read_values;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OmegaFamily {
    G,
    L,
    S,
    M,
    C,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    Standard(EstimateKind),
    ExplicitOmega,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RichardsonKind {
    Lambda,
    F,
    P,
    RC,
}

/// One transformation as selected on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Omega { family: OmegaFamily, variant: Variant },
    Richardson(RichardsonKind),
    Epsilon,
}

fn parse_family(name: &str) -> CliResult<Result<OmegaFamily, Option<RichardsonKind>>> {
    Ok(match name {
        "G" | "g" => Ok(OmegaFamily::G),
        "L" | "l" => Ok(OmegaFamily::L),
        "S" | "s" => Ok(OmegaFamily::S),
        "M" | "m" => Ok(OmegaFamily::M),
        "C" | "c" => Ok(OmegaFamily::C),
        "lambda" => Err(Some(RichardsonKind::Lambda)),
        "F" | "f" => Err(Some(RichardsonKind::F)),
        "P" | "p" => Err(Some(RichardsonKind::P)),
        "RC" | "rc" => Err(Some(RichardsonKind::RC)),
        "epsilon" => Err(None),
        other => {
            return Err(CliError::Config(format!(
                "unknown family {other:?}; expected G, L, S, M, C, lambda, F, P, RC or epsilon"
            )))
        }
    })
}

pub fn parse_variant(text: &str) -> CliResult<Variant> {
    if text == "explicit-omega" {
        return Ok(Variant::ExplicitOmega);
    }
    EstimateKind::parse(text)
        .map(Variant::Standard)
        .ok_or_else(|| CliError::Config(format!("unknown variant {text:?}; expected u, t, d, v or explicit-omega")))
}

impl Method {
    pub fn parse(family: &str, variant: Option<&str>) -> CliResult<Method> {
        match parse_family(family)? {
            Ok(f) => {
                let v = variant.ok_or_else(|| {
                    CliError::Config(format!("family {family} needs --variant (u, t, d, v or explicit-omega)"))
                })?;
                Ok(Method::Omega { family: f, variant: parse_variant(v)? })
            }
            Err(other) => {
                if let Some(v) = variant {
                    return Err(CliError::Config(format!(
                        "family {family} uses no remainder estimate; remove the variant {v:?}"
                    )));
                }
                Ok(other.map_or(Method::Epsilon, Method::Richardson))
            }
        }
    }

    /// `FAMILY` or `FAMILY:VARIANT`.
    pub fn parse_spec(spec: &str) -> CliResult<Method> {
        match spec.split_once(':') {
            Some((f, v)) => Method::parse(f, Some(v)),
            None => Method::parse(spec, None),
        }
    }

    pub fn label(&self) -> String {
        match self {
            Method::Omega { family, variant } => {
                let v = match variant {
                    Variant::Standard(k) => k.name(),
                    Variant::ExplicitOmega => "explicit-omega",
                };
                format!("{family:?}:{v}")
            }
            Method::Richardson(RichardsonKind::Lambda) => "lambda".to_string(),
            Method::Richardson(kind) => format!("{kind:?}"),
            Method::Epsilon => "epsilon".to_string(),
        }
    }

    fn uses(&self, param: &str) -> bool {
        match self {
            Method::Omega { family, .. } => match family {
                OmegaFamily::G => param == "q",
                OmegaFamily::L | OmegaFamily::S => param == "beta",
                OmegaFamily::M => param == "xi",
                OmegaFamily::C => param == "alpha" || param == "beta",
            },
            Method::Richardson(kind) => match kind {
                RichardsonKind::Lambda => param == "beta",
                RichardsonKind::F => param == "chi",
                RichardsonKind::P => param == "zeta",
                RichardsonKind::RC => param == "alpha" || param == "chi",
            },
            Method::Epsilon => false,
        }
    }

    fn explicit_omega(&self) -> bool {
        matches!(self, Method::Omega { variant: Variant::ExplicitOmega, .. })
    }

    /// Number of sequence elements needed for order `k`.
    pub fn needed(&self, k: usize) -> usize {
        match self {
            Method::Omega { variant: Variant::Standard(kind), .. } => k + 1 + kind.lookahead(),
            Method::Omega { variant: Variant::ExplicitOmega, .. } | Method::Richardson(_) => k + 1,
            Method::Epsilon => 2 * k + 1,
        }
    }

    /// Largest order the method supports, `None` when even order 0 is out
    /// of reach.
    pub fn max_order(&self, len: usize, omega_len: Option<usize>) -> Option<usize> {
        let len = if self.explicit_omega() { len.min(omega_len.unwrap_or(0)) } else { len };
        (0..=len).take_while(|&k| self.needed(k) <= len).last()
    }
}

/// Rejects parameters that none of `methods` reads.
pub fn check_params(methods: &[Method], args: &MethodArgs) -> CliResult<()> {
    let given = [
        ("beta", args.beta.is_some()),
        ("xi", args.xi.is_some()),
        ("alpha", args.alpha.is_some()),
        ("chi", args.chi.is_some()),
        ("zeta", args.zeta.is_some()),
        ("q", args.q.is_some()),
    ];
    for (name, present) in given {
        if present && !methods.iter().any(|m| m.uses(name)) {
            let labels: Vec<String> = methods.iter().map(Method::label).collect();
            return Err(CliError::Config(format!("--{name} is not used by {}", labels.join(", "))));
        }
    }
    let any_g = methods.iter().any(|m| matches!(m, Method::Omega { family: OmegaFamily::G, .. }));
    if any_g && args.q.is_none() {
        return Err(CliError::Config("family G needs --q (e.g. const:1, m^2, list:1,4,9)".to_string()));
    }
    let wants_omega = methods.iter().any(Method::explicit_omega);
    if wants_omega != args.omega.is_some() {
        return Err(CliError::Config(if wants_omega {
            "the explicit-omega variant needs --omega FILE".to_string()
        } else {
            "--omega is only used by the explicit-omega variant".to_string()
        }));
    }
    Ok(())
}

fn param<S: Scalar>(value: &Option<String>, name: &str) -> CliResult<S> {
    match value {
        None => Ok(S::one()),
        Some(text) => S::parse_literal(text).map_err(|_| CliError::Config(format!("--{name} {text:?} is not a number"))),
    }
}

/// Numeric parameters resolved for one scalar type.
#[derive(Debug, Clone)]
pub struct Params<S> {
    beta: S,
    xi: S,
    alpha: S,
    chi: S,
    zeta: S,
    q: Option<QSchedule<S>>,
    omega: Option<Vec<S>>,
}

impl<S: Scalar> Params<S> {
    pub fn resolve(args: &MethodArgs) -> CliResult<Self> {
        let q = args
            .q
            .as_ref()
            .map(|t| QSchedule::parse(t).map_err(|e| CliError::Config(format!("--q {t:?}: {e}"))))
            .transpose()?;
        let omega = args.omega.as_ref().map(|p| read_values::<S>(p)).transpose()?;
        Ok(Params {
            beta: param(&args.beta, "beta")?,
            xi: param(&args.xi, "xi")?,
            alpha: param(&args.alpha, "alpha")?,
            chi: param(&args.chi, "chi")?,
            zeta: param(&args.zeta, "zeta")?,
            q,
            omega,
        })
    }

    pub fn omega_len(&self) -> Option<usize> {
        self.omega.as_ref().map(Vec::len)
    }

    pub fn family(&self, family: OmegaFamily) -> Family<S> {
        match family {
            OmegaFamily::G => Family::G(self.q.clone().expect("validated: G has --q")),
            OmegaFamily::L => Family::L { beta: self.beta.clone() },
            OmegaFamily::S => Family::S { beta: self.beta.clone() },
            OmegaFamily::M => Family::M { xi: self.xi.clone() },
            OmegaFamily::C => Family::C { alpha: self.alpha.clone(), beta: self.beta.clone() },
        }
    }

    fn richardson(&self, kind: RichardsonKind) -> RichardsonFamily<S> {
        match kind {
            RichardsonKind::Lambda => RichardsonFamily::Lambda { beta: self.beta.clone() },
            RichardsonKind::F => RichardsonFamily::F { chi: self.chi.clone() },
            RichardsonKind::P => RichardsonFamily::P { zeta: self.zeta.clone() },
            RichardsonKind::RC => RichardsonFamily::RC { alpha: self.alpha.clone(), chi: self.chi.clone() },
        }
    }
}

/// One table entry in a method-independent shape.
#[derive(Debug, Clone)]
pub struct Cell<S> {
    pub value: Option<S>,
    pub denominator: Option<S>,
    pub denominator_magnitude: Option<f64>,
}

/// Output of one method: the triangular table plus its per-order estimates.
#[derive(Debug, Clone)]
pub struct Grid<S> {
    pub start: usize,
    /// `rows[k][i]` is the entry at `n = start + i`.
    pub rows: Vec<Vec<Cell<S>>>,
    /// Estimate of order `k`: `T_k^(start)`, or for epsilon the value built
    /// from the first `k + 1` partial sums.
    pub orders: Vec<Option<S>>,
}

impl<S: Scalar> Grid<S> {
    /// Highest valid `k` in the first column.
    pub fn recommended(&self) -> Option<(usize, S)> {
        self.first_column().pop()
    }

    pub fn first_column(&self) -> Vec<(usize, S)> {
        self.rows
            .iter()
            .enumerate()
            .filter_map(|(k, row)| Some((k, row.first()?.value.clone()?)))
            .collect()
    }

    /// `|T_last − T_previous|` over the valid first-column entries.
    pub fn error_estimate(&self) -> Option<S> {
        let col = self.first_column();
        match col.as_slice() {
            [.., (_, a), (_, b)] => Some((b.clone() - a.clone()).abs()),
            _ => None,
        }
    }
}

/// Runs `method` on `s` through order `k_max`.
pub fn run<S: Scalar>(method: Method, params: &Params<S>, s: &Sequence<S>, k_max: usize) -> CliResult<Grid<S>> {
    match method {
        Method::Omega { family, variant } => {
            let est = match variant {
                Variant::Standard(kind) => RemainderEstimator::standard(kind),
                Variant::ExplicitOmega => RemainderEstimator::Explicit(params.omega.clone().unwrap_or_default()),
            };
            let table = transform_family(&params.family(family), s, &est, k_max, &ZeroPolicy::default())?;
            let rows: Vec<Vec<Cell<S>>> = table
                .rows
                .into_iter()
                .map(|row| {
                    row.into_iter()
                        .map(|e| Cell {
                            value: e.value,
                            denominator: Some(e.denominator),
                            denominator_magnitude: Some(e.scale),
                        })
                        .collect()
                })
                .collect();
            let orders = rows.iter().map(|r| r.first().and_then(|c| c.value.clone())).collect();
            Ok(Grid { start: s.start(), rows, orders })
        }
        Method::Richardson(kind) => {
            let tri = params.richardson(kind).table(s, k_max)?;
            let rows: Vec<Vec<Cell<S>>> = tri
                .into_iter()
                .map(|row| {
                    row.into_iter()
                        .map(|v| Cell { value: Some(v), denominator: None, denominator_magnitude: None })
                        .collect()
                })
                .collect();
            let orders = rows.iter().map(|r| r.first().and_then(|c| c.value.clone())).collect();
            Ok(Grid { start: s.start(), rows, orders })
        }
        Method::Epsilon => {
            let eps = pade_epsilon(s.values(), &ZeroPolicy::default());
            let rows = (0..=k_max)
                .map(|k| {
                    eps.columns[2 * k]
                        .iter()
                        .map(|v| Cell { value: v.clone(), denominator: None, denominator_magnitude: None })
                        .collect()
                })
                .collect();
            let orders = (0..s.len()).map(|m| eps.using_first(m).cloned()).collect();
            Ok(Grid { start: s.start(), rows, orders })
        }
    }
}
