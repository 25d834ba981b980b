//! One function per verb. Each returns the JSON document to print and
//! whether the run counts as a success.

use blowup_core::blowup::{blowup_polynomial, univariate, PolyJson};
use blowup_core::euclid::{is_euclidean, classify_blowup, SquaredDistanceMatrix};
use blowup_core::invariants::{
    is_complete_multipartite, is_nontrivial_blowup, isometry_group, polynomial_symmetries, recover_graph,
    tlorentz_report,
};
use blowup_core::matroid::{graph_infeasible_systems, linear_matroid, tree_matroid, verify_exchange, InfeasibleKind};
use blowup_core::monoid::selftest;
use blowup_core::rational::{format_rational, frac, pow};
use blowup_core::spectral::{
    distance_char_poly, line_restriction_sample, line_restriction_sample_homogenized, maxroot,
    smallest_eigenvalue_above_minus_two, spectrum_bridge_check,
};
use blowup_core::{Graph, MetricSpace, MultiAffinePoly, Rational, RootInterval};
use serde_json::{json, Value};

use crate::parse::{parse_graph_file, parse_metric_file, parse_squared_file, read};
use crate::{CliError, Command, ExchangeKind, Space, SpaceInput};

type Out = Result<(Value, bool), CliError>;

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn default_width() -> Rational {
    pow(&frac(1, 2), 40)
}

enum Loaded {
    Graph(Graph),
    Metric(MetricSpace),
}

fn load(space: &Space) -> Result<Loaded, CliError> {
    match (&space.graph, &space.metric) {
        (Some(path), None) => Ok(Loaded::Graph(parse_graph_file(path)?)),
        (None, Some(path)) => Ok(Loaded::Metric(parse_metric_file(path)?)),
        _ => Err(CliError::Usage("give exactly one of --graph, --metric".into())),
    }
}

fn metric_of(input: &SpaceInput) -> Result<MetricSpace, CliError> {
    let x = match load(&input.space)? {
        Loaded::Graph(g) => g.metric()?,
        Loaded::Metric(x) => x,
    };
    Ok(match &input.blowup {
        Some(n) => x.blowup(n)?,
        None => x,
    })
}

fn graph_of(input: &SpaceInput) -> Result<Graph, CliError> {
    let Loaded::Graph(g) = load(&input.space)? else {
        return Err(CliError::Usage("this operation needs --graph".into()));
    };
    Ok(match &input.blowup {
        Some(n) => g.blowup(n)?,
        None => g,
    })
}

fn graph_json(g: &Graph) -> Value {
    let edges: Vec<[usize; 2]> = g.edges().into_iter().map(|(u, v)| [u, v]).collect();
    json!({ "k": g.k(), "edges": edges })
}

fn interval_json(r: &RootInterval) -> Value {
    json!({ "lo": format_rational(&r.lo), "hi": format_rational(&r.hi), "exact": r.is_exact() })
}

fn polynomial(p: &MultiAffinePoly) -> Result<Value, CliError> {
    Ok(serde_json::to_value(p.to_json())?)
}

pub fn execute(cmd: &Command) -> Out {
    match cmd {
        Command::Poly(input) => Ok((polynomial(&blowup_polynomial(&metric_of(input)?)?)?, true)),
        Command::Uni(input) => {
            let u = univariate(&metric_of(input)?)?;
            Ok((json!({ "coeffs": strings(u.coeffs()) }), true))
        }
        Command::Eval { input, at } => {
            let p = blowup_polynomial(&metric_of(input)?)?;
            let value = p.evaluate(at)?;
            Ok((json!({ "value": format_rational(&value) }), true))
        }
        Command::Matroid(input) => {
            let m = linear_matroid(&metric_of(input)?.modified_distance_matrix())?;
            Ok((serde_json::to_value(m.to_json())?, true))
        }
        Command::TreeMatroid(input) => {
            let m = tree_matroid(&parse_graph_file(&input.graph)?)?;
            Ok((serde_json::to_value(m.to_json())?, true))
        }
        Command::Exchange { input, kind } => exchange(input, *kind),
        Command::Recover { source } => {
            let p = match (&source.poly, &source.graph) {
                (Some(path), None) => {
                    let j: PolyJson = serde_json::from_str(&read(path)?)?;
                    MultiAffinePoly::from_json(&j)?
                }
                (None, Some(path)) => blowup_polynomial(&parse_graph_file(path)?.metric()?)?,
                _ => return Err(CliError::Usage("give exactly one of --poly, --graph".into())),
            };
            Ok((graph_json(&recover_graph(&p)?), true))
        }
        Command::Isom(input) => {
            let g = parse_graph_file(&input.graph)?;
            let group = isometry_group(&g)?;
            let sym = polynomial_symmetries(&blowup_polynomial(&g.metric()?)?)?;
            Ok((
                json!({
                    "k": group.k,
                    "order": group.order(),
                    "permutations": group.permutations,
                    "matches_polynomial_symmetries": group == sym,
                }),
                true,
            ))
        }
        Command::Multipartite(input) => {
            let g = parse_graph_file(&input.graph)?;
            Ok((
                json!({
                    "k": g.k(),
                    "parts": is_complete_multipartite(&g),
                    "twins": is_nontrivial_blowup(&g)?,
                }),
                true,
            ))
        }
        Command::Report { input, trials, seed } => {
            let r = tlorentz_report(&parse_graph_file(&input.graph)?, *trials, *seed)?;
            Ok((serde_json::to_value(r)?, true))
        }
        Command::Spectrum { input, width } => {
            let g = parse_graph_file(&input.graph)?;
            let width = width.clone().unwrap_or_else(default_width);
            let phi = distance_char_poly(&g)?;
            let smallest = smallest_eigenvalue_above_minus_two(&g, &width)?;
            Ok((
                json!({
                    "k": g.k(),
                    "char_poly": strings(phi.coeffs()),
                    "bridge_holds": spectrum_bridge_check(&g)?,
                    "smallest_above_minus_two": interval_json(&smallest),
                }),
                true,
            ))
        }
        Command::Maxroot { input, width } => {
            let width = width.clone().unwrap_or_else(default_width);
            Ok((interval_json(&maxroot(&metric_of(input)?, &width)?), true))
        }
        Command::StabSample { input, seed, trials, homogenized } => {
            let p = blowup_polynomial(&metric_of(input)?)?;
            let report = if *homogenized {
                line_restriction_sample_homogenized(&p.homogenize(), *trials, *seed)?
            } else {
                line_restriction_sample(&p, *trials, *seed)?
            };
            Ok((serde_json::to_value(report)?, true))
        }
        Command::Euclid { space, squared, blowup } => {
            let sq = match (&space.graph, &space.metric, squared) {
                (None, Some(path), true) => parse_squared_file(path)?,
                _ => match load(space)? {
                    Loaded::Graph(g) => SquaredDistanceMatrix::from_metric(&g.metric()?),
                    Loaded::Metric(x) => SquaredDistanceMatrix::from_metric(&x),
                },
            };
            let value = match blowup {
                Some(n) => serde_json::to_value(classify_blowup(&sq, n)?)?,
                None => serde_json::to_value(is_euclidean(&sq)?)?,
            };
            Ok((value, true))
        }
        Command::Blowup { space, blowup } => match load(space)? {
            Loaded::Graph(g) => Ok((graph_json(&g.blowup(blowup)?), true)),
            Loaded::Metric(x) => {
                let b = x.blowup(blowup)?;
                let dist: Vec<Vec<String>> = (0..b.k())
                    .map(|i| (0..b.k()).map(|j| format_rational(b.d(i, j))).collect())
                    .collect();
                Ok((json!({ "k": b.k(), "dist": dist }), true))
            }
        },
        Command::MonoidSelftest { seed, count } => {
            let report = selftest(*seed, *count)?;
            let passed = report.passed();
            let mut value = serde_json::to_value(report)?;
            value["passed"] = Value::Bool(passed);
            Ok((value, passed))
        }
    }
}

fn exchange(input: &SpaceInput, kind: ExchangeKind) -> Out {
    let d = match kind {
        ExchangeKind::Linear => linear_matroid(&metric_of(input)?.modified_distance_matrix())?,
        ExchangeKind::Tree => tree_matroid(&graph_of(input)?)?,
        ExchangeKind::First => graph_infeasible_systems(&graph_of(input)?, InfeasibleKind::First)?,
        ExchangeKind::Second => graph_infeasible_systems(&graph_of(input)?, InfeasibleKind::Second)?,
    };
    let witness = verify_exchange(&d)?;
    Ok((
        json!({
            "k": d.k(),
            "feasible_count": d.feasible().len(),
            "delta_matroid": witness.is_none(),
            "witness": witness,
        }),
        true,
    ))
}

