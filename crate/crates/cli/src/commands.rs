use num::integer::Roots;
use serde_json::{json, Map, Value};
use subconc::bounds::{
    self, chernoff_lower, chernoff_upper, min_deviation_for_target, subadditive_tail,
    SubadditiveTailQuery,
};
use subconc::dist::{
    exact_distribution, moments, sample, symmetric_distribution, tail_table, MAX_EXACT_N,
};
use subconc::rational::{format_rational, integer, parse_rational, rational};
use subconc::selfbound::{certify, min_extension, minimal_a, minimal_a_symmetric, MAX_SELFBOUND_N};
use subconc::setfn::staircase;
use subconc::{
    classify as classify_fn, BoundSpec, Deviation, Distribution, Error, Generated,
    SelfBoundingParams, TailQuery, UpperForm,
};

use crate::input::{rationals, FunctionArgs};
use crate::output::{CliError, Report};
use crate::{BoundArgs, BoundName, SelfboundArgs, TailsArgs};

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

pub fn classify(function: &FunctionArgs) -> Result<Report, CliError> {
    let loaded = function.load()?;
    let describe = loaded.describe();
    let f = loaded.function.into_dense()?;
    let report = classify_fn(&f);
    Ok(Report::new(
        "classify",
        json!({"function": describe, "result": report.to_json()}),
    ))
}

pub fn selfbound(args: &SelfboundArgs) -> Result<Report, CliError> {
    if args.a.is_none() && !args.minimal_a {
        return Err(Error::Input("give --a A, --minimal-a, or both".into()).into());
    }
    let loaded = args.function.load()?;
    let b = parse_rational(&args.b)?;
    let mut result = Map::new();
    result.insert("b".into(), format_rational(&b).into());
    match &loaded.function {
        Generated::Symmetric(g) => {
            if args.a.is_some() {
                return Err(Error::Capacity {
                    check: "self-bounding certification",
                    n: g.n(),
                    max: MAX_SELFBOUND_N,
                }
                .into());
            }
            result.insert("point_kind".into(), "cardinality".into());
            result.insert("minimal_a".into(), to_value(&minimal_a_symmetric(g, &b)?));
        }
        Generated::Dense(f) => {
            let witness = min_extension(f)?;
            result.insert("point_kind".into(), "subset".into());
            if args.minimal_a {
                result.insert("minimal_a".into(), to_value(&minimal_a(f, &witness, &b)?));
            }
            if let Some(a) = &args.a {
                let params = SelfBoundingParams::new(parse_rational(a)?, b.clone())?;
                result.insert(
                    "certification".into(),
                    to_value(&certify(f, &witness, &params)?),
                );
            }
        }
    }
    Ok(Report::new(
        "selfbound",
        json!({"function": loaded.describe(), "result": result}),
    ))
}

pub fn bound(args: &BoundArgs) -> Result<Report, CliError> {
    let missing = |flag: &str| CliError::Core(Error::Input(format!("this bound needs --{flag}")));
    let unused =
        |flag: &str| CliError::Core(Error::Input(format!("--{flag} is not used by this bound")));
    if args.name == BoundName::SubadditiveTail {
        for (flag, given) in [
            ("mean", args.mean.is_some()),
            ("delta", args.delta.is_some()),
            ("t", args.t.is_some()),
            ("a", args.a.is_some()),
            ("b", args.b.is_some()),
        ] {
            if given {
                return Err(unused(flag));
            }
        }
        let query = SubadditiveTailQuery {
            threshold: args.threshold.ok_or_else(|| missing("threshold"))?,
            p_below: args.p_below.ok_or_else(|| missing("p-below"))?,
            q: args.q,
            k: args.k.ok_or_else(|| missing("k"))?,
        };
        let value = subadditive_tail(&query, args.strict_hypothesis)?;
        return Ok(Report::new(
            "bound",
            json!({
                "bound_name": "subadditive-tail",
                "bound": value.bound,
                "log_bound": value.log_bound,
                "event_threshold": value.event_threshold,
                "hypothesis_met": value.hypothesis_met,
                "params": {
                    "threshold": query.threshold,
                    "p_below": query.p_below,
                    "q": query.q,
                    "k": query.k,
                    "strict_hypothesis": args.strict_hypothesis,
                },
            }),
        ));
    }
    for (flag, given) in [
        ("threshold", args.threshold.is_some()),
        ("p-below", args.p_below.is_some()),
        ("k", args.k.is_some()),
        ("strict-hypothesis", args.strict_hypothesis),
    ] {
        if given {
            return Err(unused(flag));
        }
    }
    let mean = args.mean.ok_or_else(|| missing("mean"))?;
    let deviation = match (args.delta, args.t) {
        (Some(d), None) => Deviation::Relative(d),
        (None, Some(t)) => Deviation::Absolute(t),
        _ => return Err(missing("delta or --t")),
    };
    let (label, spec) = match args.name {
        BoundName::ChernoffUpper => ("chernoff-upper", BoundSpec::ChernoffUpper),
        BoundName::ChernoffLower => ("chernoff-lower", BoundSpec::ChernoffLower),
        BoundName::AltUpper => ("alt-upper", BoundSpec::AltUpper),
        BoundName::AbUpper | BoundName::AbLower => {
            let a = args.a.ok_or_else(|| missing("a"))?;
            let b = args.b.unwrap_or(0.0);
            if args.name == BoundName::AbUpper {
                ("ab-upper", BoundSpec::AbUpper { a, b })
            } else {
                ("ab-lower", BoundSpec::AbLower { a, b })
            }
        }
        BoundName::SubadditiveTail => unreachable!("handled above"),
    };
    if !matches!(spec, BoundSpec::AbUpper { .. } | BoundSpec::AbLower { .. }) {
        if args.a.is_some() {
            return Err(unused("a"));
        }
        if args.b.is_some() {
            return Err(unused("b"));
        }
    }
    let query = TailQuery::new(mean, deviation, spec.side())?;
    let value = bounds::evaluate(spec, &query)?;
    let mut params = json!({"mean": mean, "delta": query.delta(), "t": query.t()});
    if let BoundSpec::AbUpper { a, b } | BoundSpec::AbLower { a, b } = spec {
        params["a"] = a.into();
        params["b"] = b.into();
    }
    Ok(Report::new(
        "bound",
        json!({
            "bound_name": label,
            "bound": value.bound,
            "log_bound": value.log_bound,
            "params": params,
        }),
    ))
}

fn method(d: &Distribution, sampled: bool) -> &'static str {
    if sampled {
        "sampled"
    } else if d.is_exact() {
        "exact"
    } else {
        "float"
    }
}

pub fn tails(args: &TailsArgs, seed: u64) -> Result<Report, CliError> {
    let loaded = args.function.load()?;
    let n = loaded.function.n();
    let bp = args.probs.product(n)?;
    let deltas = rationals(&args.deltas)?;
    let specs = args
        .bounds
        .iter()
        .map(|s| BoundSpec::parse(s))
        .collect::<subconc::Result<Vec<_>>>()?;
    let mean_override = args.mean.as_deref().map(parse_rational).transpose()?;
    let symmetric = match (&loaded.function, &loaded.spec) {
        (Generated::Symmetric(g), _) => Some(g.clone()),
        (Generated::Dense(_), Some(spec)) => spec.symmetric()?,
        (Generated::Dense(_), None) => None,
    };
    let dist = match (args.samples, bp.common(), &symmetric, &loaded.function) {
        (Some(m), ..) => sample(&loaded.function, &bp, m, seed)?,
        (None, Some(p), Some(g), _) => symmetric_distribution(g, p)?,
        (None, _, _, Generated::Dense(f)) => exact_distribution(f, &bp)?,
        (None, None, _, Generated::Symmetric(_)) => {
            return Err(Error::Input(format!(
                "exact tails of a symmetric function with n = {n} need a common --p"
            ))
            .into())
        }
        (None, Some(_), None, Generated::Symmetric(_)) => unreachable!("symmetric form is present"),
    };
    let m = moments(&dist);
    let table = tail_table(&dist, mean_override.as_ref(), &deltas, &specs)?;
    let probabilities: Value = match bp.common() {
        Some(p) => format_rational(p).into(),
        None => bp.probabilities().iter().map(format_rational).collect(),
    };
    let mut summary = json!({
        "method": method(&dist, args.samples.is_some()),
        "mean": m.mean,
        "variance": m.variance,
        "std_dev": m.std_dev,
        "median": m.median,
        "support_size": dist.len(),
    });
    if n <= MAX_EXACT_N {
        summary["exact_mean"] = to_value(&m.exact_mean);
        summary["exact_variance"] = to_value(&m.exact_variance);
    }
    if let Some(samples) = args.samples {
        summary["samples"] = samples.into();
        summary["seed"] = seed.into();
    }
    let body = json!({
        "function": loaded.describe(),
        "probabilities": probabilities,
        "distribution": summary,
        "mean_override": mean_override.as_ref().map(format_rational),
        "table": table.to_json(),
    });
    Ok(Report::new("tails", body).with_csv(table.to_csv(), true))
}

pub fn counterexample(n: usize) -> Result<Report, CliError> {
    let g = staircase(n)?;
    let root = n.sqrt();
    let sqrt_n = integer(root as i64);
    let two_sqrt_n = integer(2 * root as i64);
    let dist = symmetric_distribution(&g, &rational(1, 2))?;
    let m = moments(&dist);

    let lower_prob = dist.lower_tail(&sqrt_n).0;
    let lower_delta = 1.0 - root as f64 / m.mean;
    let lower_bound = chernoff_lower(m.mean, lower_delta)?;
    let upper_prob = dist.upper_tail(&two_sqrt_n).0;
    let upper_delta = 2.0 * root as f64 / m.mean - 1.0;
    let upper_bound = chernoff_upper(m.mean, upper_delta)?;

    let dense = if n <= MAX_SELFBOUND_N {
        let f = g.to_dense()?;
        let w = min_extension(&f)?;
        to_value(&minimal_a(&f, &w, &integer(0))?)
    } else {
        Value::Null
    };
    let body = json!({
        "n": n,
        "sqrt_n": root,
        "p": "1/2",
        "method": method(&dist, false),
        "mean": m.mean,
        "std_dev": m.std_dev,
        "median": m.median,
        "pr_at_sqrt_n": dist.prob_of(&sqrt_n),
        "pr_at_two_sqrt_n": dist.prob_of(&two_sqrt_n),
        "lower_tail": {
            "event": "Z <= sqrt_n",
            "probability": lower_prob,
            "delta": lower_delta,
            "chernoff_lower": lower_bound,
            "violated": lower_prob > lower_bound.bound,
        },
        "upper_tail": {
            "event": "Z >= 2 sqrt_n",
            "probability": upper_prob,
            "delta": upper_delta,
            "chernoff_upper": upper_bound,
            "violated": upper_prob > upper_bound.bound,
        },
        "minimal_a": {
            "b": "0",
            "by_cardinality": to_value(&minimal_a_symmetric(&g, &integer(0))?),
            "dense": dense,
        },
    });
    Ok(Report::new("counterexample", body))
}

pub fn crossover(mean: f64, targets: &[f64]) -> Result<Report, CliError> {
    let mut rows = Vec::with_capacity(targets.len());
    let mut csv = String::from("target,chernoff_delta,chernoff_t,alt_t,chernoff_smaller\n");
    for &target in targets {
        let delta = min_deviation_for_target(UpperForm::Chernoff, mean, target)?;
        let alt = min_deviation_for_target(UpperForm::Alt, mean, target)?;
        let chernoff_t = delta * mean;
        let smaller = chernoff_t < alt;
        csv.push_str(&format!(
            "{target:?},{delta:?},{chernoff_t:?},{alt:?},{smaller}\n"
        ));
        rows.push(json!({
            "target": target,
            "chernoff_delta": delta,
            "chernoff_t": chernoff_t,
            "alt_t": alt,
            "chernoff_smaller": smaller,
        }));
    }
    Ok(Report::new("crossover", json!({"mean": mean, "rows": rows})).with_csv(csv, false))
}
