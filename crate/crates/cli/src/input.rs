use std::path::PathBuf;

use clap::{Args, ValueEnum};
use serde_json::{json, Map, Value};
use subconc::rational::parse_rational;
use subconc::{BernoulliProduct, Error, FunctionFile, Generated, GeneratorSpec, Rational, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GeneratorName {
    ThreeElement,
    DirectedEdge,
    DirectedCut,
    Staircase,
    CardinalityRelu,
    Coverage,
    UniformMatroidRank,
    BudgetAdditive,
    Additive,
    ExplicitTable,
}

impl GeneratorName {
    fn label(self) -> &'static str {
        match self {
            GeneratorName::ThreeElement => "three-element",
            GeneratorName::DirectedEdge => "directed-edge",
            GeneratorName::DirectedCut => "directed-cut",
            GeneratorName::Staircase => "staircase",
            GeneratorName::CardinalityRelu => "cardinality-relu",
            GeneratorName::Coverage => "coverage",
            GeneratorName::UniformMatroidRank => "uniform-matroid-rank",
            GeneratorName::BudgetAdditive => "budget-additive",
            GeneratorName::Additive => "additive",
            GeneratorName::ExplicitTable => "explicit-table",
        }
    }

    fn flags(self) -> &'static [&'static str] {
        match self {
            GeneratorName::ThreeElement => &["top"],
            GeneratorName::DirectedEdge => &[],
            GeneratorName::DirectedCut => &["n", "edges"],
            GeneratorName::Staircase | GeneratorName::CardinalityRelu => &["n"],
            GeneratorName::Coverage => &["weights", "sets"],
            GeneratorName::UniformMatroidRank => &["n", "k"],
            GeneratorName::BudgetAdditive => &["weights", "budget"],
            GeneratorName::Additive => &["weights"],
            GeneratorName::ExplicitTable => &["values"],
        }
    }
}

/// Where the set function comes from: a JSON file or generator flags.
#[derive(Debug, Clone, Args)]
pub struct FunctionArgs {
    /// JSON function file (table or generator spec).
    #[arg(long, value_name = "PATH", conflicts_with = "generator")]
    pub input: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub generator: Option<GeneratorName>,
    /// Value of the full set for three-element.
    #[arg(long)]
    pub top: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    /// Comma-separated rationals.
    #[arg(long, value_delimiter = ',')]
    pub weights: Option<Vec<String>>,
    #[arg(long)]
    pub budget: Option<String>,
    /// Universe items per element, e.g. `0,1;1,2;2` (items are 0-based).
    #[arg(long)]
    pub sets: Option<String>,
    /// Directed edges `FROM-TO[:WEIGHT]`, comma-separated, e.g. `1-2,2-3:1/2`.
    #[arg(long)]
    pub edges: Option<String>,
    /// Full table in bitmask order, comma-separated rationals.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub values: Option<Vec<String>>,
}

pub struct Loaded {
    pub spec: Option<GeneratorSpec>,
    pub function: Generated,
}

impl Loaded {
    pub fn describe(&self) -> Value {
        json!({
            "n": self.function.n(),
            "spec": self.spec.as_ref().map(|s| serde_json::to_value(s).expect("serializable")),
        })
    }
}

impl FunctionArgs {
    fn given(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.top.is_some() {
            out.push("top");
        }
        if self.n.is_some() {
            out.push("n");
        }
        if self.k.is_some() {
            out.push("k");
        }
        if self.weights.is_some() {
            out.push("weights");
        }
        if self.budget.is_some() {
            out.push("budget");
        }
        if self.sets.is_some() {
            out.push("sets");
        }
        if self.edges.is_some() {
            out.push("edges");
        }
        if self.values.is_some() {
            out.push("values");
        }
        out
    }

    pub fn load(&self) -> Result<Loaded> {
        if let Some(path) = &self.input {
            if let Some(flag) = self.given().first() {
                return Err(Error::Input(format!(
                    "--{flag} cannot be combined with --input"
                )));
            }
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
            let file = FunctionFile::from_json(&text)?;
            let function = file.load()?;
            let spec = match file {
                FunctionFile::Generator(spec) => Some(spec),
                FunctionFile::Table { .. } => None,
            };
            return Ok(Loaded { spec, function });
        }
        let Some(name) = self.generator else {
            return Err(Error::Input(
                "give either --input PATH or --generator NAME".into(),
            ));
        };
        let spec = self.spec(name)?;
        let function = spec.generate()?;
        Ok(Loaded {
            spec: Some(spec),
            function,
        })
    }

    fn spec(&self, name: GeneratorName) -> Result<GeneratorSpec> {
        let allowed = name.flags();
        for flag in self.given() {
            if !allowed.contains(&flag) {
                return Err(Error::Input(format!(
                    "--{flag} is not used by {}",
                    name.label()
                )));
            }
        }
        let missing = |flag: &str| Error::Input(format!("{} needs --{flag}", name.label()));
        let mut params = Map::new();
        for &flag in allowed {
            let value = match flag {
                "top" => self.top.clone().map(Value::String),
                "budget" => self.budget.clone().map(Value::String),
                "n" => self.n.map(Value::from),
                "k" => self.k.map(Value::from),
                "weights" => self.weights.as_ref().map(|w| strings(w)),
                "values" => self.values.as_ref().map(|v| strings(v)),
                "sets" => self.sets.as_deref().map(parse_sets).transpose()?,
                "edges" => self.edges.as_deref().map(parse_edges).transpose()?,
                _ => unreachable!("flag table is closed"),
            };
            params.insert(flag.into(), value.ok_or_else(|| missing(flag))?);
        }
        let mut object = Map::new();
        object.insert("generator".into(), Value::String(name.label().into()));
        if !params.is_empty() {
            object.insert("params".into(), Value::Object(params));
        }
        serde_json::from_value(Value::Object(object))
            .map_err(|e| Error::Input(format!("{}: {e}", name.label())))
    }
}

fn strings(items: &[String]) -> Value {
    Value::Array(
        items
            .iter()
            .map(|s| Value::String(s.trim().into()))
            .collect(),
    )
}

fn parse_sets(text: &str) -> Result<Value> {
    let sets = text
        .split(';')
        .map(|set| {
            set.split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|item| {
                    item.parse::<usize>()
                        .map(Value::from)
                        .map_err(|_| Error::Input(format!("--sets: bad item {item:?}")))
                })
                .collect::<Result<Vec<_>>>()
                .map(Value::Array)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Value::Array(sets))
}

fn parse_edges(text: &str) -> Result<Value> {
    let edges = text
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|edge| {
            let bad = || Error::Input(format!("--edges: expected FROM-TO[:WEIGHT], got {edge:?}"));
            let (ends, weight) = edge.split_once(':').unwrap_or((edge, "1"));
            let (from, to) = ends.split_once('-').ok_or_else(bad)?;
            let from: usize = from.trim().parse().map_err(|_| bad())?;
            let to: usize = to.trim().parse().map_err(|_| bad())?;
            Ok(json!({"from": from, "to": to, "weight": weight.trim()}))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Value::Array(edges))
}

/// Coordinate probabilities: `--p` for all coordinates or `--probs` per coordinate.
#[derive(Debug, Clone, Args)]
pub struct ProbabilityArgs {
    /// Common success probability.
    #[arg(long, default_value = "1/2", conflicts_with = "probs")]
    pub p: String,
    /// One probability per coordinate, comma-separated.
    #[arg(long, value_delimiter = ',')]
    pub probs: Option<Vec<String>>,
}

impl ProbabilityArgs {
    pub fn product(&self, n: usize) -> Result<BernoulliProduct> {
        match &self.probs {
            Some(list) => {
                if list.len() != n {
                    return Err(Error::DimensionMismatch {
                        expected: n,
                        actual: list.len(),
                    });
                }
                BernoulliProduct::new(
                    list.iter()
                        .map(|s| parse_rational(s))
                        .collect::<Result<_>>()?,
                )
            }
            None => BernoulliProduct::uniform(n, parse_rational(&self.p)?),
        }
    }
}

pub fn rationals(items: &[String]) -> Result<Vec<Rational>> {
    items.iter().map(|s| parse_rational(s)).collect()
}
