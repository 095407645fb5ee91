//! Set functions over a small ground set, stored as dense tables of exact
//! rationals, plus cardinality-only (symmetric) functions for large `n`.

use num::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{integer, Exact, Rational};
use crate::subset::Subset;

/// Largest ground set a dense table may have.
pub const MAX_DENSE_N: usize = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct GroundSet {
    n: usize,
}

impl GroundSet {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_DENSE_N {
            return Err(Error::Construction(format!(
                "dense ground set needs 1 <= n <= {MAX_DENSE_N}, got {n}"
            )));
        }
        Ok(GroundSet { n })
    }

    pub fn n(self) -> usize {
        self.n
    }

    /// Number of subsets, `2^n`.
    pub fn size(self) -> usize {
        1 << self.n
    }

    pub fn full(self) -> Subset {
        Subset::full(self.n)
    }

    pub fn subsets(self) -> impl Iterator<Item = Subset> {
        (0..self.size() as u32).map(Subset)
    }
}

/// `f: 2^[n] -> Q`, one value per bitmask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFunction {
    ground: GroundSet,
    values: Vec<Rational>,
}

impl SetFunction {
    pub fn new(n: usize, values: Vec<Rational>) -> Result<Self> {
        let ground = GroundSet::new(n)?;
        if values.len() != ground.size() {
            return Err(Error::Input(format!(
                "values array for n = {n} must have length 2^{n} = {}, got {}",
                ground.size(),
                values.len()
            )));
        }
        Ok(SetFunction { ground, values })
    }

    /// Table with `n` inferred from the length, which must be `2^n`, `n >= 1`.
    pub fn from_table(values: Vec<Rational>) -> Result<Self> {
        let len = values.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::Input(format!(
                "table length must be 2^n with n >= 1, got {len}"
            )));
        }
        Self::new(len.trailing_zeros() as usize, values)
    }

    pub fn from_fn(n: usize, mut value: impl FnMut(Subset) -> Rational) -> Result<Self> {
        let ground = GroundSet::new(n)?;
        let values = ground.subsets().map(&mut value).collect();
        Ok(SetFunction { ground, values })
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn n(&self) -> usize {
        self.ground.n
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// Unchecked lookup; `s` must lie inside the ground set.
    #[inline]
    pub fn value(&self, s: Subset) -> &Rational {
        &self.values[s.index()]
    }

    pub fn evaluate(&self, s: Subset) -> Result<&Rational> {
        self.values.get(s.index()).ok_or_else(|| {
            Error::Input(format!(
                "bitmask {} out of range for n = {}",
                s.bits(),
                self.n()
            ))
        })
    }

    /// `f(S + j) - f(S)` for an element label `j` not in `S`.
    pub fn marginal(&self, s: Subset, j: usize) -> Result<Rational> {
        self.evaluate(s)?;
        if j == 0 || j > self.n() {
            return Err(Error::Input(format!(
                "element {j} outside ground set 1..={}",
                self.n()
            )));
        }
        if s.contains(j) {
            return Err(Error::Input(format!("element {j} already in {s}")));
        }
        Ok(self.value(s.with(j)) - self.value(s))
    }

    /// Largest absolute marginal value; zero for constant functions.
    pub fn lipschitz_constant(&self) -> Rational {
        let mut best = Rational::zero();
        for s in self.ground.subsets() {
            for j in 1..=self.n() {
                if !s.contains(j) {
                    let d = (self.value(s.with(j)) - self.value(s)).abs();
                    if d > best {
                        best = d;
                    }
                }
            }
        }
        best
    }

    pub fn scaled(&self, factor: &Rational) -> SetFunction {
        SetFunction {
            ground: self.ground,
            values: self.values.iter().map(|v| v * factor).collect(),
        }
    }

    /// Rescale so that `lipschitz_constant() <= 1`; unchanged if already so.
    pub fn normalized_to_unit_lipschitz(&self) -> SetFunction {
        let c = self.lipschitz_constant();
        if c > Rational::from_integer(1.into()) {
            self.scaled(&c.recip())
        } else {
            self.clone()
        }
    }
}

/// A function of `|S|` alone: `f(S) = levels[|S|]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricSetFunction {
    n: usize,
    levels: Vec<Rational>,
}

impl SymmetricSetFunction {
    pub fn new(n: usize, levels: Vec<Rational>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Construction(
                "symmetric function needs n >= 1".into(),
            ));
        }
        if levels.len() != n + 1 {
            return Err(Error::Construction(format!(
                "symmetric function on n = {n} needs {} levels, got {}",
                n + 1,
                levels.len()
            )));
        }
        Ok(SymmetricSetFunction { n, levels })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn levels(&self) -> &[Rational] {
        &self.levels
    }

    pub fn level(&self, cardinality: usize) -> &Rational {
        &self.levels[cardinality]
    }

    pub fn lipschitz_constant(&self) -> Rational {
        self.levels
            .windows(2)
            .map(|w| (&w[1] - &w[0]).abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }

    pub fn to_dense(&self) -> Result<SetFunction> {
        if self.n > MAX_DENSE_N {
            return Err(Error::Capacity {
                check: "dense table",
                n: self.n,
                max: MAX_DENSE_N,
            });
        }
        SetFunction::from_fn(self.n, |s| self.levels[s.len()].clone())
    }
}

/// Either representation, as produced by [`GeneratorSpec::generate`].
#[derive(Debug, Clone, PartialEq)]
pub enum Generated {
    Dense(SetFunction),
    Symmetric(SymmetricSetFunction),
}

impl Generated {
    pub fn n(&self) -> usize {
        match self {
            Generated::Dense(f) => f.n(),
            Generated::Symmetric(g) => g.n(),
        }
    }

    pub fn dense(&self) -> Option<&SetFunction> {
        match self {
            Generated::Dense(f) => Some(f),
            Generated::Symmetric(_) => None,
        }
    }

    pub fn into_dense(self) -> Result<SetFunction> {
        match self {
            Generated::Dense(f) => Ok(f),
            Generated::Symmetric(g) => g.to_dense(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedEdge {
    pub from: usize,
    pub to: usize,
    pub weight: Exact,
}

/// Named families of set functions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "generator", content = "params", rename_all = "kebab-case")]
pub enum GeneratorSpec {
    /// `f(empty) = 0`, `f(S) = 1` for `|S|` in {1, 2}, `f([3]) = top`.
    ThreeElement {
        top: Exact,
    },
    /// `f(x1, x2) = x1 (1 - x2)`, the cut of a single directed edge.
    DirectedEdge,
    /// Weighted directed cut: sum of `w(u, v)` over edges with `u in S`, `v not in S`.
    DirectedCut {
        n: usize,
        edges: Vec<WeightedEdge>,
    },
    /// Piecewise-cardinality function that is subadditive but not concentrated.
    Staircase {
        n: usize,
    },
    /// `f(S) = max(0, |S| - n/2)`.
    CardinalityRelu {
        n: usize,
    },
    /// Weighted coverage: element `i` covers universe items `sets[i - 1]`.
    Coverage {
        weights: Vec<Exact>,
        sets: Vec<Vec<usize>>,
    },
    /// `f(S) = min(|S|, k)`.
    UniformMatroidRank {
        n: usize,
        k: usize,
    },
    /// `f(S) = min(sum of weights in S, budget)`.
    BudgetAdditive {
        weights: Vec<Exact>,
        budget: Exact,
    },
    Additive {
        weights: Vec<Exact>,
    },
    ExplicitTable {
        values: Vec<Exact>,
    },
}

impl GeneratorSpec {
    pub fn three_element(top: Rational) -> Self {
        GeneratorSpec::ThreeElement { top: Exact(top) }
    }

    pub fn additive(weights: &[i64]) -> Self {
        GeneratorSpec::Additive {
            weights: weights.iter().map(|&w| Exact(integer(w))).collect(),
        }
    }

    /// Build the function. Staircase and CardinalityRelu come back symmetric
    /// when `n > 30`; everything else is a dense table.
    pub fn generate(&self) -> Result<Generated> {
        if let Some(g) = self.symmetric()? {
            return if g.n() > MAX_DENSE_N {
                Ok(Generated::Symmetric(g))
            } else {
                Ok(Generated::Dense(g.to_dense()?))
            };
        }
        self.dense().map(Generated::Dense)
    }

    /// Symmetric form of the cardinality-based generators (any `n`), `None`
    /// for the others.
    pub fn symmetric(&self) -> Result<Option<SymmetricSetFunction>> {
        match self {
            GeneratorSpec::Staircase { n } => staircase(*n).map(Some),
            GeneratorSpec::CardinalityRelu { n } => cardinality_relu(*n).map(Some),
            GeneratorSpec::UniformMatroidRank { n, k } => {
                check_n(*n)?;
                if k > n {
                    return Err(Error::Construction(format!(
                        "uniform matroid rank needs k <= n, got k = {k}, n = {n}"
                    )));
                }
                let levels = (0..=*n).map(|c| integer(c.min(*k) as i64)).collect();
                SymmetricSetFunction::new(*n, levels).map(Some)
            }
            _ => Ok(None),
        }
    }

    fn dense(&self) -> Result<SetFunction> {
        match self {
            GeneratorSpec::ThreeElement { top } => {
                let one = integer(1);
                let mut values = vec![one; 8];
                values[0] = Rational::zero();
                values[7] = top.0.clone();
                SetFunction::new(3, values)
            }
            GeneratorSpec::DirectedEdge => directed_cut(
                2,
                &[WeightedEdge {
                    from: 1,
                    to: 2,
                    weight: Exact(integer(1)),
                }],
            ),
            GeneratorSpec::DirectedCut { n, edges } => directed_cut(*n, edges),
            GeneratorSpec::Coverage { weights, sets } => coverage(weights, sets),
            GeneratorSpec::BudgetAdditive { weights, budget } => {
                check_n(weights.len())?;
                if weights.iter().any(|w| w.0.is_negative()) || budget.0.is_negative() {
                    return Err(Error::Construction(
                        "budget-additive weights and budget must be >= 0".into(),
                    ));
                }
                SetFunction::from_fn(weights.len(), |s| {
                    let total: Rational = s.elements().map(|e| &weights[e - 1].0).sum();
                    total.min(budget.0.clone())
                })
            }
            GeneratorSpec::Additive { weights } => {
                check_n(weights.len())?;
                SetFunction::from_fn(weights.len(), |s| {
                    s.elements().map(|e| &weights[e - 1].0).sum()
                })
            }
            GeneratorSpec::ExplicitTable { values } => {
                SetFunction::from_table(values.iter().map(|v| v.0.clone()).collect())
            }
            GeneratorSpec::Staircase { .. }
            | GeneratorSpec::CardinalityRelu { .. }
            | GeneratorSpec::UniformMatroidRank { .. } => self
                .symmetric()?
                .expect("cardinality generators are symmetric")
                .to_dense(),
        }
    }
}

fn check_n(n: usize) -> Result<()> {
    GroundSet::new(n).map(|_| ())
}

fn directed_cut(n: usize, edges: &[WeightedEdge]) -> Result<SetFunction> {
    check_n(n)?;
    for e in edges {
        if e.from == 0 || e.to == 0 || e.from > n || e.to > n || e.from == e.to {
            return Err(Error::Construction(format!(
                "edge ({}, {}) invalid for n = {n}",
                e.from, e.to
            )));
        }
        if e.weight.0.is_negative() {
            return Err(Error::Construction("edge weights must be >= 0".into()));
        }
    }
    SetFunction::from_fn(n, |s| {
        edges
            .iter()
            .filter(|e| s.contains(e.from) && !s.contains(e.to))
            .map(|e| &e.weight.0)
            .sum()
    })
}

fn coverage(weights: &[Exact], sets: &[Vec<usize>]) -> Result<SetFunction> {
    check_n(sets.len())?;
    if weights.iter().any(|w| w.0.is_negative()) {
        return Err(Error::Construction("coverage weights must be >= 0".into()));
    }
    if let Some(bad) = sets.iter().flatten().find(|&&item| item >= weights.len()) {
        return Err(Error::Construction(format!(
            "coverage item {bad} out of range for {} universe weights",
            weights.len()
        )));
    }
    SetFunction::from_fn(sets.len(), |s| {
        let mut covered = vec![false; weights.len()];
        for e in s.elements() {
            for &item in &sets[e - 1] {
                covered[item] = true;
            }
        }
        covered
            .iter()
            .zip(weights)
            .filter(|(c, _)| **c)
            .map(|(_, w)| &w.0)
            .sum()
    })
}

fn exact_sqrt(n: usize) -> Option<usize> {
    let r = (n as f64).sqrt().round() as usize;
    (r.saturating_sub(1)..=r + 1).find(|&c| c * c == n)
}

/// Levels of the staircase on `n = r^2` elements:
/// `|S|` below `r`, flat at `r` up to `(n - r)/2`, slope one until
/// `(n + r)/2`, then flat at `2r`.
pub fn staircase(n: usize) -> Result<SymmetricSetFunction> {
    // Below r = 3 the flat piece starts after it ends and the levels jump by 2.
    let root = exact_sqrt(n).filter(|&r| r >= 3).ok_or_else(|| {
        Error::Construction(format!("staircase needs a perfect-square n >= 9, got {n}"))
    })?;
    // n - root = root (root - 1) is even, so both breakpoints are integers.
    let low = (n - root) / 2;
    let high = (n + root) / 2;
    let levels = (0..=n)
        .map(|k| {
            let v = if k < root {
                k
            } else if k <= low {
                root
            } else if k < high {
                root + k - low
            } else {
                2 * root
            };
            integer(v as i64)
        })
        .collect();
    SymmetricSetFunction::new(n, levels)
}

/// `max(0, |S| - n/2)` on `n` elements.
pub fn cardinality_relu(n: usize) -> Result<SymmetricSetFunction> {
    if n == 0 {
        return Err(Error::Construction("cardinality-relu needs n >= 1".into()));
    }
    let half = Rational::new((n as i64).into(), 2.into());
    let levels = (0..=n)
        .map(|k| (integer(k as i64) - &half).max(Rational::zero()))
        .collect();
    SymmetricSetFunction::new(n, levels)
}

/// On-disk description of a function: an explicit table or a generator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FunctionFile {
    Table { n: usize, values: Vec<Exact> },
    Generator(GeneratorSpec),
}

impl FunctionFile {
    /// Parse the JSON function file. Syntax errors carry line and column.
    pub fn from_json(text: &str) -> Result<Self> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| Error::Input(format!("invalid JSON: {e}")))?;
        let object = value
            .as_object()
            .ok_or_else(|| Error::Input("function file must be a JSON object".into()))?;
        if object.contains_key("generator") {
            serde_json::from_value::<GeneratorSpec>(value)
                .map(FunctionFile::Generator)
                .map_err(|e| Error::Input(format!("generator spec: {e}")))
        } else {
            #[derive(Deserialize)]
            #[serde(deny_unknown_fields)]
            struct Table {
                n: usize,
                values: Vec<Exact>,
            }
            let t: Table = serde_json::from_value(value)
                .map_err(|e| Error::Input(format!("table file: {e}")))?;
            Ok(FunctionFile::Table {
                n: t.n,
                values: t.values,
            })
        }
    }

    pub fn load(&self) -> Result<Generated> {
        match self {
            FunctionFile::Table { n, values } => {
                SetFunction::new(*n, values.iter().map(|v| v.0.clone()).collect())
                    .map(Generated::Dense)
            }
            FunctionFile::Generator(spec) => spec.generate(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rational;

    fn dense(spec: GeneratorSpec) -> SetFunction {
        spec.generate().unwrap().into_dense().unwrap()
    }

    #[test]
    fn directed_edge_values_and_marginals() {
        let f = dense(GeneratorSpec::DirectedEdge);
        assert_eq!(f.evaluate(Subset::from_elements([1])).unwrap(), &integer(1));
        assert_eq!(f.evaluate(Subset::EMPTY).unwrap(), &integer(0));
        assert_eq!(f.marginal(Subset::EMPTY, 1).unwrap(), integer(1));
        assert_eq!(
            f.marginal(Subset::from_elements([2]), 1).unwrap(),
            integer(0)
        );
        assert!(f.evaluate(Subset(4)).is_err());
        assert!(f.marginal(Subset::from_elements([1]), 1).is_err());
        assert!(f.marginal(Subset::EMPTY, 3).is_err());
    }

    #[test]
    fn staircase_16() {
        let g = staircase(16).unwrap();
        let expect = [0, 1, 2, 3, 4, 4, 4, 5, 6, 7, 8, 8, 8, 8, 8, 8, 8];
        let got: Vec<Rational> = g.levels().to_vec();
        assert_eq!(got, expect.iter().map(|&v| integer(v)).collect::<Vec<_>>());
        let f = g.to_dense().unwrap();
        let eight = Subset((1 << 8) - 1);
        assert_eq!(f.evaluate(eight).unwrap(), &integer(6));
        assert_eq!(f.lipschitz_constant(), integer(1));
        assert!(staircase(15).is_err());
        assert!(staircase(4).is_err());
        assert!(staircase(0).is_err());
    }

    #[test]
    fn staircase_large_is_symmetric() {
        let spec = GeneratorSpec::Staircase { n: 10_000 };
        match spec.generate().unwrap() {
            Generated::Symmetric(g) => {
                assert_eq!(g.level(4950), &integer(100));
                assert_eq!(g.level(4951), &integer(101));
                assert_eq!(g.level(5049), &integer(199));
                assert_eq!(g.level(5050), &integer(200));
                assert_eq!(g.lipschitz_constant(), integer(1));
            }
            other => panic!("expected symmetric, got {other:?}"),
        }
    }

    #[test]
    fn three_element_table() {
        let f = dense(GeneratorSpec::three_element(rational(3, 2)));
        let mut expect = vec![integer(1); 8];
        expect[0] = integer(0);
        expect[7] = rational(3, 2);
        assert_eq!(f.values(), expect.as_slice());
    }

    #[test]
    fn additive_tables() {
        let f = dense(GeneratorSpec::additive(&[1, 1]));
        assert_eq!(
            f.values(),
            &[integer(0), integer(1), integer(1), integer(2)]
        );
        let f = dense(GeneratorSpec::additive(&[2, 3]));
        assert_eq!(f.marginal(Subset::EMPTY, 2).unwrap(), integer(3));
        assert_eq!(f.lipschitz_constant(), integer(3));
        assert_eq!(
            dense(GeneratorSpec::additive(&[2, 1])).lipschitz_constant(),
            integer(2)
        );
        assert_eq!(
            dense(GeneratorSpec::additive(&[1, 1, 1])).lipschitz_constant(),
            integer(1)
        );
    }

    #[test]
    fn constant_function_has_zero_lipschitz() {
        let f = SetFunction::from_fn(4, |_| integer(7)).unwrap();
        assert_eq!(f.lipschitz_constant(), integer(0));
    }

    #[test]
    fn relu_values() {
        let g = cardinality_relu(5).unwrap();
        assert_eq!(g.level(2), &integer(0));
        assert_eq!(g.level(3), &rational(1, 2));
        assert_eq!(g.level(5), &rational(5, 2));
    }

    #[test]
    fn invalid_generators_rejected() {
        let bad = [
            GeneratorSpec::Coverage {
                weights: vec![Exact(integer(-1))],
                sets: vec![vec![0]],
            },
            GeneratorSpec::Coverage {
                weights: vec![Exact(integer(1))],
                sets: vec![vec![3]],
            },
            GeneratorSpec::UniformMatroidRank { n: 3, k: 4 },
            GeneratorSpec::Additive { weights: vec![] },
            GeneratorSpec::ExplicitTable {
                values: vec![Exact(integer(0)); 3],
            },
            GeneratorSpec::DirectedCut {
                n: 2,
                edges: vec![WeightedEdge {
                    from: 1,
                    to: 1,
                    weight: Exact(integer(1)),
                }],
            },
        ];
        for spec in bad {
            assert!(spec.generate().is_err(), "{spec:?} should be rejected");
        }
    }

    #[test]
    fn function_file_forms() {
        let t = FunctionFile::from_json(r#"{"n": 1, "values": [0, "1/3"]}"#).unwrap();
        let f = t.load().unwrap().into_dense().unwrap();
        assert_eq!(f.value(Subset(1)), &rational(1, 3));

        let g =
            FunctionFile::from_json(r#"{"generator": "three-element", "params": {"top": 1.5}}"#)
                .unwrap();
        let f = g.load().unwrap().into_dense().unwrap();
        assert_eq!(f.value(Subset(7)), &rational(3, 2));

        let e = FunctionFile::from_json(r#"{"generator": "directed-edge"}"#).unwrap();
        assert_eq!(e.load().unwrap().n(), 2);

        let err = FunctionFile::from_json(r#"{"n": 2, "values": [0, 1, 1]}"#)
            .unwrap()
            .load()
            .unwrap_err();
        assert!(err.to_string().contains("length 2^2 = 4"), "{err}");

        let err = FunctionFile::from_json("{\"n\": 2,\n \"values\": [0, 1,]}").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
    }
}
