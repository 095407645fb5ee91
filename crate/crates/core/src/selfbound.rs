//! Self-bounding and (a, b)-self-bounding certification on the hypercube.
//!
//! A point `x ∈ {0,1}^n` is a [`Subset`]; `x^(i)` drops coordinate `i`.
//! The witness functions `f_i` are stored as `n` tables over `{0,1}^(n-1)`.

use num::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{Exact, Rational};
use crate::setfn::{SetFunction, SymmetricSetFunction};
use crate::subset::Subset;

pub const MAX_SELFBOUND_N: usize = 24;

/// Index of `x^(i)` in a table over `{0,1}^(n-1)`.
#[inline]
fn drop_coordinate(x: Subset, i: usize) -> usize {
    let bits = x.bits();
    let low = bits & ((1u32 << (i - 1)) - 1);
    let high = (bits >> i) << (i - 1);
    (low | high) as usize
}

/// Inverse of [`drop_coordinate`] with coordinate `i` set to `value`.
#[inline]
fn insert_coordinate(reduced: usize, i: usize, value: bool) -> Subset {
    let r = reduced as u32;
    let low = r & ((1u32 << (i - 1)) - 1);
    let high = (r >> (i - 1)) << i;
    Subset(low | high | (u32::from(value) << (i - 1)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelfBoundingWitness {
    n: usize,
    tables: Vec<Vec<Rational>>,
    /// `true` where the minimum over `x_i` is attained only at `x_i = 1`.
    argmin_one: Vec<Vec<bool>>,
}

impl SelfBoundingWitness {
    /// Wrap externally chosen `f_i` tables (`n` tables of `2^(n-1)` values).
    pub fn from_tables(n: usize, tables: Vec<Vec<Rational>>) -> Result<Self> {
        if n == 0 || n > MAX_SELFBOUND_N {
            return Err(Error::Capacity {
                check: "self-bounding witness",
                n,
                max: MAX_SELFBOUND_N,
            });
        }
        if tables.len() != n || tables.iter().any(|t| t.len() != 1 << (n - 1)) {
            return Err(Error::Input(format!(
                "witness for n = {n} needs {n} tables of {} values",
                1usize << (n - 1)
            )));
        }
        let argmin_one = tables.iter().map(|t| vec![false; t.len()]).collect();
        Ok(SelfBoundingWitness {
            n,
            tables,
            argmin_one,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `f_i(x^(i))` for coordinate `i` in `1..=n`.
    pub fn value(&self, i: usize, x: Subset) -> &Rational {
        &self.tables[i - 1][drop_coordinate(x, i)]
    }

    /// Whether the min-extension minimum at `x^(i)` sits at `x_i = 1`
    /// (ties go to `x_i = 0`).
    pub fn argmin_is_one(&self, i: usize, x: Subset) -> bool {
        self.argmin_one[i - 1][drop_coordinate(x, i)]
    }
}

/// `f_i(x^(i)) = min over x_i of f(x)`.
pub fn min_extension(f: &SetFunction) -> Result<SelfBoundingWitness> {
    let n = f.n();
    if n > MAX_SELFBOUND_N {
        return Err(Error::Capacity {
            check: "min-extension witness",
            n,
            max: MAX_SELFBOUND_N,
        });
    }
    let half = 1usize << (n - 1);
    let mut tables = Vec::with_capacity(n);
    let mut argmin_one = Vec::with_capacity(n);
    for i in 1..=n {
        let mut table = Vec::with_capacity(half);
        let mut sides = Vec::with_capacity(half);
        for r in 0..half {
            let v0 = f.value(insert_coordinate(r, i, false));
            let v1 = f.value(insert_coordinate(r, i, true));
            let one_wins = v1 < v0;
            table.push(if one_wins { v1.clone() } else { v0.clone() });
            sides.push(one_wins);
        }
        tables.push(table);
        argmin_one.push(sides);
    }
    Ok(SelfBoundingWitness {
        n,
        tables,
        argmin_one,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SelfBoundingParams {
    pub a: Exact,
    pub b: Exact,
}

impl SelfBoundingParams {
    pub fn new(a: Rational, b: Rational) -> Result<Self> {
        if a.is_negative() || b.is_negative() {
            return Err(Error::Input(format!(
                "self-bounding constants must be >= 0, got a = {a}, b = {b}"
            )));
        }
        Ok(SelfBoundingParams {
            a: Exact(a),
            b: Exact(b),
        })
    }

    /// `(1, 0)`: plain self-bounding.
    pub fn plain() -> Self {
        SelfBoundingParams {
            a: Exact(Rational::one()),
            b: Exact(Rational::zero()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RangeViolation {
    pub point: Subset,
    pub coordinate: usize,
    /// `f(x) - f_i(x^(i))`, outside `[0, 1]`.
    pub difference: Exact,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SumViolation {
    pub point: Subset,
    pub sum: Exact,
    /// `a f(x) + b`, strictly below `sum`.
    pub allowance: Exact,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WorstPoint {
    pub point: Subset,
    /// `sum_i (f(x) - f_i(x^(i))) - (a f(x) + b)`; positive means violated.
    pub slack: Exact,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificationResult {
    pub verdict: bool,
    pub params: SelfBoundingParams,
    pub range_violation: Option<RangeViolation>,
    pub sum_violation: Option<SumViolation>,
    pub worst_point: WorstPoint,
}

/// Check both conditions at every point; witnesses are the least
/// violating points (then least coordinate).
pub fn certify(
    f: &SetFunction,
    w: &SelfBoundingWitness,
    params: &SelfBoundingParams,
) -> Result<CertificationResult> {
    if w.n() != f.n() {
        return Err(Error::DimensionMismatch {
            expected: f.n(),
            actual: w.n(),
        });
    }
    let one = Rational::one();
    let mut range_violation = None;
    let mut sum_violation = None;
    let mut worst: Option<WorstPoint> = None;

    for x in f.ground().subsets() {
        let fx = f.value(x);
        let mut sum = Rational::zero();
        for i in 1..=f.n() {
            let d = fx - w.value(i, x);
            if range_violation.is_none() && (d.is_negative() || d > one) {
                range_violation = Some(RangeViolation {
                    point: x,
                    coordinate: i,
                    difference: Exact(d.clone()),
                });
            }
            sum += d;
        }
        let allowance = &params.a.0 * fx + &params.b.0;
        let slack = &sum - &allowance;
        if sum_violation.is_none() && slack.is_positive() {
            sum_violation = Some(SumViolation {
                point: x,
                sum: Exact(sum),
                allowance: Exact(allowance),
            });
        }
        if worst.as_ref().is_none_or(|wp| slack > wp.slack.0) {
            worst = Some(WorstPoint {
                point: x,
                slack: Exact(slack),
            });
        }
    }

    Ok(CertificationResult {
        verdict: range_violation.is_none() && sum_violation.is_none(),
        params: params.clone(),
        range_violation,
        sum_violation,
        worst_point: worst.expect("ground set is non-empty"),
    })
}

/// Least `a` making the sum condition hold for a fixed `b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MinimalA<P> {
    /// `value` is exact; `attained_at` is the point realizing it, absent
    /// when the answer is the clamp at zero.
    Finite {
        value: Exact,
        attained_at: Option<P>,
    },
    /// No finite `a` works; `at` is the blocking point.
    Unbounded { at: P },
}

impl<P> MinimalA<P> {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            MinimalA::Finite { value, .. } => Some(&value.0),
            MinimalA::Unbounded { .. } => None,
        }
    }
}

/// Tracks the feasible interval for `a` from per-point constraints
/// `sum <= a f + b`.
struct AInterval<P> {
    lower: Option<(Rational, P)>,
    upper: Option<(Rational, P)>,
    blocked: Option<P>,
}

impl<P: Copy> AInterval<P> {
    fn new() -> Self {
        AInterval {
            lower: None,
            upper: None,
            blocked: None,
        }
    }

    fn add(&mut self, point: P, fx: &Rational, sum: &Rational, b: &Rational) {
        let excess = sum - b;
        if fx.is_positive() {
            let ratio = excess / fx;
            if self.lower.as_ref().is_none_or(|(l, _)| ratio > *l) {
                self.lower = Some((ratio, point));
            }
        } else if fx.is_zero() {
            if excess.is_positive() && self.blocked.is_none() {
                self.blocked = Some(point);
            }
        } else {
            // a f >= excess with f < 0 caps a from above.
            let ratio = excess / fx;
            if self.upper.as_ref().is_none_or(|(u, _)| ratio < *u) {
                self.upper = Some((ratio, point));
            }
        }
    }

    fn finish(self) -> MinimalA<P> {
        if let Some(at) = self.blocked {
            return MinimalA::Unbounded { at };
        }
        let (value, attained_at) = match self.lower {
            Some((l, p)) if l.is_positive() => (l, Some(p)),
            _ => (Rational::zero(), None),
        };
        if let Some((u, p)) = self.upper {
            if value > u {
                return MinimalA::Unbounded { at: p };
            }
        }
        MinimalA::Finite {
            value: Exact(value),
            attained_at,
        }
    }
}

/// Exact optimum of `a` for the given witness and `b`; requires the range
/// condition `0 <= f(x) - f_i(x^(i)) <= 1` everywhere.
pub fn minimal_a(
    f: &SetFunction,
    w: &SelfBoundingWitness,
    b: &Rational,
) -> Result<MinimalA<Subset>> {
    if w.n() != f.n() {
        return Err(Error::DimensionMismatch {
            expected: f.n(),
            actual: w.n(),
        });
    }
    if b.is_negative() {
        return Err(Error::Input(format!("b must be >= 0, got {b}")));
    }
    let one = Rational::one();
    let mut interval = AInterval::new();
    for x in f.ground().subsets() {
        let fx = f.value(x);
        let mut sum = Rational::zero();
        for i in 1..=f.n() {
            let d = fx - w.value(i, x);
            if d.is_negative() || d > one {
                return Err(Error::Precondition(format!(
                    "range condition fails at x = {x}, i = {i}: f(x) - f_i = {d}"
                )));
            }
            sum += d;
        }
        interval.add(x, fx, &sum, b);
    }
    Ok(interval.finish())
}

/// [`minimal_a`] with the min-extension witness of a symmetric function,
/// computed per cardinality level; works for any `n`.
pub fn minimal_a_symmetric(g: &SymmetricSetFunction, b: &Rational) -> Result<MinimalA<usize>> {
    if b.is_negative() {
        return Err(Error::Input(format!("b must be >= 0, got {b}")));
    }
    let n = g.n();
    let levels = g.levels();
    let one = Rational::one();
    let zero = Rational::zero();
    let mut interval = AInterval::new();
    for k in 0..=n {
        // Removing an element of S, or adding one outside it.
        let drop = if k > 0 {
            (&levels[k] - &levels[k - 1]).max(zero.clone())
        } else {
            zero.clone()
        };
        let add = if k < n {
            (&levels[k] - &levels[k + 1]).max(zero.clone())
        } else {
            zero.clone()
        };
        if drop > one || add > one {
            return Err(Error::Precondition(format!(
                "range condition fails at cardinality {k}"
            )));
        }
        let sum =
            drop * Rational::from_integer(k.into()) + add * Rational::from_integer((n - k).into());
        interval.add(k, &levels[k], &sum, b);
    }
    Ok(interval.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{integer, rational};
    use crate::setfn::{staircase, GeneratorSpec};

    fn dense(spec: GeneratorSpec) -> SetFunction {
        spec.generate().unwrap().into_dense().unwrap()
    }

    #[test]
    fn coordinate_index_round_trip() {
        for n in 1..=5usize {
            for i in 1..=n {
                for r in 0..(1usize << (n - 1)) {
                    for v in [false, true] {
                        let x = insert_coordinate(r, i, v);
                        assert_eq!(x.contains(i), v);
                        assert_eq!(drop_coordinate(x, i), r);
                    }
                }
            }
        }
    }

    #[test]
    fn directed_edge_witness() {
        let f = dense(GeneratorSpec::DirectedEdge);
        let w = min_extension(&f).unwrap();
        let x = Subset::from_elements([1]);
        assert_eq!(f.value(x) - w.value(1, x), integer(1));
        assert_eq!(f.value(x) - w.value(2, x), integer(1));
        assert!(!w.argmin_is_one(1, x));
        assert!(w.argmin_is_one(2, x));
    }

    #[test]
    fn additive_and_constant_witness() {
        let f = dense(GeneratorSpec::additive(&[1, 1]));
        let w = min_extension(&f).unwrap();
        let x = Subset::full(2);
        assert_eq!(f.value(x) - w.value(1, x), integer(1));
        assert_eq!(f.value(x) - w.value(2, x), integer(1));

        let zero = SetFunction::from_fn(3, |_| integer(0)).unwrap();
        let w = min_extension(&zero).unwrap();
        for x in zero.ground().subsets() {
            for i in 1..=3 {
                assert_eq!(w.value(i, x), &integer(0));
            }
        }
    }

    #[test]
    fn certify_examples() {
        let f = dense(GeneratorSpec::three_element(rational(3, 2)));
        let w = min_extension(&f).unwrap();
        assert!(
            certify(&f, &w, &SelfBoundingParams::plain())
                .unwrap()
                .verdict
        );

        let f = dense(GeneratorSpec::DirectedEdge);
        let w = min_extension(&f).unwrap();
        let r = certify(&f, &w, &SelfBoundingParams::plain()).unwrap();
        assert!(!r.verdict);
        assert!(r.range_violation.is_none());
        let sv = r.sum_violation.unwrap();
        assert_eq!(sv.point, Subset::from_elements([1]));
        assert_eq!(sv.sum.0, integer(2));
        assert_eq!(sv.allowance.0, integer(1));
        assert_eq!(r.worst_point.point, Subset::from_elements([1]));

        let two = SelfBoundingParams::new(integer(2), integer(0)).unwrap();
        assert!(certify(&f, &w, &two).unwrap().verdict);
    }

    #[test]
    fn certify_rejects_mismatched_witness() {
        let f = dense(GeneratorSpec::DirectedEdge);
        let g = dense(GeneratorSpec::three_element(integer(1)));
        let w = min_extension(&g).unwrap();
        assert!(matches!(
            certify(&f, &w, &SelfBoundingParams::plain()),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(SelfBoundingParams::new(integer(-1), integer(0)).is_err());
    }

    #[test]
    fn external_witness_range_violation() {
        let f = dense(GeneratorSpec::additive(&[1, 1]));
        // f_i = -1 everywhere: f - f_i = 1 at the empty set, 2 at singletons.
        let w = SelfBoundingWitness::from_tables(2, vec![vec![integer(-1); 2]; 2]).unwrap();
        let r = certify(&f, &w, &SelfBoundingParams::plain()).unwrap();
        let rv = r.range_violation.unwrap();
        assert_eq!((rv.point, rv.coordinate), (Subset(1), 1));
        assert!(matches!(
            minimal_a(&f, &w, &integer(0)),
            Err(Error::Precondition(_))
        ));
        assert!(SelfBoundingWitness::from_tables(2, vec![vec![integer(0); 3]; 2]).is_err());
    }

    #[test]
    fn minimal_a_examples() {
        let f = dense(GeneratorSpec::DirectedEdge);
        let w = min_extension(&f).unwrap();
        assert_eq!(
            minimal_a(&f, &w, &integer(0)).unwrap().value(),
            Some(&integer(2))
        );

        let f = dense(GeneratorSpec::additive(&[1, 1, 1, 1]));
        let w = min_extension(&f).unwrap();
        assert_eq!(
            minimal_a(&f, &w, &integer(0)).unwrap().value(),
            Some(&integer(1))
        );

        let f = dense(GeneratorSpec::Staircase { n: 16 });
        let w = min_extension(&f).unwrap();
        match minimal_a(&f, &w, &integer(0)).unwrap() {
            MinimalA::Finite { value, attained_at } => {
                assert_eq!(value.0, rational(7, 5));
                assert_eq!(attained_at.unwrap().len(), 7);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn minimal_a_zero_value_points() {
        let f = SetFunction::new(1, vec![integer(0), integer(-1)]).unwrap();
        let w = min_extension(&f).unwrap();
        // At x = ∅: f = 0, f_1 = -1, sum = 1 > b = 0.
        assert_eq!(
            minimal_a(&f, &w, &integer(0)).unwrap(),
            MinimalA::Unbounded { at: Subset::EMPTY }
        );
        assert_eq!(
            minimal_a(&f, &w, &integer(1)).unwrap().value(),
            Some(&integer(0))
        );
    }

    #[test]
    fn symmetric_minimal_a_matches_dense() {
        let g = staircase(16).unwrap();
        let sym = minimal_a_symmetric(&g, &integer(0)).unwrap();
        assert_eq!(
            sym,
            MinimalA::Finite {
                value: Exact(rational(7, 5)),
                attained_at: Some(7)
            }
        );
        // Grows like sqrt(n)/2 for the large staircase.
        let big = staircase(10_000).unwrap();
        let a = minimal_a_symmetric(&big, &integer(0)).unwrap();
        assert_eq!(a.value(), Some(&rational(4951, 101)));
    }
}
