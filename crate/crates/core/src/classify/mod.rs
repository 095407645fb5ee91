//! Exact membership tests for the classes
//! submodular ⊂ fractionally subadditive ⊂ subadditive, plus non-negativity
//! and monotonicity, each with a replayable violation witness.
//!
//! Witness tie-break everywhere: least bitmask first, then least element.

mod simplex;

use num::{BigInt, BigRational, Integer, Num, One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{Exact, Rational};
use crate::setfn::SetFunction;
use crate::subset::Subset;
use simplex::solve_cover;

/// Subadditivity sweeps all ordered pairs, `4^n` of them.
pub const MAX_SUBADDITIVE_N: usize = 13;
/// One LP per subset, each with up to `2^n` rows.
pub const MAX_XOS_N: usize = 12;

/// Values rescaled to integers by a common denominator, so every
/// inequality among sums of values is an integer comparison.
enum Scaled {
    Small(Vec<i128>),
    Big(Vec<BigInt>),
}

impl Scaled {
    fn new(f: &SetFunction) -> (Scaled, BigInt) {
        let denom = f
            .values()
            .iter()
            .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let numers: Vec<BigInt> = f
            .values()
            .iter()
            .map(|v| v.numer() * (&denom / v.denom()))
            .collect();
        let small: Option<Vec<i128>> = numers.iter().map(|v| v.to_i64().map(i128::from)).collect();
        match small {
            Some(s) => (Scaled::Small(s), denom),
            None => (Scaled::Big(numers), denom),
        }
    }
}

macro_rules! with_scaled {
    ($f:expr, |$t:ident| $body:expr) => {{
        match Scaled::new($f).0 {
            Scaled::Small($t) => $body,
            Scaled::Big($t) => $body,
        }
    }};
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NegativeValue {
    pub set: Subset,
    pub value: Exact,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonotoneViolation {
    pub set: Subset,
    pub element: usize,
    /// `f(S + j) - f(S) < 0`.
    pub marginal: Exact,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubmodularViolation {
    pub set: Subset,
    pub element: usize,
    pub added: usize,
    /// `f_S(j)`.
    pub marginal: Exact,
    /// `f_{S+k}(j)`, strictly larger than `marginal`.
    pub marginal_after: Exact,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubadditiveViolation {
    pub a: Subset,
    pub b: Subset,
    /// `f(A ∪ B)`.
    pub union_value: Exact,
    /// `f(A) + f(B)`, strictly smaller than `union_value`.
    pub sum: Exact,
}

impl NegativeValue {
    /// Amount of violation replayed through `f`; positive iff genuine.
    pub fn excess(&self, f: &SetFunction) -> Rational {
        -f.value(self.set).clone()
    }
}

impl MonotoneViolation {
    pub fn excess(&self, f: &SetFunction) -> Rational {
        f.value(self.set) - f.value(self.set.with(self.element))
    }
}

impl SubmodularViolation {
    pub fn excess(&self, f: &SetFunction) -> Rational {
        let before = f.value(self.set.with(self.element)) - f.value(self.set);
        let s2 = self.set.with(self.added);
        let after = f.value(s2.with(self.element)) - f.value(s2);
        after - before
    }
}

impl SubadditiveViolation {
    pub fn excess(&self, f: &SetFunction) -> Rational {
        f.value(self.a.union(self.b)) - f.value(self.a) - f.value(self.b)
    }
}

pub fn is_nonnegative(f: &SetFunction) -> (bool, Option<NegativeValue>) {
    let bad = f
        .ground()
        .subsets()
        .find(|&s| f.value(s).is_negative())
        .map(|s| NegativeValue {
            set: s,
            value: Exact(f.value(s).clone()),
        });
    (bad.is_none(), bad)
}

pub fn is_monotone(f: &SetFunction) -> (bool, Option<MonotoneViolation>) {
    let n = f.n();
    let hit = with_scaled!(f, |t| first_monotone_violation(&t, n));
    let witness = hit.map(|(s, j)| MonotoneViolation {
        set: s,
        element: j,
        marginal: Exact(f.value(s.with(j)) - f.value(s)),
    });
    (witness.is_none(), witness)
}

fn first_monotone_violation<T: Num + Ord + Clone>(t: &[T], n: usize) -> Option<(Subset, usize)> {
    for s in 0..t.len() as u32 {
        for j in 1..=n {
            let bit = 1u32 << (j - 1);
            if s & bit == 0 && t[(s | bit) as usize] < t[s as usize] {
                return Some((Subset(s), j));
            }
        }
    }
    None
}

pub fn is_submodular(f: &SetFunction) -> (bool, Option<SubmodularViolation>) {
    let n = f.n();
    let hit = with_scaled!(f, |t| first_submodular_violation(&t, n));
    let witness = hit.map(|(s, j, k)| {
        let s2 = s.with(k);
        SubmodularViolation {
            set: s,
            element: j,
            added: k,
            marginal: Exact(f.value(s.with(j)) - f.value(s)),
            marginal_after: Exact(f.value(s2.with(j)) - f.value(s2)),
        }
    });
    (witness.is_none(), witness)
}

fn first_submodular_violation<T: Num + Ord + Clone>(
    t: &[T],
    n: usize,
) -> Option<(Subset, usize, usize)> {
    for s in 0..t.len() as u32 {
        for j in 1..=n {
            let bj = 1u32 << (j - 1);
            if s & bj != 0 {
                continue;
            }
            let before = t[(s | bj) as usize].clone() - t[s as usize].clone();
            for k in 1..=n {
                let bk = 1u32 << (k - 1);
                if k == j || s & bk != 0 {
                    continue;
                }
                let s2 = s | bk;
                let after = t[(s2 | bj) as usize].clone() - t[s2 as usize].clone();
                if after > before {
                    return Some((Subset(s), j, k));
                }
            }
        }
    }
    None
}

/// Ordered pairs `(A, B)`, overlapping ones included.
pub fn is_subadditive(f: &SetFunction) -> Result<(bool, Option<SubadditiveViolation>)> {
    let n = f.n();
    if n > MAX_SUBADDITIVE_N {
        return Err(Error::Capacity {
            check: "subadditivity",
            n,
            max: MAX_SUBADDITIVE_N,
        });
    }
    let hit = with_scaled!(f, |t| first_subadditive_violation(&t));
    let witness = hit.map(|(a, b)| SubadditiveViolation {
        a,
        b,
        union_value: Exact(f.value(a.union(b)).clone()),
        sum: Exact(f.value(a) + f.value(b)),
    });
    Ok((witness.is_none(), witness))
}

fn first_subadditive_violation<T: Num + Ord + Clone + Send + Sync>(
    t: &[T],
) -> Option<(Subset, Subset)> {
    let size = t.len() as u32;
    (0..size).into_par_iter().find_map_first(|a| {
        (0..size)
            .find(|&b| t[(a | b) as usize] > t[a as usize].clone() + t[b as usize].clone())
            .map(|b| (Subset(a), Subset(b)))
    })
}

/// A fractional cover of `target` whose weighted value is below `f(target)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct XosViolation {
    pub target: Subset,
    pub target_value: Exact,
    /// `(B_i, beta_i)` with `beta_i > 0`, in increasing bitmask order.
    pub cover: Vec<CoverTerm>,
    /// `sum beta_i f(B_i)`.
    pub cover_value: Exact,
    /// Common optimum of the covering LP and its dual; `None` when the LP
    /// is unbounded below (some value of `f` is negative).
    pub lp_optimum: Option<Exact>,
    /// Dual objective recomputed from the dual vector; equals `lp_optimum`.
    pub dual_objective: Option<Exact>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverTerm {
    pub set: Subset,
    pub weight: Exact,
}

impl XosViolation {
    /// Replay the witness: the cover must be feasible and
    /// `f(target) - sum beta_i f(B_i)` is returned (positive iff genuine).
    pub fn excess(&self, f: &SetFunction) -> Option<Rational> {
        let feasible = self.target.elements().all(|a| {
            let covered: Rational = self
                .cover
                .iter()
                .filter(|t| t.set.contains(a))
                .map(|t| &t.weight.0)
                .sum();
            covered >= Rational::one()
        }) && self.cover.iter().all(|t| !t.weight.0.is_negative());
        if !feasible {
            return None;
        }
        let value: Rational = self
            .cover
            .iter()
            .map(|t| &t.weight.0 * f.value(t.set))
            .sum();
        Some(f.value(self.target) - value)
    }
}

/// Additive lower bounds, one per subset `A`: `y >= 0` supported on `A`
/// with `sum_A y >= f(A)` and `sum_{A ∩ B} y <= f(B)` for every `B`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct XosCertificate {
    pub duals: Vec<DualVector>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualVector {
    pub target: Subset,
    /// `y_a` for the elements of `target` in increasing order.
    pub weights: Vec<Exact>,
}

impl DualVector {
    /// `sum_{a in A ∩ B} y_a` for every `B`, indexed by the local bitmask of
    /// `A ∩ B` over the elements of `A`.
    fn loads(&self) -> Vec<Rational> {
        let mut loads = vec![Rational::zero(); 1 << self.weights.len()];
        for c in 1..loads.len() {
            let low = c.trailing_zeros() as usize;
            loads[c] = &loads[c & (c - 1usize)] + &self.weights[low].0;
        }
        loads
    }
}

/// Positions of the bits of `b` within the set bits of `a`.
fn extract_bits(b: u32, a: u32) -> usize {
    let mut out = 0;
    let mut rest = a;
    let mut j = 0;
    while rest != 0 {
        let bit = rest & rest.wrapping_neg();
        if b & bit != 0 {
            out |= 1 << j;
        }
        rest ^= bit;
        j += 1;
    }
    out
}

impl XosCertificate {
    /// Check every dual vector against every subset.
    pub fn verify(&self, f: &SetFunction) -> bool {
        self.duals.len() == f.ground().size()
            && self.duals.iter().all(|d| {
                let k = d.target.len();
                if d.weights.len() != k || d.weights.iter().any(|y| y.0.is_negative()) {
                    return false;
                }
                let loads = d.loads();
                loads[(1 << k) - 1] >= *f.value(d.target)
                    && f.ground()
                        .subsets()
                        .all(|b| loads[extract_bits(b.bits(), d.target.bits())] <= *f.value(b))
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum XosOutcome {
    Certified(XosCertificate),
    Violated(Box<XosViolation>),
}

impl XosOutcome {
    pub fn holds(&self) -> bool {
        matches!(self, XosOutcome::Certified(_))
    }

    pub fn violation(&self) -> Option<&XosViolation> {
        match self {
            XosOutcome::Violated(v) => Some(v),
            XosOutcome::Certified(_) => None,
        }
    }
}

/// Decide `f(A) <= sum beta_i f(B_i)` for every fractional cover, exactly.
///
/// For each `A` the covering LP `min sum_B beta_B f(B)` is reduced to columns
/// `C ⊆ A` with cost `h(C)`, the least `f(B)` over all `B` with `B ∩ A = C`.
/// Its optimal dual `y` (`sum_{a in C} y_a <= h(C)`) certifies `A` when
/// `sum y >= f(A)`; otherwise the primal cover is the violation.
pub fn is_fractionally_subadditive(f: &SetFunction) -> Result<XosOutcome> {
    let n = f.n();
    if n > MAX_XOS_N {
        return Err(Error::Capacity {
            check: "fractional subadditivity",
            n,
            max: MAX_XOS_N,
        });
    }

    // Negative values make the covering LP unbounded below for every A;
    // A = ∅ is then the least violated target.
    if let Some(worst) = f
        .ground()
        .subsets()
        .min_by(|a, b| f.value(*a).cmp(f.value(*b)))
    {
        let low = f.value(worst);
        if low.is_negative() {
            let base = f.value(Subset::EMPTY);
            let weight = (base.abs() / low.abs()).floor() + Rational::one();
            let cover_value = &weight * low;
            return Ok(XosOutcome::Violated(Box::new(XosViolation {
                target: Subset::EMPTY,
                target_value: Exact(base.clone()),
                cover: vec![CoverTerm {
                    set: worst,
                    weight: Exact(weight),
                }],
                cover_value: Exact(cover_value),
                lp_optimum: None,
                dual_objective: None,
            })));
        }
    }

    let (scaled, denom) = Scaled::new(f);
    let numers: Vec<BigInt> = match scaled {
        Scaled::Small(v) => v.into_iter().map(BigInt::from).collect(),
        Scaled::Big(v) => v,
    };
    let unscale = |v: BigRational| v / BigRational::from_integer(denom.clone());

    let results: Vec<std::result::Result<DualVector, Box<XosViolation>>> = (0..f.ground().size()
        as u32)
        .into_par_iter()
        .map(|a| solve_target(f, &numers, Subset(a), &unscale))
        .collect();

    let mut duals = Vec::with_capacity(results.len());
    for r in results {
        match r {
            Ok(d) => duals.push(d),
            Err(v) => return Ok(XosOutcome::Violated(v)),
        }
    }
    Ok(XosOutcome::Certified(XosCertificate { duals }))
}

fn solve_target(
    f: &SetFunction,
    numers: &[BigInt],
    target: Subset,
    unscale: &(dyn Fn(BigRational) -> BigRational + Sync),
) -> std::result::Result<DualVector, Box<XosViolation>> {
    let elements: Vec<usize> = target.elements().collect();
    let k = elements.len();
    let global = |local: u32| -> u32 {
        elements
            .iter()
            .enumerate()
            .filter(|(j, _)| local >> j & 1 == 1)
            .fold(0, |acc, (_, &e)| acc | 1 << (e - 1))
    };

    // h(C) and its least minimizing B, for every C ⊆ A; indexed by bitmask.
    let mut best: Vec<Option<(u32, &BigInt)>> = vec![None; f.ground().size()];
    for b in 0..f.ground().size() as u32 {
        let c = (b & target.bits()) as usize;
        let v = &numers[b as usize];
        if best[c].is_none_or(|(_, cur)| v < cur) {
            best[c] = Some((b, v));
        }
    }
    let attained = |local: u32| best[global(local) as usize].expect("C ⊆ A is attained by B = C");
    let h: Vec<BigInt> = (0..1u32 << k).map(|c| attained(c).1.clone()).collect();

    let solution = solve_cover(k, &h);
    let target_numer = BigRational::from_integer(numers[target.index()].clone());

    if solution.objective >= target_numer {
        return Ok(DualVector {
            target,
            weights: solution
                .dual
                .into_iter()
                .map(|y| Exact(unscale(y)))
                .collect(),
        });
    }

    let mut cover: Vec<CoverTerm> = solution
        .cover
        .iter()
        .map(|(c, beta)| CoverTerm {
            set: Subset(attained(*c).0),
            weight: Exact(beta.clone()),
        })
        .collect();
    cover.sort_by_key(|t| t.set);
    let cover_value: Rational = cover.iter().map(|t| &t.weight.0 * f.value(t.set)).sum();
    let dual_objective: Rational = solution.dual.iter().map(|y| unscale(y.clone())).sum();
    Err(Box::new(XosViolation {
        target,
        target_value: Exact(f.value(target).clone()),
        cover,
        cover_value: Exact(cover_value),
        lp_optimum: Some(Exact(unscale(solution.objective))),
        dual_objective: Some(Exact(dual_objective)),
    }))
}

/// Outcome of one membership test inside a [`ClassReport`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict<W> {
    Holds,
    Fails(W),
    /// The check was skipped, e.g. for capacity.
    NotComputed(String),
}

impl<W> Verdict<W> {
    pub fn holds(&self) -> Option<bool> {
        match self {
            Verdict::Holds => Some(true),
            Verdict::Fails(_) => Some(false),
            Verdict::NotComputed(_) => None,
        }
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Fails(w) => Some(w),
            _ => None,
        }
    }

    fn from_parts(holds: bool, witness: Option<W>) -> Self {
        match (holds, witness) {
            (false, Some(w)) => Verdict::Fails(w),
            _ => Verdict::Holds,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassReport {
    pub n: usize,
    pub nonnegative: Verdict<NegativeValue>,
    pub monotone: Verdict<MonotoneViolation>,
    pub submodular: Verdict<SubmodularViolation>,
    pub fractionally_subadditive: Verdict<XosViolation>,
    pub subadditive: Verdict<SubadditiveViolation>,
    pub notes: Vec<String>,
}

pub fn classify(f: &SetFunction) -> ClassReport {
    let (nn, nn_w) = is_nonnegative(f);
    let (mono, mono_w) = is_monotone(f);
    let (sub, sub_w) = is_submodular(f);
    let mut notes = Vec::new();

    let fractionally_subadditive = match is_fractionally_subadditive(f) {
        Ok(XosOutcome::Certified(_)) => Verdict::Holds,
        Ok(XosOutcome::Violated(v)) => Verdict::Fails(*v),
        Err(e) => Verdict::NotComputed(e.to_string()),
    };
    let subadditive = match is_subadditive(f) {
        Ok((holds, w)) => Verdict::from_parts(holds, w),
        Err(e) => Verdict::NotComputed(e.to_string()),
    };
    if !mono {
        notes.push(
            "input is not monotone; fractional subadditivity is answered for the literal \
             covering inequality"
                .to_string(),
        );
    }

    ClassReport {
        n: f.n(),
        nonnegative: Verdict::from_parts(nn, nn_w),
        monotone: Verdict::from_parts(mono, mono_w),
        submodular: Verdict::from_parts(sub, sub_w),
        fractionally_subadditive,
        subadditive,
        notes,
    }
}

impl ClassReport {
    pub fn to_json(&self) -> serde_json::Value {
        use serde_json::{json, Map, Value};
        let mut witnesses = Map::new();
        let mut not_computed = Map::new();
        fn record<W: Serialize>(
            name: &str,
            v: &Verdict<W>,
            witnesses: &mut Map<String, Value>,
            not_computed: &mut Map<String, Value>,
        ) {
            match v {
                Verdict::Fails(w) => {
                    witnesses.insert(name.into(), serde_json::to_value(w).expect("serializable"));
                }
                Verdict::NotComputed(why) => {
                    not_computed.insert(name.into(), Value::String(why.clone()));
                }
                Verdict::Holds => {}
            }
        }
        record(
            "nonnegative",
            &self.nonnegative,
            &mut witnesses,
            &mut not_computed,
        );
        record(
            "monotone",
            &self.monotone,
            &mut witnesses,
            &mut not_computed,
        );
        record(
            "submodular",
            &self.submodular,
            &mut witnesses,
            &mut not_computed,
        );
        record(
            "fractionally_subadditive",
            &self.fractionally_subadditive,
            &mut witnesses,
            &mut not_computed,
        );
        record(
            "subadditive",
            &self.subadditive,
            &mut witnesses,
            &mut not_computed,
        );
        json!({
            "n": self.n,
            "nonnegative": self.nonnegative.holds(),
            "monotone": self.monotone.holds(),
            "submodular": self.submodular.holds(),
            "fractionally_subadditive": self.fractionally_subadditive.holds(),
            "subadditive": self.subadditive.holds(),
            "witnesses": witnesses,
            "not_computed": not_computed,
            "notes": self.notes,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{integer, rational};
    use crate::setfn::GeneratorSpec;

    fn dense(spec: GeneratorSpec) -> SetFunction {
        spec.generate().unwrap().into_dense().unwrap()
    }

    fn three(top: Rational) -> SetFunction {
        dense(GeneratorSpec::three_element(top))
    }

    #[test]
    fn nonnegativity() {
        assert!(is_nonnegative(&three(integer(1))).0);
        assert!(is_nonnegative(&dense(GeneratorSpec::DirectedEdge)).0);
        let (ok, w) = is_nonnegative(&dense(GeneratorSpec::additive(&[-1])));
        assert!(!ok);
        assert_eq!(w.unwrap().set, Subset::from_elements([1]));
    }

    #[test]
    fn monotonicity() {
        let stair = dense(GeneratorSpec::Staircase { n: 16 });
        assert!(is_monotone(&stair).0);
        let (ok, w) = is_monotone(&dense(GeneratorSpec::DirectedEdge));
        assert!(!ok);
        let w = w.unwrap();
        assert_eq!((w.set, w.element), (Subset::from_elements([1]), 2));
        assert_eq!(w.marginal.0, integer(-1));
        let zero = SetFunction::from_fn(3, |_| integer(0)).unwrap();
        assert!(is_monotone(&zero).0);
    }

    #[test]
    fn three_element_monotone_iff_top_at_least_one() {
        for num in -4..=12 {
            let t = rational(num, 4);
            let f = three(t.clone());
            assert_eq!(is_monotone(&f).0, t >= integer(1), "top = {t}");
        }
    }

    #[test]
    fn submodularity() {
        assert!(is_submodular(&three(integer(1))).0);
        let (ok, w) = is_submodular(&three(rational(3, 2)));
        assert!(!ok);
        assert!(w.unwrap().excess(&three(rational(3, 2))).is_positive());
        assert!(is_submodular(&dense(GeneratorSpec::DirectedEdge)).0);
    }

    #[test]
    fn subadditivity() {
        assert!(is_subadditive(&three(integer(2))).unwrap().0);
        let f = three(rational(9, 4));
        let (ok, w) = is_subadditive(&f).unwrap();
        assert!(!ok);
        let w = w.unwrap();
        assert_eq!(
            (w.a, w.b),
            (Subset::from_elements([1]), Subset::from_elements([2, 3]))
        );
        assert_eq!(w.excess(&f), rational(1, 4));
        assert!(
            is_subadditive(&dense(GeneratorSpec::Staircase { n: 9 }))
                .unwrap()
                .0
        );
        let big = SetFunction::from_fn(14, |_| integer(0)).unwrap();
        assert!(matches!(is_subadditive(&big), Err(Error::Capacity { .. })));
    }

    #[test]
    fn xos_examples() {
        let f = three(rational(3, 2));
        match is_fractionally_subadditive(&f).unwrap() {
            XosOutcome::Certified(cert) => {
                assert!(cert.verify(&f));
                // The certificate for top = 3/2 must not carry over to top = 2.
                assert!(!cert.verify(&three(integer(2))));
                let mut tampered = cert.clone();
                tampered.duals[7].weights[0] = Exact(integer(2));
                assert!(!tampered.verify(&f));
            }
            XosOutcome::Violated(v) => panic!("unexpected violation {v:?}"),
        }

        let f = three(integer(2));
        let v = is_fractionally_subadditive(&f).unwrap();
        let v = v.violation().expect("top = 2 is not XOS");
        assert_eq!(v.target, Subset::full(3));
        let sets: Vec<Subset> = v.cover.iter().map(|t| t.set).collect();
        assert_eq!(sets, vec![Subset(0b011), Subset(0b101), Subset(0b110)]);
        assert!(v.cover.iter().all(|t| t.weight.0 == rational(1, 2)));
        assert_eq!(v.cover_value.0, rational(3, 2));
        assert_eq!(v.lp_optimum.as_ref().unwrap().0, rational(3, 2));
        assert_eq!(v.dual_objective, v.lp_optimum);
        assert_eq!(v.excess(&f).unwrap(), rational(1, 2));
    }

    #[test]
    fn xos_additive_and_directed_edge() {
        let f = dense(GeneratorSpec::additive(&[3, 0, 5, 1]));
        let out = is_fractionally_subadditive(&f).unwrap();
        assert!(out.holds());

        let f = dense(GeneratorSpec::DirectedEdge);
        let out = is_fractionally_subadditive(&f).unwrap();
        let v = out.violation().unwrap();
        assert_eq!(v.target, Subset::from_elements([1]));
        assert!(v.excess(&f).unwrap().is_positive());
    }

    #[test]
    fn xos_negative_values_and_positive_empty_set() {
        let f = dense(GeneratorSpec::additive(&[-1, 2]));
        let v = is_fractionally_subadditive(&f).unwrap();
        let v = v.violation().unwrap();
        assert_eq!(v.target, Subset::EMPTY);
        assert!(v.excess(&f).unwrap().is_positive());

        let f = SetFunction::from_fn(2, |_| integer(-3)).unwrap();
        let v = is_fractionally_subadditive(&f).unwrap();
        assert!(v.violation().unwrap().excess(&f).unwrap().is_positive());

        let f = SetFunction::from_fn(2, |_| integer(1)).unwrap();
        let v = is_fractionally_subadditive(&f).unwrap();
        let v = v.violation().unwrap();
        assert_eq!(v.target, Subset::EMPTY);
        assert!(v.cover.is_empty());
        assert_eq!(v.excess(&f).unwrap(), integer(1));
    }

    #[test]
    fn xos_capacity() {
        let f = SetFunction::from_fn(13, |s| integer(s.len() as i64)).unwrap();
        assert!(matches!(
            is_fractionally_subadditive(&f),
            Err(Error::Capacity { max: 12, .. })
        ));
    }

    #[test]
    fn classify_reports() {
        let r = classify(&three(integer(1)));
        for v in [
            r.nonnegative.holds(),
            r.monotone.holds(),
            r.submodular.holds(),
            r.fractionally_subadditive.holds(),
            r.subadditive.holds(),
        ] {
            assert_eq!(v, Some(true));
        }

        let r = classify(&three(integer(2)));
        assert_eq!(r.nonnegative.holds(), Some(true));
        assert_eq!(r.monotone.holds(), Some(true));
        assert_eq!(r.submodular.holds(), Some(false));
        assert_eq!(r.fractionally_subadditive.holds(), Some(false));
        assert_eq!(r.subadditive.holds(), Some(true));

        let r = classify(&dense(GeneratorSpec::DirectedEdge));
        assert_eq!(r.nonnegative.holds(), Some(true));
        assert_eq!(r.monotone.holds(), Some(false));
        assert_eq!(r.submodular.holds(), Some(true));
        assert_eq!(r.fractionally_subadditive.holds(), Some(false));
        assert_eq!(r.subadditive.holds(), Some(true));
        assert_eq!(r.notes.len(), 1);

        let json = r.to_json();
        assert_eq!(json["witnesses"]["monotone"]["set"]["set"], "{1}");
    }

    #[test]
    fn classify_marks_capacity_as_not_computed() {
        let f = SetFunction::from_fn(13, |s| integer(s.len().min(2) as i64)).unwrap();
        let r = classify(&f);
        assert_eq!(r.submodular.holds(), Some(true));
        assert_eq!(r.fractionally_subadditive.holds(), None);
        assert_eq!(r.subadditive.holds(), Some(true));
        assert!(r.to_json()["not_computed"]["fractionally_subadditive"].is_string());
    }
}
