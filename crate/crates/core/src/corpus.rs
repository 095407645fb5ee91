//! Seeded random instances for sweeps and tests.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::rational::{rational, Exact};
use crate::setfn::{GeneratorSpec, SetFunction, WeightedEdge};

#[derive(Debug, Clone)]
pub struct Instance {
    pub spec: GeneratorSpec,
    pub function: SetFunction,
}

impl Instance {
    fn build(spec: GeneratorSpec) -> Result<Self> {
        let function = spec.generate()?.into_dense()?;
        Ok(Instance { spec, function })
    }
}

/// Weights of the form `k/4`, `k` in `1..=8`.
fn quarter(rng: &mut ChaCha8Rng) -> Exact {
    Exact(rational(rng.random_range(1..=8), 4))
}

pub fn random_coverage(rng: &mut ChaCha8Rng, n: usize) -> GeneratorSpec {
    let universe = rng.random_range(1..=8usize);
    let weights = (0..universe).map(|_| quarter(rng)).collect();
    let sets = (0..n)
        .map(|_| {
            let mut items: Vec<usize> = (0..universe).filter(|_| rng.random_bool(0.4)).collect();
            if items.is_empty() {
                items.push(rng.random_range(0..universe));
            }
            items
        })
        .collect();
    GeneratorSpec::Coverage { weights, sets }
}

pub fn random_matroid_rank(rng: &mut ChaCha8Rng, n: usize) -> GeneratorSpec {
    GeneratorSpec::UniformMatroidRank {
        n,
        k: rng.random_range(1..=n),
    }
}

pub fn random_budget_additive(rng: &mut ChaCha8Rng, n: usize) -> GeneratorSpec {
    let weights: Vec<Exact> = (0..n).map(|_| quarter(rng)).collect();
    let total = 8 * n as i64;
    let budget = rational(rng.random_range(1..=total), 4);
    GeneratorSpec::BudgetAdditive {
        weights,
        budget: Exact(budget),
    }
}

/// Directed cut with at least one edge between distinct vertices.
pub fn random_directed_cut(rng: &mut ChaCha8Rng, n: usize) -> GeneratorSpec {
    let mut edges = Vec::new();
    for from in 1..=n {
        for to in 1..=n {
            if from != to && rng.random_bool(0.3) {
                edges.push(WeightedEdge {
                    from,
                    to,
                    weight: quarter(rng),
                });
            }
        }
    }
    if edges.is_empty() {
        let from = rng.random_range(1..=n);
        let to = (from % n) + 1;
        edges.push(WeightedEdge {
            from,
            to,
            weight: quarter(rng),
        });
    }
    GeneratorSpec::DirectedCut { n, edges }
}

/// Monotone submodular instances cycling through coverage, uniform matroid
/// rank and budget-additive generators, `n` uniform in `2..=max_n`.
pub fn monotone_corpus(seed: u64, count: usize, max_n: usize) -> Result<Vec<Instance>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let n = rng.random_range(2..=max_n.max(2));
            let spec = match i % 3 {
                0 => random_coverage(&mut rng, n),
                1 => random_matroid_rank(&mut rng, n),
                _ => random_budget_additive(&mut rng, n),
            };
            Instance::build(spec)
        })
        .collect()
}

/// Random directed cuts rescaled so every marginal lies in `[-1, 1]`.
pub fn directed_cut_corpus(seed: u64, count: usize, max_n: usize) -> Result<Vec<Instance>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.random_range(2..=max_n.max(2));
            let mut inst = Instance::build(random_directed_cut(&mut rng, n))?;
            inst.function = inst.function.normalized_to_unit_lipschitz();
            Ok(inst)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::integer;

    #[test]
    fn corpora_are_reproducible() {
        let a = monotone_corpus(11, 12, 6).unwrap();
        let b = monotone_corpus(11, 12, 6).unwrap();
        assert!(a.iter().zip(&b).all(|(x, y)| x.function == y.function));
        assert!(a.iter().all(|i| (2..=6).contains(&i.function.n())));
    }

    #[test]
    fn directed_cuts_are_unit_lipschitz_and_nonzero() {
        for inst in directed_cut_corpus(3, 40, 6).unwrap() {
            assert!(inst.function.lipschitz_constant() <= integer(1));
            assert!(inst.function.values().iter().any(|v| *v > integer(0)));
        }
    }
}
