//! Deterministic inputs shared by the benchmarks in `benches/`.

use subconc::rational::{integer, rational};
use subconc::{Exact, GeneratorSpec, Result, SetFunction};

/// Weighted coverage of six items; element `i` covers items `i` and `i + 2` mod 6.
pub fn coverage(n: usize) -> Result<SetFunction> {
    GeneratorSpec::Coverage {
        weights: (1..=6).map(|w| Exact(rational(w, 2))).collect(),
        sets: (0..n).map(|i| vec![i % 6, (i + 2) % 6]).collect(),
    }
    .generate()?
    .into_dense()
}

/// Weights `1..=n` capped at `n`.
pub fn budget_additive(n: usize) -> Result<SetFunction> {
    GeneratorSpec::BudgetAdditive {
        weights: (1..=n as i64).map(|w| Exact(integer(w))).collect(),
        budget: Exact(integer(n as i64)),
    }
    .generate()?
    .into_dense()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_build() {
        assert_eq!(coverage(8).unwrap().n(), 8);
        assert_eq!(budget_additive(5).unwrap().values().len(), 32);
    }
}
