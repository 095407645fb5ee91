//! Exact revised simplex for the set-covering LP
//! `min sum_C beta_C h(C)` subject to `sum_{C ∋ a} beta_C >= 1` for every
//! element `a`, `beta >= 0`, with one column per non-empty `C ⊆ [k]`.
//!
//! The basis has only `k` rows, so its inverse is kept in big rationals
//! while pricing the `2^k - 1` columns runs on integers via subset sums.
//! Bland's rule rules out cycling from the feasible starting basis.

use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct CoverSolution {
    /// `sum beta_C h(C)`.
    pub objective: BigRational,
    /// Columns with `beta_C > 0` as `(local mask, beta)`, increasing mask.
    pub cover: Vec<(u32, BigRational)>,
    /// Optimal dual `y`: `sum_{a in C} y_a <= h(C)`, `y >= 0`, `sum y = objective`.
    pub dual: Vec<BigRational>,
}

/// Solve the covering LP over `k` elements; `h` is indexed by local bitmask
/// (entry 0 unused) and must be non-negative.
pub(crate) fn solve_cover(k: usize, h: &[BigInt]) -> CoverSolution {
    assert_eq!(h.len(), 1 << k);
    debug_assert!(h.iter().all(|v| !v.is_negative()));
    if k == 0 {
        return CoverSolution {
            objective: BigRational::zero(),
            cover: Vec::new(),
            dual: Vec::new(),
        };
    }
    let columns = (1usize << k) - 1;
    // Variable ids: mask c -> c - 1, surplus of element a -> columns + a.
    let cost = |id: usize| -> BigRational {
        if id < columns {
            BigRational::from_integer(h[id + 1].clone())
        } else {
            BigRational::zero()
        }
    };
    let column = |id: usize| -> Vec<BigRational> {
        (0..k)
            .map(|a| {
                if id < columns {
                    if (id + 1) >> a & 1 == 1 {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                } else if id - columns == a {
                    -BigRational::one()
                } else {
                    BigRational::zero()
                }
            })
            .collect()
    };

    // Start from the prefix chain {0} ⊂ {0,1} ⊂ ... ⊂ [k] with beta = 1 on
    // the full set. Its dual is the vector of greedy marginals, already
    // optimal when h is submodular. B is upper unitriangular of ones, so
    // B^-1 has 1 on the diagonal and -1 just above it.
    let mut basis: Vec<usize> = (0..k).map(|i| (1usize << (i + 1)) - 2).collect();
    let mut inverse: Vec<Vec<BigRational>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else if j == i + 1 {
                        -BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    let mut x: Vec<BigRational> = vec![BigRational::zero(); k];
    x[k - 1] = BigRational::one();
    let mut pricer = Pricer::new(k, h);

    loop {
        let costs: Vec<BigRational> = basis.iter().map(|&id| cost(id)).collect();
        let y: Vec<BigRational> = (0..k)
            .map(|j| (0..k).map(|i| &costs[i] * &inverse[i][j]).sum())
            .collect();

        let Some(entering) = pricer.first_improving(&y, columns) else {
            let objective = costs.iter().zip(&x).map(|(c, v)| c * v).sum();
            let mut cover: Vec<(u32, BigRational)> = basis
                .iter()
                .zip(&x)
                .filter(|(&id, v)| id < columns && v.is_positive())
                .map(|(&id, v)| ((id + 1) as u32, v.clone()))
                .collect();
            cover.sort_by_key(|(m, _)| *m);
            return CoverSolution {
                objective,
                cover,
                dual: y,
            };
        };

        let col = column(entering);
        let d: Vec<BigRational> = inverse
            .iter()
            .map(|row| row.iter().zip(&col).map(|(r, c)| r * c).sum())
            .collect();
        let mut leave: Option<(usize, BigRational)> = None;
        for i in 0..k {
            if !d[i].is_positive() {
                continue;
            }
            let ratio = &x[i] / &d[i];
            let better = match &leave {
                None => true,
                Some((r, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*r]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        let (r, _) = leave.expect("h >= 0 keeps the covering LP bounded");

        let pivot = d[r].clone();
        for v in inverse[r].iter_mut() {
            *v /= &pivot;
        }
        x[r] /= &pivot;
        let pivot_row = inverse[r].clone();
        let pivot_x = x[r].clone();
        for i in 0..k {
            if i == r || d[i].is_zero() {
                continue;
            }
            for (v, p) in inverse[i].iter_mut().zip(&pivot_row) {
                *v -= &d[i] * p;
            }
            x[i] -= &d[i] * &pivot_x;
        }
        basis[r] = entering;
    }
}

/// Reduced costs `h(C) - sum_{a in C} y_a` over all columns, scaled by the
/// common denominator of `y`.
struct Pricer<'a> {
    k: usize,
    h: &'a [BigInt],
    small_h: Option<Vec<i128>>,
    sums_small: Vec<i128>,
    sums_big: Vec<BigInt>,
}

impl<'a> Pricer<'a> {
    fn new(k: usize, h: &'a [BigInt]) -> Self {
        let small_h = h.iter().map(|v| v.to_i64().map(i128::from)).collect();
        Pricer {
            k,
            h,
            small_h,
            sums_small: vec![0; 1 << k],
            sums_big: Vec::new(),
        }
    }

    /// Lowest-id variable with negative reduced cost (Bland's rule).
    fn first_improving(&mut self, y: &[BigRational], columns: usize) -> Option<usize> {
        let scale = y.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let numers: Vec<BigInt> = y.iter().map(|v| v.numer() * (&scale / v.denom())).collect();
        let column = self
            .price_small(&scale, &numers)
            .unwrap_or_else(|| self.price_big(&scale, &numers));
        column.or_else(|| {
            (0..self.k)
                .find(|&a| y[a].is_negative())
                .map(|a| columns + a)
        })
    }

    fn price_small(&mut self, scale: &BigInt, numers: &[BigInt]) -> Option<Option<usize>> {
        let h = self.small_h.as_ref()?;
        let scale = scale.to_i64().map(i128::from)?;
        let p: Vec<i128> = numers
            .iter()
            .map(|v| v.to_i64().map(i128::from))
            .collect::<Option<_>>()?;
        let sums = &mut self.sums_small;
        for c in 1..sums.len() {
            let low = c.trailing_zeros() as usize;
            sums[c] = sums[c & (c - 1)] + p[low];
            if h[c] * scale < sums[c] {
                return Some(Some(c - 1));
            }
        }
        Some(None)
    }

    fn price_big(&mut self, scale: &BigInt, numers: &[BigInt]) -> Option<usize> {
        let sums = &mut self.sums_big;
        sums.clear();
        sums.resize(1 << self.k, BigInt::zero());
        for c in 1..sums.len() {
            let low = c.trailing_zeros() as usize;
            sums[c] = &sums[c & (c - 1)] + &numers[low];
            if &self.h[c] * scale < sums[c] {
                return Some(c - 1);
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn check_duality(k: usize, h: &[BigInt], s: &CoverSolution) {
        let dual: BigRational = s.dual.iter().sum();
        assert_eq!(dual, s.objective);
        for (c, cost) in h.iter().enumerate().skip(1) {
            let load: BigRational = (0..k)
                .filter(|a| c >> a & 1 == 1)
                .map(|a| s.dual[a].clone())
                .sum();
            assert!(load <= BigRational::from_integer(cost.clone()));
        }
        for a in 0..k {
            let covered: BigRational = s
                .cover
                .iter()
                .filter(|(m, _)| m >> a & 1 == 1)
                .map(|(_, b)| b.clone())
                .sum();
            assert!(covered >= BigRational::one());
        }
        let primal: BigRational = s
            .cover
            .iter()
            .map(|(m, b)| b * BigRational::from_integer(h[*m as usize].clone()))
            .sum();
        assert_eq!(primal, s.objective);
    }

    #[test]
    fn three_pairs_fractional_optimum() {
        // Singletons and pairs cost 1, the triple costs 2: the three pairs at
        // weight 1/2 give 3/2.
        let h = ints(&[0, 1, 1, 1, 1, 1, 1, 2]);
        let s = solve_cover(3, &h);
        assert_eq!(s.objective, BigRational::new(3.into(), 2.into()));
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(
            s.cover,
            vec![(3, half.clone()), (5, half.clone()), (6, half)]
        );
        check_duality(3, &h, &s);
    }

    #[test]
    fn additive_costs_take_singletons() {
        let h: Vec<BigInt> = (0..16u32).map(|c| BigInt::from(c.count_ones())).collect();
        let s = solve_cover(4, &h);
        assert_eq!(s.objective, BigRational::from_integer(4.into()));
        check_duality(4, &h, &s);
    }

    #[test]
    fn free_columns_and_zero_costs() {
        let h = ints(&[0, 5, 5, 0]);
        let s = solve_cover(2, &h);
        assert!(s.objective.is_zero());
        assert_eq!(s.cover.len(), 1);
        check_duality(2, &h, &s);
        assert!(solve_cover(0, &ints(&[7])).objective.is_zero());
    }

    #[test]
    fn huge_costs_use_big_pricing() {
        let huge = BigInt::from(i128::MAX) * BigInt::from(4);
        let h = vec![BigInt::zero(), huge.clone(), BigInt::from(3), huge.clone()];
        let s = solve_cover(2, &h);
        assert_eq!(s.objective, BigRational::from_integer(huge.clone()));
        check_duality(2, &h, &s);
    }

    #[test]
    fn random_tables_satisfy_duality() {
        let mut state = 0x9e37_79b9_7f4a_7c15u64;
        for k in 1..=6 {
            for _ in 0..20 {
                let h: Vec<BigInt> = (0..1usize << k)
                    .map(|_| {
                        state ^= state << 13;
                        state ^= state >> 7;
                        state ^= state << 17;
                        BigInt::from(state % 9)
                    })
                    .collect();
                check_duality(k, &h, &solve_cover(k, &h));
            }
        }
    }
}
