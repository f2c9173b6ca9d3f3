//! Natural greedy ordering, greedy sums and residuals of the thresholding
//! greedy algorithm.

use crate::error::Result;
use crate::space::{project, CoeffVector, SpaceSpec};

/// The natural greedy ordering of `supp(x)`: indices sorted by strictly
/// decreasing |coefficient|, magnitude ties broken by the smaller index.
/// Ties are compared exactly on the floating-point values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GreedyOrdering {
    order: Vec<u32>,
}

impl GreedyOrdering {
    pub fn indices(&self) -> &[u32] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// First `min(m, len)` indices of the ordering.
    pub fn prefix(&self, m: usize) -> &[u32] {
        &self.order[..m.min(self.order.len())]
    }
}

pub fn greedy_ordering(x: &CoeffVector) -> GreedyOrdering {
    let mut order: Vec<u32> = x.support_vec();
    order.sort_by(|&a, &b| {
        x.get(b)
            .abs()
            .partial_cmp(&x.get(a).abs())
            .unwrap()
            .then(a.cmp(&b))
    });
    GreedyOrdering { order }
}

/// `G_m(x)`: restriction of `x` to the first `m` indices of the natural greedy
/// ordering. `G_0(x) = 0` and `G_m(x) = x` for `m >= |supp(x)|`.
pub fn greedy_sum(x: &CoeffVector, m: usize) -> CoeffVector {
    project(x, greedy_ordering(x).prefix(m))
}

/// `x - G_m(x)`.
pub fn greedy_residual(x: &CoeffVector, m: usize) -> CoeffVector {
    let ordering = greedy_ordering(x);
    let keep: Vec<u32> = ordering.indices()[m.min(ordering.len())..].to_vec();
    project(x, &keep)
}

/// `||x - G_m(x)||` in the given space.
pub fn greedy_residual_norm(space: &SpaceSpec, x: &CoeffVector, m: usize) -> Result<f64> {
    space.norm(&greedy_residual(x, m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn v(values: &[f64]) -> CoeffVector {
        CoeffVector::from_dense(values).unwrap()
    }

    #[test]
    fn ordering_examples() {
        assert_eq!(greedy_ordering(&v(&[0.5, -2.0, 1.0])).indices(), &[2, 3, 1]);
        // tie |1| = |-1| broken by lower index
        assert_eq!(greedy_ordering(&v(&[1.0, -1.0, 0.5])).indices(), &[1, 2, 3]);
        let sparse = CoeffVector::from_pairs([(2, 3.0), (4, 2.0)]).unwrap();
        assert_eq!(greedy_ordering(&sparse).indices(), &[2, 4]);
        assert!(greedy_ordering(&CoeffVector::empty()).is_empty());
    }

    #[test]
    fn greedy_sum_examples() {
        assert_eq!(greedy_sum(&v(&[3.0, 2.0, 1.0]), 1), v(&[3.0]));
        assert_eq!(greedy_sum(&v(&[1.0, -1.0, 0.5]), 1), v(&[1.0]));
        assert_eq!(greedy_sum(&v(&[3.0, 2.0, 1.0]), 5), v(&[3.0, 2.0, 1.0]));
        assert!(greedy_sum(&v(&[3.0, 2.0, 1.0]), 0).is_empty());
    }

    #[test]
    fn residual_norm_examples() {
        let x = v(&[3.0, 2.0, 1.0]);
        let l2 = SpaceSpec::lp(2.0).unwrap();
        let l1 = SpaceSpec::lp(1.0).unwrap();
        assert_abs_diff_eq!(greedy_residual_norm(&l2, &x, 2).unwrap(), 1.0);
        assert_abs_diff_eq!(greedy_residual_norm(&l1, &x, 1).unwrap(), 3.0);
        assert_abs_diff_eq!(
            greedy_residual_norm(&SpaceSpec::SummingC0, &x, 0).unwrap(),
            SpaceSpec::SummingC0.norm(&x).unwrap()
        );
    }

    fn small_vec() -> impl Strategy<Value = CoeffVector> {
        proptest::collection::vec(-4.0..4.0f64, 0..7)
            .prop_map(|vals| CoeffVector::from_dense(&vals).unwrap())
    }

    proptest! {
        #[test]
        fn deterministic_and_decreasing(x in small_vec()) {
            let ord = greedy_ordering(&x);
            prop_assert_eq!(greedy_ordering(&x), ord.clone());
            let mut sorted = ord.indices().to_vec();
            sorted.sort_unstable();
            prop_assert_eq!(sorted, x.support_vec());
            for w in ord.indices().windows(2) {
                let (a, b) = (x.get(w[0]).abs(), x.get(w[1]).abs());
                prop_assert!(a > b || (a == b && w[0] < w[1]));
            }
        }

        #[test]
        fn residual_is_sorted_tail_in_lp(x in small_vec(), m in 0usize..8) {
            let l3 = SpaceSpec::lp(3.0).unwrap();
            let mut mags: Vec<f64> = x.iter().map(|(_, c)| c.abs()).collect();
            mags.sort_by(|a, b| b.partial_cmp(a).unwrap());
            let tail: f64 = mags.iter().skip(m).map(|c| c.powi(3)).sum::<f64>().powf(1.0 / 3.0);
            let res = greedy_residual_norm(&l3, &x, m).unwrap();
            prop_assert!((res - tail).abs() <= 1e-9 * (1.0 + tail));
        }

        #[test]
        fn greedy_sum_idempotent(x in small_vec(), m in 0usize..8) {
            let g = greedy_sum(&x, m);
            prop_assert_eq!(greedy_sum(&g, m), g.clone());
        }
    }
}
