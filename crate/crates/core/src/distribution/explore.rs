use rand::seq::index;
use rand::Rng;

use super::{random_orthogonal, DistributionPopulation};
use crate::num::Scalar;

/// What one [`orth_explore`] call touched.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExploreReport {
    /// Indices of the transformed individuals, worst first.
    pub individuals: Vec<usize>,
    /// Columns transformed per chosen individual.
    pub columns_per_individual: usize,
}

/// Orthogonal exploration.
///
/// Ranks individuals by the conflict count of their paired solution
/// (worst first, lower index first on ties), picks `m` uniformly in
/// `[1, max(1, np/2)]` of the worst, and in each replaces `c` distinct random
/// columns by `M col` with a fresh random orthogonal `M` per column, where
/// `c` is uniform in `[1, max(1, n/10)]`.
pub fn orth_explore<T: Scalar, R: Rng + ?Sized>(
    qpop: &mut DistributionPopulation<T>,
    fitness: &[usize],
    rng: &mut R,
) -> ExploreReport {
    assert_eq!(qpop.len(), fitness.len());
    let np = qpop.len();
    if np == 0 {
        return ExploreReport { individuals: Vec::new(), columns_per_individual: 0 };
    }
    let n = qpop[0].n();
    let k = qpop[0].k();

    let mut order: Vec<usize> = (0..np).collect();
    order.sort_by(|&a, &b| fitness[b].cmp(&fitness[a]));
    let m = rng.random_range(1..=(np / 2).max(1));
    let c = rng.random_range(1..=(n / 10).max(1));
    order.truncate(m);

    if n == 0 {
        return ExploreReport { individuals: order, columns_per_individual: 0 };
    }
    for &i in &order {
        let q = &mut qpop[i];
        for j in index::sample(rng, n, c) {
            let rot = random_orthogonal::<T, _>(k, rng);
            rot.apply(q.column_mut(j));
        }
        debug_assert!(q.max_norm_deviation() <= T::UNIT_TOLERANCE);
    }
    ExploreReport { individuals: order, columns_per_individual: c }
}
