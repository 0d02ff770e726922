//! Column refinement: exploitation toward a good solution's colors and
//! disturbance away from them.

use rand::Rng;

use super::{DistributionMatrix, DistributionPopulation};
use crate::coloring::{Assignment, Color};
use crate::num::Scalar;

/// Exploitation update of one unit column.
///
/// First mixes in weight `alpha` toward color `target`: the `target` entry
/// becomes `sqrt(alpha + (1 - alpha) q^2)` and every other entry
/// `sqrt((1 - alpha) q^2)`. Then, when `from != target`, the pair of
/// entries `(from, target)` is rotated counterclockwise by `dtheta`.
pub fn exploit_column<T: Scalar>(col: &mut [T], from: Color, target: Color, alpha: T, dtheta: T) {
    let keep = T::one() - alpha;
    for (l, x) in col.iter_mut().enumerate() {
        let mass = keep * *x * *x;
        *x = if l == target { (alpha + mass).sqrt() } else { mass.sqrt() };
    }
    if from != target {
        let (s, c) = dtheta.sin_cos();
        let a = col[from];
        let b = col[target];
        col[from] = c * a - s * b;
        col[target] = s * a + c * b;
    }
}

/// Disturbance update of one unit column: shrinks the mass on `l0` by the
/// factor `lambda` and rescales everything so the column stays unit norm.
///
/// A column with all of its mass on `l0` is a fixed point.
pub fn disturb_column<T: Scalar>(col: &mut [T], l0: Color, lambda: T) {
    let q0 = col[l0] * col[l0];
    let denom = T::one() - (T::one() - lambda) * q0;
    if !(denom > T::zero()) {
        return;
    }
    for (l, x) in col.iter_mut().enumerate() {
        let mass = *x * *x;
        *x = if l == l0 { (lambda * mass / denom).sqrt() } else { (mass / denom).sqrt() };
    }
}

/// Parameters of [`refine_q`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RefineQParams {
    /// Probability of the exploitation branch per column.
    pub p0: f64,
    pub alpha: f64,
    pub dtheta: f64,
    pub lambda: f64,
}

/// Branch counts from one [`refine_q`] call.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RefineQStats {
    pub exploited: usize,
    pub disturbed: usize,
}

/// Refines every column of every individual.
///
/// Individual `i` is paired with `sampled[i]` (the solution before local
/// search) and `refined[i]` (after). With probability `p0` a column takes
/// [`exploit_column`] from the sampled color toward the refined color,
/// otherwise [`disturb_column`] away from the refined color.
pub fn refine_q<T: Scalar, R: Rng + ?Sized>(
    qpop: &mut DistributionPopulation<T>,
    sampled: &[Assignment],
    refined: &[Assignment],
    params: &RefineQParams,
    rng: &mut R,
) -> RefineQStats {
    assert_eq!(qpop.len(), sampled.len());
    assert_eq!(qpop.len(), refined.len());
    let alpha = T::of(params.alpha);
    let dtheta = T::of(params.dtheta);
    let lambda = T::of(params.lambda);
    let mut stats = RefineQStats::default();
    for ((q, x), y) in qpop.iter_mut().zip(sampled).zip(refined) {
        refine_matrix(q, x.colors(), y.colors(), params.p0, alpha, dtheta, lambda, &mut stats, rng);
    }
    stats
}

#[allow(clippy::too_many_arguments)]
fn refine_matrix<T: Scalar, R: Rng + ?Sized>(
    q: &mut DistributionMatrix<T>,
    x: &[Color],
    y: &[Color],
    p0: f64,
    alpha: T,
    dtheta: T,
    lambda: T,
    stats: &mut RefineQStats,
    rng: &mut R,
) {
    assert_eq!(q.n(), x.len());
    assert_eq!(q.n(), y.len());
    for j in 0..q.n() {
        let col = q.column_mut(j);
        if rng.random::<f64>() <= p0 {
            exploit_column(col, x[j], y[j], alpha, dtheta);
            stats.exploited += 1;
        } else {
            disturb_column(col, y[j], lambda);
            stats.disturbed += 1;
        }
    }
    debug_assert!(q.max_norm_deviation() <= T::UNIT_TOLERANCE);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distribution::norm;

    #[test]
    fn exploit_without_rotation() {
        let h = 0.5f64.sqrt();
        let mut col = [h, h];
        exploit_column(&mut col, 0, 0, 0.2, 0.05 * std::f64::consts::PI);
        assert!((col[0] - 0.6f64.sqrt()).abs() < 1e-15);
        assert!((col[1] - 0.4f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn exploit_identity_limit() {
        let mut col = [0.6f64, 0.8, 0.0];
        exploit_column(&mut col, 1, 0, 0.0, 0.0);
        assert!((col[0] - 0.6).abs() < 1e-15 && (col[1] - 0.8).abs() < 1e-15);
    }

    #[test]
    fn disturb_values() {
        let h = 0.5f64.sqrt();
        let mut col = [h, h];
        disturb_column(&mut col, 0, 0.5);
        assert!((col[0] - (1.0f64 / 3.0).sqrt()).abs() < 1e-15);
        assert!((col[1] - (2.0f64 / 3.0).sqrt()).abs() < 1e-15);
        assert!((norm(&col) - 1.0).abs() < 1e-15);

        let mut fixed = [1.0, 0.0];
        disturb_column(&mut fixed, 0, 0.5);
        assert_eq!(fixed, [1.0, 0.0]);
    }

    #[test]
    fn disturb_with_zero_lambda_on_collapsed_column_is_noop() {
        let mut col = [0.0, 1.0];
        disturb_column(&mut col, 1, 0.0);
        assert_eq!(col, [0.0, 1.0]);
    }
}
