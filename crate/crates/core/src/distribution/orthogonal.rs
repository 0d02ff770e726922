//! Haar-distributed random orthogonal matrices via Householder QR.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::num::Scalar;

/// Dense square orthogonal matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthogonalMatrix<T> {
    dim: usize,
    data: Vec<T>,
}

impl<T: Scalar> OrthogonalMatrix<T> {
    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> T {
        self.data[row * self.dim + col]
    }

    /// Replaces `v` with `M v`.
    pub fn apply(&self, v: &mut [T]) {
        assert_eq!(v.len(), self.dim);
        let input = v.to_vec();
        for (i, out) in v.iter_mut().enumerate() {
            let row = &self.data[i * self.dim..(i + 1) * self.dim];
            *out = row.iter().zip(&input).fold(T::zero(), |acc, (&a, &b)| acc + a * b);
        }
    }

    /// Largest entry of `|M^T M - I|`.
    pub fn orthogonality_error(&self) -> f64 {
        let d = self.dim;
        let mut worst = 0.0f64;
        for a in 0..d {
            for b in 0..d {
                let mut dot = T::zero();
                for r in 0..d {
                    dot += self.get(r, a) * self.get(r, b);
                }
                let target = if a == b { T::one() } else { T::zero() };
                worst = worst.max((dot - target).abs().as_f64());
            }
        }
        worst
    }
}

/// Orthogonal factor of the QR decomposition of a matrix with i.i.d.
/// standard normal entries, with column signs fixed so that `R` has a
/// positive diagonal. That makes the result Haar-distributed.
pub fn random_orthogonal<T: Scalar, R: Rng + ?Sized>(dim: usize, rng: &mut R) -> OrthogonalMatrix<T> {
    assert!(dim >= 1, "dimension must be positive");
    loop {
        let a: Vec<f64> = (0..dim * dim).map(|_| rng.sample(StandardNormal)).collect();
        if let Some(q) = householder_q(dim, a) {
            return OrthogonalMatrix { dim, data: q.into_iter().map(T::of).collect() };
        }
    }
}

/// Q of `A = QR` with the sign correction applied; `None` if `A` is
/// numerically singular. `a` is column-major. Computed in `f64` regardless
/// of the output scalar.
fn householder_q(d: usize, mut a: Vec<f64>) -> Option<Vec<f64>> {
    let mut reflectors: Vec<Vec<f64>> = Vec::with_capacity(d);
    let mut diag_sign = vec![1.0; d];
    let scale = (d as f64).sqrt();

    for j in 0..d {
        let col = &a[j * d + j..(j + 1) * d];
        let x_norm = col.iter().map(|x| x * x).sum::<f64>().sqrt();
        if x_norm < 1e-10 * scale {
            return None;
        }
        let x0 = col[0];
        let alpha = if x0 >= 0.0 { -x_norm } else { x_norm };
        let mut v: Vec<f64> = col.to_vec();
        v[0] -= alpha;
        let v_norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        // v_norm >= x_norm > 0 because alpha has the opposite sign of x0
        v.iter_mut().for_each(|x| *x /= v_norm);

        // A[j.., j..] -= 2 v (v^T A[j.., j..])
        for c in j..d {
            let colc = &mut a[c * d + j..(c + 1) * d];
            let dot: f64 = v.iter().zip(colc.iter()).map(|(p, q)| p * q).sum();
            for (x, &vi) in colc.iter_mut().zip(&v) {
                *x -= 2.0 * dot * vi;
            }
        }
        diag_sign[j] = if alpha >= 0.0 { 1.0 } else { -1.0 };
        reflectors.push(v);
    }

    // Q = H_0 H_1 ... H_{d-1}, accumulated right-to-left onto I (column-major).
    let mut q = vec![0.0; d * d];
    for i in 0..d {
        q[i * d + i] = 1.0;
    }
    for j in (0..d).rev() {
        let v = &reflectors[j];
        for c in 0..d {
            let colc = &mut q[c * d + j..(c + 1) * d];
            let dot: f64 = v.iter().zip(colc.iter()).map(|(p, q)| p * q).sum();
            for (x, &vi) in colc.iter_mut().zip(v) {
                *x -= 2.0 * dot * vi;
            }
        }
    }

    // Q D with D = sign(diag R); transpose into row-major on the way out.
    let mut out = vec![0.0; d * d];
    for c in 0..d {
        for r in 0..d {
            out[r * d + c] = q[c * d + r] * diag_sign[c];
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn one_by_one_is_plus_or_minus_one() {
        let mut rng = crate::SeededRng::seed_from_u64(4);
        let mut seen = [false; 2];
        for _ in 0..64 {
            let m = random_orthogonal::<f64, _>(1, &mut rng);
            let x = m.get(0, 0);
            assert!(x == 1.0 || x == -1.0);
            seen[(x > 0.0) as usize] = true;
        }
        assert!(seen[0] && seen[1]);
    }

    #[test]
    fn orthogonal_and_norm_preserving() {
        let mut rng = crate::SeededRng::seed_from_u64(5);
        for dim in 2..=30 {
            let m = random_orthogonal::<f64, _>(dim, &mut rng);
            assert!(m.orthogonality_error() <= 1e-9, "dim {dim}");
            let mut v: Vec<f64> = (0..dim).map(|i| (i as f64).sin()).collect();
            let before = crate::distribution::norm(&v);
            m.apply(&mut v);
            assert!((crate::distribution::norm(&v) - before).abs() <= 1e-9);
        }
    }

    #[test]
    fn known_qr_recovers_q() {
        // A = [[2, 0], [0, 3]] has Q = I once R is made positive
        let q = householder_q(2, vec![2.0, 0.0, 0.0, 3.0]).unwrap();
        for (got, want) in q.iter().zip([1.0, 0.0, 0.0, 1.0]) {
            assert!((got - want).abs() < 1e-15);
        }
        assert!(householder_q(2, vec![1.0, 2.0, 2.0, 4.0]).is_none());
    }

    #[test]
    fn f32_variant() {
        let mut rng = crate::SeededRng::seed_from_u64(6);
        let m = random_orthogonal::<f32, _>(12, &mut rng);
        assert!(m.orthogonality_error() < 1e-5);
    }
}
