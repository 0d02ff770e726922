//! Per-vertex color distributions and the operators that evolve them.
//!
//! A [`DistributionMatrix`] has one column per vertex and one row per
//! color. Every column is a unit vector; the squared entries of column `j`
//! are the probabilities of vertex `j` taking each color.

mod explore;
mod init;
mod orthogonal;
mod update;

use std::fmt::Write as _;
use std::ops::{Deref, DerefMut};

use rand::Rng;

use crate::coloring::Color;
use crate::error::ContractError;
use crate::num::Scalar;

pub use explore::{orth_explore, ExploreReport};
pub use init::{drop_color, inherited_init, min_class, sample_population, sample_with_inheritance, uniform_population};
pub use orthogonal::{random_orthogonal, OrthogonalMatrix};
pub use update::{disturb_column, exploit_column, refine_q, RefineQParams, RefineQStats};

/// `k x n` matrix with unit 2-norm columns, stored column-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DistributionMatrix<T> {
    k: usize,
    n: usize,
    data: Vec<T>,
}

impl<T: Scalar> DistributionMatrix<T> {
    /// Every entry `1/sqrt(k)`: all colors equally likely for every vertex.
    pub fn uniform(k: usize, n: usize) -> Self {
        assert!(k >= 1, "need at least one color");
        let value = T::one() / T::of(k as f64).sqrt();
        Self { k, n, data: vec![value; k * n] }
    }

    /// Builds a matrix from columns, checking they all have length `k` and
    /// unit norm within the scalar's tolerance.
    pub fn from_columns(k: usize, columns: &[Vec<T>]) -> Result<Self, ContractError> {
        let mut data = Vec::with_capacity(k * columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != k {
                return Err(ContractError::LengthMismatch { expected: k, actual: col.len() });
            }
            let dev = (norm(col) - T::one()).abs().as_f64();
            if !(dev <= T::UNIT_TOLERANCE) {
                return Err(ContractError::InvalidParameter {
                    name: "column",
                    reason: format!("column {j} has norm deviation {dev:e}"),
                });
            }
            data.extend_from_slice(col);
        }
        Ok(Self { k, n: columns.len(), data })
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn column(&self, j: usize) -> &[T] {
        &self.data[j * self.k..(j + 1) * self.k]
    }

    #[inline]
    pub fn column_mut(&mut self, j: usize) -> &mut [T] {
        &mut self.data[j * self.k..(j + 1) * self.k]
    }

    pub fn columns(&self) -> impl Iterator<Item = &[T]> {
        self.data.chunks_exact(self.k)
    }

    /// Entry at color `l`, vertex `j`.
    #[inline]
    pub fn get(&self, l: usize, j: usize) -> T {
        self.data[j * self.k + l]
    }

    /// Largest `| ||col||_2 - 1 |` over all columns (zero for `n = 0`).
    pub fn max_norm_deviation(&self) -> f64 {
        self.columns().map(|c| (norm(c) - T::one()).abs().as_f64()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|x| x.is_finite())
    }

    /// Draws one color per column.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<Color> {
        self.columns().map(|c| sample_column(c, rng)).collect()
    }

    /// Column `j` with row `row` removed and the remainder rescaled to unit
    /// norm. A column that had all of its mass on `row` becomes uniform.
    pub fn column_without_row(&self, j: usize, row: usize) -> Vec<T> {
        let mut out: Vec<T> = self.column(j).iter().enumerate().filter_map(|(l, &x)| (l != row).then_some(x)).collect();
        let mass = out.iter().fold(T::zero(), |acc, &x| acc + x * x);
        if mass.as_f64() < 1e-12 {
            let value = T::one() / T::of(out.len() as f64).sqrt();
            out.iter_mut().for_each(|x| *x = value);
        } else {
            let scale = T::one() / mass.sqrt();
            out.iter_mut().for_each(|x| *x *= scale);
        }
        out
    }

    /// The matrix with one color row deleted and columns renormalized.
    pub fn without_row(&self, row: usize) -> Result<Self, ContractError> {
        if self.k < 2 {
            return Err(ContractError::TooFewColors { k: self.k });
        }
        let mut data = Vec::with_capacity((self.k - 1) * self.n);
        for j in 0..self.n {
            data.extend(self.column_without_row(j, row));
        }
        Ok(Self { k: self.k - 1, n: self.n, data })
    }

    /// Assembles a matrix from already-normalized column data.
    pub(crate) fn from_raw(k: usize, n: usize, data: Vec<T>) -> Self {
        debug_assert_eq!(data.len(), k * n);
        let m = Self { k, n, data };
        debug_assert!(m.max_norm_deviation() <= T::UNIT_TOLERANCE);
        m
    }

    /// Debug dump: one CSV row per color, one field per vertex.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for l in 0..self.k {
            for j in 0..self.n {
                if j > 0 {
                    out.push(',');
                }
                write!(out, "{}", self.get(l, j)).unwrap();
            }
            out.push('\n');
        }
        out
    }
}

/// Population of distribution matrices sharing `k` and `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct DistributionPopulation<T> {
    individuals: Vec<DistributionMatrix<T>>,
}

impl<T: Scalar> DistributionPopulation<T> {
    pub fn new(individuals: Vec<DistributionMatrix<T>>) -> Result<Self, ContractError> {
        if let Some(first) = individuals.first() {
            for m in &individuals {
                if m.k() != first.k() || m.n() != first.n() {
                    return Err(ContractError::LengthMismatch {
                        expected: first.k() * first.n(),
                        actual: m.k() * m.n(),
                    });
                }
            }
        }
        Ok(Self { individuals })
    }

    pub fn max_norm_deviation(&self) -> f64 {
        self.individuals.iter().map(DistributionMatrix::max_norm_deviation).fold(0.0, f64::max)
    }

    pub fn into_inner(self) -> Vec<DistributionMatrix<T>> {
        self.individuals
    }
}

impl<T> Deref for DistributionPopulation<T> {
    type Target = [DistributionMatrix<T>];

    fn deref(&self) -> &Self::Target {
        &self.individuals
    }
}

impl<T> DerefMut for DistributionPopulation<T> {
    fn deref_mut(&mut self) -> &mut Self::Target {
        &mut self.individuals
    }
}

#[inline]
pub(crate) fn norm<T: Scalar>(v: &[T]) -> T {
    v.iter().fold(T::zero(), |acc, &x| acc + x * x).sqrt()
}

/// Draws a color with probability equal to the squared column entry.
pub fn sample_column<T: Scalar, R: Rng + ?Sized>(col: &[T], rng: &mut R) -> Color {
    let u: f64 = rng.random();
    let mut acc = 0.0;
    let mut last_nonzero = 0;
    for (l, &x) in col.iter().enumerate() {
        let p = (x * x).as_f64();
        if p > 0.0 {
            last_nonzero = l;
        }
        acc += p;
        if u < acc {
            return l;
        }
    }
    // rounding left the cumulative mass a hair under one
    last_nonzero
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn uniform_entries() {
        let m = DistributionMatrix::<f64>::uniform(4, 3);
        assert!(m.columns().flatten().all(|&x| x == 0.5));
        let one = DistributionMatrix::<f64>::uniform(1, 2);
        assert!(one.columns().flatten().all(|&x| x == 1.0));
        for k in 1..40 {
            assert!(DistributionMatrix::<f64>::uniform(k, 5).max_norm_deviation() < 1e-15);
        }
        assert!(DistributionMatrix::<f32>::uniform(7, 5).max_norm_deviation() < 1e-6);
    }

    #[test]
    fn degenerate_column_always_samples_its_color() {
        let mut rng = crate::SeededRng::seed_from_u64(3);
        let col = [0.0, 1.0, 0.0];
        assert!((0..1000).all(|_| sample_column(&col, &mut rng) == 1));
    }

    #[test]
    fn row_deletion_renormalizes() {
        let s = 1.0 / 3f64.sqrt();
        let m = DistributionMatrix::from_columns(3, &[vec![s, s, s], vec![0.0, 1.0, 0.0]]).unwrap();
        let r = m.without_row(1).unwrap();
        assert_eq!(r.k(), 2);
        let h = 1.0 / 2f64.sqrt();
        assert!((r.get(0, 0) - h).abs() < 1e-15 && (r.get(1, 0) - h).abs() < 1e-15);
        // all mass was on the deleted row
        assert_eq!(r.column(1), &[h, h]);
        assert!(DistributionMatrix::<f64>::uniform(1, 2).without_row(0).is_err());
    }

    #[test]
    fn from_columns_checks_norm() {
        assert!(DistributionMatrix::from_columns(2, &[vec![1.0, 1.0]]).is_err());
        assert!(DistributionMatrix::from_columns(2, &[vec![1.0]]).is_err());
    }

    #[test]
    fn csv_dump_shape() {
        let csv = DistributionMatrix::<f64>::uniform(2, 3).to_csv();
        assert_eq!(csv.lines().count(), 2);
        assert!(csv.lines().all(|l| l.split(',').count() == 3));
    }
}
