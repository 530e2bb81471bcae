//! Precision-matrix assembly on scattered point sets.
//!
//! Entries are `Q[n,m] = v_n Q*(|s_n - s_m|) v_m` where `v` are SPH weights.
//! With `epsilon > 0` the off-diagonal entries satisfying
//! `|Q[n,m]| < epsilon * Q*(0) * v_n * v_m` are dropped (weak-interaction
//! truncation) and the result is stored as sparse triplets.
//!
//! Truncation can destroy positive definiteness. Truncated matrices are not
//! re-certified; run [`PrecisionMatrix::cholesky_check`] when it matters.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::precision::PrecisionFunction;

/// Largest order accepted by [`PrecisionMatrix::cholesky_check`].
pub const MAX_DENSE_CHECK: usize = 2000;

/// Sample locations with SPH weights and optional field values.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    dim: usize,
    coords: Vec<f64>,
    weights: Vec<f64>,
    values: Option<Vec<f64>>,
}

impl PointSet {
    /// Points from flat row-major coordinates (`dim` numbers per point), unit weights.
    pub fn new(dim: usize, coords: Vec<f64>) -> Result<Self> {
        if !(1..=3).contains(&dim) {
            return Err(Error::UnsupportedDimension(dim));
        }
        if !coords.len().is_multiple_of(dim) {
            return Err(Error::LengthMismatch {
                expected: (coords.len() / dim + 1) * dim,
                found: coords.len(),
            });
        }
        let n = coords.len() / dim;
        Ok(Self {
            dim,
            coords,
            weights: vec![1.0; n],
            values: None,
        })
    }

    pub fn from_points<const D: usize>(points: &[[f64; D]]) -> Result<Self> {
        Self::new(D, points.iter().flatten().copied().collect())
    }

    pub fn with_weights(mut self, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != self.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                found: weights.len(),
            });
        }
        if let Some((index, &value)) = weights.iter().enumerate().find(|(_, w)| !(**w > 0.0)) {
            return Err(Error::NonPositiveWeight { index, value });
        }
        self.weights = weights;
        Ok(self)
    }

    pub fn with_values(mut self, values: Vec<f64>) -> Result<Self> {
        if values.len() != self.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                found: values.len(),
            });
        }
        self.values = Some(values);
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn position(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn positions(&self) -> impl Iterator<Item = &[f64]> {
        self.coords.chunks_exact(self.dim)
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn values(&self) -> Option<&[f64]> {
        self.values.as_deref()
    }

    pub fn distance(&self, i: usize, j: usize) -> f64 {
        euclidean(self.position(i), self.position(j))
    }

    /// The points at `indices`, in that order, with their weights and values.
    pub fn subset(&self, indices: &[usize]) -> Self {
        Self {
            dim: self.dim,
            coords: indices.iter().flat_map(|&i| self.position(i).iter().copied()).collect(),
            weights: indices.iter().map(|&i| self.weights[i]).collect(),
            values: self.values.as_ref().map(|v| indices.iter().map(|&i| v[i]).collect()),
        }
    }

    /// A copy with the extra point appended (unit weight, value `0` if values exist).
    pub fn with_point(&self, position: &[f64]) -> Result<Self> {
        if position.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: position.len(),
            });
        }
        let mut out = self.clone();
        out.coords.extend_from_slice(position);
        out.weights.push(1.0);
        if let Some(v) = out.values.as_mut() {
            v.push(0.0);
        }
        Ok(out)
    }
}

pub(crate) fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Triplet {
    pub row: usize,
    pub col: usize,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Storage {
    /// Row-major `N x N`.
    Dense(Vec<f64>),
    /// Both triangles and the diagonal, sorted by `(row, col)`.
    Sparse(Vec<Triplet>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Interaction {
    Strict,
    Weak,
    Independent,
}

/// Outcome of a dense Cholesky factorization attempt.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CholeskyReport {
    pub positive_definite: bool,
    /// Index of the first non-positive pivot.
    pub failed_pivot: Option<usize>,
}

/// Symmetric precision matrix, dense or truncated-sparse.
#[derive(Debug, Clone, PartialEq)]
pub struct PrecisionMatrix {
    order: usize,
    storage: Storage,
    epsilon: f64,
}

impl PrecisionMatrix {
    /// Wraps a row-major symmetric matrix.
    pub fn from_dense(order: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != order * order {
            return Err(Error::LengthMismatch {
                expected: order * order,
                found: data.len(),
            });
        }
        for i in 0..order {
            for j in 0..i {
                if data[i * order + j] != data[j * order + i] {
                    return Err(Error::Parse(format!("matrix is not symmetric at ({i}, {j})")));
                }
            }
        }
        Ok(Self {
            order,
            storage: Storage::Dense(data),
            epsilon: 0.0,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn storage(&self) -> &Storage {
        &self.storage
    }

    pub fn is_sparse(&self) -> bool {
        matches!(self.storage, Storage::Sparse(_))
    }

    fn check_index(&self, n: usize, m: usize) -> Result<()> {
        if n >= self.order || m >= self.order {
            Err(Error::IndexOutOfRange {
                row: n,
                col: m,
                order: self.order,
            })
        } else {
            Ok(())
        }
    }

    pub fn get(&self, n: usize, m: usize) -> Result<f64> {
        self.check_index(n, m)?;
        Ok(match &self.storage {
            Storage::Dense(data) => data[n * self.order + m],
            Storage::Sparse(triplets) => triplets
                .binary_search_by(|t| (t.row, t.col).cmp(&(n, m)))
                .map(|i| triplets[i].value)
                .unwrap_or(0.0),
        })
    }

    /// Number of stored nonzero entries (both triangles).
    pub fn nnz(&self) -> usize {
        match &self.storage {
            Storage::Dense(data) => data.iter().filter(|v| **v != 0.0).count(),
            Storage::Sparse(triplets) => triplets.iter().filter(|t| t.value != 0.0).count(),
        }
    }

    pub fn to_dense(&self) -> Vec<f64> {
        match &self.storage {
            Storage::Dense(data) => data.clone(),
            Storage::Sparse(triplets) => {
                let mut data = vec![0.0; self.order * self.order];
                for t in triplets {
                    data[t.row * self.order + t.col] = t.value;
                }
                data
            }
        }
    }

    /// Nonzero entries in row-major order.
    pub fn triplets(&self) -> Vec<Triplet> {
        match &self.storage {
            Storage::Dense(data) => data
                .iter()
                .enumerate()
                .filter(|(_, v)| **v != 0.0)
                .map(|(i, &value)| Triplet {
                    row: i / self.order,
                    col: i % self.order,
                    value,
                })
                .collect(),
            Storage::Sparse(triplets) => triplets.clone(),
        }
    }

    pub fn to_sparse(&self) -> Self {
        Self {
            order: self.order,
            storage: Storage::Sparse(self.triplets()),
            epsilon: self.epsilon,
        }
    }

    /// Principal sub-block on `indices` (in the given order), always dense.
    pub fn principal_submatrix(&self, indices: &[usize]) -> Result<Self> {
        let k = indices.len();
        let mut data = vec![0.0; k * k];
        for (a, &i) in indices.iter().enumerate() {
            for (b, &j) in indices.iter().enumerate() {
                data[a * k + b] = self.get(i, j)?;
            }
        }
        Ok(Self {
            order: k,
            storage: Storage::Dense(data),
            epsilon: self.epsilon,
        })
    }

    pub fn matvec(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.order {
            return Err(Error::LengthMismatch {
                expected: self.order,
                found: x.len(),
            });
        }
        let mut y = vec![0.0; self.order];
        match &self.storage {
            Storage::Dense(data) => {
                for (row, yi) in data.chunks_exact(self.order).zip(y.iter_mut()) {
                    *yi = row.iter().zip(x).map(|(a, b)| a * b).sum();
                }
            }
            Storage::Sparse(triplets) => {
                for t in triplets {
                    y[t.row] += t.value * x[t.col];
                }
            }
        }
        Ok(y)
    }

    /// `x^T Q x / 2`.
    pub fn energy(&self, x: &[f64]) -> Result<f64> {
        let y = self.matvec(x)?;
        Ok(0.5 * x.iter().zip(&y).map(|(a, b)| a * b).sum::<f64>())
    }

    /// Classifies the pair `(n, m)` against an absolute threshold `epsilon`.
    pub fn interaction_class(&self, n: usize, m: usize, epsilon: f64) -> Result<Interaction> {
        let q = self.get(n, m)?;
        Ok(if q == 0.0 {
            Interaction::Independent
        } else if q.abs() < epsilon {
            Interaction::Weak
        } else {
            Interaction::Strict
        })
    }

    /// Dense Cholesky factorization; sparse matrices are densified first.
    pub fn cholesky_check(&self) -> Result<CholeskyReport> {
        if self.order > MAX_DENSE_CHECK {
            return Err(Error::TooLargeForDenseCheck(self.order));
        }
        let n = self.order;
        let mut a = self.to_dense();
        for j in 0..n {
            let mut pivot = a[j * n + j];
            for k in 0..j {
                pivot -= a[j * n + k] * a[j * n + k];
            }
            if !(pivot > 0.0) {
                return Ok(CholeskyReport {
                    positive_definite: false,
                    failed_pivot: Some(j),
                });
            }
            let ljj = pivot.sqrt();
            a[j * n + j] = ljj;
            for i in j + 1..n {
                let mut s = a[i * n + j];
                for k in 0..j {
                    s -= a[i * n + k] * a[j * n + k];
                }
                a[i * n + j] = s / ljj;
            }
        }
        Ok(CholeskyReport {
            positive_definite: true,
            failed_pivot: None,
        })
    }
}

/// Assembles `Q[n,m] = v_n Q*(|s_n - s_m|) v_m`.
///
/// `epsilon = 0` gives dense storage. `epsilon > 0` truncates off-diagonal
/// entries below `epsilon * Q*(0) * v_n * v_m` and stores triplets; pairs
/// beyond [`PrecisionFunction::cutoff_radius`] are skipped without evaluation.
pub fn assemble(pf: &PrecisionFunction, pts: &PointSet, epsilon: f64) -> Result<PrecisionMatrix> {
    if pts.dim() != pf.d() {
        return Err(Error::DimensionMismatch {
            expected: pf.d(),
            found: pts.dim(),
        });
    }
    if !(epsilon >= 0.0) {
        return Err(Error::NegativeEpsilon(epsilon));
    }
    let n = pts.len();
    let q0 = pf.value_at_zero();
    let cutoff = pf.cutoff_radius(epsilon);
    let v = pts.weights();

    // upper triangle, one row per task
    let rows: Vec<Vec<(usize, f64)>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut row = Vec::new();
            for j in i + 1..n {
                let r = pts.distance(i, j);
                if cutoff.is_some_and(|rc| r >= rc) {
                    continue;
                }
                let q = v[i] * pf.value(r) * v[j];
                if epsilon > 0.0 && q.abs() < epsilon * q0 * v[i] * v[j] {
                    continue;
                }
                row.push((j, q));
            }
            row
        })
        .collect();

    let storage = if epsilon == 0.0 {
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            data[i * n + i] = v[i] * q0 * v[i];
        }
        for (i, row) in rows.iter().enumerate() {
            for &(j, q) in row {
                data[i * n + j] = q;
                data[j * n + i] = q;
            }
        }
        Storage::Dense(data)
    } else {
        let mut triplets = Vec::new();
        for i in 0..n {
            triplets.push(Triplet {
                row: i,
                col: i,
                value: v[i] * q0 * v[i],
            });
            for &(j, q) in &rows[i] {
                triplets.push(Triplet {
                    row: i,
                    col: j,
                    value: q,
                });
                triplets.push(Triplet {
                    row: j,
                    col: i,
                    value: q,
                });
            }
        }
        triplets.sort_by_key(|t| (t.row, t.col));
        Storage::Sparse(triplets)
    };
    Ok(PrecisionMatrix {
        order: n,
        storage,
        epsilon,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{matern_theta, validate};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn pf(h: f64, d: usize) -> PrecisionFunction {
        PrecisionFunction::gaussian(validate(0.3, -0.5, 2.0).unwrap(), h, d).unwrap()
    }

    fn random_points(rng: &mut ChaCha8Rng, n: usize, d: usize, side: f64) -> PointSet {
        PointSet::new(d, (0..n * d).map(|_| rng.random::<f64>() * side).collect()).unwrap()
    }

    #[test]
    fn small_matrices() {
        let q = pf(1.0, 2);
        let one = PointSet::from_points(&[[1.0, 2.0]]).unwrap();
        let m = assemble(&q, &one, 0.0).unwrap();
        assert_eq!(m.to_dense(), vec![q.value_at_zero()]);
        assert!(m.cholesky_check().unwrap().positive_definite);

        let two = PointSet::from_points(&[[0.0, 0.0], [0.6, 0.8]]).unwrap();
        let m = assemble(&q, &two, 0.0).unwrap();
        let (a, b) = (q.value_at_zero(), q.value(1.0));
        assert_eq!(m.to_dense(), vec![a, b, b, a]);
    }

    #[test]
    fn coincident_points_are_legal() {
        let q = pf(1.0, 1);
        let pts = PointSet::from_points(&[[0.5], [0.5]])
            .unwrap()
            .with_weights(vec![2.0, 3.0])
            .unwrap();
        let m = assemble(&q, &pts, 0.0).unwrap();
        assert_eq!(m.get(0, 1).unwrap(), 2.0 * q.value_at_zero() * 3.0);
    }

    #[test]
    fn input_errors() {
        let q = pf(1.0, 2);
        let pts = PointSet::from_points(&[[0.0]]).unwrap();
        assert!(matches!(assemble(&q, &pts, 0.0), Err(Error::DimensionMismatch { .. })));
        let pts = PointSet::from_points(&[[0.0, 1.0]]).unwrap();
        assert_eq!(assemble(&q, &pts, -1e-3), Err(Error::NegativeEpsilon(-1e-3)));
        assert!(matches!(
            PointSet::from_points(&[[0.0], [1.0]])
                .unwrap()
                .with_weights(vec![1.0, 0.0]),
            Err(Error::NonPositiveWeight { index: 1, .. })
        ));
        assert!(PointSet::new(2, vec![1.0, 2.0, 3.0]).is_err());
        assert!(PointSet::new(4, vec![]).is_err());
    }

    #[test]
    fn diagonal_is_weighted_zero_lag() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let q = pf(0.8, 2);
        let w: Vec<f64> = (0..30).map(|_| 0.5 + rng.random::<f64>()).collect();
        let pts = random_points(&mut rng, 30, 2, 10.0).with_weights(w.clone()).unwrap();
        let m = assemble(&q, &pts, 0.0).unwrap();
        for (i, wi) in w.iter().enumerate() {
            assert_eq!(m.get(i, i).unwrap(), wi * q.value_at_zero() * wi);
        }
    }

    #[test]
    fn weights_act_as_diagonal_scaling() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let q = pf(1.0, 2);
        let base = random_points(&mut rng, 25, 2, 8.0);
        let w: Vec<f64> = (0..25).map(|_| 0.2 + 2.0 * rng.random::<f64>()).collect();
        let unit = assemble(&q, &base, 0.0).unwrap().to_dense();
        let weighted = assemble(&q, &base.clone().with_weights(w.clone()).unwrap(), 0.0)
            .unwrap()
            .to_dense();
        for i in 0..25 {
            for j in 0..25 {
                let want = w[i] * unit[i * 25 + j] * w[j];
                assert!((weighted[i * 25 + j] - want).abs() <= 1e-15 * want.abs().max(1e-300));
            }
        }
    }

    #[test]
    fn matern_sweep_is_positive_definite() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let q = PrecisionFunction::gaussian(matern_theta(5.0).unwrap(), 1.0, 2).unwrap();
        let pts = random_points(&mut rng, 200, 2, 50.0);
        let m = assemble(&q, &pts, 0.0).unwrap();
        assert_eq!(
            m.cholesky_check().unwrap(),
            CholeskyReport {
                positive_definite: true,
                failed_pivot: None
            }
        );
    }

    #[test]
    fn corrupted_matrix_fails_cholesky() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let q = pf(1.0, 2);
        let pts = random_points(&mut rng, 12, 2, 6.0);
        let m = assemble(&q, &pts, 0.0).unwrap();
        let mut data = m.to_dense();
        let big = 10.0 * q.value_at_zero();
        data[2 * 12 + 7] = big;
        data[7 * 12 + 2] = big;
        let bad = PrecisionMatrix::from_dense(12, data).unwrap();
        let report = bad.cholesky_check().unwrap();
        assert!(!report.positive_definite);
        assert_eq!(report.failed_pivot, Some(7));
    }

    #[test]
    fn cholesky_size_limit() {
        let m = PrecisionMatrix {
            order: MAX_DENSE_CHECK + 1,
            storage: Storage::Sparse(vec![]),
            epsilon: 0.1,
        };
        assert_eq!(m.cholesky_check(), Err(Error::TooLargeForDenseCheck(2001)));
    }

    #[test]
    fn interaction_classes() {
        let q = pf(1.0, 1);
        let pts = PointSet::from_points(&[[0.0], [1.0], [30.0]]).unwrap();
        let m = assemble(&q, &pts, 1e-6).unwrap();
        assert_eq!(m.interaction_class(0, 0, 1e-6).unwrap(), Interaction::Strict);
        assert_eq!(m.interaction_class(0, 2, 1e-6).unwrap(), Interaction::Independent);
        let q01 = m.get(0, 1).unwrap().abs();
        assert_eq!(m.interaction_class(0, 1, 2.0 * q01).unwrap(), Interaction::Weak);
        assert_eq!(m.interaction_class(0, 1, 0.5 * q01).unwrap(), Interaction::Strict);
        assert!(matches!(
            m.interaction_class(0, 3, 1e-6),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn truncation_is_monotone_and_zero_is_dense() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let q = pf(1.0, 2);
        let pts = random_points(&mut rng, 80, 2, 15.0);
        let dense = assemble(&q, &pts, 0.0).unwrap();
        assert!(!dense.is_sparse());
        let mut prev = dense.nnz();
        for &eps in &[1e-12, 1e-8, 1e-4, 1e-2, 0.1, 0.5] {
            let m = assemble(&q, &pts, eps).unwrap();
            assert!(m.is_sparse());
            assert!(m.nnz() <= prev);
            prev = m.nnz();
            // same entries as truncating the dense matrix by hand
            for i in 0..80 {
                for j in 0..80 {
                    let full = dense.get(i, j).unwrap();
                    let want = if i != j && full.abs() < eps * q.value_at_zero() {
                        0.0
                    } else {
                        full
                    };
                    assert_eq!(m.get(i, j).unwrap(), want);
                }
            }
        }
    }

    #[test]
    fn sub_blocks_equal_fresh_assembly() {
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        let q = pf(1.3, 2);
        let pts = random_points(&mut rng, 40, 2, 12.0);
        let m = assemble(&q, &pts, 0.0).unwrap();
        let idx = [31, 2, 17, 5, 39, 0];
        let fresh = assemble(&q, &pts.subset(&idx), 0.0).unwrap();
        assert_eq!(m.principal_submatrix(&idx).unwrap().to_dense(), fresh.to_dense());
    }

    #[test]
    fn energy_examples() {
        let q = pf(1.0, 2);
        let one = PointSet::from_points(&[[0.0, 0.0]]).unwrap();
        let m = assemble(&q, &one, 0.0).unwrap();
        assert_eq!(m.energy(&[0.0]).unwrap(), 0.0);
        assert!((m.energy(&[3.0]).unwrap() - 4.5 * q.value_at_zero()).abs() < 1e-14);
        assert!(matches!(m.energy(&[1.0, 2.0]), Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn sparse_conversion_preserves_entries() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let q = pf(1.0, 2);
        let pts = random_points(&mut rng, 20, 2, 5.0);
        let m = assemble(&q, &pts, 0.0).unwrap();
        let s = m.to_sparse();
        assert!(s.is_sparse());
        assert_eq!(s.to_dense(), m.to_dense());
        let x: Vec<f64> = (0..20).map(|i| (i as f64).sin()).collect();
        assert!((s.energy(&x).unwrap() - m.energy(&x).unwrap()).abs() < 1e-12);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn energy_matches_double_loop_and_is_positive(seed in any::<u64>(), n in 1usize..50) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let q = pf(1.0, 2);
            let pts = random_points(&mut rng, n, 2, 20.0);
            let m = assemble(&q, &pts, 0.0).unwrap();
            let x: Vec<f64> = (0..n).map(|_| rng.random::<f64>() * 2.0 - 1.0).collect();
            let dense = m.to_dense();
            let mut brute = 0.0;
            for i in 0..n {
                for j in 0..n {
                    brute += x[i] * dense[i * n + j] * x[j];
                }
            }
            brute *= 0.5;
            let e = m.energy(&x).unwrap();
            prop_assert!((e - brute).abs() <= 1e-12 * brute.abs().max(1.0));
            prop_assert!(e > 0.0);
        }
    }
}
