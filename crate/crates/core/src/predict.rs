//! Single-point predictive distribution from scattered samples.
//!
//! For a target `s` and samples `x_n` at `s_n`,
//!
//! ```text
//! mean     = -sum_n Q*(|s - s_n|) / Q*(0) * x_n
//! variance = 1 / Q*(0)
//! ```
//!
//! This is the full conditional of a GMRF whose precision matrix is built from
//! `Q*`, not an interpolator: with one sample at the target itself the mean is
//! `-x_1`. Sample weights are not used (unit weights are assumed).

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matrix::{euclidean, PointSet};
use crate::precision::PrecisionFunction;

#[derive(Debug, Clone, PartialEq)]
pub struct Prediction {
    pub location: Vec<f64>,
    pub mean: f64,
    pub variance: f64,
}

fn check(pf: &PrecisionFunction, pts: &PointSet, target: &[f64]) -> Result<()> {
    if pts.dim() != pf.d() {
        return Err(Error::DimensionMismatch {
            expected: pf.d(),
            found: pts.dim(),
        });
    }
    if target.len() != pf.d() {
        return Err(Error::DimensionMismatch {
            expected: pf.d(),
            found: target.len(),
        });
    }
    Ok(())
}

pub fn predict(pf: &PrecisionFunction, pts: &PointSet, target: &[f64]) -> Result<Prediction> {
    check(pf, pts, target)?;
    let values = pts.values().ok_or(Error::MissingValues)?;
    let q0 = pf.value_at_zero();
    let weighted: f64 = pts
        .positions()
        .zip(values)
        .map(|(s, x)| pf.value(euclidean(target, s)) / q0 * x)
        .sum();
    Ok(Prediction {
        location: target.to_vec(),
        mean: -weighted,
        variance: 1.0 / q0,
    })
}

/// [`predict`] at each target, in order.
pub fn predict_batch(pf: &PrecisionFunction, pts: &PointSet, targets: &[Vec<f64>]) -> Result<Vec<Prediction>> {
    targets.par_iter().map(|t| predict(pf, pts, t)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::assemble;
    use crate::params::{matern_theta, validate};

    fn pf2() -> PrecisionFunction {
        PrecisionFunction::gaussian(validate(1.0, 0.8, 0.5).unwrap(), 1.0, 2).unwrap()
    }

    fn lcg_points(n: usize, seed: u64) -> (Vec<[f64; 2]>, Vec<f64>) {
        let mut s = seed;
        let mut next = move || {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (s >> 11) as f64 / (1u64 << 53) as f64
        };
        let pts = (0..n).map(|_| [4.0 * next(), 4.0 * next()]).collect();
        let vals = (0..n).map(|_| 2.0 * next() - 1.0).collect();
        (pts, vals)
    }

    #[test]
    fn empty_set() {
        let pf = pf2();
        let pts = PointSet::new(2, vec![]).unwrap().with_values(vec![]).unwrap();
        let p = predict(&pf, &pts, &[0.3, 0.1]).unwrap();
        assert_eq!(p.mean, 0.0);
        assert_eq!(p.variance, 1.0 / pf.value_at_zero());
    }

    #[test]
    fn coincident_sample() {
        let pf = pf2();
        let pts = PointSet::from_points(&[[1.0, 2.0]])
            .unwrap()
            .with_values(vec![0.75])
            .unwrap();
        assert_eq!(predict(&pf, &pts, &[1.0, 2.0]).unwrap().mean, -0.75);
    }

    #[test]
    fn far_target() {
        let pf = PrecisionFunction::gaussian(matern_theta(2.0).unwrap(), 0.5, 2).unwrap();
        let pts = PointSet::from_points(&[[0.0, 0.0], [0.5, 0.0], [0.0, 0.5]])
            .unwrap()
            .with_values(vec![3.0, -2.0, 1.0])
            .unwrap();
        let p = predict(&pf, &pts, &[6.0, 6.0]).unwrap();
        assert!(p.mean.abs() < 1e-3 * 3.0);
        assert_eq!(p.variance, 1.0 / pf.value_at_zero());
    }

    #[test]
    fn errors() {
        let pf = pf2();
        let bare = PointSet::from_points(&[[0.0, 0.0]]).unwrap();
        assert_eq!(predict(&pf, &bare, &[0.0, 0.0]), Err(Error::MissingValues));
        let with = bare.with_values(vec![1.0]).unwrap();
        assert_eq!(
            predict(&pf, &with, &[0.0]),
            Err(Error::DimensionMismatch { expected: 2, found: 1 })
        );
        let one_d = PointSet::new(1, vec![0.0]).unwrap().with_values(vec![1.0]).unwrap();
        assert!(predict(&pf, &one_d, &[0.0, 0.0]).is_err());
    }

    #[test]
    fn batch_matches_single() {
        let pf = pf2();
        let (p, v) = lcg_points(12, 3);
        let pts = PointSet::from_points(&p).unwrap().with_values(v).unwrap();
        let targets = vec![vec![1.0, 1.0], vec![0.2, 3.1], vec![1.0, 1.0]];
        let batch = predict_batch(&pf, &pts, &targets).unwrap();
        for (b, t) in batch.iter().zip(&targets) {
            assert_eq!(*b, predict(&pf, &pts, t).unwrap());
        }
        assert_eq!(batch[0], batch[2]);
        assert!(predict_batch(&pf, &pts, &[]).unwrap().is_empty());
    }

    #[test]
    fn linear_in_data() {
        let pf = pf2();
        let (p, x) = lcg_points(10, 11);
        let (_, y) = lcg_points(10, 12);
        let (a, b) = (1.7, -0.4);
        let combo: Vec<f64> = x.iter().zip(&y).map(|(u, v)| a * u + b * v).collect();
        let base = PointSet::from_points(&p).unwrap();
        let t = [2.0, 1.5];
        let mx = predict(&pf, &base.clone().with_values(x).unwrap(), &t).unwrap().mean;
        let my = predict(&pf, &base.clone().with_values(y).unwrap(), &t).unwrap().mean;
        let mc = predict(&pf, &base.with_values(combo).unwrap(), &t).unwrap().mean;
        assert!((mc - (a * mx + b * my)).abs() < 1e-13);
    }

    #[test]
    fn matches_appended_matrix() {
        let pf = pf2();
        for seed in 0..5 {
            let (p, v) = lcg_points(8 + seed as usize, seed);
            let pts = PointSet::from_points(&p).unwrap().with_values(v.clone()).unwrap();
            let t = [1.3, 2.2];
            let q = assemble(&pf, &pts.with_point(&t).unwrap(), 0.0).unwrap();
            let s = pts.len();
            let qss = q.get(s, s).unwrap();
            let brute = -(0..s).map(|n| q.get(s, n).unwrap() * v[n]).sum::<f64>() / qss;
            let m = predict(&pf, &pts, &t).unwrap().mean;
            assert!((m - brute).abs() <= 1e-12 * brute.abs().max(1e-300), "{m} vs {brute}");
        }
    }

    #[test]
    fn decay_bound() {
        let pf = pf2();
        let (p, v) = lcg_points(15, 5);
        let pts = PointSet::from_points(&p).unwrap().with_values(v.clone()).unwrap();
        let t = [7.0, -1.0];
        let q0 = pf.value_at_zero();
        let bound = v.iter().map(|x| x.abs()).sum::<f64>()
            * p.iter()
                .map(|s| (pf.value(euclidean(&t, s)) / q0).abs())
                .fold(0.0, f64::max);
        assert!(predict(&pf, &pts, &t).unwrap().mean.abs() <= bound);
    }
}
