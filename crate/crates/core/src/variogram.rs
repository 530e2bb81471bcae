//! Axis-aligned method-of-moments variograms and the Matérn `nu = 1` model.

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::simulate::LatticeField;

pub use crate::special::bessel_k1;

/// Direction along which lattice pairs are taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    /// Pairs within a row (horizontal lags).
    Rows,
    /// Pairs within a column (vertical lags).
    Columns,
    /// Mean of the row and column estimates.
    Averaged,
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::Rows => "rows",
            Axis::Columns => "columns",
            Axis::Averaged => "averaged",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VariogramEstimate {
    /// Lags in lattice units, starting at 0.
    pub lags: Vec<usize>,
    pub semivariance: Vec<f64>,
    /// Pairs per lag; for `Averaged` this is the row plus column count.
    pub pair_counts: Vec<usize>,
    pub axis: Axis,
}

impl VariogramEstimate {
    /// Lags multiplied by the lattice spacing.
    pub fn distances(&self, spacing: f64) -> Vec<f64> {
        self.lags.iter().map(|&l| l as f64 * spacing).collect()
    }

    /// Semivariance divided by `scale` (e.g. the sample variance, for a unit sill).
    pub fn normalized(&self, scale: f64) -> Vec<f64> {
        self.semivariance.iter().map(|g| g / scale).collect()
    }
}

fn check_lag(field: &LatticeField, max_lag: usize) -> Result<()> {
    let side = field.side();
    if max_lag == 0 || max_lag >= side {
        return Err(Error::LagOutOfRange { max_lag, side });
    }
    Ok(())
}

/// Sum of squared increments at `lag` along one axis, plus the pair count.
fn increments(field: &LatticeField, lag: usize, along_rows: bool) -> (f64, usize) {
    let l = field.side();
    let rows = field.rows();
    let sum: f64 = (0..rows)
        .into_par_iter()
        .map(|line| {
            let mut s = 0.0;
            for i in 0..l - lag {
                let (a, b) = if along_rows {
                    (field.get(line, i), field.get(line, i + lag))
                } else {
                    (field.get(i, line), field.get(i + lag, line))
                };
                s += (a - b) * (a - b);
            }
            s
        })
        .sum();
    (sum, rows * (l - lag))
}

/// `gamma(l) = 1/(2 N_l) * sum (x_i - x_j)^2` over axis-aligned pairs at lag `l`,
/// for `l = 0..=max_lag`. Pairs do not wrap around the lattice edge.
pub fn empirical_variogram(field: &LatticeField, max_lag: usize, axis: Axis) -> Result<VariogramEstimate> {
    check_lag(field, max_lag)?;
    if field.d() == 1 && axis != Axis::Rows {
        return Err(Error::UnsupportedAxis(match axis {
            Axis::Columns => "columns",
            _ => "averaged",
        }));
    }
    let mut semivariance = Vec::with_capacity(max_lag + 1);
    let mut pair_counts = Vec::with_capacity(max_lag + 1);
    for lag in 0..=max_lag {
        let (gamma, count) = match axis {
            Axis::Rows | Axis::Columns => {
                let (s, n) = increments(field, lag, axis == Axis::Rows);
                (s / (2.0 * n as f64), n)
            }
            Axis::Averaged => {
                let (sr, nr) = increments(field, lag, true);
                let (sc, nc) = increments(field, lag, false);
                (0.5 * (sr / (2.0 * nr as f64) + sc / (2.0 * nc as f64)), nr + nc)
            }
        };
        semivariance.push(gamma);
        pair_counts.push(count);
    }
    Ok(VariogramEstimate {
        lags: (0..=max_lag).collect(),
        semivariance,
        pair_counts,
        axis,
    })
}

/// Sample autocovariance along rows at `lag`, centered on the field mean
/// (divisor: number of pairs). Pairs wrap periodically when `periodic` is set.
pub fn row_autocovariance(field: &LatticeField, lag: usize, periodic: bool) -> Result<f64> {
    let l = field.side();
    if lag >= l {
        return Err(Error::LagOutOfRange { max_lag: lag, side: l });
    }
    let mean = field.mean();
    let span = if periodic { l } else { l - lag };
    let mut sum = 0.0;
    for row in 0..field.rows() {
        let r = field.row(row);
        for i in 0..span {
            sum += (r[i] - mean) * (r[(i + lag) % l] - mean);
        }
    }
    Ok(sum / (field.rows() * span) as f64)
}

/// `mean_s x(s) x(s + lag)` along rows with periodic wrap, not centered.
///
/// For a zero-mean periodic lattice field this is an unbiased estimate of the
/// lattice covariance at that lag.
pub fn row_lag_moment(field: &LatticeField, lag: usize) -> f64 {
    let l = field.side();
    let mut sum = 0.0;
    for row in 0..field.rows() {
        let r = field.row(row);
        for i in 0..l {
            sum += r[i] * r[(i + lag) % l];
        }
    }
    sum / field.values().len() as f64
}

/// Lag autocorrelation along rows: autocovariance at `lag` over the sample variance.
pub fn row_autocorrelation(field: &LatticeField, lag: usize) -> Result<f64> {
    Ok(row_autocovariance(field, lag, false)? / field.variance())
}

/// `gamma(r) = 1 - (r/xi) K1(r/xi)`, with `gamma(0) = 0`.
pub fn matern1_variogram(r: f64, xi: f64) -> Result<f64> {
    if !(xi > 0.0) {
        return Err(Error::NonPositiveXi(xi));
    }
    if !(r >= 0.0) {
        return Err(Error::NonPositiveRadius(r));
    }
    if r == 0.0 {
        return Ok(0.0);
    }
    let x = r / xi;
    if x > 700.0 {
        return Ok(1.0);
    }
    Ok(1.0 - x * bessel_k1(x)?)
}
