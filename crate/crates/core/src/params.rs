//! LAP2 coefficient vector `(theta0, theta1, theta2)` and its validity regimes.
//!
//! The precision operator is `theta0 - theta1 * Lap + theta2 * Lap^2`. Its
//! characteristic polynomial `p(z) = theta0 + theta1 z + theta2 z^2` must stay
//! strictly positive on `z >= 0`, which holds in exactly two regimes:
//!
//! * `C1`: all three coefficients positive;
//! * `C2`: `theta0, theta2 > 0`, `theta1 < 0` and `theta1^2 < 4 theta0 theta2`.

use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    /// All coefficients positive.
    C1,
    /// Negative `theta1` with negative discriminant.
    C2,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Regime::C1 => f.write_str("C1"),
            Regime::C2 => f.write_str("C2"),
        }
    }
}

/// A validated LAP2 coefficient vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lap2Params {
    theta0: f64,
    theta1: f64,
    theta2: f64,
    regime: Regime,
}

impl Lap2Params {
    /// Validates `(theta0, theta1, theta2)` against the two positivity regimes.
    ///
    /// Comparisons are exact; `theta1 == 0` is rejected because it belongs to
    /// neither regime.
    pub fn validate(theta0: f64, theta1: f64, theta2: f64) -> Result<Self> {
        if !(theta0.is_finite() && theta1.is_finite() && theta2.is_finite()) {
            return Err(Error::NonFiniteParameter);
        }
        if theta0 <= 0.0 {
            return Err(Error::NonPositiveTheta0(theta0));
        }
        if theta2 <= 0.0 {
            return Err(Error::NonPositiveTheta2(theta2));
        }
        let regime = if theta1 > 0.0 {
            Regime::C1
        } else if theta1 < 0.0 {
            let theta1_sq = theta1 * theta1;
            let bound = 4.0 * theta0 * theta2;
            if theta1_sq >= bound {
                return Err(Error::DiscriminantViolation { theta1_sq, bound });
            }
            Regime::C2
        } else {
            return Err(Error::ZeroTheta1);
        };
        Ok(Self {
            theta0,
            theta1,
            theta2,
            regime,
        })
    }

    /// Coefficients whose zero-bandwidth spectrum is the inverse Matérn
    /// `nu = 1` spectral density `4 pi xi^2 / (1 + k^2 xi^2)^2`:
    /// `(1, 2 xi^2, xi^4) / (4 pi xi^2)`.
    pub fn matern(xi: f64) -> Result<Self> {
        if !(xi > 0.0) || !xi.is_finite() {
            return Err(Error::NonPositiveXi(xi));
        }
        let scale = 1.0 / (4.0 * PI * xi * xi);
        Self::validate(scale, scale * 2.0 * xi * xi, scale * xi.powi(4))
    }

    pub fn theta0(&self) -> f64 {
        self.theta0
    }

    pub fn theta1(&self) -> f64 {
        self.theta1
    }

    pub fn theta2(&self) -> f64 {
        self.theta2
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.theta0, self.theta1, self.theta2]
    }

    /// `theta0 + theta1 z + theta2 z^2`.
    pub fn characteristic_poly(&self, z: f64) -> f64 {
        self.theta0 + z * (self.theta1 + z * self.theta2)
    }
}

impl fmt::Display for Lap2Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {}) [{}]",
            self.theta0, self.theta1, self.theta2, self.regime
        )
    }
}

/// Free-function form of [`Lap2Params::validate`].
pub fn validate(theta0: f64, theta1: f64, theta2: f64) -> Result<Lap2Params> {
    Lap2Params::validate(theta0, theta1, theta2)
}

/// Free-function form of [`Lap2Params::matern`].
pub fn matern_theta(xi: f64) -> Result<Lap2Params> {
    Lap2Params::matern(xi)
}

pub fn characteristic_poly(params: &Lap2Params, z: f64) -> f64 {
    params.characteristic_poly(z)
}
