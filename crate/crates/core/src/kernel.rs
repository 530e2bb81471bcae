//! Smoothing kernels.
//!
//! A smoothing kernel `K(r; h)` enters the model only through its Fourier
//! transform and the *interaction function* `K2 = IFT[|K~|^2]`. The
//! [`SmoothingKernel`] trait exposes what the generic precision route needs:
//! `K2` with its first four radial derivatives and, optionally, the `r -> 0`
//! limits of its Laplacian and Bi-Laplacian. [`GaussianKernel`] is the only
//! concrete implementation shipped.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::radial_calculus::{self, RadialDerivatives};

/// Asymptotic decay of `|K~(k)|` as `k -> infinity`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TailDecay {
    /// Faster than any power of `k`.
    Exponential,
    /// `|K~(k)| ~ k^p` with the given exponent `p`.
    Algebraic(f64),
}

/// True when the kernel transform decays strictly faster than `k^-(d+4)/2`,
/// which keeps the spectral precision function integrable.
pub fn decay_condition_ok(tail: TailDecay, d: usize) -> bool {
    match tail {
        TailDecay::Exponential => true,
        TailDecay::Algebraic(p) => p < -((d as f64) + 4.0) / 2.0,
    }
}

/// Values of `Lap K2` and `Lap^2 K2` at the origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroLimits {
    pub laplacian: f64,
    pub bilaplacian: f64,
}

pub trait SmoothingKernel {
    fn bandwidth(&self) -> f64;

    fn dim(&self) -> usize;

    /// `K(r; h)`.
    fn value(&self, r: f64) -> f64;

    /// `K~(k h)`, normalized to 1 at `k = 0`.
    fn ft(&self, knorm: f64) -> f64;

    /// `K2(r; h)`, the inverse transform of `|K~|^2`.
    fn interaction(&self, r: f64) -> f64;

    /// Radial derivatives of `K2` up to order four. Callers supply these
    /// analytically; nothing is differentiated numerically.
    fn interaction_derivatives(&self, r: f64) -> RadialDerivatives;

    /// Removable-singularity values at `r = 0`, if known.
    fn interaction_zero_limits(&self) -> Option<ZeroLimits> {
        None
    }

    fn ft_tail(&self) -> TailDecay;
}

/// Squared-exponential kernel `K(r; h) = (h sqrt(pi))^-d exp(-r^2/h^2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianKernel {
    h: f64,
    d: usize,
}

impl GaussianKernel {
    pub fn new(h: f64, d: usize) -> Result<Self> {
        if !(h > 0.0) || !h.is_finite() {
            return Err(Error::NonPositiveBandwidth(h));
        }
        if !(1..=3).contains(&d) {
            return Err(Error::UnsupportedDimension(d));
        }
        Ok(Self { h, d })
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn kernel_value(&self, r: f64) -> f64 {
        (self.h * PI.sqrt()).powi(self.d as i32).recip() * (-(r * r) / (self.h * self.h)).exp()
    }

    pub fn kernel_ft(&self, knorm: f64) -> f64 {
        (-0.25 * knorm * knorm * self.h * self.h).exp()
    }

    /// Normalization `(h sqrt(2 pi))^-d` shared by `K2` and its derivatives.
    pub fn k2_prefactor(&self) -> f64 {
        (self.h * (2.0 * PI).sqrt()).powi(self.d as i32).recip()
    }

    pub fn k2_value(&self, r: f64) -> f64 {
        self.k2_prefactor() * (-(r * r) / (2.0 * self.h * self.h)).exp()
    }

    /// The kernel with bandwidth `sqrt(2) h`, whose value equals `K2`.
    pub fn widened(&self) -> Self {
        Self {
            h: std::f64::consts::SQRT_2 * self.h,
            d: self.d,
        }
    }
}

impl SmoothingKernel for GaussianKernel {
    fn bandwidth(&self) -> f64 {
        self.h
    }

    fn dim(&self) -> usize {
        self.d
    }

    fn value(&self, r: f64) -> f64 {
        self.kernel_value(r)
    }

    fn ft(&self, knorm: f64) -> f64 {
        self.kernel_ft(knorm)
    }

    fn interaction(&self, r: f64) -> f64 {
        self.k2_value(r)
    }

    fn interaction_derivatives(&self, r: f64) -> RadialDerivatives {
        radial_calculus::gaussian_derivatives(r, self.h).scaled(self.k2_prefactor())
    }

    fn interaction_zero_limits(&self) -> Option<ZeroLimits> {
        let p = self.k2_prefactor();
        let d = self.d as f64;
        let h2 = self.h * self.h;
        Some(ZeroLimits {
            laplacian: -p * d / h2,
            bilaplacian: p * d * (d + 2.0) / (h2 * h2),
        })
    }

    fn ft_tail(&self) -> TailDecay {
        TailDecay::Exponential
    }
}
