//! The SPH-LAP2 precision function `Q*(r)`.
//!
//! In the spectral domain `Q~*(k) = |K~(k)|^2 (theta0 + theta1 k^2 + theta2 k^4)`.
//! In real space `Q* = theta0 K2 - theta1 Lap K2 + theta2 Lap^2 K2`, which for
//! the Gaussian kernel reduces to
//!
//! ```text
//! Q*(r) = exp(-r^2/2h^2) / (h sqrt(2 pi))^d * { theta0
//!         - theta1/h^2 (r^2/h^2 - d)
//!         + theta2/h^4 [r^4/h^4 - 2(d+2) r^2/h^2 + d(d+2)] }
//! ```
//!
//! `Q~*` is positive and integrable for valid parameters, so `Q*` is a
//! positive-definite radial function with its global maximum at `r = 0`.

use crate::error::{Error, Result};
use crate::kernel::{GaussianKernel, SmoothingKernel};
use crate::params::Lap2Params;
use crate::radial_calculus::{radial_bilaplacian, radial_laplacian};
use crate::transform::radial_inverse_ft;

/// Below `R_MIN_FACTOR * h` the generic route switches to analytic `r -> 0` limits.
pub const R_MIN_FACTOR: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrecisionFunction {
    params: Lap2Params,
    kernel: GaussianKernel,
}

impl PrecisionFunction {
    pub fn new(params: Lap2Params, kernel: GaussianKernel) -> Self {
        Self { params, kernel }
    }

    /// Convenience constructor validating `h` and `d`.
    pub fn gaussian(params: Lap2Params, h: f64, d: usize) -> Result<Self> {
        Ok(Self::new(params, GaussianKernel::new(h, d)?))
    }

    pub fn params(&self) -> &Lap2Params {
        &self.params
    }

    pub fn kernel(&self) -> &GaussianKernel {
        &self.kernel
    }

    pub fn h(&self) -> f64 {
        self.kernel.h()
    }

    pub fn d(&self) -> usize {
        self.kernel.d()
    }

    /// `Q~*(k) = exp(-k^2 h^2 / 2) (theta0 + theta1 k^2 + theta2 k^4)`.
    pub fn spectral(&self, knorm: f64) -> f64 {
        let ft = self.kernel.kernel_ft(knorm);
        ft * ft * self.params.characteristic_poly(knorm * knorm)
    }

    /// Closed form of `Q*(r)` for the Gaussian kernel.
    pub fn value(&self, r: f64) -> f64 {
        let h = self.kernel.h();
        let d = self.kernel.d() as f64;
        let [t0, t1, t2] = self.params.as_array();
        let u = (r / h).powi(2);
        let h2 = h * h;
        let bracket = t0 - t1 / h2 * (u - d) + t2 / (h2 * h2) * (u * u - 2.0 * (d + 2.0) * u + d * (d + 2.0));
        self.kernel.k2_prefactor() * (-0.5 * u).exp() * bracket
    }

    /// `Q*(0) = (h sqrt(2 pi))^-d [theta0 + theta1 d / h^2 + theta2 (d^2 + 2d) / h^4]`.
    pub fn value_at_zero(&self) -> f64 {
        let h2 = self.kernel.h().powi(2);
        let d = self.kernel.d() as f64;
        let [t0, t1, t2] = self.params.as_array();
        self.kernel.k2_prefactor() * (t0 + t1 * d / h2 + t2 * (d * d + 2.0 * d) / (h2 * h2))
    }

    /// `Q*(r) / Q*(0)`.
    pub fn normalized(&self, r: f64) -> f64 {
        self.value(r) / self.value_at_zero()
    }

    /// Upper wavenumber for numeric inversion of [`Self::spectral`].
    pub fn spectral_cutoff(&self) -> f64 {
        let [t0, _, t2] = self.params.as_array();
        (40.0 / self.kernel.h()).max(20.0 * (t2 / t0).powf(-0.25))
    }

    /// `Q*(r)` by numeric inverse Fourier transform of [`Self::spectral`].
    ///
    /// Independent of the closed form; used to check it.
    pub fn numeric_value(&self, r: f64) -> Result<f64> {
        radial_inverse_ft(|k| self.spectral(k), r, self.kernel.d(), self.spectral_cutoff())
    }

    /// A radius beyond which `|Q*(r)| < epsilon * Q*(0)` is guaranteed, or
    /// `None` when `epsilon <= 0`.
    ///
    /// Bounds the bracket by the sum of absolute values of its terms; that
    /// envelope times `exp(-x^2/2)` decreases for `x = r/h >= 2`.
    pub fn cutoff_radius(&self, epsilon: f64) -> Option<f64> {
        if !(epsilon > 0.0) {
            return None;
        }
        let h = self.kernel.h();
        let h2 = h * h;
        let d = self.kernel.d() as f64;
        let [t0, t1, t2] = self.params.as_array();
        let target = epsilon * self.value_at_zero() / self.kernel.k2_prefactor();
        let envelope = |x: f64| {
            let u = x * x;
            let bound =
                t0.abs() + t1.abs() / h2 * (u + d) + t2 / (h2 * h2) * (u * u + 2.0 * (d + 2.0) * u + d * (d + 2.0));
            bound * (-0.5 * u).exp()
        };
        let mut x: f64 = 2.0;
        while envelope(x) >= target {
            x += 0.01;
            if x > 100.0 {
                return None;
            }
        }
        Some(x * h)
    }
}

/// `Q*(r)` for any kernel through `theta0 K2 - theta1 Lap K2 + theta2 Lap^2 K2`,
/// assembled from the kernel-supplied radial derivatives of `K2`.
///
/// For `r < 1e-8 h` the kernel's analytic zero limits are used; kernels that
/// supply none yield [`Error::NonPositiveRadius`] there.
pub fn generic_value<K: SmoothingKernel + ?Sized>(params: &Lap2Params, kernel: &K, r: f64) -> Result<f64> {
    let [t0, t1, t2] = params.as_array();
    let d = kernel.dim();
    let k2 = kernel.interaction(r);
    if r < R_MIN_FACTOR * kernel.bandwidth() {
        let limits = kernel.interaction_zero_limits().ok_or(Error::NonPositiveRadius(r))?;
        return Ok(t0 * k2 - t1 * limits.laplacian + t2 * limits.bilaplacian);
    }
    let derivs = kernel.interaction_derivatives(r);
    let lap = radial_laplacian(&derivs, r, d)?;
    let bilap = radial_bilaplacian(&derivs, r, d)?;
    Ok(t0 * k2 - t1 * lap + t2 * bilap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::TailDecay;
    use crate::params::validate;
    use crate::radial_calculus::RadialDerivatives;
    use std::f64::consts::PI;

    fn pf(theta: [f64; 3], h: f64, d: usize) -> PrecisionFunction {
        PrecisionFunction::gaussian(validate(theta[0], theta[1], theta[2]).unwrap(), h, d).unwrap()
    }

    #[test]
    fn spectral_values() {
        let p = validate(1.0, 2.0, 1.0).unwrap();
        // h -> 0: pure polynomial in k^2
        assert_eq!(p.characteristic_poly(1.0), 4.0);
        let q = pf([1.0, 1.0, 1.0], 1.0, 2);
        assert_eq!(q.spectral(0.0), 1.0);
        let want = 21.0 * (-2.0f64).exp();
        assert!((q.spectral(2.0) - want).abs() < 1e-15);
        let via_parts = q.kernel().kernel_ft(2.0).powi(2) * q.params().characteristic_poly(4.0);
        assert!((q.spectral(2.0) - via_parts).abs() < 1e-15);
    }

    #[test]
    fn value_at_zero_examples() {
        let q = pf([1.0, 1.0, 1.0], 1.0, 2);
        assert!((q.value_at_zero() - 11.0 / (2.0 * PI)).abs() < 1e-15);
        assert_eq!(q.value_at_zero(), q.value(0.0));
        let q = pf([1.0, 1.0, 1.0], 1.0, 1);
        assert!((q.value_at_zero() - 5.0 / (2.0 * PI).sqrt()).abs() < 1e-15);
        assert!((q.value(0.0) - q.value_at_zero()).abs() < 1e-15);
    }

    #[test]
    fn closed_form_matches_high_precision_reference() {
        // 30-digit quadrature of the spectral function, theta=(1,1,1), h=1
        let d2 = [
            (0.0, 1.750_704_374_010_848_7),
            (0.5, 1.237_748_621_728_572),
            (1.0, 0.289_597_057_890_161_7),
            (2.0, -0.193_853_513_716_637_67),
        ];
        let d1 = [
            (0.0, 1.994_711_402_007_163_4),
            (0.5, 1.166_216_394_906_742),
            (1.0, -0.241_970_724_519_143_35),
            (2.0, -0.377_936_765_592_316_36),
        ];
        let q2 = pf([1.0, 1.0, 1.0], 1.0, 2);
        let q1 = pf([1.0, 1.0, 1.0], 1.0, 1);
        for (r, want) in d2 {
            assert!((q2.value(r) - want).abs() < 1e-14, "d=2 r={r}");
        }
        for (r, want) in d1 {
            assert!((q1.value(r) - want).abs() < 1e-14, "d=1 r={r}");
        }
    }

    #[test]
    fn closed_form_matches_numeric_inverse() {
        for &(theta, h) in &[
            ([1.0, 1.0, 1.0], 1.0),
            ([0.002, 5.0, 1.25], 1.5),
            ([0.002, -0.095, 1.25], 0.5),
        ] {
            for d in 1..=3 {
                let q = pf(theta, h, d);
                let q0 = q.value_at_zero();
                for &frac in &[0.0, 0.5, 1.0, 2.0, 4.0] {
                    let r = frac * h;
                    let num = q.numeric_value(r).unwrap();
                    assert!(
                        (q.value(r) - num).abs() < 1e-6 * q0,
                        "theta={theta:?} h={h} d={d} r={r}: {} vs {num}",
                        q.value(r)
                    );
                }
            }
        }
    }

    #[test]
    fn generic_route_matches_closed_form() {
        for &(theta, h) in &[
            ([1.0, 1.0, 1.0], 1.0),
            ([0.3, -0.5, 2.0], 0.6),
            ([0.002, 5.0, 1.25], 1.5),
        ] {
            for d in 1..=3 {
                let q = pf(theta, h, d);
                let q0 = q.value_at_zero();
                let g0 = generic_value(q.params(), q.kernel(), 0.0).unwrap();
                assert!((g0 - q0).abs() < 1e-12 * q0);
                for i in 1..=120 {
                    let r = i as f64 * 0.05 * h;
                    let g = generic_value(q.params(), q.kernel(), r).unwrap();
                    assert!((g - q.value(r)).abs() < 1e-12 * q0, "d={d} r={r}");
                }
            }
        }
    }

    #[test]
    fn generic_route_lower_order_limit() {
        let q = pf([1.0, 1e-12, 1e-12], 1.0, 2);
        for i in 0..20 {
            let r = 0.2 * i as f64;
            let g = generic_value(q.params(), q.kernel(), r).unwrap();
            assert!((g - q.kernel().k2_value(r)).abs() < 1e-10);
        }
    }

    struct NoLimits(GaussianKernel);

    impl SmoothingKernel for NoLimits {
        fn bandwidth(&self) -> f64 {
            self.0.h()
        }
        fn dim(&self) -> usize {
            self.0.d()
        }
        fn value(&self, r: f64) -> f64 {
            self.0.kernel_value(r)
        }
        fn ft(&self, k: f64) -> f64 {
            self.0.kernel_ft(k)
        }
        fn interaction(&self, r: f64) -> f64 {
            self.0.k2_value(r)
        }
        fn interaction_derivatives(&self, r: f64) -> RadialDerivatives {
            self.0.interaction_derivatives(r)
        }
        fn ft_tail(&self) -> TailDecay {
            TailDecay::Exponential
        }
    }

    #[test]
    fn generic_route_without_limits_rejects_origin() {
        let k = NoLimits(GaussianKernel::new(1.0, 2).unwrap());
        let p = validate(1.0, 1.0, 1.0).unwrap();
        assert_eq!(generic_value(&p, &k, 0.0), Err(Error::NonPositiveRadius(0.0)));
        assert!(generic_value(&p, &k, 0.5).is_ok());
    }

    #[test]
    fn fig1_curve_shape() {
        let q = pf([0.002, 5.0, 1.25], 1.5, 2);
        let mut min = f64::INFINITY;
        for i in 0..=2000 {
            let r = i as f64 * 0.01;
            min = min.min(q.normalized(r));
            if r > 8.0 * 1.5 {
                assert!(q.normalized(r).abs() < 1e-3);
            }
        }
        assert!(min < 0.0, "expected a negative valley");
    }

    #[test]
    fn zero_bandwidth_spectral_limit() {
        let q = pf([0.3, -0.5, 2.0], 1e-6, 2);
        for i in 0..=100 {
            let k = i as f64 * 0.1;
            let poly = q.params().characteristic_poly(k * k);
            assert!(((q.spectral(k) - poly) / poly).abs() < 1e-4);
        }
    }

    #[test]
    fn cutoff_radius_bounds_tail() {
        let q = pf([0.002, -0.095, 1.25], 1.5, 2);
        let eps = 1e-6;
        let rc = q.cutoff_radius(eps).unwrap();
        assert!(rc >= 2.0 * 1.5);
        for i in 0..2000 {
            let r = rc + i as f64 * 0.01;
            assert!(q.value(r).abs() < eps * q.value_at_zero());
        }
        assert_eq!(q.cutoff_radius(0.0), None);
    }
}
