//! Numeric inverse Fourier transform of radial spectral functions.
//!
//! For a radial `F(k)` with the convention `f(r) = (2 pi)^-d int F(k) e^{ik.r} dk`:
//!
//! * `d = 1`: `f(r) = (1/pi) int_0^inf cos(k r) F(k) dk`
//! * `d = 2`: `f(r) = (1/2pi) int_0^inf k J0(k r) F(k) dk`
//! * `d = 3`: `f(r) = (1/2pi^2 r) int_0^inf k sin(k r) F(k) dk`
//!
//! The integral is truncated at `k_max`; callers pick it so the tail is
//! negligible.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::quadrature::integrate;
use crate::special::bessel_j0;

const REL_TOL: f64 = 1e-12;
const MAX_INTERVALS: usize = 4000;

pub fn radial_inverse_ft<F: Fn(f64) -> f64>(spectrum: F, r: f64, d: usize, k_max: f64) -> Result<f64> {
    if r < 0.0 {
        return Err(Error::NonPositiveRadius(r));
    }
    let result = match d {
        1 => integrate(|k| (k * r).cos() * spectrum(k), 0.0, k_max, 0.0, REL_TOL, MAX_INTERVALS).value / PI,
        2 => {
            integrate(
                |k| k * bessel_j0(k * r) * spectrum(k),
                0.0,
                k_max,
                0.0,
                REL_TOL,
                MAX_INTERVALS,
            )
            .value
                / (2.0 * PI)
        }
        3 => {
            // sin(kr)/(kr) -> 1 as r -> 0
            let sinc = |x: f64| if x.abs() < 1e-8 { 1.0 - x * x / 6.0 } else { x.sin() / x };
            integrate(
                |k| k * k * sinc(k * r) * spectrum(k),
                0.0,
                k_max,
                0.0,
                REL_TOL,
                MAX_INTERVALS,
            )
            .value
                / (2.0 * PI * PI)
        }
        other => return Err(Error::UnsupportedDimension(other)),
    };
    Ok(result)
}
