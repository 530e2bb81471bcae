//! Laplacian and Bi-Laplacian of radial functions in `d` dimensions, plus the
//! Hermite-polynomial derivatives of the Gaussian `exp(-r^2 / 2h^2)`.

use crate::error::{Error, Result};

/// First through fourth radial derivatives of a radial function at some `r`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RadialDerivatives {
    pub d1: f64,
    pub d2: f64,
    pub d3: f64,
    pub d4: f64,
}

impl RadialDerivatives {
    pub fn new(d1: f64, d2: f64, d3: f64, d4: f64) -> Self {
        Self { d1, d2, d3, d4 }
    }

    pub fn scaled(self, factor: f64) -> Self {
        Self {
            d1: self.d1 * factor,
            d2: self.d2 * factor,
            d3: self.d3 * factor,
            d4: self.d4 * factor,
        }
    }
}

/// Probabilists' Hermite polynomial `He_n(x)` for `n` in `1..=4`.
pub fn hermite(n: u32, x: f64) -> Result<f64> {
    let x2 = x * x;
    match n {
        1 => Ok(x),
        2 => Ok(x2 - 1.0),
        3 => Ok(x * (x2 - 3.0)),
        4 => Ok(x2 * (x2 - 6.0) + 3.0),
        _ => Err(Error::UnsupportedOrder(n)),
    }
}

/// `d^n/dr^n exp(-r^2/2h^2) = (-1)^n h^-n He_n(r/h) exp(-r^2/2h^2)`.
pub fn gaussian_derivative(n: u32, r: f64, h: f64) -> Result<f64> {
    let x = r / h;
    let he = hermite(n, x)?;
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok(sign * he / h.powi(n as i32) * (-0.5 * x * x).exp())
}

/// All four derivatives of `exp(-r^2/2h^2)` at once.
pub fn gaussian_derivatives(r: f64, h: f64) -> RadialDerivatives {
    let x = r / h;
    let g = (-0.5 * x * x).exp();
    let x2 = x * x;
    RadialDerivatives {
        d1: -x * g / h,
        d2: (x2 - 1.0) * g / (h * h),
        d3: -x * (x2 - 3.0) * g / (h * h * h),
        d4: (x2 * (x2 - 6.0) + 3.0) * g / (h * h * h * h),
    }
}

fn check_radius(r: f64) -> Result<()> {
    if r > 0.0 {
        Ok(())
    } else {
        Err(Error::NonPositiveRadius(r))
    }
}

/// `C'' + (d-1)/r C'`.
pub fn radial_laplacian(derivs: &RadialDerivatives, r: f64, d: usize) -> Result<f64> {
    check_radius(r)?;
    let dm1 = d as f64 - 1.0;
    Ok(derivs.d2 + dm1 / r * derivs.d1)
}

/// `C'''' + 2(d-1)/r C''' + ((d-1)^2 - 2(d-1))/r^2 (C'' - C'/r)`.
pub fn radial_bilaplacian(derivs: &RadialDerivatives, r: f64, d: usize) -> Result<f64> {
    check_radius(r)?;
    let dm1 = d as f64 - 1.0;
    let c = dm1 * dm1 - 2.0 * dm1;
    Ok(derivs.d4 + 2.0 * dm1 / r * derivs.d3 + c / (r * r) * (derivs.d2 - derivs.d1 / r))
}

/// Laplacian of `exp(-r^2/2h^2)` in `d` dimensions.
///
/// Uses `He_1(x)/x = 1`, so the expression `(x^2 - d) / h^2 * exp(..)` is
/// finite at the origin.
pub fn gaussian_laplacian(r: f64, h: f64, d: usize) -> f64 {
    let x = r / h;
    let x2 = x * x;
    (x2 - d as f64) / (h * h) * (-0.5 * x2).exp()
}

/// Bi-Laplacian of `exp(-r^2/2h^2)` in `d` dimensions.
///
/// The two `r^-2` terms (from `He_2` and `He_1`) cancel analytically:
/// `He_2(x)/x^2 + He_1(x)/x^3 = 1`, and `He_3(x)/x = x^2 - 3`. The result is
/// `[x^4 - 2(d+2) x^2 + d(d+2)] / h^4 * exp(-x^2/2)`, continuous at `r = 0`.
pub fn gaussian_bilaplacian(r: f64, h: f64, d: usize) -> f64 {
    let x = r / h;
    let x2 = x * x;
    let dm1 = d as f64 - 1.0;
    let he4 = x2 * (x2 - 6.0) + 3.0;
    let he3_over_x = x2 - 3.0;
    let c = dm1 * dm1 - 2.0 * dm1;
    (he4 - 2.0 * dm1 * he3_over_x + c) / (h * h * h * h) * (-0.5 * x2).exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gauss(r: f64, h: f64) -> f64 {
        (-r * r / (2.0 * h * h)).exp()
    }

    #[test]
    fn hermite_values() {
        assert_eq!(hermite(2, 0.0).unwrap(), -1.0);
        assert_eq!(hermite(4, 0.0).unwrap(), 3.0);
        assert_eq!(hermite(3, 2.0).unwrap(), 2.0);
        assert_eq!(hermite(1, 1.5).unwrap(), 1.5);
        assert_eq!(hermite(0, 1.0), Err(Error::UnsupportedOrder(0)));
        assert_eq!(hermite(5, 1.0), Err(Error::UnsupportedOrder(5)));
    }

    #[test]
    fn gaussian_derivative_at_origin() {
        assert_eq!(gaussian_derivative(1, 0.0, 1.0).unwrap(), 0.0);
        assert_eq!(gaussian_derivative(2, 0.0, 1.0).unwrap(), -1.0);
        assert_eq!(gaussian_derivative(4, 0.0, 2.0).unwrap(), 3.0 / 16.0);
        assert!(gaussian_derivative(5, 0.0, 1.0).is_err());
    }

    #[test]
    fn batched_derivatives_agree_with_single() {
        for &(r, h) in &[(0.0, 1.0), (0.3, 0.7), (2.5, 1.5), (7.0, 2.0)] {
            let all = gaussian_derivatives(r, h);
            let single = [1, 2, 3, 4].map(|n| gaussian_derivative(n, r, h).unwrap());
            for (a, b) in [all.d1, all.d2, all.d3, all.d4].iter().zip(single) {
                assert!((a - b).abs() <= 1e-15 * (1.0 + b.abs()));
            }
        }
    }

    #[test]
    fn laplacian_examples() {
        let flat = RadialDerivatives::new(0.0, 3.5, 0.0, 0.0);
        for d in 1..=3 {
            assert_eq!(radial_laplacian(&flat, 0.7, d).unwrap(), 3.5);
        }
        // r^2 in 3D
        let r = 1.3;
        let derivs = RadialDerivatives::new(2.0 * r, 2.0, 0.0, 0.0);
        assert!((radial_laplacian(&derivs, r, 3).unwrap() - 6.0).abs() < 1e-14);
        // exp(-r^2/2) in 2D at r = 1: -exp(-1/2)
        let derivs = gaussian_derivatives(1.0, 1.0);
        let want = -(-0.5f64).exp();
        assert!((radial_laplacian(&derivs, 1.0, 2).unwrap() - want).abs() < 1e-15);
        assert!((gaussian_laplacian(1.0, 1.0, 2) - want).abs() < 1e-15);
        assert_eq!(radial_laplacian(&derivs, 0.0, 2), Err(Error::NonPositiveRadius(0.0)));
    }

    #[test]
    fn bilaplacian_examples() {
        let derivs = RadialDerivatives::new(1.0, 2.0, 3.0, 4.0);
        assert_eq!(radial_bilaplacian(&derivs, 0.25, 1).unwrap(), 4.0);
        // r^4 in 2D: Lap^2 r^4 = 64
        let r: f64 = 0.9;
        let derivs = RadialDerivatives::new(4.0 * r.powi(3), 12.0 * r * r, 24.0 * r, 24.0);
        assert!((radial_bilaplacian(&derivs, r, 2).unwrap() - 64.0).abs() < 1e-12);
        assert!(radial_bilaplacian(&derivs, -1.0, 2).is_err());
    }

    #[test]
    fn hermite_forms_match_generic_assembly() {
        for d in 1..=3 {
            for &h in &[0.4, 1.0, 2.3] {
                for i in 1..100 {
                    let r = i as f64 * 0.06 * h;
                    let derivs = gaussian_derivatives(r, h);
                    let lap = radial_laplacian(&derivs, r, d).unwrap();
                    let bilap = radial_bilaplacian(&derivs, r, d).unwrap();
                    let scale = 1.0 / h.powi(4);
                    assert!((lap - gaussian_laplacian(r, h, d)).abs() < 1e-12 / (h * h));
                    assert!((bilap - gaussian_bilaplacian(r, h, d)).abs() < 1e-11 * scale);
                }
            }
        }
    }

    #[test]
    fn limits_at_origin() {
        for d in 1..=3 {
            let h = 1.7;
            let df = d as f64;
            assert!((gaussian_laplacian(0.0, h, d) + df / (h * h)).abs() < 1e-15);
            let want = df * (df + 2.0) / h.powi(4);
            assert!((gaussian_bilaplacian(0.0, h, d) - want).abs() < 1e-14);
            let near = gaussian_bilaplacian(1e-8 * h, h, d);
            assert!((near - want).abs() < 1e-6 * want);
        }
    }

    // Richardson-extrapolated central differences (test scaffolding)
    fn fd_derivative<F: Fn(f64) -> f64>(f: &F, x: f64, n: u32, step: f64) -> f64 {
        let central = |s: f64| -> f64 {
            match n {
                1 => (f(x + s) - f(x - s)) / (2.0 * s),
                2 => (f(x + s) - 2.0 * f(x) + f(x - s)) / (s * s),
                3 => (f(x + 2.0 * s) - 2.0 * f(x + s) + 2.0 * f(x - s) - f(x - 2.0 * s)) / (2.0 * s * s * s),
                4 => (f(x + 2.0 * s) - 4.0 * f(x + s) + 6.0 * f(x) - 4.0 * f(x - s) + f(x - 2.0 * s)) / (s * s * s * s),
                _ => unreachable!(),
            }
        };
        (4.0 * central(step) - central(2.0 * step)) / 3.0
    }

    #[test]
    fn gaussian_derivative_matches_finite_differences() {
        let h = 1.3;
        let f = |r: f64| gauss(r, h);
        for n in 1..=4u32 {
            // larger steps for higher orders keep roundoff under control
            let step = match n {
                1 | 2 => 1e-3 * h,
                _ => 1e-2 * h,
            };
            for i in 0..=50 {
                let r = i as f64 * 0.1 * h;
                let exact = gaussian_derivative(n, r, h).unwrap();
                let approx = fd_derivative(&f, r, n, step);
                let scale = 1.0 / h.powi(n as i32);
                assert!(
                    (exact - approx).abs() < 1e-6 * scale,
                    "n={n} r={r}: {exact} vs {approx}"
                );
            }
        }
    }
}
