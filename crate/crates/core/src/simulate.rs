//! Spectral FFT simulation of SPH-LAP2 fields on periodic lattices.
//!
//! The lattice field is the stationary periodic Gaussian field with spectral
//! density `S(k) = 1 / Q~*(k)` sampled at the discrete wavevectors
//! `k_m = 2 pi m / (L a)`, `m in {-L/2, ..., L/2 - 1}^d`. Its covariance at
//! lattice lag `r` is
//!
//! ```text
//! C_lat(r) = (L a)^-d * sum_m S(k_m) cos(k_m . r)
//! ```
//!
//! For `h > 0` the continuum model is not stationary and `1/Q~*` is not
//! integrable on the whole space; on a finite lattice the sum is finite, and
//! this is the field the simulator draws.
//!
//! Synthesis: white noise `w ~ N(0, 1)` on the lattice is transformed, scaled
//! by `sqrt(S / ((L a)^d L^d))` and transformed back. Transforming real noise
//! gives the Hermitian pairing of `m` and `-m` (with real self-conjugate
//! modes) automatically, so the output is real up to roundoff.
//!
//! Random numbers come from ChaCha8 seeded with `seed_from_u64`, normal
//! variates from the ziggurat sampler of `rand_distr`, and transforms from the
//! scalar (non-SIMD) `rustfft` planner; a seed fixes the output.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use rustfft::{FftDirection, FftPlannerScalar};

use crate::error::{Error, Result};
use crate::precision::PrecisionFunction;

/// Field values on a regular `L^d` lattice, row-major (`index = row * L + col`).
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeField {
    d: usize,
    side: usize,
    spacing: f64,
    values: Vec<f64>,
    seed: Option<u64>,
    imag_residue: f64,
}

impl LatticeField {
    /// Wraps existing values (e.g. a grid read from disk).
    pub fn from_values(d: usize, side: usize, spacing: f64, values: Vec<f64>) -> Result<Self> {
        if !(1..=2).contains(&d) {
            return Err(Error::UnsupportedDimension(d));
        }
        if !(spacing > 0.0) {
            return Err(Error::NonPositiveSpacing(spacing));
        }
        let expected = side.pow(d as u32);
        if values.len() != expected || side == 0 {
            return Err(Error::LengthMismatch {
                expected,
                found: values.len(),
            });
        }
        Ok(Self {
            d,
            side,
            spacing,
            values,
            seed: None,
            imag_residue: 0.0,
        })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Nodes per side, `L`.
    pub fn side(&self) -> usize {
        self.side
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    /// Largest `|Im|` discarded after the inverse transform.
    pub fn imag_residue(&self) -> f64 {
        self.imag_residue
    }

    pub fn rows(&self) -> usize {
        if self.d == 1 {
            1
        } else {
            self.side
        }
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.values[row * self.side + col]
    }

    pub fn row(&self, row: usize) -> &[f64] {
        &self.values[row * self.side..(row + 1) * self.side]
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }

    /// Sample variance about the sample mean (divisor `n`).
    pub fn variance(&self) -> f64 {
        let m = self.mean();
        self.values.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / self.values.len() as f64
    }

    /// Scales and shifts every value: `a x + b`.
    pub fn affine(&self, a: f64, b: f64) -> Self {
        Self {
            values: self.values.iter().map(|v| a * v + b).collect(),
            ..self.clone()
        }
    }
}

/// `S(k_m) = 1/Q~*(|k_m|)` on the lattice, stored in FFT order.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeSpectrum {
    d: usize,
    side: usize,
    spacing: f64,
    values: Vec<f64>,
}

/// Signed frequency index of FFT slot `i`: `i` below `L/2`, `i - L` otherwise.
pub fn frequency_index(i: usize, side: usize) -> i64 {
    if i < side / 2 {
        i as i64
    } else {
        i as i64 - side as i64
    }
}

impl LatticeSpectrum {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn side(&self) -> usize {
        self.side
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `S` at signed mode indices (one per dimension).
    pub fn at_mode(&self, mode: &[i64]) -> f64 {
        let l = self.side as i64;
        let idx = mode
            .iter()
            .fold(0usize, |acc, &m| acc * self.side + m.rem_euclid(l) as usize);
        self.values[idx]
    }

    /// `C_lat(r) = (L a)^-d sum_m S(k_m) cos(k_m . r)` at integer lattice lag
    /// (one component per dimension, `r = lag * a`).
    pub fn covariance(&self, lag: &[i64]) -> f64 {
        let l = self.side;
        let phase_step = 2.0 * PI / l as f64;
        let volume = (l as f64 * self.spacing).powi(self.d as i32);
        let mut sum = 0.0;
        match self.d {
            1 => {
                for (i, s) in self.values.iter().enumerate() {
                    let m = frequency_index(i, l) as f64;
                    sum += s * (phase_step * m * lag[0] as f64).cos();
                }
            }
            _ => {
                for i in 0..l {
                    let mi = frequency_index(i, l) as f64;
                    for j in 0..l {
                        let mj = frequency_index(j, l) as f64;
                        let phase = phase_step * (mi * lag[0] as f64 + mj * lag[1] as f64);
                        sum += self.values[i * l + j] * phase.cos();
                    }
                }
            }
        }
        sum / volume
    }
}

fn check_lattice(side: usize, spacing: f64, d: usize) -> Result<()> {
    if side == 0 || !side.is_multiple_of(2) {
        return Err(Error::OddLatticeSize(side));
    }
    if !(spacing > 0.0) {
        return Err(Error::NonPositiveSpacing(spacing));
    }
    if !(1..=2).contains(&d) {
        return Err(Error::UnsupportedDimension(d));
    }
    Ok(())
}

pub fn lattice_spectrum(pf: &PrecisionFunction, side: usize, spacing: f64) -> Result<LatticeSpectrum> {
    let d = pf.d();
    check_lattice(side, spacing, d)?;
    let dk = 2.0 * PI / (side as f64 * spacing);
    let spectral = |k: f64| -> Result<f64> {
        let q = pf.spectral(k);
        let s = 1.0 / q;
        if s.is_finite() && s > 0.0 {
            Ok(s)
        } else {
            Err(Error::NonFiniteSpectrum(k))
        }
    };
    let values = match d {
        1 => (0..side)
            .map(|i| spectral(dk * frequency_index(i, side).abs() as f64))
            .collect::<Result<Vec<_>>>()?,
        _ => {
            let mut out = Vec::with_capacity(side * side);
            for i in 0..side {
                let ki = dk * frequency_index(i, side) as f64;
                for j in 0..side {
                    let kj = dk * frequency_index(j, side) as f64;
                    out.push(spectral((ki * ki + kj * kj).sqrt())?);
                }
            }
            out
        }
    };
    Ok(LatticeSpectrum {
        d,
        side,
        spacing,
        values,
    })
}

fn fft_nd(data: &mut [Complex64], side: usize, d: usize, direction: FftDirection) {
    let mut planner = FftPlannerScalar::new();
    let fft = planner.plan_fft(side, direction);
    // consecutive chunks of length `side` are transformed independently
    fft.process(data);
    if d == 2 {
        transpose(data, side);
        fft.process(data);
        transpose(data, side);
    }
}

fn transpose(data: &mut [Complex64], side: usize) {
    for i in 0..side {
        for j in i + 1..side {
            data.swap(i * side + j, j * side + i);
        }
    }
}

/// Draws one realization.
pub fn simulate(pf: &PrecisionFunction, side: usize, spacing: f64, seed: u64) -> Result<LatticeField> {
    let spectrum = lattice_spectrum(pf, side, spacing)?;
    Ok(simulate_with_spectrum(&spectrum, seed))
}

/// Draws `reps` realizations with seeds `seed, seed + 1, ...`.
pub fn simulate_batch(
    pf: &PrecisionFunction,
    side: usize,
    spacing: f64,
    seed: u64,
    reps: usize,
) -> Result<Vec<LatticeField>> {
    let spectrum = lattice_spectrum(pf, side, spacing)?;
    Ok((0..reps as u64)
        .into_par_iter()
        .map(|i| simulate_with_spectrum(&spectrum, seed.wrapping_add(i)))
        .collect())
}

/// Draws one realization from a precomputed spectrum.
pub fn simulate_with_spectrum(spectrum: &LatticeSpectrum, seed: u64) -> LatticeField {
    let LatticeSpectrum {
        d,
        side,
        spacing,
        ref values,
    } = *spectrum;
    let n = values.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut buf: Vec<Complex64> = (0..n)
        .map(|_| Complex64::new(StandardNormal.sample(&mut rng), 0.0))
        .collect();
    fft_nd(&mut buf, side, d, FftDirection::Forward);
    let volume = (side as f64 * spacing).powi(d as i32);
    let norm = 1.0 / (volume * n as f64);
    for (c, s) in buf.iter_mut().zip(values) {
        *c *= (s * norm).sqrt();
    }
    fft_nd(&mut buf, side, d, FftDirection::Inverse);
    let imag_residue = buf.iter().map(|c| c.im.abs()).fold(0.0, f64::max);
    LatticeField {
        d,
        side,
        spacing,
        values: buf.iter().map(|c| c.re).collect(),
        seed: Some(seed),
        imag_residue,
    }
}
