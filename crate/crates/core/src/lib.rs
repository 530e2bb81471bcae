//! Mesh-free Gaussian random fields built on the SPH-LAP2 precision function.
//!
//! The precision operator `theta0 - theta1 Lap + theta2 Lap^2` is smoothed with
//! a kernel of bandwidth `h`. For the Gaussian kernel this yields a closed-form
//! radial precision function `Q*(r)` whose pairwise evaluations form a positive
//! definite precision matrix for any point configuration.
//!
//! Modules, bottom up:
//!
//! * [`params`]: coefficient validation and the Matérn `nu = 1` parametrization
//! * [`kernel`]: the Gaussian smoothing kernel and the generic kernel trait
//! * [`radial_calculus`]: Hermite derivatives, radial Laplacian and Bi-Laplacian
//! * [`precision`]: `Q*(r)` in closed form, spectral form and via the generic route
//! * [`matrix`]: precision-matrix assembly on scattered points
//! * [`simulate`]: spectral FFT simulation on periodic lattices
//! * [`variogram`]: empirical variograms and the Matérn model
//! * [`predict`]: single-point conditional distribution
//! * [`cli`]: the command-line front end, with CSV and SVG output in [`io`] and [`plot`]
//!
//! See the `examples/` directory of this crate for one runnable program per
//! capability.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod io;
pub mod kernel;
pub mod matrix;
pub mod params;
pub mod plot;
pub mod precision;
pub mod predict;
pub mod quadrature;
pub mod radial_calculus;
pub mod simulate;
pub mod special;
pub mod transform;
pub mod variogram;

pub use error::{Error, Result};
pub use kernel::{GaussianKernel, SmoothingKernel};
pub use matrix::{PointSet, PrecisionMatrix};
pub use params::{Lap2Params, Regime};
pub use precision::PrecisionFunction;
pub use predict::Prediction;
pub use simulate::LatticeField;
pub use variogram::{Axis, VariogramEstimate};
