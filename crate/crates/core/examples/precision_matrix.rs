//! Precision matrix on scattered points: dense assembly, Cholesky check,
//! epsilon truncation and the energy of a field vector.
//!
//! ```text
//! cargo run --example precision_matrix
//! ```

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sphlap2::matrix::assemble;
use sphlap2::{Lap2Params, PointSet, PrecisionFunction};

fn main() -> sphlap2::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let n = 300;
    let coords: Vec<f64> = (0..2 * n).map(|_| 30.0 * rng.random::<f64>()).collect();
    let pts = PointSet::new(2, coords)?;

    let pf = PrecisionFunction::gaussian(Lap2Params::matern(4.0)?, 1.0, 2)?;
    let dense = assemble(&pf, &pts, 0.0)?;
    let report = dense.cholesky_check()?;
    println!(
        "N = {n}: dense matrix, {} nonzeros, positive definite: {}",
        dense.nnz(),
        report.positive_definite
    );

    for eps in [1e-12, 1e-6, 1e-3] {
        let q = assemble(&pf, &pts, eps)?;
        let ok = q.cholesky_check()?.positive_definite;
        println!(
            "epsilon = {eps:e}: {} stored entries ({:.1}% of N^2), positive definite: {ok}",
            q.nnz(),
            100.0 * q.nnz() as f64 / (n * n) as f64
        );
    }

    let x: Vec<f64> = (0..n).map(|i| (pts.position(i)[0] / 5.0).sin()).collect();
    println!("energy of a smooth field: {:.6}", dense.energy(&x)?);
    let rough: Vec<f64> = (0..n).map(|_| rng.random::<f64>() - 0.5).collect();
    println!("energy of white noise:    {:.6}", dense.energy(&rough)?);
    Ok(())
}
