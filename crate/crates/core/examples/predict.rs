//! Predictive mean and variance along a transect through scattered samples,
//! cross-checked against the conditional mean read off the assembled matrix.
//!
//! ```text
//! cargo run --example predict
//! ```

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sphlap2::matrix::assemble;
use sphlap2::predict::{predict, predict_batch};
use sphlap2::{Lap2Params, PointSet, PrecisionFunction};

fn main() -> sphlap2::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let n = 15;
    let coords: Vec<f64> = (0..2 * n).map(|_| 6.0 * rng.random::<f64>()).collect();
    let values: Vec<f64> = (0..n)
        .map(|i| (coords[2 * i] / 2.0).cos() + 0.1 * (rng.random::<f64>() - 0.5))
        .collect();
    let pts = PointSet::new(2, coords)?.with_values(values.clone())?;
    let pf = PrecisionFunction::gaussian(Lap2Params::matern(1.5)?, 0.8, 2)?;

    let targets: Vec<Vec<f64>> = (0..=12).map(|i| vec![0.5 * i as f64, 3.0]).collect();
    println!("{:>6} {:>6} {:>10} {:>10}", "x1", "x2", "mean", "variance");
    for p in predict_batch(&pf, &pts, &targets)? {
        println!(
            "{:>6.2} {:>6.2} {:>10.5} {:>10.5}",
            p.location[0], p.location[1], p.mean, p.variance
        );
    }

    // append the target to the sample set and read the full conditional off the matrix
    let t = [2.5, 3.0];
    let q = assemble(&pf, &pts.with_point(&t)?, 0.0)?;
    let qss = q.get(n, n)?;
    let brute = -(0..n)
        .map(|m| q.get(n, m).map(|v| v * values[m]))
        .sum::<sphlap2::Result<f64>>()?
        / qss;
    println!(
        "at {t:?}: predict {:.12}, matrix {:.12}",
        predict(&pf, &pts, &t)?.mean,
        brute
    );
    Ok(())
}
