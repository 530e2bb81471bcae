//! Row and column variograms of h = 0.05 realizations against the Matérn
//! nu = 1 model `1 - (r/xi) K1(r/xi)`.
//!
//! ```text
//! cargo run --release --example matern_variogram -- [out_dir]
//! ```

use std::path::PathBuf;

use sphlap2::plot::{emit_svg_lineplot, Series};
use sphlap2::simulate::simulate;
use sphlap2::variogram::{empirical_variogram, matern1_variogram};
use sphlap2::{Axis, Lap2Params, PrecisionFunction};

fn main() -> sphlap2::Result<()> {
    let out = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "sphlap2-out".into()));
    std::fs::create_dir_all(&out)?;
    let max_lag = 60;

    for xi in [20.0, 10.0, 5.0] {
        let pf = PrecisionFunction::gaussian(Lap2Params::matern(xi)?, 0.05, 2)?;
        let field = simulate(&pf, 256, 1.0, 2024)?;
        // unit sill: divide by the sample variance
        let var = field.variance();
        let rows = empirical_variogram(&field, max_lag, Axis::Rows)?.normalized(var);
        let cols = empirical_variogram(&field, max_lag, Axis::Columns)?.normalized(var);
        let lags: Vec<f64> = (0..=max_lag).map(|l| l as f64).collect();
        let model = lags
            .iter()
            .map(|&r| matern1_variogram(r, xi))
            .collect::<sphlap2::Result<Vec<_>>>()?;

        let mad = (1..=15)
            .map(|l| (0.5 * (rows[l] + cols[l]) - model[l]).abs())
            .sum::<f64>()
            / 15.0;
        println!("xi = {xi:>4}: mean |gamma_avg - model| over lags 1..15 = {mad:.4}");
        for l in [1, 5, 10, 20, 40] {
            println!(
                "    lag {l:>2}: rows {:.3}  cols {:.3}  model {:.3}",
                rows[l], cols[l], model[l]
            );
        }

        let path = out.join(format!("variogram_xi{xi}.svg"));
        emit_svg_lineplot(
            &path,
            &format!("variogram, h = 0.05, xi = {xi}"),
            &[
                Series::markers("rows", lags.clone(), rows),
                Series::markers("columns", lags.clone(), cols),
                Series::line("Matérn nu=1", lags, model),
            ],
        )?;
    }
    Ok(())
}
