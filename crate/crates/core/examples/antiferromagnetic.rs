//! Large bandwidth (h = 1.5, xi = 20) on a 64 x 64 lattice: neighbors prefer
//! opposite signs, and the variogram oscillates from lag to lag.
//!
//! ```text
//! cargo run --example antiferromagnetic -- [out_dir]
//! ```

use std::path::PathBuf;

use sphlap2::plot::{emit_svg_heatmap, emit_svg_lineplot, Series};
use sphlap2::simulate::simulate;
use sphlap2::variogram::{empirical_variogram, row_autocorrelation};
use sphlap2::{Axis, Lap2Params, PrecisionFunction};

fn main() -> sphlap2::Result<()> {
    let out = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "sphlap2-out".into()));
    std::fs::create_dir_all(&out)?;

    let pf = PrecisionFunction::gaussian(Lap2Params::matern(20.0)?, 1.5, 2)?;
    let field = simulate(&pf, 64, 1.0, 5)?;
    println!("lag-1 row autocorrelation: {:.4}", row_autocorrelation(&field, 1)?);

    let v = empirical_variogram(&field, 20, Axis::Averaged)?;
    let var = field.variance();
    for (l, g) in v.lags.iter().zip(&v.semivariance).take(9) {
        let bar = "#".repeat((20.0 * g / var).round() as usize);
        println!("gamma({l}) / var = {:>6.3} {bar}", g / var);
    }

    emit_svg_heatmap(&out.join("antiferromagnetic.svg"), field.values(), 64, 64)?;
    let x: Vec<f64> = v.lags.iter().map(|&l| l as f64).collect();
    emit_svg_lineplot(
        &out.join("antiferromagnetic_variogram.svg"),
        "average row/column variogram, h = 1.5, xi = 20",
        &[Series::line("gamma", x, v.normalized(var))],
    )?;
    println!("wrote {}", out.display());
    Ok(())
}
