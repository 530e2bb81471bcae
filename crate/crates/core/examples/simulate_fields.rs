//! Lattice realizations for h in {0.05, 0.8, 1.5} and xi in {20, 10, 5}, all
//! drawn from the same seed, written as CSV grids and grayscale heatmaps.
//!
//! ```text
//! cargo run --release --example simulate_fields -- [out_dir]
//! ```

use std::path::PathBuf;

use sphlap2::io::write_grid;
use sphlap2::plot::emit_svg_heatmap;
use sphlap2::simulate::simulate;
use sphlap2::{Lap2Params, PrecisionFunction};

fn main() -> sphlap2::Result<()> {
    let out = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "sphlap2-out".into()));
    std::fs::create_dir_all(&out)?;
    let (side, seed) = (256, 2024);

    println!("{:>6} {:>5} {:>12} {:>12}", "h", "xi", "std", "lag-1 corr");
    for h in [0.05, 0.8, 1.5] {
        for xi in [20.0, 10.0, 5.0] {
            let pf = PrecisionFunction::gaussian(Lap2Params::matern(xi)?, h, 2)?;
            let field = simulate(&pf, side, 1.0, seed)?;
            let corr = sphlap2::variogram::row_autocorrelation(&field, 1)?;
            println!("{h:>6} {xi:>5} {:>12.4e} {corr:>12.4}", field.variance().sqrt());
            let stem = format!("field_h{h}_xi{xi}");
            write_grid(&out.join(format!("{stem}.csv")), &field)?;
            emit_svg_heatmap(&out.join(format!("{stem}.svg")), field.values(), side, side)?;
        }
    }
    println!("wrote grids and heatmaps to {}", out.display());
    Ok(())
}
