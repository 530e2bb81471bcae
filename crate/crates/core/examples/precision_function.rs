//! Normalized precision functions for three coefficient vectors at h = 1.5, d = 2,
//! with a line plot.
//!
//! ```text
//! cargo run --example precision_function -- [out_dir]
//! ```

use std::path::PathBuf;

use sphlap2::plot::{emit_svg_lineplot, Series};
use sphlap2::{Lap2Params, PrecisionFunction};

fn main() -> sphlap2::Result<()> {
    let out = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "sphlap2-out".into()));
    std::fs::create_dir_all(&out)?;

    let h = 1.5;
    let sets = [(0.002, 5.0, 1.25), (0.002, 0.1, 1.25), (0.002, -0.095, 1.25)];
    let r: Vec<f64> = (0..=400).map(|i| 10.0 * i as f64 / 400.0).collect();

    let mut series = Vec::new();
    for (t0, t1, t2) in sets {
        let theta = Lap2Params::validate(t0, t1, t2)?;
        let pf = PrecisionFunction::gaussian(theta, h, 2)?;
        let q: Vec<f64> = r.iter().map(|&r| pf.normalized(r)).collect();
        let (imin, qmin) = q
            .iter()
            .enumerate()
            .fold((0, f64::INFINITY), |acc, (i, &v)| if v < acc.1 { (i, v) } else { acc });
        println!(
            "{theta}: Q*(0) = {:.6e}, valley {qmin:.4} at r = {:.3}, Q*(10)/Q*(0) = {:.2e}",
            pf.value_at_zero(),
            r[imin],
            q[q.len() - 1]
        );
        series.push(Series::line(format!("{theta}"), r.clone(), q));
    }

    let path = out.join("precision_function.svg");
    emit_svg_lineplot(&path, "Q*(r)/Q*(0), h = 1.5, d = 2", &series)?;
    println!("wrote {}", path.display());
    Ok(())
}
