//! Axis-aligned product embeddings depend on direction; HexSSP mixtures do not.
//!
//! ```text
//! cargo run --release --example anisotropy
//! ```

use std::f64::consts::PI;

use ssp_kernels::analysis::{anisotropy_gap, DEFAULT_DIRECTIONS};
use ssp_kernels::encoder::{similarity, LengthScale};
use ssp_kernels::phase::{build_hexssp, build_product_ssp};
use ssp_kernels::sampling::RadialDistribution;

fn main() -> ssp_kernels::Result<()> {
    let ls = LengthScale::default();
    let dist = RadialDistribution::uniform(1.0)?;
    let product = build_product_ssp(2, 1500, &dist, 1)?;
    let hex = build_hexssp(2, 50, 20, &dist, 1)?;

    let axis = [PI, 0.0];
    let diagonal = [PI / 2f64.sqrt(), PI / 2f64.sqrt()];
    for (name, pm) in [("product", &product), ("hexssp", &hex)] {
        let a = similarity(pm, &axis, &[0.0, 0.0], ls, false)?;
        let d = similarity(pm, &diagonal, &[0.0, 0.0], ls, false)?;
        let gap = anisotropy_gap(pm, ls, PI, DEFAULT_DIRECTIONS)?;
        println!("{name:>8} (M={}): axis {a:+.4}  diagonal {d:+.4}  gap over {DEFAULT_DIRECTIONS} directions {gap:.4}", pm.len());
    }
    Ok(())
}
