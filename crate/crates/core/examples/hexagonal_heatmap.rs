//! One rotated simplex gives a hexagonally tiled similarity map; mixing many
//! orientations and scales makes it radial.
//!
//! ```text
//! cargo run --release --example hexagonal_heatmap
//! ```

use ssp_kernels::analysis::{heatmap2d, Heatmap};
use ssp_kernels::encoder::LengthScale;
use ssp_kernels::phase::{build_hexssp, build_hexssp_with_scales};
use ssp_kernels::sampling::RadialDistribution;

const SHADES: &[u8] = b" .:-=+*#%@";

fn draw(map: &Heatmap) {
    for iy in (0..map.resolution()).rev() {
        let row: String = (0..map.resolution())
            .map(|ix| {
                let v = map.at(ix, iy).clamp(-1.0, 1.0);
                let k = ((v + 1.0) / 2.0 * (SHADES.len() - 1) as f64).round() as usize;
                SHADES[k] as char
            })
            .collect();
        println!("{row}");
    }
}

fn main() -> ssp_kernels::Result<()> {
    let ls = LengthScale::default();

    println!("single simplex, scale 1");
    let simplex = build_hexssp_with_scales(2, 1, &[1.0], 3)?;
    draw(&heatmap2d(&simplex, ls, 15.0, 61)?);

    println!("\n50 orientations x 20 scales");
    let mixture = build_hexssp(2, 50, 20, &RadialDistribution::uniform(1.0)?, 3)?;
    draw(&heatmap2d(&mixture, ls, 15.0, 61)?);
    Ok(())
}
