//! Saving and reloading a phase matrix in the text format.
//!
//! ```text
//! cargo run --example phase_io
//! ```

use ssp_kernels::phase::{build_hexssp, from_text, to_text};
use ssp_kernels::sampling::RadialDistribution;

fn main() -> ssp_kernels::Result<()> {
    let pm = build_hexssp(3, 2, 2, &RadialDistribution::uniform(1.0)?, 11)?;
    let text = to_text(&pm);
    for line in text.lines().take(5) {
        println!("{line}");
    }
    println!("... ({} rows)", pm.len());

    let back = from_text(&text)?;
    assert_eq!(back, pm);
    println!("round trip is exact");
    Ok(())
}
