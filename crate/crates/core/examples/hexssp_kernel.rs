//! A HexSSP phase matrix reproduces the integrated hypergeometric kernel.
//!
//! ```text
//! cargo run --release --example hexssp_kernel -- [seed]
//! ```

use ssp_kernels::analysis::{empirical_profile, kernel_profile, radial_grid};
use ssp_kernels::encoder::LengthScale;
use ssp_kernels::kernels::KernelSpec;
use ssp_kernels::phase::build_hexssp;
use ssp_kernels::sampling::RadialDistribution;

fn main() -> ssp_kernels::Result<()> {
    let seed = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(7);
    let ls = LengthScale::default();
    let dist = RadialDistribution::uniform(1.0)?;

    // 50 orientations x 20 scales x 3 simplex vertices = 3000 rows
    let pm = build_hexssp(2, 50, 20, &dist, seed)?;
    println!(
        "M = {}, embedding dimension = {}",
        pm.len(),
        pm.embedding_dim()
    );

    let radii = radial_grid(10.0, 201);
    let exact = kernel_profile(&KernelSpec::hypergeometric(2, ls)?, &radii)?;
    for (angle, dir) in [("0°", [1.0, 0.0]), ("45°", [0.5f64.sqrt(), 0.5f64.sqrt()])] {
        let emp = empirical_profile(&pm, ls, &dir, &radii)?;
        println!(
            "direction {angle:>3}: RMSE {:.4}, max |err| {:.4}",
            emp.rmse_against(&exact),
            emp.max_abs_against(&exact)
        );
    }

    let emp = empirical_profile(&pm, ls, &[1.0, 0.0], &radii)?;
    println!("\n{:>6} {:>10} {:>10}", "rho", "empirical", "analytic");
    for i in (0..radii.len()).step_by(20) {
        println!(
            "{:>6.2} {:>10.5} {:>10.5}",
            radii[i], emp.values[i], exact.values[i]
        );
    }
    Ok(())
}
