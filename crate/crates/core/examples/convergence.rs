//! Error of the random isotropic estimator against the Gaussian kernel as the
//! row count grows; the fitted log-log slope sits near -1/2.
//!
//! ```text
//! cargo run --release --example convergence
//! ```

use ssp_kernels::analysis::{
    convergence_sweep, radial_grid, BuilderConfig, SweepSpec, SweepVariable,
};
use ssp_kernels::encoder::LengthScale;
use ssp_kernels::kernels::KernelSpec;
use ssp_kernels::sampling::RadialDistribution;

fn main() -> ssp_kernels::Result<()> {
    let ls = LengthScale::default();
    let builder = BuilderConfig::RandSsp {
        n: 2,
        rows: 0,
        dist: RadialDistribution::chi(2, 1.0)?,
    };
    let sweep = SweepSpec {
        variable: SweepVariable::Rows,
        values: vec![100, 300, 1000, 3000, 10_000],
        seeds: 10,
        master_seed: 42,
        ls,
        radii: radial_grid(6.0, 61),
    };
    let report = convergence_sweep(&builder, &KernelSpec::gaussian(ls), &sweep)?;

    println!("{:>7} {:>12} {:>12}", "M", "max|err|", "rmse");
    for row in &report.rows {
        println!(
            "{:>7} {:>12.5} {:>12.5}",
            row.value, row.max_abs_err_median, row.rmse_median
        );
    }
    if let Some(slope) = report.slope {
        println!("log-log slope {slope:.3}");
    }
    Ok(())
}
