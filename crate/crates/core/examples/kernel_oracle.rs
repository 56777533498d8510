//! Closed-form kernels against direct numerical integration of the radial
//! Bessel integral, including a custom tabulated magnitude density.
//!
//! ```text
//! cargo run --example kernel_oracle
//! ```

use ssp_kernels::encoder::LengthScale;
use ssp_kernels::kernels::{quadrature_kernel, KernelSpec};
use ssp_kernels::sampling::RadialDistribution;

fn main() -> ssp_kernels::Result<()> {
    let ls = LengthScale::default();
    let n = 3;
    let laws = [
        RadialDistribution::uniform(1.0)?,
        RadialDistribution::chi(n, 1.0)?,
        RadialDistribution::scaled_beta(n, 1.0)?,
    ];

    for law in &laws {
        let closed = KernelSpec::for_distribution(law, n, ls)?;
        let mut worst: f64 = 0.0;
        for k in 0..=200 {
            let rho = 0.1 * k as f64;
            let exact = closed.eval(rho)?;
            worst = worst.max((exact - quadrature_kernel(law, n, rho, ls)?).abs());
        }
        println!("{law:<18} -> {closed:<28} max |closed - quadrature| = {worst:.2e}");
    }

    // Any nonnegative density works; this one is a triangle peaking at r = 1.
    let tent = RadialDistribution::tabulated(&[(0.0, 0.0), (1.0, 1.0), (2.0, 0.0)])?;
    let spec = KernelSpec::for_distribution(&tent, n, ls)?;
    println!("\n{spec}");
    for rho in [0.0, 1.0, 2.0, 4.0, 8.0] {
        println!("  K({rho:>3}) = {:+.6}", spec.eval(rho)?);
    }
    Ok(())
}
