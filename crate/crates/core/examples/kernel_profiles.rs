//! Analytic radial kernels for several feature dimensions.
//!
//! The integrated hypergeometric kernel (uniform magnitudes) and the n-jinc
//! kernel (magnitudes uniform over the n-ball) both widen as `n` grows.
//!
//! ```text
//! cargo run --example kernel_profiles
//! ```

use ssp_kernels::analysis::{kernel_profile, radial_grid};
use ssp_kernels::encoder::LengthScale;
use ssp_kernels::kernels::KernelSpec;

fn main() -> ssp_kernels::Result<()> {
    let ls = LengthScale::new(1.0)?;
    let dims = [1, 2, 3, 5, 10];
    let radii = radial_grid(10.0, 21);

    for (title, make) in [
        (
            "hypergeometric",
            KernelSpec::hypergeometric as fn(usize, LengthScale) -> _,
        ),
        ("jinc", KernelSpec::jinc),
    ] {
        println!("{title}");
        print!("{:>6}", "rho");
        for n in dims {
            print!("{:>10}", format!("n={n}"));
        }
        println!();
        let columns = dims
            .iter()
            .map(|&n| Ok(kernel_profile(&make(n, ls)?, &radii)?.values))
            .collect::<ssp_kernels::Result<Vec<_>>>()?;
        for (i, r) in radii.iter().enumerate() {
            print!("{r:>6.2}");
            for col in &columns {
                print!("{:>10.5}", col[i]);
            }
            println!();
        }
        println!();
    }
    Ok(())
}
