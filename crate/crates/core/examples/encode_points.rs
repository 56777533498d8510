//! Encoding points as real vectors and comparing them by dot product.
//!
//! ```text
//! cargo run --example encode_points
//! ```

use ssp_kernels::encoder::{dot, encode, similarity, LengthScale};
use ssp_kernels::kernels::gaussian_kernel;
use ssp_kernels::phase::build_randssp;
use ssp_kernels::sampling::RadialDistribution;

fn main() -> ssp_kernels::Result<()> {
    let ls = LengthScale::new(2.0)?;
    let pm = build_randssp(2, 1000, &RadialDistribution::chi(2, 1.0)?, 5)?;

    let origin = encode(&pm, &[0.0, 0.0], ls)?;
    println!("vector length {} (2M + 1)", origin.len());

    for x in [[0.5, 0.0], [1.0, 1.0], [3.0, -2.0]] {
        let v = encode(&pm, &x, ls)?;
        // the dot product keeps the constant DC term; the estimator drops it
        let with_dc = dot(&v, &origin)?;
        let estimate = similarity(&pm, &x, &[0.0, 0.0], ls, false)?;
        let r = x[0].hypot(x[1]);
        println!(
            "x = {x:?}: dot {with_dc:.5}, estimate {estimate:.5}, Gaussian {:.5}",
            gaussian_kernel(r, ls)
        );
    }
    Ok(())
}
