//! Radial basis kernels induced by spatial semantic pointer (SSP) Fourier
//! embeddings.
//!
//! An SSP encodes a point `x ∈ ℝⁿ` as the real inverse Fourier transform of
//! unit-magnitude coefficients `e^{j ω_k·x/ℓ}`, where the frequency rows
//! `ω_k` form a *phase matrix*. The inner product of two encodings depends
//! only on `x − y`, and in the limit of many rows it converges to the kernel
//! whose Fourier transform is the distribution the rows were drawn from.
//! When the rows are isotropic (uniform direction, independent magnitude) the
//! kernel is radial and is given by a one-dimensional Bessel integral over
//! the magnitude density.
//!
//! The crate is organised bottom-up:
//!
//! | Module | Purpose |
//! |--------|---------|
//! | [`specfun`] | gamma, Pochhammer, `₀F₁`, Bessel `J_ν` |
//! | [`sampling`] | simplex vertices, Haar rotations, isotropic directions, radial laws |
//! | [`phase`] | HexSSP, random isotropic and product-of-1D phase matrices, text format |
//! | [`encoder`] | embeddings and the empirical similarity estimator |
//! | [`kernels`] | sinc, Gaussian, integrated hypergeometric, n-jinc, and the quadrature oracle |
//! | [`analysis`] | profiles, heatmaps, convergence sweeps, anisotropy |
//! | [`quadrature`] | adaptive Gauss–Kronrod integration behind the kernel oracle |
//! | [`cli`] | CSV-producing commands behind the `sspk` binary |
//!
//! ```
//! use ssp_kernels::{kernels, phase, sampling::RadialDistribution, encoder::{similarity, LengthScale}};
//!
//! let dist = RadialDistribution::uniform(1.0).unwrap();
//! let pm = phase::build_hexssp(2, 50, 20, &dist, 7).unwrap();
//! let ls = LengthScale::new(1.0).unwrap();
//! let est = similarity(&pm, &[1.0, 0.5], &[0.0, 0.0], ls, false).unwrap();
//! let exact = kernels::hypergeometric_kernel(2, (1.25f64).sqrt(), ls, Default::default()).unwrap();
//! assert!((est - exact).abs() < 0.1);
//! ```

// `!(x > 0.0)` rejects NaN along with the out-of-range values
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![cfg_attr(
    test,
    allow(clippy::excessive_precision, clippy::inconsistent_digit_grouping)
)]

pub mod analysis;
pub mod cli;
pub mod encoder;
mod error;
pub mod kernels;
pub mod phase;
pub mod quadrature;
pub mod sampling;
pub mod specfun;

pub use error::{Error, Result};
