//! Scalar special functions used by the analytic kernels.
//!
//! All functions are pure and take real arguments only. Alternating series
//! are summed in double-double arithmetic so that the power
//! series stay accurate up to the Bessel crossover at `x = 30`.

mod bessel;
pub(crate) mod dd;
mod gamma;
mod hyper;

pub use bessel::bessel_j;
pub use gamma::{gamma, gamma_p, ln_gamma, pochhammer};
pub use hyper::hyp0f1;

use crate::{error::domain, Result};

/// Truncation control for power series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesControl {
    pub rel_tol: f64,
    pub max_terms: usize,
}

impl SeriesControl {
    pub fn new(rel_tol: f64, max_terms: usize) -> Result<Self> {
        if !(rel_tol > 0.0 && rel_tol.is_finite()) {
            return domain(format!("rel_tol must be positive, got {rel_tol}"));
        }
        if max_terms < 1 {
            return domain("max_terms must be at least 1");
        }
        Ok(Self { rel_tol, max_terms })
    }
}

impl Default for SeriesControl {
    fn default() -> Self {
        Self {
            rel_tol: 1e-15,
            max_terms: 500,
        }
    }
}
