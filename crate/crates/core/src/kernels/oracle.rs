use std::f64::consts::PI;

use super::check_dist_dimension;
use crate::encoder::LengthScale;
use crate::quadrature::integrate;
use crate::sampling::RadialDistribution;
use crate::specfun::{hyp0f1, SeriesControl};
use crate::Result;

const ABS_TOL: f64 = 1e-9;
const MAX_PANELS: usize = 20_000;

/// General radial kernel by numerical quadrature:
///
/// `K(ρ) = Γ(n/2) ∫₀^∞ p(r) (2/(rρ))^{n/2−1} J_{n/2−1}(rρ) dr
///       = ∫₀^∞ p(r) ₀F₁(n/2; −(rρ)²/4) dr`,
///
/// with `ρ = ‖x‖₂/ℓ` and `p` the density of `dist`. The `₀F₁` form is finite
/// at `r = 0`, so the integrand needs no special casing there. The range is
/// cut at the support bound (χ: where the tail mass falls below 1e-12) and
/// pre-split at the density's knots and into panels no wider than the
/// Bessel half-period `π/ρ`; adaptive Gauss–Kronrod refinement then runs to
/// an absolute error estimate of 1e-9.
pub fn quadrature_kernel(
    dist: &RadialDistribution,
    n: usize,
    radius: f64,
    ls: LengthScale,
) -> Result<f64> {
    check_dist_dimension(dist, n)?;
    let rho = radius.abs() / ls.get();
    if rho == 0.0 {
        // the integrand is the density itself
        return Ok(1.0);
    }
    let b = 0.5 * n as f64;
    let ctl = SeriesControl::default();
    let integrand = |r: f64| -> Result<f64> {
        let p = dist.pdf(r)?;
        if p == 0.0 {
            return Ok(0.0);
        }
        let t = r * rho;
        Ok(p * hyp0f1(b, -0.25 * t * t, ctl)?)
    };
    let breakpoints = panel_breakpoints(dist, rho);
    Ok(integrate(integrand, &breakpoints, ABS_TOL, MAX_PANELS)?.value)
}

fn panel_breakpoints(dist: &RadialDistribution, rho: f64) -> Vec<f64> {
    let mut knots = dist.knots();
    let lo = knots[0].min(0.0);
    let hi = dist.upper_limit();
    let width = PI / rho;
    let panels = ((hi - lo) / width).ceil() as usize;
    knots.extend((1..panels).map(|i| lo + i as f64 * width));
    knots.push(lo);
    knots.retain(|&k| (lo..=hi).contains(&k));
    knots.sort_by(f64::total_cmp);
    knots.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * hi.max(1.0));
    knots
}
