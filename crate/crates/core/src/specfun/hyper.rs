use super::{bessel, dd::Dd, ln_gamma, SeriesControl};
use crate::{error::domain, Error, Result};

/// Beyond this `t` in `₀F₁(b; −t²/4)` the Bessel route takes over.
pub(crate) const SERIES_MAX_ARG: f64 = 30.0;

/// `₀F₁(b; −t²/4)` summed in double-double arithmetic.
///
/// The alternating terms peak near `k ≈ t/2` at roughly `e^t`; double-double
/// keeps about `32 − t·log10(e)` digits, i.e. better than 1e-18 absolute at
/// `t = 30`.
pub(crate) fn hyp0f1_neg_series(b: f64, t: f64, max_terms: usize) -> Result<f64> {
    let z = -Dd::prod(t, t).mul_f64(0.25);
    let mut term = Dd::ONE;
    let mut sum = Dd::ONE;
    let mut peak = 1.0f64;
    for k in 0..max_terms {
        let kf = k as f64;
        term = term * z / Dd::sum(b, kf).mul_f64(kf + 1.0);
        sum = sum + term;
        let mag = term.hi.abs();
        peak = peak.max(mag);
        // Past the peak once the term ratio |z|/((b+k)(k+1)) drops below 1.
        let decaying = 0.25 * t * t < (b + kf + 1.0) * (kf + 2.0);
        if decaying && (mag <= 1e-33 * peak || mag <= 1e-34 * sum.hi.abs().max(f64::MIN_POSITIVE)) {
            return Ok(sum.to_f64());
        }
    }
    Err(Error::Accuracy {
        routine: "hyp0f1",
        value: sum.to_f64(),
        error_estimate: term.hi.abs(),
    })
}

/// Confluent hypergeometric limit function `₀F₁(; b; z) = Σ zᵏ / ((b)ₖ k!)`.
///
/// * `z ≥ 0`: all terms positive; summed directly until
///   `|term| ≤ rel_tol·|sum|`.
/// * `−225 ≤ z < 0`: alternating; summed in double-double arithmetic.
/// * `z < −225` (`t = 2√−z > 30`): evaluated through
///   `₀F₁(b; −t²/4) = Γ(b) (t/2)^{1−b} J_{b−1}(t)`.
///
/// Exceeding `ctl.max_terms` returns [`Error::Accuracy`] carrying the
/// partial sum.
pub fn hyp0f1(b: f64, z: f64, ctl: SeriesControl) -> Result<f64> {
    if !(b > 0.0) || !b.is_finite() {
        return domain(format!("hyp0f1 requires b > 0, got {b}"));
    }
    if !z.is_finite() {
        return domain(format!("hyp0f1 requires finite z, got {z}"));
    }
    if z == 0.0 {
        return Ok(1.0);
    }
    if z > 0.0 {
        let mut term = 1.0;
        let mut sum = 1.0;
        for k in 0..ctl.max_terms {
            let kf = k as f64;
            term *= z / ((b + kf) * (kf + 1.0));
            sum += term;
            if !sum.is_finite() {
                return Err(Error::Range(format!("hyp0f1({b}, {z}) overflows f64")));
            }
            if term <= ctl.rel_tol * sum {
                return Ok(sum);
            }
        }
        return Err(Error::Accuracy {
            routine: "hyp0f1",
            value: sum,
            error_estimate: term,
        });
    }
    let t = 2.0 * (-z).sqrt();
    let order = b - 1.0;
    if t <= SERIES_MAX_ARG || order >= t {
        return hyp0f1_neg_series(b, t, ctl.max_terms);
    }
    let j = bessel::bessel_j_large(order, t)?;
    let scale = (ln_gamma(b)? + order * (2.0 / t).ln()).exp();
    Ok(scale * j)
}
