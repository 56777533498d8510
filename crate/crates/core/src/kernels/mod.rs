//! Analytic radial kernels and the quadrature oracle for the general radial
//! kernel integral.
//!
//! All closed forms are written in the normalised radius `ρ = ‖x‖₂ / ℓ`
//! against their unit-scale magnitude law (`U(0,1)`, `χ(n)`, unit ball).
//! The oracle instead integrates against the distribution as given, whose
//! own scale `λ = ℓ⁻¹` plays the same role; the two conventions agree:
//! `quadrature_kernel(U(0, 1/ℓ), x, 1) = quadrature_kernel(U(0,1), x, ℓ)`.

mod oracle;

pub use oracle::quadrature_kernel;

use std::fmt;

use crate::encoder::LengthScale;
use crate::sampling::RadialDistribution;
use crate::specfun::{bessel_j, dd::Dd, gamma, ln_gamma, SeriesControl};
use crate::{error::domain, Error, Result};

/// Above this ρ the power series for the hypergeometric kernel is abandoned
/// for the quadrature route.
const HYPERGEOMETRIC_SERIES_MAX: f64 = 40.0;

/// Euclidean norm of a displacement.
pub fn radius_of(x: &[f64]) -> f64 {
    x.iter().map(|c| c * c).sum::<f64>().sqrt()
}

/// `sin(ρ)/ρ` with `ρ = x/ℓ`: the kernel of uniform magnitudes in one
/// dimension.
pub fn sinc_kernel(x: f64, ls: LengthScale) -> f64 {
    let u = x / ls.get();
    if u.abs() < 1e-4 {
        let u2 = u * u;
        1.0 - u2 / 6.0 + u2 * u2 / 120.0
    } else {
        u.sin() / u
    }
}

/// `exp(−ρ²/2)`, the kernel of `ℓ⁻¹χ(n)` magnitudes in any dimension.
pub fn gaussian_kernel(radius: f64, ls: LengthScale) -> f64 {
    let rho = radius / ls.get();
    (-0.5 * rho * rho).exp()
}

/// Integrated hypergeometric kernel, the kernel of `U(0, ℓ⁻¹)` magnitudes:
///
/// `K(ρ) = Σ_k (−1)^k ρ^{2k} / (4^k (2k+1) (n/2)_k k!)`.
///
/// Terms follow `t_{k+1} = t_k · (−ρ²/4)(2k+1) / ((2k+3)(n/2+k)(k+1))` and are
/// accumulated in double-double arithmetic, so the alternating sum keeps full
/// double accuracy up to `ρ = 40`. Beyond that the value comes from the
/// quadrature oracle.
pub fn hypergeometric_kernel(
    n: usize,
    radius: f64,
    ls: LengthScale,
    ctl: SeriesControl,
) -> Result<f64> {
    if n < 1 {
        return domain("hypergeometric kernel needs n ≥ 1");
    }
    let rho = radius.abs() / ls.get();
    if rho > HYPERGEOMETRIC_SERIES_MAX {
        let unit = RadialDistribution::uniform(1.0)?;
        return quadrature_kernel(&unit, n, rho, LengthScale::default());
    }
    let half_n = 0.5 * n as f64;
    let z = -Dd::prod(rho, rho).mul_f64(0.25);
    let mut term = Dd::ONE;
    let mut sum = Dd::ONE;
    for k in 0..ctl.max_terms {
        let kf = k as f64;
        // (2k+3)(n/2+k)(k+1) is exact in f64 for every k reached here
        let denom = (2.0 * kf + 3.0) * (half_n + kf) * (kf + 1.0);
        term = (term * z).mul_f64(2.0 * kf + 1.0).div_f64(denom);
        sum = sum + term;
        let decaying = 0.25 * rho * rho < (half_n + kf + 1.0) * (kf + 2.0);
        if decaying && term.hi.abs() <= ctl.rel_tol * sum.hi.abs() * 1e-3 {
            return Ok(sum.to_f64());
        }
    }
    Err(Error::Accuracy {
        routine: "hypergeometric_kernel",
        value: sum.to_f64(),
        error_estimate: term.hi.abs(),
    })
}

/// n-jinc kernel, the kernel of magnitudes uniform in the `n`-ball of radius
/// `ℓ⁻¹`:
///
/// `K(ρ) = 2^{n/2−1} n Γ(n/2) J_{n/2}(ρ) / ρ^{n/2}`.
///
/// For `n = 2` this is `2 J₁(ρ)/ρ`; for `n = 1` it is `sin ρ / ρ`.
pub fn jinc_kernel(n: usize, radius: f64, ls: LengthScale) -> Result<f64> {
    if n < 1 {
        return domain("jinc kernel needs n ≥ 1");
    }
    let rho = radius.abs() / ls.get();
    let nf = n as f64;
    if rho < 1e-6 {
        // leading terms of ₀F₁(n/2 + 1; −ρ²/4)
        return Ok(1.0 - rho * rho / (2.0 * (nf + 2.0)));
    }
    let half_n = 0.5 * nf;
    let denom = rho.powf(half_n);
    let scale = if half_n < 150.0 && denom > 1e-280 {
        2f64.powf(half_n - 1.0) * nf * gamma(half_n)? / denom
    } else {
        let log_scale = (half_n - 1.0) * std::f64::consts::LN_2 + nf.ln() + ln_gamma(half_n)?
            - half_n * rho.ln();
        log_scale.exp()
    };
    Ok(scale * bessel_j(half_n, rho)?)
}

/// An analytic kernel together with its length scale.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelSpec {
    kind: KernelKind,
    ls: LengthScale,
}

#[derive(Debug, Clone, PartialEq)]
pub enum KernelKind {
    Sinc,
    Gaussian,
    Hypergeometric { n: usize },
    Jinc { n: usize },
    Quadrature { n: usize, dist: RadialDistribution },
}

impl KernelSpec {
    pub fn sinc(ls: LengthScale) -> Self {
        Self {
            kind: KernelKind::Sinc,
            ls,
        }
    }

    pub fn gaussian(ls: LengthScale) -> Self {
        Self {
            kind: KernelKind::Gaussian,
            ls,
        }
    }

    pub fn hypergeometric(n: usize, ls: LengthScale) -> Result<Self> {
        if n < 1 {
            return domain("hypergeometric kernel needs n ≥ 1");
        }
        Ok(Self {
            kind: KernelKind::Hypergeometric { n },
            ls,
        })
    }

    pub fn jinc(n: usize, ls: LengthScale) -> Result<Self> {
        if n < 1 {
            return domain("jinc kernel needs n ≥ 1");
        }
        Ok(Self {
            kind: KernelKind::Jinc { n },
            ls,
        })
    }

    pub fn quadrature(dist: RadialDistribution, n: usize, ls: LengthScale) -> Result<Self> {
        check_dist_dimension(&dist, n)?;
        Ok(Self {
            kind: KernelKind::Quadrature { n, dist },
            ls,
        })
    }

    /// The closed-form kernel realised by rows with magnitudes from `dist`
    /// in `n` dimensions, encoded at length scale `ls`. Tabulated laws have
    /// no closed form and map to the quadrature oracle.
    pub fn for_distribution(dist: &RadialDistribution, n: usize, ls: LengthScale) -> Result<Self> {
        check_dist_dimension(dist, n)?;
        let scaled = |lambda: f64| LengthScale::new(ls.get() / lambda);
        match dist {
            RadialDistribution::Uniform { lambda } if n == 1 => Ok(Self::sinc(scaled(*lambda)?)),
            RadialDistribution::Uniform { lambda } => Self::hypergeometric(n, scaled(*lambda)?),
            RadialDistribution::Chi { length_scale, .. } => {
                Ok(Self::gaussian(LengthScale::new(ls.get() * length_scale)?))
            }
            RadialDistribution::ScaledBeta { lambda, .. } => Self::jinc(n, scaled(*lambda)?),
            RadialDistribution::Tabulated(_) => Self::quadrature(dist.clone(), n, ls),
        }
    }

    pub fn kind(&self) -> &KernelKind {
        &self.kind
    }

    pub fn length_scale(&self) -> LengthScale {
        self.ls
    }

    /// Feature dimension, where the kernel depends on it.
    pub fn n(&self) -> Option<usize> {
        match &self.kind {
            KernelKind::Sinc => Some(1),
            KernelKind::Gaussian => None,
            KernelKind::Hypergeometric { n }
            | KernelKind::Jinc { n }
            | KernelKind::Quadrature { n, .. } => Some(*n),
        }
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            KernelKind::Sinc => "sinc",
            KernelKind::Gaussian => "gaussian",
            KernelKind::Hypergeometric { .. } => "hypergeometric",
            KernelKind::Jinc { .. } => "jinc",
            KernelKind::Quadrature { .. } => "quadrature",
        }
    }

    /// Kernel value at radius `‖x‖₂ = radius`.
    pub fn eval(&self, radius: f64) -> Result<f64> {
        match &self.kind {
            KernelKind::Sinc => Ok(sinc_kernel(radius, self.ls)),
            KernelKind::Gaussian => Ok(gaussian_kernel(radius, self.ls)),
            KernelKind::Hypergeometric { n } => {
                hypergeometric_kernel(*n, radius, self.ls, SeriesControl::default())
            }
            KernelKind::Jinc { n } => jinc_kernel(*n, radius, self.ls),
            KernelKind::Quadrature { n, dist } => quadrature_kernel(dist, *n, radius, self.ls),
        }
    }

    /// Kernel value at displacement `x`.
    pub fn eval_point(&self, x: &[f64]) -> Result<f64> {
        if let Some(n) = self.n() {
            if x.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: x.len(),
                });
            }
        }
        self.eval(radius_of(x))
    }
}

impl fmt::Display for KernelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())?;
        match &self.kind {
            KernelKind::Hypergeometric { n } | KernelKind::Jinc { n } => write!(f, "(n={n})")?,
            KernelKind::Quadrature { n, dist } => write!(f, "(n={n}, {dist})")?,
            _ => {}
        }
        write!(f, " ell={}", self.ls.get())
    }
}

pub(crate) fn check_dist_dimension(dist: &RadialDistribution, n: usize) -> Result<()> {
    if n < 1 {
        return domain("kernels need n ≥ 1");
    }
    match dist.dimension() {
        Some(d) if d != n => domain(format!("radial law is for n = {d}, kernel has n = {n}")),
        _ => Ok(()),
    }
}
