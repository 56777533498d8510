use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_distr::StandardNormal;

use crate::specfun::{gamma_p, ln_gamma};
use crate::{error::domain, Error, Result};

/// Gaussian concentration: P(χ(n) > √n + s) ≤ e^{−s²/2}; s = 7.5 puts the
/// tail below 1e-12.
const CHI_TAIL_MARGIN: f64 = 7.5;

/// Law of the magnitude `r = ‖ω‖₂` of a phase row.
///
/// Every variant carries its own scale: `Uniform` and `ScaledBeta` are
/// supported on `[0, λ]`, `Chi` is `ℓ⁻¹·χ(n)`. Where both a support radius
/// and a length scale make sense they are tied by `λ = ℓ⁻¹`.
#[derive(Debug, Clone, PartialEq)]
pub enum RadialDistribution {
    /// `r ~ U(0, λ)`.
    Uniform { lambda: f64 },
    /// `r ~ ℓ⁻¹ χ(n)`, the magnitude of an `n`-dimensional standard normal
    /// scaled by `1/ℓ`.
    Chi { n: usize, length_scale: f64 },
    /// `r ~ λ·Beta(n, 1)`, density `n λ⁻ⁿ r^{n−1}` on `[0, λ]`: phase rows
    /// uniform inside the `n`-ball of radius `λ`.
    ScaledBeta { n: usize, lambda: f64 },
    /// Piecewise-linear density through `(r, p)` knots, normalised to unit
    /// mass by the trapezoid rule.
    Tabulated(Table),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    radii: Vec<f64>,
    density: Vec<f64>,
    cdf: Vec<f64>,
}

impl Table {
    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn density(&self) -> &[f64] {
        &self.density
    }
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        domain(format!("{name} must be finite and positive, got {v}"))
    }
}

impl RadialDistribution {
    pub fn uniform(lambda: f64) -> Result<Self> {
        check_positive("lambda", lambda)?;
        Ok(Self::Uniform { lambda })
    }

    pub fn chi(n: usize, length_scale: f64) -> Result<Self> {
        check_positive("length_scale", length_scale)?;
        if n < 1 {
            return domain("chi needs n ≥ 1");
        }
        Ok(Self::Chi { n, length_scale })
    }

    pub fn scaled_beta(n: usize, lambda: f64) -> Result<Self> {
        check_positive("lambda", lambda)?;
        if n < 1 {
            return domain("scaled beta needs n ≥ 1");
        }
        Ok(Self::ScaledBeta { n, lambda })
    }

    /// Builds a tabulated density from `(r, p)` knots. Radii must be
    /// nonnegative and strictly increasing, densities nonnegative with
    /// positive total mass; the table is rescaled to unit mass.
    pub fn tabulated(points: &[(f64, f64)]) -> Result<Self> {
        Self::tabulated_with(points, true)
    }

    fn tabulated_with(points: &[(f64, f64)], rescale: bool) -> Result<Self> {
        if points.len() < 2 {
            return domain("a tabulated density needs at least two knots");
        }
        let (radii, density): (Vec<f64>, Vec<f64>) = points.iter().copied().unzip();
        if radii.iter().chain(&density).any(|v| !v.is_finite()) {
            return domain("tabulated knots must be finite");
        }
        if radii[0] < 0.0 || radii.windows(2).any(|w| !(w[1] > w[0])) {
            return domain("tabulated radii must be nonnegative and strictly increasing");
        }
        if density.iter().any(|&p| p < 0.0) {
            return domain("tabulated densities must be nonnegative");
        }
        let mass: f64 = trapezoid_cumulative(&radii, &density)
            .last()
            .copied()
            .unwrap_or(0.0);
        if !(mass > 0.0) {
            return domain("tabulated density has zero mass");
        }
        let density: Vec<f64> = if rescale {
            density.iter().map(|p| p / mass).collect()
        } else {
            density
        };
        let cdf = trapezoid_cumulative(&radii, &density);
        let total = *cdf.last().expect("two knots");
        if (total - 1.0).abs() > 1e-8 {
            return Err(Error::Accuracy {
                routine: "tabulated normalisation",
                value: total,
                error_estimate: (total - 1.0).abs(),
            });
        }
        Ok(Self::Tabulated(Table {
            radii,
            density,
            cdf,
        }))
    }

    /// Support radius `λ`, or `ℓ⁻¹` for the χ law.
    pub fn lambda(&self) -> Option<f64> {
        match self {
            Self::Uniform { lambda } | Self::ScaledBeta { lambda, .. } => Some(*lambda),
            Self::Chi { length_scale, .. } => Some(1.0 / length_scale),
            Self::Tabulated(_) => None,
        }
    }

    /// Length scale `ℓ = λ⁻¹`.
    pub fn length_scale(&self) -> Option<f64> {
        self.lambda().map(|l| 1.0 / l)
    }

    /// Feature dimension the law is tied to, if any.
    pub fn dimension(&self) -> Option<usize> {
        match self {
            Self::Chi { n, .. } | Self::ScaledBeta { n, .. } => Some(*n),
            _ => None,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Self::Uniform { .. } => "uniform",
            Self::Chi { .. } => "chi",
            Self::ScaledBeta { .. } => "beta",
            Self::Tabulated(_) => "tabulated",
        }
    }

    /// Upper end of the integration range: the support bound, or for χ the
    /// radius beyond which less than 1e-12 of the mass lies.
    pub fn upper_limit(&self) -> f64 {
        match self {
            Self::Uniform { lambda } | Self::ScaledBeta { lambda, .. } => *lambda,
            Self::Chi { n, length_scale } => ((*n as f64).sqrt() + CHI_TAIL_MARGIN) / length_scale,
            Self::Tabulated(t) => *t.radii.last().expect("two knots"),
        }
    }

    /// Points where the density is not smooth, inside `[0, upper_limit]`.
    pub fn knots(&self) -> Vec<f64> {
        match self {
            Self::Tabulated(t) => t.radii.clone(),
            _ => vec![0.0, self.upper_limit()],
        }
    }

    /// Probability density of the magnitude at `r ≥ 0`.
    pub fn pdf(&self, r: f64) -> Result<f64> {
        if !(r >= 0.0) {
            return domain(format!("radial density needs r ≥ 0, got {r}"));
        }
        Ok(match self {
            Self::Uniform { lambda } => {
                if r <= *lambda {
                    1.0 / lambda
                } else {
                    0.0
                }
            }
            Self::Chi { n, length_scale } => {
                // density of ℓ⁻¹χ(n) at r is ℓ·f_χ(ℓr)
                let s = length_scale * r;
                let nf = *n as f64;
                if s == 0.0 {
                    return Ok(if *n == 1 {
                        length_scale * (2.0 / std::f64::consts::PI).sqrt()
                    } else {
                        0.0
                    });
                }
                let log_f = (nf - 1.0) * s.ln()
                    - 0.5 * s * s
                    - (0.5 * nf - 1.0) * std::f64::consts::LN_2
                    - ln_gamma(0.5 * nf)?;
                length_scale * log_f.exp()
            }
            Self::ScaledBeta { n, lambda } => {
                if r <= *lambda {
                    let nf = *n as f64;
                    nf / lambda * (r / lambda).powi(*n as i32 - 1)
                } else {
                    0.0
                }
            }
            Self::Tabulated(t) => match locate(&t.radii, r) {
                Some(i) => {
                    let (r0, r1) = (t.radii[i], t.radii[i + 1]);
                    let w = (r - r0) / (r1 - r0);
                    t.density[i] * (1.0 - w) + t.density[i + 1] * w
                }
                None => 0.0,
            },
        })
    }

    /// Cumulative distribution function.
    pub fn cdf(&self, r: f64) -> Result<f64> {
        if r <= 0.0 {
            return Ok(0.0);
        }
        Ok(match self {
            Self::Uniform { lambda } => (r / lambda).min(1.0),
            Self::Chi { n, length_scale } => {
                let s = length_scale * r;
                gamma_p(0.5 * *n as f64, 0.5 * s * s)?
            }
            Self::ScaledBeta { n, lambda } => (r / lambda).min(1.0).powi(*n as i32),
            Self::Tabulated(t) => match locate(&t.radii, r) {
                Some(i) => {
                    let u = r - t.radii[i];
                    let p0 = t.density[i];
                    let slope = (t.density[i + 1] - p0) / (t.radii[i + 1] - t.radii[i]);
                    t.cdf[i] + p0 * u + 0.5 * slope * u * u
                }
                None if r < t.radii[0] => 0.0,
                None => 1.0,
            },
        })
    }

    /// Draws one magnitude.
    /// Inverse CDF at `p ∈ (0, 1)`.
    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !(p > 0.0 && p < 1.0) {
            return domain(format!("quantile level must lie in (0, 1), got {p}"));
        }
        Ok(match self {
            Self::Uniform { lambda } => lambda * p,
            Self::ScaledBeta { n, lambda } => lambda * p.powf(1.0 / *n as f64),
            Self::Tabulated(t) => t.inverse_cdf(p),
            Self::Chi { .. } => self.chi_quantile(p)?,
        })
    }

    /// Safeguarded Newton on the CDF; the bracket `[lo, hi]` always holds the root.
    fn chi_quantile(&self, p: f64) -> Result<f64> {
        let (mut lo, mut hi) = (0.0, self.upper_limit());
        while self.cdf(hi)? < p {
            lo = hi;
            hi *= 2.0;
        }
        let mut r = 0.5 * (lo + hi);
        for _ in 0..200 {
            let f = self.cdf(r)? - p;
            if f > 0.0 {
                hi = r;
            } else {
                lo = r;
            }
            let d = self.pdf(r)?;
            let mut next = if d > 0.0 { r - f / d } else { f64::NAN };
            if !(next > lo && next < hi) {
                next = 0.5 * (lo + hi);
            }
            if (next - r).abs() <= 4.0 * f64::EPSILON * r || hi - lo <= 4.0 * f64::EPSILON * hi {
                return Ok(next);
            }
            r = next;
        }
        Ok(r)
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match self {
            // 1 − U lies in (0, 1], keeping rows away from the zero vector
            Self::Uniform { lambda } => lambda * (1.0 - rng.random::<f64>()),
            Self::Chi { n, length_scale } => {
                let ss: f64 = (0..*n)
                    .map(|_| {
                        let z: f64 = rng.sample(StandardNormal);
                        z * z
                    })
                    .sum();
                ss.sqrt() / length_scale
            }
            // inverse CDF of (r/λ)ⁿ
            Self::ScaledBeta { n, lambda } => {
                lambda * (1.0 - rng.random::<f64>()).powf(1.0 / *n as f64)
            }
            Self::Tabulated(t) => t.inverse_cdf(rng.random::<f64>()),
        }
    }
}

impl Table {
    fn inverse_cdf(&self, u: f64) -> f64 {
        // first knot whose cumulative mass reaches u
        let i = self
            .cdf
            .partition_point(|&c| c < u)
            .clamp(1, self.cdf.len() - 1)
            - 1;
        let need = u - self.cdf[i];
        let p0 = self.density[i];
        let width = self.radii[i + 1] - self.radii[i];
        let slope = (self.density[i + 1] - p0) / width;
        // solve p0·x + slope·x²/2 = need in the stable form
        let disc = (p0 * p0 + 2.0 * slope * need).max(0.0);
        let denom = p0 + disc.sqrt();
        let x = if denom > 0.0 { 2.0 * need / denom } else { 0.0 };
        self.radii[i] + x.clamp(0.0, width)
    }
}

fn trapezoid_cumulative(x: &[f64], y: &[f64]) -> Vec<f64> {
    let mut acc = 0.0;
    let mut out = Vec::with_capacity(x.len());
    out.push(0.0);
    for i in 1..x.len() {
        acc += 0.5 * (y[i] + y[i - 1]) * (x[i] - x[i - 1]);
        out.push(acc);
    }
    out
}

fn locate(radii: &[f64], r: f64) -> Option<usize> {
    if r < radii[0] || r > *radii.last()? {
        return None;
    }
    Some(radii.partition_point(|&k| k <= r).clamp(1, radii.len() - 1) - 1)
}

impl fmt::Display for RadialDistribution {
    /// Compact token used in file headers, e.g. `uniform:1`, `chi:2:1`,
    /// `beta:3:0.5`, `tabulated:0/1,1/1`. Floats use shortest round-trip
    /// formatting so parsing restores them bit-exactly.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Uniform { lambda } => write!(f, "uniform:{lambda:e}"),
            Self::Chi { n, length_scale } => write!(f, "chi:{n}:{length_scale:e}"),
            Self::ScaledBeta { n, lambda } => write!(f, "beta:{n}:{lambda:e}"),
            Self::Tabulated(t) => {
                write!(f, "tabulated:")?;
                for (i, (r, p)) in t.radii.iter().zip(&t.density).enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{r:e}/{p:e}")?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for RadialDistribution {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("invalid radial distribution token {s:?}"));
        let num = |t: &str| t.parse::<f64>().map_err(|_| bad());
        let int = |t: &str| t.parse::<usize>().map_err(|_| bad());
        let (kind, rest) = s.split_once(':').ok_or_else(bad)?;
        let fields: Vec<&str> = rest.split(':').collect();
        match (kind, fields.as_slice()) {
            ("uniform", [l]) => Self::uniform(num(l)?),
            ("chi", [n, ell]) => Self::chi(int(n)?, num(ell)?),
            ("beta", [n, l]) => Self::scaled_beta(int(n)?, num(l)?),
            ("tabulated", [table]) => {
                let points = table
                    .split(',')
                    .map(|pair| {
                        let (r, p) = pair.split_once('/').ok_or_else(bad)?;
                        Ok((num(r)?, num(p)?))
                    })
                    .collect::<Result<Vec<_>>>()?;
                // already normalised when written; keep the bits as they are
                Self::tabulated_with(&points, false)
            }
            _ => Err(bad()),
        }
    }
}
