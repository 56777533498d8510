//! Embeddings and the empirical kernel estimator.
//!
//! For stored rows `ω_1..ω_M` and length scale `ℓ`, a point `x` has phases
//! `θ_k = ω_k·x/ℓ` and Fourier coefficients
//! `(1, e^{jθ_1}, …, e^{jθ_M}, e^{−jθ_M}, …, e^{−jθ_1})`. The embedding is the
//! real inverse DFT of that vector, scaled to unit norm, and by Parseval
//! `⟨enc(x), enc(y)⟩ = (1 + 2 Σ cos(θ_k(x) − θ_k(y))) / (2M + 1)`.
//!
//! [`similarity`] works directly in the coefficient domain. By default it
//! drops the DC coefficient and returns `(1/M) Σ cos(ω_k·(x−y)/ℓ)`, an
//! unbiased estimate of the kernel; `include_dc = true` reproduces the
//! embedding dot product exactly.

use std::f64::consts::TAU;

use crate::phase::PhaseMatrix;
use crate::{error::domain, Error, Result};

/// Length scale `ℓ > 0`; phases are divided by it at encoding time.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct LengthScale(f64);

impl LengthScale {
    pub fn new(ell: f64) -> Result<Self> {
        if ell > 0.0 && ell.is_finite() {
            Ok(Self(ell))
        } else {
            domain(format!(
                "length scale must be finite and positive, got {ell}"
            ))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

impl Default for LengthScale {
    fn default() -> Self {
        Self(1.0)
    }
}

/// A real unit-norm embedding of length `2M + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct SspVector {
    values: Vec<f64>,
    seed: u64,
}

impl SspVector {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Seed of the phase matrix that produced this vector.
    pub fn source_seed(&self) -> u64 {
        self.seed
    }
}

fn check_dim(pm: &PhaseMatrix, x: &[f64]) -> Result<()> {
    if x.len() != pm.n() {
        return Err(Error::DimensionMismatch {
            expected: pm.n(),
            got: x.len(),
        });
    }
    if x.iter().any(|v| !v.is_finite()) {
        return domain("points must be finite");
    }
    Ok(())
}

#[inline]
fn phase(row: &[f64], x: &[f64], inv_ell: f64) -> f64 {
    row.iter().zip(x).map(|(w, c)| w * c).sum::<f64>() * inv_ell
}

/// Encodes `x` as an SSP. The inverse transform is evaluated directly,
/// `O(M²)`; fine for the row counts used here.
pub fn encode(pm: &PhaseMatrix, x: &[f64], ls: LengthScale) -> Result<SspVector> {
    check_dim(pm, x)?;
    let inv_ell = 1.0 / ls.get();
    let thetas: Vec<f64> = pm.rows().map(|row| phase(row, x, inv_ell)).collect();
    let d = pm.embedding_dim();
    let df = d as f64;
    let values = (0..d)
        .map(|t| {
            let s: f64 = thetas
                .iter()
                .enumerate()
                .map(|(k, th)| {
                    // reduce k·t mod d so the angle stays small and exact
                    let kt = ((k + 1) * t) % d;
                    (th + TAU * kt as f64 / df).cos()
                })
                .sum();
            (1.0 + 2.0 * s) / df
        })
        .collect();
    Ok(SspVector {
        values,
        seed: pm.seed(),
    })
}

/// Inner product of two embeddings.
pub fn dot(a: &SspVector, b: &SspVector) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            got: b.len(),
        });
    }
    Ok(a.values.iter().zip(&b.values).map(|(x, y)| x * y).sum())
}

/// Empirical kernel value at displacement `x − y`.
pub fn similarity(
    pm: &PhaseMatrix,
    x: &[f64],
    y: &[f64],
    ls: LengthScale,
    include_dc: bool,
) -> Result<f64> {
    check_dim(pm, x)?;
    check_dim(pm, y)?;
    let diff: Vec<f64> = x.iter().zip(y).map(|(a, b)| a - b).collect();
    Ok(similarity_at(pm, &diff, ls, include_dc))
}

/// [`similarity`] for a displacement already formed; no validation.
pub(crate) fn similarity_at(
    pm: &PhaseMatrix,
    diff: &[f64],
    ls: LengthScale,
    include_dc: bool,
) -> f64 {
    let inv_ell = 1.0 / ls.get();
    let sum: f64 = pm.rows().map(|row| phase(row, diff, inv_ell).cos()).sum();
    let m = pm.len() as f64;
    if include_dc {
        (1.0 + 2.0 * sum) / (2.0 * m + 1.0)
    } else {
        sum / m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::sinc_kernel;
    use crate::phase::{build_hexssp_with_scales, build_randssp};
    use crate::sampling::{stream_rng, RadialDistribution, RotationMatrix};
    use rand::Rng;

    fn small_pm() -> PhaseMatrix {
        build_randssp(3, 40, &RadialDistribution::chi(3, 1.0).unwrap(), 2).unwrap()
    }

    #[test]
    fn length_scale_validates() {
        assert!(LengthScale::new(0.0).is_err());
        assert!(LengthScale::new(-1.0).is_err());
        assert!(LengthScale::new(f64::NAN).is_err());
        assert_eq!(LengthScale::new(2.0).unwrap().get(), 2.0);
    }

    #[test]
    fn origin_encodes_to_the_discrete_delta() {
        let pm = small_pm();
        let v = encode(&pm, &[0.0; 3], LengthScale::default()).unwrap();
        assert_eq!(v.len(), 81);
        assert!((v.values()[0] - 1.0).abs() < 1e-14);
        assert!(v.values()[1..].iter().all(|c| c.abs() < 1e-14));
    }

    #[test]
    fn encodings_have_unit_norm_and_satisfy_parseval() {
        let pm = small_pm();
        let ls = LengthScale::new(0.8).unwrap();
        let mut rng = stream_rng(1, 0);
        for _ in 0..20 {
            let x: Vec<f64> = (0..3).map(|_| rng.random_range(-4.0..4.0)).collect();
            let y: Vec<f64> = (0..3).map(|_| rng.random_range(-4.0..4.0)).collect();
            let ex = encode(&pm, &x, ls).unwrap();
            let ey = encode(&pm, &y, ls).unwrap();
            assert!((dot(&ex, &ex).unwrap() - 1.0).abs() < 1e-12);
            let parseval = similarity(&pm, &x, &y, ls, true).unwrap();
            assert!((dot(&ex, &ey).unwrap() - parseval).abs() < 1e-12);
        }
    }

    #[test]
    fn zero_displacement_and_shift_invariance() {
        let pm = small_pm();
        let ls = LengthScale::default();
        let x = [0.3, -1.2, 2.0];
        assert_eq!(similarity(&pm, &x, &x, ls, false).unwrap(), 1.0);
        assert_eq!(similarity(&pm, &x, &x, ls, true).unwrap(), 1.0);
        let y = [1.0, 0.5, -0.25];
        let c = [0.5, 0.25, -1.0];
        let shift = |p: &[f64]| -> Vec<f64> { p.iter().zip(&c).map(|(a, b)| a + b).collect() };
        // sums of dyadic values: the difference is formed exactly
        let a = similarity(&pm, &x, &y, ls, false).unwrap();
        let b = similarity(&pm, &shift(&x), &shift(&y), ls, false).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn similarity_is_even() {
        let pm = small_pm();
        let ls = LengthScale::default();
        let x = [0.7, -0.1, 1.9];
        let neg: Vec<f64> = x.iter().map(|v| -v).collect();
        assert_eq!(
            similarity(&pm, &x, &[0.0; 3], ls, false).unwrap(),
            similarity(&pm, &neg, &[0.0; 3], ls, false).unwrap()
        );
    }

    #[test]
    fn dimension_mismatch() {
        let pm = small_pm();
        let ls = LengthScale::default();
        assert!(matches!(
            similarity(&pm, &[0.0; 2], &[0.0; 3], ls, false),
            Err(Error::DimensionMismatch {
                expected: 3,
                got: 2
            })
        ));
        assert!(encode(&pm, &[0.0; 4], ls).is_err());
        let other = build_randssp(3, 10, &RadialDistribution::chi(3, 1.0).unwrap(), 2).unwrap();
        let a = encode(&pm, &[0.0; 3], ls).unwrap();
        let b = encode(&other, &[0.0; 3], ls).unwrap();
        assert!(dot(&a, &b).is_err());
    }

    #[test]
    fn single_simplex_has_sixfold_symmetry() {
        let pm = build_hexssp_with_scales(2, 1, &[1.0], 0).unwrap();
        let ls = LengthScale::default();
        let r60 = RotationMatrix::planar(std::f64::consts::FRAC_PI_3);
        let mut rng = stream_rng(8, 0);
        for _ in 0..200 {
            let x = [rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0)];
            let rx = r60.apply(&x);
            let a = similarity(&pm, &x, &[0.0, 0.0], ls, false).unwrap();
            let b = similarity(&pm, &rx, &[0.0, 0.0], ls, false).unwrap();
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn one_dimensional_uniform_rows_approach_sinc() {
        let u = RadialDistribution::uniform(1.0).unwrap();
        let ls = LengthScale::default();
        let mut gaps: Vec<f64> = (0..10)
            .map(|seed| {
                let pm = build_randssp(1, 2000, &u, seed).unwrap();
                (0..=200)
                    .map(|i| {
                        let x = -10.0 + 0.1 * i as f64;
                        (similarity(&pm, &[x], &[0.0], ls, false).unwrap() - sinc_kernel(x, ls))
                            .abs()
                    })
                    .fold(0.0, f64::max)
            })
            .collect();
        gaps.sort_by(f64::total_cmp);
        assert!(gaps[5] < 0.05, "median gap {}", gaps[5]);
    }
}
