//! Empirical-versus-analytic comparisons: radial profiles, 2-D similarity
//! maps, convergence sweeps and anisotropy.
//!
//! Grid evaluations run in parallel. Every random construction inside a
//! sweep is seeded from `(master seed, sweep index, seed index)`, so results
//! do not depend on scheduling.

pub mod stats;

use rayon::prelude::*;

use crate::encoder::{similarity_at, LengthScale};
use crate::kernels::KernelSpec;
use crate::phase::{build_hexssp, build_product_ssp, build_randssp, PhaseMatrix};
use crate::sampling::RadialDistribution;
use crate::{error::domain, Error, Result};

/// Default radial grid: 201 points on `[0, 10]`.
pub const DEFAULT_RADIAL_POINTS: usize = 201;
pub const DEFAULT_RADIAL_MAX: f64 = 10.0;
/// Default number of directions for angular scans.
pub const DEFAULT_DIRECTIONS: usize = 64;

/// `points` evenly spaced radii on `[0, rmax]`.
pub fn radial_grid(rmax: f64, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![0.0],
        _ => (0..points)
            .map(|i| rmax * i as f64 / (points - 1) as f64)
            .collect(),
    }
}

/// Kernel or similarity values sampled along a ray.
#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityProfile {
    pub radii: Vec<f64>,
    pub direction: Vec<f64>,
    pub values: Vec<f64>,
    pub label: String,
}

impl SimilarityProfile {
    pub fn rmse_against(&self, other: &SimilarityProfile) -> f64 {
        let n = self.values.len() as f64;
        let ss: f64 = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b) * (a - b))
            .sum();
        (ss / n).sqrt()
    }

    pub fn max_abs_against(&self, other: &SimilarityProfile) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

fn check_radii(radii: &[f64]) -> Result<()> {
    if radii.is_empty() {
        return domain("radius grid is empty");
    }
    if radii.iter().any(|r| !r.is_finite() || *r < 0.0) {
        return domain("radii must be finite and nonnegative");
    }
    if radii.windows(2).any(|w| w[1] <= w[0]) {
        return domain("radii must be strictly increasing");
    }
    Ok(())
}

/// Evaluates an analytic kernel on a radius grid.
pub fn kernel_profile(spec: &KernelSpec, radii: &[f64]) -> Result<SimilarityProfile> {
    check_radii(radii)?;
    let values = radii
        .par_iter()
        .map(|&r| spec.eval(r))
        .collect::<Result<Vec<_>>>()?;
    let mut direction = vec![0.0; spec.n().unwrap_or(1)];
    direction[0] = 1.0;
    Ok(SimilarityProfile {
        radii: radii.to_vec(),
        direction,
        values,
        label: spec.to_string(),
    })
}

/// Empirical similarity `similarity(r·u, 0)` along the unit direction `u`.
pub fn empirical_profile(
    pm: &PhaseMatrix,
    ls: LengthScale,
    direction: &[f64],
    radii: &[f64],
) -> Result<SimilarityProfile> {
    check_radii(radii)?;
    if direction.len() != pm.n() {
        return Err(Error::DimensionMismatch {
            expected: pm.n(),
            got: direction.len(),
        });
    }
    let norm = direction.iter().map(|c| c * c).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > 1e-12 {
        return domain(format!("direction must be a unit vector, norm is {norm}"));
    }
    let values = radii
        .par_iter()
        .map(|&r| {
            let x: Vec<f64> = direction.iter().map(|c| r * c).collect();
            similarity_at(pm, &x, ls, false)
        })
        .collect();
    Ok(SimilarityProfile {
        radii: radii.to_vec(),
        direction: direction.to_vec(),
        values,
        label: format!(
            "empirical {} M={} seed={}",
            pm.construction().kind_name(),
            pm.len(),
            pm.seed()
        ),
    })
}

/// Similarity over a square lattice centred on the origin.
#[derive(Debug, Clone, PartialEq)]
pub struct Heatmap {
    /// Lattice coordinates along each axis, ascending.
    pub coords: Vec<f64>,
    /// Row-major values: `values[iy * len + ix]` is at `(coords[ix], coords[iy])`.
    pub values: Vec<f64>,
}

impl Heatmap {
    pub fn resolution(&self) -> usize {
        self.coords.len()
    }

    pub fn at(&self, ix: usize, iy: usize) -> f64 {
        self.values[iy * self.coords.len() + ix]
    }
}

/// `similarity(x, 0)` on a `resolution × resolution` lattice over
/// `[−extent, extent]²`; two-dimensional matrices only.
pub fn heatmap2d(
    pm: &PhaseMatrix,
    ls: LengthScale,
    extent: f64,
    resolution: usize,
) -> Result<Heatmap> {
    if pm.n() != 2 {
        return domain(format!("heatmaps need n = 2, matrix has n = {}", pm.n()));
    }
    if extent.is_nan() || extent <= 0.0 || resolution < 2 {
        return domain("heatmap needs a positive extent and at least two points per axis");
    }
    let step = 2.0 * extent / (resolution - 1) as f64;
    let coords: Vec<f64> = (0..resolution)
        .map(|i| {
            // mirror-exact lattice so that coords[i] = −coords[res−1−i]
            let k = i as f64 - 0.5 * (resolution - 1) as f64;
            k * step
        })
        .collect();
    let values = (0..resolution * resolution)
        .into_par_iter()
        .map(|idx| {
            let (iy, ix) = (idx / resolution, idx % resolution);
            similarity_at(pm, &[coords[ix], coords[iy]], ls, false)
        })
        .collect();
    Ok(Heatmap { coords, values })
}

/// `count` unit directions spread evenly over the half circle in each
/// coordinate plane (similarity is even, so the half circle suffices).
pub fn spread_directions(n: usize, count: usize) -> Vec<Vec<f64>> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for i in 0..count {
                let angle = std::f64::consts::PI * i as f64 / count as f64;
                let mut u = vec![0.0; n];
                u[a] = angle.cos();
                u[b] = angle.sin();
                out.push(u);
            }
        }
    }
    out
}

/// Largest minus smallest similarity at distance `radius` over evenly spread
/// directions.
pub fn anisotropy_gap(
    pm: &PhaseMatrix,
    ls: LengthScale,
    radius: f64,
    directions: usize,
) -> Result<f64> {
    if pm.n() < 2 {
        return domain("anisotropy needs n ≥ 2");
    }
    if directions < 2 {
        return domain("anisotropy needs at least two directions");
    }
    if radius == 0.0 {
        return Ok(0.0);
    }
    let values: Vec<f64> = spread_directions(pm.n(), directions)
        .par_iter()
        .map(|u| {
            let x: Vec<f64> = u.iter().map(|c| radius * c).collect();
            similarity_at(pm, &x, ls, false)
        })
        .collect();
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(max - min)
}

/// Builder parameters for a sweep; the swept field is overwritten per cell.
#[derive(Debug, Clone, PartialEq)]
pub enum BuilderConfig {
    HexSsp {
        n: usize,
        orientations: usize,
        scales: usize,
        dist: RadialDistribution,
    },
    RandSsp {
        n: usize,
        rows: usize,
        dist: RadialDistribution,
    },
    Product {
        n: usize,
        per_axis: usize,
        dist: RadialDistribution,
    },
}

impl BuilderConfig {
    pub fn n(&self) -> usize {
        match self {
            Self::HexSsp { n, .. } | Self::RandSsp { n, .. } | Self::Product { n, .. } => *n,
        }
    }

    pub fn dist(&self) -> &RadialDistribution {
        match self {
            Self::HexSsp { dist, .. } | Self::RandSsp { dist, .. } | Self::Product { dist, .. } => {
                dist
            }
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Self::HexSsp { .. } => "hexssp",
            Self::RandSsp { .. } => "randssp",
            Self::Product { .. } => "product",
        }
    }

    pub fn build(&self, seed: u64) -> Result<PhaseMatrix> {
        match self {
            Self::HexSsp {
                n,
                orientations,
                scales,
                dist,
            } => build_hexssp(*n, *orientations, *scales, dist, seed),
            Self::RandSsp { n, rows, dist } => build_randssp(*n, *rows, dist, seed),
            Self::Product { n, per_axis, dist } => build_product_ssp(*n, *per_axis, dist, seed),
        }
    }

    /// Copy with the swept parameter set to `value`.
    pub fn with(&self, variable: SweepVariable, value: usize) -> Result<Self> {
        let mut out = self.clone();
        match (&mut out, variable) {
            (Self::RandSsp { rows, .. }, SweepVariable::Rows) => *rows = value,
            (Self::HexSsp { orientations, .. }, SweepVariable::Orientations) => {
                *orientations = value
            }
            (Self::HexSsp { scales, .. }, SweepVariable::Scales) => *scales = value,
            (Self::Product { per_axis, .. }, SweepVariable::Rows) => *per_axis = value,
            _ => {
                return domain(format!(
                    "cannot sweep {} for the {} builder",
                    variable.name(),
                    self.kind_name()
                ))
            }
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepVariable {
    /// `M` for randssp, rows per axis for the product baseline.
    Rows,
    /// `N_R`
    Orientations,
    /// `N_S`
    Scales,
}

impl SweepVariable {
    pub fn name(self) -> &'static str {
        match self {
            Self::Rows => "M",
            Self::Orientations => "NR",
            Self::Scales => "NS",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRow {
    pub value: usize,
    pub max_abs_err_median: f64,
    pub rmse_median: f64,
    pub seeds: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub variable: SweepVariable,
    pub rows: Vec<ConvergenceRow>,
    /// Least-squares slope of `ln(max_abs_err_median)` against `ln(value)`;
    /// absent for a single sweep value.
    pub slope: Option<f64>,
}

/// Seed for cell `(sweep index, seed index)` of a sweep (SplitMix64 mix).
pub fn cell_seed(master: u64, sweep_index: usize, seed_index: usize) -> u64 {
    let mut z = master
        .wrapping_add((sweep_index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
        .wrapping_add((seed_index as u64 + 1).wrapping_mul(0xD1B5_4A32_D192_ED69));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn median(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        0.5 * (values[n / 2 - 1] + values[n / 2])
    }
}

/// Least-squares slope of `ln y` on `ln x`.
pub fn log_log_slope(x: &[f64], y: &[f64]) -> Option<f64> {
    if x.len() < 2 {
        return None;
    }
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = lx.iter().map(|a| (a - mx) * (a - mx)).sum();
    Some(sxy / sxx)
}

/// Sweep settings shared by every cell.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub variable: SweepVariable,
    pub values: Vec<usize>,
    pub seeds: usize,
    pub master_seed: u64,
    pub ls: LengthScale,
    pub radii: Vec<f64>,
}

/// Builds fresh phase matrices for every `(sweep value, seed)` cell and
/// reports median max-abs and RMS error against `reference` along the
/// first axis.
pub fn convergence_sweep(
    builder: &BuilderConfig,
    reference: &KernelSpec,
    sweep: &SweepSpec,
) -> Result<ConvergenceReport> {
    if sweep.values.is_empty() {
        return domain("sweep needs at least one value");
    }
    if sweep.seeds < 1 {
        return domain("sweep needs at least one seed");
    }
    let analytic = kernel_profile(reference, &sweep.radii)?;
    let mut direction = vec![0.0; builder.n()];
    direction[0] = 1.0;
    let mut rows = Vec::with_capacity(sweep.values.len());
    for (vi, &value) in sweep.values.iter().enumerate() {
        let config = builder.with(sweep.variable, value)?;
        let seeds: Vec<u64> = (0..sweep.seeds)
            .map(|si| cell_seed(sweep.master_seed, vi, si))
            .collect();
        let errors = seeds
            .par_iter()
            .map(|&seed| {
                let pm = config.build(seed)?;
                let emp = empirical_profile(&pm, sweep.ls, &direction, &sweep.radii)?;
                Ok((emp.max_abs_against(&analytic), emp.rmse_against(&analytic)))
            })
            .collect::<Result<Vec<_>>>()?;
        let (mut max_abs, mut rmse): (Vec<f64>, Vec<f64>) = errors.into_iter().unzip();
        rows.push(ConvergenceRow {
            value,
            max_abs_err_median: median(&mut max_abs),
            rmse_median: median(&mut rmse),
            seeds,
        });
    }
    let xs: Vec<f64> = rows.iter().map(|r| r.value as f64).collect();
    let ys: Vec<f64> = rows.iter().map(|r| r.max_abs_err_median).collect();
    Ok(ConvergenceReport {
        variable: sweep.variable,
        slope: log_log_slope(&xs, &ys),
        rows,
    })
}

#[cfg(test)]
mod tests;
