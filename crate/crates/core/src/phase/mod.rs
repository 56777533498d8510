//! Phase matrices: the non-redundant rows `ω_k` of a conjugate-symmetric
//! Fourier phase matrix.
//!
//! The full matrix has `2M + 1` rows: the DC row, the `M` stored rows and
//! their negations. Only the stored half is kept here; the mirror and DC row
//! are realised by the encoder.

mod io;

pub use io::{from_text, to_text};

use rand::Rng;
use rand_distr::Open01;

use crate::sampling::{haar_rotation, simplex_vertices, stream_rng, RadialDistribution};
use crate::{error::domain, Error, Result};

/// Which builder produced a matrix, with the parameters needed to rebuild it.
#[derive(Debug, Clone, PartialEq)]
pub enum Construction {
    /// Scaled, Haar-rotated simplex blocks. `scales` are the `N_S` magnitudes
    /// shared by every orientation.
    HexSsp {
        orientations: usize,
        scales: Vec<f64>,
        dist: Option<RadialDistribution>,
    },
    /// Independent isotropic rows.
    RandSsp { dist: RadialDistribution },
    /// Axis-aligned rows, `per_axis` per coordinate axis.
    Product {
        per_axis: usize,
        dist: RadialDistribution,
    },
}

impl Construction {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Self::HexSsp { .. } => "hexssp",
            Self::RandSsp { .. } => "randssp",
            Self::Product { .. } => "product",
        }
    }

    /// The magnitude law rows were drawn from, if any.
    pub fn dist(&self) -> Option<&RadialDistribution> {
        match self {
            Self::HexSsp { dist, .. } => dist.as_ref(),
            Self::RandSsp { dist } | Self::Product { dist, .. } => Some(dist),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhaseMatrix {
    n: usize,
    rows: Vec<f64>,
    includes_dc: bool,
    seed: u64,
    construction: Construction,
}

impl PhaseMatrix {
    /// Assembles a matrix from row-major data, validating that every row is
    /// finite and nonzero.
    pub fn new(
        n: usize,
        rows: Vec<f64>,
        includes_dc: bool,
        seed: u64,
        construction: Construction,
    ) -> Result<Self> {
        if n < 1 {
            return domain("phase matrix needs n ≥ 1");
        }
        if rows.is_empty() || !rows.len().is_multiple_of(n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: rows.len() % n.max(1),
            });
        }
        for (k, row) in rows.chunks_exact(n).enumerate() {
            if row.iter().any(|v| !v.is_finite()) {
                return domain(format!("phase row {k} is not finite"));
            }
            if row.iter().all(|&v| v == 0.0) {
                return domain(format!("phase row {k} is the zero vector"));
            }
        }
        Ok(Self {
            n,
            rows,
            includes_dc,
            seed,
            construction,
        })
    }

    /// Feature dimension.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of stored rows `M`.
    pub fn len(&self) -> usize {
        self.rows.len() / self.n
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Length of the real embedding, `2M + 1`.
    pub fn embedding_dim(&self) -> usize {
        2 * self.len() + 1
    }

    pub fn row(&self, k: usize) -> &[f64] {
        &self.rows[k * self.n..(k + 1) * self.n]
    }

    pub fn rows(&self) -> impl ExactSizeIterator<Item = &[f64]> {
        self.rows.chunks_exact(self.n)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.rows
    }

    pub fn includes_dc(&self) -> bool {
        self.includes_dc
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn construction(&self) -> &Construction {
        &self.construction
    }
}

/// HexSSP phase matrix.
///
/// Draws `N_S` scales from `dist` (stream 0 of `seed`) and one Haar rotation
/// per orientation `i` (stream `i + 1`). Rows are `s_j · R_i v_k` in `(i, j, k)`
/// lexicographic order, so `M = N_R · N_S · (n + 1)`.
///
/// Scales are stratified: `s_j` is the `dist` quantile at `(j + U_j)/N_S` with
/// `U_j` uniform on `(0, 1)`. Pooled, the scales are still an exact sample of
/// `dist`, but the radial profile no longer carries the `N_S^{-1/2}` noise of
/// independent draws shared by every orientation.
pub fn build_hexssp(
    n: usize,
    orientations: usize,
    scale_count: usize,
    dist: &RadialDistribution,
    seed: u64,
) -> Result<PhaseMatrix> {
    if scale_count < 1 {
        return domain("HexSSP needs N_S ≥ 1");
    }
    let mut rng = stream_rng(seed, 0);
    let scales = (0..scale_count)
        .map(|j| {
            let u: f64 = rng.sample(Open01);
            // the division can round up to 1 in the top stratum
            let p = ((j as f64 + u) / scale_count as f64).min(1.0 - f64::EPSILON / 2.0);
            dist.quantile(p)
        })
        .collect::<Result<Vec<_>>>()?;
    hexssp_rows(n, orientations, scales, Some(dist.clone()), seed)
}

/// HexSSP phase matrix with an explicit scale list instead of sampled scales.
pub fn build_hexssp_with_scales(
    n: usize,
    orientations: usize,
    scales: &[f64],
    seed: u64,
) -> Result<PhaseMatrix> {
    if scales.is_empty() {
        return domain("HexSSP needs at least one scale");
    }
    if scales.iter().any(|s| !(*s > 0.0 && s.is_finite())) {
        return domain("HexSSP scales must be finite and positive");
    }
    hexssp_rows(n, orientations, scales.to_vec(), None, seed)
}

fn hexssp_rows(
    n: usize,
    orientations: usize,
    scales: Vec<f64>,
    dist: Option<RadialDistribution>,
    seed: u64,
) -> Result<PhaseMatrix> {
    if orientations < 1 {
        return domain("HexSSP needs N_R ≥ 1");
    }
    let vertices = simplex_vertices(n)?;
    let mut rows = Vec::with_capacity(orientations * scales.len() * (n + 1) * n);
    for i in 0..orientations {
        let rot = haar_rotation(n, &mut stream_rng(seed, i as u64 + 1));
        let rotated: Vec<Vec<f64>> = vertices.iter().map(|v| rot.apply(v)).collect();
        for &s in &scales {
            for v in &rotated {
                rows.extend(v.iter().map(|c| s * c));
            }
        }
    }
    PhaseMatrix::new(
        n,
        rows,
        true,
        seed,
        Construction::HexSsp {
            orientations,
            scales,
            dist,
        },
    )
}

/// Random isotropic phase matrix: each row is an independent magnitude from
/// `dist` times an independent uniform direction.
pub fn build_randssp(
    n: usize,
    rows: usize,
    dist: &RadialDistribution,
    seed: u64,
) -> Result<PhaseMatrix> {
    if rows < 1 {
        return domain("randssp needs M ≥ 1");
    }
    if n < 1 {
        return domain("randssp needs n ≥ 1");
    }
    let mut rng = stream_rng(seed, 0);
    let mut data = Vec::with_capacity(rows * n);
    for _ in 0..rows {
        let r = dist.sample(&mut rng);
        let dir = crate::sampling::sample_isotropic_direction(n, &mut rng);
        data.extend(dir.iter().map(|c| r * c));
    }
    PhaseMatrix::new(
        n,
        data,
        true,
        seed,
        Construction::RandSsp { dist: dist.clone() },
    )
}

/// Product-of-1D baseline: for each axis `a`, `per_axis` rows `r·e_a` with
/// `r` drawn from the one-dimensional law `dist` (axis `a` uses stream `a`).
pub fn build_product_ssp(
    n: usize,
    per_axis: usize,
    dist: &RadialDistribution,
    seed: u64,
) -> Result<PhaseMatrix> {
    if n < 2 {
        return domain("the product baseline needs n ≥ 2");
    }
    if per_axis < 1 {
        return domain("the product baseline needs at least one row per axis");
    }
    if dist.dimension().is_some_and(|d| d != 1) {
        return domain("the product baseline needs a one-dimensional radial law");
    }
    let mut data = Vec::with_capacity(n * per_axis * n);
    for axis in 0..n {
        let mut rng = stream_rng(seed, axis as u64);
        for _ in 0..per_axis {
            let mut row = vec![0.0; n];
            row[axis] = dist.sample(&mut rng);
            data.extend(row);
        }
    }
    PhaseMatrix::new(
        n,
        data,
        true,
        seed,
        Construction::Product {
            per_axis,
            dist: dist.clone(),
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dot(a: &[f64], b: &[f64]) -> f64 {
        a.iter().zip(b).map(|(x, y)| x * y).sum()
    }

    #[test]
    fn single_block_reduces_to_a_rotated_simplex() {
        let pm = build_hexssp_with_scales(2, 1, &[1.0], 0).unwrap();
        assert_eq!(pm.len(), 3);
        for i in 0..3 {
            assert!((dot(pm.row(i), pm.row(i)) - 1.0).abs() < 1e-15);
            for j in 0..i {
                assert!((dot(pm.row(i), pm.row(j)) + 0.5).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn hexssp_dimension_formula() {
        let dist = RadialDistribution::uniform(1.0).unwrap();
        let pm = build_hexssp(2, 4, 5, &dist, 1).unwrap();
        assert_eq!(pm.len(), 60);
        assert_eq!(pm.embedding_dim(), 121);
        assert!(pm.includes_dc());
    }

    #[test]
    fn hexssp_blocks_keep_the_simplex_gram_matrix() {
        let dist = RadialDistribution::uniform(1.0).unwrap();
        for n in [2usize, 3, 6] {
            let pm = build_hexssp(n, 5, 4, &dist, 42).unwrap();
            let Construction::HexSsp { scales, .. } = pm.construction() else {
                unreachable!()
            };
            let block = n + 1;
            for i in 0..5 {
                for (j, s) in scales.iter().enumerate() {
                    let base = (i * scales.len() + j) * block;
                    for a in 0..block {
                        for b in 0..block {
                            let want = if a == b { s * s } else { -s * s / n as f64 };
                            let got = dot(pm.row(base + a), pm.row(base + b));
                            assert!((got - want).abs() < 1e-10);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn hexssp_scales_are_the_sampled_radii() {
        let dist = RadialDistribution::uniform(1.0).unwrap();
        let pm = build_hexssp(3, 10, 10, &dist, 3).unwrap();
        let Construction::HexSsp { scales, .. } = pm.construction() else {
            unreachable!()
        };
        for (k, row) in pm.rows().enumerate() {
            let j = (k / 4) % 10;
            assert!((dot(row, row).sqrt() - scales[j]).abs() < 1e-14);
        }
        // one draw per stratum, replayable from stream 0
        let mut rng = stream_rng(3, 0);
        for (j, &s) in scales.iter().enumerate() {
            let u: f64 = rng.sample(Open01);
            assert_eq!(s, (j as f64 + u) / 10.0);
            assert!(s > j as f64 / 10.0 && s < (j + 1) as f64 / 10.0);
        }
        let d = crate::analysis::stats::ks_one_sample(&mut scales.clone(), |x| x);
        assert!((0.05..0.1).contains(&d), "{d}");
    }

    #[test]
    fn builders_are_deterministic() {
        let dist = RadialDistribution::chi(2, 1.0).unwrap();
        assert_eq!(
            build_randssp(2, 50, &dist, 9).unwrap(),
            build_randssp(2, 50, &dist, 9).unwrap()
        );
        assert_ne!(
            build_randssp(2, 50, &dist, 9).unwrap(),
            build_randssp(2, 50, &dist, 10).unwrap()
        );
        let u = RadialDistribution::uniform(1.0).unwrap();
        assert_eq!(
            build_hexssp(3, 4, 2, &u, 5).unwrap(),
            build_hexssp(3, 4, 2, &u, 5).unwrap()
        );
    }

    #[test]
    fn product_rows_are_axis_aligned() {
        let u = RadialDistribution::uniform(1.0).unwrap();
        let pm = build_product_ssp(2, 1000, &u, 4).unwrap();
        assert_eq!(pm.len(), 2000);
        for row in pm.rows() {
            assert_eq!(row.iter().filter(|&&c| c != 0.0).count(), 1);
        }
        let pm3 = build_product_ssp(3, 7, &u, 4).unwrap();
        assert_eq!(pm3.len(), 21);
        assert!(build_product_ssp(1, 10, &u, 0).is_err());
        let chi2 = RadialDistribution::chi(2, 1.0).unwrap();
        assert!(build_product_ssp(2, 10, &chi2, 0).is_err());
    }

    #[test]
    fn precondition_errors() {
        let u = RadialDistribution::uniform(1.0).unwrap();
        assert!(build_randssp(2, 0, &u, 0).is_err());
        assert!(build_hexssp(0, 1, 1, &u, 0).is_err());
        assert!(build_hexssp(2, 0, 1, &u, 0).is_err());
        assert!(build_hexssp(2, 1, 0, &u, 0).is_err());
        assert!(build_hexssp_with_scales(2, 1, &[0.0], 0).is_err());
        assert!(PhaseMatrix::new(
            2,
            vec![0.0, 0.0],
            true,
            0,
            Construction::RandSsp { dist: u.clone() }
        )
        .is_err());
        assert!(PhaseMatrix::new(
            2,
            vec![1.0, f64::NAN],
            true,
            0,
            Construction::RandSsp { dist: u.clone() }
        )
        .is_err());
        assert!(PhaseMatrix::new(
            2,
            vec![1.0, 1.0, 1.0],
            true,
            0,
            Construction::RandSsp { dist: u }
        )
        .is_err());
    }
}
