//! Seedable random sources: centred simplex vertices, Haar rotations on
//! SO(n), isotropic directions and radial magnitude laws.
//!
//! Samplers take an explicit `&mut impl Rng`. Builders that need several
//! independent streams derive them with [`stream_rng`], so a given
//! `(seed, stream)` pair always yields the same draws regardless of the
//! order in which streams are consumed.

mod radial;

pub use radial::{RadialDistribution, Table};

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;

use crate::{error::domain, Result};

/// Deterministic generator for stream `stream` of master seed `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Vertices of the regular simplex centred at the origin: `n + 1` unit
/// vectors in ℝⁿ with pairwise inner product `−1/n`, first vertex on the
/// first axis.
///
/// Built recursively: `v₀ = e₁` and the remaining vertices are
/// `(−1/n, √(1 − 1/n²)·w)` for the vertices `w` of the `(n−1)`-simplex.
pub fn simplex_vertices(n: usize) -> Result<Vec<Vec<f64>>> {
    if n < 1 {
        return domain("simplex_vertices needs n ≥ 1");
    }
    let mut verts = vec![vec![1.0], vec![-1.0]];
    for dim in 2..=n {
        let d = dim as f64;
        let shrink = (1.0 - 1.0 / (d * d)).sqrt();
        let mut next = Vec::with_capacity(dim + 1);
        let mut first = vec![0.0; dim];
        first[0] = 1.0;
        next.push(first);
        for w in &verts {
            let mut v = Vec::with_capacity(dim);
            v.push(-1.0 / d);
            v.extend(w.iter().map(|c| shrink * c));
            next.push(v);
        }
        verts = next;
    }
    Ok(verts)
}

/// An element of SO(n).
#[derive(Debug, Clone, PartialEq)]
pub struct RotationMatrix(DMatrix<f64>);

impl RotationMatrix {
    pub fn identity(n: usize) -> Self {
        Self(DMatrix::identity(n, n))
    }

    /// Planar rotation by `angle` radians.
    pub fn planar(angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Self(DMatrix::from_row_slice(2, 2, &[c, -s, s, c]))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn entries(&self) -> &DMatrix<f64> {
        &self.0
    }

    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        let n = self.dim();
        (0..n)
            .map(|i| (0..n).map(|j| self.0[(i, j)] * v[j]).sum())
            .collect()
    }

    pub fn compose(&self, other: &RotationMatrix) -> RotationMatrix {
        RotationMatrix(&self.0 * &other.0)
    }

    /// Largest entry of `|RᵀR − I|`.
    pub fn orthogonality_defect(&self) -> f64 {
        let n = self.dim();
        let g = self.0.transpose() * &self.0 - DMatrix::<f64>::identity(n, n);
        g.amax()
    }

    pub fn determinant(&self) -> f64 {
        self.0.clone().determinant()
    }
}

/// Haar-distributed rotation in SO(n).
///
/// QR-factorises an `n×n` standard normal matrix, fixes the column signs of
/// `Q` by the signs of `R`'s diagonal (making `Q` Haar on O(n)), then negates
/// the first column if the determinant is −1.
pub fn haar_rotation<R: Rng + ?Sized>(n: usize, rng: &mut R) -> RotationMatrix {
    if n <= 1 {
        return RotationMatrix::identity(n.max(1));
    }
    let g = DMatrix::<f64>::from_fn(n, n, |_, _| rng.sample(StandardNormal));
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..n {
        if r[(j, j)] < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    if q.clone().determinant() < 0.0 {
        q.column_mut(0).neg_mut();
    }
    RotationMatrix(q)
}

/// Uniform direction on the unit sphere in ℝⁿ.
pub fn sample_isotropic_direction<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 0.0 {
            return v.into_iter().map(|x| x / norm).collect();
        }
    }
}

/// Draws one magnitude from `dist`.
pub fn sample_radius<R: Rng + ?Sized>(dist: &RadialDistribution, rng: &mut R) -> f64 {
    dist.sample(rng)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dot(a: &[f64], b: &[f64]) -> f64 {
        a.iter().zip(b).map(|(x, y)| x * y).sum()
    }

    #[test]
    fn small_simplices() {
        assert_eq!(simplex_vertices(1).unwrap(), vec![vec![1.0], vec![-1.0]]);
        let tri = simplex_vertices(2).unwrap();
        assert_eq!(tri.len(), 3);
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { 1.0 } else { -0.5 };
                assert!((dot(&tri[i], &tri[j]) - want).abs() < 1e-15);
            }
        }
        assert!(simplex_vertices(0).is_err());
    }

    #[test]
    fn simplex_gram_up_to_64() {
        for n in 1..=64 {
            let v = simplex_vertices(n).unwrap();
            assert_eq!(v.len(), n + 1);
            assert_eq!(v[0][0], 1.0);
            let mut sum = vec![0.0; n];
            for (i, a) in v.iter().enumerate() {
                assert_eq!(a.len(), n);
                for (s, c) in sum.iter_mut().zip(a) {
                    *s += c;
                }
                for (j, b) in v.iter().enumerate() {
                    let want = if i == j { 1.0 } else { -1.0 / n as f64 };
                    assert!((dot(a, b) - want).abs() < 1e-13, "n={n} ({i},{j})");
                }
            }
            assert!(dot(&sum, &sum).sqrt() < 1e-13, "n={n}");
        }
    }

    #[test]
    fn haar_rotations_are_special_orthogonal() {
        let mut rng = stream_rng(3, 0);
        assert_eq!(haar_rotation(1, &mut rng), RotationMatrix::identity(1));
        for n in [2, 3, 5, 16, 64] {
            for _ in 0..10 {
                let r = haar_rotation(n, &mut rng);
                assert!(r.orthogonality_defect() < 1e-12);
                assert!((r.determinant() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn directions_are_unit_and_balanced() {
        let mut rng = stream_rng(5, 1);
        let mut plus = 0;
        for _ in 0..10_000 {
            let v = sample_isotropic_direction(1, &mut rng);
            assert!(v[0] == 1.0 || v[0] == -1.0);
            plus += usize::from(v[0] > 0.0);
        }
        assert!((plus as f64 / 10_000.0 - 0.5).abs() < 0.01);
        let mut mean = [0.0; 3];
        for _ in 0..100_000 {
            let v = sample_isotropic_direction(3, &mut rng);
            assert!((dot(&v, &v).sqrt() - 1.0).abs() < 1e-14);
            for (m, c) in mean.iter_mut().zip(&v) {
                *m += c / 100_000.0;
            }
        }
        assert!(mean.iter().all(|m| m.abs() < 0.01), "{mean:?}");
    }

    #[test]
    fn streams_are_deterministic_and_distinct() {
        let a: Vec<u64> = (0..4).map(|_| stream_rng(9, 2).random()).collect();
        let b: Vec<u64> = (0..4).map(|_| stream_rng(9, 2).random()).collect();
        assert_eq!(a, b);
        let x: u64 = stream_rng(9, 2).random();
        let y: u64 = stream_rng(9, 3).random();
        assert_ne!(x, y);
    }
}
