use super::*;
use crate::phase::build_hexssp_with_scales;

fn uniform1() -> RadialDistribution {
    RadialDistribution::uniform(1.0).unwrap()
}

#[test]
fn grid_defaults() {
    let g = radial_grid(DEFAULT_RADIAL_MAX, DEFAULT_RADIAL_POINTS);
    assert_eq!(g.len(), 201);
    assert_eq!(g[0], 0.0);
    assert_eq!(g[200], 10.0);
    assert!((g[1] - 0.05).abs() < 1e-15);
}

#[test]
fn kernel_profile_starts_at_one() {
    let spec = KernelSpec::hypergeometric(3, LengthScale::default()).unwrap();
    let p = kernel_profile(&spec, &radial_grid(10.0, 21)).unwrap();
    assert_eq!(p.values[0], 1.0);
    assert_eq!(p.direction, vec![1.0, 0.0, 0.0]);
}

#[test]
fn kernel_profile_rejects_bad_grids() {
    let spec = KernelSpec::gaussian(LengthScale::default());
    assert!(kernel_profile(&spec, &[]).is_err());
    assert!(kernel_profile(&spec, &[0.0, 0.0]).is_err());
    assert!(kernel_profile(&spec, &[-1.0, 0.0]).is_err());
}

#[test]
fn jinc_profile_brackets_first_zero() {
    let spec = KernelSpec::jinc(2, LengthScale::default()).unwrap();
    let p = kernel_profile(&spec, &[3.8, 3.8317, 3.9]).unwrap();
    assert!(p.values[0] > 0.0 && p.values[2] < 0.0);
    assert!(p.values[1].abs() < 1e-4);
}

#[test]
fn quadrature_profile_matches_closed_form() {
    let ls = LengthScale::default();
    let radii = radial_grid(10.0, 41);
    for n in [2, 5] {
        let q = KernelSpec::quadrature(uniform1(), n, ls).unwrap();
        let c = KernelSpec::hypergeometric(n, ls).unwrap();
        let a = kernel_profile(&q, &radii).unwrap();
        let b = kernel_profile(&c, &radii).unwrap();
        assert!(a.max_abs_against(&b) < 1e-6);
    }
}

#[test]
fn empirical_profile_contract() {
    let pm = build_randssp(2, 200, &uniform1(), 3).unwrap();
    let ls = LengthScale::default();
    let p = empirical_profile(&pm, ls, &[0.6, 0.8], &radial_grid(5.0, 11)).unwrap();
    assert_eq!(p.values[0], 1.0);
    assert!(empirical_profile(&pm, ls, &[1.0, 0.0, 0.0], &[0.0]).is_err());
    assert!(empirical_profile(&pm, ls, &[1.0, 1.0], &[0.0]).is_err());
}

#[test]
fn randssp_profiles_agree_across_directions() {
    let pm = build_randssp(2, 4000, &uniform1(), 11).unwrap();
    let ls = LengthScale::default();
    let radii = radial_grid(10.0, 101);
    let a = empirical_profile(&pm, ls, &[1.0, 0.0], &radii).unwrap();
    let b = empirical_profile(&pm, ls, &[0.0, 1.0], &radii).unwrap();
    // each profile deviates by about M^{-1/2} per point
    assert!(a.max_abs_against(&b) < 2.0 * 3.0 / (4000f64).sqrt());
}

#[test]
fn heatmap_contract() {
    let pm = build_hexssp(2, 4, 3, &uniform1(), 5).unwrap();
    let h = heatmap2d(&pm, LengthScale::default(), 4.0, 41).unwrap();
    assert_eq!(h.at(20, 20), 1.0);
    for iy in 0..41 {
        for ix in 0..41 {
            assert!((h.at(ix, iy) - h.at(40 - ix, 40 - iy)).abs() < 1e-12);
        }
    }
    let p3 = build_randssp(3, 10, &uniform1(), 1).unwrap();
    assert!(heatmap2d(&p3, LengthScale::default(), 4.0, 11).is_err());
    assert!(heatmap2d(&pm, LengthScale::default(), 0.0, 11).is_err());
}

#[test]
fn single_simplex_heatmap_is_hexagonal() {
    let pm = build_hexssp_with_scales(2, 1, &[1.0], 9).unwrap();
    let ls = LengthScale::default();
    let h = heatmap2d(&pm, ls, 12.0, 241).unwrap();
    // local maxima near 1 away from the origin
    let c = 120;
    let mut peaks = Vec::new();
    for iy in 1..240 {
        for ix in 1..240 {
            let v = h.at(ix, iy);
            if (ix, iy) == (c, c) || v < 0.9 {
                continue;
            }
            let is_max = (-1i32..=1).all(|dy| {
                (-1i32..=1)
                    .all(|dx| h.at((ix as i32 + dx) as usize, (iy as i32 + dy) as usize) <= v)
            });
            if is_max {
                let (x, y) = (h.coords[ix], h.coords[iy]);
                peaks.push(((x * x + y * y).sqrt(), y.atan2(x)));
            }
        }
    }
    peaks.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut angles: Vec<f64> = peaks[..6].iter().map(|p| p.1.to_degrees()).collect();
    angles.sort_by(f64::total_cmp);
    for w in angles.windows(2) {
        assert!((w[1] - w[0] - 60.0).abs() < 2.0, "{angles:?}");
    }
}

#[test]
fn anisotropy_gap_contract() {
    let ls = LengthScale::default();
    let pm = build_hexssp(2, 5, 5, &uniform1(), 1).unwrap();
    assert_eq!(anisotropy_gap(&pm, ls, 0.0, 64).unwrap(), 0.0);
    assert!(anisotropy_gap(&pm, ls, 1.0, 1).is_err());
    let p1 = build_randssp(1, 5, &uniform1(), 1).unwrap();
    assert!(anisotropy_gap(&p1, ls, 1.0, 8).is_err());
    assert!(anisotropy_gap(&pm, ls, 2.0, 64).unwrap() > 0.0);
}

#[test]
fn spread_directions_are_unit_and_cover_planes() {
    let d = spread_directions(3, 8);
    assert_eq!(d.len(), 24);
    for u in &d {
        assert!((u.iter().map(|c| c * c).sum::<f64>() - 1.0).abs() < 1e-15);
    }
}

#[test]
fn cell_seeds_are_distinct() {
    let mut seeds: Vec<u64> = (0..10)
        .flat_map(|v| (0..10).map(move |s| cell_seed(42, v, s)))
        .collect();
    seeds.sort_unstable();
    seeds.dedup();
    assert_eq!(seeds.len(), 100);
    assert_eq!(cell_seed(42, 3, 4), cell_seed(42, 3, 4));
}

#[test]
fn slope_and_median() {
    assert_eq!(log_log_slope(&[1.0], &[1.0]), None);
    let s = log_log_slope(&[1.0, 10.0, 100.0], &[1.0, 0.1, 0.01]).unwrap();
    assert!((s + 1.0).abs() < 1e-14);
    assert_eq!(median(&mut [3.0, 1.0, 2.0]), 2.0);
    assert_eq!(median(&mut [4.0, 1.0, 2.0, 3.0]), 2.5);
}

fn small_sweep(values: Vec<usize>, variable: SweepVariable) -> SweepSpec {
    SweepSpec {
        variable,
        values,
        seeds: 3,
        master_seed: 17,
        ls: LengthScale::default(),
        radii: radial_grid(6.0, 31),
    }
}

#[test]
fn single_value_sweep_has_no_slope() {
    let builder = BuilderConfig::RandSsp {
        n: 2,
        rows: 0,
        dist: RadialDistribution::chi(2, 1.0).unwrap(),
    };
    let reference = KernelSpec::gaussian(LengthScale::default());
    let r = convergence_sweep(
        &builder,
        &reference,
        &small_sweep(vec![100], SweepVariable::Rows),
    )
    .unwrap();
    assert_eq!(r.rows.len(), 1);
    assert!(r.slope.is_none());
    assert_eq!(r.rows[0].seeds.len(), 3);
    assert!(r.rows[0].max_abs_err_median >= r.rows[0].rmse_median);
}

#[test]
fn sweep_is_reproducible() {
    let builder = BuilderConfig::HexSsp {
        n: 2,
        orientations: 0,
        scales: 5,
        dist: uniform1(),
    };
    let reference = KernelSpec::hypergeometric(2, LengthScale::default()).unwrap();
    let spec = small_sweep(vec![1, 8], SweepVariable::Orientations);
    let a = convergence_sweep(&builder, &reference, &spec).unwrap();
    let b = convergence_sweep(&builder, &reference, &spec).unwrap();
    assert_eq!(a, b);
    assert!(a.slope.is_some());
}

#[test]
fn sweep_rejects_mismatched_variable() {
    let builder = BuilderConfig::RandSsp {
        n: 2,
        rows: 10,
        dist: uniform1(),
    };
    let reference = KernelSpec::gaussian(LengthScale::default());
    let spec = small_sweep(vec![4], SweepVariable::Scales);
    assert!(convergence_sweep(&builder, &reference, &spec).is_err());
    let empty = small_sweep(vec![], SweepVariable::Rows);
    assert!(convergence_sweep(&builder, &reference, &empty).is_err());
}
