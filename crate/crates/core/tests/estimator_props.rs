//! Monte-Carlo behaviour of the similarity estimator against analytic kernels.

use std::f64::consts::PI;

use ssp_kernels::analysis::{
    convergence_sweep, radial_grid, spread_directions, BuilderConfig, SweepSpec, SweepVariable,
};
use ssp_kernels::encoder::{similarity, LengthScale};
use ssp_kernels::kernels::{gaussian_kernel, KernelSpec};
use ssp_kernels::phase::{build_hexssp, build_randssp};
use ssp_kernels::sampling::RadialDistribution;

#[test]
fn estimator_is_unbiased() {
    let ls = LengthScale::default();
    let chi = RadialDistribution::chi(2, 1.0).unwrap();
    let builds: Vec<_> = (0..200)
        .map(|s| build_randssp(2, 500, &chi, 1000 + s).unwrap())
        .collect();
    for r in [0.5, 1.0, 2.0] {
        let x = [r * 0.6, r * 0.8];
        let est: Vec<f64> = builds
            .iter()
            .map(|pm| similarity(pm, &x, &[0.0, 0.0], ls, false).unwrap())
            .collect();
        let mean = est.iter().sum::<f64>() / 200.0;
        let var = est.iter().map(|e| (e - mean).powi(2)).sum::<f64>() / 199.0;
        let bound = 3.0 * (var / 200.0).sqrt();
        assert!(
            (mean - gaussian_kernel(r, ls)).abs() < bound,
            "r={r}: mean {mean}, bound {bound}"
        );
    }
}

#[test]
fn randssp_error_follows_root_m_law() {
    let builder = BuilderConfig::RandSsp {
        n: 2,
        rows: 0,
        dist: RadialDistribution::chi(2, 1.0).unwrap(),
    };
    let sweep = SweepSpec {
        variable: SweepVariable::Rows,
        values: vec![100, 1000, 10_000],
        seeds: 20,
        master_seed: 77,
        ls: LengthScale::default(),
        radii: radial_grid(6.0, 61),
    };
    let report = convergence_sweep(
        &builder,
        &KernelSpec::gaussian(LengthScale::default()),
        &sweep,
    )
    .unwrap();
    let slope = report.slope.unwrap();
    assert!((slope + 0.5).abs() <= 0.15, "slope {slope}");
    for row in &report.rows {
        assert_eq!(row.seeds.len(), 20);
        assert!(row.rmse_median >= 0.0 && row.rmse_median <= row.max_abs_err_median);
    }
}

#[test]
fn more_orientations_reduce_error() {
    let builder = BuilderConfig::HexSsp {
        n: 2,
        orientations: 0,
        scales: 20,
        dist: RadialDistribution::uniform(1.0).unwrap(),
    };
    let sweep = SweepSpec {
        variable: SweepVariable::Orientations,
        values: vec![1, 4, 16, 64],
        seeds: 10,
        master_seed: 5,
        ls: LengthScale::default(),
        radii: radial_grid(10.0, 201),
    };
    let ls = LengthScale::default();
    let report = convergence_sweep(
        &builder,
        &KernelSpec::hypergeometric(2, ls).unwrap(),
        &sweep,
    )
    .unwrap();
    let errs: Vec<f64> = report.rows.iter().map(|r| r.max_abs_err_median).collect();
    assert!(errs.windows(2).all(|w| w[1] < w[0]), "{errs:?}");
}

#[test]
fn hexssp_mixture_is_nearly_radial() {
    let ls = LengthScale::default();
    let pm = build_hexssp(2, 50, 20, &RadialDistribution::uniform(1.0).unwrap(), 3).unwrap();
    let values: Vec<f64> = (0..360)
        .map(|k| {
            let t = 2.0 * PI * k as f64 / 360.0;
            similarity(&pm, &[2.0 * t.cos(), 2.0 * t.sin()], &[0.0, 0.0], ls, false).unwrap()
        })
        .collect();
    let mean = values.iter().sum::<f64>() / 360.0;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / 360.0;
    assert!(var < 1e-3, "angular variance {var}");
}

#[test]
fn randssp_is_isotropic_in_three_dimensions() {
    let ls = LengthScale::default();
    let pm = build_randssp(
        3,
        8000,
        &RadialDistribution::scaled_beta(3, 1.0).unwrap(),
        9,
    )
    .unwrap();
    let band = 3.0 / (8000f64).sqrt();
    for u in spread_directions(3, 8) {
        let x: Vec<f64> = u.iter().map(|c| 2.5 * c).collect();
        let k = similarity(&pm, &x, &[0.0; 3], ls, false).unwrap();
        let exact = KernelSpec::jinc(3, ls).unwrap().eval(2.5).unwrap();
        assert!((k - exact).abs() < band, "{u:?}: {k} vs {exact}");
    }
}
