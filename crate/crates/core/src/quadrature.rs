//! Globally adaptive Gauss–Kronrod (10/21-point) quadrature over a
//! partition of breakpoints.

use crate::{error::domain, Error, Result};

// Kronrod abscissae, descending; odd indices are the 10-point Gauss nodes.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

fn gauss_kronrod<F>(f: &F, a: f64, b: f64) -> Result<Panel>
where
    F: Fn(f64) -> Result<f64>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center)?;
    let mut kronrod = fc * WGK[10];
    let mut gauss = 0.0;
    for (j, &x) in XGK[..10].iter().enumerate() {
        let dx = half * x;
        let pair = f(center - dx)? + f(center + dx)?;
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    Ok(Panel {
        a,
        b,
        value: kronrod * half,
        error: ((kronrod - gauss) * half).abs(),
    })
}

/// Integrates `f` over `[breakpoints[0], breakpoints.last()]`.
///
/// Each breakpoint interval starts as its own panel; the panel with the
/// largest error estimate is bisected until the summed estimate drops below
/// `abs_tol` or `max_panels` is reached, in which case
/// [`Error::Accuracy`] reports the achieved estimate.
pub fn integrate<F>(f: F, breakpoints: &[f64], abs_tol: f64, max_panels: usize) -> Result<Estimate>
where
    F: Fn(f64) -> Result<f64>,
{
    if breakpoints.len() < 2 {
        return domain("integration needs at least two breakpoints");
    }
    if breakpoints.windows(2).any(|w| !(w[1] > w[0])) {
        return domain("breakpoints must be strictly increasing");
    }
    let mut panels = breakpoints
        .windows(2)
        .map(|w| gauss_kronrod(&f, w[0], w[1]))
        .collect::<Result<Vec<_>>>()?;
    loop {
        let (value, error) = panels
            .iter()
            .fold((0.0, 0.0), |(v, e), p| (v + p.value, e + p.error));
        if error <= abs_tol {
            return Ok(Estimate { value, error });
        }
        if panels.len() >= max_panels {
            return Err(Error::Accuracy {
                routine: "integrate",
                value,
                error_estimate: error,
            });
        }
        let worst = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .map(|(i, _)| i)
            .expect("non-empty");
        let Panel { a, b, .. } = panels.swap_remove(worst);
        let mid = 0.5 * (a + b);
        if !(mid > a && mid < b) {
            // Cannot subdivide further in floating point.
            return Err(Error::Accuracy {
                routine: "integrate",
                value,
                error_estimate: error,
            });
        }
        panels.push(gauss_kronrod(&f, a, mid)?);
        panels.push(gauss_kronrod(&f, mid, b)?);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kronrod_rule_is_exact_for_degree_31() {
        // ∫_{-1}^{1} x^30 dx = 2/31, and odd powers vanish.
        let p = gauss_kronrod(&|x: f64| Ok(x.powi(30) + x.powi(31)), -1.0, 1.0).unwrap();
        assert!((p.value - 2.0 / 31.0).abs() < 1e-15);
        // Gauss 10-point is exact to degree 19.
        let p = gauss_kronrod(&|x: f64| Ok(x.powi(18)), 0.0, 1.0).unwrap();
        assert!(p.error < 1e-16);
        let weights: f64 = 2.0 * WGK[..10].iter().sum::<f64>() + WGK[10];
        assert!((weights - 2.0).abs() < 1e-15);
        let gw: f64 = 2.0 * WG.iter().sum::<f64>();
        assert!((gw - 2.0).abs() < 1e-15);
    }

    #[test]
    fn oscillatory_integral() {
        // ∫_0^{40} cos(5x) dx = sin(200)/5
        let bps: Vec<f64> = (0..=40).map(f64::from).collect();
        let est = integrate(|x| Ok((5.0 * x).cos()), &bps, 1e-12, 1000).unwrap();
        assert!((est.value - (200f64).sin() / 5.0).abs() < 1e-12);
    }

    #[test]
    fn endpoint_singularity_converges() {
        // ∫_0^1 x^{-1/2} dx = 2
        let est = integrate(|x: f64| Ok(1.0 / x.sqrt()), &[0.0, 1.0], 1e-9, 2000).unwrap();
        assert!((est.value - 2.0).abs() < 1e-8);
    }

    #[test]
    fn reports_accuracy_failure() {
        let r = integrate(|x: f64| Ok((1.0 / x).sin()), &[1e-6, 1.0], 1e-14, 4);
        assert!(matches!(r, Err(Error::Accuracy { .. })));
        assert!(integrate(Ok, &[1.0, 1.0], 1e-9, 10).is_err());
    }
}
