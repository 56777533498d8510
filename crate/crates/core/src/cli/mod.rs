//! CSV-producing commands behind the `sspk` binary.
//!
//! Every file starts with a `# ...` metadata line carrying the command, the
//! full parameter set, the seed and the generator version, so any output can
//! be regenerated from its own header. Numbers use the shortest decimal form
//! that round-trips to the same `f64` (at most 17 significant digits).
//!
//! Exit codes: 0 success, 2 invalid arguments, 3 numerical-accuracy failure,
//! 1 I/O failure.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::analysis::{
    convergence_sweep, empirical_profile, heatmap2d, kernel_profile, radial_grid, BuilderConfig,
    SweepSpec, SweepVariable, DEFAULT_RADIAL_MAX, DEFAULT_RADIAL_POINTS,
};
use crate::encoder::LengthScale;
use crate::kernels::KernelSpec;
use crate::phase::{build_hexssp_with_scales, PhaseMatrix};
use crate::sampling::RadialDistribution;
use crate::{error::domain, Error, Result};

pub const GENERATOR: &str = concat!("ssp-kernels/", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Parser)]
#[command(
    name = "sspk",
    version,
    about = "SSP radial kernel profiles, empirical estimates and sweeps as CSV"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Analytic kernel on a radial grid, one column per n.
    KernelProfile(KernelProfileArgs),
    /// Empirical similarity of one phase matrix against its analytic kernel.
    Empirical(EmpiricalArgs),
    /// Similarity over a square lattice (n = 2).
    Heatmap(HeatmapArgs),
    /// Median error against the analytic kernel while one size parameter varies.
    Convergence(ConvergenceArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KernelArg {
    Hypergeometric,
    Jinc,
    Gaussian,
    Sinc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BuilderArg {
    Hexssp,
    Randssp,
    Product,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DistArg {
    Uniform,
    Chi,
    Beta,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VaryArg {
    /// `--M` (randssp rows, product rows per axis)
    #[value(name = "M")]
    M,
    #[value(name = "NR")]
    Nr,
    #[value(name = "NS")]
    Ns,
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    /// Kernel length scale ℓ.
    #[arg(long, default_value_t = 1.0)]
    pub ell: f64,
    /// Largest radius of the grid.
    #[arg(long, default_value_t = DEFAULT_RADIAL_MAX)]
    pub rmax: f64,
    /// Number of grid points on [0, rmax].
    #[arg(long, default_value_t = DEFAULT_RADIAL_POINTS)]
    pub points: usize,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output file, written atomically; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct KernelProfileArgs {
    #[arg(long, value_enum, default_value = "hypergeometric")]
    pub kernel: KernelArg,
    /// Comma-separated feature dimensions.
    #[arg(long, value_delimiter = ',', default_value = "1,2,3,5,10")]
    pub n: Vec<usize>,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct BuilderArgs {
    #[arg(long, value_enum, default_value = "hexssp")]
    pub builder: BuilderArg,
    /// Feature dimension.
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    /// HexSSP orientation count N_R.
    #[arg(long = "NR", default_value_t = 50)]
    pub nr: usize,
    /// HexSSP scale count N_S.
    #[arg(long = "NS", default_value_t = 20)]
    pub ns: usize,
    /// Explicit HexSSP scales, replacing the N_S draws from the radial law.
    #[arg(long, value_delimiter = ',')]
    pub scales: Option<Vec<f64>>,
    /// Row count for randssp; rows per axis for product.
    #[arg(long = "M", default_value_t = 3000)]
    pub m: usize,
    /// Radial law of the row magnitudes.
    #[arg(long, value_enum, default_value = "uniform")]
    pub dist: DistArg,
    /// Support radius λ of the radial law (chi uses length scale 1/λ).
    #[arg(long, default_value_t = 1.0)]
    pub lambda: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args)]
pub struct EmpiricalArgs {
    #[command(flatten)]
    pub builder: BuilderArgs,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct HeatmapArgs {
    #[command(flatten)]
    pub builder: BuilderArgs,
    #[arg(long, default_value_t = 1.0)]
    pub ell: f64,
    /// Half-width of the square lattice.
    #[arg(long, default_value_t = 10.0)]
    pub extent: f64,
    /// Lattice points per axis.
    #[arg(long, default_value_t = 101)]
    pub resolution: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ConvergenceArgs {
    #[command(flatten)]
    pub builder: BuilderArgs,
    /// Parameter to vary.
    #[arg(long, value_enum, default_value = "M")]
    pub vary: VaryArg,
    /// Comma-separated values of the varied parameter.
    #[arg(long, value_delimiter = ',', default_value = "100,1000,10000")]
    pub values: Vec<usize>,
    /// Builds per value.
    #[arg(long, default_value_t = 10)]
    pub seeds: usize,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code. Diagnostics go to standard error.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("sspk: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Accuracy { .. } | Error::Range(_) => 3,
        Error::Io(_) => 1,
        Error::Domain(_) | Error::DimensionMismatch { .. } | Error::Parse(_) => 2,
    }
}

pub fn run(cli: &Cli) -> Result<()> {
    let (csv, out) = match &cli.command {
        Command::KernelProfile(a) => (render_kernel_profile(a)?, &a.output.out),
        Command::Empirical(a) => (render_empirical(a)?, &a.output.out),
        Command::Heatmap(a) => (render_heatmap(a)?, &a.output.out),
        Command::Convergence(a) => (render_convergence(a)?, &a.output.out),
    };
    match out {
        Some(path) => write_atomic(path, &csv),
        None => {
            std::io::stdout().write_all(csv.as_bytes())?;
            Ok(())
        }
    }
}

/// Writes through a temporary file in the target directory and renames it
/// into place, so readers never see a partial file.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| Error::from(e.error))?;
    Ok(())
}

fn grid(g: &GridArgs) -> Result<(LengthScale, Vec<f64>)> {
    if !(g.rmax > 0.0 && g.rmax.is_finite()) || g.points < 2 {
        return domain("grid needs rmax > 0 and at least two points");
    }
    Ok((LengthScale::new(g.ell)?, radial_grid(g.rmax, g.points)))
}

fn join<T: ToString>(items: &[T]) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

pub fn render_kernel_profile(a: &KernelProfileArgs) -> Result<String> {
    if a.n.is_empty() {
        return domain("--n needs at least one dimension");
    }
    let (ls, radii) = grid(&a.grid)?;
    let kernel = format!("{:?}", a.kernel).to_lowercase();
    let columns = a
        .n
        .iter()
        .map(|&n| {
            let spec = match a.kernel {
                KernelArg::Hypergeometric => KernelSpec::hypergeometric(n, ls)?,
                KernelArg::Jinc => KernelSpec::jinc(n, ls)?,
                KernelArg::Gaussian => KernelSpec::gaussian(ls),
                KernelArg::Sinc if n == 1 => KernelSpec::sinc(ls),
                KernelArg::Sinc => return domain("the sinc kernel is one-dimensional, use --n 1"),
            };
            Ok(kernel_profile(&spec, &radii)?.values)
        })
        .collect::<Result<Vec<_>>>()?;

    let mut s = String::new();
    writeln!(
        s,
        "# kernel={kernel} n={} ell={} rmax={} points={} command=kernel-profile generator={GENERATOR}",
        join(&a.n),
        a.grid.ell,
        a.grid.rmax,
        a.grid.points
    )
    .unwrap();
    s.push_str("rho");
    if a.n.len() == 1 {
        s.push_str(",K");
    } else {
        for n in &a.n {
            write!(s, ",K_n{n}").unwrap();
        }
    }
    s.push('\n');
    for (i, r) in radii.iter().enumerate() {
        write!(s, "{r}").unwrap();
        for col in &columns {
            write!(s, ",{}", col[i]).unwrap();
        }
        s.push('\n');
    }
    Ok(s)
}

impl BuilderArgs {
    fn metadata(&self) -> String {
        let mut s = format!("builder={:?} n={}", self.builder, self.n).to_lowercase();
        match (self.builder, &self.scales) {
            (BuilderArg::Hexssp, Some(scales)) => {
                write!(s, " NR={} scales={}", self.nr, join(scales)).unwrap()
            }
            (BuilderArg::Hexssp, None) => write!(s, " NR={} NS={}", self.nr, self.ns).unwrap(),
            (_, _) => write!(s, " M={}", self.m).unwrap(),
        }
        let dist = format!("{:?}", self.dist).to_lowercase();
        write!(s, " dist={dist} lambda={} seed={}", self.lambda, self.seed).unwrap();
        s
    }

    /// Radial law for a given dimension (the product builder uses n = 1).
    fn dist_for(&self, n: usize) -> Result<RadialDistribution> {
        match self.dist {
            DistArg::Uniform => RadialDistribution::uniform(self.lambda),
            DistArg::Chi => RadialDistribution::chi(n, 1.0 / self.lambda),
            DistArg::Beta => RadialDistribution::scaled_beta(n, self.lambda),
        }
    }

    fn config(&self) -> Result<BuilderConfig> {
        Ok(match self.builder {
            BuilderArg::Hexssp => BuilderConfig::HexSsp {
                n: self.n,
                orientations: self.nr,
                scales: self.ns,
                dist: self.dist_for(self.n)?,
            },
            BuilderArg::Randssp => BuilderConfig::RandSsp {
                n: self.n,
                rows: self.m,
                dist: self.dist_for(self.n)?,
            },
            BuilderArg::Product => BuilderConfig::Product {
                n: self.n,
                per_axis: self.m,
                dist: self.dist_for(1)?,
            },
        })
    }

    fn build(&self) -> Result<PhaseMatrix> {
        match (self.builder, &self.scales) {
            (BuilderArg::Hexssp, Some(scales)) => {
                build_hexssp_with_scales(self.n, self.nr, scales, self.seed)
            }
            (_, Some(_)) => domain("--scales applies to the hexssp builder only"),
            _ => self.config()?.build(self.seed),
        }
    }

    /// Isotropic kernel the builder estimates; for the product baseline, the
    /// isotropic kernel of the same radial law in n dimensions.
    fn reference(&self, ls: LengthScale) -> Result<KernelSpec> {
        KernelSpec::for_distribution(&self.dist_for(self.n)?, self.n, ls)
    }
}

pub fn render_empirical(a: &EmpiricalArgs) -> Result<String> {
    let (ls, radii) = grid(&a.grid)?;
    let pm = a.builder.build()?;
    let reference = a.builder.reference(ls)?;
    let mut direction = vec![0.0; a.builder.n];
    direction[0] = 1.0;
    let emp = empirical_profile(&pm, ls, &direction, &radii)?;
    let exact = kernel_profile(&reference, &radii)?;

    let mut s = String::new();
    writeln!(
        s,
        "# kernel={} {} ell={} rmax={} points={} command=empirical generator={GENERATOR}",
        reference.name(),
        a.builder.metadata(),
        a.grid.ell,
        a.grid.rmax,
        a.grid.points
    )
    .unwrap();
    s.push_str("rho,K_empirical,K_analytic,abs_err\n");
    for ((r, e), k) in radii.iter().zip(&emp.values).zip(&exact.values) {
        writeln!(s, "{r},{e},{k},{}", (e - k).abs()).unwrap();
    }
    writeln!(
        s,
        "# rmse={} max_abs_err={}",
        emp.rmse_against(&exact),
        emp.max_abs_against(&exact)
    )
    .unwrap();
    Ok(s)
}

pub fn render_heatmap(a: &HeatmapArgs) -> Result<String> {
    let ls = LengthScale::new(a.ell)?;
    let pm = a.builder.build()?;
    let map = heatmap2d(&pm, ls, a.extent, a.resolution)?;
    let mut s = String::new();
    writeln!(
        s,
        "# kernel=empirical {} ell={} extent={} resolution={} command=heatmap generator={GENERATOR}",
        a.builder.metadata(),
        a.ell,
        a.extent,
        a.resolution
    )
    .unwrap();
    s.push_str("x,y,K\n");
    for (iy, y) in map.coords.iter().enumerate() {
        for (ix, x) in map.coords.iter().enumerate() {
            writeln!(s, "{x},{y},{}", map.at(ix, iy)).unwrap();
        }
    }
    Ok(s)
}

pub fn render_convergence(a: &ConvergenceArgs) -> Result<String> {
    if a.builder.scales.is_some() {
        return domain("--scales cannot be combined with a convergence sweep");
    }
    let (ls, radii) = grid(&a.grid)?;
    let variable = match a.vary {
        VaryArg::M => SweepVariable::Rows,
        VaryArg::Nr => SweepVariable::Orientations,
        VaryArg::Ns => SweepVariable::Scales,
    };
    let reference = a.builder.reference(ls)?;
    let sweep = SweepSpec {
        variable,
        values: a.values.clone(),
        seeds: a.seeds,
        master_seed: a.builder.seed,
        ls,
        radii,
    };
    let report = convergence_sweep(&a.builder.config()?, &reference, &sweep)?;

    let mut s = String::new();
    writeln!(
        s,
        "# kernel={} {} vary={} values={} seeds={} ell={} rmax={} points={} command=convergence generator={GENERATOR}",
        reference.name(),
        a.builder.metadata(),
        variable.name(),
        join(&a.values),
        a.seeds,
        a.grid.ell,
        a.grid.rmax,
        a.grid.points
    )
    .unwrap();
    s.push_str("value,max_abs_err_median,rmse_median,seeds\n");
    for row in &report.rows {
        let seeds = row
            .seeds
            .iter()
            .map(u64::to_string)
            .collect::<Vec<_>>()
            .join(";");
        writeln!(
            s,
            "{},{},{},{seeds}",
            row.value, row.max_abs_err_median, row.rmse_median
        )
        .unwrap();
    }
    if let Some(slope) = report.slope {
        writeln!(s, "# slope={slope}").unwrap();
    }
    Ok(s)
}
