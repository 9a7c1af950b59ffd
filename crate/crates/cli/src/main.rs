//! `slcone`: spectra, stability indices and moduli dimension counts for
//! special Lagrangian cones.

mod render;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use slcone_core::lattice::DEFAULT_MAX_POINTS;
use slcone_core::verify::{hl_row, verify_battery};
use slcone_core::{
    fredholm_index, hl_spectrum, moduli_report, parse_rational, stability_index, BigRational, ConeDescriptor,
    EnumerationLimits, Error, ModuliConfig, SingularConfig, SpectrumFile, TopologyData,
};

use render::{check_table, hl_table, render, render_rows, CheckOut, Format, FredholmOut, HlTableRow, IndexOut, ModuliOut};

const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_TRUNCATED: u8 = 3;
const EXIT_INPUT: u8 = 4;
const EXIT_RESOURCE: u8 = 5;
const EXIT_CHECK_FAILED: u8 = 6;

#[derive(Debug, Parser)]
#[command(name = "slcone", version, about = "Exact spectra and moduli dimension counts for special Lagrangian cones")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "table", global = true)]
    format: Format,

    /// Worker threads for lattice enumeration.
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Abort enumerations that visit more than this many lattice points.
    #[arg(long, default_value_t = DEFAULT_MAX_POINTS, global = true)]
    max_points: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// N(2), m(2) and s-ind for the Harvey–Lawson cones over a range of m.
    HlTable {
        #[arg(long, default_value_t = 3)]
        m_min: u32,
        #[arg(long, default_value_t = 12)]
        m_max: u32,
    },
    /// Spectrum of the Harvey–Lawson link, complete up to --lambda-max.
    HlSpectrum {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        lambda_max: u64,
    },
    /// Stability index of one cone.
    Index {
        #[command(flatten)]
        source: ConeSource,
    },
    /// Moduli dimension report for a configuration file.
    Moduli {
        #[arg(long)]
        config: PathBuf,
    },
    /// Fredholm criterion and index for weights β, one per singular point.
    Fredholm {
        #[command(flatten)]
        source: ConeSource,
        #[arg(long, conflicts_with_all = ["m", "spectrum"])]
        config: Option<PathBuf>,
        /// Comma-separated rationals, e.g. "9/4,1/2".
        #[arg(long)]
        rates: String,
    },
    /// Run the self-check battery for 3 <= m <= --m-max.
    Verify {
        #[arg(long, default_value_t = 12)]
        m_max: u32,
    },
}

#[derive(Debug, Args)]
struct ConeSource {
    /// Built-in Harvey–Lawson cone in C^m.
    #[arg(long, conflicts_with = "spectrum")]
    m: Option<u32>,
    /// Spectrum file.
    #[arg(long)]
    spectrum: Option<PathBuf>,
    /// Number of link components (overrides the spectrum file).
    #[arg(long)]
    b0: Option<u64>,
    /// Dimension of the symmetry group in SU(m) (overrides the spectrum file).
    #[arg(long)]
    dim_g: Option<u64>,
}

#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

#[derive(Debug)]
struct ChecksFailed(usize);

impl std::fmt::Display for ChecksFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} check(s) failed", self.0)
    }
}

impl std::error::Error for ChecksFailed {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

fn require_m(m: u32, flag: &str) -> Result<()> {
    if m < 3 {
        return Err(usage(format!("{flag} must be at least 3 (got {m})")));
    }
    Ok(())
}

impl ConeSource {
    /// Resolves the cone; built-in spectra are enumerated up to `lambda_max`.
    fn resolve(&self, lambda_max: u64, limits: EnumerationLimits) -> Result<ConeDescriptor> {
        match (&self.m, &self.spectrum) {
            (Some(m), None) => {
                require_m(*m, "--m")?;
                let base = ConeDescriptor::harvey_lawson(*m, lambda_max, limits)?;
                if self.b0.is_none() && self.dim_g.is_none() {
                    return Ok(base);
                }
                let b0 = self.b0.unwrap_or(base.link_components());
                let dim_g = self.dim_g.unwrap_or(base.sym_dim());
                let label = base.label().to_string();
                Ok(ConeDescriptor::new(b0, dim_g, base.spectrum().clone(), label)?)
            }
            (None, Some(path)) => {
                let file = SpectrumFile::read(path)?;
                let b0 = self
                    .b0
                    .or(file.b0)
                    .ok_or_else(|| usage("--b0 is required (spectrum file has no b0)"))?;
                let dim_g = self
                    .dim_g
                    .or(file.dim_g)
                    .ok_or_else(|| usage("--dim-g is required (spectrum file has no dim_g)"))?;
                Ok(ConeDescriptor::new(b0, dim_g, file.spectrum, path.display().to_string())?)
            }
            _ => Err(usage("exactly one of --m or --spectrum is required")),
        }
    }
}

fn parse_rates(text: &str) -> Result<Vec<BigRational>> {
    text.split(',')
        .map(|t| parse_rational(t).map_err(|e| usage(e.to_string())))
        .collect()
}

fn cmd_hl_table(m_min: u32, m_max: u32, format: Format, limits: EnumerationLimits) -> Result<String> {
    require_m(m_min, "--m-min")?;
    if m_max < m_min {
        return Err(usage(format!("--m-max ({m_max}) must be at least --m-min ({m_min})")));
    }
    let rows = (m_min..=m_max)
        .map(|m| {
            let r = hl_row(m, limits)?;
            Ok(HlTableRow {
                m,
                n2: r.n2,
                m2: r.m2,
                s_ind: r.s_ind,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    render_rows(&rows, format, hl_table)
}

fn cmd_hl_spectrum(m: u32, lambda_max: u64, format: Format, limits: EnumerationLimits) -> Result<String> {
    require_m(m, "--m")?;
    let spectrum = hl_spectrum(m, lambda_max, limits)?;
    let file = SpectrumFile::new(spectrum, Some(1), Some((m - 1) as u64));
    Ok(match format {
        Format::Json => file.to_json(),
        Format::Csv => file.to_csv(),
        Format::Table => {
            let mut out = String::new();
            let _ = writeln!(out, "# Harvey-Lawson link, m = {m}, complete up to {lambda_max}");
            let _ = writeln!(out, "{:>12} {:>10}", "lambda", "mult");
            for e in file.spectrum.entries() {
                let _ = writeln!(out, "{:>12} {:>10}", e.lambda().to_string(), e.mult());
            }
            out
        }
    })
}

fn cmd_index(source: &ConeSource, format: Format, limits: EnumerationLimits) -> Result<String> {
    // Built-in spectra go far enough for the admissible rate bound as well.
    let lambda_max = source.m.map(|m| 3 * (m as u64 + 1)).unwrap_or(0);
    let cone = source.resolve(lambda_max, limits)?;
    let report = stability_index(&cone)?;
    let rate_sup = cone.spectrum().admissible_rate_sup().ok().map(|s| s.to_string());
    let out = IndexOut {
        label: cone.label().to_string(),
        m: cone.m(),
        b0: cone.link_components(),
        dim_g: cone.sym_dim(),
        n2: report.n2,
        m0: report.m0,
        m1: report.m1,
        m2: report.m2,
        s_ind: report.s_ind,
        stable: report.stable,
        rigid: report.rigid,
        rate_sup,
        bound_violations: report.bound_violations.join("; "),
    };
    render(&out, format)
}

fn cmd_moduli(config: &Path, format: Format, limits: EnumerationLimits) -> Result<String> {
    let parsed = ModuliConfig::read(config, &[], limits)?;
    let report = moduli_report(&parsed.config, parsed.transverse)?;
    let out = ModuliOut {
        n: parsed.config.n(),
        dim_e: report.dim_e,
        dim_k: report.dim_k,
        dim_i: report.dim_i,
        dim_o: report.dim_o,
        expected_dim: report.expected_dim,
        all_stable: report.all_stable,
        family_dim: report.family.as_ref().map(|f| f.family_dim),
        family_case: report.family.as_ref().map(|f| f.case.as_str().to_string()),
        family_expected_dim: report.family.as_ref().map(|f| f.expected_dim),
        fiber_dim: report.family.as_ref().and_then(|f| f.fiber_dim),
        notes: report.notes.join("; "),
    };
    render(&out, format)
}

fn cmd_fredholm(
    source: &ConeSource,
    config: Option<&Path>,
    rates: &str,
    format: Format,
    limits: EnumerationLimits,
) -> Result<String> {
    let betas = parse_rates(rates)?;
    let singular = match config {
        Some(path) => ModuliConfig::read(path, &betas, limits)?.config,
        None => {
            let m = source.m.unwrap_or(3);
            let mut lambda_max = 2 * m as u64;
            for b in &betas {
                let needed = slcone_core::moduli::eigenvalue_bound_for_rate(m, b).ceil().to_integer();
                lambda_max = lambda_max.max(u64::try_from(needed).context("rate too large to enumerate")?);
            }
            let cone = source.resolve(lambda_max, limits)?;
            SingularConfig::new(vec![cone], TopologyData::new(0, 0)?, 0)?
        }
    };
    let result = fredholm_index(&singular, &betas)?;
    let out = FredholmOut {
        rates: betas.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(","),
        fredholm: result.fredholm,
        index: result.index,
        injective: result.injective,
        critical_points: result.critical_points.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(";"),
    };
    render(&out, format)
}

fn cmd_verify(m_max: u32, format: Format, limits: EnumerationLimits) -> Result<(String, usize)> {
    require_m(m_max, "--m-max")?;
    let rows: Vec<CheckOut> = verify_battery(m_max, limits)?
        .into_iter()
        .map(|c| CheckOut {
            check: c.name,
            passed: c.passed,
            detail: c.detail,
        })
        .collect();
    let failed = rows.iter().filter(|r| !r.passed).count();
    Ok((render_rows(&rows, format, check_table)?, failed))
}

fn run(cli: &Cli) -> Result<String> {
    let mut limits = EnumerationLimits::default().with_max_points(cli.max_points);
    if let Some(t) = cli.threads {
        if t == 0 {
            return Err(usage("--threads must be positive"));
        }
        limits = limits.with_threads(t);
    }
    match &cli.command {
        Command::HlTable { m_min, m_max } => cmd_hl_table(*m_min, *m_max, cli.format, limits),
        Command::HlSpectrum { m, lambda_max } => cmd_hl_spectrum(*m, *lambda_max, cli.format, limits),
        Command::Index { source } => cmd_index(source, cli.format, limits),
        Command::Moduli { config } => cmd_moduli(config, cli.format, limits),
        Command::Fredholm { source, config, rates } => cmd_fredholm(source, config.as_deref(), rates, cli.format, limits),
        Command::Verify { m_max } => {
            let (text, failed) = cmd_verify(*m_max, cli.format, limits)?;
            if failed > 0 {
                print!("{text}");
                bail!(ChecksFailed(failed));
            }
            Ok(text)
        }
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<UsageError>().is_some() {
        return EXIT_USAGE;
    }
    if err.downcast_ref::<ChecksFailed>().is_some() {
        return EXIT_CHECK_FAILED;
    }
    match err.downcast_ref::<Error>() {
        Some(Error::SpectrumTruncated { .. }) => EXIT_TRUNCATED,
        Some(Error::ResourceLimit { .. }) => EXIT_RESOURCE,
        Some(Error::InvalidConfig(_) | Error::InvalidSpectrum(_) | Error::InvalidCone(_) | Error::Format(_)) => {
            EXIT_INPUT
        }
        Some(Error::InvalidDimension(_) | Error::DimensionMismatch { .. }) => EXIT_USAGE,
        Some(Error::Inconsistent(_)) => EXIT_CHECK_FAILED,
        _ => EXIT_FAILURE,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
