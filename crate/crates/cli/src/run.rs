//! Subcommand wiring: flag merging, computation, CSV/report emission.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use spinbenford::{
    analyze_series, benford_pmf, correlators, detect_transition, magnetization_inf, scan,
    scan_finite, single_site_entropy, window_histogram, Error, FiniteChainSpec, ModelParams,
    ObservableKind, PlateauMargin, QuadratureConfig, ScanPoint, ScanResult, TwoSiteState,
    WindowSampling, WindowSpec, DEFAULT_EDGE_EXCLUSION,
};

use crate::config::FileConfig;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Runtime(String),
    NoDetection,
}

fn usage(message: impl Into<String>) -> CliError {
    CliError::Usage(message.into())
}

fn runtime(err: impl std::fmt::Display) -> CliError {
    CliError::Runtime(err.to_string())
}

/// Writes one line to the sink, converting I/O failures to runtime errors.
macro_rules! outln {
    ($w:expr, $($arg:tt)*) => {
        writeln!($w, $($arg)*).map_err(|e| CliError::Runtime(format!("write failed: {e}")))?
    };
}

#[derive(Parser)]
#[command(
    name = "spinbenford",
    version,
    about = "First-digit statistics of exact spin-chain observables, with transition detection"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate ground-state observables on a uniform field grid
    Observables(ObservablesArgs),
    /// Scan the first-digit violation parameter over shifting windows
    Scan(ScanArgs),
    /// First-digit histogram of one observable over a field interval
    Histogram(HistogramArgs),
    /// Locate the transition candidate on a scanned curve
    Detect(DetectArgs),
    /// Finite-chain magnetization scans for several chain lengths
    Finite(FiniteArgs),
    /// First-digit analysis of a numeric CSV column
    Analyze(AnalyzeArgs),
}

#[derive(Args)]
struct ObservablesArgs {
    /// Anisotropy parameter
    #[arg(long)]
    gamma: Option<f64>,
    /// Field range as LO:HI
    #[arg(long)]
    range: Option<String>,
    /// Number of grid points (inclusive of both ends)
    #[arg(long)]
    samples: Option<usize>,
    /// Absolute quadrature tolerance
    #[arg(long)]
    tol: Option<f64>,
    /// Output file (stdout when absent)
    #[arg(long)]
    out: Option<PathBuf>,
    /// key=value configuration file; explicit flags win
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long)]
    gamma: Option<f64>,
    /// Observable: mz|cxx|cyy|czz|entropy|logneg
    #[arg(long)]
    quantity: Option<String>,
    /// Centre range as LO:HI
    #[arg(long)]
    range: Option<String>,
    /// Window width
    #[arg(long)]
    window: Option<f64>,
    /// Raw samples per window
    #[arg(long)]
    samples: Option<usize>,
    /// Centre step
    #[arg(long)]
    shift: Option<f64>,
    /// Seed for randomized window sampling (uniform grid when absent)
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct HistogramArgs {
    #[arg(long)]
    gamma: Option<f64>,
    /// Observable: mz|cxx|cyy|czz|entropy|logneg
    #[arg(long)]
    quantity: Option<String>,
    /// Field interval as LO:HI
    #[arg(long)]
    range: Option<String>,
    /// Raw samples in the interval
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct DetectArgs {
    #[arg(long)]
    gamma: Option<f64>,
    /// Observable: mz|cxx|cyy|czz|entropy|logneg
    #[arg(long)]
    quantity: Option<String>,
    #[arg(long)]
    range: Option<String>,
    #[arg(long)]
    window: Option<f64>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    shift: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    tol: Option<f64>,
    /// Finite-chain mode: scan the n-spin magnetization instead
    #[arg(long)]
    n: Option<usize>,
    /// Accept odd chain lengths
    #[arg(long)]
    allow_odd: bool,
    /// Read a precomputed center,delta curve instead of scanning
    #[arg(long, value_name = "PATH", conflicts_with = "n")]
    from_csv: Option<PathBuf>,
    /// Plateau margin as a fraction of the larger plateau
    #[arg(long, conflicts_with = "margin_abs")]
    margin: Option<f64>,
    /// Plateau margin as an absolute threshold
    #[arg(long)]
    margin_abs: Option<f64>,
    /// Distance from the candidate excluded from plateau means
    #[arg(long)]
    edge_exclusion: Option<f64>,
    /// Write the scanned curve here as center,delta
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct FiniteArgs {
    /// Comma-separated chain lengths
    #[arg(long)]
    n_list: Option<String>,
    /// Accept odd chain lengths
    #[arg(long)]
    allow_odd: bool,
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long)]
    range: Option<String>,
    /// Window width (finite-chain default 0.15)
    #[arg(long)]
    window: Option<f64>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    shift: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct AnalyzeArgs {
    /// CSV file to analyze
    #[arg(value_name = "FILE")]
    file: PathBuf,
    /// Name of the numeric column
    #[arg(long)]
    column: String,
    /// Index column for windowed mode
    #[arg(long, requires = "index_window")]
    index_column: Option<String>,
    /// Window width on the index column
    #[arg(long, requires = "index_column")]
    index_window: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Observables(args) => run_observables(args),
        Command::Scan(args) => run_scan(args),
        Command::Histogram(args) => run_histogram(args),
        Command::Detect(args) => run_detect(args),
        Command::Finite(args) => run_finite(args),
        Command::Analyze(args) => run_analyze(args),
    }
}

fn fmt(x: f64) -> String {
    format!("{x:.15e}")
}

fn sink(out: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    match out {
        None => Ok(Box::new(BufWriter::new(io::stdout()))),
        Some(path) => {
            let file = File::create(path)
                .map_err(|e| CliError::Runtime(format!("cannot create {}: {e}", path.display())))?;
            Ok(Box::new(BufWriter::new(file)))
        }
    }
}

fn finish(mut w: Box<dyn Write>) -> Result<(), CliError> {
    w.flush()
        .map_err(|e| CliError::Runtime(format!("write failed: {e}")))
}

fn parse_range(text: &str) -> Result<(f64, f64), CliError> {
    let invalid = || {
        usage(format!(
            "range must be LO:HI with finite LO <= HI, got {text:?}"
        ))
    };
    let (lo, hi) = text.split_once(':').ok_or_else(invalid)?;
    let lo: f64 = lo.trim().parse().map_err(|_| invalid())?;
    let hi: f64 = hi.trim().parse().map_err(|_| invalid())?;
    if !lo.is_finite() || !hi.is_finite() || lo > hi {
        return Err(invalid());
    }
    Ok((lo, hi))
}

fn require_finite(name: &str, value: f64) -> Result<f64, CliError> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(usage(format!("--{name} must be finite, got {value}")))
    }
}

fn quantity_of(label: &str) -> Result<ObservableKind, CliError> {
    ObservableKind::from_label(label).ok_or_else(|| {
        usage(format!(
            "unknown quantity {label:?}; expected one of mz|cxx|cyy|czz|entropy|logneg"
        ))
    })
}

fn quad_config(tol: f64) -> Result<QuadratureConfig, CliError> {
    if !tol.is_finite() || tol <= 0.0 {
        return Err(usage(format!(
            "--tol must be finite and positive, got {tol}"
        )));
    }
    Ok(QuadratureConfig {
        abs_tol: tol,
        ..QuadratureConfig::default()
    })
}

fn window_spec(
    width: f64,
    samples: usize,
    shift: f64,
    seed: Option<u64>,
) -> Result<WindowSpec, CliError> {
    let spec = WindowSpec::new(width, samples, shift).map_err(|e| usage(e.to_string()))?;
    Ok(match seed {
        Some(seed) => spec.with_sampling(WindowSampling::Random { seed }),
        None => spec,
    })
}

fn chain_spec(n: usize, allow_odd: bool) -> Result<FiniteChainSpec, CliError> {
    if n % 2 == 1 && !allow_odd {
        return Err(usage(format!(
            "chain length {n} is odd; pass --allow-odd to accept odd lengths"
        )));
    }
    let spec = if allow_odd {
        FiniteChainSpec::with_odd_allowed(n)
    } else {
        FiniteChainSpec::new(n)
    };
    spec.map_err(|e| usage(e.to_string()))
}

fn write_scan_csv(w: &mut dyn Write, result: &ScanResult) -> Result<(), CliError> {
    for gap in &result.gaps {
        outln!(w, "# gap center={} reason: {}", fmt(gap.center), gap.reason);
    }
    outln!(w, "center,delta");
    for point in &result.points {
        outln!(w, "{},{}", fmt(point.center), fmt(point.delta));
    }
    Ok(())
}

fn run_observables(args: ObservablesArgs) -> Result<(), CliError> {
    let cfg = FileConfig::load(
        args.config.as_deref(),
        &["gamma", "range", "samples", "tol", "out"],
    )?;
    let gamma = require_finite("gamma", cfg.pick(args.gamma, "gamma")?.unwrap_or(1.0))?;
    let range = cfg
        .pick(args.range, "range")?
        .unwrap_or_else(|| "0:2".to_string());
    let (lo, hi) = parse_range(&range)?;
    let samples = cfg.pick(args.samples, "samples")?.unwrap_or(201);
    if samples < 2 {
        return Err(usage("--samples must be at least 2"));
    }
    let quad = quad_config(cfg.pick(args.tol, "tol")?.unwrap_or(1e-10))?;
    let out = cfg.pick(args.out, "out")?;

    let mut w = sink(out.as_deref())?;
    outln!(w, "a_over_J,mz,cxx,cyy,czz,entropy,log_negativity");
    for j in 0..samples {
        let x = lo + j as f64 * (hi - lo) / (samples - 1) as f64;
        let params = ModelParams::new(gamma, x).map_err(runtime)?;
        let mz = magnetization_inf(&params, &quad).map_err(runtime)?;
        let c = correlators(&params, &quad).map_err(runtime)?;
        let entropy = single_site_entropy(mz).map_err(runtime)?;
        let state = TwoSiteState::reconstruct(mz, c.xx, c.yy, c.zz).map_err(runtime)?;
        outln!(
            w,
            "{},{},{},{},{},{},{}",
            fmt(x),
            fmt(mz),
            fmt(c.xx),
            fmt(c.yy),
            fmt(c.zz),
            fmt(entropy),
            fmt(state.log_negativity())
        );
    }
    finish(w)
}

fn run_scan(args: ScanArgs) -> Result<(), CliError> {
    let cfg = FileConfig::load(
        args.config.as_deref(),
        &[
            "gamma", "quantity", "range", "window", "samples", "shift", "seed", "tol", "out",
        ],
    )?;
    let gamma = require_finite("gamma", cfg.pick(args.gamma, "gamma")?.unwrap_or(1.0))?;
    let kind = quantity_of(
        &cfg.pick(args.quantity, "quantity")?
            .unwrap_or_else(|| "mz".to_string()),
    )?;
    let range = cfg
        .pick(args.range, "range")?
        .unwrap_or_else(|| "0.2:2.0".to_string());
    let (lo, hi) = parse_range(&range)?;
    let spec = window_spec(
        require_finite("window", cfg.pick(args.window, "window")?.unwrap_or(0.2))?,
        cfg.pick(args.samples, "samples")?.unwrap_or(1998),
        require_finite("shift", cfg.pick(args.shift, "shift")?.unwrap_or(0.05))?,
        cfg.pick(args.seed, "seed")?,
    )?;
    let quad = quad_config(cfg.pick(args.tol, "tol")?.unwrap_or(1e-10))?;
    let out = cfg.pick(args.out, "out")?;

    let result = scan(kind, gamma, (lo, hi), &spec, &quad).map_err(runtime)?;
    let mut w = sink(out.as_deref())?;
    write_scan_csv(w.as_mut(), &result)?;
    finish(w)
}

fn run_histogram(args: HistogramArgs) -> Result<(), CliError> {
    let cfg = FileConfig::load(
        args.config.as_deref(),
        &["gamma", "quantity", "range", "samples", "tol", "out"],
    )?;
    let gamma = require_finite("gamma", cfg.pick(args.gamma, "gamma")?.unwrap_or(1.0))?;
    let kind = quantity_of(
        &cfg.pick(args.quantity, "quantity")?
            .unwrap_or_else(|| "mz".to_string()),
    )?;
    let range = cfg
        .pick(args.range, "range")?
        .unwrap_or_else(|| "0.2:2.0".to_string());
    let (lo, hi) = parse_range(&range)?;
    let samples = cfg.pick(args.samples, "samples")?.unwrap_or(1998);
    let quad = quad_config(cfg.pick(args.tol, "tol")?.unwrap_or(1e-10))?;
    let out = cfg.pick(args.out, "out")?;

    let hist =
        window_histogram(kind, gamma, (lo, hi), samples, &quad).map_err(|err| match err {
            Error::InvalidInterval { .. } | Error::TooFewSamples { .. } => usage(err.to_string()),
            other => runtime(other),
        })?;
    let total = hist.sample_size();
    if total == 0 {
        return Err(CliError::Runtime(
            "degenerate sample: every value maps to an interval endpoint".to_string(),
        ));
    }

    let mut w = sink(out.as_deref())?;
    outln!(w, "digit,count,relative_frequency,benford_expected");
    for digit in 1..=9u8 {
        let count = hist.counts()[digit as usize - 1];
        let expected = benford_pmf(digit).expect("digit in 1..=9");
        outln!(
            w,
            "{},{},{},{}",
            digit,
            count,
            fmt(count as f64 / total as f64),
            fmt(expected)
        );
    }
    finish(w)
}

fn run_detect(args: DetectArgs) -> Result<(), CliError> {
    let cfg = FileConfig::load(
        args.config.as_deref(),
        &[
            "gamma",
            "quantity",
            "range",
            "window",
            "samples",
            "shift",
            "seed",
            "tol",
            "out",
            "n",
            "allow-odd",
            "margin",
            "margin-abs",
            "edge-exclusion",
        ],
    )?;
    let gamma = require_finite("gamma", cfg.pick(args.gamma, "gamma")?.unwrap_or(1.0))?;
    let kind = quantity_of(
        &cfg.pick(args.quantity, "quantity")?
            .unwrap_or_else(|| "mz".to_string()),
    )?;
    let range = cfg
        .pick(args.range, "range")?
        .unwrap_or_else(|| "0.2:2.0".to_string());
    let (lo, hi) = parse_range(&range)?;
    let n = cfg.pick(args.n, "n")?;
    let allow_odd = cfg.pick_switch(args.allow_odd, "allow-odd")?;
    // The finite-chain reference runs use a narrower window.
    let default_width = if n.is_some() { 0.15 } else { 0.2 };
    let spec = window_spec(
        require_finite(
            "window",
            cfg.pick(args.window, "window")?.unwrap_or(default_width),
        )?,
        cfg.pick(args.samples, "samples")?.unwrap_or(1998),
        require_finite("shift", cfg.pick(args.shift, "shift")?.unwrap_or(0.05))?,
        cfg.pick(args.seed, "seed")?,
    )?;
    let quad = quad_config(cfg.pick(args.tol, "tol")?.unwrap_or(1e-10))?;
    let out = cfg.pick(args.out, "out")?;

    let margin_fraction = cfg.pick(args.margin, "margin")?;
    let margin_absolute = cfg.pick(args.margin_abs, "margin-abs")?;
    let margin = match (margin_fraction, margin_absolute) {
        (Some(_), Some(_)) => {
            return Err(usage("--margin and --margin-abs are mutually exclusive"))
        }
        (Some(f), None) => PlateauMargin::FractionOfLarger(f),
        (None, Some(m)) => PlateauMargin::Absolute(m),
        (None, None) => PlateauMargin::default(),
    };
    let edge = cfg
        .pick(args.edge_exclusion, "edge-exclusion")?
        .unwrap_or(DEFAULT_EDGE_EXCLUSION);

    let result = if let Some(path) = &args.from_csv {
        read_curve(path, kind, gamma)?
    } else if let Some(n) = n {
        let chain = chain_spec(n, allow_odd)?;
        scan_finite(&chain, gamma, (lo, hi), &spec).map_err(runtime)?
    } else {
        scan(kind, gamma, (lo, hi), &spec, &quad).map_err(runtime)?
    };

    if let Some(path) = &out {
        let mut w = sink(Some(path))?;
        write_scan_csv(w.as_mut(), &result)?;
        finish(w)?;
    }

    let report = detect_transition(&result, margin, edge).map_err(|err| match err {
        Error::InvalidMargin { .. } => usage(err.to_string()),
        other => runtime(other),
    })?;
    println!("candidate = {}", fmt(report.candidate));
    println!("derivative_extremum = {}", fmt(report.derivative_extremum));
    println!("plateau_before = {}", fmt(report.plateau_before));
    println!("plateau_after = {}", fmt(report.plateau_after));
    println!("plateau_distinct = {}", report.plateau_distinct);
    if report.plateau_distinct {
        Ok(())
    } else {
        Err(CliError::NoDetection)
    }
}

fn read_curve(path: &Path, kind: ObservableKind, gamma: f64) -> Result<ScanResult, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| CliError::Runtime(format!("cannot read {}: {e}", path.display())))?;
    let headers = reader.headers().map_err(runtime)?.clone();
    let column = |name: &str| {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| CliError::Runtime(format!("column {name:?} not found in {headers:?}")))
    };
    let center_idx = column("center")?;
    let delta_idx = column("delta")?;

    let mut points = Vec::new();
    for record in reader.records() {
        let record = record.map_err(runtime)?;
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        let field = |idx: usize, name: &str| -> Result<f64, CliError> {
            let text = record
                .get(idx)
                .ok_or_else(|| CliError::Runtime(format!("line {line}: missing {name} field")))?;
            text.parse::<f64>().map_err(|_| {
                CliError::Runtime(format!("line {line}: invalid number {text:?} in {name:?}"))
            })
        };
        points.push(ScanPoint {
            center: field(center_idx, "center")?,
            delta: field(delta_idx, "delta")?,
        });
    }
    points.sort_by(|a, b| a.center.partial_cmp(&b.center).expect("finite centers"));
    for pair in points.windows(2) {
        if pair[0].center == pair[1].center {
            return Err(CliError::Runtime(format!(
                "duplicate center {} in {}",
                pair[0].center,
                path.display()
            )));
        }
    }
    Ok(ScanResult {
        quantity: kind,
        gamma,
        points,
        gaps: Vec::new(),
    })
}

fn run_finite(args: FiniteArgs) -> Result<(), CliError> {
    let cfg = FileConfig::load(
        args.config.as_deref(),
        &[
            "n-list",
            "allow-odd",
            "gamma",
            "range",
            "window",
            "samples",
            "shift",
            "seed",
            "out",
        ],
    )?;
    let n_list_text = cfg
        .pick(args.n_list, "n-list")?
        .unwrap_or_else(|| "10,100".to_string());
    let allow_odd = cfg.pick_switch(args.allow_odd, "allow-odd")?;
    let gamma = require_finite("gamma", cfg.pick(args.gamma, "gamma")?.unwrap_or(1.0))?;
    let range = cfg
        .pick(args.range, "range")?
        .unwrap_or_else(|| "0.2:2.0".to_string());
    let (lo, hi) = parse_range(&range)?;
    let spec = window_spec(
        require_finite("window", cfg.pick(args.window, "window")?.unwrap_or(0.15))?,
        cfg.pick(args.samples, "samples")?.unwrap_or(1998),
        require_finite("shift", cfg.pick(args.shift, "shift")?.unwrap_or(0.05))?,
        cfg.pick(args.seed, "seed")?,
    )?;
    let out = cfg.pick(args.out, "out")?;

    let mut lengths = Vec::new();
    for token in n_list_text.split(',') {
        let token = token.trim();
        let n: usize = token
            .parse()
            .map_err(|_| usage(format!("--n-list: invalid chain length {token:?}")))?;
        lengths.push(n);
    }
    if lengths.is_empty() {
        return Err(usage("--n-list must name at least one chain length"));
    }

    let mut curves = Vec::new();
    for &n in &lengths {
        let chain = chain_spec(n, allow_odd)?;
        let result = scan_finite(&chain, gamma, (lo, hi), &spec).map_err(runtime)?;
        curves.push((n, result));
    }

    let mut w = sink(out.as_deref())?;
    for &(n, _) in curves.iter().filter(|(n, _)| n % 2 == 1) {
        outln!(w, "# n={n}: odd chain length enabled by flag");
    }
    for (n, result) in &curves {
        for gap in &result.gaps {
            outln!(
                w,
                "# gap n={n} center={} reason: {}",
                fmt(gap.center),
                gap.reason
            );
        }
    }
    outln!(w, "n,center,delta");
    for (n, result) in &curves {
        for point in &result.points {
            outln!(w, "{n},{},{}", fmt(point.center), fmt(point.delta));
        }
    }
    finish(w)
}

fn run_analyze(args: AnalyzeArgs) -> Result<(), CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_path(&args.file)
        .map_err(|e| CliError::Runtime(format!("cannot read {}: {e}", args.file.display())))?;
    let headers = reader.headers().map_err(runtime)?.clone();
    let column = |name: &str| {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| CliError::Runtime(format!("column {name:?} not found in {headers:?}")))
    };
    let value_idx = column(&args.column)?;
    let index_idx = match &args.index_column {
        Some(name) => Some(column(name)?),
        None => None,
    };

    let mut rows: Vec<(Option<f64>, f64)> = Vec::new();
    for record in reader.records() {
        let record = record.map_err(runtime)?;
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        let field = |idx: usize, name: &str| -> Result<f64, CliError> {
            let text = record
                .get(idx)
                .ok_or_else(|| CliError::Runtime(format!("line {line}: missing {name} field")))?;
            let value: f64 = text.parse().map_err(|_| {
                CliError::Runtime(format!("line {line}: invalid number {text:?} in {name:?}"))
            })?;
            if !value.is_finite() {
                return Err(CliError::Runtime(format!(
                    "line {line}: non-finite value {text:?} in {name:?}"
                )));
            }
            Ok(value)
        };
        let value = field(value_idx, &args.column)?;
        let index = match index_idx {
            Some(idx) => Some(field(idx, args.index_column.as_deref().unwrap())?),
            None => None,
        };
        rows.push((index, value));
    }
    if rows.is_empty() {
        return Err(CliError::Runtime(format!(
            "{}: no data rows",
            args.file.display()
        )));
    }

    match index_idx {
        None => analyze_plain(&args, &rows),
        Some(_) => analyze_windowed(&args, &rows),
    }
}

fn analyze_plain(args: &AnalyzeArgs, rows: &[(Option<f64>, f64)]) -> Result<(), CliError> {
    let values: Vec<f64> = rows.iter().map(|&(_, v)| v).collect();
    let (hist, delta) = analyze_series(&values).map_err(runtime)?;
    let used = hist.sample_size();

    let mut w = sink(args.out.as_deref())?;
    outln!(w, "samples = {} read, {} used", values.len(), used);
    outln!(w, "digit  count  observed  expected  deviation");
    for digit in 1..=9u8 {
        let count = hist.counts()[digit as usize - 1];
        let expected = benford_pmf(digit).expect("digit in 1..=9");
        let observed = count as f64 / used as f64;
        let deviation = (count as f64 - used as f64 * expected) / (used as f64 * expected);
        outln!(
            w,
            "{digit:>5}  {count:>5}  {observed:>8.6}  {expected:>8.6}  {deviation:>+9.6}"
        );
    }
    outln!(w, "delta = {}", fmt(delta));
    finish(w)
}

fn analyze_windowed(args: &AnalyzeArgs, rows: &[(Option<f64>, f64)]) -> Result<(), CliError> {
    let width = args.index_window.expect("clap requires index_window");
    if !width.is_finite() || width <= 0.0 {
        return Err(usage(format!(
            "--index-window must be finite and positive, got {width}"
        )));
    }
    let indexed: Vec<(f64, f64)> = rows.iter().map(|&(i, v)| (i.unwrap(), v)).collect();
    let start0 = indexed
        .iter()
        .map(|&(i, _)| i)
        .fold(f64::INFINITY, f64::min);
    let last = indexed
        .iter()
        .map(|&(i, _)| i)
        .fold(f64::NEG_INFINITY, f64::max);

    struct Window {
        start: f64,
        outcome: Result<f64, String>,
    }
    let mut windows = Vec::new();
    let mut k = 0u64;
    loop {
        let start = start0 + k as f64 * width;
        if start > last {
            break;
        }
        let values: Vec<f64> = indexed
            .iter()
            .filter(|&&(i, _)| i >= start && i < start + width)
            .map(|&(_, v)| v)
            .collect();
        let outcome = analyze_series(&values)
            .map(|(_, delta)| delta)
            .map_err(|e| e.to_string());
        windows.push(Window { start, outcome });
        k += 1;
    }

    let mut w = sink(args.out.as_deref())?;
    for window in windows.iter().filter(|w| w.outcome.is_err()) {
        outln!(
            w,
            "# window_start={} skipped: {}",
            fmt(window.start),
            window.outcome.as_ref().unwrap_err()
        );
    }
    outln!(w, "window_start,delta");
    for window in &windows {
        if let Ok(delta) = &window.outcome {
            outln!(w, "{},{}", fmt(window.start), fmt(*delta));
        }
    }
    finish(w)
}
