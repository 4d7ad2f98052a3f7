//! Command-line front end: ingestion, dispatch and run reports.
//!
//! [`execute`] takes an argument vector and returns what the binary should
//! print and its exit code, so the same code path is testable in-process.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::approx::{approx_max_empty_box, approx_max_empty_cube, with_threads, ApproxOptions, SearchResult, Strategy};
use crate::bounds::{algorithm_count_bounds, bounds_ad, bounds_aprime, iroot, restricted_count_bounds, BoundReport};
use crate::error::{Error, Result};
use crate::geometry::{normalize_to_unit, AffineTransform, OpenBox, PointSet};
use crate::oracle::{enumerate_restricted_boxes, exact_max_empty_box, exact_max_empty_cube, ScaleGuard};
use crate::pointgen::{
    default_margin, embed_in_unit_cube, grid_vertices, halton_hammersley, known_tight_config,
    restricted_lb_construction, uniform_random, van_der_corput, TightConfig,
};
use crate::verify;

pub const SCHEMA: u32 = 1;
pub const SEED_ENV: &str = "MAXEMPTY_SEED";

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;
pub const EXIT_GUARD: i32 = 3;
pub const EXIT_VERIFY: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "maxempty", version, about = "Maximum empty boxes and hypercubes among points")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub output: OutputFormat,

    /// Worker threads for the parallel parts.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Generator {
    Vdc,
    Halton,
    RestrictedLb,
    Grid,
    Uniform,
    Tight2,
    Tight4,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Auto,
    Grid,
    Exhaustive,
    Sweep,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Auto => Strategy::Auto,
            StrategyArg::Grid => Strategy::Grid,
            StrategyArg::Exhaustive => Strategy::Exhaustive,
            StrategyArg::Sweep => Strategy::Sweep,
        }
    }
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Point file (CSV or JSON).
    #[arg(long)]
    pub input: PathBuf,

    /// Input format; inferred from the extension when omitted.
    #[arg(long, value_enum)]
    pub format: Option<Format>,

    /// Drop duplicate points before running.
    #[arg(long)]
    pub dedup: bool,
}

#[derive(Debug, Args)]
pub struct ApproxArgs {
    #[command(flatten)]
    pub input: InputArgs,

    #[arg(long, default_value_t = 0.25)]
    pub epsilon: f64,

    /// Seed for the randomized epsilon; defaults to $MAXEMPTY_SEED or 0.
    #[arg(long)]
    pub seed: Option<u64>,

    /// Use epsilon as given instead of drawing it at random.
    #[arg(long)]
    pub no_jitter: bool,

    #[arg(long, value_enum, default_value_t = StrategyArg::Auto)]
    pub strategy: StrategyArg,
}

#[derive(Debug, Args)]
pub struct ExactArgs {
    #[command(flatten)]
    pub input: InputArgs,

    /// Run even above the oracle size limits.
    #[arg(long)]
    pub force: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a point set.
    Gen {
        #[arg(long, value_enum)]
        generator: Generator,
        #[arg(long, default_value_t = 16)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long)]
        seed: Option<u64>,
        /// Group sizes for restricted-lb, e.g. 3,4.
        #[arg(long, value_delimiter = ',')]
        counts: Vec<usize>,
    },
    /// Approximate maximum empty box.
    ApproxBox(ApproxArgs),
    /// Approximate maximum empty hypercube.
    ApproxCube(ApproxArgs),
    /// Exact maximum empty box (brute force).
    ExactBox(ExactArgs),
    /// Exact maximum empty hypercube (brute force).
    ExactCube(ExactArgs),
    /// Count maximal empty boxes of a point file or of the lower-bound construction.
    RestrictedCount {
        #[arg(long, conflicts_with = "counts")]
        input: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long, value_delimiter = ',')]
        counts: Vec<usize>,
        #[arg(long)]
        force: bool,
    },
    /// Print closed-form bounds.
    Bounds {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long)]
        epsilon: Option<f64>,
    },
    /// Run the acceptance checks.
    Verify {
        /// Smaller instance counts, for a fast smoke run.
        #[arg(long)]
        quick: bool,
    },
}

/// JSON point document: `{"dim", "region", "points"}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointDocument {
    #[serde(default = "schema", skip_deserializing)]
    pub schema: u32,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub region: Option<RegionDoc>,
    pub points: Vec<Vec<f64>>,
}

fn schema() -> u32 {
    SCHEMA
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionDoc {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
}

/// Points and the region they live in.
#[derive(Debug, Clone, PartialEq)]
pub struct Ingested {
    pub points: PointSet,
    pub region: OpenBox,
    pub region_given: bool,
}

/// Reads a point file. Without an explicit region the bounding box of the
/// points, widened by 1% per axis, is used.
pub fn ingest(path: &Path, format: Option<Format>) -> Result<Ingested> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let format = format.unwrap_or_else(|| match path.extension().and_then(|e| e.to_str()) {
        Some("json") => Format::Json,
        _ => Format::Csv,
    });
    let (points, region) = match format {
        Format::Csv => (parse_csv(&text)?, None),
        Format::Json => parse_json(&text)?,
    };
    let region_given = region.is_some();
    let region = match region {
        Some(r) => r,
        None => default_region(&points)?,
    };
    Ok(Ingested {
        points,
        region,
        region_given,
    })
}

/// One point per line, comma-separated; an optional non-numeric first line
/// is a header. Blank lines and lines starting with `#` are skipped.
pub fn parse_csv(text: &str) -> Result<PointSet> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut dim = None;
    let mut seen_data = false;
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        let parsed: std::result::Result<Vec<f64>, _> = fields.iter().map(|f| f.parse::<f64>()).collect();
        let row = match parsed {
            Ok(row) => row,
            Err(_) if !seen_data && rows.is_empty() && dim.is_none() => {
                dim = Some(fields.len());
                continue;
            }
            Err(_) => {
                let bad = fields.iter().find(|f| f.parse::<f64>().is_err()).unwrap_or(&"");
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("not a number: `{bad}`"),
                });
            }
        };
        seen_data = true;
        if let Some(bad) = row.iter().position(|x| !x.is_finite()) {
            return Err(Error::Parse {
                line: line_no,
                message: format!("field {} is not finite", bad + 1),
            });
        }
        let d = *dim.get_or_insert(row.len());
        if row.len() != d {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected {d} fields, found {}", row.len()),
            });
        }
        rows.push(row);
    }
    let dim = dim.ok_or(Error::Parse {
        line: 0,
        message: "no points and no header".into(),
    })?;
    PointSet::new(dim, rows)
}

pub fn parse_json(text: &str) -> Result<(PointSet, Option<OpenBox>)> {
    let doc: PointDocument = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        message: e.to_string(),
    })?;
    if let Some(i) = doc.points.iter().position(|p| p.len() != doc.dim) {
        return Err(Error::Parse {
            line: 0,
            message: format!("point {i} has {} coordinates, expected {}", doc.points[i].len(), doc.dim),
        });
    }
    let points = PointSet::new(doc.dim, doc.points)?;
    let region = doc.region.map(|r| OpenBox::new(r.lo, r.hi)).transpose()?;
    if let Some(r) = &region {
        if r.dim() != doc.dim {
            return Err(Error::DimensionMismatch {
                expected: doc.dim,
                found: r.dim(),
            });
        }
    }
    Ok((points, region))
}

/// Bounding box widened by 1% of its extent per axis; axes of zero extent
/// get half a unit on each side, and an empty set gets the unit cube.
pub fn default_region(points: &PointSet) -> Result<OpenBox> {
    let Some((lo, hi)) = points.bounds() else {
        return Ok(OpenBox::unit(points.dim()));
    };
    let (lo, hi) = lo
        .iter()
        .zip(&hi)
        .map(|(&l, &h)| {
            let pad = if h > l { 0.01 * (h - l) } else { 0.5 };
            (l - pad, h + pad)
        })
        .unzip();
    OpenBox::new(lo, hi)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Parameters {
    pub epsilon: f64,
    pub seed: u64,
    pub jitter: bool,
    pub strategy: Strategy,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoxPair {
    pub unit: OpenBox,
    pub input: OpenBox,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VolumePair {
    pub unit: f64,
    pub input: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub schema: u32,
    pub command: String,
    pub dimension: usize,
    pub n: usize,
    /// Points strictly inside the region, the ones that can block a box.
    pub n_interior: usize,
    pub region: OpenBox,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parameters: Option<Parameters>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<BoxPair>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub volume: Option<VolumePair>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exponents: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub anchor: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stats: Option<crate::approx::SearchStats>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub restricted_count: Option<usize>,
    pub bounds: Vec<BoundReport>,
    pub duration_ms: f64,
}

/// Keys holding wall-clock measurements.
pub const WALL_CLOCK_KEYS: [&str; 2] = ["duration_ms", "elapsed_ms"];

/// Zeroes every wall-clock field of a JSON report, for comparisons.
pub fn strip_wall_clock(json: &str) -> Result<String> {
    fn walk(v: &mut serde_json::Value) {
        match v {
            serde_json::Value::Object(map) => {
                for (k, x) in map.iter_mut() {
                    if WALL_CLOCK_KEYS.contains(&k.as_str()) {
                        *x = serde_json::Value::from(0);
                    } else {
                        walk(x);
                    }
                }
            }
            serde_json::Value::Array(items) => items.iter_mut().for_each(walk),
            _ => {}
        }
    }
    let mut v: serde_json::Value = serde_json::from_str(json).map_err(|e| Error::Parse {
        line: e.line(),
        message: e.to_string(),
    })?;
    walk(&mut v);
    serde_json::to_string(&v).map_err(|e| Error::Io(e.to_string()))
}

/// What the binary prints and returns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ScaleGuard { .. } => EXIT_GUARD,
        Error::InvalidArgument(_) | Error::InvalidEpsilon(_) | Error::UnknownConfig(_) | Error::InvalidDimension(_) => {
            EXIT_USAGE
        }
        _ => EXIT_DATA,
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn execute<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Outcome {
                    stdout: text,
                    stderr: String::new(),
                    code: EXIT_OK,
                },
                _ => Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code: EXIT_USAGE,
                },
            };
        }
    };
    let mut stderr = String::new();
    match run(&cli, &mut stderr) {
        Ok((stdout, code)) => Outcome { stdout, stderr, code },
        Err(e) => {
            stderr.push_str(&format!("error: {e}\n"));
            Outcome {
                stdout: String::new(),
                stderr,
                code: exit_code(&e),
            }
        }
    }
}

fn default_seed(seed: Option<u64>) -> Result<u64> {
    if let Some(s) = seed {
        return Ok(s);
    }
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("{SEED_ENV}=`{v}` is not an unsigned integer"))),
        Err(_) => Ok(0),
    }
}

fn to_json<T: Serialize>(v: &T) -> Result<String> {
    serde_json::to_string_pretty(v)
        .map(|s| s + "\n")
        .map_err(|e| Error::Io(e.to_string()))
}

fn run(cli: &Cli, stderr: &mut String) -> Result<(String, i32)> {
    let threads = cli.threads;
    match &cli.command {
        Command::Gen {
            generator,
            n,
            dim,
            seed,
            counts,
        } => {
            let points = generate(*generator, *n, *dim, default_seed(*seed)?, counts)?;
            let doc = PointDocument {
                schema: SCHEMA,
                dim: points.dim(),
                region: Some(RegionDoc {
                    lo: vec![0.0; points.dim()],
                    hi: vec![1.0; points.dim()],
                }),
                points: points.to_vecs(),
            };
            let out = match cli.output {
                OutputFormat::Json => to_json(&doc)?,
                OutputFormat::Text => points
                    .iter()
                    .map(|p| p.iter().map(|x| format!("{x:?}")).collect::<Vec<_>>().join(",") + "\n")
                    .collect(),
            };
            Ok((out, EXIT_OK))
        }
        Command::ApproxBox(a) | Command::ApproxCube(a) => {
            let cube = matches!(cli.command, Command::ApproxCube(_));
            let opts = ApproxOptions::new(a.epsilon)
                .seed(default_seed(a.seed)?)
                .jitter(!a.no_jitter)
                .strategy(a.strategy.into())
                .threads(threads);
            let report = approx_report(&load(&a.input)?, &opts, cube)?;
            Ok((render(&report, cli.output)?, EXIT_OK))
        }
        Command::ExactBox(e) | Command::ExactCube(e) => {
            let cube = matches!(cli.command, Command::ExactCube(_));
            let data = load(&e.input)?;
            let guard = ScaleGuard { force: e.force };
            let (n, d) = (data.points.len(), data.points.dim());
            if e.force && guard_exceeded(n, d) {
                stderr.push_str(&format!(
                    "warning: forcing the oracle past its size limit; about {:.2e} steps\n",
                    ScaleGuard::cost_estimate(n, d)
                ));
            }
            let report = with_threads(threads, || exact_report(&data, guard, cube))??;
            Ok((render(&report, cli.output)?, EXIT_OK))
        }
        Command::RestrictedCount {
            input,
            format,
            counts,
            force,
        } => {
            let data = match (input, counts.is_empty()) {
                (Some(path), _) => ingest(path, *format)?,
                (None, false) => {
                    let raw = restricted_lb_construction(counts)?;
                    let n: usize = counts.iter().sum();
                    let points = embed_in_unit_cube(&raw, default_margin(n))?;
                    Ingested {
                        region: OpenBox::unit(points.dim()),
                        points,
                        region_given: true,
                    }
                }
                (None, true) => return Err(Error::InvalidArgument("give --input or --counts".into())),
            };
            let guard = ScaleGuard { force: *force };
            let report = with_threads(threads, || restricted_report(&data, guard))??;
            Ok((render(&report, cli.output)?, EXIT_OK))
        }
        Command::Bounds { n, dim, epsilon } => {
            let mut bounds = vec![bounds_ad(*n, *dim)?, bounds_aprime(*n, *dim)?, restricted_count_bounds(*n, *dim)?];
            if let Some(eps) = epsilon {
                bounds.extend(algorithm_count_bounds(*n, *dim, *eps)?.reports());
            }
            let out = match cli.output {
                OutputFormat::Json => to_json(&serde_json::json!({
                    "schema": SCHEMA,
                    "command": "bounds",
                    "n": n,
                    "dimension": dim,
                    "bounds": bounds,
                }))?,
                OutputFormat::Text => bounds.iter().map(bound_line).collect(),
            };
            Ok((out, EXIT_OK))
        }
        Command::Verify { quick } => {
            let config = if *quick {
                verify::VerifyConfig::quick()
            } else {
                verify::VerifyConfig::full()
            };
            let summary = with_threads(threads, || verify::run_all(&config))?;
            let out = match cli.output {
                OutputFormat::Json => to_json(&summary)?,
                OutputFormat::Text => summary.lines().join("\n") + "\n",
            };
            Ok((out, if summary.passed { EXIT_OK } else { EXIT_VERIFY }))
        }
    }
}

fn guard_exceeded(n: usize, d: usize) -> bool {
    ScaleGuard::default().check(n, d).is_err()
}

fn load(args: &InputArgs) -> Result<Ingested> {
    let mut data = ingest(&args.input, args.format)?;
    if args.dedup {
        data.points = data.points.dedup();
    }
    Ok(data)
}

pub fn generate(generator: Generator, n: usize, dim: usize, seed: u64, counts: &[usize]) -> Result<PointSet> {
    match generator {
        Generator::Vdc => Ok(van_der_corput(n)),
        Generator::Halton => halton_hammersley(n, dim),
        Generator::RestrictedLb => {
            let raw = restricted_lb_construction(counts)?;
            embed_in_unit_cube(&raw, default_margin(raw.len()))
        }
        Generator::Grid => {
            if dim == 0 {
                return Err(Error::InvalidDimension(dim));
            }
            grid_vertices(iroot(n as u64, dim as u32) as usize, dim)
        }
        Generator::Uniform => uniform_random(n, dim, seed),
        Generator::Tight2 => Ok(known_tight_config(TightConfig::TwoPointXi)),
        Generator::Tight4 => Ok(known_tight_config(TightConfig::FourPointQuarter)),
    }
}

struct Normalized {
    unit: PointSet,
    transform: AffineTransform,
}

fn normalize(data: &Ingested) -> Result<Normalized> {
    let (unit, transform) = normalize_to_unit(&data.points, &data.region)?;
    Ok(Normalized { unit, transform })
}

fn base_report(command: &str, data: &Ingested, norm: &Normalized) -> RunReport {
    RunReport {
        schema: SCHEMA,
        command: command.to_string(),
        dimension: data.points.dim(),
        n: data.points.len(),
        n_interior: norm.unit.len(),
        region: data.region.clone(),
        parameters: None,
        result: None,
        volume: None,
        exponents: None,
        anchor: None,
        stats: None,
        restricted_count: None,
        bounds: Vec::new(),
        duration_ms: 0.0,
    }
}

fn attach_box(report: &mut RunReport, unit: OpenBox, norm: &Normalized) -> Result<()> {
    let input = norm.transform.invert_box(&unit)?;
    report.volume = Some(VolumePair {
        unit: unit.volume(),
        input: input.volume(),
    });
    report.result = Some(BoxPair { unit, input });
    Ok(())
}

/// Runs the approximation on ingested data.
pub fn approx_report(data: &Ingested, opts: &ApproxOptions, cube: bool) -> Result<RunReport> {
    let start = Instant::now();
    let norm = normalize(data)?;
    let r: SearchResult = if cube {
        approx_max_empty_cube(&norm.unit, opts)?
    } else {
        approx_max_empty_box(&norm.unit, opts)?
    };
    let (n, d) = (norm.unit.len(), norm.unit.dim());
    let mut report = base_report(if cube { "approx-cube" } else { "approx-box" }, data, &norm);
    report.parameters = Some(Parameters {
        epsilon: opts.epsilon,
        seed: opts.seed,
        jitter: opts.jitter,
        strategy: opts.strategy,
    });
    attach_box(&mut report, r.best_box.clone(), &norm)?;
    report.exponents = Some(r.exponents.clone());
    report.anchor = Some(r.anchor.clone());
    report.stats = Some(r.stats.clone());
    if d >= 2 {
        if cube {
            report.bounds.push(bounds_aprime(n, d)?);
        } else {
            report.bounds.push(bounds_ad(n, d)?);
            report.bounds.extend(algorithm_count_bounds(n, d, opts.epsilon)?.reports());
        }
    }
    report.duration_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(report)
}

pub fn exact_report(data: &Ingested, guard: ScaleGuard, cube: bool) -> Result<RunReport> {
    let start = Instant::now();
    let norm = normalize(data)?;
    let (bx, _) = if cube {
        exact_max_empty_cube(&norm.unit, guard)?
    } else {
        exact_max_empty_box(&norm.unit, guard)?
    };
    let (n, d) = (norm.unit.len(), norm.unit.dim());
    let mut report = base_report(if cube { "exact-cube" } else { "exact-box" }, data, &norm);
    attach_box(&mut report, bx, &norm)?;
    if d >= 2 {
        report.bounds.push(if cube { bounds_aprime(n, d)? } else { bounds_ad(n, d)? });
    }
    report.duration_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(report)
}

/// Counts maximal empty boxes in the region, in input units.
pub fn restricted_report(data: &Ingested, guard: ScaleGuard) -> Result<RunReport> {
    let start = Instant::now();
    let norm = normalize(data)?;
    let boxes = enumerate_restricted_boxes(&data.points, &data.region, guard)?;
    let mut report = base_report("restricted-count", data, &norm);
    report.restricted_count = Some(boxes.len());
    if data.points.dim() >= 2 {
        report.bounds.push(restricted_count_bounds(data.points.len(), data.points.dim())?);
    }
    report.duration_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(report)
}

fn bound_line(b: &BoundReport) -> String {
    let q = serde_json::to_value(b.quantity)
        .ok()
        .and_then(|v| v.as_str().map(String::from))
        .unwrap_or_default();
    format!("{q} n={} d={}: lower {} upper {}\n", b.n, b.d, b.lower, b.upper)
}

fn render(report: &RunReport, format: OutputFormat) -> Result<String> {
    if format == OutputFormat::Json {
        return to_json(report);
    }
    let mut s = format!(
        "{}: d={} n={} ({} interior)\n",
        report.command, report.dimension, report.n, report.n_interior
    );
    if let (Some(b), Some(v)) = (&report.result, &report.volume) {
        s += &format!("box (unit):  lo {:?} hi {:?} volume {}\n", b.unit.lo(), b.unit.hi(), v.unit);
        s += &format!("box (input): lo {:?} hi {:?} volume {}\n", b.input.lo(), b.input.hi(), v.input);
    }
    if let Some(c) = report.restricted_count {
        s += &format!("maximal empty boxes: {c}\n");
    }
    if let Some(st) = &report.stats {
        s += &format!(
            "canonical boxes {} placements {} strategy {:?} epsilon_effective {}\n",
            st.canonical_boxes_enumerated, st.placements_tested, st.strategy, st.epsilon_effective
        );
    }
    for b in &report.bounds {
        s += &bound_line(b);
    }
    s += &format!("time {:.1} ms\n", report.duration_ms);
    Ok(s)
}
