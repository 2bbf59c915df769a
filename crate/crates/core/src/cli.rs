//! Command-line front end.
//!
//! Reports go to standard output, diagnostics and count footers to standard
//! error. Exit codes: 0 success, 1 verification failure, 2 usage or input
//! error.

use std::io::{self, BufRead, BufWriter, Cursor, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::bounds::{bound_values, residuals};
use crate::enumerate::{
    augmentation_branches, free_trees, open_graph6_source, read_graph6_stream, ErrorPolicy, CONNECTED_EXTENDED_ORDER,
    CONNECTED_MAX_ORDER,
};
use crate::families;
use crate::graph::{distance_matrix, to_graph6, transmission_profile, Graph};
use crate::json::{self, format_f17, SCHEMA};
use crate::spectral::{irregularity_from_parts, DEFAULT_TOLERANCE};
use crate::verify::{scan_stream, verify_theorem1, verify_theorem2, Measure, VerificationReport, VerifyError, VerifyOptions};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

pub const BOUNDS_MAX_ORDER: usize = 1_000_000;

#[derive(Debug, Parser)]
#[command(name = "transit-spectra", version, about = "Distance-spectral irregularity of connected graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Eigensolver residual tolerance.
    #[arg(long, global = true, default_value_t = DEFAULT_TOLERANCE, value_parser = positive_real)]
    pub tol: f64,
    /// Tolerance for attaining a minimum.
    #[arg(long, global = true, default_value_t = 1e-8, value_parser = positive_real)]
    pub tie_tol: f64,
    /// Output format; the default depends on the subcommand.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Worker threads (default: available cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    pub jobs: Option<u16>,
    /// What to do with unreadable or invalid input lines.
    #[arg(long, global = true, value_enum, default_value_t = OnError::Abort)]
    pub on_error: OnError,
}

fn positive_real(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(format!("expected a positive real, got {s}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OnError {
    Skip,
    Abort,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MeasureArg {
    Sigma,
    Tau,
}

impl From<MeasureArg> for Measure {
    fn from(m: MeasureArg) -> Self {
        match m {
            MeasureArg::Sigma => Measure::Sigma,
            MeasureArg::Tau => Measure::Tau,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Transmission and spectral data for graph6 inputs.
    Analyze(AnalyzeArgs),
    /// Exhaustively verify a lower bound at order n.
    Verify(VerifyArgs),
    /// Evaluate the closed-form bounds.
    Bounds(BoundsArgs),
    /// Print a named graph as graph6.
    Construct {
        #[command(subcommand)]
        family: Family,
    },
    /// List graphs of a class up to isomorphism, one graph6 per line.
    Enumerate(EnumerateArgs),
}

#[derive(Debug, clap::Args)]
pub struct AnalyzeArgs {
    /// graph6 strings; standard input is read when none are given and --input is absent.
    pub graphs: Vec<String>,
    /// graph6 file (optionally gzipped) or `-` for standard input.
    #[arg(long, conflicts_with = "graphs")]
    pub input: Option<PathBuf>,
    /// Aggregate the inputs into one report instead of per-graph records.
    #[arg(long)]
    pub scan: bool,
    /// Measure minimized by --scan.
    #[arg(long, value_enum, default_value_t = MeasureArg::Tau)]
    pub measure: MeasureArg,
}

#[derive(Debug, clap::Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
    pub theorem: u8,
    /// Theorem 1 defaults to tau; theorem 2 reports both unless one is chosen.
    #[arg(long, value_enum)]
    pub measure: Option<MeasureArg>,
}

#[derive(Debug, clap::Args)]
pub struct BoundsArgs {
    #[arg(long, conflicts_with_all = ["from", "to"])]
    pub n: Option<usize>,
    #[arg(long, requires = "to")]
    pub from: Option<usize>,
    #[arg(long, requires = "from")]
    pub to: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Family {
    Star { n: usize },
    Complete { n: usize },
    Path { n: usize },
    Cycle { n: usize },
    Wheel { n: usize },
    /// Complete multipartite graph with the given part sizes.
    Multipartite {
        #[arg(required = true)]
        parts: Vec<usize>,
    },
    /// Apex joined to a cocktail-party graph (odd n).
    CocktailApex { n: usize },
    /// All (n-4)-DVDR graphs on even n.
    ExtremalEven { n: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GraphClassArg {
    Trees,
    Connected,
}

#[derive(Debug, clap::Args)]
pub struct EnumerateArgs {
    #[arg(value_enum)]
    pub class: GraphClassArg,
    pub n: usize,
    /// Allow connected graphs of order 10.
    #[arg(long)]
    pub allow_large: bool,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl From<VerifyError> for CliError {
    fn from(e: VerifyError) -> Self {
        CliError::Usage(e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Status {
    Pass,
    Fail,
}

type CliResult = Result<Status, CliError>;

/// Runs a parsed command line and returns the process exit code.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    if let Some(jobs) = cli.jobs {
        // only the first pool configuration in a process takes effect
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs as usize).build_global();
    }
    let mut out = BufWriter::new(out);
    let result = match &cli.command {
        Command::Analyze(args) => analyze(cli, args, &mut out, err),
        Command::Verify(args) => verify(cli, args, &mut out),
        Command::Bounds(args) => bounds(cli, args, &mut out),
        Command::Construct { family } => construct(family, &mut out),
        Command::Enumerate(args) => enumerate(args, &mut out, err),
    };
    let result = result.and_then(|status| out.flush().map(|_| status).map_err(CliError::from));
    match result {
        Ok(Status::Pass) => EXIT_PASS,
        Ok(Status::Fail) => EXIT_FAIL,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn options(cli: &Cli) -> VerifyOptions {
    VerifyOptions { tol: cli.tol, tie_tol: cli.tie_tol, ..VerifyOptions::default() }
}

fn policy(cli: &Cli) -> ErrorPolicy {
    match cli.on_error {
        OnError::Skip => ErrorPolicy::Skip,
        OnError::Abort => ErrorPolicy::Abort,
    }
}

/// Reads every graph from the analyze inputs. Bad lines abort or are
/// reported to `err`, per the policy.
fn read_inputs(cli: &Cli, args: &AnalyzeArgs, err: &mut dyn Write) -> Result<Vec<Graph>, CliError> {
    let source: Box<dyn BufRead> = match (&args.input, args.graphs.is_empty()) {
        (Some(path), _) => open_graph6_source(path)
            .map_err(|e| CliError::Usage(format!("cannot open {}: {e}", path.display())))?,
        (None, false) => Box::new(Cursor::new(args.graphs.join("\n"))),
        (None, true) => open_graph6_source(std::path::Path::new("-"))?,
    };
    let mut stream = read_graph6_stream(source, policy(cli));
    let mut graphs = Vec::new();
    for item in stream.by_ref() {
        graphs.push(item.map_err(|e| CliError::Usage(e.to_string()))?);
    }
    for d in stream.diagnostics() {
        writeln!(err, "skipped: {d}")?;
    }
    Ok(graphs)
}

#[derive(Serialize)]
struct DvdrRecord {
    apex: usize,
    r: usize,
}

#[derive(Serialize)]
struct AnalyzeRecord {
    schema: &'static str,
    graph6: String,
    n: usize,
    transmissions: Vec<u64>,
    wiener: u64,
    gap: u64,
    d_max: u64,
    d_min: u64,
    #[serde(serialize_with = "json::f17")]
    distance_radius: f64,
    #[serde(serialize_with = "json::f17")]
    dsl_radius: f64,
    #[serde(serialize_with = "json::f17")]
    sigma: f64,
    #[serde(serialize_with = "json::f17")]
    tau: f64,
    transmission_regular: bool,
    dvdr: Option<DvdrRecord>,
}

fn analyze_one(g: &Graph, tol: f64) -> Result<AnalyzeRecord, String> {
    let graph6 = to_graph6(g).map_err(|e| e.to_string())?;
    let d = distance_matrix(g).map_err(|e| format!("{graph6}: {e}"))?;
    let p = transmission_profile(&d);
    let irr = irregularity_from_parts(&d, &p, tol).map_err(|e| format!("{graph6}: {e}"))?;
    Ok(AnalyzeRecord {
        schema: SCHEMA,
        graph6,
        n: g.order(),
        transmission_regular: p.is_transmission_regular(),
        transmissions: p.transmissions,
        wiener: p.wiener,
        gap: p.gap,
        d_max: p.d_max,
        d_min: p.d_min,
        distance_radius: irr.distance_radius,
        dsl_radius: irr.dsl_radius,
        sigma: irr.sigma,
        tau: irr.tau,
        dvdr: families::is_dvdr(g).map(|w| DvdrRecord { apex: w.apex, r: w.r }),
    })
}

fn join<T: ToString>(xs: &[T], sep: &str) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

fn analyze(cli: &Cli, args: &AnalyzeArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    let graphs = read_inputs(cli, args, err)?;
    if args.scan {
        let report = scan_stream(graphs, args.measure.into(), &options(cli))?;
        return write_reports(cli, "scan", report.order, &[report], out);
    }
    let format = cli.format.unwrap_or(Format::Plain);
    if format == Format::Csv {
        writeln!(out, "graph6,n,transmissions,wiener,gap,d_max,d_min,distance_radius,dsl_radius,sigma,tau,transmission_regular,dvdr_apex,dvdr_r")?;
    }
    for g in &graphs {
        let rec = match analyze_one(g, cli.tol) {
            Ok(rec) => rec,
            Err(msg) if cli.on_error == OnError::Skip => {
                writeln!(err, "skipped: {msg}")?;
                continue;
            }
            Err(msg) => return Err(CliError::Usage(msg)),
        };
        let (apex, r) = rec.dvdr.as_ref().map_or((String::new(), String::new()), |w| (w.apex.to_string(), w.r.to_string()));
        match format {
            Format::Json => writeln!(out, "{}", serde_json::to_string(&rec).expect("record serializes"))?,
            Format::Csv => writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{},{},{apex},{r}",
                rec.graph6,
                rec.n,
                join(&rec.transmissions, ";"),
                rec.wiener,
                rec.gap,
                rec.d_max,
                rec.d_min,
                format_f17(rec.distance_radius),
                format_f17(rec.dsl_radius),
                format_f17(rec.sigma),
                format_f17(rec.tau),
                rec.transmission_regular,
            )?,
            Format::Plain => writeln!(
                out,
                "{} n={} D=[{}] W={} gap={} D_max={} D_min={} dist_radius={} dsl_radius={} sigma={} tau={} TR={} DVDR={}",
                rec.graph6,
                rec.n,
                join(&rec.transmissions, ","),
                rec.wiener,
                rec.gap,
                rec.d_max,
                rec.d_min,
                rec.distance_radius,
                rec.dsl_radius,
                rec.sigma,
                rec.tau,
                rec.transmission_regular,
                rec.dvdr.as_ref().map_or("none".to_string(), |w| format!("apex {} r={}", w.apex, w.r)),
            )?,
        }
    }
    Ok(Status::Pass)
}

#[derive(Serialize)]
struct ReportDocument<'a> {
    schema: &'static str,
    kind: &'a str,
    order: usize,
    passed: bool,
    reports: &'a [VerificationReport],
}

fn write_reports(cli: &Cli, kind: &str, order: usize, reports: &[VerificationReport], out: &mut dyn Write) -> CliResult {
    let passed = reports.iter().all(|r| r.passed);
    match cli.format.unwrap_or(Format::Json) {
        Format::Json => {
            let doc = ReportDocument { schema: SCHEMA, kind, order, passed, reports };
            serde_json::to_writer_pretty(&mut *out, &doc).map_err(io::Error::from)?;
            writeln!(out)?;
        }
        Format::Csv => {
            writeln!(out, "kind,order,class,measure,passed,population,transmission_regular_excluded,non_transmission_regular,certified_min,bound,gap_to_bound,runner_up,runner_up_margin,witnesses")?;
            let f = |x: Option<f64>| x.map(format_f17).unwrap_or_default();
            for r in reports {
                writeln!(
                    out,
                    "{kind},{},{},{},{},{},{},{},{},{},{},{},{},{}",
                    r.order,
                    serde_plain(&r.class),
                    r.measure.name(),
                    r.passed,
                    r.population,
                    r.transmission_regular_excluded,
                    r.non_transmission_regular,
                    f(r.certified_min),
                    f(r.bound),
                    f(r.gap_to_bound),
                    f(r.runner_up),
                    f(r.runner_up_margin),
                    r.witness_graph6().join(";"),
                )?;
            }
        }
        Format::Plain => {
            for r in reports {
                let f = |x: Option<f64>| x.map_or("-".to_string(), |v| v.to_string());
                writeln!(
                    out,
                    "{kind} n={} class={} measure={}: {} population={} excluded_tr={} min={} bound={} gap={} runner_up={} witnesses={}",
                    r.order,
                    serde_plain(&r.class),
                    r.measure.name(),
                    if r.passed { "PASS" } else { "FAIL" },
                    r.population,
                    r.transmission_regular_excluded,
                    f(r.certified_min),
                    f(r.bound),
                    f(r.gap_to_bound),
                    f(r.runner_up),
                    r.witness_graph6().join(","),
                )?;
                for (name, c) in &r.checks {
                    writeln!(out, "  [{}] {name}: {}", if c.passed { "pass" } else { "FAIL" }, c.detail)?;
                }
                for note in &r.notes {
                    writeln!(out, "  note: {note}")?;
                }
            }
        }
    }
    Ok(if passed { Status::Pass } else { Status::Fail })
}

fn serde_plain<T: Serialize>(v: &T) -> String {
    serde_json::to_value(v).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default()
}

fn verify(cli: &Cli, args: &VerifyArgs, out: &mut dyn Write) -> CliResult {
    let opts = options(cli);
    let reports = match args.theorem {
        1 => vec![verify_theorem1(args.n, args.measure.unwrap_or(MeasureArg::Tau).into(), &opts)?],
        _ => {
            let (sigma, tau) = verify_theorem2(args.n, &opts)?;
            match args.measure {
                None => vec![sigma, tau],
                Some(MeasureArg::Sigma) => vec![sigma],
                Some(MeasureArg::Tau) => vec![tau],
            }
        }
    };
    let kind = if args.theorem == 1 { "theorem1" } else { "theorem2" };
    write_reports(cli, kind, args.n, &reports, out)
}

#[derive(Serialize)]
struct BoundRow {
    n: usize,
    gamma: u32,
    eta: usize,
    #[serde(serialize_with = "json::f17")]
    tau_n: f64,
    #[serde(serialize_with = "json::f17")]
    sigma_tree: f64,
    #[serde(serialize_with = "json::f17")]
    tau_tree: f64,
    #[serde(serialize_with = "json::f17_seq")]
    residuals: Vec<f64>,
}

fn bounds(cli: &Cli, args: &BoundsArgs, out: &mut dyn Write) -> CliResult {
    let (from, to) = match (args.n, args.from, args.to) {
        (Some(n), _, _) => (n, n),
        (None, Some(a), Some(b)) => (a, b),
        _ => return Err(CliError::Usage("give --n or both --from and --to".to_string())),
    };
    if from < 3 || to > BOUNDS_MAX_ORDER || from > to {
        return Err(CliError::Usage(format!("range must satisfy 3 <= from <= to <= {BOUNDS_MAX_ORDER}")));
    }
    let format = cli.format.unwrap_or(Format::Csv);
    match format {
        Format::Csv => writeln!(out, "n,gamma,eta,tau_n,sigma_tree,tau_tree,residual_tau_n,residual_sigma_tree,residual_tau_tree")?,
        Format::Json => write!(out, "{{\"schema\":\"{SCHEMA}\",\"rows\":[")?,
        Format::Plain => {}
    }
    for n in from..=to {
        let b = bound_values(n).map_err(|e| CliError::Usage(e.to_string()))?;
        let r = residuals(&b);
        match format {
            Format::Csv => writeln!(
                out,
                "{n},{},{},{},{},{},{},{},{}",
                b.gamma,
                b.eta,
                format_f17(b.tau_n),
                format_f17(b.sigma_tree),
                format_f17(b.tau_tree),
                format_f17(r[0]),
                format_f17(r[1]),
                format_f17(r[2]),
            )?,
            Format::Json => {
                let row = BoundRow {
                    n,
                    gamma: b.gamma,
                    eta: b.eta,
                    tau_n: b.tau_n,
                    sigma_tree: b.sigma_tree,
                    tau_tree: b.tau_tree,
                    residuals: r.to_vec(),
                };
                if n > from {
                    write!(out, ",")?;
                }
                serde_json::to_writer(&mut *out, &row).map_err(io::Error::from)?;
            }
            Format::Plain => writeln!(
                out,
                "n={n} gamma={} eta={} tau_n={} sigma_tree={} tau_tree={} residuals=[{:e}, {:e}, {:e}]",
                b.gamma, b.eta, b.tau_n, b.sigma_tree, b.tau_tree, r[0], r[1], r[2]
            )?,
        }
    }
    if format == Format::Json {
        writeln!(out, "]}}")?;
    }
    Ok(Status::Pass)
}

fn construct(family: &Family, out: &mut dyn Write) -> CliResult {
    let graphs = match family {
        Family::Star { n } => vec![families::star(*n)],
        Family::Complete { n } => vec![families::complete(*n)],
        Family::Path { n } => vec![families::path(*n)],
        Family::Cycle { n } => vec![families::cycle(*n)],
        Family::Wheel { n } => vec![families::wheel(*n)],
        Family::Multipartite { parts } => vec![families::complete_multipartite(parts)],
        Family::CocktailApex { n } => vec![families::cocktail_apex(*n)],
        Family::ExtremalEven { n } => match families::extremal_even_family(*n) {
            Ok(gs) => gs.into_iter().map(Ok).collect(),
            Err(e) => vec![Err(e)],
        },
    };
    for g in graphs {
        let g = g.map_err(|e| CliError::Usage(e.to_string()))?;
        writeln!(out, "{}", to_graph6(&g).map_err(|e| CliError::Usage(e.to_string()))?)?;
    }
    Ok(Status::Pass)
}

fn enumerate(args: &EnumerateArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    let usage = |e: crate::enumerate::EnumerateError| CliError::Usage(e.to_string());
    let line = |g: &Graph| to_graph6(g).expect("enumerated orders fit graph6");
    let count = match args.class {
        GraphClassArg::Trees => {
            let mut count = 0usize;
            for t in free_trees(args.n).map_err(usage)? {
                writeln!(out, "{}", line(&t))?;
                count += 1;
            }
            count
        }
        GraphClassArg::Connected => {
            let cap = if args.allow_large { CONNECTED_EXTENDED_ORDER } else { CONNECTED_MAX_ORDER };
            if args.n == 0 || args.n > cap {
                let hint = if args.n == CONNECTED_EXTENDED_ORDER { " (use --allow-large)" } else { "" };
                return Err(CliError::Usage(format!("connected enumeration needs 1 <= n <= {cap}, got {}{hint}", args.n)));
            }
            // branches are generated in parallel and written in their sequential order
            let chunks: Vec<(usize, String)> = augmentation_branches(args.n, true)
                .into_par_iter()
                .map(|branch| {
                    let mut text = String::new();
                    let mut count = 0;
                    for g in branch {
                        text.push_str(&line(&g));
                        text.push('\n');
                        count += 1;
                    }
                    (count, text)
                })
                .collect();
            let mut count = 0;
            for (c, text) in chunks {
                out.write_all(text.as_bytes())?;
                count += c;
            }
            count
        }
    };
    writeln!(err, "count: {count}")?;
    Ok(Status::Pass)
}
