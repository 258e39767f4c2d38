//! Command-line reports for the `polymer-heaps` library.
//!
//! [`run`] parses arguments, executes one subcommand and writes its report.
//! Exit codes: 0 on success, 1 when a verification or asymptotic check
//! fails, 2 on usage errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use polymer_heaps::animal::{count_animals, enumerate_animals_with_budget, AnimalClass, Budget};
use polymer_heaps::asymptotics::{
    check_directed_asymptotics, check_multi_growth, constants_report, directed_ratios,
    find_constants, AsymptoticConstants, DirectedRatios, MultiGrowthReport, Report, ReportEntry,
    DEFAULT_LAMBDA_ORDER,
};
use polymer_heaps::bijection::{for_each_heap, HeapClass};
use polymer_heaps::series::NamedSeries;
use polymer_heaps::verify::{Suite, SuiteReport, LEMMA_KMAX};

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "POLYMER_HEAPS_THREADS";

const MAX_AREA_GUARD: usize = 14;
const MAX_ORDER_GUARD: usize = 5000;
/// Heap counting for the `ak` suite uses bitmasks of `order + k` cells.
const MAX_AK_ORDER: usize = 64 - LEMMA_KMAX as usize;

#[derive(Debug, Parser)]
#[command(
    name = "polymer-heaps",
    version,
    about = "Heaps of polymers, directed and multi-directed animals"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    /// Write the report to this file instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Lift the limits on --max-area (14), --order and --n (5000).
    #[arg(long, global = true)]
    force: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Coefficients of a generating function.
    Series {
        #[arg(long, value_parser = ["S", "R", "Q", "D", "M", "B", "LW", "Dj"])]
        which: String,
        #[arg(long)]
        order: usize,
        /// Left half-width for `--which Dj`.
        #[arg(long)]
        j: Option<u32>,
    },
    /// Counts of animals or heaps by area; every class when --class is absent.
    Enumerate {
        #[arg(long, value_enum)]
        class: Option<Class>,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        max_area: u64,
        /// Also list the objects themselves (JSON only).
        #[arg(long)]
        emit_objects: bool,
    },
    /// Exhaustive consistency checks.
    Verify {
        #[arg(long = "suite", required = true, value_parser = parse_suite)]
        suites: Vec<Suite>,
        #[arg(long, default_value_t = 8)]
        max_area: usize,
        #[arg(long, default_value_t = 14)]
        order: usize,
    },
    /// Singularity constants and convergence diagnostics.
    Asymptotics {
        #[arg(long, value_enum)]
        which: Diagnostic,
        /// Coefficient index: amplitude order for `constants` (default 300),
        /// largest n for `directed` (default 1000) and `multi` (default 300).
        #[arg(long)]
        n: Option<usize>,
    },
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Class {
    Half,
    Directed,
    Multi,
    All,
    ConnectedHeaps,
    Heaps,
}

impl Class {
    /// Side-by-side order: each animal class contains the previous one.
    const ORDER: [Class; 6] = [
        Class::Half,
        Class::Directed,
        Class::Multi,
        Class::All,
        Class::ConnectedHeaps,
        Class::Heaps,
    ];

    fn name(&self) -> &'static str {
        match self {
            Class::Half => "half",
            Class::Directed => "directed",
            Class::Multi => "multi",
            Class::All => "all",
            Class::ConnectedHeaps => "connected-heaps",
            Class::Heaps => "heaps",
        }
    }

    fn kind(&self) -> Kind {
        match self {
            Class::Half => Kind::Animals(AnimalClass::Half),
            Class::Directed => Kind::Animals(AnimalClass::Directed),
            Class::Multi => Kind::Animals(AnimalClass::Multi),
            Class::All => Kind::Animals(AnimalClass::All),
            Class::ConnectedHeaps => Kind::Heaps(HeapClass::Connected),
            Class::Heaps => Kind::Heaps(HeapClass::All),
        }
    }
}

enum Kind {
    Animals(AnimalClass),
    Heaps(HeapClass),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Diagnostic {
    Constants,
    Directed,
    Multi,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Io(String),
}

type Outcome<T> = Result<T, Failure>;

/// A rendered report and whether every check in it passed.
struct Rendered {
    text: String,
    pass: bool,
}

/// Runs the command line `args` (program name first), writing the report to
/// `out` (unless `--output` is given) and diagnostics to `err`. Returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(rendered.as_bytes())
            } else {
                err.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match execute_in_pool(&cli).and_then(|r| emit(&cli, r, out)) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}\n\nFor more information, try '--help'.");
            2
        }
        Err(Failure::Io(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn emit(cli: &Cli, r: Rendered, out: &mut dyn Write) -> Outcome<bool> {
    match &cli.output {
        Some(path) => {
            fs::write(path, &r.text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?
        }
        None => out
            .write_all(r.text.as_bytes())
            .map_err(|e| Failure::Io(e.to_string()))?,
    }
    Ok(r.pass)
}

fn execute_in_pool(cli: &Cli) -> Outcome<Rendered> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => {
            let threads: usize = v.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
                Failure::Usage(format!(
                    "{THREADS_ENV} must be a positive integer, got '{v}'"
                ))
            })?;
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .map_err(|e| Failure::Io(e.to_string()))?;
            pool.install(|| execute(cli))
        }
        Err(_) => execute(cli),
    }
}

fn guard(cli: &Cli, flag: &str, value: usize, limit: usize) -> Outcome<()> {
    if value > limit && !cli.force {
        return Err(Failure::Usage(format!(
            "{flag} {value} exceeds {limit}; pass --force to run anyway"
        )));
    }
    Ok(())
}

fn execute(cli: &Cli) -> Outcome<Rendered> {
    match &cli.command {
        Command::Series { which, order, j } => {
            guard(cli, "--order", *order, MAX_ORDER_GUARD)?;
            series(cli.format, resolve_series(which, *j)?, *order)
        }
        Command::Enumerate {
            class,
            max_area,
            emit_objects,
        } => {
            let max_area = *max_area as usize;
            guard(cli, "--max-area", max_area, MAX_AREA_GUARD)?;
            if *emit_objects && cli.format == Format::Csv {
                return Err(Failure::Usage(
                    "--emit-objects requires --format json".into(),
                ));
            }
            let classes = match class {
                Some(c) => vec![*c],
                None => Class::ORDER.to_vec(),
            };
            enumerate(cli.format, &classes, max_area, *emit_objects)
        }
        Command::Verify {
            suites,
            max_area,
            order,
        } => {
            guard(cli, "--max-area", *max_area, MAX_AREA_GUARD)?;
            guard(cli, "--order", *order, MAX_ORDER_GUARD)?;
            if suites.contains(&Suite::Ak) && *order > MAX_AK_ORDER {
                return Err(Failure::Usage(format!(
                    "the ak suite supports --order up to {MAX_AK_ORDER}"
                )));
            }
            verify(cli.format, suites, *max_area, *order)
        }
        Command::Asymptotics { which, n } => {
            if let Some(n) = n {
                guard(cli, "--n", *n, MAX_ORDER_GUARD)?;
            }
            asymptotics(cli.format, *which, *n)
        }
    }
}

fn resolve_series(which: &str, j: Option<u32>) -> Outcome<NamedSeries> {
    match (which, j) {
        ("Dj", Some(j)) => Ok(NamedSeries::Dj(j)),
        ("Dj", None) => Err(Failure::Usage("--which Dj needs --j".into())),
        (_, Some(_)) => Err(Failure::Usage("--j only applies to --which Dj".into())),
        (name, None) => name.parse().map_err(Failure::Usage),
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn csv_table(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("CSV of UTF-8 fields")
}

#[derive(Serialize)]
struct SeriesOutput {
    name: String,
    order: usize,
    coefficients: Vec<String>,
}

fn series(format: Format, which: NamedSeries, order: usize) -> Outcome<Rendered> {
    let coefficients: Vec<String> = which
        .compute(order)
        .integer_coefficients()
        .expect("named series are integral")
        .iter()
        .map(|c| c.to_string())
        .collect();
    let text = match format {
        Format::Json => json(&SeriesOutput {
            name: which.to_string(),
            order,
            coefficients,
        }),
        Format::Csv => csv_table(
            &["n", "coefficient"],
            coefficients
                .into_iter()
                .enumerate()
                .map(|(n, c)| vec![n.to_string(), c]),
        ),
    };
    Ok(Rendered { text, pass: true })
}

#[derive(Serialize)]
struct ClassCounts {
    class: &'static str,
    /// Entry `i` is the count at area `i + 1`.
    counts: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    objects: Option<Vec<Vec<serde_json::Value>>>,
}

#[derive(Serialize)]
struct EnumerateOutput {
    max_area: usize,
    classes: Vec<ClassCounts>,
}

fn class_counts(class: Class, max_area: usize, emit_objects: bool) -> ClassCounts {
    let (counts, objects) = match class.kind() {
        Kind::Animals(ac) => {
            let counts = count_animals(max_area, ac)[1..].to_vec();
            let objects = emit_objects.then(|| {
                let budget = Budget {
                    max_area_all: usize::MAX,
                    max_area_directed: usize::MAX,
                };
                (1..=max_area)
                    .map(|n| {
                        enumerate_animals_with_budget(n, ac, budget)
                            .expect("area is positive")
                            .iter()
                            .map(|a| serde_json::to_value(a).expect("animals serialize"))
                            .collect()
                    })
                    .collect()
            });
            (counts, objects)
        }
        Kind::Heaps(hc) => {
            let mut counts = Vec::with_capacity(max_area);
            let mut objects = Vec::new();
            for n in 1..=max_area {
                let mut count = 0u64;
                let mut heaps = Vec::new();
                for_each_heap(n, hc, |h| {
                    count += 1;
                    if emit_objects {
                        heaps.push(h);
                    }
                });
                heaps.sort_unstable();
                counts.push(count);
                objects.push(
                    heaps
                        .iter()
                        .map(|h| serde_json::to_value(h).expect("heaps serialize"))
                        .collect(),
                );
            }
            (counts, emit_objects.then_some(objects))
        }
    };
    ClassCounts {
        class: class.name(),
        counts,
        objects,
    }
}

fn enumerate(
    format: Format,
    classes: &[Class],
    max_area: usize,
    emit_objects: bool,
) -> Outcome<Rendered> {
    let results: Vec<ClassCounts> = classes
        .iter()
        .map(|&c| class_counts(c, max_area, emit_objects))
        .collect();
    let text = match format {
        Format::Json => json(&EnumerateOutput {
            max_area,
            classes: results,
        }),
        Format::Csv => {
            let header: Vec<&str> = std::iter::once("area")
                .chain(results.iter().map(|r| r.class))
                .collect();
            csv_table(
                &header,
                (0..max_area).map(|i| {
                    std::iter::once((i + 1).to_string())
                        .chain(results.iter().map(|r| r.counts[i].to_string()))
                        .collect()
                }),
            )
        }
    };
    Ok(Rendered { text, pass: true })
}

#[derive(Serialize)]
struct VerifyOutput {
    pass: bool,
    max_area: usize,
    order: usize,
    suites: Vec<SuiteReport>,
}

fn verify(format: Format, suites: &[Suite], max_area: usize, order: usize) -> Outcome<Rendered> {
    let mut suites = suites.to_vec();
    suites.sort();
    suites.dedup();
    let reports: Vec<SuiteReport> = suites.par_iter().map(|s| s.run(max_area, order)).collect();
    let pass = reports.iter().all(|r| r.pass);
    let text = match format {
        Format::Json => json(&VerifyOutput {
            pass,
            max_area,
            order,
            suites: reports,
        }),
        Format::Csv => csv_table(
            &["suite", "pass", "checked", "failures"],
            reports.into_iter().map(|r| {
                vec![
                    r.suite,
                    r.pass.to_string(),
                    r.checked.to_string(),
                    r.failure_count.to_string(),
                ]
            }),
        ),
    };
    Ok(Rendered { text, pass })
}

#[derive(Serialize)]
struct ConstantsOutput {
    pass: bool,
    constants: AsymptoticConstants,
    entries: Vec<ReportEntry>,
}

#[derive(Serialize)]
struct DirectedOutput {
    pass: bool,
    ratios: Vec<DirectedRatios>,
    entries: Vec<ReportEntry>,
}

#[derive(Serialize)]
struct MultiOutput {
    pass: bool,
    #[serde(flatten)]
    report: MultiGrowthReport,
}

fn entries_csv(entries: &[ReportEntry]) -> String {
    csv_table(
        &["constant", "computed", "target", "tolerance", "pass"],
        entries.iter().map(|e| {
            vec![
                e.constant.clone(),
                e.computed.to_string(),
                e.target.to_string(),
                e.tolerance.to_string(),
                e.pass.to_string(),
            ]
        }),
    )
}

fn asymptotics(format: Format, which: Diagnostic, n: Option<usize>) -> Outcome<Rendered> {
    let (text, pass) = match which {
        Diagnostic::Constants => {
            let constants = find_constants(n.unwrap_or(DEFAULT_LAMBDA_ORDER).max(1));
            let Report { entries } = constants_report(&constants);
            let pass = entries.iter().all(|e| e.pass);
            let text = match format {
                Format::Json => json(&ConstantsOutput {
                    pass,
                    constants,
                    entries,
                }),
                Format::Csv => entries_csv(&entries),
            };
            (text, pass)
        }
        Diagnostic::Directed => {
            let n = n.unwrap_or(1000);
            if n < 100 {
                return Err(Failure::Usage(
                    "asymptotics --which directed needs --n ≥ 100".into(),
                ));
            }
            let report = check_directed_asymptotics(n);
            let pass = report.pass();
            let text = match format {
                Format::Json => json(&DirectedOutput {
                    pass,
                    ratios: directed_ratios(&[100, n]),
                    entries: report.entries,
                }),
                Format::Csv => entries_csv(&report.entries),
            };
            (text, pass)
        }
        Diagnostic::Multi => {
            let n = n.unwrap_or(300);
            if n < 50 {
                return Err(Failure::Usage(
                    "asymptotics --which multi needs --n ≥ 50".into(),
                ));
            }
            let report = check_multi_growth(n);
            let pass = report.pass();
            let text = match format {
                Format::Json => json(&MultiOutput { pass, report }),
                Format::Csv => entries_csv(&report.entries),
            };
            (text, pass)
        }
    };
    Ok(Rendered { text, pass })
}
