//! Command-line front end.
//!
//! Exit codes: 0 success, 1 invariant violation, 2 usage or input error,
//! 3 resource limit.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::complex::MedianComplex;
use crate::error::{Error, Result};
use crate::format::{to_dot, ComplexFile};
use crate::generators::{generate, GeneratorSpec};
use crate::hyperclosure::{hyperclosure, oracle_hyperclosure, Limits, DEFAULT_ORACLE_BOUND};
use crate::verify::{run_suite, Suite};

pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "cubefactor",
    version,
    about = "Analyze finite CAT(0) cube complexes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a complex and write it as JSON.
    Build(BuildArgs),
    /// Compute the hyperclosure and write an analysis report.
    Analyze(AnalyzeArgs),
    /// Run randomized law checks.
    Verify(VerifyArgs),
    /// Compare the hyperclosure with the brute-force enumeration.
    Oracle(OracleArgs),
    /// Export Graphviz DOT with edges colored by hyperplane class.
    Export(ExportArgs),
}

#[derive(Debug, Args)]
struct BuildArgs {
    /// grid, box, tree, staircase, glued_staircase_ray, random_median, product or wedge
    #[arg(long, conflicts_with = "spec")]
    kind: Option<String>,
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    params: Vec<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Left factor for product and wedge, in compact spec form.
    #[arg(long)]
    left: Option<String>,
    #[arg(long)]
    right: Option<String>,
    #[arg(long)]
    left_vertex: Option<usize>,
    #[arg(long)]
    right_vertex: Option<usize>,
    /// Full compact spec, e.g. `product(grid:1,1;tree:5@2)`.
    #[arg(long)]
    spec: Option<String>,
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Debug, Args)]
struct LoadArgs {
    file: PathBuf,
    /// Load without checking the median-graph invariants.
    #[arg(long)]
    skip_validation: bool,
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    load: LoadArgs,
    #[arg(long, default_value_t = Limits::default().max_members)]
    max_members: usize,
    #[arg(long, default_value_t = Limits::default().max_grade)]
    max_grade: usize,
    #[arg(long)]
    with_oracle: bool,
    /// Report path; stdout when omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SuiteArg {
    All,
    Gates,
    Orth,
    Closure,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::All => Suite::All,
            SuiteArg::Gates => Suite::Gates,
            SuiteArg::Orth => Suite::Orth,
            SuiteArg::Closure => Suite::Closure,
        }
    }
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[command(flatten)]
    load: LoadArgs,
    #[arg(long, value_enum, default_value = "all")]
    suite: SuiteArg,
    #[arg(long, default_value_t = 200)]
    cases: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Args)]
struct OracleArgs {
    #[command(flatten)]
    load: LoadArgs,
    #[arg(long, default_value_t = DEFAULT_ORACLE_BOUND)]
    max_vertices: usize,
}

#[derive(Debug, Args)]
struct ExportArgs {
    #[command(flatten)]
    load: LoadArgs,
    #[arg(long)]
    dot: PathBuf,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexStats {
    pub vertices: usize,
    pub edges: usize,
    pub classes: usize,
    pub dimension: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicitySummary {
    pub max: usize,
    /// multiplicity -> number of vertices
    pub histogram: BTreeMap<usize, usize>,
}

/// Output of `analyze`. Field order is the serialization order.
///
/// When a limit stops the computation, `limits_hit` names it and the
/// hyperclosure fields are absent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub tool_version: String,
    pub spec_echo: Option<String>,
    pub validated: bool,
    pub complex_stats: ComplexStats,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub hyperclosure_size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub grade_histogram: Option<BTreeMap<usize, usize>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub multiplicity: Option<MultiplicitySummary>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub longest_chain: Option<usize>,
    pub oracle_checked: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub oracle_agrees: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub limits_hit: Option<String>,
}

impl AnalysisReport {
    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }
}

/// Runs the full analysis pipeline. Resource limits are reported in
/// `limits_hit` rather than as an error.
pub fn analyze(
    complex: &MedianComplex,
    spec_echo: Option<String>,
    limits: Limits,
    with_oracle: bool,
) -> Result<AnalysisReport> {
    let mut report = AnalysisReport {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        spec_echo,
        validated: complex.is_validated(),
        complex_stats: ComplexStats {
            vertices: complex.vertex_count(),
            edges: complex.edges().len(),
            classes: complex.class_count(),
            dimension: complex.dimension(),
        },
        hyperclosure_size: None,
        grade_histogram: None,
        multiplicity: None,
        longest_chain: None,
        oracle_checked: false,
        oracle_agrees: None,
        limits_hit: None,
    };
    let h = match hyperclosure(complex, limits) {
        Ok(h) => h,
        Err(Error::Resource { limit, .. }) => {
            report.limits_hit = Some(limit.to_string());
            return Ok(report);
        }
        Err(e) => return Err(e),
    };
    let m = h.multiplicity();
    report.hyperclosure_size = Some(h.len());
    report.grade_histogram = Some(h.grades_report());
    report.multiplicity = Some(MultiplicitySummary {
        max: m.max_multiplicity,
        histogram: m.histogram,
    });
    report.longest_chain = Some(h.longest_chain().0);
    if with_oracle {
        match oracle_hyperclosure(complex, DEFAULT_ORACLE_BOUND) {
            Ok(o) => {
                report.oracle_checked = true;
                report.oracle_agrees = Some(o == h.as_set());
            }
            Err(Error::Resource { limit, .. }) => report.limits_hit = Some(limit.to_string()),
            Err(e) => return Err(e),
        }
    }
    Ok(report)
}

/// Parses `argv` (including the program name) and runs the subcommand.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { 0 };
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Resource { .. } => EXIT_RESOURCE,
        Error::Internal(_) => EXIT_VIOLATION,
        _ => EXIT_USAGE,
    }
}

fn load(args: &LoadArgs) -> Result<(ComplexFile, MedianComplex)> {
    let file = ComplexFile::load(&args.file)?;
    let complex = file.to_complex(!args.skip_validation)?;
    Ok((file, complex))
}

fn write_or_print(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn build_spec(args: &BuildArgs) -> Result<GeneratorSpec> {
    if let Some(spec) = &args.spec {
        return spec.parse();
    }
    let kind = args
        .kind
        .as_deref()
        .ok_or_else(|| Error::Spec("one of --kind or --spec is required".into()))?;
    let factor = |s: &Option<String>, name: &str| -> Result<Box<GeneratorSpec>> {
        let s = s
            .as_deref()
            .ok_or_else(|| Error::Spec(format!("{kind} needs --{name}")))?;
        Ok(Box::new(s.parse()?))
    };
    match kind {
        "product" => Ok(GeneratorSpec::Product {
            left: factor(&args.left, "left")?,
            right: factor(&args.right, "right")?,
        }),
        "wedge" => Ok(GeneratorSpec::Wedge {
            left: factor(&args.left, "left")?,
            left_vertex: args.left_vertex.unwrap_or(0),
            right: factor(&args.right, "right")?,
            right_vertex: args.right_vertex.unwrap_or(0),
        }),
        _ => GeneratorSpec::from_parts(kind, &args.params, args.seed),
    }
}

fn dispatch(command: Command) -> Result<i32> {
    match command {
        Command::Build(args) => {
            let spec = build_spec(&args)?;
            let complex = generate(&spec)?;
            ComplexFile::from_complex(&complex, Some(spec.to_string())).save(&args.output)?;
            Ok(0)
        }
        Command::Analyze(args) => {
            let (file, complex) = load(&args.load)?;
            let limits = Limits {
                max_members: args.max_members,
                max_grade: args.max_grade,
            };
            let report = analyze(&complex, file.generator.clone(), limits, args.with_oracle)?;
            write_or_print(args.output.as_deref(), &report.to_json()?)?;
            if let Some(limit) = &report.limits_hit {
                eprintln!("error: resource limit exceeded: {limit}");
                return Ok(EXIT_RESOURCE);
            }
            Ok(0)
        }
        Command::Verify(args) => {
            let (file, complex) = load(&args.load)?;
            let report = run_suite(&complex, args.suite.into(), args.cases, args.seed)?;
            for law in &report.laws {
                let status = if law.violations.is_empty() {
                    "ok"
                } else {
                    "FAIL"
                };
                println!("{status:4} {:24} {} cases", law.law, law.cases);
            }
            if report.passed() {
                return Ok(0);
            }
            println!();
            for v in report.violations() {
                println!("violation {v}");
            }
            println!("reproduction complex:");
            print!("{}", file.to_json()?);
            println!(
                "suite={:?} cases={} seed={}",
                args.suite, args.cases, args.seed
            );
            Ok(EXIT_VIOLATION)
        }
        Command::Oracle(args) => {
            let (_, complex) = load(&args.load)?;
            let ours = hyperclosure(&complex, Limits::default())?.as_set();
            let theirs = oracle_hyperclosure(&complex, args.max_vertices)?;
            let mut differ = false;
            for f in ours.difference(&theirs) {
                println!("only in hyperclosure: {f}");
                differ = true;
            }
            for f in theirs.difference(&ours) {
                println!("only in oracle: {f}");
                differ = true;
            }
            if differ {
                return Ok(EXIT_VIOLATION);
            }
            println!("agree: {} members", ours.len());
            Ok(0)
        }
        Command::Export(args) => {
            let (_, complex) = load(&args.load)?;
            std::fs::write(&args.dot, to_dot(&complex))?;
            Ok(0)
        }
    }
}
