//! Command-line front end.  Every subcommand reads and writes the
//! documented JSON bundles on stdin/stdout (or files named with
//! `--input`/`--output`), so invocations compose under shell pipes:
//!
//! ```text
//! qecc-forge family rains_5_6_2 | qecc-forge verify --d 2
//! ```
//!
//! Exit codes: `0` success or verified; `1` verification failed (the
//! report still goes to the output stream); `2` usage, format, or input
//! errors.

use std::fs;
use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::boolfn::BooleanFunction;
use crate::codebook::{self, FamilySpec};
use crate::exactmat::ExactMatrix;
use crate::oqec::{self, build_oqec};
use crate::qecc::{distance_oracle, CodeCandidate, CodeCertificate, FailureReport};
use crate::search::{search_codes, FunctionSource, SearchMode, SearchSpec};

const EXIT_OK: i32 = 0;
const EXIT_REJECTED: i32 = 1;
const EXIT_USAGE: i32 = 2;

/// Terminal failure: the exit code plus a message for stderr.
struct CliError {
    code: i32,
    message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> CliError {
        CliError { code: EXIT_USAGE, message: message.into() }
    }
}

type CliResult = Result<i32, CliError>;

/// Parses `argv`, runs one subcommand, and returns the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    let outcome = match jobs_setting(cli.jobs) {
        Ok(Some(n)) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::usage(format!("cannot build a {n}-thread worker pool: {e}")))
            .and_then(|pool| pool.install(|| dispatch(&cli.command))),
        Ok(None) => dispatch(&cli.command),
        Err(e) => Err(e),
    };
    match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {}", err.message);
            err.code
        }
    }
}

/// Worker count: `--jobs` wins, then `QECC_FORGE_JOBS`, then rayon's
/// default (all cores).  Results never depend on this setting.
fn jobs_setting(flag: Option<usize>) -> Result<Option<usize>, CliError> {
    let jobs = match flag {
        Some(n) => Some(n),
        None => match std::env::var("QECC_FORGE_JOBS") {
            Ok(raw) => Some(raw.trim().parse().map_err(|_| {
                CliError::usage(format!("QECC_FORGE_JOBS must be a positive integer, got {raw:?}"))
            })?),
            Err(_) => None,
        },
    };
    if jobs == Some(0) {
        return Err(CliError::usage("worker count must be at least 1"));
    }
    Ok(jobs)
}

/// Quantum error-correcting codes from Boolean functions: exact
/// construction, verification, extension, subsystem splitting, and search.
#[derive(Parser)]
#[command(name = "qecc-forge", version, max_term_width = 100)]
struct Cli {
    /// Worker thread count (default: QECC_FORGE_JOBS, then all cores)
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Shift set of a Boolean function: all a with supp(f) disjoint from supp(f(v xor a))
    Cset(FunctionArgs),
    /// Autocorrelation spectrum r(a) of a Boolean function
    Autocorr(FunctionArgs),
    /// Algebraic normal form, degree, and monomial status of a Boolean function
    Anf(FunctionArgs),
    /// Check a code bundle: structural row tests plus every low-weight error image
    Verify(VerifyArgs),
    /// Assemble the exact code-space projector of a bundle as a dense matrix
    BuildProjector(ProjectorArgs),
    /// Sweep all low-weight errors against a dense projector matrix
    DistanceOracle(OracleArgs),
    /// Emit a code bundle from a built-in construction family
    Family(FamilyArgs),
    /// Append two qubits to a verified distance-2 code, quadrupling its dimension
    Extend(ExtendArgs),
    /// Remove one codeword from a verified code, keeping its matrix and distance
    Shrink(ShrinkArgs),
    /// Split a verified monomial-function code into stabilizer, gauge, and logical sectors
    Oqec(OqecArgs),
    /// Search for code matrices over a space of Boolean functions
    Search(SearchArgs),
}

#[derive(Args)]
struct IoArgs {
    /// Input path, "-" for stdin
    #[arg(long, value_name = "PATH", default_value = "-")]
    input: String,
    /// Output path, "-" for stdout
    #[arg(long, value_name = "PATH", default_value = "-")]
    output: String,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

/// Input plumbing shared by the pure function commands: the function
/// arrives as `--anf`, as `--hex`, or as `{"m", "support"}` JSON on the
/// input stream.
#[derive(Args)]
struct FunctionArgs {
    #[command(flatten)]
    io: IoArgs,
    /// Expression over v1..vm such as "v1*v2 ^ v3" (requires --m)
    #[arg(long, value_name = "EXPR", conflicts_with = "hex")]
    anf: Option<String>,
    /// Truth-table hex string, most significant digit first (requires --m)
    #[arg(long, value_name = "HEX")]
    hex: Option<String>,
    /// Variable count accompanying --anf or --hex
    #[arg(long, value_name = "M")]
    m: Option<u32>,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    io: IoArgs,
    /// Override the bundle's claimed distance before checking
    #[arg(long, value_name = "D")]
    d: Option<u32>,
    /// Report every failing error pattern instead of stopping at the first
    #[arg(long)]
    all: bool,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct ProjectorArgs {
    #[command(flatten)]
    io: IoArgs,
    /// Skip the verification pass before assembling the matrix
    #[arg(long)]
    unchecked: bool,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    io: IoArgs,
    /// Distance to certify: sweeps every error of symplectic weight <= D-1
    #[arg(long, value_name = "D")]
    d: u32,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct FamilyArgs {
    /// Family name (see --list)
    #[arg(value_name = "NAME", required_unless_present = "list")]
    name: Option<String>,
    /// Size parameter for the parametrized families
    #[arg(long, value_name = "M")]
    m: Option<u32>,
    /// Print the known family names and exit
    #[arg(long)]
    list: bool,
    #[command(flatten)]
    io: IoArgs,
}

#[derive(Args)]
struct ExtendArgs {
    #[command(flatten)]
    io: IoArgs,
}

#[derive(Args)]
struct ShrinkArgs {
    #[command(flatten)]
    io: IoArgs,
    /// Support point to remove from the function
    #[arg(long, value_name = "V")]
    drop: u32,
}

#[derive(Args)]
struct OqecArgs {
    #[command(flatten)]
    io: IoArgs,
    /// Logical virtual-qubit count; the rest of the non-stabilizer sector is gauge
    #[arg(long, value_name = "T")]
    t: u32,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    /// Stop at the first solution in canonical order
    First,
    /// Explore everything; print only the summary
    Count,
    /// Explore everything; print every solution
    Exhaustive,
}

#[derive(Args)]
struct SearchArgs {
    /// Qubit count
    #[arg(long, value_name = "K")]
    k: u32,
    /// Code dimension: the required Boolean-function weight
    #[arg(long = "M", value_name = "M")]
    weight: usize,
    /// Target minimum distance
    #[arg(long, value_name = "D")]
    d: u32,
    /// Search mode
    #[arg(long, value_enum, default_value_t = ModeArg::First)]
    mode: ModeArg,
    /// Backtracking budget per function, counted in expanded states
    #[arg(long, value_name = "N", default_value_t = 1_000_000)]
    budget: u64,
    /// Fix the function: an expression like "v4*v5" or {"m",..,"support"} JSON
    #[arg(long, value_name = "EXPR|JSON", conflicts_with_all = ["random", "max_functions"])]
    f: Option<String>,
    /// Sample functions at random instead of enumerating
    #[arg(long)]
    random: bool,
    /// Seed for --random
    #[arg(long, value_name = "SEED", default_value_t = 0)]
    seed: u64,
    /// Sample count for --random
    #[arg(long, value_name = "N", default_value_t = 1000)]
    tries: u64,
    /// Cap on enumerated functions
    #[arg(long, value_name = "N", conflicts_with = "random")]
    max_functions: Option<u64>,
    /// Disable rank pruning (for cross-checks; slower, same results)
    #[arg(long)]
    no_prune: bool,
    /// Keep symmetric column orderings even in first mode
    #[arg(long)]
    no_symmetry: bool,
    /// Output path, "-" for stdout
    #[arg(long, value_name = "PATH", default_value = "-")]
    output: String,
}

fn dispatch(command: &Command) -> CliResult {
    match command {
        Command::Cset(args) => run_cset(args),
        Command::Autocorr(args) => run_autocorr(args),
        Command::Anf(args) => run_anf(args),
        Command::Verify(args) => run_verify(args),
        Command::BuildProjector(args) => run_build_projector(args),
        Command::DistanceOracle(args) => run_distance_oracle(args),
        Command::Family(args) => run_family(args),
        Command::Extend(args) => run_extend(args),
        Command::Shrink(args) => run_shrink(args),
        Command::Oqec(args) => run_oqec(args),
        Command::Search(args) => run_search(args),
    }
}

fn read_input(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut buffer = String::new();
        std::io::stdin()
            .read_to_string(&mut buffer)
            .map_err(|e| CliError::usage(format!("cannot read stdin: {e}")))?;
        Ok(buffer)
    } else {
        fs::read_to_string(path).map_err(|e| CliError::usage(format!("cannot read {path}: {e}")))
    }
}

fn write_output(path: &str, content: &str) -> Result<(), CliError> {
    if path == "-" {
        let mut out = std::io::stdout().lock();
        out.write_all(content.as_bytes())
            .and_then(|()| out.flush())
            .map_err(|e| CliError::usage(format!("cannot write stdout: {e}")))
    } else {
        fs::write(path, content).map_err(|e| CliError::usage(format!("cannot write {path}: {e}")))
    }
}

fn parse_json<T: serde::de::DeserializeOwned>(text: &str, what: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::usage(format!("input is not {what}: {e}")))
}

fn encode_compact<T: serde::Serialize>(value: &T) -> Result<String, CliError> {
    serde_json::to_string(value).map_err(|e| CliError::usage(format!("cannot encode output: {e}")))
}

fn emit_json<T: serde::Serialize>(io: &IoArgs, value: &T) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::usage(format!("cannot encode output: {e}")))?;
    text.push('\n');
    write_output(&io.output, &text)
}

/// Rejection output shared by every subcommand that verifies a bundle.
fn emit_rejection(io: &IoArgs, format: Format, report: &FailureReport) -> CliResult {
    match format {
        Format::Json => emit_json(
            io,
            &serde_json::json!({
                "verified": false,
                "failures": report.failures,
                "checked": report.checked,
            }),
        )?,
        Format::Text => write_output(&io.output, &report.to_string())?,
    }
    Ok(EXIT_REJECTED)
}

fn load_function(args: &FunctionArgs) -> Result<BooleanFunction, CliError> {
    match (&args.anf, &args.hex) {
        (Some(expr), None) => {
            let m = args.m.ok_or_else(|| CliError::usage("--anf requires --m"))?;
            BooleanFunction::from_anf(m, expr)
                .map_err(|e| CliError::usage(format!("bad --anf expression: {e}")))
        }
        (None, Some(hex)) => {
            let m = args.m.ok_or_else(|| CliError::usage("--hex requires --m"))?;
            BooleanFunction::from_hex(m, hex)
                .map_err(|e| CliError::usage(format!("bad --hex string: {e}")))
        }
        (None, None) => {
            let text = read_input(&args.io.input)?;
            parse_json(&text, "a Boolean function {\"m\", \"support\"}")
        }
        (Some(_), Some(_)) => unreachable!("clap rejects --anf together with --hex"),
    }
}

fn load_candidate(io: &IoArgs) -> Result<CodeCandidate, CliError> {
    let text = read_input(&io.input)?;
    parse_json(&text, "a code bundle {\"k\", \"d\", \"f_support\", \"A_f\"}")
}

fn run_cset(args: &FunctionArgs) -> CliResult {
    let f = load_function(args)?;
    let cset = f.cset();
    match args.format {
        Format::Json => emit_json(
            &args.io,
            &serde_json::json!({
                "m": f.m(),
                "size": cset.len(),
                "elements": cset.elements(),
            }),
        )?,
        Format::Text => {
            let line = cset
                .elements()
                .iter()
                .map(|a| a.to_string())
                .collect::<Vec<_>>()
                .join(" ");
            write_output(&args.io.output, &format!("{line}\n"))?;
        }
    }
    Ok(EXIT_OK)
}

fn run_autocorr(args: &FunctionArgs) -> CliResult {
    let f = load_function(args)?;
    let auto = f.autocorrelation();
    match args.format {
        Format::Json => emit_json(
            &args.io,
            &serde_json::json!({
                "m": f.m(),
                "values": auto.values(),
            }),
        )?,
        Format::Text => {
            let line = auto
                .values()
                .iter()
                .map(|r| r.to_string())
                .collect::<Vec<_>>()
                .join(" ");
            write_output(&args.io.output, &format!("{line}\n"))?;
        }
    }
    Ok(EXIT_OK)
}

fn run_anf(args: &FunctionArgs) -> CliResult {
    let f = load_function(args)?;
    let poly = f.anf();
    match args.format {
        Format::Json => emit_json(
            &args.io,
            &serde_json::json!({
                "m": f.m(),
                "weight": f.weight(),
                "expression": poly.to_string(),
                "degree": poly.degree(),
                "monomial_variables": f.is_monomial(),
            }),
        )?,
        Format::Text => write_output(&args.io.output, &format!("{poly}\n"))?,
    }
    Ok(EXIT_OK)
}

fn certificate_text(cert: &CodeCertificate) -> String {
    let mut out = format!(
        "verified (({}, {}, {})) code\nadditive: {}\n",
        cert.k(),
        cert.weight(),
        cert.d(),
        if cert.additive() { "yes" } else { "no" },
    );
    if let Some(strings) = cert.stabilizers() {
        for s in strings {
            out.push_str("stabilizer: ");
            out.push_str(s);
            out.push('\n');
        }
    }
    out.push_str(&format!(
        "checked: {}\ndigest: {}\n",
        cert.transcript().len(),
        cert.transcript().digest()
    ));
    out
}

fn run_verify(args: &VerifyArgs) -> CliResult {
    let mut candidate = load_candidate(&args.io)?;
    if let Some(d) = args.d {
        candidate = candidate
            .with_distance(d)
            .map_err(|e| CliError::usage(format!("bad --d: {e}")))?;
    }
    let outcome = if args.all { candidate.verify_all() } else { candidate.verify() };
    match outcome {
        Ok(cert) => {
            match args.format {
                Format::Json => emit_json(&args.io, &cert)?,
                Format::Text => write_output(&args.io.output, &certificate_text(&cert))?,
            }
            Ok(EXIT_OK)
        }
        Err(report) => emit_rejection(&args.io, args.format, &report),
    }
}

fn run_build_projector(args: &ProjectorArgs) -> CliResult {
    let candidate = load_candidate(&args.io)?;
    if !args.unchecked {
        if let Err(report) = candidate.verify() {
            return emit_rejection(&args.io, args.format, &report);
        }
    }
    let matrix = candidate
        .build_projector()
        .map_err(|e| CliError::usage(format!("cannot assemble the projector: {e}")))?;
    match args.format {
        Format::Json => emit_json(&args.io, &matrix)?,
        Format::Text => write_output(&args.io.output, &format!("{matrix}"))?,
    }
    Ok(EXIT_OK)
}

fn run_distance_oracle(args: &OracleArgs) -> CliResult {
    if args.d < 1 {
        return Err(CliError::usage("--d must be at least 1"));
    }
    let text = read_input(&args.io.input)?;
    let matrix: ExactMatrix = parse_json(&text, "a matrix {\"dim\", \"log2den\", \"entries\"}")?;
    let dim = matrix.dim();
    if !dim.is_power_of_two() {
        return Err(CliError::usage(format!("matrix dimension {dim} is not a power of two")));
    }
    let k = dim.trailing_zeros();
    let report =
        distance_oracle(&matrix, k, args.d - 1).map_err(|e| CliError::usage(e.to_string()))?;
    match args.format {
        Format::Json => emit_json(&args.io, &report)?,
        Format::Text => {
            let line = match &report.first_violation {
                None => format!("passed: {} errors leave the code space clean\n", report.checked),
                Some(w) => format!("violation at {w} ({} errors checked)\n", report.checked),
            };
            write_output(&args.io.output, &line)?;
        }
    }
    Ok(if report.passed { EXIT_OK } else { EXIT_REJECTED })
}

fn run_family(args: &FamilyArgs) -> CliResult {
    if args.list {
        let mut text = String::new();
        for name in FamilySpec::names() {
            text.push_str(name);
            text.push('\n');
        }
        write_output(&args.io.output, &text)?;
        return Ok(EXIT_OK);
    }
    let name = args.name.as_deref().expect("clap requires NAME unless --list");
    let spec = FamilySpec::parse(name, args.m).map_err(|e| CliError::usage(e.to_string()))?;
    let candidate = codebook::make(&spec).map_err(|e| CliError::usage(e.to_string()))?;
    emit_json(&args.io, &candidate)?;
    Ok(EXIT_OK)
}

fn run_extend(args: &ExtendArgs) -> CliResult {
    let candidate = load_candidate(&args.io)?;
    let cert = match candidate.verify() {
        Ok(cert) => cert,
        Err(report) => return emit_rejection(&args.io, Format::Json, &report),
    };
    let extended = codebook::extend_k2(&cert).map_err(|e| CliError::usage(e.to_string()))?;
    emit_json(&args.io, &extended)?;
    Ok(EXIT_OK)
}

fn run_shrink(args: &ShrinkArgs) -> CliResult {
    let candidate = load_candidate(&args.io)?;
    let cert = match candidate.verify() {
        Ok(cert) => cert,
        Err(report) => return emit_rejection(&args.io, Format::Json, &report),
    };
    let shrunk = codebook::shrink_m(&cert, args.drop).map_err(|e| CliError::usage(e.to_string()))?;
    emit_json(&args.io, &shrunk)?;
    Ok(EXIT_OK)
}

fn run_oqec(args: &OqecArgs) -> CliResult {
    let candidate = load_candidate(&args.io)?;
    let k = candidate.k();
    let vars = candidate.function().is_monomial().ok_or_else(|| {
        CliError::usage("the bundle's function is not a monomial; no subsystem split on this route")
    })?;
    let s = k - vars.len() as u32;
    let expected: Vec<u32> = (s + 1..=k).collect();
    if vars != expected {
        return Err(CliError::usage(format!(
            "the monomial must use the top variables v{}..v{k}; relabel the function first",
            s + 1
        )));
    }
    let name = candidate.name().map(str::to_owned);
    let code = match build_oqec(k, s, args.t, candidate.d(), candidate.matrix().clone(), name) {
        Ok(code) => code,
        Err(oqec::OqecError::VerifyFailed(report)) => {
            return emit_rejection(&args.io, Format::Json, &report)
        }
        Err(e) => return Err(CliError::usage(e.to_string())),
    };
    let report = code.certify();
    let passed = report.passed();
    emit_json(&args.io, &serde_json::json!({ "code": code, "report": report }))?;
    Ok(if passed { EXIT_OK } else { EXIT_REJECTED })
}

fn run_search(args: &SearchArgs) -> CliResult {
    let source = if let Some(raw) = &args.f {
        let f: BooleanFunction = if raw.trim_start().starts_with('{') {
            parse_json(raw, "a Boolean function {\"m\", \"support\"}")?
        } else {
            BooleanFunction::from_anf(args.k, raw)
                .map_err(|e| CliError::usage(format!("bad --f expression: {e}")))?
        };
        FunctionSource::Given(f)
    } else if args.random {
        FunctionSource::Random { seed: args.seed, tries: args.tries }
    } else {
        FunctionSource::Enumerate { max_functions: args.max_functions }
    };
    let spec = SearchSpec {
        k: args.k,
        weight: args.weight,
        d: args.d,
        mode: match args.mode {
            ModeArg::First => SearchMode::First,
            ModeArg::Count => SearchMode::Count,
            ModeArg::Exhaustive => SearchMode::Exhaustive,
        },
        budget: args.budget,
        source,
        prune: !args.no_prune,
        symmetry_break: !args.no_symmetry,
    };
    let summary = search_codes(&spec).map_err(|e| CliError::usage(e.to_string()))?;
    let mut text = String::new();
    if args.mode != ModeArg::Count {
        for cert in &summary.certificates {
            text.push_str(&encode_compact(cert)?);
            text.push('\n');
        }
    }
    text.push_str(&encode_compact(&serde_json::json!({
        "solutions": summary.certificates.len(),
        "functions_tried": summary.functions_tried,
        "nodes_used": summary.nodes_used,
        "complete": summary.complete,
    }))?);
    text.push('\n');
    write_output(&args.output, &text)?;
    Ok(EXIT_OK)
}
