//! The `coprime-tree` command line.
//!
//! Exit codes: 0 success or claim verified, 1 violations found (or a pair outside the
//! tree), 2 usage or I/O error.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use thiserror::Error;

use crate::analysis::{
    completeness_check, enumerate_tree, sample_homomorphism, scan_conjecture,
    verify_block_proposition, verify_reflection, AnalysisError, Extremal, SweepKind, SweepOptions,
    SweepReport, DEFAULT_VIOLATION_CAP, MAX_SWEEP_LEN,
};
use crate::code::{
    cluster_average, cluster_variance, format_rational, is_palindrome, weight, Code, CodeError,
};
use crate::export::{write_csv, write_json, write_table, CodeRow};
use crate::tree::{apply_code, code_length, decode, norm1, trajectory, Pair};

/// Default ceiling for `scan --len` and `enumerate --depth`; `--allow-long` lifts it to
/// the sweep limit.
pub const DEFAULT_LENGTH_CEILING: u32 = 28;

/// Longest code `encode` will print.
pub const MAX_PRINTED_CODE: u64 = 1 << 26;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATIONS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "coprime-tree",
    version,
    about = "Coprime pairs as binary codes in the tree rooted at [1,2]"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the code of a coprime pair `a b` (or `a,b`).
    Encode {
        #[arg(required = true, num_args = 1..=2, value_name = "PAIR")]
        pair: Vec<String>,
    },
    /// Print the pair `T[code]`.
    Decode {
        /// Also print the chain of pairs from the root.
        #[arg(long)]
        trace: bool,
        #[arg(value_name = "CODE")]
        code: String,
    },
    /// Weight, cluster statistics and pair sum of a code.
    Stats {
        #[arg(value_name = "CODE")]
        code: String,
    },
    /// Run a verification sweep.
    Verify(VerifyArgs),
    /// Scan all codes of one length for cluster-variance conjecture violations.
    Scan(ScanArgs),
    /// List the tree up to a depth.
    Enumerate(EnumerateArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Table,
    Json,
}

#[derive(Args, Debug)]
struct SweepFlags {
    /// Number of prefix shards (defaults to available parallelism).
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=4096))]
    shards: Option<u64>,
    /// Maximum number of witnesses kept in the report.
    #[arg(long, default_value_t = DEFAULT_VIOLATION_CAP as u64, value_parser = clap::value_parser!(u64).range(1..=1_000_000))]
    cap: u64,
}

impl SweepFlags {
    fn options(&self) -> SweepOptions {
        let mut opts = SweepOptions::default();
        if let Some(shards) = self.shards {
            opts.shards = shards as usize;
        }
        opts.violation_cap = self.cap as usize;
        opts
    }
}

#[derive(Args, Debug)]
#[group(id = "sweep", required = true, multiple = false, args = ["reflection", "completeness", "blocks", "homomorphism"])]
struct VerifyArgs {
    /// Reflection theorem for all codes up to this length.
    #[arg(long, value_name = "MAX_LEN", value_parser = clap::value_parser!(u32).range(1..=MAX_SWEEP_LEN as i64))]
    reflection: Option<u32>,
    /// Every coprime pair a < b <= MAX_B is in the tree exactly once.
    #[arg(long, value_name = "MAX_B", value_parser = clap::value_parser!(u64).range(2..=1_000_000))]
    completeness: Option<u64>,
    /// Fibonacci block identities for j = 2..=MAX_J.
    #[arg(long, value_name = "MAX_J", value_parser = clap::value_parser!(u32).range(2..=100_000))]
    blocks: Option<u32>,
    /// Seeded homomorphism sampling.
    #[arg(long, num_args = 2, value_names = ["TRIALS", "SEED"])]
    homomorphism: Option<Vec<u64>>,
    #[arg(long, value_enum, default_value_t = ReportFormat::Table)]
    format: ReportFormat,
    #[command(flatten)]
    sweep: SweepFlags,
}

#[derive(Args, Debug)]
struct ScanArgs {
    /// Code length.
    #[arg(long)]
    len: u32,
    /// Restrict to codes of this weight.
    #[arg(long)]
    weight: Option<u32>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Write the output here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Permit lengths above the default ceiling.
    #[arg(long)]
    allow_long: bool,
    #[command(flatten)]
    sweep: SweepFlags,
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    #[arg(long)]
    depth: u32,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Permit depths above the default ceiling.
    #[arg(long)]
    allow_long: bool,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    NotInTree(String),
    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: io::Error,
    },
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::NotInTree(_) => EXIT_VIOLATIONS,
            CliError::Usage(_) | CliError::Io { .. } => EXIT_USAGE,
        }
    }
}

impl From<CodeError> for CliError {
    fn from(e: CodeError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<AnalysisError> for CliError {
    fn from(e: AnalysisError) -> Self {
        CliError::Usage(e.to_string())
    }
}

fn io_err(context: &str) -> impl FnOnce(io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        context: context.to_string(),
        source,
    }
}

/// Parses and runs one invocation, returning the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(cli.command, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(
    command: Command,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32, CliError> {
    match command {
        Command::Encode { pair } => cmd_encode(&pair, stdout),
        Command::Decode { trace, code } => cmd_decode(&code, trace, stdout),
        Command::Stats { code } => cmd_stats(&code, stdout),
        Command::Verify(args) => cmd_verify(&args, stdout),
        Command::Scan(args) => cmd_scan(&args, stdout, stderr),
        Command::Enumerate(args) => cmd_enumerate(&args, stdout),
    }
}

fn parse_pair(args: &[String]) -> Result<Pair, CliError> {
    let joined = args.join(" ");
    let parts: Vec<&str> = joined
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .collect();
    let [a, b] = parts[..] else {
        return Err(CliError::Usage(format!(
            "expected a pair \"a b\" or \"a,b\", got {joined:?}"
        )));
    };
    let parse = |s: &str| {
        s.parse::<BigUint>()
            .map_err(|_| CliError::Usage(format!("{s:?} is not a nonnegative integer")))
    };
    Ok(Pair::new(parse(a)?, parse(b)?))
}

fn cmd_encode(args: &[String], out: &mut dyn Write) -> Result<i32, CliError> {
    let pair = parse_pair(args)?;
    let not_in_tree = |e: crate::tree::TreeError| CliError::NotInTree(format!("NotInTree: {e}"));
    let len = code_length(&pair).map_err(not_in_tree)?;
    if len > BigUint::from(MAX_PRINTED_CODE) {
        return Err(CliError::Usage(format!(
            "the code of {pair} has {len} bits, more than the printable limit of {MAX_PRINTED_CODE}"
        )));
    }
    let code = decode(&pair).map_err(not_in_tree)?;
    writeln!(out, "{code}").map_err(io_err("writing output"))?;
    Ok(EXIT_OK)
}

fn cmd_decode(text: &str, trace: bool, out: &mut dyn Write) -> Result<i32, CliError> {
    let code: Code = text.parse()?;
    let pair = apply_code(&code);
    (|| {
        writeln!(out, "{} {}", pair.a, pair.b)?;
        if trace {
            writeln!(out, "{}", trajectory(&code))?;
        }
        Ok(())
    })()
    .map_err(io_err("writing output"))?;
    Ok(EXIT_OK)
}

fn cmd_stats(text: &str, out: &mut dyn Write) -> Result<i32, CliError> {
    let code: Code = text.parse()?;
    let avg = cluster_average(&code)?;
    let var = cluster_variance(&code)?;
    let pair = apply_code(&code);
    (|| {
        writeln!(out, "code {code}")?;
        writeln!(out, "length {}", code.len())?;
        writeln!(out, "weight {}", weight(&code))?;
        writeln!(out, "avg {}", format_rational(&avg))?;
        writeln!(out, "var {}", format_rational(&var))?;
        writeln!(out, "pair {} {}", pair.a, pair.b)?;
        writeln!(out, "sum {}", norm1(&pair))?;
        writeln!(out, "palindrome {}", is_palindrome(&code))
    })()
    .map_err(io_err("writing output"))?;
    Ok(EXIT_OK)
}

fn unit(kind: SweepKind) -> &'static str {
    match kind {
        SweepKind::Reflection | SweepKind::Conjecture => "codes",
        SweepKind::Completeness => "pairs",
        SweepKind::BlockProposition => "block sizes",
        SweepKind::Homomorphism => "trials",
    }
}

fn write_report_table(report: &SweepReport, out: &mut dyn Write) -> io::Result<()> {
    writeln!(
        out,
        "{} ({}): checked {} {}, {} violations",
        report.kind,
        report.range,
        report.checked_count,
        unit(report.kind),
        report.violation_count
    )?;
    if let Some(Extremal::Classes(classes)) = &report.extremal {
        writeln!(
            out,
            "{:>6} {:>10} {:>8} {:>12} {:>12} {:>12} {:>12}",
            "weight", "var", "count", "min_sum", "min_code", "max_sum", "max_code"
        )?;
        for c in classes {
            writeln!(
                out,
                "{:>6} {:>10} {:>8} {:>12} {:>12} {:>12} {:>12}",
                c.weight,
                format_rational(&c.variance),
                c.count,
                c.min_norm,
                c.min_code,
                c.max_norm,
                c.max_code
            )?;
        }
    }
    if let Some(Extremal::MaxNorm { code, pair, norm }) = &report.extremal {
        writeln!(out, "largest sum {norm} at {code} -> {pair}")?;
    }
    if !report.violations.is_empty() {
        writeln!(
            out,
            "witnesses ({} shown{}):",
            report.violations.len(),
            if report.truncated { ", truncated" } else { "" }
        )?;
        for w in &report.violations {
            let codes: Vec<String> = w.codes.iter().map(Code::to_string).collect();
            let pairs: Vec<String> = w.pairs.iter().map(Pair::to_string).collect();
            let values: Vec<String> = w.values.iter().map(ToString::to_string).collect();
            writeln!(
                out,
                "  codes [{}] pairs [{}] values [{}]",
                codes.join(", "),
                pairs.join(", "),
                values.join(", ")
            )?;
        }
    }
    Ok(())
}

fn write_report(report: &SweepReport, format: ReportFormat, out: &mut dyn Write) -> io::Result<()> {
    match format {
        ReportFormat::Table => write_report_table(report, out),
        ReportFormat::Json => writeln!(out, "{}", report.to_json()),
    }
}

fn status(report: &SweepReport) -> i32 {
    if report.holds() {
        EXIT_OK
    } else {
        EXIT_VIOLATIONS
    }
}

fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let opts = args.sweep.options();
    let report = if let Some(max_len) = args.reflection {
        verify_reflection(max_len, &opts)?
    } else if let Some(max_b) = args.completeness {
        completeness_check(max_b, &opts)?
    } else if let Some(max_j) = args.blocks {
        verify_block_proposition(max_j, &opts)?
    } else if let Some(values) = &args.homomorphism {
        let [trials, seed] = values[..] else {
            return Err(CliError::Usage("--homomorphism takes TRIALS SEED".into()));
        };
        if trials == 0 {
            return Err(CliError::Usage("TRIALS must be at least 1".into()));
        }
        sample_homomorphism(trials, seed, &opts)?
    } else {
        return Err(CliError::Usage("no sweep selected".into()));
    };
    write_report(&report, args.format, out).map_err(io_err("writing output"))?;
    Ok(status(&report))
}

fn check_ceiling(what: &str, value: u32, allow_long: bool) -> Result<(), CliError> {
    let ceiling = if allow_long {
        MAX_SWEEP_LEN
    } else {
        DEFAULT_LENGTH_CEILING
    };
    if value > ceiling {
        let hint = if allow_long {
            ""
        } else {
            " (use --allow-long to raise it)"
        };
        return Err(CliError::Usage(format!(
            "{what} {value} exceeds the ceiling of {ceiling}{hint}"
        )));
    }
    Ok(())
}

/// Output sink: the named file, or standard output.
fn with_output<F>(path: Option<&PathBuf>, stdout: &mut dyn Write, body: F) -> Result<(), CliError>
where
    F: FnOnce(&mut dyn Write) -> io::Result<()>,
{
    match path {
        Some(path) => {
            let context = format!("writing {}", path.display());
            let file = File::create(path).map_err(io_err(&context))?;
            let mut writer = BufWriter::new(file);
            body(&mut writer)
                .and_then(|()| writer.flush())
                .map_err(io_err(&context))
        }
        None => body(stdout).map_err(io_err("writing output")),
    }
}

fn scan_rows(len: u32, weight_filter: Option<u32>) -> impl Iterator<Item = CodeRow> {
    (0..(1u64 << len))
        .filter(move |bits| weight_filter.is_none_or(|w| bits.count_ones() == w))
        .map(move |bits| CodeRow::new(Code::from_packed(bits, len)))
}

fn cmd_scan(
    args: &ScanArgs,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32, CliError> {
    if args.len == 0 {
        return Err(CliError::Usage("--len must be at least 1".into()));
    }
    check_ceiling("--len", args.len, args.allow_long)?;
    if let Some(w) = args.weight {
        if w > args.len {
            return Err(CliError::Usage(format!(
                "--weight {w} exceeds --len {}",
                args.len
            )));
        }
    }
    // Fail on an unwritable path before the sweep runs.
    if let Some(path) = &args.out {
        File::create(path).map_err(io_err(&format!("writing {}", path.display())))?;
    }
    let report = scan_conjecture(args.len, args.weight, &args.sweep.options())?;
    with_output(args.out.as_ref(), stdout, |out| match args.format {
        Format::Table => write_report_table(&report, out),
        Format::Json => writeln!(out, "{}", report.to_json()),
        Format::Csv => write_csv(out, scan_rows(args.len, args.weight)),
    })?;
    if args.format == Format::Csv || args.out.is_some() {
        let _ = writeln!(
            stderr,
            "{} ({}): checked {} codes, {} violations",
            report.kind, report.range, report.checked_count, report.violation_count
        );
    }
    Ok(status(&report))
}

fn cmd_enumerate(args: &EnumerateArgs, stdout: &mut dyn Write) -> Result<i32, CliError> {
    check_ceiling("--depth", args.depth, args.allow_long)?;
    let rows = enumerate_tree(args.depth)?.map(|(code, pair)| CodeRow::with_pair(code, pair));
    with_output(args.out.as_ref(), stdout, |out| match args.format {
        Format::Table => write_table(out, rows),
        Format::Csv => write_csv(out, rows),
        Format::Json => write_json(out, rows),
    })?;
    Ok(EXIT_OK)
}
