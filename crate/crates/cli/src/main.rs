//! `primrep`: find, classify and check the runs of words from the command line.
//!
//! Exit status: 0 on success, 1 when a verification check fails, 2 on usage
//! errors (bad flags, unreadable input).

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use primrep::report::{analyze, AnalysisReport, AnalyzeOptions};
use primrep::verify::conjecture::{
    conjecture_maxruns, factor_sweep, FactorSweepReport, MaxRunsReport,
};
use primrep::verify::corpus::{CorpusSpec, ExhaustiveSpec, FamilySpec, RandomSpec};
use primrep::verify::{
    run_all_checks, summarize, CheckOutcome, VerificationSummary, DEFAULT_LAMBDAS,
};
use primrep::word::gen_family;
use primrep::{Error, Family, GenerationFactor, Word};

#[derive(Parser)]
#[command(
    name = "primrep",
    version,
    about = "Runs (maximal repetitions) in words: primary/secondary classification and bound checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one word: its runs, their classes and the λ statistics.
    Analyze(AnalyzeArgs),
    /// Run every invariant check over a corpus of words.
    Verify(VerifyArgs),
    /// Experimental tables: maximum run counts and generation-factor sweeps.
    Conjecture(ConjectureArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Text,
    Json,
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("input").required(true).args(["word", "file", "gen"]))]
struct AnalyzeArgs {
    /// The word itself.
    #[arg(long)]
    word: Option<String>,
    /// Read the word from a file, one symbol per byte.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Generate the word from a family: wk, fibonacci, thue_morse.
    #[arg(long, requires = "param")]
    gen: Option<Family>,
    /// Family parameter: k for wk, the prefix length otherwise.
    #[arg(long, requires = "gen")]
    param: Option<i64>,
    /// Treat input as UTF-8 with one symbol per code point.
    #[arg(long)]
    text: bool,
    /// Minimum period for the λ statistics; repeatable. Defaults to 1..=8.
    #[arg(long = "lambda", value_parser = clap::value_parser!(u64).range(1..))]
    lambdas: Vec<u64>,
    /// Generation factor g in p(r) >= g·p.
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(3..))]
    factor: u32,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Also run every invariant check on the word.
    #[arg(long)]
    check: bool,
}

#[derive(Args)]
struct CorpusArgs {
    /// All words over A symbols of every length up to L.
    #[arg(long, value_name = "A,L")]
    exhaustive: Vec<ExhaustiveArg>,
    /// Family members, e.g. wk:2..50 or fibonacci:1..512.
    #[arg(long, value_name = "NAME:RANGE")]
    family: Vec<FamilyArg>,
    /// N seeded random binary words of length LEN.
    #[arg(long, value_name = "N,LEN,SEED")]
    random: Vec<RandomArg>,
    /// Add the standard corpus (binary <= 14, ternary <= 9, wk 1..50,
    /// Fibonacci/Thue–Morse prefixes <= 512, 1000 random words of length 200).
    #[arg(long)]
    standard: bool,
}

impl CorpusArgs {
    fn spec(&self) -> CorpusSpec {
        let mut spec = if self.standard {
            CorpusSpec::standard()
        } else {
            CorpusSpec::default()
        };
        spec.exhaustive.extend(self.exhaustive.iter().map(|e| e.0));
        spec.families.extend(self.family.iter().map(|f| f.0));
        spec.random.extend(self.random.iter().map(|r| r.0));
        spec
    }
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    corpus: CorpusArgs,
    /// Check λ = 1..=8 instead of λ = 1 only.
    #[arg(long)]
    lambda_sweep: bool,
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(3..))]
    factor: u32,
    /// Include every outcome in the JSON, not only failures.
    #[arg(long)]
    all_outcomes: bool,
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("mode").required(true).args(["maxruns", "factor_sweep"]))]
struct ConjectureArgs {
    /// Maximum run counts over all words up to length MAXLEN.
    #[arg(long, value_name = "A,MAXLEN")]
    maxruns: Option<MaxRunsArg>,
    /// Classify under each generation factor and report the bounds.
    #[arg(long, value_name = "G1,G2,...", value_delimiter = ',')]
    factor_sweep: Option<Vec<u32>>,
    /// Corpus for the factor sweep; binary words up to 12 and wk 1..50 when
    /// none is given.
    #[command(flatten)]
    corpus: CorpusArgs,
    #[arg(long, value_enum, default_value_t = TableFormat::Text)]
    format: TableFormat,
}

fn split_numbers<const N: usize>(s: &str) -> Result<[u64; N], String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != N {
        return Err(format!("expected {N} comma-separated numbers, got `{s}`"));
    }
    let mut out = [0; N];
    for (slot, p) in out.iter_mut().zip(parts) {
        *slot = p
            .trim()
            .parse()
            .map_err(|_| format!("`{p}` is not a non-negative integer"))?;
    }
    Ok(out)
}

#[derive(Clone)]
struct ExhaustiveArg(ExhaustiveSpec);

impl FromStr for ExhaustiveArg {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let [a, l] = split_numbers::<2>(s)?;
        if !(1..=62).contains(&a) {
            return Err(format!("alphabet size must be in 1..=62, got {a}"));
        }
        Ok(ExhaustiveArg(ExhaustiveSpec {
            alphabet_size: a as usize,
            max_len: l as usize,
        }))
    }
}

#[derive(Clone)]
struct FamilyArg(FamilySpec);

impl FromStr for FamilyArg {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let (name, range) = s
            .split_once(':')
            .ok_or_else(|| format!("expected NAME:RANGE, got `{s}`"))?;
        let family: Family = name.parse().map_err(|e: Error| e.to_string())?;
        let num = |t: &str| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| format!("bad range bound `{t}`"))
        };
        let (from, to) = match range.split_once("..") {
            Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
            None => (num(range)?, num(range)?),
        };
        if from < 1 || to < from {
            return Err(format!(
                "range must be non-empty and start at 1 or more, got `{range}`"
            ));
        }
        Ok(FamilyArg(FamilySpec { family, from, to }))
    }
}

#[derive(Clone)]
struct RandomArg(RandomSpec);

impl FromStr for RandomArg {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let [count, length, seed] = split_numbers::<3>(s)?;
        Ok(RandomArg(RandomSpec {
            count: count as usize,
            length: length as usize,
            seed,
        }))
    }
}

#[derive(Clone)]
struct MaxRunsArg {
    alphabet_size: usize,
    max_len: usize,
}

impl FromStr for MaxRunsArg {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let [a, l] = split_numbers::<2>(s)?;
        if !(2..=62).contains(&a) || l < 1 {
            return Err(format!("need 2 <= A <= 62 and MAXLEN >= 1, got `{s}`"));
        }
        Ok(MaxRunsArg {
            alphabet_size: a as usize,
            max_len: l as usize,
        })
    }
}

/// Failures that end the program with a given exit code.
enum Failure {
    Usage(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Verification { .. } => Failure::Verification(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Analyze(args) => cmd_analyze(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Conjecture(args) => cmd_conjecture(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn write_stdout(text: &str) -> Result<(), Failure> {
    let mut out = io::stdout().lock();
    out.write_all(text.as_bytes())?;
    if !text.ends_with('\n') {
        out.write_all(b"\n")?;
    }
    Ok(())
}

fn json<T: serde::Serialize>(value: &T) -> Result<String, Failure> {
    serde_json::to_string_pretty(value).map_err(|e| Failure::Usage(e.to_string()))
}

fn cmd_analyze(args: AnalyzeArgs) -> Result<(), Failure> {
    let lambdas: Vec<usize> = if args.lambdas.is_empty() {
        DEFAULT_LAMBDAS.to_vec()
    } else {
        args.lambdas.iter().map(|&l| l as usize).collect()
    };
    let opts = AnalyzeOptions {
        lambdas,
        factor: GenerationFactor::new(args.factor)?,
        check: args.check,
    };

    let (bytes, source) = if let Some(w) = &args.word {
        (w.as_bytes().to_vec(), w.clone())
    } else if let Some(path) = &args.file {
        let bytes = fs::read(path)
            .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
        (bytes, format!("file:{}", path.display()))
    } else {
        let (family, param) = (
            args.gen.expect("input group"),
            args.param.expect("requires"),
        );
        (
            gen_family(family, param)?.symbols().to_vec(),
            format!("{family}:{param}"),
        )
    };

    let report: AnalysisReport = if args.text {
        let text = String::from_utf8(bytes)
            .map_err(|_| Failure::Usage("input is not valid UTF-8".into()))?;
        let w: Word<char> = Word::new(text.chars().collect());
        analyze(&w, &source, &opts)?
    } else {
        analyze(&Word::new(bytes), &source, &opts)?
    };

    match args.format {
        Format::Json => write_stdout(&json(&report)?)?,
        Format::Csv => {
            let mut buf = Vec::new();
            report
                .write_csv(&mut buf)
                .map_err(|e| Failure::Usage(e.to_string()))?;
            io::stdout().lock().write_all(&buf)?;
        }
        Format::Text => write_stdout(&report.to_text())?,
    }
    if !report.checks_passed() {
        let failed: Vec<String> = report
            .checks
            .iter()
            .flatten()
            .filter(|c| !c.passed)
            .map(|c| c.check_id.to_string())
            .collect();
        return Err(Failure::Verification(format!(
            "checks failed: {}",
            failed.join(", ")
        )));
    }
    Ok(())
}

#[derive(serde::Serialize)]
struct VerifyOutput<'a> {
    summary: &'a VerificationSummary,
    failed_outcomes: Vec<&'a CheckOutcome>,
    #[serde(skip_serializing_if = "Option::is_none")]
    outcomes: Option<&'a [CheckOutcome]>,
}

fn cmd_verify(args: VerifyArgs) -> Result<(), Failure> {
    let spec = args.corpus.spec();
    if spec.is_empty() {
        eprintln!("warning: empty corpus, nothing to verify (see --exhaustive, --family, --random, --standard)");
    }
    let lambdas: Vec<usize> = if args.lambda_sweep {
        DEFAULT_LAMBDAS.to_vec()
    } else {
        vec![1]
    };
    let outcomes = run_all_checks(&spec, &lambdas, GenerationFactor::new(args.factor)?)?;
    let summary = summarize(&outcomes);
    let output = VerifyOutput {
        summary: &summary,
        failed_outcomes: outcomes.iter().filter(|o| !o.passed).collect(),
        outcomes: args.all_outcomes.then_some(outcomes.as_slice()),
    };
    write_stdout(&json(&output)?)?;
    eprintln!(
        "{} words, {} outcomes, {} failures",
        summary.words, summary.outcomes, summary.failures
    );
    if summary.passed() {
        return Ok(());
    }
    let worst: Vec<String> = summary
        .checks
        .iter()
        .filter_map(|c| c.shortest_counterexample.as_ref())
        .map(|o| {
            format!(
                "{} on \"{}\": {}",
                o.check_id,
                o.word,
                o.counterexample.as_deref().unwrap_or("")
            )
        })
        .collect();
    Err(Failure::Verification(worst.join("; ")))
}

fn cmd_conjecture(args: ConjectureArgs) -> Result<(), Failure> {
    if let Some(m) = &args.maxruns {
        let report = conjecture_maxruns(m.alphabet_size, m.max_len)?;
        match args.format {
            TableFormat::Json => write_stdout(&json(&report)?)?,
            TableFormat::Text => write_stdout(&maxruns_text(&report))?,
        }
    }
    if let Some(factors) = &args.factor_sweep {
        let mut spec = args.corpus.spec();
        if spec.is_empty() {
            spec.exhaustive.push(ExhaustiveSpec {
                alphabet_size: 2,
                max_len: 12,
            });
            spec.families.push(FamilySpec {
                family: Family::Wk,
                from: 1,
                to: 50,
            });
        }
        let report = factor_sweep(&spec, factors)?;
        match args.format {
            TableFormat::Json => write_stdout(&json(&report)?)?,
            TableFormat::Text => write_stdout(&sweep_text(&report))?,
        }
        if let Some(v) = &report.monotonicity_violation {
            return Err(Failure::Verification(format!(
                "secondary sets are not monotone: {v}"
            )));
        }
    }
    Ok(())
}

fn maxruns_text(report: &MaxRunsReport) -> String {
    let mut s = format!(
        "alphabet size {}, lengths 1..={}\n{:>3} {:>4} {:>8} {:>7} {:>14}  words\n",
        report.alphabet_size, report.max_len, "n", "mrn", "primary", "argmax", "secondary-free"
    );
    for row in &report.rows {
        let words: Vec<&str> = row.argmax.iter().take(4).map(|a| a.word.as_str()).collect();
        let more = if row.argmax.len() > 4 { ", ..." } else { "" };
        s.push_str(&format!(
            "{:>3} {:>4} {:>8} {:>7} {:>14}  {}{more}\n",
            row.n,
            row.mrn,
            row.max_primary,
            row.argmax.len(),
            if row.all_secondary_free { "yes" } else { "no" },
            words.join(", ")
        ));
    }
    s.push_str(&format!(
        "conjecture status: {}\n",
        if report.consistent {
            "consistent on every length"
        } else {
            "contradicted on some length"
        }
    ));
    s
}

fn sweep_text(report: &FactorSweepReport) -> String {
    let mut s = format!(
        "{:>6} {:>7} {:>10} {:>12}  bounds\n",
        "factor", "words", "secondary", "violations"
    );
    for f in &report.factors {
        s.push_str(&format!(
            "{:>6} {:>7} {:>10} {:>12}  {}\n",
            f.factor,
            f.words,
            f.secondary_runs,
            f.bound_violations,
            if f.bounds_hold { "hold" } else { "violated" }
        ));
    }
    s.push_str(&format!(
        "secondary sets monotone in factor: {}\n",
        if report.monotone { "yes" } else { "no" }
    ));
    s
}
