//! `kiselman`: canonical forms, arithmetic, enumeration, equation solving and
//! property verification for Kiselman's semigroup `K_n`.
//!
//! Output is assembled in full before anything is written, so error paths
//! leave stdout empty. Exit codes: 0 success, 2 usage, 3 resource limits,
//! 4 a violated invariant.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use kiselman::cache::load_or_enumerate;
use kiselman::enumerate::{check_rank_policy, DEFAULT_ELEMENT_LIMIT};
use kiselman::equations::solve_right_zero;
use kiselman::rewrite::{canonical_form, reduction_trace};
use kiselman::verify::{run_verify, SuiteStatus, VerifyConfig, VerifyReport};
use kiselman::{Element, EnumerationResult, Error, ErrorClass, LetterSet, Word};

#[derive(Parser, Debug)]
#[command(name = "kiselman", version, about = "Computations in Kiselman's semigroup K_n")]
struct Cli {
    /// Rank `n` (number of generators).
    #[arg(long, global = true)]
    n: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Directory holding enumeration caches.
    #[arg(long, global = true, env = "KISELMAN_CACHE_DIR")]
    cache_dir: Option<PathBuf>,

    /// Maximum number of elements an enumeration may produce.
    #[arg(long, global = true, default_value_t = DEFAULT_ELEMENT_LIMIT as u64,
          value_parser = clap::value_parser!(u64).range(1..))]
    limit: u64,

    /// Seed for randomised checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Lift the default rank cap and exhaustive-scan budgets.
    #[arg(long, global = true)]
    allow_large: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Canonical form of a word.
    Canon {
        word: String,
        /// Print every deletion step.
        #[arg(long)]
        trace: bool,
    },
    /// Product of words, left to right.
    Mul { words: Vec<String> },
    /// List all elements of K_n.
    Enum,
    /// Solve x · y = f by exhaustive search.
    Solve {
        #[arg(long)]
        y: String,
    },
    /// Run the property suites.
    Verify {
        /// Suite name, or `all`; may be repeated.
        #[arg(long)]
        suite: Vec<String>,
    },
    /// Summary statistics of K_n.
    Stats,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

/// What a command produced: text for stdout and the exit code to use.
struct Outcome {
    stdout: String,
    code: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, code: 0 }
    }
}

fn exit_code(err: &Error) -> u8 {
    match err.class() {
        ErrorClass::Usage => 2,
        ErrorClass::Resource => 3,
        ErrorClass::Invariant => 4,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.stdout.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(3);
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn rank(cli: &Cli) -> Result<usize, Error> {
    cli.n
        .ok_or_else(|| Error::Domain("the rank is required: pass --n <rank>".into()))
}

fn limit(cli: &Cli) -> usize {
    usize::try_from(cli.limit).unwrap_or(usize::MAX)
}

fn unsupported(cmd: &str, format: Format) -> Error {
    Error::Domain(format!("`{cmd}` has no {format:?} output").to_lowercase())
}

fn json(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serialises");
    s.push('\n');
    s
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    match &cli.command {
        Command::Canon { word, trace } => cmd_canon(cli, word, *trace),
        Command::Mul { words } => cmd_mul(cli, words),
        Command::Enum => cmd_enum(cli),
        Command::Solve { y } => cmd_solve(cli, y),
        Command::Verify { suite } => cmd_verify(cli, suite),
        Command::Stats => cmd_stats(cli),
    }
}

/// Enumerates `K_n` under the rank policy, through the cache when configured.
fn load(cli: &Cli, n: usize) -> Result<EnumerationResult, Error> {
    check_rank_policy(n, cli.allow_large)?;
    load_or_enumerate(cli.cache_dir.as_deref(), n, limit(cli))
}

#[derive(Serialize)]
struct TraceStep {
    kind: String,
    letter: u8,
    keep: usize,
    remove: usize,
    word: String,
}

fn cmd_canon(cli: &Cli, text: &str, trace: bool) -> Result<Outcome, Error> {
    let n = rank(cli)?;
    let w = Word::parse(text, n)?;
    match (cli.format, trace) {
        (Format::Text, false) => Ok(Outcome::ok(format!("{}\n", canonical_form(&w)))),
        (Format::Text, true) => {
            let t = reduction_trace(&w);
            let mut out = String::new();
            for (r, v) in &t.steps {
                writeln!(out, "{r} -> {v}").unwrap();
            }
            writeln!(out, "canonical: {}", t.result()).unwrap();
            Ok(Outcome::ok(out))
        }
        (Format::Json, _) => {
            let t = reduction_trace(&w);
            let steps: Option<Vec<TraceStep>> = trace.then(|| {
                t.steps
                    .iter()
                    .map(|(r, v)| TraceStep {
                        kind: r.kind.to_string(),
                        letter: r.letter,
                        keep: r.kept_position,
                        remove: r.removed_position,
                        word: v.to_string(),
                    })
                    .collect()
            });
            #[derive(Serialize)]
            struct Canon {
                rank: usize,
                input: String,
                canonical: String,
                #[serde(skip_serializing_if = "Option::is_none")]
                steps: Option<Vec<TraceStep>>,
            }
            Ok(Outcome::ok(json(&Canon {
                rank: n,
                input: w.to_string(),
                canonical: t.result().to_string(),
                steps,
            })))
        }
        (Format::Csv, true) => {
            let t = reduction_trace(&w);
            let mut out = String::from("step,kind,letter,keep,remove,word\n");
            for (k, (r, v)) in t.steps.iter().enumerate() {
                writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    k + 1,
                    r.kind,
                    r.letter,
                    r.kept_position,
                    r.removed_position,
                    v
                )
                .unwrap();
            }
            Ok(Outcome::ok(out))
        }
        (Format::Csv, false) => Err(unsupported("canon", Format::Csv)),
    }
}

fn cmd_mul(cli: &Cli, texts: &[String]) -> Result<Outcome, Error> {
    let n = rank(cli)?;
    let factors = texts
        .iter()
        .map(|t| Element::parse(t, n))
        .collect::<Result<Vec<_>, _>>()?;
    let result = kiselman::algebra::product(n, &factors)?;
    match cli.format {
        Format::Text => Ok(Outcome::ok(format!("{}\n", result.word()))),
        Format::Json => {
            #[derive(Serialize)]
            struct Mul {
                rank: usize,
                factors: Vec<String>,
                product: String,
            }
            Ok(Outcome::ok(json(&Mul {
                rank: n,
                factors: factors.iter().map(|x| x.word().to_string()).collect(),
                product: result.word().to_string(),
            })))
        }
        Format::Csv => Err(unsupported("mul", Format::Csv)),
    }
}

fn cmd_enum(cli: &Cli) -> Result<Outcome, Error> {
    let n = rank(cli)?;
    let kn = load(cli, n)?;
    let out = match cli.format {
        Format::Text => {
            let mut out = format!("count: {}\n", kn.cardinality());
            for x in kn.iter() {
                writeln!(out, "{}", x.word()).unwrap();
            }
            out
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Listing {
                rank: usize,
                count: usize,
                elements: Vec<String>,
            }
            json(&Listing {
                rank: n,
                count: kn.cardinality(),
                elements: kn.iter().map(|x| x.word().to_string()).collect(),
            })
        }
        Format::Csv => {
            let mut out = String::from("index,length,word\n");
            for (k, x) in kn.iter().enumerate() {
                writeln!(out, "{k},{},{}", x.word().len(), x.word()).unwrap();
            }
            out
        }
    };
    Ok(Outcome::ok(out))
}

fn cmd_solve(cli: &Cli, y_text: &str) -> Result<Outcome, Error> {
    let n = rank(cli)?;
    let y = Element::parse(y_text, n)?;
    let kn = load(cli, n)?;
    let sol = solve_right_zero(&y, &kn)?;
    let words = |xs: &mut dyn Iterator<Item = &Element>| -> Vec<String> {
        xs.map(|x| x.word().to_string()).collect()
    };
    let out = match cli.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Decomposition {
                special: String,
                t: Vec<String>,
            }
            #[derive(Serialize)]
            struct Solve {
                rank: usize,
                y: String,
                count: usize,
                solutions: Vec<String>,
                decomposition: Option<Decomposition>,
            }
            json(&Solve {
                rank: n,
                y: y.word().to_string(),
                count: sol.count(),
                solutions: words(&mut sol.solutions.iter()),
                decomposition: sol.decomposition.as_ref().map(|d| Decomposition {
                    special: d.special.word().to_string(),
                    t: words(&mut d.t_part.iter()),
                }),
            })
        }
        Format::Text => {
            let mut out = format!("count: {}\n", sol.count());
            for x in &sol.solutions {
                writeln!(out, "{}", x.word()).unwrap();
            }
            out
        }
        Format::Csv => {
            let mut out = String::from("index,word\n");
            for (k, x) in sol.solutions.iter().enumerate() {
                writeln!(out, "{k},{}", x.word()).unwrap();
            }
            out
        }
    };
    Ok(Outcome::ok(out))
}

fn status_label(s: SuiteStatus) -> &'static str {
    match s {
        SuiteStatus::Pass => "PASS",
        SuiteStatus::Fail => "FAIL",
        SuiteStatus::Skipped => "SKIP",
        SuiteStatus::NotRun => "NOT RUN",
    }
}

fn render_report(report: &VerifyReport, format: Format) -> Result<String, Error> {
    match format {
        Format::Json => Ok(json(report)),
        Format::Text => {
            let mut out = String::new();
            for s in &report.suites {
                write!(out, "{:<7} {} checked={}", status_label(s.status), s.name, s.checked).unwrap();
                for (k, v) in &s.details {
                    write!(out, " {k}={v}").unwrap();
                }
                out.push('\n');
                for c in &s.counterexamples {
                    writeln!(out, "        counterexample: {c}").unwrap();
                }
            }
            if let Some(reason) = &report.aborted {
                writeln!(out, "aborted: {reason}").unwrap();
            }
            writeln!(
                out,
                "rank {}: {} suites, {} failed",
                report.rank,
                report.suites.len(),
                report.failures()
            )
            .unwrap();
            Ok(out)
        }
        Format::Csv => Err(unsupported("verify", Format::Csv)),
    }
}

fn cmd_verify(cli: &Cli, suites: &[String]) -> Result<Outcome, Error> {
    let n = rank(cli)?;
    if cli.format == Format::Csv {
        return Err(unsupported("verify", Format::Csv));
    }
    let mut config = VerifyConfig::new(n);
    config.limit = limit(cli);
    config.seed = cli.seed;
    config.allow_large = cli.allow_large;
    config.cache_dir = cli.cache_dir.clone();
    config.suites = (!suites.is_empty()).then(|| suites.to_vec());
    let report = run_verify(&config)?;
    let code = if report.aborted.is_some() {
        3
    } else if report.failures() > 0 {
        4
    } else {
        0
    };
    Ok(Outcome {
        stdout: render_report(&report, cli.format)?,
        code,
    })
}

#[derive(Serialize)]
struct Stats {
    rank: usize,
    cardinality: usize,
    /// Elements containing the letter 1.
    with_first_letter: usize,
    idempotents: usize,
    /// `m(x)` value to number of elements.
    m_histogram: BTreeMap<usize, usize>,
}

fn cmd_stats(cli: &Cli) -> Result<Outcome, Error> {
    let n = rank(cli)?;
    let kn = load(cli, n)?;
    let first = LetterSet::from_indices([1], n)?;
    let with_first = kn.filter_by_content(&first, &LetterSet::full(n)?)?.len();
    let mut idempotents = 0;
    let mut m_histogram = BTreeMap::new();
    for x in kn.iter() {
        if x.multiply(x)? == *x {
            idempotents += 1;
        }
        *m_histogram.entry(x.m_value()).or_insert(0) += 1;
    }
    let stats = Stats {
        rank: n,
        cardinality: kn.cardinality(),
        with_first_letter: with_first,
        idempotents,
        m_histogram,
    };
    let out = match cli.format {
        Format::Json => json(&stats),
        Format::Text => {
            let mut out = format!(
                "|K_{n}| = {}\n|K_{n}^1| = {}\nidempotents: {}\nm-value histogram:\n",
                stats.cardinality, stats.with_first_letter, stats.idempotents
            );
            for (m, c) in &stats.m_histogram {
                writeln!(out, "  m={m}: {c}").unwrap();
            }
            out
        }
        Format::Csv => {
            let mut out = String::from("m,count\n");
            for (m, c) in &stats.m_histogram {
                writeln!(out, "{m},{c}").unwrap();
            }
            out
        }
    };
    Ok(Outcome::ok(out))
}
