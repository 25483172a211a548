use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use ntriv::certify::{self, Certificate, CertifyError, Kind, Lemma61, Sign};
use ntriv::parse::ParseError;

mod commands;
mod input;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{origin}:{}:{}: {}", .error.line, .error.column, .error.message)]
    Parse { origin: String, error: ParseError },
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Certify(#[from] CertifyError),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse { .. } | CliError::Invalid(_) | CliError::Io(_) => 2,
            CliError::Certify(e) => e.exit_code() as u8,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Raw,
    Gcd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Hyperbolic,
    Elliptic,
    Parabolic,
    Unknotted,
    Auto,
}

#[derive(Parser)]
#[command(name = "ntriv", version, about = "Commutator calculus, link and Seifert invariants, and n-triviality certificates")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    pub format: Format,
    /// Truncation degree D.
    #[arg(short = 'D', long = "degree", default_value_t = 6, value_parser = clap::value_parser!(u64).range(1..), global = true)]
    pub degree: u64,
    /// Reduction mode for Milnor invariants.
    #[arg(long, value_enum, default_value_t = Mode::Raw, global = true)]
    pub mode: Mode,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Free-group word operations.
    #[command(subcommand)]
    Word(WordCmd),
    /// Magnus expansion, LCS degree and Fox coefficients.
    #[command(subcommand)]
    Magnus(MagnusCmd),
    /// Write a word of LCS degree at least m+1 as simple commutators of weight m+1..D times a residual.
    Decompose {
        #[arg(short, long)]
        m: usize,
        input: Option<PathBuf>,
    },
    /// Normal-closure LCS degree through the Schreier rewrite.
    #[command(subcommand)]
    Schreier(SchreierCmd),
    /// Letter-set trivializer families.
    #[command(subcommand)]
    Trivialize(TrivializeCmd),
    /// Milnor invariants of a longitude system, one longitude per line.
    #[command(subcommand)]
    Milnor(MilnorCmd),
    /// Alexander polynomial of a Seifert matrix.
    Alexander { input: Option<PathBuf> },
    /// Literal shape class of a symmetric form.
    Classify {
        /// Treat the input as a Seifert matrix and classify V + Vᵀ.
        #[arg(long)]
        seifert: bool,
        /// Apply the basis change U M Uᵀ first; U is given in the matrix format.
        #[arg(long)]
        basis: Option<PathBuf>,
        input: Option<PathBuf>,
    },
    /// Coefficients of p(h) / Δ(e^h).
    Mmr {
        /// Highest power of h.
        #[arg(long, default_value_t = 4)]
        order: usize,
        /// Read a Seifert matrix and use its Alexander polynomial.
        #[arg(long)]
        matrix: bool,
        input: Option<PathBuf>,
    },
    /// Numerical bounds.
    #[command(subcommand)]
    Bounds(BoundsCmd),
    /// Verify a certificate.
    Certify { kind: KindArg, input: Option<PathBuf> },
    /// Translate a certificate to another kind and re-verify it.
    Translate {
        /// elliptic-to-hyperbolic, parabolic-to-hyperbolic, unknotted-shift or identity; defaults by kind.
        #[arg(long)]
        lemma: Option<Lemma61>,
        input: Option<PathBuf>,
    },
    /// Spine-link Milnor pipeline.
    #[command(subcommand)]
    Pipeline(PipelineCmd),
    /// Alternating sum over subsets of {1..n+1}.
    Altsum {
        #[arg(short, long)]
        n: u32,
        input: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
pub enum WordCmd {
    /// Freely reduce a word.
    Reduce { input: Option<PathBuf> },
    /// Left-normed commutator of the words on successive lines.
    Commutator { input: Option<PathBuf> },
    /// Delete the given generators.
    Kill {
        #[arg(long, value_name = "LIST")]
        generators: String,
        input: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
pub enum MagnusCmd {
    /// Magnus expansion truncated at degree D.
    Expand { input: Option<PathBuf> },
    /// Lower-central-series degree up to D.
    Degree { input: Option<PathBuf> },
    /// Coefficient of X_{i1}…X_{ik}.
    Fox {
        #[arg(long, value_name = "LIST")]
        index: String,
        input: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
pub enum SchreierCmd {
    /// LCS degree of a word in the normal closure of the killed generators.
    Degree {
        #[arg(long, value_name = "LIST")]
        killed: String,
        input: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
pub enum TrivializeCmd {
    /// Build the product word and its letter-set family.
    Build {
        /// Use the extremal entry word with this many auxiliary generators.
        #[arg(long, requires = "m")]
        extremal: Option<u32>,
        #[arg(short, long)]
        m: Option<usize>,
        input: Option<PathBuf>,
    },
    /// Check that every nonempty subfamily deletion trivializes.
    Verify { input: Option<PathBuf> },
}

#[derive(Subcommand)]
pub enum MilnorCmd {
    /// One invariant μ(i1 … ik).
    Invariant {
        #[arg(long, value_name = "LIST")]
        index: String,
        input: Option<PathBuf>,
    },
    /// Whether all invariants of length at most n+1 vanish.
    Vanish {
        #[arg(short, long)]
        n: usize,
        input: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
pub enum BoundsCmd {
    /// q(m)
    Q { m: u64 },
    /// t(n)
    T { n: u64 },
    /// q_param(n, k)
    QParam { n: u64, k: u64 },
    /// Factor partition and k for generator sets such as `1,2 2,3 5`.
    PartitionK {
        #[arg(required = true)]
        sets: Vec<String>,
    },
    /// min(q) - 1
    #[command(name = "l-n-s")]
    LnS {
        #[arg(required = true, allow_negative_numbers = true)]
        qs: Vec<i64>,
    },
    /// The chained inequalities at n.
    Inequalities { n: u64 },
    /// Good-arc length bound.
    GoodArc {
        m: u64,
        k: u64,
        s: u64,
        #[arg(long)]
        embedded: bool,
    },
    /// s_y = 0 or w_y / s_y >= 4/3.
    Ratio { w_y: u64, s_y: u64 },
    /// 2^s - 2
    ConflictMax { s: u32 },
    /// 6k + r + 2k(2^s - 2)
    ProductLength { k: u64, r: u64, s: u32 },
    /// Count against log2((m + 1 - 6k) / 6).
    ProductBound { m: u64, k: u64, r: u64, s: u32 },
    /// floor(log2(num / den))
    FloorLog2 { num: u64, den: u64 },
    /// a > log2(num / den)
    ExceedsLog2 {
        #[arg(allow_negative_numbers = true)]
        a: i64,
        num: u64,
        den: u64,
    },
}

#[derive(Subcommand)]
pub enum PipelineCmd {
    /// Milnor vanishing of the spine link with the given pushoff signs.
    SpineLink {
        /// One sign per generator, e.g. `+-+-`.
        #[arg(long, allow_hyphen_values = true)]
        signs: String,
        /// Defaults to the certificate's n.
        #[arg(short, long)]
        n: Option<u64>,
        /// Also report the slice variant at this depth.
        #[arg(long)]
        slice_depth: Option<u64>,
        input: Option<PathBuf>,
    },
}

/// Envelope for every structured report that does not carry its own schema.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report<T> {
    pub schema: u32,
    pub command: String,
    pub result: T,
}

/// Text to print and the process exit code.
pub struct Outcome {
    pub text: String,
    pub code: u8,
}

pub fn render<T: Serialize>(format: Format, command: &str, result: T, human: impl FnOnce(&T) -> String) -> String {
    match format {
        Format::Human => human(&result),
        Format::Json => {
            let report = Report { schema: certify::SCHEMA, command: command.into(), result };
            serde_json::to_string_pretty(&report).expect("reports serialize")
        }
    }
}

fn read_certificate(path: &Option<PathBuf>) -> Result<Certificate, CliError> {
    let input = input::read_opt(path)?;
    Certificate::from_json(&input.text).map_err(|e| match e {
        CertifyError::Syntax { line, column, message } => input.error(ParseError::new(line, column, message)),
        other => other.into(),
    })
}

fn run_certify(cli: &Cli, kind: KindArg, path: &Option<PathBuf>) -> Result<Outcome, CliError> {
    let cert = read_certificate(path)?;
    let expected = match kind {
        KindArg::Hyperbolic => Some(Kind::Hyperbolic),
        KindArg::Elliptic => Some(Kind::Elliptic),
        KindArg::Parabolic => Some(Kind::Parabolic),
        KindArg::Unknotted => Some(Kind::Unknotted),
        KindArg::Auto => None,
    };
    if let Some(k) = expected.filter(|&k| k != cert.kind) {
        return Err(CliError::Invalid(format!("certificate kind is {}, expected {k}", cert.kind)));
    }
    let report = certify::certify(&cert);
    let text = match cli.format {
        Format::Human => report.to_string(),
        Format::Json => report.to_json(),
    };
    Ok(Outcome { text, code: report.verdict.exit_code() as u8 })
}

fn run_translate(cli: &Cli, lemma: Option<Lemma61>, path: &Option<PathBuf>) -> Result<Outcome, CliError> {
    let cert = read_certificate(path)?;
    let lemma = lemma.or_else(|| Lemma61::for_kind(cert.kind)).unwrap_or(Lemma61::Identity);
    let t = certify::lemma61_translate(&cert, lemma)?;
    let code = t.report.verdict.exit_code() as u8;
    let text = render(cli.format, "translate", t, |t| {
        format!("{}: source {}\n{}target certificate:\n{}", t.lemma, t.source_report.verdict, t.report, t.certificate.to_json())
    });
    Ok(Outcome { text, code })
}

fn run_pipeline(cli: &Cli, cmd: &PipelineCmd) -> Result<Outcome, CliError> {
    let PipelineCmd::SpineLink { signs, n, slice_depth, input } = cmd;
    let cert = read_certificate(input)?;
    let signs = Sign::parse_sequence(signs).map_err(|e| CliError::Invalid(format!("--signs: {e}")))?;
    let report = certify::spine_link_pipeline(&cert, &signs, n.unwrap_or(cert.n), *slice_depth)?;
    let text = match cli.format {
        Format::Human => report.to_string(),
        Format::Json => report.to_json(),
    };
    Ok(Outcome { text, code: report.verdict.exit_code() as u8 })
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Certify { kind, input } => run_certify(cli, *kind, input),
        Command::Translate { lemma, input } => run_translate(cli, *lemma, input),
        Command::Pipeline(cmd) => run_pipeline(cli, cmd),
        other => commands::run(cli, other),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            let mut out = std::io::stdout().lock();
            let text = outcome.text.trim_end();
            if writeln!(out, "{text}").is_err() {
                return ExitCode::from(2);
            }
            ExitCode::from(outcome.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
