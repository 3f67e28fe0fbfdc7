//! The `dualis` command line.
//!
//! Exit status: 0 on success, 1 when a checked property fails (an equation
//! is violated, `--verify` disagrees, an internal invariant breaks), 2 on
//! malformed input.
//!
//! A language argument is a regular expression, or the path of a file
//! holding either a regular expression or a DFA in JSON form.

pub mod schema;
mod verbs;

use std::io::Write;
use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::lang::io::DfaJson;
use crate::lang::{parse_regex, Alphabet, Dfa, LangError, RegularLanguage, RESERVED};
use crate::order::OrderError;
use crate::profinite::ProfiniteError;
use crate::resalg::ResAlgError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Direction {
    /// `⪯_S` from a family of sets `--sets`
    Order,
    /// `A_E` from order constraints `--pairs`
    Sets,
}

#[derive(Debug, Parser)]
#[command(name = "dualis", version, about = "Regular languages, syntactic monoids and their finite duals")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    /// Re-check the result against brute-force word enumeration.
    #[arg(long, global = true)]
    pub verify: bool,
    /// Seed for the random samples drawn by `--verify`.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Syntactic monoid and accepting set of a language.
    Synmon {
        expr: String,
        #[arg(long)]
        alphabet: Option<String>,
    },
    /// Canonical minimal DFA.
    Minimize {
        expr: String,
        #[arg(long)]
        alphabet: Option<String>,
    },
    /// Left and right residuals `K\L` and `L/K`.
    Residual {
        k: String,
        l: String,
        #[arg(long)]
        alphabet: Option<String>,
    },
    /// Dual relation of the Boolean algebra generated by some languages.
    Dual {
        #[arg(long, value_delimiter = ',', required_unless_present = "alg")]
        langs: Vec<String>,
        /// An algebra in JSON form instead of generating languages.
        #[arg(long, conflicts_with = "langs")]
        alg: Option<String>,
        #[arg(long)]
        alphabet: Option<String>,
    },
    /// Residuation ideal generated by some languages.
    Ideal {
        #[arg(long, value_delimiter = ',', required = true)]
        gens: Vec<String>,
        /// Extra languages whose syntactic monoids enlarge the ambient monoid.
        #[arg(long = "in", value_delimiter = ',')]
        ambient: Vec<String>,
        #[arg(long)]
        alphabet: Option<String>,
    },
    /// Either side of the sets/quasiorder Galois connection on points `0..n`.
    Galois {
        #[arg(long, value_enum)]
        direction: Direction,
        #[arg(long)]
        points: usize,
        /// Sets as `{0,1} {1} {}`.
        #[arg(long, required_if_eq("direction", "order"))]
        sets: Option<String>,
        /// Constraints as `0<=1,2<=1`.
        #[arg(long, required_if_eq("direction", "sets"))]
        pairs: Option<String>,
    },
    /// Evaluate equations on a language.
    Check {
        /// An equation, or an equation file with an `alphabet:` header.
        #[arg(long)]
        eq: String,
        #[arg(long)]
        lang: String,
        #[arg(long)]
        alphabet: Option<String>,
        /// Substitutions `x=term` applied to the equations first.
        #[arg(long, value_delimiter = ',')]
        assign: Vec<String>,
    },
    /// Value of an ω-term in a monoid.
    Eval {
        #[arg(long)]
        term: String,
        /// A monoid or morphism in JSON form.
        #[arg(long)]
        monoid: String,
        /// `x=element`, the element given by label or index.
        #[arg(long, value_delimiter = ',')]
        assign: Vec<String>,
    },
    /// Joint morphism of several syntactic morphisms with its projections.
    Refine {
        #[arg(long, value_delimiter = ',', required = true)]
        langs: Vec<String>,
        #[arg(long)]
        alphabet: Option<String>,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Violation(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Violation(_) => 1,
        }
    }
}

impl From<LangError> for CliError {
    fn from(e: LangError) -> Self {
        match e {
            LangError::MonoidLaw(_) => CliError::Violation(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<ResAlgError> for CliError {
    fn from(e: ResAlgError) -> Self {
        match e {
            ResAlgError::Lang(inner) => inner.into(),
            ResAlgError::MonoidLaw(_) | ResAlgError::NotCongruence(_) => CliError::Violation(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<ProfiniteError> for CliError {
    fn from(e: ProfiniteError) -> Self {
        match e {
            ProfiniteError::Lang(inner) => inner.into(),
            ProfiniteError::ResAlg(inner) => inner.into(),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<OrderError> for CliError {
    fn from(e: OrderError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Input(format!("invalid JSON: {e}"))
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

/// A finished command: its renderings and the exit status it asks for.
pub(crate) struct Report {
    pub text: String,
    pub json: String,
    pub dot: Option<String>,
    pub status: i32,
    /// Lines from `--verify`, printed on stderr.
    pub notes: Vec<String>,
}

pub(crate) fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output documents serialize");
    s.push('\n');
    s
}

/// Runs with the process streams.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// Runs `argv` (program name first), writing results to `out` and
/// diagnostics to `err`; returns the exit status.
pub fn run_with<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let shown = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(shown.as_bytes());
                    0
                }
                _ => {
                    let _ = err.write_all(shown.as_bytes());
                    2
                }
            };
        }
    };
    match verbs::execute(&cli) {
        Ok(report) => {
            let body = match cli.format {
                Format::Text => Some(&report.text),
                Format::Json => Some(&report.json),
                Format::Dot => report.dot.as_ref(),
            };
            let Some(body) = body else {
                let _ = writeln!(err, "error: this command has no dot output");
                return 2;
            };
            let _ = out.write_all(body.as_bytes());
            for n in &report.notes {
                let _ = writeln!(err, "{n}");
            }
            report.status
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

/// A language argument before an alphabet is fixed.
pub(crate) enum Source {
    Regex(String),
    Dfa(DfaJson),
}

impl Source {
    pub fn load(arg: &str) -> Result<Source> {
        let path = Path::new(arg);
        if !path.is_file() {
            return Ok(Source::Regex(arg.to_string()));
        }
        let text = read_file(arg)?;
        if text.trim_start().starts_with('{') {
            Ok(Source::Dfa(serde_json::from_str(&text)?))
        } else {
            Ok(Source::Regex(text.trim().to_string()))
        }
    }

    /// The automaton as given, before minimization.
    pub fn raw_dfa(&self, alphabet: &Alphabet) -> Result<Dfa> {
        match self {
            Source::Regex(text) => Ok(parse_regex(text, alphabet)?.to_dfa(alphabet)),
            Source::Dfa(js) => {
                let d = js.to_dfa()?;
                d.alphabet().check_same(alphabet)?;
                Ok(d)
            }
        }
    }

    pub fn language(&self, alphabet: &Alphabet) -> Result<RegularLanguage> {
        Ok(RegularLanguage::from_dfa(self.raw_dfa(alphabet)?))
    }

    pub fn display(&self) -> String {
        match self {
            Source::Regex(text) => text.clone(),
            Source::Dfa(js) => format!("<{}-state DFA>", js.states),
        }
    }
}

pub(crate) fn read_file(path: &str) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {path}: {e}")))
}

/// The `--alphabet` flag, else the alphabet of a JSON automaton, else the
/// letters occurring in the expressions and in `extra`.
pub(crate) fn resolve_alphabet(flag: Option<&str>, sources: &[&Source], extra: &[char]) -> Result<Alphabet> {
    if let Some(text) = flag {
        return Ok(Alphabet::parse(text)?);
    }
    for s in sources {
        if let Source::Dfa(js) = s {
            return Ok(js.to_dfa()?.alphabet().clone());
        }
    }
    let mut letters: Vec<char> = extra.to_vec();
    for s in sources {
        if let Source::Regex(text) = s {
            letters.extend(text.chars().filter(|c| !c.is_whitespace() && !RESERVED.contains(c)));
        }
    }
    Ok(Alphabet::new(letters)?)
}

pub(crate) fn load_all(args: &[String]) -> Result<Vec<Source>> {
    args.iter().map(|a| Source::load(a)).collect()
}
