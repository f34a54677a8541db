//! Command-line surface and dispatch.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use thiserror::Error;

use fdfa::algebra::{complement, intersect_with, is_contained, is_empty, is_equal, is_universal, union_with};
use fdfa::families::{deterministic_fixtures, fdfa_fixtures, gen_ln, DetFixture};
use fdfa::saturation::{check_saturation_bounded, check_saturation_exact, Budget, SaturationVerdict};
use fdfa::translate::{dba_to_fdfa, dca_to_fdfa, dpa_to_fdfa, fdfa_to_nba, nba_accepts_up, DetOmega};
use fdfa::word::canonicalize;
use fdfa::{Alphabet, Fdfa, ProductMode, UpWord};

use crate::document::{self, DocError, Document};
use crate::report::{self, Report};

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

/// Families of DFAs: membership, Boolean operations, decision procedures,
/// saturation checks and translations.
#[derive(Debug, Parser)]
#[command(name = "fdfa", version)]
pub struct Cli {
    /// Print reports as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

/// A pair `(u, v)`; symbols are comma-separated unless every symbol name is a
/// single character.
#[derive(Debug, clap::Args)]
pub struct PairArgs {
    /// Finite prefix (empty by default).
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    pub u: String,
    /// Nonempty period.
    #[arg(long, allow_hyphen_values = true)]
    pub v: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Normalize a pair with respect to an FDFA's leading automaton.
    Normalize {
        file: Option<PathBuf>,
        #[command(flatten)]
        pair: PairArgs,
    },
    /// Decide whether an FDFA, DBA, DCA, DPA or NBA accepts a pair.
    Member {
        file: Option<PathBuf>,
        #[command(flatten)]
        pair: PairArgs,
    },
    /// Decide whether an NBA accepts u·v^ω.
    NbaMember {
        file: Option<PathBuf>,
        #[command(flatten)]
        pair: PairArgs,
    },
    /// Complement an FDFA.
    Complement { file: Option<PathBuf> },
    /// Union of two FDFAs.
    Union {
        first: PathBuf,
        second: PathBuf,
        /// Materialize the full product instead of its reachable part.
        #[arg(long)]
        full: bool,
    },
    /// Intersection of two FDFAs.
    Intersect {
        first: PathBuf,
        second: PathBuf,
        /// Materialize the full product instead of its reachable part.
        #[arg(long)]
        full: bool,
    },
    /// Decide emptiness.
    Empty { file: Option<PathBuf> },
    /// Decide universality.
    Universal { file: Option<PathBuf> },
    /// Decide whether the first language is contained in the second.
    Contains { first: PathBuf, second: PathBuf },
    /// Decide language equality.
    Equal { first: PathBuf, second: PathBuf },
    /// Check saturation, by bounded enumeration or exactly.
    Saturated {
        file: Option<PathBuf>,
        /// Decide saturation exactly.
        #[arg(long)]
        exact: bool,
        #[arg(long, default_value_t = 3)]
        max_u: usize,
        #[arg(long, default_value_t = 3)]
        max_v: usize,
        /// Largest number of transformation-class pairs the exact check may explore.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Translate a saturated FDFA to an NBA.
    ToNba { file: Option<PathBuf> },
    /// Translate a DBA to an FDFA.
    FromDba { file: Option<PathBuf> },
    /// Translate a DCA to an FDFA.
    FromDca { file: Option<PathBuf> },
    /// Translate a DPA to an FDFA.
    FromDpa { file: Option<PathBuf> },
    /// Not supported: NBA to FDFA needs determinization.
    FromNba { file: Option<PathBuf> },
    /// Generate the FDFA for the Lₙ family.
    GenLn { n: usize },
    /// List the built-in fixtures, print one, or write all of them to a directory.
    Fixtures {
        name: Option<String>,
        #[arg(long)]
        dir: Option<PathBuf>,
    },
    /// Canonical representation of u·v^ω.
    Canonical {
        /// Comma-separated symbol names.
        #[arg(long, default_value = "a,b")]
        alphabet: String,
        #[command(flatten)]
        pair: PairArgs,
    },
    /// Check a document against its kind's invariants.
    Validate { file: Option<PathBuf> },
    /// Size of an FDFA as (leading states, largest progress DFA), or the state count of an automaton.
    Size { file: Option<PathBuf> },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Document(#[from] DocError),
    #[error(transparent)]
    Library(#[from] fdfa::Error),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    OutOfScope(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Library(fdfa::Error::BudgetExceeded { .. }) => EXIT_BUDGET,
            _ => EXIT_USAGE,
        }
    }
}

/// What a command produced.
#[derive(Debug, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn answer(holds: bool, report: &Report, json: bool) -> Self {
        Outcome {
            code: if holds { EXIT_YES } else { EXIT_NO },
            stdout: report.render(json),
            stderr: String::new(),
        }
    }

    fn document(doc: &Document) -> Self {
        Outcome {
            code: EXIT_YES,
            stdout: document::serialize(doc),
            stderr: String::new(),
        }
    }

    fn note(mut self, note: &str) -> Self {
        self.stderr.push_str(note);
        self.stderr.push('\n');
        self
    }
}

pub const NBA_OUT_OF_SCOPE: &str = "from-nba is not supported: translating an NBA to an FDFA requires \
     determinization, which is out of scope; translate a deterministic (DBA, DCA or DPA) automaton instead";

const SATURATION_NOTE: &str = "note: the result is only meaningful if the inputs are saturated";

fn read_fdfa(path: Option<&Path>) -> Result<Fdfa, CliError> {
    match document::read(path)? {
        Document::Fdfa(f) => Ok(f),
        other => Err(CliError::Usage(format!(
            "expected an fdfa document, found {}",
            other.kind().name()
        ))),
    }
}

fn parse_pair(alphabet: &Alphabet, pair: &PairArgs) -> Result<(Vec<usize>, Vec<usize>), CliError> {
    let u = alphabet.parse_word(&pair.u)?;
    let v = alphabet.parse_word(&pair.v)?;
    if v.is_empty() {
        return Err(fdfa::Error::EmptyPeriod.into());
    }
    Ok((u, v))
}

fn det_fixture(doc: Document, expected: &str) -> Result<DetFixture, CliError> {
    let fixture = match doc {
        Document::Dba(d) => DetFixture::Dba(d),
        Document::Dca(d) => DetFixture::Dca(d),
        Document::Dpa(d) => DetFixture::Dpa(d),
        Document::Nba(_) if expected != "nba" => {
            return Err(CliError::OutOfScope(NBA_OUT_OF_SCOPE.into()));
        }
        other => {
            return Err(CliError::Usage(format!(
                "expected a {expected} document, found {}",
                other.kind().name()
            )))
        }
    };
    Ok(fixture)
}

fn all_fixtures() -> Vec<(String, Document)> {
    let mut out: Vec<(String, Document)> = fdfa_fixtures()
        .into_iter()
        .map(|(name, f)| (name, Document::Fdfa(f)))
        .collect();
    for (name, d) in deterministic_fixtures() {
        let doc = match d {
            DetFixture::Dba(d) => Document::Dba(d),
            DetFixture::Dca(d) => Document::Dca(d),
            DetFixture::Dpa(d) => Document::Dpa(d),
        };
        out.push((name.to_string(), doc));
    }
    out
}

pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let json = cli.json;
    match &cli.command {
        Command::Normalize { file, pair } => {
            let f = read_fdfa(file.as_deref())?;
            let (u, v) = parse_pair(f.alphabet(), pair)?;
            let n = f.normalize(&u, &v)?;
            let lead = f.leading();
            if lead.run_initial(&n.x) != lead.run(n.state, &n.y) {
                return Err(fdfa::Error::Internal("normalized pair failed re-verification".into()).into());
            }
            let r = Report::new()
                .with("normalized", report::pair(f.alphabet(), &n.x, &n.y))
                .with("i", n.i)
                .with("j", n.j)
                .with("leading_state", n.state);
            Ok(Outcome::answer(true, &r, json))
        }
        Command::Member { file, pair } => {
            let doc = document::read(file.as_deref())?;
            let (u, v) = parse_pair(doc.alphabet(), pair)?;
            let (accepted, mut r) = match &doc {
                Document::Fdfa(f) => {
                    let m = f.membership(&u, &v)?;
                    let n = f.normalize(&u, &v)?;
                    let r = Report::new()
                        .with("normalized", report::pair(f.alphabet(), &n.x, &n.y))
                        .with("leading_state", m.leading_state)
                        .with("progress_state", m.progress_state);
                    (m.accepted, r)
                }
                Document::Dba(d) => (d.accepts_up(&u, &v)?, Report::new()),
                Document::Dca(d) => (d.accepts_up(&u, &v)?, Report::new()),
                Document::Dpa(d) => (d.accepts_up(&u, &v)?, Report::new()),
                Document::Nba(b) => (nba_accepts_up(b, &u, &v)?, Report::new()),
                Document::Dfa(_) => {
                    return Err(CliError::Usage(
                        "member needs an ω-acceptor; a dfa accepts finite words".into(),
                    ))
                }
            };
            let mut full = Report::new()
                .with("answer", if accepted { "accepted" } else { "rejected" })
                .with("pair", report::pair(doc.alphabet(), &u, &v));
            for (k, val) in std::mem::take(&mut r).into_entries() {
                full.push(&k, val);
            }
            Ok(Outcome::answer(accepted, &full, json))
        }
        Command::NbaMember { file, pair } => {
            let b = match document::read(file.as_deref())? {
                Document::Nba(b) => b,
                other => {
                    return Err(CliError::Usage(format!(
                        "expected an nba document, found {}",
                        other.kind().name()
                    )))
                }
            };
            let (u, v) = parse_pair(b.automaton.alphabet(), pair)?;
            let accepted = nba_accepts_up(&b, &u, &v)?;
            let r = Report::new()
                .with("answer", if accepted { "accepted" } else { "rejected" })
                .with("pair", report::pair(b.automaton.alphabet(), &u, &v));
            Ok(Outcome::answer(accepted, &r, json))
        }
        Command::Complement { file } => {
            let f = read_fdfa(file.as_deref())?;
            Ok(Outcome::document(&Document::Fdfa(complement(&f))))
        }
        Command::Union { first, second, full } | Command::Intersect { first, second, full } => {
            let (f1, f2) = (read_fdfa(Some(first))?, read_fdfa(Some(second))?);
            let mode = if *full { ProductMode::Full } else { ProductMode::Reachable };
            let p = if matches!(cli.command, Command::Union { .. }) {
                union_with(&f1, &f2, mode)?
            } else {
                intersect_with(&f1, &f2, mode)?
            };
            Ok(Outcome::document(&Document::Fdfa(p.fdfa)).note(SATURATION_NOTE))
        }
        Command::Empty { file } => {
            let f = read_fdfa(file.as_deref())?;
            let d = is_empty(&f)?;
            Ok(Outcome::answer(d.holds, &report::decision(f.alphabet(), &d, "accepted_pair"), json))
        }
        Command::Universal { file } => {
            let f = read_fdfa(file.as_deref())?;
            let d = is_universal(&f)?;
            Ok(Outcome::answer(d.holds, &report::decision(f.alphabet(), &d, "rejected_pair"), json))
        }
        Command::Contains { first, second } => {
            let (f1, f2) = (read_fdfa(Some(first))?, read_fdfa(Some(second))?);
            let d = is_contained(&f1, &f2)?;
            Ok(Outcome::answer(d.holds, &report::decision(f1.alphabet(), &d, "counterexample"), json))
        }
        Command::Equal { first, second } => {
            let (f1, f2) = (read_fdfa(Some(first))?, read_fdfa(Some(second))?);
            let d = is_equal(&f1, &f2)?;
            Ok(Outcome::answer(d.holds, &report::decision(f1.alphabet(), &d, "counterexample"), json))
        }
        Command::Saturated { file, exact, max_u, max_v, budget } => {
            let f = read_fdfa(file.as_deref())?;
            let s = if *exact {
                let budget = budget.map_or_else(Budget::default, |max_class_pairs| Budget { max_class_pairs });
                check_saturation_exact(&f, budget)?
            } else {
                check_saturation_bounded(&f, *max_u, *max_v)?
            };
            let holds = s.verdict != SaturationVerdict::Unsaturated;
            Ok(Outcome::answer(holds, &report::saturation(f.alphabet(), &s), json))
        }
        Command::ToNba { file } => {
            let f = read_fdfa(file.as_deref())?;
            let t = fdfa_to_nba(&f)?;
            Ok(Outcome::document(&Document::Nba(t.nba)).note(
                "note: the NBA recognizes the FDFA's language only if the FDFA is saturated",
            ))
        }
        Command::FromDba { file } | Command::FromDca { file } | Command::FromDpa { file } => {
            let expected = match cli.command {
                Command::FromDba { .. } => "dba",
                Command::FromDca { .. } => "dca",
                _ => "dpa",
            };
            let fixture = det_fixture(document::read(file.as_deref())?, expected)?;
            let f = match (&fixture, expected) {
                (DetFixture::Dba(d), "dba") => dba_to_fdfa(d)?,
                (DetFixture::Dca(d), "dca") => dca_to_fdfa(d)?,
                (DetFixture::Dpa(d), "dpa") => dpa_to_fdfa(d)?,
                (other, _) => {
                    return Err(CliError::Usage(format!(
                        "expected a {expected} document, found {}",
                        match other {
                            DetFixture::Dba(_) => "dba",
                            DetFixture::Dca(_) => "dca",
                            DetFixture::Dpa(_) => "dpa",
                        }
                    )))
                }
            };
            Ok(Outcome::document(&Document::Fdfa(f)))
        }
        Command::FromNba { .. } => Err(CliError::OutOfScope(NBA_OUT_OF_SCOPE.into())),
        Command::GenLn { n } => Ok(Outcome::document(&Document::Fdfa(gen_ln(*n)?.fdfa))),
        Command::Fixtures { name, dir } => fixtures(name.as_deref(), dir.as_deref()),
        Command::Canonical { alphabet, pair } => {
            let sigma = Alphabet::new(alphabet.split(',').map(str::trim))?;
            let (u, v) = parse_pair(&sigma, pair)?;
            let w = UpWord::new(u, v)?;
            let c = canonicalize(&w);
            if !c.same_word(&w) {
                return Err(fdfa::Error::Internal("canonical form failed re-verification".into()).into());
            }
            let r = Report::new().with("canonical", report::up_word(&sigma, &c));
            Ok(Outcome::answer(true, &r, json))
        }
        Command::Validate { file } => {
            let text = document::read_text(file.as_deref())?;
            let diagnostics = document::diagnose(&text)?;
            let mut r = Report::new().with("answer", if diagnostics.is_empty() { "valid" } else { "invalid" });
            for d in &diagnostics {
                r.push(&d.location, d.message.clone());
            }
            Ok(Outcome::answer(diagnostics.is_empty(), &r, json))
        }
        Command::Size { file } => {
            let doc = document::read(file.as_deref())?;
            let size = match &doc {
                Document::Fdfa(f) => f.size().to_string(),
                Document::Dfa(d) => d.state_count().to_string(),
                Document::Dba(d) => d.automaton.state_count().to_string(),
                Document::Dca(d) => d.automaton.state_count().to_string(),
                Document::Dpa(d) => d.automaton.state_count().to_string(),
                Document::Nba(b) => b.state_count().to_string(),
            };
            let out = if json {
                Report::new().with("size", size).to_json()
            } else {
                format!("{size}\n")
            };
            Ok(Outcome {
                code: EXIT_YES,
                stdout: out,
                stderr: String::new(),
            })
        }
    }
}

fn extension(doc: &Document) -> &'static str {
    doc.kind().name()
}

fn fixtures(name: Option<&str>, dir: Option<&Path>) -> Result<Outcome, CliError> {
    let all = all_fixtures();
    if let Some(name) = name {
        let (_, doc) = all
            .iter()
            .find(|(n, _)| n == name)
            .ok_or_else(|| CliError::Usage(format!("unknown fixture `{name}`; run `fdfa fixtures` for the list")))?;
        return Ok(Outcome::document(doc));
    }
    let mut listing = String::new();
    for (name, doc) in &all {
        let file = format!("{name}.{}", extension(doc));
        if let Some(dir) = dir {
            std::fs::create_dir_all(dir)
                .and_then(|_| std::fs::write(dir.join(&file), document::serialize(doc)))
                .map_err(|e| DocError::Io {
                    path: dir.join(&file).display().to_string(),
                    message: e.to_string(),
                })?;
        }
        listing.push_str(&format!("{file}\n"));
    }
    Ok(Outcome {
        code: EXIT_YES,
        stdout: listing,
        stderr: String::new(),
    })
}

/// Parses arguments and runs the command. Usage errors exit with code 2.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => EXIT_YES,
                _ => EXIT_USAGE,
            };
            let text = e.render().to_string();
            let (stdout, stderr) = if code == EXIT_YES { (text, String::new()) } else { (String::new(), text) };
            return Outcome { code, stdout, stderr };
        }
    };
    match execute(&cli) {
        Ok(outcome) => outcome,
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}
