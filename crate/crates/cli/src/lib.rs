//! Command-line front end for `folcalc`.
//!
//! Results go to stdout as `key=value` lines, diagnostics to stderr.
//! Exit codes: 0 success, 1 invalid input or a negative answer, 2 realization
//! obstruction, 3 parse error, 4 usage or I/O error, 5 internal inconsistency.

pub mod format;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use folcalc::norm::{
    boundary_connect_sum, euler_char, heegaard_genus_from_norm, page_norm, surgery_ledger, tight_additivity, Page,
};
use folcalc::random::random_movie;
use folcalc::realization::{enumerate_canonical, ENUMERATION_GUARD};
use folcalc::*;
use thiserror::Error;

use crate::format::{parse_fol, parse_mov, serialize_fol, serialize_mov, FolDocument, ParseError};

/// Environment variable that raises the enumeration guard.
pub const KMAX_OVERRIDE_VAR: &str = "FOLCALC_KMAX_OVERRIDE";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("obstruction: {0}")]
    Obstruction(String),
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Obstruction(_) => 2,
            CliError::Parse { .. } => 3,
            CliError::Usage(_) => 4,
            CliError::Internal(_) => 5,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Guard { .. } | Error::Generation(_) => CliError::Usage(e.to_string()),
            Error::OpenCase(_) => CliError::Obstruction(e.to_string()),
            Error::Internal(_) => CliError::Internal(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "folcalc", version, about = "Open book foliation movies on the 2-sphere")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum GraphFormat {
    Text,
    Dot,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum LedgerFormat {
    Text,
    Kv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check every structural invariant of a movie
    Validate { file: PathBuf },
    /// Count elliptic and hyperbolic points by sign
    Counts { file: PathBuf },
    /// Print the G++ graph
    Gpp {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: GraphFormat,
    },
    /// Tree test, dividing circle count and verdict
    Tight { file: PathBuf },
    /// Write a move script building the movie from the trivial one
    Realize {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Apply a move script to the trivial movie
    Replay {
        script: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Check that a script reproduces a movie up to isomorphism
    Verify { file: PathBuf, script: PathBuf },
    /// Decide whether two movies are isomorphic
    Iso { a: PathBuf, b: PathBuf },
    /// Enumerate all valid movies up to isomorphism
    Enumerate {
        #[arg(long)]
        kmax: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Generate a seeded random tree movie
    Random {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        seed: u64,
        /// Extra scrambling moves after the finger moves
        #[arg(long, default_value_t = 0)]
        extra: usize,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Page and support-norm arithmetic
    Norm {
        #[command(subcommand)]
        command: NormCommand,
    },
}

#[derive(Debug, Subcommand)]
pub enum NormCommand {
    /// Euler characteristic and norm of a page
    Page {
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        boundary: u32,
    },
    /// Boundary connected sum of two pages
    Sum {
        #[arg(long)]
        genus1: u32,
        #[arg(long)]
        boundary1: u32,
        #[arg(long)]
        genus2: u32,
        #[arg(long)]
        boundary2: u32,
    },
    /// Surgery ledger against the disc-page open book
    Ledger {
        #[arg(long, allow_hyphen_values = true)]
        chi: i64,
        #[arg(long, value_enum, default_value = "text")]
        format: LedgerFormat,
    },
    /// Norm of a connected sum from the norms of the summands
    Additivity {
        #[arg(long, allow_hyphen_values = true)]
        sn1: i64,
        #[arg(long, allow_hyphen_values = true)]
        sn2: i64,
        /// Both summands are tight
        #[arg(long)]
        tight: bool,
    },
}

/// Parse `args`, run the command and return the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let _ = write!(err, "{e}");
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => 4,
            };
        }
    };
    match execute(&cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

pub fn load_movie(path: &Path) -> CliResult<FoliationMovie> {
    let text = read(path)?;
    let doc = parse_fol(&text).map_err(|source| CliError::Parse {
        path: path.display().to_string(),
        source,
    })?;
    Ok(doc.to_movie())
}

fn load_valid(path: &Path) -> CliResult<FoliationMovie> {
    let m = load_movie(path)?;
    let report = m.validate();
    if !report.ok() {
        return Err(CliError::Validation(format!("{}: {report}", path.display())));
    }
    Ok(m)
}

pub fn load_script(path: &Path) -> CliResult<MoveScript> {
    let text = read(path)?;
    let doc = parse_mov(&text).map_err(|source| CliError::Parse {
        path: path.display().to_string(),
        source,
    })?;
    Ok(doc.to_script())
}

fn kmax_guard() -> CliResult<usize> {
    match std::env::var(KMAX_OVERRIDE_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{KMAX_OVERRIDE_VAR} must be a non-negative integer, got `{v}`"))),
        Err(_) => Ok(ENUMERATION_GUARD),
    }
}

fn page(genus: u32, boundary: u32) -> CliResult<Page> {
    Page::new(genus, boundary).map_err(|e| CliError::Usage(e.to_string()))
}

fn flag(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

pub fn execute(command: &Command, out: &mut dyn Write) -> CliResult<i32> {
    let mut text = String::new();
    let code = execute_into(command, &mut text)?;
    out.write_all(text.as_bytes())
        .map_err(|e| CliError::Usage(format!("stdout: {e}")))?;
    Ok(code)
}

fn execute_into(command: &Command, out: &mut String) -> CliResult<i32> {
    use std::fmt::Write as _;
    match command {
        Command::Validate { file } => {
            let m = load_movie(file)?;
            let report = m.validate();
            if report.ok() {
                writeln!(out, "valid=true").unwrap();
                return Ok(0);
            }
            writeln!(out, "valid=false violations={}", report.violations.len()).unwrap();
            for v in &report.violations {
                writeln!(out, "violation {v}").unwrap();
            }
            Ok(1)
        }
        Command::Counts { file } => {
            let c = load_valid(file)?.singularity_counts()?;
            writeln!(out, "{c}").unwrap();
            Ok(0)
        }
        Command::Gpp { file, format } => {
            let g = build_gpp(&load_valid(file)?)?;
            match format {
                GraphFormat::Text => {
                    let vs: Vec<&str> = g.vertices.iter().map(|v| v.as_str()).collect();
                    writeln!(out, "vertices={} edges={}", vs.join(","), g.edges.len()).unwrap();
                    for e in &g.edges {
                        writeln!(out, "edge rank={} ends={},{}", e.rank, e.ends[0], e.ends[1]).unwrap();
                    }
                }
                GraphFormat::Dot => {
                    writeln!(out, "graph gpp {{").unwrap();
                    for v in &g.vertices {
                        writeln!(out, "  \"{v}\";").unwrap();
                    }
                    for e in &g.edges {
                        writeln!(out, "  \"{}\" -- \"{}\" [label=\"{}\"];", e.ends[0], e.ends[1], e.rank).unwrap();
                    }
                    writeln!(out, "}}").unwrap();
                }
            }
            Ok(0)
        }
        Command::Tight { file } => {
            let m = load_valid(file)?;
            let g = build_gpp(&m)?;
            writeln!(
                out,
                "tree={} dividing_circles={} verdict={}",
                flag(is_tree(&g)),
                dividing_circle_count(&m)?,
                tightness_verdict(&m)?
            )
            .unwrap();
            Ok(0)
        }
        Command::Realize { file, output } => match realize(&load_valid(file)?)? {
            RealizationResult::Script(s) => {
                write_file(output, &serialize_mov(&s))?;
                writeln!(out, "steps={}", s.steps.len()).unwrap();
                Ok(0)
            }
            RealizationResult::Obstruction(why) => Err(CliError::Obstruction(why)),
        },
        Command::Replay { script, output } => {
            let m = apply_script(&load_script(script)?)?;
            write_file(output, &serialize_fol(&m))?;
            let c = m.singularity_counts()?;
            writeln!(out, "k={} h={}", c.e_pos, m.events.len()).unwrap();
            Ok(0)
        }
        Command::Verify { file, script } => {
            let ok = verify_realization(&load_valid(file)?, &load_script(script)?)?;
            writeln!(out, "verified={}", flag(ok)).unwrap();
            Ok(if ok { 0 } else { 1 })
        }
        Command::Iso { a, b } => {
            let same = is_isomorphic(&load_valid(a)?, &load_valid(b)?)?;
            writeln!(out, "isomorphic={}", flag(same)).unwrap();
            Ok(if same { 0 } else { 1 })
        }
        Command::Enumerate { kmax, out: dir } => {
            let all = enumerate_canonical(*kmax, kmax_guard()?)?;
            fs::create_dir_all(dir).map_err(|e| CliError::Usage(format!("{}: {e}", dir.display())))?;
            for k in 1..=*kmax {
                let movies: Vec<FoliationMovie> = all.iter().filter(|c| c.k == k).map(|c| c.to_movie()).collect();
                let trees = movies.iter().filter(|m| is_tree(&build_gpp(m).unwrap())).count();
                let mut census = format!("# census k={k} count={} trees={trees}\n", movies.len());
                for m in &movies {
                    census.push_str(&FolDocument::from_movie(m).single_line());
                    census.push('\n');
                }
                write_file(&dir.join(format!("census-k{k}.fol")), &census)?;
                writeln!(out, "k={k} count={} trees={trees}", movies.len()).unwrap();
            }
            writeln!(out, "total={}", all.len()).unwrap();
            Ok(0)
        }
        Command::Random { k, seed, extra, output } => {
            let m = random_movie(*k, *extra, *seed)?;
            write_file(output, &serialize_fol(&m))?;
            writeln!(out, "k={k} h={} seed={seed}", m.events.len()).unwrap();
            Ok(0)
        }
        Command::Norm { command } => norm_command(command, out),
    }
}

fn norm_command(command: &NormCommand, out: &mut String) -> CliResult<i32> {
    use std::fmt::Write as _;
    match command {
        NormCommand::Page { genus, boundary } => {
            let p = page(*genus, *boundary)?;
            writeln!(out, "chi={} norm={}", euler_char(&p), page_norm(&p)).unwrap();
        }
        NormCommand::Sum {
            genus1,
            boundary1,
            genus2,
            boundary2,
        } => {
            let s = boundary_connect_sum(&page(*genus1, *boundary1)?, &page(*genus2, *boundary2)?);
            writeln!(
                out,
                "genus={} boundary={} chi={} norm={}",
                s.genus(),
                s.boundary_count(),
                euler_char(&s),
                page_norm(&s)
            )
            .unwrap();
        }
        NormCommand::Ledger { chi, format } => {
            if *chi > 1 {
                return Err(CliError::Usage(format!("no connected page has euler characteristic {chi}")));
            }
            let ledger = surgery_ledger(*chi);
            match format {
                LedgerFormat::Kv => {
                    for e in &ledger.entries {
                        writeln!(out, "entry label={} chi={} norm={}", e.label, e.page_euler, e.norm).unwrap();
                    }
                    for i in &ledger.identities {
                        writeln!(out, "identity holds={} statement=\"{}\"", flag(i.holds), i.statement).unwrap();
                    }
                }
                LedgerFormat::Text => {
                    let width = ledger.entries.iter().map(|e| e.label.len()).max().unwrap_or(0);
                    writeln!(out, "{:width$}  {:>5}  {:>5}", "page", "chi", "norm").unwrap();
                    for e in &ledger.entries {
                        writeln!(out, "{:width$}  {:>5}  {:>5}", e.label, e.page_euler, e.norm).unwrap();
                    }
                    for i in &ledger.identities {
                        writeln!(out, "[{}] {}", if i.holds { "ok" } else { "FAIL" }, i.statement).unwrap();
                    }
                }
            }
            writeln!(out, "all_hold={}", flag(ledger.all_hold())).unwrap();
            if !ledger.all_hold() {
                return Ok(1);
            }
        }
        NormCommand::Additivity { sn1, sn2, tight } => {
            let a = tight_additivity(*sn1, *sn2, *tight);
            writeln!(out, "{a} heegaard_genus={}", heegaard_genus_from_norm(a.value())).unwrap();
        }
    }
    Ok(0)
}
