//! Command-line front end for `critset`.
//!
//! [`run`] parses arguments, executes one command and writes its report to
//! the given writers; the binary only maps the result to an exit code.
//!
//! Exit codes: 0 success, 1 input error, 2 size limit, 3 invariant breach.

use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use critset::{Error, Execution, Limits};

mod commands;
pub mod source;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError { code: 1, message: message.into() }
    }

    pub fn breach(message: impl Into<String>) -> Self {
        CliError { code: 3, message: message.into() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::SizeLimit { .. } => 2,
            Error::Internal(_) => 3,
            _ => 1,
        };
        CliError { code, message: e.to_string() }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::input(format!("i/o error: {e}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "critset", version, about = "Critical sets of optimal graph colorings")]
pub struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Vertex cap for exact critical-set searches.
    #[arg(long, global = true)]
    pub max_vertices: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Truncation for completion counts.
    #[arg(long, global = true, default_value_t = 2)]
    pub cap_extensions: u64,
    /// Worker threads; 1 runs everything sequentially.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Four parameters of one graph, with witnesses.
    Params {
        /// cycle:n, complete:n, path:n, empty:n, star:n, sudoku:n, latin:n, g6:<text>, file:<path> or graph6
        source: String,
    },
    /// Parameters of every isomorphism class on n vertices.
    Table {
        n: usize,
        #[arg(long)]
        nonbipartite: bool,
    },
    /// Canonical graph6 of every isomorphism class on n vertices.
    Atlas {
        n: usize,
        /// Include every size from 0 to n.
        #[arg(long)]
        up_to: bool,
    },
    /// Check an implication on every graph of a graph6 file.
    Scan {
        file: PathBuf,
        #[arg(long, value_enum)]
        check: ScanCheck,
    },
    #[command(subcommand)]
    Sudoku(SudokuCommand),
    /// Build a hardness-reduction instance.
    Reduce {
        #[arg(value_enum)]
        variant: VariantArg,
        source: String,
        /// Write <out>.g6 and <out>.roles.json.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        verify: bool,
        #[arg(long, value_enum, default_value_t = ModeArg::Auto)]
        mode: ModeArg,
        /// Sampled colorings in certificate mode.
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum SudokuCommand {
    /// The Sudoku graph in graph6 with structure counts.
    Gen { n: usize },
    /// Certified runs of the randomized determining-set process.
    Trials {
        n: usize,
        #[arg(long, default_value_t = 100)]
        count: usize,
    },
    /// Exhaustive minimum number of clues (n = 2).
    Mnc {
        n: usize,
        /// Examine one board per digit-relabelling class.
        #[arg(long)]
        symmetry: bool,
    },
    /// Decide whether a puzzle file has exactly one completion.
    Certify { file: PathBuf },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScanCheck {
    Prop1,
    Converse,
    Uniform,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Ulcs,
    Olcs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Auto,
    Full,
    Certificate,
}

pub(crate) struct Ctx {
    pub format: Format,
    pub limits: Limits,
    pub mode: Execution,
    pub seed: u64,
    pub cap: u64,
}

/// Parse `args` (including the program name) and run the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            write!(out, "{e}")?;
            return Ok(());
        }
        Err(e) => return Err(CliError::input(e.to_string().trim_end().to_string())),
    };
    let mut limits = Limits::default();
    if let Some(cap) = cli.max_vertices {
        limits = limits.with_exact_vertices(cap);
    }
    let mode = if cli.jobs == Some(1) { Execution::Sequential } else { Execution::Parallel };
    let ctx = Ctx { format: cli.format, limits, mode, seed: cli.seed, cap: cli.cap_extensions.max(1) };
    let (result, stdout, stderr) = with_jobs(cli.jobs, || {
        let (mut o, mut e) = (Vec::new(), Vec::new());
        let r = commands::dispatch(&ctx, &cli.command, &mut o, &mut e);
        (r, o, e)
    });
    out.write_all(&stdout)?;
    err.write_all(&stderr)?;
    result
}

#[cfg(feature = "parallel")]
fn with_jobs<R: Send>(jobs: Option<usize>, f: impl FnOnce() -> R + Send) -> R {
    match jobs.filter(|&j| j > 1) {
        Some(j) => match rayon::ThreadPoolBuilder::new().num_threads(j).build() {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        },
        None => f(),
    }
}

#[cfg(not(feature = "parallel"))]
fn with_jobs<R>(_jobs: Option<usize>, f: impl FnOnce() -> R) -> R {
    f()
}
