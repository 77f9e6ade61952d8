//! Batch command-line front end.
//!
//! [`run`] never touches the process streams; it returns what to print and
//! the exit code so that callers and tests can inspect both.

use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;

use crate::cube::{CubeSet, Point};
use crate::exec::Exec;
use crate::factor::{factorize, iteration_form, Format};
use crate::layered::{fusion, LayeredSet};
use crate::limits::Limits;
use crate::natset::NatSet;
use crate::ordinal::Ordinal;
use crate::poset::{iso, FinPoset};
use crate::verify::{self, DEFAULT_SEED};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CommandResult {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandResult {
    fn ok(stdout: impl Into<String>) -> Self {
        let mut stdout = stdout.into();
        if !stdout.is_empty() && !stdout.ends_with('\n') {
            stdout.push('\n');
        }
        CommandResult {
            exit_code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }
}

/// Failure carrying its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    msg: String,
}

fn usage(msg: impl Display) -> Failure {
    Failure {
        code: EXIT_USAGE,
        msg: msg.to_string(),
    }
}

fn domain(msg: impl Display) -> Failure {
    Failure {
        code: EXIT_DOMAIN,
        msg: msg.to_string(),
    }
}

type Outcome = Result<String, Failure>;

#[derive(Parser, Debug)]
#[command(
    name = "ordcopies",
    version,
    about = "Copies of countable ordinals: arithmetic, sets, posets and factorizations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Ordinal arithmetic in Cantor normal form.
    #[command(subcommand)]
    Ord(OrdCmd),
    /// Subsets of ω^n read from JSON files.
    #[command(subcommand)]
    Set(SetCmd),
    /// Layered subsets of the ω^ω ladder read from JSON files.
    #[command(subcommand)]
    Layer(LayerCmd),
    /// Finite pre-orders read from text files.
    #[command(subcommand)]
    Poset(PosetCmd),
    /// Forcing factorization of sq⟨P(α), ⊂⟩.
    Factorize {
        alpha: String,
        /// Print the two-step iteration form instead of the product.
        #[arg(long)]
        iterate: bool,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
    /// Run the property suites.
    Verify {
        #[arg(long)]
        suite: Option<String>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Evaluate cases on the current thread only.
        #[arg(long)]
        sequential: bool,
    },
}

#[derive(Subcommand, Debug)]
enum OrdCmd {
    Add {
        a: String,
        b: String,
    },
    Mul {
        a: String,
        b: String,
    },
    Pow {
        a: String,
        b: String,
    },
    /// Prints LT, EQ or GT.
    Cmp {
        a: String,
        b: String,
    },
    /// Indecomposability and the split α = γ + r.
    Classify {
        a: String,
    },
}

#[derive(Args, Debug)]
struct FileArg {
    #[arg(long)]
    file: PathBuf,
}

#[derive(Subcommand, Debug)]
enum SetCmd {
    Member {
        #[command(flatten)]
        input: FileArg,
        /// Point as comma-separated naturals, e.g. 3,5.
        point: String,
    },
    Type {
        #[command(flatten)]
        input: FileArg,
    },
    /// Whether the set lies in the ideal, i.e. is not Fubini positive.
    Ideal {
        #[command(flatten)]
        input: FileArg,
    },
    Select {
        #[command(flatten)]
        input: FileArg,
        xi: String,
    },
    Copy {
        #[command(flatten)]
        input: FileArg,
        alpha: String,
    },
}

#[derive(Subcommand, Debug)]
enum LayerCmd {
    Sset {
        #[command(flatten)]
        input: FileArg,
        m: usize,
    },
    Supp {
        #[command(flatten)]
        input: FileArg,
    },
    Ideal {
        #[command(flatten)]
        input: FileArg,
    },
    /// Whether A ⊆ B modulo the ideal.
    Subset {
        #[command(flatten)]
        input: FileArg,
        #[arg(long)]
        other: PathBuf,
    },
    /// Fusion stage B_r of a JSON list A_0, …, A_r.
    Fusion {
        #[command(flatten)]
        input: FileArg,
        /// Subset of ω as JSON.
        #[arg(long)]
        nat: PathBuf,
    },
    Type {
        #[command(flatten)]
        input: FileArg,
    },
    Reduction {
        #[command(flatten)]
        input: FileArg,
        #[arg(long)]
        nat: PathBuf,
        #[arg(long)]
        m_max: usize,
    },
}

#[derive(Subcommand, Debug)]
enum PosetCmd {
    Sm {
        #[command(flatten)]
        input: FileArg,
    },
    Sq {
        #[command(flatten)]
        input: FileArg,
    },
    Sep {
        #[command(flatten)]
        input: FileArg,
    },
    Product {
        #[command(flatten)]
        input: FileArg,
        #[arg(long)]
        other: PathBuf,
    },
    /// Prints the bijection as images of 0, 1, …, or "none".
    Iso {
        #[command(flatten)]
        input: FileArg,
        #[arg(long)]
        other: PathBuf,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum FormatArg {
    Text,
    Json,
    Latex,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Text => Format::Text,
            FormatArg::Json => Format::Json,
            FormatArg::Latex => Format::Latex,
        }
    }
}

/// Runs one invocation; `argv` excludes the program name.
pub fn run<I, S>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args = std::iter::once("ordcopies".to_string()).chain(argv.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CommandResult {
                    exit_code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                CommandResult::ok(text)
            };
        }
    };
    let limits = Limits::from_env();
    if let Command::Verify {
        suite,
        seed,
        sequential,
    } = &cli.command
    {
        return run_verify(suite.as_deref(), *seed, *sequential);
    }
    let outcome = match cli.command {
        Command::Ord(cmd) => run_ord(cmd),
        Command::Set(cmd) => run_set(cmd, &limits),
        Command::Layer(cmd) => run_layer(cmd, &limits),
        Command::Poset(cmd) => run_poset(cmd),
        Command::Factorize {
            alpha,
            iterate,
            format,
        } => run_factorize(&alpha, iterate, format),
        Command::Verify { .. } => unreachable!("handled above"),
    };
    match outcome {
        Ok(out) => CommandResult::ok(out),
        Err(f) => CommandResult {
            exit_code: f.code,
            stdout: String::new(),
            stderr: format!("error: {}\n", f.msg),
        },
    }
}

fn ordinal(s: &str) -> Result<Ordinal, Failure> {
    s.parse().map_err(|e| usage(format!("ordinal {s:?}: {e}")))
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn json_file<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    serde_json::from_str(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("value serializes")
}

fn cube_file(path: &Path, limits: &Limits) -> Result<CubeSet, Failure> {
    let set: CubeSet = json_file(path)?;
    if set.dim() > limits.max_dim {
        return Err(domain(format!(
            "dimension {} exceeds the cap {} (set {} to raise it)",
            set.dim(),
            limits.max_dim,
            crate::limits::NMAX_ENV
        )));
    }
    Ok(set)
}

fn layered_value(set: LayeredSet, limits: &Limits) -> Result<LayeredSet, Failure> {
    if set.prefix().len() > limits.max_prefix {
        return Err(domain(format!(
            "prefix of {} columns exceeds the cap {} (set {} to raise it)",
            set.prefix().len(),
            limits.max_prefix,
            crate::limits::NMAX_ENV
        )));
    }
    Ok(set)
}

fn layered_file(path: &Path, limits: &Limits) -> Result<LayeredSet, Failure> {
    layered_value(json_file(path)?, limits)
}

fn poset_file(path: &Path) -> Result<FinPoset, Failure> {
    read(path)?
        .parse()
        .map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn point(s: &str) -> Result<Point, Failure> {
    let inner = s.trim().trim_start_matches('[').trim_end_matches(']');
    let coords = inner
        .split(',')
        .map(|c| c.trim().parse::<u64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| usage(format!("point {s:?}: {e}")))?;
    Ok(Point(coords))
}

fn run_ord(cmd: OrdCmd) -> Outcome {
    let overflow = || domain("coefficient overflow");
    match cmd {
        OrdCmd::Add { a, b } => ordinal(&a)?
            .checked_add(&ordinal(&b)?)
            .map(|r| r.to_string())
            .ok_or_else(overflow),
        OrdCmd::Mul { a, b } => ordinal(&a)?
            .checked_mul(&ordinal(&b)?)
            .map(|r| r.to_string())
            .ok_or_else(overflow),
        OrdCmd::Pow { a, b } => ordinal(&a)?
            .pow(&ordinal(&b)?)
            .map(|r| r.to_string())
            .map_err(domain),
        OrdCmd::Cmp { a, b } => Ok(match ordinal(&a)?.cmp(&ordinal(&b)?) {
            std::cmp::Ordering::Less => "LT",
            std::cmp::Ordering::Equal => "EQ",
            std::cmp::Ordering::Greater => "GT",
        }
        .to_string()),
        OrdCmd::Classify { a } => {
            let a = ordinal(&a)?;
            let indecomposable = a.is_indecomposable().map_err(domain)?;
            let (gamma, r) = a.split_exponent().map_err(domain)?;
            Ok(format!(
                "indecomposable: {indecomposable}\ngamma: {gamma}\nr: {r}"
            ))
        }
    }
}

fn run_set(cmd: SetCmd, limits: &Limits) -> Outcome {
    match cmd {
        SetCmd::Member { input, point: p } => {
            let set = cube_file(&input.file, limits)?;
            set.contains(&point(&p)?)
                .map(|b| b.to_string())
                .map_err(domain)
        }
        SetCmd::Type { input } => Ok(cube_file(&input.file, limits)?.order_type().to_string()),
        SetCmd::Ideal { input } => {
            Ok((!cube_file(&input.file, limits)?.is_fubini_positive()).to_string())
        }
        SetCmd::Select { input, xi } => {
            let set = cube_file(&input.file, limits)?;
            set.select(&ordinal(&xi)?)
                .map(|p| p.to_string())
                .map_err(domain)
        }
        SetCmd::Copy { input, alpha } => {
            let set = cube_file(&input.file, limits)?;
            set.is_copy(&ordinal(&alpha)?)
                .map(|b| b.to_string())
                .map_err(domain)
        }
    }
}

fn run_layer(cmd: LayerCmd, limits: &Limits) -> Outcome {
    match cmd {
        LayerCmd::Sset { input, m } => Ok(to_json(&layered_file(&input.file, limits)?.s_set(m))),
        LayerCmd::Supp { input } => Ok(to_json(&layered_file(&input.file, limits)?.support())),
        LayerCmd::Ideal { input } => Ok(layered_file(&input.file, limits)?.in_ideal().to_string()),
        LayerCmd::Subset { input, other } => {
            let a = layered_file(&input.file, limits)?;
            let b = layered_file(&other, limits)?;
            Ok(a.subset_mod_ideal(&b).to_string())
        }
        LayerCmd::Fusion { input, nat } => {
            let sets: Vec<LayeredSet> = json_file(&input.file)?;
            let sets = sets
                .into_iter()
                .map(|s| layered_value(s, limits))
                .collect::<Result<Vec<_>, _>>()?;
            let s: NatSet = json_file(&nat)?;
            fusion(&sets, &s).map(|b| to_json(&b)).map_err(domain)
        }
        LayerCmd::Type { input } => Ok(layered_file(&input.file, limits)?.order_type().to_string()),
        LayerCmd::Reduction { input, nat, m_max } => {
            let a = layered_file(&input.file, limits)?;
            let s: NatSet = json_file(&nat)?;
            a.is_reduction(&s, m_max)
                .map(|b| b.to_string())
                .map_err(domain)
        }
    }
}

fn run_poset(cmd: PosetCmd) -> Outcome {
    match cmd {
        PosetCmd::Sm { input } => Ok(poset_file(&input.file)?.sep_mod().to_text()),
        PosetCmd::Sq { input } => Ok(poset_file(&input.file)?.sep_quot().to_text()),
        PosetCmd::Sep { input } => Ok(poset_file(&input.file)?.is_separative().to_string()),
        PosetCmd::Product { input, other } => Ok(poset_file(&input.file)?
            .product(&poset_file(&other)?)
            .to_text()),
        PosetCmd::Iso { input, other } => {
            let found = iso(&poset_file(&input.file)?, &poset_file(&other)?).map_err(domain)?;
            Ok(match found {
                Some(map) => map
                    .iter()
                    .map(usize::to_string)
                    .collect::<Vec<_>>()
                    .join(" "),
                None => "none".to_string(),
            })
        }
    }
}

fn run_factorize(alpha: &str, iterate: bool, format: FormatArg) -> Outcome {
    let alpha = ordinal(alpha)?;
    let expr = if iterate {
        iteration_form(&alpha)
    } else {
        factorize(&alpha)
    };
    expr.map(|e| e.render(format.into())).map_err(domain)
}

fn run_verify(suite: Option<&str>, seed: u64, sequential: bool) -> CommandResult {
    let exec = if sequential {
        Exec::Sequential
    } else {
        Exec::Parallel
    };
    let reports = match suite {
        Some(name) => match verify::run_suite(name, exec, seed) {
            Some(r) => vec![r],
            None => {
                let known = verify::suite_names().collect::<Vec<_>>().join(", ");
                return CommandResult {
                    exit_code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: format!("error: unknown suite {name:?}; known suites: {known}\n"),
                };
            }
        },
        None => verify::run_all(exec, seed),
    };
    let all_passed = reports.iter().all(|r| r.passed());
    let stdout: String = reports.iter().map(|r| format!("{r}\n")).collect();
    CommandResult {
        exit_code: if all_passed { EXIT_OK } else { EXIT_DOMAIN },
        stdout,
        stderr: String::new(),
    }
}
