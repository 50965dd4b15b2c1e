mod commands;
mod suites;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "brauerkit", version, about = "Exact Brauer diagram calculus and invariant-theory checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compose expressions in the order given (the first is applied first)
    /// and print the canonical result.
    Compose {
        #[arg(required = true)]
        exprs: Vec<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Evaluate an expression as an exact matrix `d^n x d^m`.
    Eval {
        expr: String,
        #[command(flatten)]
        common: Common,
    },
    /// Table of `dim Br(m, n)` against `(m+n-1)!!`.
    Dims {
        #[arg(long, default_value_t = 3)]
        m_max: usize,
        #[arg(long, default_value_t = 3)]
        n_max: usize,
        #[command(flatten)]
        common: Common,
    },
    /// List every diagram `m -> n` given by `--mn` (default `2,2`).
    Enumerate {
        #[arg(long, default_value_t = 0)]
        max_closed: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Saturate a tensor ideal of `Br_δ` and dump a basis of every slice.
    Ideal {
        /// Generator expressions, e.g. `e(2)`.
        #[arg(long = "gen", required = true)]
        gens: Vec<String>,
        /// Restrict the closure to permutations.
        #[arg(long)]
        symmetric_only: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Run a verification suite; exit status 0 iff it passes.
    Check {
        suite: Suite,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Counting,
    CategoryLaws,
    Specialization,
    Fft,
    Sft,
    Gl,
    CaIdeal,
    CaAxioms,
    ModularOperad,
    Prop,
    Operad,
    Parser,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Symmetric,
    Skew,
    Gl,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    #[arg(long, value_enum, default_value_t = Kind::Symmetric)]
    pub kind: Kind,
    #[arg(long, default_value_t = 2)]
    pub d: usize,
    /// Loop value, a rational such as `1` or `-3/2`.
    #[arg(long)]
    pub delta: Option<String>,
    #[arg(long)]
    pub max_total: Option<usize>,
    #[arg(long, value_parser = parse_mn)]
    pub mn: Option<(usize, usize)>,
    #[arg(long)]
    pub bound: Option<usize>,
    #[arg(long)]
    pub max_points: Option<usize>,
    /// Number of randomized cases.
    #[arg(long)]
    pub cases: Option<usize>,
    /// Palette JSON: `{"colours": [...], "omega": {name: name}}`.
    #[arg(long)]
    pub palette: Option<PathBuf>,
    /// Circuit algebra table JSON, used instead of the tensor model.
    #[arg(long)]
    pub oracle: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub csv: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_mn(s: &str) -> std::result::Result<(usize, usize), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected `m,n`, got {s:?}"))?;
    let p = |x: &str| x.trim().parse::<usize>().map_err(|e| format!("{x:?}: {e}"));
    Ok((p(a)?, p(b)?))
}

/// Text produced by a command, with the verdict for suites.
pub struct Output {
    pub text: String,
    pub passed: bool,
}

fn emit(common: &Common, out: Output) -> Result<ExitCode> {
    let mut text = out.text;
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match &common.out {
        Some(path) => std::fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(if out.passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn run(cli: Cli) -> Result<ExitCode> {
    let (common, out) = match cli.command {
        Command::Compose { exprs, common } => {
            let out = commands::compose(&exprs, &common)?;
            (common, out)
        }
        Command::Eval { expr, common } => {
            let out = commands::eval(&expr, &common)?;
            (common, out)
        }
        Command::Dims { m_max, n_max, common } => {
            let out = commands::dims(m_max, n_max, &common)?;
            (common, out)
        }
        Command::Enumerate { max_closed, common } => {
            let out = commands::enumerate(common.mn.unwrap_or((2, 2)), max_closed, &common)?;
            (common, out)
        }
        Command::Ideal { gens, symmetric_only, common } => {
            if gens.is_empty() {
                bail!("at least one --gen is required");
            }
            let out = commands::ideal(&gens, symmetric_only, &common)?;
            (common, out)
        }
        Command::Check { suite, common } => {
            let out = suites::run_suite(suite, &common)?;
            (common, out)
        }
    };
    emit(&common, out)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
