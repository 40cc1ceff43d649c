//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage error, 2 verification failure.

mod output;
mod selftest;

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::fourierpolys::{c_poly, eval_normalized, s_poly};
use crate::numtheory::Rational;
use crate::sumsolver::{evaluate, hurwitz_combination, SumKind, SumQuery};

pub use output::{decimal_digits, ExactBlock, OutputRecord, QueryEcho};
pub use selftest::{run_selftest, SelftestConfig, SelftestReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "zetakit", version, about = "Exact lattice sums S(n,k,l) and Ŝ(n,k,l) as algebraic multiples of π^n")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate one sum.
    Sum(SumArgs),
    /// All residues 1..=k/2 of a modulus (alternating rows skip the central residue).
    Table(TableArgs),
    /// The symmetric Hurwitz combination ζ(n,p) + (-1)^n ζ(n,1-p).
    Hurwitz(HurwitzArgs),
    /// Show a normalized Fourier polynomial C_m or S_m.
    Poly(PolyArgs),
    /// Run the identity and oracle sweeps.
    Selftest(SelftestArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum KindArg {
    #[value(name = "S")]
    S,
    #[value(name = "Shat")]
    Shat,
}

impl From<KindArg> for SumKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::S => SumKind::S,
            KindArg::Shat => SumKind::Shat,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TableKind {
    #[value(name = "S")]
    S,
    #[value(name = "Shat")]
    Shat,
    Both,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Working precision in bits.
    #[arg(long, env = "ZETAKIT_PREC", default_value_t = 192, value_parser = clap::value_parser!(u32).range(64..=4096))]
    prec: u32,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Compare against the numeric oracle.
    #[arg(long)]
    verify: bool,
    /// Render quadratic values with square roots.
    #[arg(long)]
    radical: bool,
    /// Skip the exact block.
    #[arg(long)]
    numeric_only: bool,
}

#[derive(Args, Debug)]
struct SumArgs {
    #[arg(long, value_enum)]
    kind: KindArg,
    #[arg(long)]
    n: u32,
    #[arg(long)]
    k: u64,
    #[arg(long)]
    l: u64,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct TableArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    k: u64,
    #[arg(long, value_enum, default_value_t = TableKind::Both)]
    kind: TableKind,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct HurwitzArgs {
    #[arg(long)]
    n: u32,
    /// Rational point a/b in (0, 1).
    #[arg(long)]
    p: String,
    /// Use the alternating zeta ζ̂ instead.
    #[arg(long)]
    alternating: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum PolyKind {
    #[value(alias = "C")]
    C,
    #[value(alias = "S")]
    S,
}

#[derive(Args, Debug)]
struct PolyArgs {
    #[arg(long, value_enum)]
    kind: PolyKind,
    #[arg(long)]
    m: u32,
    /// Evaluate exactly at this rational t.
    #[arg(long)]
    eval: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Debug)]
struct SelftestArgs {
    #[arg(long, default_value_t = 6)]
    max_n: u32,
    #[arg(long, default_value_t = 12)]
    max_k: u64,
    #[arg(long, env = "ZETAKIT_PREC", default_value_t = 192, value_parser = clap::value_parser!(u32).range(64..=4096))]
    prec: u32,
    /// Perturb one exact value to confirm the sweeps notice.
    #[arg(long, hide = true)]
    inject_fault: bool,
}

/// Parse `args` and run; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match dispatch(cli.command, &mut out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::InvalidQuery(_) | Error::OutOfRange(_) | Error::UnsupportedOrder { .. } => EXIT_USAGE,
                _ => EXIT_VERIFY,
            }
        }
    }
}

fn dispatch(cmd: Command, out: &mut impl Write) -> crate::Result<i32> {
    match cmd {
        Command::Sum(a) => {
            let q = SumQuery::new(a.kind.into(), a.n, a.k, a.l)?;
            let value = evaluate(&q)?;
            let rec = OutputRecord::for_sum(&q, &value, &a.common)?;
            emit(out, &[rec], a.common.format)
        }
        Command::Table(a) => {
            let kinds: &[SumKind] = match a.kind {
                TableKind::S => &[SumKind::S],
                TableKind::Shat => &[SumKind::Shat],
                TableKind::Both => &[SumKind::S, SumKind::Shat],
            };
            SumQuery::new(SumKind::S, a.n, a.k, 1)?;
            let mut recs = Vec::new();
            for &kind in kinds {
                let residues: Vec<u64> = match kind {
                    SumKind::S => (1..=a.k / 2).collect(),
                    SumKind::Shat => (1..a.k).filter(|l| 2 * l < a.k).collect(),
                };
                for l in residues {
                    let q = SumQuery::new(kind, a.n, a.k, l)?;
                    recs.push(OutputRecord::for_sum(&q, &evaluate(&q)?, &a.common)?);
                }
            }
            emit(out, &recs, a.common.format)
        }
        Command::Hurwitz(a) => {
            let p = parse_rational(&a.p)?;
            let value = hurwitz_combination(a.n, &p, a.alternating)?;
            let rec = OutputRecord::for_hurwitz(a.n, &p, a.alternating, &value, &a.common)?;
            emit(out, &[rec], a.common.format)
        }
        Command::Poly(a) => {
            let p = match a.kind {
                PolyKind::C => c_poly(a.m),
                PolyKind::S => s_poly(a.m),
            };
            let value = a.eval.as_deref().map(parse_rational).transpose()?.map(|t| (eval_normalized(&p, &t), t));
            output::write_poly(out, &p, value.as_ref(), a.format).map_err(io_err)?;
            Ok(EXIT_OK)
        }
        Command::Selftest(a) => {
            let cfg = SelftestConfig { max_n: a.max_n, max_k: a.max_k, prec: a.prec, inject_fault: a.inject_fault };
            let report = run_selftest(&cfg);
            report.write(out).map_err(io_err)?;
            Ok(if report.all_passed() { EXIT_OK } else { EXIT_VERIFY })
        }
    }
}

fn emit(out: &mut impl Write, recs: &[OutputRecord], format: Format) -> crate::Result<i32> {
    for r in recs {
        r.write(out, format).map_err(io_err)?;
    }
    let failed = recs.iter().any(|r| r.verified == Some(false));
    Ok(if failed { EXIT_VERIFY } else { EXIT_OK })
}

fn io_err(e: std::io::Error) -> Error {
    Error::Internal(format!("write failed: {e}"))
}

/// Parse `a/b` or an integer.
pub fn parse_rational(s: &str) -> crate::Result<Rational> {
    let bad = || Error::InvalidQuery(format!("cannot parse {s:?} as a rational a/b"));
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let a: num_bigint::BigInt = a.trim().parse().map_err(|_| bad())?;
            let b: num_bigint::BigInt = b.trim().parse().map_err(|_| bad())?;
            if num_traits::Zero::is_zero(&b) {
                return Err(bad());
            }
            Ok(Rational::new(a, b))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}
