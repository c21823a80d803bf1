//! Command-line front end. [`run`] does all the work and returns the exit
//! code, so it can be driven from tests with in-memory streams.

use std::ffi::OsString;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};

use crate::coha::{g_mult_h, t_mult_h};
use crate::error::Error;
use crate::expr::{format_poly, parse_expr};
use crate::kha::{g_mult_r, t_mult_r};
use crate::quiver::{Block, BlockSplit, DimVector, Quiver, VarContext};
use crate::todd::{td_bar_g, td_bar_m, td_g, td_m_g, td_m_t, twist, TwistFlavor};
use crate::verify::{run_suite, Suite, SuiteConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;
pub const EXIT_IO: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "khacoha", version, about = "Shuffle products and Chern-Todd comparison maps for symmetric quivers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(clap::Args, Debug, Clone)]
pub struct Common {
    /// Quiver file: vertex count, then one row of the arrow matrix per line.
    #[arg(long)]
    pub quiver: PathBuf,
    /// First dimension vector, comma separated. Defaults to the first unit vector.
    #[arg(long)]
    pub gamma1: Option<String>,
    /// Second dimension vector, comma separated. Defaults to the first unit vector.
    #[arg(long)]
    pub gamma2: Option<String>,
    /// Truncation degree N.
    #[arg(long, default_value_t = 6)]
    pub degree: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Algebra {
    CohaT,
    CohaG,
    KhaT,
    KhaG,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    JsonLines,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Todd,
    Sqrt,
    TildeMorphism,
    EMorphism,
    Morphism,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Todd => Suite::Todd,
            SuiteArg::Sqrt => Suite::Sqrt,
            SuiteArg::TildeMorphism => Suite::TildeMorphism,
            SuiteArg::EMorphism => Suite::EMorphism,
            SuiteArg::Morphism => Suite::Morphism,
            SuiteArg::All => Suite::All,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Mt,
    G,
    Mg,
    BarM,
    BarG,
    TwistB,
    TwistD,
    TwistC,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Multiply two elements; `-` reads an expression from stdin.
    Mul {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        algebra: Algebra,
        #[arg(allow_hyphen_values = true)]
        f1: String,
        #[arg(allow_hyphen_values = true)]
        f2: String,
    },
    /// Run verification suites.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 25, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Print a Todd class or twist factor as a truncated series.
    Todd {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        kind: Kind,
    },
}

#[derive(Debug)]
enum Failure {
    Parse(String),
    Io(String),
    Usage(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Parse(_) => EXIT_PARSE,
            Failure::Io(_) => EXIT_IO,
            Failure::Usage(_) => EXIT_USAGE,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Parse(m) | Failure::Io(m) | Failure::Usage(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::QuiverSyntax { .. }
            | Error::NotSymmetric { .. }
            | Error::ExprSyntax { .. }
            | Error::IndexOutOfRange { .. }
            | Error::NegativeXExponent { .. }
            | Error::MixedAlphabet
            | Error::LengthMismatch { .. } => Failure::Parse(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn load_quiver(path: &Path) -> Result<Arc<Quiver>, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    Quiver::parse(&text)
        .map(Arc::new)
        .map_err(|e| Failure::Parse(format!("{}: {}", path.display(), Failure::from(e).message())))
}

fn quiver_label(path: &Path) -> String {
    path.file_stem().map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned())
}

fn gamma(arg: &Option<String>, quiver: &Quiver, flag: &str) -> Result<DimVector, Failure> {
    let n = quiver.vertex_count();
    let g = match arg {
        Some(s) => DimVector::parse(s).map_err(|e| Failure::Parse(format!("--{flag}: {e}")))?,
        None => DimVector::unit(n, 0),
    };
    if g.len() != n {
        return Err(Failure::Parse(format!("--{flag}: {}", Error::LengthMismatch { expected: n, found: g.len() })));
    }
    Ok(g)
}

/// Expressions given as `-` are read from stdin; two `-` arguments take one
/// non-empty line each.
fn read_expressions(f1: &str, f2: &str, stdin: &mut dyn Read) -> Result<(String, String), Failure> {
    if f1 != "-" && f2 != "-" {
        return Ok((f1.into(), f2.into()));
    }
    let mut buf = String::new();
    stdin.read_to_string(&mut buf).map_err(|e| Failure::Io(format!("stdin: {e}")))?;
    if f1 == "-" && f2 == "-" {
        let mut lines = buf.lines().filter(|l| !l.trim().is_empty());
        match (lines.next(), lines.next()) {
            (Some(a), Some(b)) => Ok((a.into(), b.into())),
            _ => Err(Failure::Parse("stdin: expected two expressions, one per line".into())),
        }
    } else if f1 == "-" {
        Ok((buf, f2.into()))
    } else {
        Ok((f1.into(), buf))
    }
}

fn cmd_mul(common: &Common, algebra: Algebra, f1: &str, f2: &str, stdin: &mut dyn Read) -> Result<String, Failure> {
    let q = load_quiver(&common.quiver)?;
    let g1 = gamma(&common.gamma1, &q, "gamma1")?;
    let g2 = gamma(&common.gamma2, &q, "gamma2")?;
    let (s1, s2) = read_expressions(f1, f2, stdin)?;
    let (e1, e2) = (parse_expr(&s1)?, parse_expr(&s2)?);
    let c1 = VarContext::new(q.clone(), g1)?;
    let c2 = VarContext::new(q, g2)?;
    Ok(match algebra {
        Algebra::CohaT | Algebra::CohaG => {
            let (a, b) = (e1.to_coh(&c1)?, e2.to_coh(&c2)?);
            let p = if algebra == Algebra::CohaT { t_mult_h(&a, &b)? } else { g_mult_h(&a, &b)? };
            format_poly(p.context(), p.poly(), 'x')
        }
        Algebra::KhaT | Algebra::KhaG => {
            let (a, b) = (e1.to_laurent(&c1)?, e2.to_laurent(&c2)?);
            let p = if algebra == Algebra::KhaT { t_mult_r(&a, &b)? } else { g_mult_r(&a, &b)? };
            format_poly(p.context(), p.poly(), 'z')
        }
    })
}

fn cmd_todd(common: &Common, kind: Kind) -> Result<String, Failure> {
    let q = load_quiver(&common.quiver)?;
    let g1 = gamma(&common.gamma1, &q, "gamma1")?;
    let g2 = gamma(&common.gamma2, &q, "gamma2")?;
    let n = common.degree;
    let s = match kind {
        Kind::Mt | Kind::G | Kind::Mg => {
            let ctx = VarContext::new(q, g1)?;
            match kind {
                Kind::Mt => td_m_t(&ctx, n)?,
                Kind::G => td_g(&ctx, n)?,
                _ => td_m_g(&ctx, n)?,
            }
        }
        Kind::BarM | Kind::BarG => {
            let split = BlockSplit::new(&q, &g1, &g2)?;
            if kind == Kind::BarM {
                td_bar_m(&split, n)?
            } else {
                td_bar_g(&split, n)?
            }
        }
        Kind::TwistB | Kind::TwistD | Kind::TwistC => {
            let ctx = VarContext::new(q, g1)?;
            let flavor = match kind {
                Kind::TwistB => TwistFlavor::BTilde,
                Kind::TwistD => TwistFlavor::D,
                _ => TwistFlavor::C,
            };
            twist(flavor, &Block::whole(&ctx), &g2, n)?.series().clone()
        }
    };
    Ok(s.to_string())
}

fn cmd_verify(
    common: &Common,
    suite: Suite,
    seed: u64,
    trials: u64,
    format: Format,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let q = load_quiver(&common.quiver)?;
    let cfg = SuiteConfig {
        gamma1: gamma(&common.gamma1, &q, "gamma1")?,
        gamma2: gamma(&common.gamma2, &q, "gamma2")?,
        quiver: q,
        quiver_name: quiver_label(&common.quiver),
        degree: common.degree,
        seed,
        trials,
    };
    let records = run_suite(&cfg, suite);
    let io = |e: io::Error| Failure::Io(format!("stdout: {e}"));
    for r in &records {
        match format {
            Format::Text => writeln!(out, "{r}").map_err(io)?,
            Format::JsonLines => writeln!(out, "{}", r.to_json()).map_err(io)?,
        }
    }
    Ok(if records.iter().all(|r| r.pass) { EXIT_OK } else { EXIT_VERIFY })
}

/// Parse `args` (including the program name) and execute.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Mul { common, algebra, f1, f2 } => cmd_mul(common, *algebra, f1, f2, stdin).and_then(|s| {
            writeln!(out, "{s}").map(|_| EXIT_OK).map_err(|e| Failure::Io(format!("stdout: {e}")))
        }),
        Command::Todd { common, kind } => cmd_todd(common, *kind).and_then(|s| {
            writeln!(out, "{s}").map(|_| EXIT_OK).map_err(|e| Failure::Io(format!("stdout: {e}")))
        }),
        Command::Verify { common, suite, seed, trials, format } => {
            cmd_verify(common, (*suite).into(), *seed, *trials, *format, out)
        }
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message());
            f.code()
        }
    }
}
