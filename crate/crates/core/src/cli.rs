//! Command-line front end.

use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::command::{run_command, Command};
use crate::document::{example_document, parse_document, StructureDocument};
use crate::error::{NearnessError, Result};
use crate::render::{render, Format};
use crate::search::DEFAULT_SAMPLES;
use crate::structures::{IntersectionKind, Side};
use crate::table::Op;

#[derive(Parser, Debug)]
#[command(name = "nearness", version, about = "Check algebraic structures in nearness approximation spaces")]
pub struct Cli {
    /// Structure document (JSON); `-` reads stdin. Defaults to the bundled example.
    #[arg(long, global = true)]
    pub input: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Text)]
    pub format: FormatArg,
    #[command(subcommand)]
    pub command: Cmd,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FormatArg {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum SideArg {
    Left,
    Right,
    Both,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum OpArg {
    Add,
    Mul,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum KindArg {
    Subring,
    Ideal,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Lower and upper approximations of a named subset.
    Approx {
        #[arg(long)]
        set: String,
    },
    /// Descriptive nearness of two named subsets.
    Near {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    #[command(subcommand)]
    Verify(Verify),
    /// Weak cosets of a subring.
    Cosets {
        #[arg(long)]
        carrier: String,
        #[arg(long)]
        sub: String,
        /// Use every element of the upper approximation as a representative.
        #[arg(long)]
        extended: bool,
    },
    /// Quotient nearness ring of weak cosets.
    Quotient {
        #[arg(long)]
        carrier: String,
        #[arg(long)]
        sub: String,
        /// Check the upper-approximation hypothesis over all subsets.
        #[arg(long)]
        powerset: bool,
    },
    /// First isomorphism check for a named map.
    IsoCheck(MapArgs),
    /// Search for nearness rings on small universes.
    Search {
        #[arg(long)]
        size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        exhaustive: bool,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
    },
}

#[derive(Args, Debug)]
pub struct MapArgs {
    #[arg(long)]
    pub map: String,
    /// Domain document; defaults to --input.
    #[arg(long)]
    pub from: Option<PathBuf>,
    /// Codomain document; defaults to the domain document.
    #[arg(long)]
    pub to: Option<PathBuf>,
    /// Domain carrier subset; defaults to every object.
    #[arg(long)]
    pub carrier: Option<String>,
    /// Codomain carrier subset; defaults to every object.
    #[arg(long)]
    pub target: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Verify {
    Ring {
        #[arg(long)]
        carrier: String,
    },
    Subring {
        #[arg(long)]
        carrier: String,
        #[arg(long)]
        sub: String,
    },
    Ideal {
        #[arg(long)]
        carrier: String,
        #[arg(long)]
        sub: String,
        #[arg(long, value_enum, default_value_t = SideArg::Both)]
        side: SideArg,
    },
    Group {
        #[arg(long)]
        carrier: String,
        #[arg(long, value_enum, default_value_t = OpArg::Add)]
        op: OpArg,
    },
    Units {
        #[arg(long)]
        carrier: String,
    },
    Elements {
        #[arg(long)]
        carrier: String,
    },
    Intersection {
        #[arg(long)]
        carrier: String,
        #[arg(long, num_args = 1.., value_delimiter = ',', required = true)]
        parts: Vec<String>,
        #[arg(long, value_enum, default_value_t = KindArg::Subring)]
        kind: KindArg,
    },
    Hom {
        #[command(flatten)]
        map: MapArgs,
        /// Subring whose image is checked.
        #[arg(long)]
        sub: Option<String>,
        /// Also require the law to hold without reduction to the upper approximation.
        #[arg(long)]
        strict: bool,
    },
}

fn read_source(path: &str) -> Result<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| NearnessError::Invalid(format!("cannot read {path}: {e}")))
    }
}

fn load(path: Option<&str>) -> Result<StructureDocument> {
    match path {
        None => Ok(example_document()),
        Some(p) => parse_document(&read_source(p)?),
    }
}

impl Cli {
    fn to_command(&self) -> (Command, Option<&MapArgs>) {
        let c = match &self.command {
            Cmd::Approx { set } => Command::Approx { set: set.clone() },
            Cmd::Near { a, b } => Command::Near { a: a.clone(), b: b.clone() },
            Cmd::Cosets { carrier, sub, extended } => {
                Command::Cosets { carrier: carrier.clone(), sub: sub.clone(), extended: *extended }
            }
            Cmd::Quotient { carrier, sub, powerset } => {
                Command::Quotient { carrier: carrier.clone(), sub: sub.clone(), powerset: *powerset }
            }
            Cmd::IsoCheck(m) => {
                let c = Command::IsoCheck { map: m.map.clone(), carrier: m.carrier.clone(), target: m.target.clone() };
                return (c, Some(m));
            }
            Cmd::Search { size, seed, exhaustive, samples } => {
                Command::Search { size: *size, seed: *seed, exhaustive: *exhaustive, samples: *samples }
            }
            Cmd::Verify(v) => match v {
                Verify::Ring { carrier } => Command::VerifyRing { carrier: carrier.clone() },
                Verify::Subring { carrier, sub } => Command::VerifySubring { carrier: carrier.clone(), sub: sub.clone() },
                Verify::Ideal { carrier, sub, side } => Command::VerifyIdeal {
                    carrier: carrier.clone(),
                    sub: sub.clone(),
                    side: match side {
                        SideArg::Left => Side::Left,
                        SideArg::Right => Side::Right,
                        SideArg::Both => Side::Both,
                    },
                },
                Verify::Group { carrier, op } => Command::VerifyGroup {
                    carrier: carrier.clone(),
                    op: match op {
                        OpArg::Add => Op::Add,
                        OpArg::Mul => Op::Mul,
                    },
                },
                Verify::Units { carrier } => Command::VerifyUnits { carrier: carrier.clone() },
                Verify::Elements { carrier } => Command::VerifyElements { carrier: carrier.clone() },
                Verify::Intersection { carrier, parts, kind } => Command::VerifyIntersection {
                    carrier: carrier.clone(),
                    parts: parts.clone(),
                    kind: match kind {
                        KindArg::Subring => IntersectionKind::Subring,
                        KindArg::Ideal => IntersectionKind::Ideal,
                    },
                },
                Verify::Hom { map, sub, strict } => {
                    let c = Command::VerifyHom {
                        map: map.map.clone(),
                        carrier: map.carrier.clone(),
                        target: map.target.clone(),
                        sub: sub.clone(),
                        strict: *strict,
                    };
                    return (c, Some(map));
                }
            },
        };
        (c, None)
    }
}

/// Runs the parsed command line and returns (output, exit code).
pub fn execute(cli: &Cli, echo: Vec<String>) -> Result<(String, i32)> {
    let (cmd, map) = cli.to_command();
    let from = map.and_then(|m| m.from.as_ref()).map(|p| p.to_string_lossy().into_owned());
    let doc = if cmd.needs_document() { Some(load(from.as_deref().or(cli.input.as_deref()))?) } else { None };
    let target = match map.and_then(|m| m.to.as_ref()) {
        Some(p) => Some(load(Some(&p.to_string_lossy()))?),
        None => None,
    };
    let report = run_command(&cmd, echo, doc.as_ref(), target.as_ref())?;
    let format = match cli.format {
        FormatArg::Text => Format::Text,
        FormatArg::Json => Format::Json,
    };
    Ok((render(&report, format), report.exit_code()))
}

/// Entry point for the binary: prints output or the error and returns the
/// process exit code.
pub fn main_with_args(args: Vec<String>) -> i32 {
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli, args.into_iter().skip(1).collect()) {
        Ok((text, code)) => {
            print!("{text}");
            code
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
