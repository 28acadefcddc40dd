//! The `tropmkt` command line: each subcommand reads one JSON document, runs a
//! pipeline and writes JSON (plus SVG where the input is planar).
//!
//! Exit codes: 0 success or a true verdict, 1 a false verdict, 2 unreadable
//! or malformed input, 3 semantic validation failure, 4 unsupported
//! dimension, 5 resource cap exceeded.

use std::ffi::OsString;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::complexes::{check_balancing, demand_complex, price_complex, LabeledSubdivision, RegionId};
use crate::equilibrium::{duality_test_capped, Economy, DEFAULT_ENUMERATION_CAP};
use crate::error::Error;
use crate::exactmath::{Rational, RationalVector};
use crate::potential::{check_cyclic_monotonicity, integrate_subdivision, CorrespondenceSample, Direction};
use crate::render::{render_svg, RenderSpec};
use crate::valuation::{dualize, Valuation};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_INVALID: i32 = 3;
pub const EXIT_DIMENSION: i32 = 4;
pub const EXIT_CAP: i32 = 5;

#[derive(Debug, Parser)]
#[command(name = "tropmkt", version, about = "Exact demand geometry and equilibrium tests for indivisible goods")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, clap::Args)]
pub struct Io {
    /// Input JSON file.
    #[arg(long = "in", value_name = "FILE")]
    pub input: PathBuf,
    /// Output JSON file (standard output when omitted).
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// Also draw the relevant planar complex as SVG.
    #[arg(long, value_name = "FILE")]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Price,
    Demand,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DirectionArg {
    Demand,
    InverseDemand,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Concave dual of a valuation as a min of affine pieces.
    Dualize {
        #[command(flatten)]
        io: Io,
    },
    /// Price or demand complex of a two-good valuation.
    Complex {
        #[command(flatten)]
        io: Io,
        #[arg(long, value_enum, default_value = "price")]
        which: Which,
    },
    /// Balancing report for a labeled subdivision; exit 0 iff balanced.
    Balance {
        #[command(flatten)]
        io: Io,
    },
    /// Potential of a labeled subdivision.
    Integrate {
        #[command(flatten)]
        io: Io,
        /// `REGION=VALUE`, the region given by index (`3`, `r3`) or label (`(0,0)`).
        #[arg(long, default_value = "0=0")]
        anchor: String,
    },
    /// Duality test for Walrasian equilibrium; exit 0 iff one exists.
    Equilibrium {
        #[command(flatten)]
        io: Io,
        /// Bound on enumerated allocations.
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: u128,
    },
    /// Cyclic monotonicity of sampled price/bundle pairs; exit 0 iff monotone.
    Cyclemono {
        #[command(flatten)]
        io: Io,
        #[arg(long, value_enum, default_value = "demand")]
        direction: DirectionArg,
    },
}

/// Failure carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) => EXIT_PARSE,
            Error::UnsupportedDimension { .. } => EXIT_DIMENSION,
            Error::InstanceTooLarge { .. } => EXIT_CAP,
            Error::NonConservative { .. } => EXIT_FALSE,
            _ => EXIT_INVALID,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure {
        code: EXIT_PARSE,
        message: format!("cannot read {}: {e}", path.display()),
    })?;
    serde_json::from_str(&text).map_err(|e| {
        let code = if e.is_data() { EXIT_INVALID } else { EXIT_PARSE };
        if e.is_data() {
            if let Some(m) = dimension_message(&e) {
                return Failure {
                    code: EXIT_DIMENSION,
                    message: format!("{}: {m}", path.display()),
                };
            }
        }
        Failure {
            code,
            message: format!("{}: {e}", path.display()),
        }
    })
}

// Domain errors raised inside deserialization arrive as serde messages.
fn dimension_message(e: &serde_json::Error) -> Option<String> {
    let s = e.to_string();
    s.contains("unsupported dimension").then_some(s)
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    let res = match path {
        Some(p) => fs::write(p, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    };
    res.map_err(|e| Failure {
        code: EXIT_INVALID,
        message: format!("cannot write output: {e}"),
    })
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn write_svg(path: Option<&Path>, s: &LabeledSubdivision) -> Result<(), Failure> {
    let Some(path) = path else { return Ok(()) };
    let svg = render_svg(s, &RenderSpec::fit(s)?)?;
    fs::write(path, svg).map_err(|e| Failure {
        code: EXIT_INVALID,
        message: format!("cannot write {}: {e}", path.display()),
    })
}

fn require_planar(v: &Valuation) -> Result<(), Failure> {
    if v.goods() != 2 {
        return Err(Error::UnsupportedDimension {
            expected: 2,
            found: v.goods(),
        }
        .into());
    }
    Ok(())
}

fn parse_anchor(s: &LabeledSubdivision, spec: &str) -> Result<(RegionId, Rational), Failure> {
    let bad = |m: String| Failure {
        code: EXIT_INVALID,
        message: m,
    };
    let (id, value) = spec
        .rsplit_once('=')
        .ok_or_else(|| bad(format!("anchor {spec:?} is not REGION=VALUE")))?;
    let value: Rational = value
        .trim()
        .parse()
        .map_err(|_| bad(format!("anchor value {value:?} is not a rational")))?;
    let id = id.trim();
    let region = if id.starts_with('(') {
        let coords: Result<Vec<Rational>, _> = id
            .trim_matches(|c| c == '(' || c == ')')
            .split(',')
            .map(|c| c.trim().parse::<Rational>())
            .collect();
        let label = RationalVector(coords.map_err(|_| bad(format!("bad anchor label {id:?}")))?);
        s.region_by_label(&label)
            .ok_or_else(|| bad(format!("no region is labeled {label}")))?
    } else {
        let k: usize = id
            .trim_start_matches('r')
            .parse()
            .map_err(|_| bad(format!("bad anchor region {id:?}")))?;
        if k >= s.regions.len() {
            return Err(bad(format!("region r{k} does not exist")));
        }
        RegionId(k)
    };
    Ok((region, value))
}

/// Runs one command and returns its exit code.
pub fn execute(cmd: &Command) -> Result<i32, Failure> {
    match cmd {
        Command::Dualize { io } => {
            let v: Valuation = read_json(&io.input)?;
            let u = dualize(&v)?;
            write_out(io.out.as_deref(), &to_json(&u))?;
            if io.svg.is_some() {
                require_planar(&v)?;
                write_svg(io.svg.as_deref(), &demand_complex(&v)?)?;
            }
            Ok(EXIT_OK)
        }
        Command::Complex { io, which } => {
            let v: Valuation = read_json(&io.input)?;
            require_planar(&v)?;
            let s = match which {
                Which::Price => price_complex(&v)?,
                Which::Demand => demand_complex(&v)?,
            };
            write_out(io.out.as_deref(), &to_json(&s))?;
            write_svg(io.svg.as_deref(), &s)?;
            Ok(EXIT_OK)
        }
        Command::Balance { io } => {
            let s: LabeledSubdivision = read_json(&io.input)?;
            s.validate()?;
            let report = check_balancing(&s);
            write_out(io.out.as_deref(), &to_json(&report))?;
            write_svg(io.svg.as_deref(), &s)?;
            if !report.balanced {
                for v in report.vertices.iter().filter(|v| !v.residual.is_zero()) {
                    eprintln!("unbalanced at {}: residual {}", v.point, v.residual);
                }
            }
            Ok(if report.balanced { EXIT_OK } else { EXIT_FALSE })
        }
        Command::Integrate { io, anchor } => {
            let s: LabeledSubdivision = read_json(&io.input)?;
            s.validate()?;
            let anchor = parse_anchor(&s, anchor)?;
            let f = match integrate_subdivision(&s, anchor) {
                Ok(f) => f,
                Err(Error::NonConservative { cycle }) => {
                    let names: Vec<String> = cycle.iter().map(|r| r.to_string()).collect();
                    return Err(Failure {
                        code: EXIT_FALSE,
                        message: format!("non-conservative labeling, cycle {}", names.join(" -> ")),
                    });
                }
                Err(e) => return Err(e.into()),
            };
            write_out(io.out.as_deref(), &to_json(&f))?;
            write_svg(io.svg.as_deref(), &s)?;
            Ok(EXIT_OK)
        }
        Command::Equilibrium { io, cap } => {
            let e: Economy = read_json(&io.input)?;
            let report = duality_test_capped(&e, *cap)?;
            write_out(io.out.as_deref(), &to_json(&report))?;
            if io.svg.is_some() {
                if e.goods() != 2 {
                    return Err(Error::UnsupportedDimension {
                        expected: 2,
                        found: e.goods(),
                    }
                    .into());
                }
                write_svg(io.svg.as_deref(), &price_complex(&e.consumers()[0])?)?;
            }
            Ok(if report.exists { EXIT_OK } else { EXIT_FALSE })
        }
        Command::Cyclemono { io, direction } => {
            let sample: CorrespondenceSample = read_json(&io.input)?;
            let dir = match direction {
                DirectionArg::Demand => Direction::Demand,
                DirectionArg::InverseDemand => Direction::InverseDemand,
            };
            let report = check_cyclic_monotonicity(&sample, dir)?;
            write_out(io.out.as_deref(), &to_json(&report))?;
            if io.svg.is_some() {
                return Err(Failure {
                    code: EXIT_INVALID,
                    message: "cyclemono has no planar complex to draw".into(),
                });
            }
            Ok(if report.monotone { EXIT_OK } else { EXIT_FALSE })
        }
    }
}

/// Parses arguments, runs the command and reports failures on standard error.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli.command) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}
