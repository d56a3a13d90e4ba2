use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use sl2kr::complex::{CubeOptions, Framing, GreenDot};
use sl2kr::homology::Window;
use sl2kr::ring::{Field, Rat, Scalar};

#[derive(Parser, Debug)]
#[command(name = "sl2kr", version, about = "sl2-equivariant gl(N) link homology")]
pub struct Args {
    /// Rank N of gl(N).
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    /// Coefficient field: `q` for the rationals or `fp:<p>` for an odd prime p.
    #[arg(long, default_value = "q")]
    pub field: String,
    /// Twist parameter t1 as an exact rational `a/b`.
    #[arg(long, default_value = "1/2")]
    pub t1: String,
    #[arg(long, default_value = "1/2")]
    pub t2: String,
    /// Lower end of the q-degree window (default: around the generators).
    #[arg(long, allow_hyphen_values = true)]
    pub qmin: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub qmax: Option<i64>,
    #[arg(long, value_enum, default_value_t = FramingMode::Unframed)]
    pub framing: FramingMode,
    /// Per-component framing numbers for unframed mode, e.g. `1,0` (default: blackboard).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub framing_numbers: Option<Vec<i64>>,
    /// Green dot `edge:hollow|solid:mult` on a 1-based diagram edge; repeatable.
    #[arg(long = "dot")]
    pub dots: Vec<String>,
    /// Comma-separated reports: homology, sl2, s, pdg_e, pdg_f, moy, invariance-suite.
    #[arg(long, value_delimiter = ',', default_value = "homology")]
    pub report: Vec<Report>,
    /// File of PD codes, one diagram per line (`-` for stdin).
    #[arg(long)]
    pub pd: Option<PathBuf>,
    /// Braid word such as `s1 s1 s-2`; repeatable.
    #[arg(long, allow_hyphen_values = true)]
    pub braid: Vec<String>,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FramingMode {
    Framed,
    Unframed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Report {
    Homology,
    Sl2,
    S,
    #[value(name = "pdg_e")]
    PdgE,
    #[value(name = "pdg_f")]
    PdgF,
    Moy,
    #[value(name = "invariance-suite")]
    InvarianceSuite,
}

impl Report {
    pub fn key(self) -> &'static str {
        match self {
            Report::Homology => "homology",
            Report::Sl2 => "sl2",
            Report::S => "s",
            Report::PdgE => "pdg_e",
            Report::PdgF => "pdg_f",
            Report::Moy => "moy",
            Report::InvarianceSuite => "invariance-suite",
        }
    }
}

/// Validated run configuration.
#[derive(Clone, Debug)]
pub struct Config {
    pub opts: CubeOptions,
    pub window: Option<Window>,
    pub reports: Vec<Report>,
}

pub fn parse_field(s: &str) -> Result<Field, String> {
    match s.trim() {
        "q" | "Q" => Ok(Field::Rationals),
        other => {
            let p = other.strip_prefix("fp:").ok_or_else(|| format!("field must be `q` or `fp:<p>`, got {other:?}"))?;
            let p: u32 = p.parse().map_err(|_| format!("bad prime {p:?}"))?;
            Field::prime(p).map_err(|e| e.to_string())
        }
    }
}

fn parse_scalar(field: Field, s: &str) -> Result<Scalar, String> {
    let r = Rat::parse(s).ok_or_else(|| format!("expected an exact rational a/b, got {s:?}"))?;
    field.rat(&r).map_err(|e| e.to_string())
}

fn parse_dot(field: Field, s: &str) -> Result<GreenDot, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [edge, kind, mult] = parts[..] else {
        return Err(format!("dot must look like edge:hollow:1/2, got {s:?}"));
    };
    let edge: usize = edge.parse().ok().filter(|&e| e > 0).ok_or_else(|| format!("bad dot edge {edge:?}"))?;
    let solid = match kind {
        "hollow" => false,
        "solid" => true,
        _ => return Err(format!("dot kind must be hollow or solid, got {kind:?}")),
    };
    Ok(GreenDot { edge: edge - 1, solid, mult: parse_scalar(field, mult)? })
}

impl Args {
    pub fn config(&self) -> Result<Config, String> {
        let field = parse_field(&self.field)?;
        if self.n < 2 {
            return Err("N must be at least 2".into());
        }
        let mut opts = CubeOptions::new(self.n, field);
        opts.t1 = parse_scalar(field, &self.t1)?;
        opts.t2 = parse_scalar(field, &self.t2)?;
        opts.framing = match self.framing {
            FramingMode::Framed if self.framing_numbers.is_some() => {
                return Err("framing numbers only apply in unframed mode".into());
            }
            FramingMode::Framed => Framing::Framed,
            FramingMode::Unframed => Framing::Unframed(self.framing_numbers.clone()),
        };
        opts.dots = self.dots.iter().map(|d| parse_dot(field, d)).collect::<Result<_, _>>()?;
        let window = match (self.qmin, self.qmax) {
            (None, None) => None,
            (Some(lo), Some(hi)) => Some(Window::new(lo, hi, self.n).map_err(|e| e.to_string())?),
            _ => return Err("give both --qmin and --qmax".into()),
        };
        let mut reports = self.report.clone();
        reports.sort();
        reports.dedup();
        Ok(Config { opts, window, reports })
    }
}
