use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use superspec_core::derivcolloc::CollocationSet;
use superspec_core::errorbounds::BoundQuantity;
use superspec_core::functions::TestFunction;
use superspec_core::NodeFamily;

pub const MAX_N: usize = 4096;

#[derive(Debug, Parser)]
#[command(name = "superspec", version, about = "Superconvergence points, error sweeps and figures for Chebyshev and Legendre interpolation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Interpolation nodes as `x,value` with value = θ, x = cos θ.
    Nodes {
        #[arg(long)]
        family: NodeFamily,
        #[arg(long)]
        n: Degree,
        #[command(flatten)]
        out: Output,
    },
    /// Derivative superconvergence points as `x,value` with value = θ.
    Superpoints {
        #[arg(long)]
        family: NodeFamily,
        #[arg(long)]
        n: Degree,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..=2))]
        order: u32,
        #[command(flatten)]
        out: Output,
    },
    /// Derivative error of an interpolant: pointwise for one N, a sweep table otherwise.
    InterpError(InterpArgs),
    /// Measured errors against the a priori bounds over a range of N.
    Bounds(BoundsArgs),
    /// Integrate u' = f by derivative collocation and report the value error.
    Ode(OdeArgs),
    /// Extremals of a Lobatto or Radau nodal polynomial and their envelope.
    Envelope {
        #[arg(long)]
        family: NodeFamily,
        #[arg(long)]
        n: Degree,
        #[command(flatten)]
        out: Output,
    },
    /// Reproduce one of the figures by id.
    Figure {
        #[arg(long)]
        id: FigureId,
        #[arg(long, default_value = "16")]
        n: Degree,
        #[arg(long, default_value_t = 2001)]
        grid_size: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Run every acceptance criterion and module invariant.
    Verify,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Destination file (written atomically); standard output when omitted.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    /// Defaults to svg for a `.svg` destination and for figures, csv otherwise.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Svg,
}

#[derive(Debug, Args)]
pub struct Sweep {
    /// One N, a list `8,16,32`, or an inclusive range `4..24`.
    #[arg(long)]
    pub n: NList,
    /// Emit the sweep table even for a single N.
    #[arg(long)]
    pub sweep: bool,
    #[arg(long, default_value_t = 2001)]
    pub grid_size: usize,
}

#[derive(Debug, Args)]
pub struct InterpArgs {
    #[arg(long)]
    pub family: NodeFamily,
    /// runge, pole2, pole:<re>[,<im>] or poly:<degree>.
    #[arg(long, default_value = "runge")]
    pub function: TestFunction,
    /// Derivative order; order 0 has no superpoint columns.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(0..=2))]
    pub order: u32,
    #[command(flatten)]
    pub sweep: Sweep,
    #[command(flatten)]
    pub ellipse: EllipseArgs,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long)]
    pub family: NodeFamily,
    #[arg(long, default_value = "pole2")]
    pub function: TestFunction,
    #[arg(long, value_enum, default_value_t = Quantity::D1)]
    pub quantity: Quantity,
    /// One N, a list `8,16,32`, or an inclusive range `4..24`.
    #[arg(long)]
    pub n: NList,
    #[arg(long, default_value_t = 2001)]
    pub grid_size: usize,
    #[command(flatten)]
    pub ellipse: EllipseArgs,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Args)]
pub struct EllipseArgs {
    /// The ellipse is taken at ρ = ρ_pole · (1 − margin).
    #[arg(long, default_value_t = 1e-3)]
    pub margin: f64,
    /// Samples on the ellipse used to estimate max |u|.
    #[arg(long, default_value_t = 4096)]
    pub c_samples: usize,
}

#[derive(Debug, Args)]
pub struct OdeArgs {
    /// Collocation set: t31 .. t36-left, or a family name (cheb-gauss = roots of T_N).
    #[arg(long, default_value = "cheb-gauss")]
    pub set: CollocationSet,
    /// Right-hand side f with u(−1) = f(−1); for poly:<d> the polynomial is the exact solution u.
    #[arg(long, default_value = "runge")]
    pub function: TestFunction,
    #[command(flatten)]
    pub sweep: Sweep,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Quantity {
    Value,
    D1,
    D2,
    D1Super,
    D2Super,
}

impl From<Quantity> for BoundQuantity {
    fn from(q: Quantity) -> BoundQuantity {
        match q {
            Quantity::Value => BoundQuantity::Value,
            Quantity::D1 => BoundQuantity::D1,
            Quantity::D2 => BoundQuantity::D2,
            Quantity::D1Super => BoundQuantity::D1Super,
            Quantity::D2Super => BoundQuantity::D2Super,
        }
    }
}

fn parse_degree(s: &str) -> Result<usize, String> {
    let n: usize = s.trim().parse().map_err(|_| format!("'{s}' is not a degree"))?;
    if !(2..=MAX_N).contains(&n) {
        return Err(format!("N = {n} outside 2..={MAX_N}"));
    }
    Ok(n)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Degree(pub usize);

impl FromStr for Degree {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        parse_degree(s).map(Degree)
    }
}

/// Sorted, deduplicated degrees from `a`, `a,b,c` or `lo..hi` (inclusive).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NList(pub Vec<usize>);

impl FromStr for NList {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let mut ns = Vec::new();
        for item in s.split(',') {
            let item = item.trim();
            if let Some((lo, hi)) = item.split_once("..") {
                let lo = parse_degree(lo)?;
                let hi = parse_degree(hi.strip_prefix('=').unwrap_or(hi))?;
                if lo > hi {
                    return Err(format!("empty range {item}"));
                }
                ns.extend(lo..=hi);
            } else {
                ns.push(parse_degree(item)?);
            }
        }
        ns.sort_unstable();
        ns.dedup();
        Ok(NList(ns))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureId {
    ChLobatto,
    ChRadau,
    Ch1,
    ChLobatto1,
    ChRadau1,
    ChDiff1,
    Ch2,
    ChLobatto2,
    ChRadau2,
    ChDiff2,
}

impl FigureId {
    pub const ALL: [FigureId; 10] = [
        FigureId::ChLobatto,
        FigureId::ChRadau,
        FigureId::Ch1,
        FigureId::ChLobatto1,
        FigureId::ChRadau1,
        FigureId::ChDiff1,
        FigureId::Ch2,
        FigureId::ChLobatto2,
        FigureId::ChRadau2,
        FigureId::ChDiff2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FigureId::ChLobatto => "ch-lobatto",
            FigureId::ChRadau => "ch-radau",
            FigureId::Ch1 => "ch1",
            FigureId::ChLobatto1 => "ch-lobatto1",
            FigureId::ChRadau1 => "ch-radau1",
            FigureId::ChDiff1 => "ch-diff1",
            FigureId::Ch2 => "ch2",
            FigureId::ChLobatto2 => "ch-lobatto2",
            FigureId::ChRadau2 => "ch-radau2",
            FigureId::ChDiff2 => "ch-diff2",
        }
    }

    pub fn title(self) -> &'static str {
        match self {
            FigureId::ChLobatto => "Profile of the Chebyshev-Lobatto polynomial",
            FigureId::ChRadau => "Profile of the Chebyshev-Radau polynomials",
            FigureId::Ch1 => "Interpolation at the Chebyshev points, 1/(1+25x²)",
            FigureId::ChLobatto1 => "Interpolation at the Chebyshev-Lobatto points, 1/(1+25x²)",
            FigureId::ChRadau1 => "Interpolation at the right Chebyshev-Radau points, 1/(1+25x²)",
            FigureId::ChDiff1 => "Derivative interpolation at the Chebyshev points, u' = 1/(1+25x²)",
            FigureId::Ch2 => "Interpolation at the Chebyshev points, 1/(2-x)",
            FigureId::ChLobatto2 => "Interpolation at the Chebyshev-Lobatto points, 1/(2-x)",
            FigureId::ChRadau2 => "Interpolation at the right Chebyshev-Radau points, 1/(2-x)",
            FigureId::ChDiff2 => "Derivative interpolation at the Chebyshev points, u' = 1/(2-x)",
        }
    }
}

impl fmt::Display for FigureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FigureId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        FigureId::ALL.into_iter().find(|f| f.name() == s).ok_or_else(|| {
            let ids: Vec<_> = FigureId::ALL.iter().map(|f| f.name()).collect();
            format!("unknown figure id '{s}' (valid ids: {})", ids.join(", "))
        })
    }
}
