use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Exact big and p-typical Witt vector arithmetic.
///
/// Operands are JSON documents read from `--in` (a file, or `-` for stdin),
/// one document per operand, in order.
#[derive(Debug, Parser)]
#[command(name = "wittkit", version, propagate_version = true)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,

    #[command(subcommand)]
    pub group: Group,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Base ring: Z, Z/m, Q or poly:<base>[a,b,...]. Used when an operand
    /// does not name its own ring.
    #[arg(long, global = true, default_value = "Z")]
    pub ring: String,

    /// Length of Witt vectors, precision of series, truncation of formal sums.
    #[arg(long, global = true)]
    pub prec: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Operand source; `-` reads stdin.
    #[arg(long = "in", global = true, default_value = "-")]
    pub input: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Group {
    /// Big Witt vectors in coordinates.
    #[command(subcommand)]
    Witt(WittOp),
    /// Unit power series 1 + c₁t + … .
    #[command(subcommand)]
    Series(SeriesOp),
    /// Formal sums of Verschiebung atoms.
    #[command(subcommand)]
    Formal(FormalOp),
    /// Integer combinations of cycles.
    #[command(subcommand)]
    Cycles(CyclesOp),
    /// p-typical Witt vectors.
    Ptyp {
        #[arg(long, global = true)]
        p: Option<u64>,
        #[command(subcommand)]
        op: PtypOp,
    },
    /// Universal coordinate polynomials.
    Univ(UnivArgs),
    /// Matrices as endomorphisms.
    #[command(subcommand)]
    Endo(EndoOp),
}

#[derive(Debug, Subcommand)]
pub enum WittOp {
    Add,
    Mul,
    Neg,
    Frob { k: usize },
    Versch { k: usize },
    Norm { d: usize },
    /// Generalized Teichmüller map into formal sums.
    Teich,
    Ghost,
    /// Ghost components back to coordinates.
    Unghost,
    Restrict { m: usize },
    /// Dwork's integrality test on ghost components.
    Dwork,
}

#[derive(Debug, Subcommand)]
pub enum SeriesOp {
    Mul,
    Wittmul,
    Inv,
    Factor,
    Ghostseries,
}

#[derive(Debug, Subcommand)]
pub enum FormalOp {
    Add,
    Mul,
    Frob { k: usize },
    Versch { k: usize },
    Trace,
    Mghost,
    Normalform,
}

#[derive(Debug, Subcommand)]
pub enum CyclesOp {
    Mul,
    Toseries,
}

#[derive(Debug, Subcommand)]
pub enum PtypOp {
    Add,
    Mul,
    V,
    F,
    Ghost,
    Unghost,
    /// Artin–Hasse coefficients over Q[a] up to `--prec`.
    Artinhasse,
    /// Image in the big Witt vectors as a unit series.
    Embed,
}

#[derive(Debug, Args)]
pub struct UnivArgs {
    #[arg(value_enum)]
    pub kind: UnivKind,
    /// Number of coordinates (top index for p-typical kinds).
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum UnivKind {
    Sum,
    Prod,
    Frob,
    Norm,
    Psum,
    Pprod,
    Pneg,
    Pfrob,
}

impl UnivKind {
    pub fn name(self) -> &'static str {
        match self {
            UnivKind::Sum => "sum",
            UnivKind::Prod => "prod",
            UnivKind::Frob => "frob",
            UnivKind::Norm => "norm",
            UnivKind::Psum => "psum",
            UnivKind::Pprod => "pprod",
            UnivKind::Pneg => "pneg",
            UnivKind::Pfrob => "pfrob",
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum EndoOp {
    /// det(1 − tf) to `--prec` (default: the dimension).
    Charpoly,
    /// Tr f, Tr f², … to `--prec` (default: the dimension).
    Traces,
    Dsum,
    Tensor,
    Versch { i: usize },
    Frob { k: usize },
    Norm { d: usize },
    Ext { j: usize },
    /// {"numer": [...], "denom": [...]} to a pair of companion matrices.
    Fromrational,
    /// Characteristic series of a virtual endomorphism.
    Virtualch,
}
