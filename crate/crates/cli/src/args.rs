use std::path::PathBuf;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};

pub const DEFAULT_SEED: u64 = 2024;

#[derive(Debug, Parser)]
#[command(
    name = "fibsum",
    version,
    about = "Fibonacci-sum graphs: structure, constructions and checks"
)]
pub struct Cli {
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Csv,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Edges of G_n.
    Graph { n: u64 },

    /// Degree of each vertex, with its bracket indices.
    Degrees {
        n: u64,
        /// Report only this vertex.
        #[arg(long)]
        vertex: Option<u64>,
    },

    /// Vertices of degree 1.
    Pendants { n: u64 },

    /// Part sizes of the 2-colouring (colour of vertex 1 is 1).
    Bipartition { n: u64 },

    /// Hamiltonian path(s) of G_n, or "none".
    Hampath { n: u64 },

    /// Cycle structure.
    #[command(group(ArgGroup::new("mode").required(true).args(["girth", "even_cycle", "check_chords"])))]
    Cycles {
        #[arg(required_unless_present = "even_cycle")]
        n: Option<u64>,
        /// Girth of G_n.
        #[arg(long)]
        girth: bool,
        /// The explicit cycle of length 2k.
        #[arg(long, value_name = "K")]
        even_cycle: Option<usize>,
        /// Check every cycle of G_n (n <= 25) for crossing chords and the
        /// chord cutting off a 4-cycle.
        #[arg(long)]
        check_chords: bool,
    },

    /// Tree decomposition of width at most 2.
    Treedecomp { n: u64 },

    /// Circular vertex order with no crossing edges.
    Outerplanar { n: u64 },

    /// Automorphism group of G_N, or the table of runs of equal order.
    #[command(group(ArgGroup::new("which").required(true).args(["n", "table"])))]
    Aut {
        n: Option<u64>,
        /// Runs of N with equal group order for 7 <= N <= MAX.
        #[arg(long, value_name = "MAX")]
        table: Option<u64>,
    },

    /// Run every oracle-equivalence suite and emit a JSON report.
    Verify {
        #[arg(long, default_value_t = 1000)]
        max: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}
