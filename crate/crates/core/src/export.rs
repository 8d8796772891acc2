//! Edge-list, DOT and JSON renderings of `G_n`.
//!
//! All three list edges `(i, j)` with `i < j` in ascending lexicographic order.

use std::io::{self, Write};

use serde::{Deserialize, Serialize};

use crate::graph::FibSumGraph;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: u64,
    pub edges: Vec<[u64; 2]>,
}

impl From<&FibSumGraph> for GraphJson {
    fn from(g: &FibSumGraph) -> Self {
        GraphJson {
            n: g.n(),
            edges: g.edge_iter().map(|(a, b)| [a, b]).collect(),
        }
    }
}

/// One `"i j"` line per edge.
pub fn write_edge_list<W: Write>(g: &FibSumGraph, out: &mut W) -> io::Result<()> {
    for (a, b) in g.edge_iter() {
        writeln!(out, "{a} {b}")?;
    }
    Ok(())
}

pub fn write_dot<W: Write>(g: &FibSumGraph, out: &mut W) -> io::Result<()> {
    writeln!(out, "graph G{} {{", g.n())?;
    for v in 1..=g.n() {
        writeln!(out, "  {v} [label=\"{v}\"];")?;
    }
    for (a, b) in g.edge_iter() {
        writeln!(out, "  {a} -- {b};")?;
    }
    writeln!(out, "}}")
}

pub fn write_json<W: Write>(g: &FibSumGraph, out: &mut W) -> io::Result<()> {
    serde_json::to_writer(&mut *out, &GraphJson::from(g))?;
    writeln!(out)
}
