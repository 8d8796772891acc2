use std::fs::File;
use std::io::{self, BufWriter, Write};

use serde::Serialize;
use serde_json::json;

use fibsum::automorphism::{aut_bruteforce, aut_closed_form, interval_report};
use fibsum::bipartition::{part_sizes, s_of, Bipartition};
use fibsum::cycles::{
    crossing_chords, enumerate_cycles, even_cycle, even_cycle_host, four_cycle_chord, girth,
    shortest_cycle_length,
};
use fibsum::decomposition::{
    build_outerplanar_certificate, build_tree_decomposition, find_crossing,
    validate_tree_decomposition,
};
use fibsum::export::{write_dot, write_edge_list, write_json};
use fibsum::graph::{degree_closed_form, pendants, FibSumGraph};
use fibsum::hamilton::{classify, hamiltonian_paths, HamiltonStatus};
use fibsum::Error;

use crate::args::{Cli, Command, Format};
use crate::error::CliError;
use crate::verify;

/// Largest n for which `cycles --check-chords` enumerates cycles.
const CHORD_CHECK_MAX: u64 = 25;
/// Largest n for which `cycles --girth` also runs the search oracle.
const GIRTH_ORACLE_MAX: u64 = 5000;

type Out = Box<dyn Write>;

fn sink(cli: &Cli) -> io::Result<Out> {
    Ok(match &cli.out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn pick(cli: &Cli, default: Format, allowed: &[Format]) -> Result<Format, CliError> {
    let format = cli.format.unwrap_or(default);
    if allowed.contains(&format) {
        Ok(format)
    } else {
        Err(CliError::Usage(format!(
            "--format {format:?} is not available here; use one of {allowed:?}"
        )))
    }
}

fn json_line<T: Serialize>(out: &mut Out, value: &T) -> Result<(), CliError> {
    serde_json::to_writer(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn comma_line(out: &mut Out, values: &[u64]) -> io::Result<()> {
    let parts: Vec<String> = values.iter().map(u64::to_string).collect();
    writeln!(out, "{}", parts.join(","))
}

pub fn run(cli: &Cli) -> Result<(), CliError> {
    use Format::*;
    match &cli.command {
        Command::Graph { n } => {
            let format = pick(cli, Text, &[Text, Json, Dot, Csv])?;
            let g = FibSumGraph::new(*n)?;
            let mut out = sink(cli)?;
            match format {
                Json => write_json(&g, &mut out)?,
                Dot => write_dot(&g, &mut out)?,
                Csv => {
                    writeln!(out, "u,v")?;
                    for (a, b) in g.edge_iter() {
                        writeln!(out, "{a},{b}")?;
                    }
                }
                Text => write_edge_list(&g, &mut out)?,
            }
            out.flush()?;
        }

        Command::Degrees { n, vertex } => {
            let format = pick(cli, Csv, &[Csv, Json, Text])?;
            FibSumGraph::new(*n)?;
            let xs: Vec<u64> = match vertex {
                Some(x) => vec![*x],
                None => (1..=*n).collect(),
            };
            let reports = xs
                .iter()
                .map(|&x| degree_closed_form(*n, x))
                .collect::<Result<Vec<_>, _>>()?;
            let mut out = sink(cli)?;
            match format {
                Json => json_line(&mut out, &reports)?,
                Csv => {
                    writeln!(out, "x,degree,k,ell")?;
                    for r in &reports {
                        writeln!(out, "{},{},{},{}", r.x, r.degree, r.k, r.ell)?;
                    }
                }
                _ => {
                    for r in &reports {
                        writeln!(out, "{} {}", r.x, r.degree)?;
                    }
                }
            }
            out.flush()?;
        }

        Command::Pendants { n } => {
            let format = pick(cli, Text, &[Text, Json])?;
            let p = pendants(*n)?;
            let mut out = sink(cli)?;
            match format {
                Json => json_line(&mut out, &json!({ "n": n, "pendants": p }))?,
                _ => comma_line(&mut out, &p)?,
            }
            out.flush()?;
        }

        Command::Bipartition { n } => {
            let format = pick(cli, Json, &[Json, Csv, Text])?;
            let mut out = sink(cli)?;
            match format {
                Csv => {
                    let b = Bipartition::new(*n)?;
                    writeln!(out, "vertex,colour")?;
                    for (i, c) in b.colours().iter().enumerate() {
                        writeln!(out, "{},{c}", i + 1)?;
                    }
                }
                _ => {
                    let sizes = part_sizes(*n)?;
                    let s = s_of(*n)?;
                    if format == Json {
                        json_line(
                            &mut out,
                            &json!({
                                "n": n,
                                "size1": sizes.size1,
                                "size0": sizes.size0,
                                "S_times_2": s.twice,
                            }),
                        )?;
                    } else {
                        writeln!(out, "{} {} {s}", sizes.size1, sizes.size0)?;
                    }
                }
            }
            out.flush()?;
        }

        Command::Hampath { n } => {
            let format = pick(cli, Text, &[Text, Json])?;
            let class = classify(*n)?;
            let paths = hamiltonian_paths(*n)?;
            let expected = match class.status {
                HamiltonStatus::None => 0,
                HamiltonStatus::Unique => 1,
                HamiltonStatus::Two => 2,
            };
            if paths.len() != expected {
                return Err(Error::Invariant(format!(
                    "G_{n} is classified {:?} but {} paths were produced",
                    class.status,
                    paths.len()
                ))
                .into());
            }
            let mut out = sink(cli)?;
            match format {
                Json => {
                    let orders: Vec<&[u64]> = paths.iter().map(|p| p.order()).collect();
                    json_line(
                        &mut out,
                        &json!({
                            "n": n,
                            "status": class.status,
                            "reason": class.reason,
                            "paths": orders,
                        }),
                    )?;
                }
                _ if paths.is_empty() => writeln!(out, "none")?,
                _ => {
                    for p in &paths {
                        comma_line(&mut out, p.order())?;
                    }
                }
            }
            out.flush()?;
        }

        Command::Cycles {
            n,
            girth: want_girth,
            even_cycle: k,
            check_chords,
        } => {
            let format = pick(cli, Json, &[Json, Text])?;
            let mut out = sink(cli)?;
            if let Some(k) = k {
                let host = even_cycle_host(*k)?;
                let c = even_cycle(*k)?;
                match format {
                    Json => json_line(
                        &mut out,
                        &json!({ "k": k, "n": host, "cycle": c.vertices() }),
                    )?,
                    _ => comma_line(&mut out, c.vertices())?,
                }
            } else {
                let n = n.expect("required by the argument parser");
                let g = FibSumGraph::new(n)?;
                if *want_girth {
                    let value = girth(n)?;
                    if n <= GIRTH_ORACLE_MAX && shortest_cycle_length(&g) != value {
                        return Err(Error::Invariant(format!(
                            "girth of G_{n}: closed form {value:?}, search {:?}",
                            shortest_cycle_length(&g)
                        ))
                        .into());
                    }
                    match format {
                        Json => json_line(&mut out, &json!({ "n": n, "girth": value }))?,
                        _ => match value {
                            Some(v) => writeln!(out, "{v}")?,
                            None => writeln!(out, "none")?,
                        },
                    }
                } else if *check_chords {
                    let summary = check_chords_of(n, &g)?;
                    match format {
                        Json => json_line(&mut out, &summary)?,
                        _ => writeln!(
                            out,
                            "{} cycles, {} of length >= 6, no crossing chords",
                            summary["cycles"], summary["long_cycles"]
                        )?,
                    }
                }
            }
            out.flush()?;
        }

        Command::Treedecomp { n } => {
            let format = pick(cli, Json, &[Json, Dot, Text])?;
            let g = FibSumGraph::new(*n)?;
            let td = build_tree_decomposition(*n)?;
            validate_tree_decomposition(&g, &td)
                .map_err(|v| Error::Invariant(format!("decomposition of G_{n}: {v}")))?;
            let mut out = sink(cli)?;
            match format {
                Json => json_line(&mut out, &td)?,
                Dot => {
                    writeln!(out, "graph T{n} {{")?;
                    for (i, bag) in td.bags.iter().enumerate() {
                        let label: Vec<String> = bag.iter().map(u64::to_string).collect();
                        writeln!(out, "  {i} [label=\"{{{}}}\"];", label.join(","))?;
                    }
                    for [a, b] in &td.tree {
                        writeln!(out, "  {a} -- {b};")?;
                    }
                    writeln!(out, "}}")?;
                }
                _ => writeln!(out, "width {} with {} bags", td.width(), td.bags.len())?,
            }
            out.flush()?;
        }

        Command::Outerplanar { n } => {
            let format = pick(cli, Text, &[Text, Json])?;
            let g = FibSumGraph::new(*n)?;
            let cert = build_outerplanar_certificate(*n)?;
            if let Some((e, f)) = find_crossing(&g, &cert)? {
                return Err(Error::Invariant(format!(
                    "certificate for G_{n} has crossing edges {e:?} and {f:?}"
                ))
                .into());
            }
            let mut out = sink(cli)?;
            match format {
                Json => json_line(&mut out, &cert)?,
                _ => comma_line(&mut out, &cert.order)?,
            }
            out.flush()?;
        }

        Command::Aut { n, table } => {
            let mut out = sink(cli)?;
            if let Some(max) = table {
                let format = pick(cli, Csv, &[Csv, Json, Text])?;
                let report = interval_report(*max)?;
                match format {
                    Json => json_line(&mut out, &report)?,
                    _ => {
                        writeln!(out, "lo,hi,order")?;
                        for r in &report {
                            writeln!(out, "{},{},{}", r.lo, r.hi, r.order)?;
                        }
                    }
                }
            } else {
                let format = pick(cli, Json, &[Json, Text])?;
                let n = n.expect("required by the argument parser");
                let group = if n < 9 {
                    aut_bruteforce(n)?
                } else {
                    aut_closed_form(n)?
                };
                match format {
                    Json => {
                        let swaps: Vec<[u64; 2]> =
                            group.swaps.iter().map(|&(a, b)| [a, b]).collect();
                        json_line(
                            &mut out,
                            &json!({ "n": n, "order": group.order(), "swaps": swaps }),
                        )?;
                    }
                    _ => {
                        let swaps: Vec<String> = group
                            .swaps
                            .iter()
                            .map(|(a, b)| format!("{a}<->{b}"))
                            .collect();
                        writeln!(out, "order {} {}", group.order(), swaps.join(" "))?;
                    }
                }
            }
            out.flush()?;
        }

        Command::Verify { max, seed } => {
            pick(cli, Json, &[Json])?;
            let report = verify::run(*max, *seed)?;
            let mut out = sink(cli)?;
            serde_json::to_writer_pretty(&mut out, &report)?;
            writeln!(out)?;
            out.flush()?;
            let failed: Vec<String> = report
                .suites
                .iter()
                .filter(|s| !s.passed)
                .map(|s| {
                    let c = s
                        .counterexample
                        .as_ref()
                        .expect("failing suites carry a counterexample");
                    format!("{} at n = {}: {}", s.name, c.n, c.detail)
                })
                .collect();
            if !failed.is_empty() {
                return Err(CliError::Failed(failed.join("; ")));
            }
        }
    }
    Ok(())
}

pub(crate) fn check_chords_of(n: u64, g: &FibSumGraph) -> Result<serde_json::Value, CliError> {
    if n > CHORD_CHECK_MAX {
        return Err(Error::Range(format!(
            "cycle enumeration is capped at n = {CHORD_CHECK_MAX}"
        ))
        .into());
    }
    let cycles = enumerate_cycles(g);
    let mut long = 0;
    for c in &cycles {
        let crossing = crossing_chords(g, c)?;
        if let Some((e, f)) = crossing.first() {
            return Err(Error::Invariant(format!(
                "cycle {c:?} of G_{n} has crossing chords {e:?} and {f:?}"
            ))
            .into());
        }
        if c.len() >= 6 {
            long += 1;
            four_cycle_chord(g, c)?;
        }
    }
    Ok(json!({
        "n": n,
        "cycles": cycles.len(),
        "long_cycles": long,
        "crossing_pairs": 0,
    }))
}
