//! `fibsum verify`: every closed form against an independent oracle over a
//! range of n, reported as JSON.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use fibsum::automorphism::{aut_bruteforce, aut_closed_form, is_automorphism, BRUTEFORCE_CAP};
use fibsum::bipartition::{part_sizes, s_of, s_of_scan, Bipartition};
use fibsum::cycles::{
    check_cycle, detect_h_subgraph, even_cycle, even_cycle_host, girth, shortest_cycle_length,
};
use fibsum::decomposition::{
    build_outerplanar_certificate, build_tree_decomposition, find_crossing,
    validate_tree_decomposition,
};
use fibsum::fibcore::{check_materializable, FibSequence};
use fibsum::graph::{degree_closed_form, edge_count_closed_form, pendants};
use fibsum::hamilton::{classify, enumerate_paths_bruteforce, hamiltonian_paths, HamiltonStatus};
use fibsum::{ExplicitGraph, FibSumGraph};

use crate::commands::check_chords_of;
use crate::error::CliError;

pub const SCHEMA: u32 = 1;

const HAMILTON_ENUM_MAX: u64 = 40;
const GIRTH_MAX: u64 = 2000;
const CHORDS_MAX: u64 = 25;
const H_FREE_MAX: u64 = 1500;
const EXPLICIT_MAX: u64 = 2000;
const AUT_EDGE_MAX: u64 = 3000;
const SPOT_SAMPLES: usize = 200;
const EVEN_CYCLE_K: std::ops::RangeInclusive<usize> = 2..=12;

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub schema: u32,
    pub tool_version: &'static str,
    pub timestamp: String,
    pub max: u64,
    pub seed: u64,
    pub suites: Vec<SuiteResult>,
}

#[derive(Debug, Serialize)]
pub struct SuiteResult {
    pub name: &'static str,
    pub range: [u64; 2],
    pub passed: bool,
    pub counterexample: Option<Counterexample>,
}

#[derive(Debug, Serialize)]
pub struct Counterexample {
    pub n: u64,
    pub detail: String,
}

type Check = Result<(), Counterexample>;

fn fail(n: u64, detail: impl Into<String>) -> Counterexample {
    Counterexample {
        n,
        detail: detail.into(),
    }
}

/// Turns a library error at `n` into a counterexample.
fn at<T>(n: u64, r: fibsum::Result<T>) -> Result<T, Counterexample> {
    r.map_err(|e| fail(n, e.to_string()))
}

struct Suite {
    name: &'static str,
    range: [u64; 2],
    run: Box<dyn Fn() -> Check + Send + Sync>,
}

pub fn run(max: u64, seed: u64) -> Result<VerifyReport, CliError> {
    check_materializable(max)?;
    let suites = suites(max, seed);
    let mut results: Vec<SuiteResult> = suites
        .par_iter()
        .map(|s| {
            let outcome = (s.run)();
            SuiteResult {
                name: s.name,
                range: s.range,
                passed: outcome.is_ok(),
                counterexample: outcome.err(),
            }
        })
        .collect();
    results.sort_by_key(|r| r.name);
    Ok(VerifyReport {
        schema: SCHEMA,
        tool_version: env!("CARGO_PKG_VERSION"),
        timestamp: chrono::Utc::now().to_rfc3339(),
        max,
        seed,
        suites: results,
    })
}

fn suites(max: u64, seed: u64) -> Vec<Suite> {
    let small = move |cap: u64| max.min(cap);
    vec![
        Suite {
            name: "adjacency",
            range: [1, max],
            run: Box::new(move || adjacency(max)),
        },
        Suite {
            name: "degrees_and_pendants",
            range: [1, max],
            run: Box::new(move || degrees_and_pendants(max)),
        },
        Suite {
            name: "bipartition",
            range: [1, max],
            run: Box::new(move || bipartition(max)),
        },
        Suite {
            name: "imbalance_spot",
            range: [1, max.saturating_mul(20)],
            run: Box::new(move || imbalance_spot(max, seed)),
        },
        Suite {
            name: "hamilton",
            range: [1, max],
            run: Box::new(move || hamilton(max)),
        },
        Suite {
            name: "automorphism",
            range: [9, max],
            run: Box::new(move || automorphism(max)),
        },
        Suite {
            name: "girth",
            range: [1, small(GIRTH_MAX)],
            run: Box::new(move || girth_suite(small(GIRTH_MAX))),
        },
        Suite {
            name: "chords",
            range: [1, small(CHORDS_MAX)],
            run: Box::new(move || chords(small(CHORDS_MAX))),
        },
        Suite {
            name: "h_free",
            range: [small(H_FREE_MAX), small(H_FREE_MAX)],
            run: Box::new(move || h_free(small(H_FREE_MAX))),
        },
        Suite {
            name: "tree_decomposition",
            range: [1, max],
            run: Box::new(move || tree_decomposition(max)),
        },
        Suite {
            name: "outerplanar",
            range: [1, max],
            run: Box::new(move || outerplanar(max)),
        },
        Suite {
            name: "even_cycle",
            range: [*EVEN_CYCLE_K.start() as u64, *EVEN_CYCLE_K.end() as u64],
            run: Box::new(even_cycles),
        },
    ]
}

/// Neighbourhoods against a scan of the Fibonacci numbers, and full edge
/// sets against the pairwise graph for small n.
fn adjacency(max: u64) -> Check {
    let g = at(max, FibSumGraph::new(max))?;
    let fibs = FibSequence::get().values();
    for x in 1..=max {
        let mut expected: Vec<u64> = fibs
            .iter()
            .filter(|&&s| s > x && s - x <= max && s - x != x)
            .map(|&s| s - x)
            .collect();
        expected.sort_unstable();
        expected.dedup();
        let got = at(max, g.neighbours_of(x))?;
        if got != expected {
            return Err(fail(
                max,
                format!("N({x}) = {got:?}, expected {expected:?}"),
            ));
        }
    }
    let cap = max.min(EXPLICIT_MAX);
    let g = at(cap, FibSumGraph::new(cap))?;
    if g.edges() != ExplicitGraph::fib_sum_bruteforce(cap).edges().as_slice() {
        return Err(fail(cap, "edge set differs from the pairwise scan"));
    }
    Ok(())
}

/// Degrees, edge counts and pendants of every `G_n` against a graph grown
/// one vertex at a time.
fn degrees_and_pendants(max: u64) -> Check {
    let mut deg = vec![0u64; max as usize + 1];
    let mut edges = 0u64;
    let mut ones: BTreeSet<u64> = BTreeSet::new();
    let fibs = FibSequence::get().values();
    for n in 1..=max {
        let mut touched = vec![n];
        for &s in fibs.iter().filter(|&&s| s > n && s < 2 * n) {
            let j = s - n;
            deg[j as usize] += 1;
            deg[n as usize] += 1;
            edges += 1;
            touched.push(j);
        }
        for &x in &touched {
            if deg[x as usize] == 1 {
                ones.insert(x);
            } else {
                ones.remove(&x);
            }
            let r = at(n, degree_closed_form(n, x))?;
            if r.degree != deg[x as usize] {
                return Err(fail(
                    n,
                    format!("deg({x}) = {}, expected {}", r.degree, deg[x as usize]),
                ));
            }
        }
        let count = at(n, edge_count_closed_form(n))?;
        if count != edges {
            return Err(fail(n, format!("{count} edges, expected {edges}")));
        }
        let p = at(n, pendants(n))?;
        if !p.iter().copied().eq(ones.iter().copied()) {
            return Err(fail(n, format!("pendants {p:?}, expected {ones:?}")));
        }
    }
    Ok(())
}

/// The colouring is proper, and every prefix count matches the closed form.
fn bipartition(max: u64) -> Check {
    let b = at(max, Bipartition::new(max))?;
    let g = at(max, FibSumGraph::new(max))?;
    if let Some(&(u, v)) = g.edges().iter().find(|&&(u, v)| b.colour(u) == b.colour(v)) {
        return Err(fail(max, format!("edge {u}-{v} is monochromatic")));
    }
    let mut ones = 0u64;
    for n in 1..=max {
        ones += u64::from(b.colour(n));
        let sizes = at(n, part_sizes(n))?;
        if sizes.size1 != ones || sizes.size0 != n - ones {
            return Err(fail(
                n,
                format!(
                    "sizes {}/{}, counted {ones}/{}",
                    sizes.size1,
                    sizes.size0,
                    n - ones
                ),
            ));
        }
    }
    Ok(())
}

/// `S(N)` closed form against the linear scan at seeded random N.
fn imbalance_spot(max: u64, seed: u64) -> Check {
    let top = max.saturating_mul(20).min(fibsum::fibcore::MATERIALIZE_MAX);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..SPOT_SAMPLES {
        let n = rng.gen_range(1..=top);
        let (fast, slow) = (at(n, s_of(n))?, at(n, s_of_scan(n))?);
        if fast != slow {
            return Err(fail(n, format!("S = {fast}, scan gives {slow}")));
        }
    }
    Ok(())
}

/// The classification against exhaustive search for small n, and the
/// constructed paths for every Fibonacci n.
fn hamilton(max: u64) -> Check {
    let expected = |s: HamiltonStatus| match s {
        HamiltonStatus::None => 0,
        HamiltonStatus::Unique => 1,
        HamiltonStatus::Two => 2,
    };
    for n in 1..=max.min(HAMILTON_ENUM_MAX) {
        let class = at(n, classify(n))?;
        let found = at(n, enumerate_paths_bruteforce(n))?.len();
        if found != expected(class.status) {
            return Err(fail(
                n,
                format!("classified {:?}, search found {found}", class.status),
            ));
        }
    }
    for &n in FibSequence::get()
        .values()
        .iter()
        .filter(|&&x| x >= 5 && x <= max)
    {
        let class = at(n, classify(n))?;
        let paths = at(n, hamiltonian_paths(n))?;
        if paths.len() != expected(class.status) {
            return Err(fail(
                n,
                format!("{} paths for {:?}", paths.len(), class.status),
            ));
        }
        for p in &paths {
            at(n, p.validate(n))?;
        }
    }
    Ok(())
}

/// Closed form against the backtracking search, then edge preservation.
fn automorphism(max: u64) -> Check {
    for n in 9..=max.min(BRUTEFORCE_CAP) {
        let (closed, brute) = (at(n, aut_closed_form(n))?, at(n, aut_bruteforce(n))?);
        if closed != brute {
            return Err(fail(
                n,
                format!("closed form {:?}, search {:?}", closed.swaps, brute.swaps),
            ));
        }
    }
    let mut ns: Vec<u64> = (9..=max.min(AUT_EDGE_MAX)).collect();
    if max >= 9 {
        ns.push(max);
    }
    for n in ns {
        let group = at(n, aut_closed_form(n))?;
        let g = at(n, FibSumGraph::new(n))?;
        if !is_automorphism(&g, &group.swaps) {
            return Err(fail(
                n,
                format!("{:?} does not preserve edges", group.swaps),
            ));
        }
    }
    Ok(())
}

fn girth_suite(max: u64) -> Check {
    for n in 1..=max {
        let g = at(n, FibSumGraph::new(n))?;
        let (closed, search) = (at(n, girth(n))?, shortest_cycle_length(&g));
        if closed != search {
            return Err(fail(n, format!("girth {closed:?}, search {search:?}")));
        }
    }
    Ok(())
}

fn chords(max: u64) -> Check {
    for n in 1..=max {
        let g = at(n, FibSumGraph::new(n))?;
        check_chords_of(n, &g).map_err(|e| fail(n, e.to_string()))?;
    }
    Ok(())
}

fn h_free(n: u64) -> Check {
    let g = at(n, FibSumGraph::new(n))?;
    match detect_h_subgraph(&g) {
        None => Ok(()),
        Some(w) => Err(fail(n, format!("H subgraph {w:?}"))),
    }
}

fn tree_decomposition(max: u64) -> Check {
    (1..=max).into_par_iter().try_for_each(|n| {
        let g = at(n, FibSumGraph::new(n))?;
        let td = at(n, build_tree_decomposition(n))?;
        validate_tree_decomposition(&g, &td).map_err(|v| fail(n, v.to_string()))?;
        if td.width() > 2 {
            return Err(fail(n, format!("width {}", td.width())));
        }
        Ok(())
    })
}

fn outerplanar(max: u64) -> Check {
    (1..=max).into_par_iter().try_for_each(|n| {
        let g = at(n, FibSumGraph::new(n))?;
        let cert = at(n, build_outerplanar_certificate(n))?;
        match at(n, find_crossing(&g, &cert))? {
            None => Ok(()),
            Some((e, f)) => Err(fail(n, format!("edges {e:?} and {f:?} cross"))),
        }
    })
}

fn even_cycles() -> Check {
    for k in EVEN_CYCLE_K {
        let host = at(k as u64, even_cycle_host(k))?;
        let c = at(host, even_cycle(k))?;
        if c.len() != 2 * k || c.max_vertex() != host {
            return Err(fail(host, format!("cycle {:?} for k = {k}", c.vertices())));
        }
        let g = at(host, FibSumGraph::new(host))?;
        at(host, check_cycle(&g, c.vertices()))?;
    }
    Ok(())
}
