//! Cycles of `G_n`: girth, explicit even cycles, chord structure, and the
//! forbidden graph `H` (three 4-cycles sharing one edge).

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{domain, invariant, Error, Result};
use crate::explicit::Adjacency;
use crate::fibcore::{bracket, check_vertex_count, f, is_fibonacci, MAX_INDEX};

/// A cycle of some `G_n`: distinct vertices, every cyclically consecutive pair
/// summing to a Fibonacci number, even length at least 4.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleWitness {
    vertices: Vec<u64>,
}

impl CycleWitness {
    pub fn new(vertices: Vec<u64>) -> Result<Self> {
        let len = vertices.len();
        if len < 4 || !len.is_multiple_of(2) {
            return Err(domain!(
                "a Fibonacci-sum cycle has even length >= 4, got {len}"
            ));
        }
        let mut sorted = vertices.clone();
        sorted.sort_unstable();
        if sorted[0] == 0 || sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(domain!("cycle vertices must be distinct positive integers"));
        }
        for i in 0..len {
            let (a, b) = (vertices[i], vertices[(i + 1) % len]);
            if !is_fibonacci(a + b) {
                return Err(domain!("{a} + {b} is not a Fibonacci number"));
            }
        }
        Ok(CycleWitness { vertices })
    }

    pub fn vertices(&self) -> &[u64] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn max_vertex(&self) -> u64 {
        *self.vertices.iter().max().expect("non-empty")
    }
}

fn constructed(vertices: Vec<u64>, what: &str) -> Result<CycleWitness> {
    CycleWitness::new(vertices).map_err(|e| invariant!("{what} is not a cycle: {e}"))
}

/// `None` when `G_n` is acyclic (`n <= 6`), otherwise 4.
pub fn girth(n: u64) -> Result<Option<u64>> {
    check_vertex_count(n)?;
    Ok(if n <= 6 { None } else { Some(4) })
}

/// Exact girth of any graph by breadth-first search from every vertex.
pub fn shortest_cycle_length<G: Adjacency>(g: &G) -> Option<u64> {
    let n = g.vertex_count() as usize;
    let mut best = u64::MAX;
    let mut dist = vec![u64::MAX; n + 1];
    let mut parent = vec![0u64; n + 1];
    let mut touched = Vec::new();
    let mut queue = VecDeque::new();
    for root in 1..=n as u64 {
        for &t in &touched {
            dist[t as usize] = u64::MAX;
        }
        touched.clear();
        queue.clear();
        dist[root as usize] = 0;
        touched.push(root);
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            // Cycles closed from here on are at least 2 * dist(u) long.
            if 2 * dist[u as usize] >= best {
                break;
            }
            for v in g.neighbours(u) {
                if dist[v as usize] == u64::MAX {
                    dist[v as usize] = dist[u as usize] + 1;
                    parent[v as usize] = u;
                    touched.push(v);
                    queue.push_back(v);
                } else if parent[u as usize] != v {
                    best = best.min(dist[u as usize] + dist[v as usize] + 1);
                }
            }
        }
    }
    (best != u64::MAX).then_some(best)
}

/// The 4-cycle `(n - F_k, F_{k+2} - n, n, F_{k+1} - n)` through the last
/// vertex, for `F_k <= n < F_{k+1}` and `n > F_{k+2}/2`.
pub fn tail_four_cycle(n: u64) -> Result<CycleWitness> {
    check_vertex_count(n)?;
    let k = bracket(n)?;
    if 2 * n <= f(k + 2) {
        return Err(domain!("{n} is not above F_{}/2 = {}/2", k + 2, f(k + 2)));
    }
    constructed(
        vec![n - f(k), f(k + 2) - n, n, f(k + 1) - n],
        "tail four-cycle",
    )
}

/// Host graph size for [`even_cycle`]: `F_{2k+3} - 1`.
pub fn even_cycle_host(k: usize) -> Result<u64> {
    if k < 2 || 2 * k + 4 > MAX_INDEX {
        return Err(Error::Range(format!(
            "even cycle needs 2 <= k and 2k+4 <= {MAX_INDEX}"
        )));
    }
    Ok(f(2 * k + 3) - 1)
}

/// A cycle of length `2k` in `G_{F_{2k+3}-1}`: `c_1 = 1`, `c_2 = 4`,
/// `c_i = F_{i+4} - c_{i-1}`, ending at `c_{2k} = F_{2k+3} - 1`.
pub fn even_cycle(k: usize) -> Result<CycleWitness> {
    let host = even_cycle_host(k)?;
    let mut c = vec![1u64, 4];
    for i in 3..=2 * k {
        let prev = c[i - 2];
        let next = f(i + 4)
            .checked_sub(prev)
            .ok_or_else(|| invariant!("c_{i} would be negative"))?;
        c.push(next);
    }
    if c[2 * k - 1] != host {
        return Err(invariant!(
            "c_{} = {}, expected {host}",
            2 * k,
            c[2 * k - 1]
        ));
    }
    if c.iter().any(|&v| v > host) {
        return Err(invariant!("even cycle leaves 1..={host}"));
    }
    constructed(c, "even cycle")
}

/// Checks that `cycle` is a cycle of `g` (length >= 3).
pub fn check_cycle<G: Adjacency>(g: &G, cycle: &[u64]) -> Result<()> {
    let len = cycle.len();
    if len < 3 {
        return Err(domain!("a cycle needs at least 3 vertices"));
    }
    let mut sorted = cycle.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(domain!("cycle repeats a vertex"));
    }
    for i in 0..len {
        let (a, b) = (cycle[i], cycle[(i + 1) % len]);
        if !g.has_edge(a, b) {
            return Err(domain!("{a}-{b} is not an edge of the graph"));
        }
    }
    Ok(())
}

pub type Chord = (u64, u64);

fn chords_by_position<G: Adjacency>(g: &G, cycle: &[u64]) -> Vec<(usize, usize)> {
    let len = cycle.len();
    let mut out = Vec::new();
    for i in 0..len {
        for j in i + 2..len {
            if i == 0 && j == len - 1 {
                continue;
            }
            if g.has_edge(cycle[i], cycle[j]) {
                out.push((i, j));
            }
        }
    }
    out
}

/// Pairs of chords of `cycle` whose endpoints interleave around it.
pub fn crossing_chords<G: Adjacency>(g: &G, cycle: &[u64]) -> Result<Vec<(Chord, Chord)>> {
    check_cycle(g, cycle)?;
    let chords = chords_by_position(g, cycle);
    let mut out = Vec::new();
    for (x, &(i, k)) in chords.iter().enumerate() {
        for &(j, l) in &chords[x + 1..] {
            let interleave = (i < j && j < k && k < l) || (j < i && i < l && l < k);
            if interleave {
                out.push(((cycle[i], cycle[k]), (cycle[j], cycle[l])));
            }
        }
    }
    Ok(out)
}

/// The chord `{F_{k+1} - m, m - F_k}` cutting a 4-cycle off a cycle of
/// length >= 6, where `m` is the cycle's largest vertex and `k = bracket(m)`.
///
/// Errors with an invariant violation when that pair is not a chord with
/// exactly `m` and `F_{k+2} - m` on one side.
pub fn four_cycle_chord<G: Adjacency>(g: &G, cycle: &[u64]) -> Result<Chord> {
    check_cycle(g, cycle)?;
    let len = cycle.len();
    if len < 6 {
        return Err(domain!(
            "cycle of length {len} has no four-cycle chord; need >= 6"
        ));
    }
    let m = *cycle.iter().max().expect("non-empty");
    let k = bracket(m)?;
    if m == f(k) {
        return Err(invariant!("cycle contains the pendant F_{k} = {m}"));
    }
    let b = f(k + 1) - m;
    let c = m - f(k);
    let pos = |v: u64| cycle.iter().position(|&x| x == v);
    let (Some(pb), Some(pc)) = (pos(b), pos(c)) else {
        return Err(invariant!(
            "{b} or {c} is missing from the cycle through {m}"
        ));
    };
    if !g.has_edge(b, c) {
        return Err(invariant!("{b}-{c} is not an edge"));
    }
    let d = pb.abs_diff(pc);
    if d.min(len - d) != 3 {
        return Err(invariant!(
            "chord {b}-{c} does not cut off exactly two vertices"
        ));
    }
    // One side of the chord must hold exactly m and its partner F_{k+2} - m.
    let mut expected = [m, f(k + 2) - m];
    expected.sort_unstable();
    let cuts_off = |step: usize| {
        if (pb + 3 * step) % len != pc {
            return false;
        }
        let mut inside = [cycle[(pb + step) % len], cycle[(pb + 2 * step) % len]];
        inside.sort_unstable();
        inside == expected
    };
    if !cuts_off(1) && !cuts_off(len - 1) {
        return Err(invariant!("chord {b}-{c} does not cut off {expected:?}"));
    }
    Ok((b.min(c), b.max(c)))
}

/// Every cycle of `g`, each listed once starting from its smallest vertex,
/// with the second vertex smaller than the last.
///
/// Exponential in general; intended for small graphs.
pub fn enumerate_cycles<G: Adjacency>(g: &G) -> Vec<Vec<u64>> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    let mut on_path = vec![false; n as usize + 1];
    for s in 1..=n {
        let mut path = vec![s];
        on_path[s as usize] = true;
        extend_cycles(g, s, &mut path, &mut on_path, &mut out);
        on_path[s as usize] = false;
    }
    out
}

fn extend_cycles<G: Adjacency>(
    g: &G,
    start: u64,
    path: &mut Vec<u64>,
    on_path: &mut [bool],
    out: &mut Vec<Vec<u64>>,
) {
    let cur = *path.last().expect("non-empty");
    for v in g.neighbours(cur) {
        if v == start && path.len() >= 3 && path[1] < cur {
            out.push(path.clone());
        } else if v > start && !on_path[v as usize] {
            on_path[v as usize] = true;
            path.push(v);
            extend_cycles(g, start, path, on_path, out);
            path.pop();
            on_path[v as usize] = false;
        }
    }
}

/// An edge `u-v` with three internally disjoint paths `u-a-b-v`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HWitness {
    pub edge: (u64, u64),
    pub paths: [(u64, u64); 3],
}

/// Finds a subgraph isomorphic to `H`, if one exists.
pub fn detect_h_subgraph<G: Adjacency>(g: &G) -> Option<HWitness> {
    for u in 1..=g.vertex_count() {
        let nu = g.neighbours(u);
        for &v in nu.iter().filter(|&&v| v > u) {
            let nv = g.neighbours(v);
            let mut routes = Vec::new();
            for &a in nu.iter().filter(|&&a| a != v) {
                for &b in nv.iter().filter(|&&b| b != u && b != a) {
                    if g.has_edge(a, b) {
                        routes.push((a, b));
                    }
                }
            }
            if let Some(paths) = three_disjoint(&routes) {
                return Some(HWitness {
                    edge: (u, v),
                    paths,
                });
            }
        }
    }
    None
}

fn three_disjoint(routes: &[(u64, u64)]) -> Option<[(u64, u64); 3]> {
    let disjoint =
        |x: (u64, u64), y: (u64, u64)| x.0 != y.0 && x.0 != y.1 && x.1 != y.0 && x.1 != y.1;
    for (i, &p) in routes.iter().enumerate() {
        for (j, &q) in routes.iter().enumerate().skip(i + 1) {
            if !disjoint(p, q) {
                continue;
            }
            for &r in &routes[j + 1..] {
                if disjoint(p, r) && disjoint(q, r) {
                    return Some([p, q, r]);
                }
            }
        }
    }
    None
}
