//! Hamiltonian paths in `G_n`.
//!
//! `G_n` has a Hamiltonian path exactly when `n` is 9, 11, a Fibonacci
//! number, or one less than a Fibonacci number. The path is unique except
//! for `n ∈ {F_i, F_i - 1}` with `i ≡ 1 (mod 3)`, where there are two.
//! For `n = F_k` the path uses only the sums `F_{k-1}, F_k, F_{k+1}` and
//! each step is forced.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{domain, invariant, Error, Result};
use crate::explicit::{Adjacency, ExplicitGraph};
use crate::fibcore::{check_materializable, check_vertex_count, f, fib_index, is_fibonacci};

/// Largest `n` accepted by [`enumerate_paths_bruteforce`].
pub const ENUMERATION_CAP: u64 = 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HamiltonStatus {
    None,
    Unique,
    Two,
}

/// Which membership clause applies to `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "clause", content = "index")]
pub enum HamiltonReason {
    Nine,
    Eleven,
    Fibonacci(usize),
    FibonacciMinusOne(usize),
    NoneApplies,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HamiltonClassification {
    pub n: u64,
    pub status: HamiltonStatus,
    pub reason: HamiltonReason,
}

/// A Hamiltonian path, stored with the smaller endpoint first.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct HamiltonPath {
    order: Vec<u64>,
}

impl HamiltonPath {
    /// Canonicalizes orientation; does not validate.
    pub fn new(mut order: Vec<u64>) -> Self {
        if order.len() > 1 && order[0] > order[order.len() - 1] {
            order.reverse();
        }
        HamiltonPath { order }
    }

    pub fn order(&self) -> &[u64] {
        &self.order
    }

    pub fn endpoints(&self) -> (u64, u64) {
        (self.order[0], self.order[self.order.len() - 1])
    }

    /// Checks that the path visits `1..=n` once each and that consecutive
    /// entries sum to Fibonacci numbers.
    pub fn validate(&self, n: u64) -> Result<()> {
        if self.order.len() as u64 != n {
            return Err(invariant!(
                "path has {} vertices, expected {n}",
                self.order.len()
            ));
        }
        let mut seen = vec![false; n as usize + 1];
        for &v in &self.order {
            if v == 0 || v > n || std::mem::replace(&mut seen[v as usize], true) {
                return Err(invariant!("path repeats or leaves 1..={n} at {v}"));
            }
        }
        if let Some(w) = self.order.windows(2).find(|w| !is_fibonacci(w[0] + w[1])) {
            return Err(invariant!("{} + {} is not a Fibonacci number", w[0], w[1]));
        }
        Ok(())
    }
}

impl fmt::Display for HamiltonPath {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.order.iter().map(u64::to_string).collect();
        write!(fm, "{}", parts.join(","))
    }
}

fn reason_for(n: u64) -> HamiltonReason {
    match n {
        9 => HamiltonReason::Nine,
        11 => HamiltonReason::Eleven,
        _ => {
            if let Some(i) = fib_index(n) {
                HamiltonReason::Fibonacci(i)
            } else if let Some(i) = fib_index(n + 1) {
                HamiltonReason::FibonacciMinusOne(i)
            } else {
                HamiltonReason::NoneApplies
            }
        }
    }
}

/// Classifies `G_n`. Below 9 the answer comes from exhaustive enumeration.
pub fn classify(n: u64) -> Result<HamiltonClassification> {
    check_vertex_count(n)?;
    let reason = reason_for(n);
    let status = if n < 9 {
        match enumerate_paths_bruteforce(n)?.len() {
            0 => HamiltonStatus::None,
            1 => HamiltonStatus::Unique,
            2 => HamiltonStatus::Two,
            c => return Err(invariant!("G_{n} has {c} Hamiltonian paths")),
        }
    } else {
        match reason {
            HamiltonReason::NoneApplies => HamiltonStatus::None,
            HamiltonReason::Fibonacci(i) | HamiltonReason::FibonacciMinusOne(i) if i % 3 == 1 => {
                HamiltonStatus::Two
            }
            _ => HamiltonStatus::Unique,
        }
    };
    Ok(HamiltonClassification { n, status, reason })
}

/// The starting vertices of the Hamiltonian paths of `G_{F_k}`; every path
/// ends at `F_k`.
pub fn path_start_vertices(k: usize) -> Vec<u64> {
    match k % 3 {
        0 => vec![f(k) / 2],
        2 => vec![f(k + 1) / 2],
        _ => vec![f(k - 1) / 2, f(k) - f(k - 4) / 2],
    }
}

/// Builds the Hamiltonian path(s) of `G_{F_k}`, `k >= 5`.
///
/// From the first start vertex the path follows the only unvisited
/// neighbour whose sum lies in `{F_{k-1}, F_k, F_{k+1}}`. When
/// `k ≡ 1 (mod 3)` the second path is the first with its opening three
/// vertices reversed: the first four vertices form a 4-cycle closed by a
/// sum of `F_{k-2}`, so greedy steps from the second start are not forced.
pub fn build_path(n: u64) -> Result<Vec<HamiltonPath>> {
    check_vertex_count(n)?;
    let k = fib_index(n)
        .filter(|&k| k >= 5)
        .ok_or_else(|| domain!("{n} is not F_k with k >= 5"))?;
    let starts = path_start_vertices(k);
    let first = greedy_path(n, k, starts[0])?;
    let mut paths = vec![first.clone()];
    if let Some(&second_start) = starts.get(1) {
        let mut order = first;
        order[..3].reverse();
        if order[0] != second_start {
            return Err(invariant!(
                "second path of G_{n} starts at {}, expected {second_start}",
                order[0]
            ));
        }
        paths.push(order);
    }
    let mut out = Vec::with_capacity(paths.len());
    for order in paths {
        let path = HamiltonPath::new(order);
        path.validate(n)?;
        out.push(path);
    }
    out.sort();
    Ok(out)
}

fn greedy_path(n: u64, k: usize, start: u64) -> Result<Vec<u64>> {
    check_materializable(n)?;
    let len = n as usize;
    let sums = [f(k - 1), f(k), f(k + 1)];
    let mut visited = vec![false; len + 1];
    let mut order = Vec::with_capacity(len);
    let mut cur = start;
    visited[cur as usize] = true;
    order.push(cur);
    while order.len() < len {
        let mut next = sums
            .iter()
            .filter(|&&s| s > cur)
            .map(|&s| s - cur)
            .filter(|&y| y <= n && y != cur && !visited[y as usize]);
        let y = match (next.next(), next.next()) {
            (Some(y), None) => y,
            (None, _) => return Err(invariant!("greedy path in G_{n} is stuck at {cur}")),
            (Some(a), Some(b)) => {
                return Err(invariant!(
                    "greedy path in G_{n} branches at {cur}: {a} or {b}"
                ))
            }
        };
        visited[y as usize] = true;
        order.push(y);
        cur = y;
    }
    if cur != n {
        return Err(invariant!("greedy path in G_{n} ends at {cur}, not {n}"));
    }
    Ok(order)
}

/// All Hamiltonian paths of `G_n` that the library can produce.
///
/// Fibonacci `n` use [`build_path`]; `n = F_i - 1` drops the endpoint `F_i`
/// from the paths of `G_{F_i}`; anything else up to [`ENUMERATION_CAP`] is
/// enumerated. Larger `n` outside the families have no path.
pub fn hamiltonian_paths(n: u64) -> Result<Vec<HamiltonPath>> {
    check_vertex_count(n)?;
    if n <= ENUMERATION_CAP && fib_index(n).is_none_or(|k| k < 5) {
        return enumerate_paths_bruteforce(n);
    }
    match reason_for(n) {
        HamiltonReason::Fibonacci(_) => build_path(n),
        HamiltonReason::FibonacciMinusOne(i) => {
            let mut out = Vec::new();
            for p in build_path(f(i))? {
                let mut order = p.order;
                if order[0] == f(i) {
                    order.remove(0);
                } else {
                    order.pop();
                }
                let path = HamiltonPath::new(order);
                path.validate(n)?;
                out.push(path);
            }
            out.sort();
            Ok(out)
        }
        _ => Ok(Vec::new()),
    }
}

/// Every Hamiltonian path of `G_n` (one per reversal pair), by exhaustive
/// search over the pair-scanned graph.
pub fn enumerate_paths_bruteforce(n: u64) -> Result<Vec<HamiltonPath>> {
    check_vertex_count(n)?;
    if n > ENUMERATION_CAP {
        return Err(Error::Range(format!(
            "enumeration is capped at n = {ENUMERATION_CAP}"
        )));
    }
    Ok(hamiltonian_paths_of(&ExplicitGraph::fib_sum_bruteforce(n)))
}

/// Hamiltonian paths of an arbitrary small graph, canonicalized and sorted.
pub fn hamiltonian_paths_of(g: &ExplicitGraph) -> Vec<HamiltonPath> {
    let n = g.vertex_count();
    if n == 1 {
        return vec![HamiltonPath::new(vec![1])];
    }
    let pendants: Vec<u64> = (1..=n).filter(|&v| g.degree(v) <= 1).collect();
    if pendants.len() > 2 || pendants.iter().any(|&v| g.degree(v) == 0) {
        return Vec::new();
    }
    // A degree-1 vertex must be an endpoint, so searching from it alone is exhaustive.
    let starts: Vec<u64> = match pendants.first() {
        Some(&p) => vec![p],
        None => (1..=n).collect(),
    };
    let mut found = BTreeSet::new();
    let mut search = PathSearch {
        g,
        visited: vec![false; n as usize + 1],
        order: Vec::with_capacity(n as usize),
        found: &mut found,
    };
    for s in starts {
        search.visited[s as usize] = true;
        search.order.push(s);
        search.extend();
        search.order.pop();
        search.visited[s as usize] = false;
    }
    found.into_iter().collect()
}

struct PathSearch<'a> {
    g: &'a ExplicitGraph,
    visited: Vec<bool>,
    order: Vec<u64>,
    found: &'a mut BTreeSet<HamiltonPath>,
}

impl PathSearch<'_> {
    fn extend(&mut self) {
        let n = self.g.vertex_count() as usize;
        if self.order.len() == n {
            self.found.insert(HamiltonPath::new(self.order.clone()));
            return;
        }
        let cur = *self.order.last().expect("non-empty");
        if self.dead_end(cur) {
            return;
        }
        for v in self.g.neighbours(cur) {
            if !self.visited[v as usize] {
                self.visited[v as usize] = true;
                self.order.push(v);
                self.extend();
                self.order.pop();
                self.visited[v as usize] = false;
            }
        }
    }

    // An unvisited vertex with at most one usable neighbour can only be the
    // last vertex; two of them, or one with none, end the branch.
    fn dead_end(&self, cur: u64) -> bool {
        let remaining = self.g.vertex_count() as usize - self.order.len();
        let mut forced_ends = 0;
        for v in 1..=self.g.vertex_count() {
            if self.visited[v as usize] {
                continue;
            }
            let usable = self
                .g
                .neighbours(v)
                .iter()
                .filter(|&&w| !self.visited[w as usize] || w == cur)
                .count();
            if usable == 0 {
                return true;
            }
            if usable == 1 && remaining > 1 {
                forced_ends += 1;
            }
        }
        forced_ends > 1
    }
}

/// True when `a` and `b` can be oriented to agree on all but their last
/// three vertices (and differ there).
pub fn agree_except_last_three(a: &HamiltonPath, b: &HamiltonPath) -> bool {
    let len = a.order.len();
    if len != b.order.len() || len < 3 || a == b {
        return false;
    }
    let rev = |p: &[u64]| p.iter().rev().copied().collect::<Vec<_>>();
    let orients_a = [a.order.clone(), rev(&a.order)];
    let orients_b = [b.order.clone(), rev(&b.order)];
    orients_a.iter().any(|x| {
        orients_b.iter().any(|y| {
            let mut tx = x[len - 3..].to_vec();
            let mut ty = y[len - 3..].to_vec();
            tx.sort_unstable();
            ty.sort_unstable();
            x[..len - 3] == y[..len - 3] && tx == ty
        })
    })
}
