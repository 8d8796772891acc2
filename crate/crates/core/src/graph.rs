//! The Fibonacci-sum graph `G_n`: vertices `1..=n`, with `{i, j}` an edge
//! iff `i != j` and `i + j` is a Fibonacci number.
//!
//! Adjacency is answered implicitly. For a vertex `x` with bracket `k`, every
//! neighbour `y` satisfies `F_k < x + y <= x + n`, so the candidates are
//! `F_i - x` for `bracket(x) < i <= bracket(x + n)`. That is `O(log n)`
//! candidates per query.

use std::collections::VecDeque;
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{domain, invariant, Error, Result};
use crate::explicit::Adjacency;
use crate::fibcore::{bracket, check_vertex_count, f, fib_index};

#[derive(Debug)]
pub struct FibSumGraph {
    n: u64,
    edges: OnceLock<Vec<(u64, u64)>>,
}

impl Clone for FibSumGraph {
    fn clone(&self) -> Self {
        FibSumGraph {
            n: self.n,
            edges: self.edges.clone(),
        }
    }
}

impl FibSumGraph {
    pub fn new(n: u64) -> Result<Self> {
        check_vertex_count(n)?;
        Ok(FibSumGraph {
            n,
            edges: OnceLock::new(),
        })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    fn check_vertex(&self, x: u64) -> Result<()> {
        if x == 0 || x > self.n {
            return Err(domain!("vertex {x} is not in 1..={}", self.n));
        }
        Ok(())
    }

    pub fn neighbours_of(&self, x: u64) -> Result<Vec<u64>> {
        self.check_vertex(x)?;
        Ok(self.neighbours_unchecked(x))
    }

    fn neighbours_unchecked(&self, x: u64) -> Vec<u64> {
        // Both brackets are in range: x + n <= 2 * MAX_N < F_92.
        let lo = bracket(x).expect("vertex in range");
        let hi = bracket(x + self.n).expect("vertex in range");
        let mut out: Vec<u64> = (lo + 1..=hi)
            .map(|i| f(i) - x)
            .filter(|&y| y != x && y >= 1 && y <= self.n)
            .collect();
        debug_assert!(out.windows(2).all(|w| w[0] < w[1]));
        out.dedup();
        out
    }

    pub fn degree(&self, x: u64) -> Result<usize> {
        self.neighbours_of(x).map(|v| v.len())
    }

    /// Edges `(i, j)` with `i < j` in ascending lexicographic order, without
    /// materializing the list.
    pub fn edge_iter(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        (1..=self.n).flat_map(move |x| {
            self.neighbours_unchecked(x)
                .into_iter()
                .filter(move |&y| y > x)
                .map(move |y| (x, y))
        })
    }

    /// The explicit edge list, computed on first use and cached.
    pub fn edges(&self) -> &[(u64, u64)] {
        self.edges.get_or_init(|| self.edge_iter().collect())
    }

    pub fn is_connected(&self) -> bool {
        let n = self.n as usize;
        let mut seen = vec![false; n + 1];
        let mut queue = VecDeque::from([1u64]);
        seen[1] = true;
        let mut reached = 1usize;
        while let Some(u) = queue.pop_front() {
            for v in self.neighbours_unchecked(u) {
                if !seen[v as usize] {
                    seen[v as usize] = true;
                    reached += 1;
                    queue.push_back(v);
                }
            }
        }
        reached == n
    }
}

impl Adjacency for FibSumGraph {
    fn vertex_count(&self) -> u64 {
        self.n
    }

    fn has_edge(&self, u: u64, v: u64) -> bool {
        u != v && self.contains(u) && self.contains(v) && fib_index(u + v).is_some()
    }

    fn neighbours(&self, v: u64) -> Vec<u64> {
        if self.contains(v) {
            self.neighbours_unchecked(v)
        } else {
            Vec::new()
        }
    }
}

/// Degree of `x` in `G_n` with the two bracket indices it was derived from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DegreeReport {
    pub x: u64,
    pub degree: u64,
    /// `F_k <= x < F_{k+1}`
    pub k: usize,
    /// `F_ell <= x + n < F_{ell+1}`
    pub ell: usize,
}

/// Closed-form degree: `ell - k`, minus one when `x = 1` or when `k >= 4`
/// and `2x = F_{k+2}` (the lost self-sum).
pub fn degree_closed_form(n: u64, x: u64) -> Result<DegreeReport> {
    check_vertex_count(n)?;
    if x == 0 || x > n {
        return Err(domain!("vertex {x} is not in 1..={n}"));
    }
    let k = bracket(x)?;
    let ell = bracket(x + n)?;
    let lost = x == 1 || (k >= 4 && 2 * x == f(k + 2));
    let degree = (ell - k) as u64 - u64::from(lost);
    Ok(DegreeReport { x, degree, k, ell })
}

/// `|E(G_n)|` from the two-branch closed form, evaluated in doubled integer
/// arithmetic so the half-integers stay exact.
pub fn edge_count_closed_form(n: u64) -> Result<u64> {
    check_vertex_count(n)?;
    let k = bracket(n)?;
    let n2 = u128::from(n);
    let fk = u128::from(f(k));
    let fk2 = u128::from(f(k + 2));
    let floor_term = (4 * (k as u128 + 1)) / 3;
    let twice = if 2 * n2 <= fk2 {
        2 * n2 + fk + 1 - floor_term
    } else {
        let ceil_term = (fk2 - 1).div_ceil(2);
        4 * n2 + fk + 1 - floor_term - 2 * ceil_term
    };
    if twice % 2 != 0 {
        return Err(invariant!(
            "edge-count formula gives a half-integer at n = {n}"
        ));
    }
    Ok((twice / 2) as u64)
}

/// Degree-1 vertices of `G_n`, by a closed-form degree scan over all vertices.
///
/// For `n >= 4` the result is cross-checked against [`pendants_interval_rule`]
/// and a disagreement is reported as an invariant violation.
pub fn pendants(n: u64) -> Result<Vec<u64>> {
    check_vertex_count(n)?;
    let mut out = Vec::new();
    for x in 1..=n {
        if degree_closed_form(n, x)?.degree == 1 {
            out.push(x);
        }
    }
    if let Some(rule) = pendants_interval_rule(n) {
        if rule != out {
            return Err(invariant!(
                "pendant interval rule disagrees with the degree scan at n = {n}: rule {rule:?}, scan {out:?}"
            ));
        }
    }
    Ok(out)
}

/// The pendant set predicted without scanning, for `n >= 4`.
///
/// With `k = bracket(n)`, the run `F_k ..= min(n, F_{k+2} - n - 1)` is
/// pendant, plus at most one half-Fibonacci vertex:
///
/// * `k ≡ 0 (mod 3)`: `F_k / 2`, when `n < F_{k+1} - F_k / 2`
/// * `k ≡ 2 (mod 3)`: `F_{k+1} / 2`
/// * `k ≡ 1 (mod 3)`: `F_{k+2} / 2`, when `n >= F_{k+2} / 2`
///
/// In each case the halved number is the even one of the three.
pub fn pendants_interval_rule(n: u64) -> Option<Vec<u64>> {
    if n < 4 || check_vertex_count(n).is_err() {
        return None;
    }
    let k = bracket(n).ok()?;
    let upper_half = 2 * n >= f(k + 2);
    let hi = if upper_half { f(k + 2) - n - 1 } else { n };
    let mut out: Vec<u64> = (f(k)..=hi).collect();
    let extra = match k % 3 {
        0 if 2 * n < 2 * f(k + 1) - f(k) => Some(f(k) / 2),
        2 => Some(f(k + 1) / 2),
        1 if upper_half => Some(f(k + 2) / 2),
        _ => None,
    };
    if let Some(v) = extra {
        out.push(v);
        out.sort_unstable();
    }
    Some(out)
}

/// A vertex count whose graph has exactly `p` pendants: `F_{6p+1} + p - 1`.
pub fn pendant_witness(p: u64) -> Result<u64> {
    if p == 0 {
        return Err(domain!("pendant count must be at least 1"));
    }
    let idx = p
        .checked_mul(6)
        .and_then(|v| v.checked_add(1))
        .filter(|&v| v <= crate::fibcore::MAX_INDEX as u64)
        .ok_or_else(|| Error::Range(format!("F_(6*{p}+1) exceeds the 64-bit table")))?;
    let n = f(idx as usize)
        .checked_add(p - 1)
        .ok_or_else(|| Error::Range(format!("pendant witness for p = {p} overflows")))?;
    check_vertex_count(n)?;
    Ok(n)
}
