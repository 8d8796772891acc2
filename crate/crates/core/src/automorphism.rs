//! Automorphism groups of `G_N`.
//!
//! From `N = 9` on the group has order at most 2. Its generator is either
//! the swap `F_n/2 <-> 3F_n/2`, or that swap together with
//! `F_{n+3}/2 <-> F_{n+2} + F_{n-3}/2`, where `n` is the multiple of 3 with
//! `F_n <= N < F_{n+3}`; which one (if any) depends on where `N` falls in
//! that range.

use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;

use crate::error::{domain, invariant, Error, Result};
use crate::explicit::{Adjacency, ExplicitGraph};
use crate::fibcore::{bracket, check_vertex_count, f, MAX_N};
use crate::graph::FibSumGraph;

/// Largest `N` accepted by [`aut_bruteforce`].
pub const BRUTEFORCE_CAP: u64 = 400;

/// First `N` handled by the interval rule rather than by search.
const CLOSED_FORM_FROM: u64 = 34;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct AutomorphismGroup {
    pub n: u64,
    /// Disjoint transpositions `(a, b)`, `a < b`, of the non-identity element.
    /// Empty for the trivial group.
    pub swaps: Vec<(u64, u64)>,
}

impl AutomorphismGroup {
    pub fn order(&self) -> u64 {
        if self.swaps.is_empty() {
            1
        } else {
            2
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.swaps.is_empty()
    }

    /// Image of `x` under the non-identity element (or `x` if trivial).
    pub fn apply(&self, x: u64) -> u64 {
        for &(a, b) in &self.swaps {
            if x == a {
                return b;
            }
            if x == b {
                return a;
            }
        }
        x
    }
}

/// Where `n` falls relative to the multiple of 3 below its bracket.
#[derive(Debug, Clone, Copy)]
struct Segment {
    /// `3F_i/2`, `F_{i+3}/2`, `F_{i+2} + F_{i-3}/2`, `F_{i+3} - F_i/2`, `F_{i+3}`.
    cuts: [u64; 5],
    first: (u64, u64),
    second: (u64, u64),
}

fn segment(n: u64) -> Result<Segment> {
    let i = 3 * (bracket(n)? / 3);
    if i < 9 {
        return Err(domain!("interval rule needs N >= 34, got {n}"));
    }
    let (fi, fi3, fm3) = (f(i), f(i + 3), f(i - 3));
    if fi % 2 != 0 || fi3 % 2 != 0 || fm3 % 2 != 0 {
        return Err(invariant!(
            "F_{i}, F_{}, F_{} are not all even",
            i + 3,
            i - 3
        ));
    }
    let half = fi / 2;
    let top_half = fi3 / 2;
    let partner = f(i + 2) + fm3 / 2;
    Ok(Segment {
        cuts: [3 * half, top_half, partner, fi3 - half, fi3],
        first: (half, 3 * half),
        second: (top_half.min(partner), top_half.max(partner)),
    })
}

/// The group for `n >= 34` by the interval rule, and the last `N` with the
/// same group.
fn closed_form_run(n: u64) -> Result<(AutomorphismGroup, u64)> {
    let s = segment(n)?;
    let [c1, c2, c3, c4, c5] = s.cuts;
    let (swaps, end) = if n < c1 {
        (vec![], c1)
    } else if n < c2 {
        (vec![s.first], c2)
    } else if n < c3 {
        (vec![], c3)
    } else if n < c4 {
        (vec![s.first, s.second], c4)
    } else {
        (vec![], c5)
    };
    Ok((AutomorphismGroup { n, swaps }, end - 1))
}

/// `Aut(G_N)` for `N >= 9`. Below 34 this runs the exhaustive search.
pub fn aut_closed_form(n: u64) -> Result<AutomorphismGroup> {
    check_vertex_count(n)?;
    if n < 9 {
        return Err(domain!("closed form needs N >= 9, got {n}"));
    }
    if n < CLOSED_FORM_FROM {
        return aut_bruteforce(n);
    }
    closed_form_run(n).map(|(g, _)| g)
}

/// `Aut(G_N)` by exhaustive search over the explicit graph, `N <= 400`.
pub fn aut_bruteforce(n: u64) -> Result<AutomorphismGroup> {
    check_vertex_count(n)?;
    if n > BRUTEFORCE_CAP {
        return Err(Error::Range(format!(
            "brute-force automorphisms are capped at N = {BRUTEFORCE_CAP}, got {n}"
        )));
    }
    let g = ExplicitGraph::fib_sum_bruteforce(n);
    let found = automorphisms(&g, 3);
    if found.len() > 2 {
        return Err(invariant!("G_{n} has more than two automorphisms"));
    }
    let moves = |p: &&Vec<u64>| p.iter().enumerate().skip(1).any(|(x, &y)| x as u64 != y);
    let Some(phi) = found.iter().find(moves) else {
        return Ok(AutomorphismGroup { n, swaps: vec![] });
    };
    let mut swaps = Vec::new();
    for x in 1..=n {
        let y = phi[x as usize];
        if phi[y as usize] != x {
            return Err(invariant!(
                "automorphism of G_{n} is not an involution at {x}"
            ));
        }
        if x < y {
            swaps.push((x, y));
        }
    }
    Ok(AutomorphismGroup { n, swaps })
}

/// Iterated degree refinement: vertices in different classes are never
/// mapped to each other by an automorphism.
fn refine<G: Adjacency>(g: &G) -> Vec<usize> {
    let n = g.vertex_count() as usize;
    let mut colour: Vec<usize> = (0..=n)
        .map(|v| {
            if v == 0 {
                0
            } else {
                g.neighbours(v as u64).len()
            }
        })
        .collect();
    let mut classes = 0;
    loop {
        let mut ids: BTreeMap<(usize, Vec<usize>), usize> = BTreeMap::new();
        let signatures: Vec<(usize, Vec<usize>)> = (1..=n)
            .map(|v| {
                let mut around: Vec<usize> = g
                    .neighbours(v as u64)
                    .iter()
                    .map(|&u| colour[u as usize])
                    .collect();
                around.sort_unstable();
                (colour[v], around)
            })
            .collect();
        for s in &signatures {
            let next = ids.len();
            ids.entry(s.clone()).or_insert(next);
        }
        let next: Vec<usize> = std::iter::once(0)
            .chain(signatures.iter().map(|s| ids[s]))
            .collect();
        if ids.len() == classes {
            return next;
        }
        classes = ids.len();
        colour = next;
    }
}

/// Up to `limit` automorphisms of a connected graph, as image tables indexed
/// by vertex (entry 0 unused). The identity is always among them.
pub fn automorphisms<G: Adjacency>(g: &G, limit: usize) -> Vec<Vec<u64>> {
    let n = g.vertex_count();
    if n == 0 {
        return vec![vec![0]];
    }
    let colour = refine(g);
    // Breadth-first order, so every vertex after the first has an earlier
    // neighbour that pins its image to a neighbour list.
    let mut order = Vec::with_capacity(n as usize);
    let mut anchor = vec![0u64; n as usize + 1];
    let mut seen = vec![false; n as usize + 1];
    for root in 1..=n {
        if seen[root as usize] {
            continue;
        }
        seen[root as usize] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for v in g.neighbours(u) {
                if !seen[v as usize] {
                    seen[v as usize] = true;
                    anchor[v as usize] = u;
                    queue.push_back(v);
                }
            }
        }
    }
    let mut search = AutSearch {
        g,
        colour,
        order,
        anchor,
        image: vec![0; n as usize + 1],
        used: vec![false; n as usize + 1],
        found: Vec::new(),
        limit,
    };
    search.extend(0);
    search.found
}

struct AutSearch<'a, G> {
    g: &'a G,
    colour: Vec<usize>,
    order: Vec<u64>,
    anchor: Vec<u64>,
    image: Vec<u64>,
    used: Vec<bool>,
    found: Vec<Vec<u64>>,
    limit: usize,
}

impl<G: Adjacency> AutSearch<'_, G> {
    fn extend(&mut self, depth: usize) {
        if self.found.len() >= self.limit {
            return;
        }
        if depth == self.order.len() {
            self.found.push(self.image.clone());
            return;
        }
        let v = self.order[depth];
        let candidates: Vec<u64> = match self.anchor[v as usize] {
            0 => (1..=self.g.vertex_count()).collect(),
            a => self.g.neighbours(self.image[a as usize]),
        };
        let earlier: Vec<u64> = self
            .g
            .neighbours(v)
            .into_iter()
            .filter(|&u| self.image[u as usize] != 0)
            .collect();
        for w in candidates {
            if self.used[w as usize] || self.colour[w as usize] != self.colour[v as usize] {
                continue;
            }
            if !earlier
                .iter()
                .all(|&u| self.g.has_edge(self.image[u as usize], w))
            {
                continue;
            }
            self.image[v as usize] = w;
            self.used[w as usize] = true;
            self.extend(depth + 1);
            self.used[w as usize] = false;
            self.image[v as usize] = 0;
        }
    }
}

/// Whether swapping the given disjoint pairs maps edges of `g` to edges.
///
/// Only edges at swapped vertices can move, so only those are checked.
pub fn is_automorphism(g: &FibSumGraph, swaps: &[(u64, u64)]) -> bool {
    let mut moved: Vec<u64> = swaps.iter().flat_map(|&(a, b)| [a, b]).collect();
    moved.sort_unstable();
    if moved.windows(2).any(|w| w[0] == w[1]) || moved.iter().any(|&v| !g.contains(v)) {
        return false;
    }
    let group = AutomorphismGroup {
        n: g.n(),
        swaps: swaps.to_vec(),
    };
    moved.iter().all(|&x| {
        g.neighbours(x)
            .into_iter()
            .all(|y| g.has_edge(group.apply(x), group.apply(y)))
    })
}

/// A maximal run of consecutive `N` with groups of the same order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AutInterval {
    pub lo: u64,
    pub hi: u64,
    pub order: u64,
    /// The run was cut off at the report's upper limit.
    pub open: bool,
}

/// The group of `N` for `N >= 7` and the last `N` sharing its order, as far
/// as one step of the rule can see.
fn run_at(n: u64) -> Result<(u64, u64)> {
    if n < CLOSED_FORM_FROM {
        Ok((aut_bruteforce(n)?.order(), n))
    } else {
        closed_form_run(n).map(|(g, end)| (g.order(), end))
    }
}

/// Runs of equal group order for `7 <= N <= max_n`.
pub fn interval_report(max_n: u64) -> Result<Vec<AutInterval>> {
    check_vertex_count(max_n)?;
    let mut out: Vec<AutInterval> = Vec::new();
    let mut n = 7;
    while n <= max_n {
        let (order, end) = run_at(n)?;
        let hi = end.min(max_n);
        match out.last_mut() {
            Some(last) if last.order == order && last.hi + 1 == n => last.hi = hi,
            _ => out.push(AutInterval {
                lo: n,
                hi,
                order,
                open: false,
            }),
        }
        n = hi + 1;
    }
    if let Some(last) = out.last_mut() {
        if max_n < MAX_N {
            last.open = run_at(max_n + 1)?.0 == last.order;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_examples() {
        assert!(aut_closed_form(40).unwrap().is_trivial());
        assert_eq!(aut_closed_form(60).unwrap().swaps, vec![(17, 51)]);
        assert_eq!(
            aut_closed_form(100).unwrap().swaps,
            vec![(17, 51), (72, 93)]
        );
        assert!(aut_closed_form(127).unwrap().is_trivial());
        assert!(matches!(aut_closed_form(8), Err(Error::Domain(_))));
    }

    #[test]
    fn bruteforce_examples() {
        assert!(aut_bruteforce(34).unwrap().is_trivial());
        assert_eq!(aut_bruteforce(51).unwrap().swaps, vec![(17, 51)]);
        assert_eq!(aut_bruteforce(13).unwrap().order(), 2);
        assert!(aut_bruteforce(7).unwrap().is_trivial());
        // G_4 is the path 4-1-2-3.
        assert_eq!(aut_bruteforce(4).unwrap().swaps, vec![(1, 2), (3, 4)]);
        assert!(aut_bruteforce(1).unwrap().is_trivial());
        assert!(matches!(aut_bruteforce(401), Err(Error::Range(_))));
    }

    #[test]
    fn closed_form_matches_bruteforce_to_150() {
        for n in 9..=150 {
            assert_eq!(
                aut_closed_form(n).unwrap(),
                aut_bruteforce(n).unwrap(),
                "N = {n}"
            );
        }
    }

    #[test]
    fn involutions_preserve_edges() {
        for n in 9..=3000 {
            let group = aut_closed_form(n).unwrap();
            let g = FibSumGraph::new(n).unwrap();
            assert!(is_automorphism(&g, &group.swaps), "N = {n}");
        }
        let g = FibSumGraph::new(60).unwrap();
        assert!(!is_automorphism(&g, &[(17, 50)]));
        assert!(!is_automorphism(&g, &[(17, 51), (51, 52)]));
    }

    #[test]
    fn first_swap_pair_shares_neighbours() {
        for n in 34..=3000 {
            // Only while the first swap acts alone.
            if let &[(a, b)] = aut_closed_form(n).unwrap().swaps.as_slice() {
                let g = FibSumGraph::new(n).unwrap();
                assert_eq!(
                    g.neighbours_of(a).unwrap(),
                    g.neighbours_of(b).unwrap(),
                    "N = {n}"
                );
            }
        }
    }

    #[test]
    fn report_up_to_2278() {
        let report = interval_report(2278).unwrap();
        let trivial: Vec<(u64, u64)> = report
            .iter()
            .filter(|r| r.order == 1)
            .map(|r| (r.lo, r.hi))
            .collect();
        assert_eq!(
            trivial,
            vec![
                (7, 10),
                (17, 21),
                (30, 50),
                (72, 92),
                (127, 215),
                (305, 393),
                (538, 914),
                (1292, 1668)
            ]
        );
        assert!(report
            .windows(2)
            .all(|w| w[0].hi + 1 == w[1].lo && w[0].order != w[1].order));
        assert_eq!(report.last().unwrap().hi, 2278);
        let involution_lengths: Vec<u64> = report
            .iter()
            .filter(|r| r.order == 2)
            .map(|r| r.hi - r.lo + 1)
            .collect();
        // The last run [1669, 2278] is cut off by the limit.
        assert_eq!(involution_lengths[..7], [6, 8, 21, 34, 89, 144, 377]);
    }

    #[test]
    fn report_open_edge() {
        let report = interval_report(143).unwrap();
        assert_eq!(
            report.last().unwrap(),
            &AutInterval {
                lo: 127,
                hi: 143,
                order: 1,
                open: true
            }
        );
        let closed = interval_report(215).unwrap();
        assert!(!closed.last().unwrap().open);
    }

    #[test]
    fn report_reaches_the_top() {
        let report = interval_report(MAX_N).unwrap();
        assert_eq!(report.last().unwrap().hi, MAX_N);
        assert!(!report.last().unwrap().open);
    }
}
