//! Width-2 tree decompositions and outerplanar certificates for `G_n`, each
//! built one vertex at a time, with validators that work on any graph.
//!
//! Vertex `m` has one or two neighbours below it: always `F_{k+1} - m`, and
//! also `F_{k+2} - m` once `m > F_{k+2}/2` (`k = bracket(m)`). In the second
//! case `a = F_{k+2} - m` is a pendant of `G_{m-1}` hanging off `c = m - F_k`,
//! and `b = F_{k+1} - m`, `c` are adjacent, so `b, m, a, c` is a new 4-cycle.

use serde::Serialize;
use thiserror::Error;

use crate::error::{domain, invariant, Result};
use crate::explicit::Adjacency;
use crate::fibcore::{bracket, check_materializable, f};

/// The neighbours of `m` in `G_m`, as `(F_{k+1} - m, Some(F_{k+2} - m))`
/// when `m` has degree 2. `None` for `m = 1`.
fn lower_neighbours(m: u64) -> Result<Option<(u64, Option<u64>)>> {
    if m == 1 {
        return Ok(None);
    }
    let k = bracket(m)?;
    let b = f(k + 1) - m;
    let a = (2 * m > f(k + 2)).then(|| f(k + 2) - m);
    Ok(Some((b, a)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TreeDecomposition {
    /// Each bag sorted ascending.
    pub bags: Vec<Vec<u64>>,
    /// Pairs of bag indices.
    pub tree: Vec<[usize; 2]>,
}

impl TreeDecomposition {
    /// Largest bag size minus one.
    pub fn width(&self) -> usize {
        self.bags
            .iter()
            .map(Vec::len)
            .max()
            .unwrap_or(0)
            .saturating_sub(1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeDecompositionViolation {
    #[error("there are no bags")]
    NoBags,
    #[error("bag {bag} is empty")]
    EmptyBag { bag: usize },
    #[error("bag {bag} contains {vertex}, which is not a vertex")]
    VertexOutOfRange { bag: usize, vertex: u64 },
    #[error("bag {bag} lists a vertex twice")]
    RepeatedVertex { bag: usize },
    #[error("tree edge {edge:?} refers to a missing bag")]
    DanglingTreeEdge { edge: [usize; 2] },
    #[error("the bag graph is not a tree")]
    NotATree,
    #[error("vertex {0} is in no bag")]
    VertexUncovered(u64),
    #[error("edge {0}-{1} is in no bag")]
    EdgeUncovered(u64, u64),
    #[error("the bags containing {0} are not connected")]
    RunningIntersection(u64),
}

struct TreeBuilder {
    bags: Vec<Vec<u64>>,
    parent: Vec<Option<usize>>,
    children: Vec<usize>,
    /// Bags containing each vertex, oldest first.
    bags_of: Vec<Vec<usize>>,
    /// The bag in which each vertex first appeared as a pendant.
    pendant_bag: Vec<Option<usize>>,
}

impl TreeBuilder {
    fn add(&mut self, mut bag: Vec<u64>, parent: Option<usize>) -> usize {
        bag.sort_unstable();
        let id = self.bags.len();
        for &v in &bag {
            self.bags_of[v as usize].push(id);
        }
        if let Some(p) = parent {
            self.children[p] += 1;
        }
        self.bags.push(bag);
        self.parent.push(parent);
        self.children.push(0);
        id
    }

    fn holding(&self, u: u64, v: u64) -> Option<usize> {
        self.bags_of[u as usize]
            .iter()
            .copied()
            .find(|&id| self.bags[id].contains(&v))
    }

    fn reparent(&mut self, bag: usize, to: usize) {
        if let Some(p) = self.parent[bag] {
            self.children[p] -= 1;
        }
        self.parent[bag] = Some(to);
        self.children[to] += 1;
    }
}

/// Builds a tree decomposition of `G_n` of width at most 2.
///
/// A pendant `m` gets the bag `{m, b}` hung off a bag containing `b`. A
/// degree-2 vertex gets the two triangles `{m, b, c}` and `{m, a, c}` of a
/// chordal completion; the first hangs off a bag holding the edge `{b, c}`,
/// the second off the first, and the old leaf bag `{a, c}` moves under the
/// second so the bags holding `a` stay adjacent.
pub fn build_tree_decomposition(n: u64) -> Result<TreeDecomposition> {
    check_materializable(n)?;
    let len = n as usize + 1;
    let mut t = TreeBuilder {
        bags: Vec::with_capacity(len),
        parent: Vec::with_capacity(len),
        children: Vec::with_capacity(len),
        bags_of: vec![Vec::new(); len],
        pendant_bag: vec![None; len],
    };
    t.add(vec![1], None);
    for m in 2..=n {
        let (b, a) = lower_neighbours(m)?.expect("m >= 2");
        match a {
            None => {
                let id = t.add(vec![m, b], Some(t.bags_of[b as usize][0]));
                t.pendant_bag[m as usize] = Some(id);
            }
            Some(a) => {
                let c = m - f(bracket(m)?);
                let Some(anchor) = t.holding(b, c) else {
                    return Err(invariant!("no bag holds the edge {b}-{c} needed by {m}"));
                };
                let leaf = t.pendant_bag[a as usize]
                    .filter(|&y| t.bags[y].contains(&c) && t.children[y] == 0)
                    .ok_or_else(|| invariant!("{a} is not a pendant leaf on {c} before {m}"))?;
                let b2 = t.add(vec![m, b, c], Some(anchor));
                let b1 = t.add(vec![m, a, c], Some(b2));
                t.reparent(leaf, b1);
                t.pendant_bag[a as usize] = None;
            }
        }
    }
    let tree = t
        .parent
        .iter()
        .enumerate()
        .filter_map(|(i, p)| p.map(|p| [p, i]))
        .collect();
    Ok(TreeDecomposition { bags: t.bags, tree })
}

fn find(uf: &mut [usize], mut x: usize) -> usize {
    while uf[x] != x {
        uf[x] = uf[uf[x]];
        x = uf[x];
    }
    x
}

/// Checks bag contents, tree shape, vertex and edge coverage, and running
/// intersection, reporting the first failure.
pub fn validate_tree_decomposition<G: Adjacency>(
    g: &G,
    td: &TreeDecomposition,
) -> std::result::Result<(), TreeDecompositionViolation> {
    use TreeDecompositionViolation as V;
    let n = g.vertex_count();
    if td.bags.is_empty() {
        return Err(V::NoBags);
    }
    let mut occurrences = vec![0usize; n as usize + 1];
    for (i, bag) in td.bags.iter().enumerate() {
        if bag.is_empty() {
            return Err(V::EmptyBag { bag: i });
        }
        if let Some(&v) = bag.iter().find(|&&v| v == 0 || v > n) {
            return Err(V::VertexOutOfRange { bag: i, vertex: v });
        }
        if (1..bag.len()).any(|j| bag[..j].contains(&bag[j])) {
            return Err(V::RepeatedVertex { bag: i });
        }
        for &v in bag {
            occurrences[v as usize] += 1;
        }
    }

    let count = td.bags.len();
    if td.tree.len() != count - 1 {
        return Err(V::NotATree);
    }
    let mut uf: Vec<usize> = (0..count).collect();
    for &[x, y] in &td.tree {
        if x >= count || y >= count {
            return Err(V::DanglingTreeEdge { edge: [x, y] });
        }
        let (rx, ry) = (find(&mut uf, x), find(&mut uf, y));
        if rx == ry {
            return Err(V::NotATree);
        }
        uf[rx] = ry;
    }

    if let Some(v) = (1..=n).find(|&v| occurrences[v as usize] == 0) {
        return Err(V::VertexUncovered(v));
    }

    // Bags of each vertex, packed: bags_of[start[v]..start[v + 1]].
    let mut start = vec![0usize; n as usize + 2];
    for v in 1..=n as usize {
        start[v + 1] = start[v] + occurrences[v];
    }
    let mut fill = start.clone();
    let mut bags_of = vec![0usize; start[n as usize + 1]];
    for (i, bag) in td.bags.iter().enumerate() {
        for &v in bag {
            bags_of[fill[v as usize]] = i;
            fill[v as usize] += 1;
        }
    }
    for u in 1..=n {
        let mine = &bags_of[start[u as usize]..start[u as usize + 1]];
        for v in g.neighbours(u).into_iter().filter(|&v| v > u) {
            if !mine.iter().any(|&i| td.bags[i].contains(&v)) {
                return Err(V::EdgeUncovered(u, v));
            }
        }
    }

    // In a tree, the bags holding v are connected iff exactly
    // occurrences(v) - 1 tree edges join two of them.
    let mut joined = vec![0usize; n as usize + 1];
    for &[x, y] in &td.tree {
        for &v in &td.bags[x] {
            if td.bags[y].contains(&v) {
                joined[v as usize] += 1;
            }
        }
    }
    if let Some(v) = (1..=n).find(|&v| joined[v as usize] + 1 != occurrences[v as usize]) {
        return Err(V::RunningIntersection(v));
    }
    Ok(())
}

/// A circular order of `1..=n` in which no two edges interleave.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OuterplanarCertificate {
    pub order: Vec<u64>,
}

/// Boundary walk of the outer face, as a circular list of corners.
struct Walk {
    vertex: Vec<u64>,
    next: Vec<usize>,
    prev: Vec<usize>,
    alive: Vec<bool>,
    corners: Vec<Vec<usize>>,
}

impl Walk {
    fn new(n: u64) -> Self {
        let mut w = Walk {
            vertex: vec![1],
            next: vec![0],
            prev: vec![0],
            alive: vec![true],
            corners: vec![Vec::new(); n as usize + 1],
        };
        w.corners[1].push(0);
        w
    }

    fn insert_after(&mut self, at: usize, v: u64) -> usize {
        let id = self.vertex.len();
        let after = self.next[at];
        self.vertex.push(v);
        self.next.push(after);
        self.prev.push(at);
        self.alive.push(true);
        self.next[at] = id;
        self.prev[after] = id;
        self.corners[v as usize].push(id);
        id
    }

    fn remove(&mut self, id: usize) {
        let (p, q) = (self.prev[id], self.next[id]);
        self.next[p] = q;
        self.prev[q] = p;
        self.alive[id] = false;
        let list = &mut self.corners[self.vertex[id] as usize];
        list.retain(|&c| c != id);
    }

    fn first_corner(&self, v: u64) -> usize {
        self.corners[v as usize][0]
    }
}

/// Builds a circular order of `1..=n`, starting at 1, with no interleaving
/// edges of `G_n`.
///
/// Keeps the outer face's boundary walk. A pendant is inserted right after a
/// corner of its neighbour. For a degree-2 vertex `m`, the pendant `a` is
/// lifted out and the boundary edge `{b, c}` is replaced by the path
/// `b, m, a, c`; if `{b, c}` is not on the boundary this is an invariant
/// violation.
pub fn build_outerplanar_certificate(n: u64) -> Result<OuterplanarCertificate> {
    check_materializable(n)?;
    let mut w = Walk::new(n);
    for m in 2..=n {
        let (b, a) = lower_neighbours(m)?.expect("m >= 2");
        match a {
            None => {
                let at = w.first_corner(b);
                let single = w.next[at] == at;
                let id = w.insert_after(at, m);
                if !single {
                    w.insert_after(id, b);
                }
            }
            Some(a) => {
                let c = m - f(bracket(m)?);
                let lone = match w.corners[a as usize].as_slice() {
                    &[id] => id,
                    _ => return Err(invariant!("{a} is not a pendant before {m}")),
                };
                let (p, q) = (w.prev[lone], w.next[lone]);
                if w.vertex[p] != c || w.vertex[q] != c {
                    return Err(invariant!("{a} does not hang off {c} before {m}"));
                }
                w.remove(lone);
                if p != q {
                    w.remove(q);
                }
                let boundary = w.corners[b as usize].iter().find_map(|&id| {
                    if w.vertex[w.next[id]] == c {
                        Some((id, true))
                    } else if w.vertex[w.prev[id]] == c {
                        Some((w.prev[id], false))
                    } else {
                        None
                    }
                });
                let Some((at, b_first)) = boundary else {
                    return Err(invariant!(
                        "edge {b}-{c} is not on the outer face before {m}"
                    ));
                };
                if b_first {
                    let id = w.insert_after(at, m);
                    w.insert_after(id, a);
                } else {
                    let id = w.insert_after(at, a);
                    w.insert_after(id, m);
                }
            }
        }
    }

    let start = w.first_corner(1);
    let mut seen = vec![false; n as usize + 1];
    let mut order = Vec::with_capacity(n as usize);
    let mut id = start;
    loop {
        debug_assert!(w.alive[id]);
        let v = w.vertex[id];
        if !seen[v as usize] {
            seen[v as usize] = true;
            order.push(v);
        }
        id = w.next[id];
        if id == start {
            break;
        }
    }
    if order.len() as u64 != n {
        return Err(invariant!(
            "boundary walk reaches {} of {n} vertices",
            order.len()
        ));
    }
    Ok(OuterplanarCertificate { order })
}

/// Positions of each vertex in the order; domain error unless the order is a
/// permutation of `1..=n`.
fn positions(n: u64, order: &[u64]) -> Result<Vec<usize>> {
    if order.len() as u64 != n {
        return Err(domain!(
            "order has {} entries for {n} vertices",
            order.len()
        ));
    }
    let mut pos = vec![usize::MAX; n as usize + 1];
    for (i, &v) in order.iter().enumerate() {
        if v == 0 || v > n || pos[v as usize] != usize::MAX {
            return Err(domain!("order is not a permutation of 1..={n} (at {v})"));
        }
        pos[v as usize] = i;
    }
    Ok(pos)
}

pub type Edge = (u64, u64);

/// Two edges that interleave in the circular order, if any.
///
/// Each edge is the interval between its endpoints' positions; two edges
/// interleave exactly when their intervals overlap without nesting. Sorting by
/// left end (longest first) and keeping a stack of nested open intervals finds
/// such a pair in one sweep.
pub fn find_crossing<G: Adjacency>(
    g: &G,
    cert: &OuterplanarCertificate,
) -> Result<Option<(Edge, Edge)>> {
    let n = g.vertex_count();
    let pos = positions(n, &cert.order)?;
    let mut spans: Vec<(usize, usize)> = Vec::new();
    for u in 1..=n {
        for v in g.neighbours(u).into_iter().filter(|&v| v > u) {
            let (x, y) = (pos[u as usize], pos[v as usize]);
            spans.push((x.min(y), x.max(y)));
        }
    }
    spans.sort_unstable_by(|p, q| p.0.cmp(&q.0).then(q.1.cmp(&p.1)));
    let edge = |(l, r): (usize, usize)| {
        let (u, v) = (cert.order[l], cert.order[r]);
        (u.min(v), u.max(v))
    };
    let mut stack: Vec<(usize, usize)> = Vec::new();
    for span in spans {
        while stack.last().is_some_and(|top| top.1 <= span.0) {
            stack.pop();
        }
        if let Some(&top) = stack.last() {
            if top.1 < span.1 {
                return Ok(Some((edge(top), edge(span))));
            }
        }
        stack.push(span);
    }
    Ok(None)
}

/// Whether no two edges of `g` interleave in `cert`'s circular order.
pub fn validate_outerplanar_certificate<G: Adjacency>(
    g: &G,
    cert: &OuterplanarCertificate,
) -> Result<bool> {
    find_crossing(g, cert).map(|c| c.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::explicit::ExplicitGraph;
    use crate::graph::FibSumGraph;

    fn g(n: u64) -> FibSumGraph {
        FibSumGraph::new(n).unwrap()
    }

    fn crosses_pairwise<G: Adjacency>(g: &G, order: &[u64]) -> bool {
        let pos = positions(g.vertex_count(), order).unwrap();
        let edges: Vec<(usize, usize)> = (1..=g.vertex_count())
            .flat_map(|u| {
                g.neighbours(u)
                    .into_iter()
                    .filter(move |&v| v > u)
                    .map(move |v| (u, v))
            })
            .map(|(u, v)| (pos[u as usize], pos[v as usize]))
            .map(|(x, y)| (x.min(y), x.max(y)))
            .collect();
        edges.iter().enumerate().any(|(i, &(a, b))| {
            edges[i + 1..]
                .iter()
                .any(|&(c, d)| (a < c && c < b && b < d) || (c < a && a < d && d < b))
        })
    }

    #[test]
    fn small_decompositions() {
        for n in 1..=6 {
            let td = build_tree_decomposition(n).unwrap();
            assert_eq!(validate_tree_decomposition(&g(n), &td), Ok(()), "n = {n}");
            assert_eq!(td.width(), usize::from(n > 1), "n = {n}");
        }
        let td = build_tree_decomposition(7).unwrap();
        assert_eq!(validate_tree_decomposition(&g(7), &td), Ok(()));
        assert_eq!(td.width(), 2);
        assert_eq!(build_tree_decomposition(1).unwrap().bags, vec![vec![1]]);
    }

    #[test]
    fn decompositions_validate_up_to_3000() {
        for n in 7..=3000 {
            let td = build_tree_decomposition(n).unwrap();
            assert_eq!(validate_tree_decomposition(&g(n), &td), Ok(()), "n = {n}");
            assert_eq!(td.width(), 2);
        }
    }

    #[test]
    fn decomposition_negative_controls() {
        let mut td = build_tree_decomposition(7).unwrap();
        let holder = td
            .bags
            .iter()
            .position(|b| b.contains(&6) && b.contains(&7))
            .unwrap();
        td.bags[holder].retain(|&v| v != 6);
        assert!(validate_tree_decomposition(&g(7), &td).is_err());

        let broken = TreeDecomposition {
            bags: vec![vec![1, 2], vec![2, 3]],
            tree: vec![],
        };
        assert_eq!(
            validate_tree_decomposition(&g(3), &broken),
            Err(TreeDecompositionViolation::NotATree)
        );

        // 1 appears in both ends of a path whose middle lacks it.
        let gap = TreeDecomposition {
            bags: vec![vec![1, 2], vec![2, 3], vec![1]],
            tree: vec![[0, 1], [1, 2]],
        };
        assert_eq!(
            validate_tree_decomposition(&g(3), &gap),
            Err(TreeDecompositionViolation::RunningIntersection(1))
        );

        let one = TreeDecomposition {
            bags: vec![vec![1]],
            tree: vec![],
        };
        assert_eq!(validate_tree_decomposition(&g(1), &one), Ok(()));
    }

    #[test]
    fn certificates_validate_and_agree_with_pairwise_check() {
        for n in 1..=300 {
            let cert = build_outerplanar_certificate(n).unwrap();
            assert_eq!(cert.order[0], 1);
            assert_eq!(
                validate_outerplanar_certificate(&g(n), &cert),
                Ok(true),
                "n = {n}"
            );
            assert!(!crosses_pairwise(&g(n), &cert.order), "n = {n}");
        }
    }

    #[test]
    fn certificates_validate_up_to_5000() {
        for n in (301..=5000).step_by(7) {
            let cert = build_outerplanar_certificate(n).unwrap();
            assert_eq!(
                validate_outerplanar_certificate(&g(n), &cert),
                Ok(true),
                "n = {n}"
            );
        }
    }

    #[test]
    fn certificate_controls() {
        let path = ExplicitGraph::from_edges(3, [(1, 2), (2, 3)]);
        let cert = OuterplanarCertificate {
            order: vec![1, 3, 2],
        };
        assert_eq!(validate_outerplanar_certificate(&path, &cert), Ok(true));

        let k4 = ExplicitGraph::from_edges(4, [(1, 2), (2, 3), (3, 4), (4, 1), (1, 3), (2, 4)]);
        let cert = OuterplanarCertificate {
            order: vec![1, 2, 3, 4],
        };
        assert_eq!(validate_outerplanar_certificate(&k4, &cert), Ok(false));
        assert!(crosses_pairwise(&k4, &cert.order));

        let bad = OuterplanarCertificate {
            order: vec![1, 1, 2],
        };
        assert!(matches!(
            validate_outerplanar_certificate(&path, &bad),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn sweep_matches_pairwise_on_shuffled_orders() {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for n in 5..=40 {
            let graph = g(n);
            let mut order: Vec<u64> = (1..=n).collect();
            for _ in 0..20 {
                order.shuffle(&mut rng);
                let cert = OuterplanarCertificate {
                    order: order.clone(),
                };
                assert_eq!(
                    validate_outerplanar_certificate(&graph, &cert).unwrap(),
                    !crosses_pairwise(&graph, &order),
                    "n = {n}, order = {order:?}"
                );
            }
        }
    }
}
