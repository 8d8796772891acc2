//! Plain adjacency-list graphs on vertices `1..=n`.
//!
//! Used for brute-force oracles and for hand-built control graphs that are
//! not Fibonacci-sum graphs.

use crate::fibcore::is_fibonacci;

/// Read-only adjacency queries over vertices `1..=vertex_count()`.
pub trait Adjacency {
    fn vertex_count(&self) -> u64;
    fn has_edge(&self, u: u64, v: u64) -> bool;
    /// Sorted neighbours of `v`.
    fn neighbours(&self, v: u64) -> Vec<u64>;

    fn contains(&self, v: u64) -> bool {
        (1..=self.vertex_count()).contains(&v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplicitGraph {
    adj: Vec<Vec<u64>>,
}

impl ExplicitGraph {
    pub fn empty(n: u64) -> Self {
        ExplicitGraph {
            adj: vec![Vec::new(); n as usize + 1],
        }
    }

    /// Builds from an edge list; duplicates and orientation are ignored.
    ///
    /// Panics on loops or vertices outside `1..=n`.
    pub fn from_edges(n: u64, edges: impl IntoIterator<Item = (u64, u64)>) -> Self {
        let mut g = ExplicitGraph::empty(n);
        for (u, v) in edges {
            assert!(u != v, "loop at {u}");
            assert!(
                u >= 1 && v >= 1 && u <= n && v <= n,
                "edge ({u},{v}) out of range"
            );
            g.adj[u as usize].push(v);
            g.adj[v as usize].push(u);
        }
        for list in &mut g.adj {
            list.sort_unstable();
            list.dedup();
        }
        g
    }

    /// The Fibonacci-sum graph built by testing every pair `i < j`.
    ///
    /// Quadratic; this is the reference the closed forms are checked against.
    pub fn fib_sum_bruteforce(n: u64) -> Self {
        let mut edges = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                if is_fibonacci(i + j) {
                    edges.push((i, j));
                }
            }
        }
        ExplicitGraph::from_edges(n, edges)
    }

    pub fn degree(&self, v: u64) -> usize {
        self.adj[v as usize].len()
    }

    pub fn edges(&self) -> Vec<(u64, u64)> {
        let mut out = Vec::new();
        for (u, list) in self.adj.iter().enumerate() {
            for &v in list {
                if (u as u64) < v {
                    out.push((u as u64, v));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }
}

impl Adjacency for ExplicitGraph {
    fn vertex_count(&self) -> u64 {
        self.adj.len() as u64 - 1
    }

    fn has_edge(&self, u: u64, v: u64) -> bool {
        self.contains(u) && self.adj[u as usize].binary_search(&v).is_ok()
    }

    fn neighbours(&self, v: u64) -> Vec<u64> {
        self.adj[v as usize].clone()
    }
}
