//! The 2-colouring of `G_n` with `colour(1) = 1`, part sizes, and the
//! prefix imbalance `S(N) = Σ_{i<=N} colour(i) - N/2`.
//!
//! The colouring does not depend on `n`: `G_x` is a connected subgraph of
//! every `G_n` with `n >= x`, so vertex `x` gets the same colour in all of
//! them.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{domain, invariant, Error, Result};
use crate::fibcore::{bracket, check_materializable, check_vertex_count, f, fib_index, MAX_INDEX};

/// Colour of vertex `x` by Fibonacci reduction.
///
/// Fibonacci vertices are coloured by index parity (`F_{2j} -> 1`,
/// `F_{2j+1} -> 0`). Otherwise `x` lies strictly between `F_k` and
/// `F_{k+1}` and shares its colour with `x - F_k`, except the half-Fibonacci
/// vertex `F_{k+2}/2`, which is 1 for `k ≡ 1` and 0 for `k ≡ 4 (mod 6)`.
pub fn colour_of(x: u64) -> Result<u8> {
    check_vertex_count(x)?;
    let mut x = x;
    loop {
        if let Some(j) = fib_index(x) {
            return Ok(u8::from(j % 2 == 0));
        }
        let k = bracket(x)?;
        if 2 * x == f(k + 2) {
            return match k % 6 {
                1 => Ok(1),
                4 => Ok(0),
                r => Err(invariant!("half-Fibonacci vertex {x} with k ≡ {r} (mod 6)")),
            };
        }
        x -= f(k);
    }
}

/// Exact half-integer `S(N)`, stored doubled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ImbalancePrefix {
    pub n: u64,
    /// `2 * S(N)`
    pub twice: i64,
}

impl ImbalancePrefix {
    pub fn is_integer(&self) -> bool {
        self.twice % 2 == 0
    }
}

impl fmt::Display for ImbalancePrefix {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(fm, "{}", self.twice / 2)
        } else {
            write!(fm, "{}/2", self.twice)
        }
    }
}

/// `2 * S(F_k)` for `k >= 2`, by residue of `k` mod 6.
pub fn s_of_fib_twice(k: usize) -> i64 {
    match k % 6 {
        0 | 3 => 0,
        2 | 4 => 1,
        _ => -1,
    }
}

/// `S(N)` via the Zeckendorf-style recursion `S(N) = S(F_k) + S(N - F_k)`.
///
/// When `k ≡ 1, 4 (mod 6)` and `N >= F_{k+2}/2` the recursion alone is off by
/// the half-Fibonacci vertex, whose colour differs from `colour(h - F_k)`;
/// that single correction term is added.
pub fn s_of(n: u64) -> Result<ImbalancePrefix> {
    if n > 0 {
        check_vertex_count(n)?;
    }
    let mut twice = 0i64;
    let mut rest = n;
    while rest > 0 {
        let k = bracket(rest)?;
        twice += s_of_fib_twice(k);
        if matches!(k % 6, 1 | 4) && rest > f(k) && 2 * rest >= f(k + 2) {
            let h = f(k + 2) / 2;
            twice += 2 * (i64::from(colour_of(h)?) - i64::from(colour_of(h - f(k))?));
        }
        rest -= f(k);
    }
    Ok(ImbalancePrefix { n, twice })
}

/// `S(N)` by summing `colour_of` over `1..=N`, in parallel.
pub fn s_of_scan(n: u64) -> Result<ImbalancePrefix> {
    if n > 0 {
        check_vertex_count(n)?;
    }
    let ones = (1..=n)
        .into_par_iter()
        .map(|x| colour_of(x).map(u64::from))
        .try_reduce(|| 0, |a, b| Ok(a + b))?;
    Ok(ImbalancePrefix {
        n,
        twice: 2 * ones as i64 - n as i64,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PartSizes {
    /// Vertices with colour 1 (the class of vertex 1).
    pub size1: u64,
    pub size0: u64,
}

impl PartSizes {
    fn from_prefix(p: ImbalancePrefix) -> Self {
        let size1 = ((p.n as i128 + p.twice as i128) / 2) as u64;
        PartSizes {
            size1,
            size0: p.n - size1,
        }
    }

    /// `|size1 - n/2|`, doubled.
    pub fn imbalance_twice(&self) -> u64 {
        (self.size1 as i128 - self.size0 as i128).unsigned_abs() as u64
    }
}

pub fn part_sizes(n: u64) -> Result<PartSizes> {
    check_vertex_count(n)?;
    s_of(n).map(PartSizes::from_prefix)
}

pub fn part_sizes_scan(n: u64) -> Result<PartSizes> {
    check_vertex_count(n)?;
    s_of_scan(n).map(PartSizes::from_prefix)
}

/// `Σ_{i=1}^{2z} F_{6i+1}`: a vertex count whose bipartition is off balance
/// by exactly `z`.
pub fn imbalance_witness(z: u64) -> Result<u64> {
    if z == 0 {
        return Err(domain!("imbalance witness needs z >= 1"));
    }
    let top = z.checked_mul(12).and_then(|v| v.checked_add(1));
    if top.is_none_or(|t| t > MAX_INDEX as u64) {
        return Err(Error::Range(format!(
            "F_(12*{z}+1) exceeds the 64-bit table"
        )));
    }
    let mut n = 0u64;
    for i in 1..=2 * z as usize {
        n = n
            .checked_add(f(6 * i + 1))
            .ok_or_else(|| Error::Range(format!("imbalance witness for z = {z} overflows")))?;
    }
    check_vertex_count(n)?;
    Ok(n)
}

/// Full colouring of `G_n`, indexed `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    n: u64,
    colours: Vec<u8>,
    sizes: PartSizes,
}

impl Bipartition {
    /// Colours vertices in increasing order, each opposite to its neighbour
    /// `F_{k+1} - m < m`.
    pub fn new(n: u64) -> Result<Self> {
        check_materializable(n)?;
        let len = n as usize;
        let mut colours = vec![0u8; len + 1];
        colours[1] = 1;
        for m in 2..=n {
            let k = bracket(m)?;
            let partner = f(k + 1) - m;
            colours[m as usize] = 1 - colours[partner as usize];
        }
        let ones = colours[1..].iter().map(|&c| u64::from(c)).sum::<u64>();
        let sizes = PartSizes {
            size1: ones,
            size0: n - ones,
        };
        Ok(Bipartition { n, colours, sizes })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn colour(&self, x: u64) -> u8 {
        self.colours[x as usize]
    }

    pub fn colours(&self) -> &[u8] {
        &self.colours[1..]
    }

    pub fn sizes(&self) -> PartSizes {
        self.sizes
    }

    pub fn s_twice(&self) -> i64 {
        self.sizes.size1 as i64 * 2 - self.n as i64
    }
}
