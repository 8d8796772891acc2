//! Exact Fibonacci arithmetic over `u64`.
//!
//! The table holds `F_0 ..= F_93`, every Fibonacci number that fits in an
//! unsigned 64-bit word. Graph operations accept vertex counts up to
//! [`MAX_N`] `= F_90`, which keeps `x + n`, `2x` and `F_{k+3}` for
//! `k = bracket(n)` inside the table.

use std::fmt;

use crate::error::{domain, Error, Result};

/// Largest index `k` with `F_k` representable in `u64`.
pub const MAX_INDEX: usize = 93;

/// Largest accepted vertex count.
pub const MAX_N: u64 = FIBS[MAX_INDEX - 3];

const FIBS: [u64; MAX_INDEX + 1] = {
    let mut t = [0u64; MAX_INDEX + 1];
    t[1] = 1;
    let mut i = 2;
    while i <= MAX_INDEX {
        t[i] = t[i - 1] + t[i - 2];
        i += 1;
    }
    t
};

/// The precomputed sequence `F_0 ..= F_MAX_INDEX`.
#[derive(Debug, Clone, Copy)]
pub struct FibSequence {
    values: &'static [u64],
}

impl FibSequence {
    pub fn get() -> Self {
        FibSequence { values: &FIBS }
    }

    pub fn values(&self) -> &'static [u64] {
        self.values
    }

    pub fn max_index(&self) -> usize {
        self.values.len() - 1
    }
}

/// `F_k`, or a range error when `F_k` does not fit in `u64`.
pub fn fib(k: usize) -> Result<u64> {
    FIBS.get(k).copied().ok_or_else(|| {
        Error::Range(format!(
            "F_{k} exceeds the 64-bit table (max index {MAX_INDEX})"
        ))
    })
}

/// Unchecked lookup for indices the caller has already bounded.
#[inline]
pub(crate) fn f(k: usize) -> u64 {
    FIBS[k]
}

/// The unique `k >= 2` with `F_k <= x < F_{k+1}`.
pub fn bracket(x: u64) -> Result<usize> {
    if x == 0 {
        return Err(domain!("bracket is undefined for 0"));
    }
    // FIBS[2..] is strictly increasing.
    let count = FIBS[2..].partition_point(|&v| v <= x);
    let k = count + 1;
    if k >= MAX_INDEX {
        return Err(Error::Range(format!(
            "{x} has no bracket inside the 64-bit table"
        )));
    }
    Ok(k)
}

/// Index `k >= 2` with `F_k = x`, if `x` is a positive Fibonacci number.
/// For `x = 1` this is 2.
pub fn fib_index(x: u64) -> Option<usize> {
    if x == 0 {
        return None;
    }
    FIBS[2..].binary_search(&x).ok().map(|i| i + 2)
}

pub fn is_fibonacci(x: u64) -> bool {
    x == 0 || fib_index(x).is_some()
}

/// Largest `n` for which per-vertex tables (colourings, paths, bags) are
/// allocated.
pub const MATERIALIZE_MAX: u64 = 50_000_000;

/// [`check_vertex_count`], plus the [`MATERIALIZE_MAX`] limit.
pub fn check_materializable(n: u64) -> Result<()> {
    check_vertex_count(n)?;
    if n > MATERIALIZE_MAX {
        return Err(Error::Range(format!(
            "n = {n} is above the limit {MATERIALIZE_MAX} for per-vertex tables"
        )));
    }
    Ok(())
}

/// Rejects vertex counts outside `1 ..= MAX_N`.
pub fn check_vertex_count(n: u64) -> Result<()> {
    if n == 0 {
        return Err(domain!("vertex count must be at least 1"));
    }
    if n > MAX_N {
        return Err(Error::Range(format!(
            "vertex count {n} exceeds the supported maximum {MAX_N}"
        )));
    }
    Ok(())
}

/// Zeckendorf representation: strictly decreasing indices `>= 2`, no two
/// consecutive.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Zeckendorf {
    indices: Vec<usize>,
}

impl Zeckendorf {
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    /// Sum of the represented Fibonacci numbers.
    pub fn value(&self) -> u64 {
        self.indices.iter().map(|&i| f(i)).sum()
    }

    pub fn is_well_formed(&self) -> bool {
        self.indices.iter().all(|&i| i >= 2) && self.indices.windows(2).all(|w| w[0] >= w[1] + 2)
    }
}

impl fmt::Display for Zeckendorf {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.indices.iter().map(|i| format!("F_{i}")).collect();
        write!(fm, "{}", parts.join(" + "))
    }
}

/// Greedy decomposition of `n >= 1`.
pub fn zeckendorf(n: u64) -> Result<Zeckendorf> {
    if n == 0 {
        return Err(domain!("zeckendorf representation requires n >= 1"));
    }
    let mut rest = n;
    let mut indices = Vec::new();
    while rest > 0 {
        let k = greedy_index(rest);
        indices.push(k);
        rest -= f(k);
    }
    Ok(Zeckendorf { indices })
}

// Largest k >= 2 with F_k <= x, including the top of the table.
fn greedy_index(x: u64) -> usize {
    FIBS[2..].partition_point(|&v| v <= x) + 1
}
