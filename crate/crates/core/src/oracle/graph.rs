//! Exhaustive enumeration of labelled graphs on small vertex sets.

use num_bigint::BigUint;
use rayon::prelude::*;

use super::alt::pair_index;
use super::Config;
use crate::error::{Error, Result};
use crate::qcalc::{choose2, pow};

/// Largest vertex count whose edge set fits the `u32` mask.
pub const MAX_VERTICES: usize = 8;

/// A labelled graph on `0..n`; bit `pair_index(n, i, j)` marks edge `{i, j}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: u32,
}

impl Graph {
    pub fn from_mask(n: usize, edges: u32) -> Self {
        assert!(n <= MAX_VERTICES);
        Self { n, edges }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mask = edges.iter().fold(0u32, |m, &(i, j)| {
            m | 1 << pair_index(n, i.min(j), i.max(j))
        });
        Self::from_mask(n, mask)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mask(&self) -> u32 {
        self.edges
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.has_edge(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        let (i, j) = (i.min(j), i.max(j));
        self.edges >> pair_index(self.n, i, j) & 1 == 1
    }

    /// Neighbourhoods as vertex bitmasks.
    pub fn adjacency(&self) -> Vec<u32> {
        let mut adj = vec![0u32; self.n];
        for (i, j) in self.edges() {
            adj[i] |= 1 << j;
            adj[j] |= 1 << i;
        }
        adj
    }

    pub fn has_isolated_vertex(&self) -> bool {
        self.adjacency().contains(&0)
    }

    /// Connected with at least one vertex.
    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        let adj = self.adjacency();
        let all = (1u32 << self.n) - 1;
        let mut seen = 1u32;
        let mut frontier = 1u32;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = adj[v] & !seen;
            seen |= fresh;
            frontier |= fresh;
        }
        seen == all
    }

    /// No edge inside the vertex set `set` (a bitmask).
    pub fn is_independent(&self, set: u32) -> bool {
        self.edges & clique_mask(self.n, set) == 0
    }
}

/// Edge mask of the complete graph on the vertex set `set`.
pub fn clique_mask(n: usize, set: u32) -> u32 {
    let mut mask = 0;
    for i in 0..n {
        for j in i + 1..n {
            if set >> i & 1 == 1 && set >> j & 1 == 1 {
                mask |= 1 << pair_index(n, i, j);
            }
        }
    }
    mask
}

fn check_graph_budget(n: usize, extra: &BigUint, config: &Config) -> Result<()> {
    if n > MAX_VERTICES {
        return Err(Error::InvalidArgument(format!(
            "graph oracle supports at most {MAX_VERTICES} vertices"
        )));
    }
    config.budget.check(
        &format!("labelled graphs on {n} vertices"),
        &(pow(2, choose2(n)) * extra),
    )
}

const CHUNK: u64 = 1 << 12;

/// Counts graphs on `n` vertices satisfying `pred`, splitting the edge-mask
/// range into fixed chunks across workers.
pub fn count_graphs(
    n: usize,
    config: &Config,
    pred: impl Fn(&Graph) -> bool + Sync,
) -> Result<BigUint> {
    check_graph_budget(n, &BigUint::from(1u32), config)?;
    let total: u64 = 1 << choose2(n);
    let chunks: Vec<u64> = (0..total.div_ceil(CHUNK)).collect();
    let count: u64 = config.install(|| {
        chunks
            .par_iter()
            .map(|&c| {
                (c * CHUNK..((c + 1) * CHUNK).min(total))
                    .filter(|&m| pred(&Graph::from_mask(n, m as u32)))
                    .count() as u64
            })
            .sum()
    });
    Ok(BigUint::from(count))
}

pub fn count_connected(n: usize, config: &Config) -> Result<BigUint> {
    count_graphs(n, config, Graph::is_connected)
}

pub fn count_no_isolated(n: usize, config: &Config) -> Result<BigUint> {
    count_graphs(n, config, |g| !g.has_isolated_vertex())
}

pub fn count_connected_no_isolated(n: usize, config: &Config) -> Result<BigUint> {
    count_graphs(n, config, |g| g.is_connected() && !g.has_isolated_vertex())
}

/// Pairs (graph, ordered partition of the vertices into `c` nonempty
/// independent classes), by trying every colour assignment on every graph.
pub fn count_colored_pairs(n: usize, c: usize, config: &Config) -> Result<BigUint> {
    count_partition_pairs(n, c, config, |classes| {
        classes.iter().fold(0, |m, &cl| m | clique_mask(n, cl))
    })
}

/// Pairs (graph, ordered partition of the vertices into `c` nonempty
/// blocks with no edge between different blocks).
pub fn count_separated_pairs(n: usize, c: usize, config: &Config) -> Result<BigUint> {
    let all = clique_mask(n, (1u32 << n) - 1);
    count_partition_pairs(n, c, config, |classes| {
        all & !classes.iter().fold(0, |m, &cl| m | clique_mask(n, cl))
    })
}

/// Counts (graph, surjective colouring) with no edge in the colouring's
/// forbidden mask.
fn count_partition_pairs(
    n: usize,
    c: usize,
    config: &Config,
    forbidden_of: impl Fn(&[u32]) -> u32,
) -> Result<BigUint> {
    if c == 0 {
        return Err(Error::InvalidArgument("c must be at least 1".into()));
    }
    check_graph_budget(n, &pow(c as u64, n), config)?;
    let mut forbidden = Vec::new();
    let assignments = (c as u64).pow(n as u32);
    for code in 0..assignments {
        let mut classes = vec![0u32; c];
        let mut rest = code;
        for v in 0..n {
            classes[(rest % c as u64) as usize] |= 1 << v;
            rest /= c as u64;
        }
        if classes.iter().all(|&cl| cl != 0) {
            forbidden.push(forbidden_of(&classes));
        }
    }
    let total: u64 = 1 << choose2(n);
    let count: u64 = config.install(|| {
        (0..total)
            .into_par_iter()
            .map(|edges| forbidden.iter().filter(|&&f| edges as u32 & f == 0).count() as u64)
            .sum()
    });
    Ok(BigUint::from(count))
}
