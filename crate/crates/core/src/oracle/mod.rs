//! Brute-force ground truth.
//!
//! Everything here enumerates real objects: subspaces of `F_p^m` as RREF
//! bases, ordered direct sum decompositions, alternating matrix spaces in
//! `Λ(n, p)` for `p` in {2, 3, 5}, and labelled graphs as edge bitmasks. The
//! counts are independent of the closed forms in [`crate::formulas`] and
//! exist to check them.
//!
//! Counting functions fan out over a rayon pool sized by [`Config::jobs`].
//! The outermost enumeration is split into fixed pieces (pivot classes,
//! decomposition lists, edge-mask ranges) and reduced by integer addition,
//! so results do not depend on the worker count.

pub mod alt;
pub mod count;
pub mod decomposition;
pub mod field;
pub mod graph;
pub mod subspace;

use num_bigint::BigUint;

use crate::error::{Error, Result};

pub use alt::{graph_to_altspace, AltSpace};
pub use count::{
    complete_decomposition_histogram, decomposition_census, oracle_dis, oracle_nds, oracle_ortho,
    oracle_ortho_naive, oracle_read_q, oracle_read_q_naive, subspace_census,
};
pub use decomposition::{
    enumerate_ordered_decompositions, is_direct_decomposition, is_directly_indecomposable,
    is_orthogonal_decomposition, OrderedDecomposition,
};
pub use field::{FqMatrix, PrimeField};
pub use graph::{
    count_colored_pairs, count_connected, count_connected_no_isolated, count_no_isolated,
    count_separated_pairs, Graph,
};
pub use subspace::{enumerate_subspaces, Subspace};

/// Upper bound on the size of any single enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    limit: u64,
}

impl Budget {
    /// Covers every desk-scale run (2^21 graphs on 7 vertices, 56 632
    /// subspaces of `Λ(4, 3)`).
    pub const DEFAULT_LIMIT: u64 = 1 << 22;

    pub fn new(limit: u64) -> Self {
        Self { limit }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn check(&self, what: &str, required: &BigUint) -> Result<()> {
        if *required > BigUint::from(self.limit) {
            return Err(Error::OverBudget {
                what: what.to_string(),
                required: required.to_string(),
                budget: self.limit,
            });
        }
        Ok(())
    }
}

impl Default for Budget {
    fn default() -> Self {
        Self::new(Self::DEFAULT_LIMIT)
    }
}

/// Budget plus worker count for the counting oracles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Config {
    pub budget: Budget,
    pub jobs: usize,
}

impl Config {
    pub fn new(budget: Budget, jobs: usize) -> Self {
        Self {
            budget,
            jobs: jobs.max(1),
        }
    }

    /// Runs `op` on a dedicated pool with `jobs` threads.
    pub fn install<R: Send>(&self, op: impl FnOnce() -> R + Send) -> R {
        match rayon::ThreadPoolBuilder::new()
            .num_threads(self.jobs)
            .build()
        {
            Ok(pool) => pool.install(op),
            // no pool available: run on the caller's thread
            Err(_) => op(),
        }
    }
}

impl Default for Config {
    fn default() -> Self {
        let jobs = std::thread::available_parallelism()
            .map(|n| n.get())
            .unwrap_or(1);
        Self::new(Budget::default(), jobs)
    }
}
