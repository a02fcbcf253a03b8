//! Counting oracles over `Λ(n, q)`.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;

use super::alt::AltSpace;
use super::decomposition::{
    all_decompositions, complete_direct_decompositions, enumerate_c_decompositions,
    enumerate_ordered_decompositions, IndecomposabilityChecker, OrderedDecomposition,
    PreparedDecomposition, SplitCatalog,
};
use super::field::PrimeField;
use super::subspace::{pivot_classes, PivotClass};
use super::Config;
use crate::error::Result;
use crate::qcalc::{choose2, galois_number, Composition};

fn checked_classes(m: usize, q: u64, config: &Config, what: &str) -> Result<Vec<PivotClass>> {
    let field = PrimeField::new(q)?;
    config.budget.check(what, &galois_number(m, q))?;
    Ok(pivot_classes(field, m))
}

/// Subspaces of `F_q^m` per dimension `0..=m`.
pub fn subspace_census(m: usize, q: u64, config: &Config) -> Result<Vec<BigUint>> {
    let classes = checked_classes(m, q, config, &format!("subspaces of F_{q}^{m}"))?;
    let per_class: Vec<(usize, u64)> = config.install(|| {
        classes
            .par_iter()
            .map(|c| (c.dim(), c.iter().count() as u64))
            .collect()
    });
    let mut out = vec![BigUint::zero(); m + 1];
    for (d, k) in per_class {
        out[d] += k;
    }
    Ok(out)
}

/// Counts subspaces of `Λ(n, q)` satisfying `pred`, split by pivot class.
pub fn count_alt_spaces(
    n: usize,
    q: u64,
    config: &Config,
    pred: impl Fn(&AltSpace) -> bool + Sync,
) -> Result<BigUint> {
    let classes = checked_classes(choose2(n), q, config, &format!("subspaces of Λ({n}, {q})"))?;
    let count: u64 = config.install(|| {
        classes
            .par_iter()
            .map(|c| {
                c.iter()
                    .filter(|s| {
                        pred(&AltSpace::new(n, s.clone()).expect("ambient dimension is C(n,2)"))
                    })
                    .count() as u64
            })
            .sum()
    });
    Ok(BigUint::from(count))
}

/// Number of ordered decompositions of `F_q^n` of the given shape, by
/// enumeration.
pub fn decomposition_census(
    n: usize,
    parts: &Composition,
    q: u64,
    config: &Config,
) -> Result<BigUint> {
    Ok(BigUint::from(
        enumerate_ordered_decompositions(n, parts, q, &config.budget)?.len(),
    ))
}

/// Non-degenerate subspaces of `Λ(n, q)`.
pub fn oracle_nds(n: usize, q: u64, config: &Config) -> Result<BigUint> {
    count_alt_spaces(n, q, config, |a| !a.is_degenerate())
}

/// Non-degenerate, directly indecomposable subspaces of `Λ(n, q)`.
pub fn oracle_dis(n: usize, q: u64, config: &Config) -> Result<BigUint> {
    let catalog = SplitCatalog::new(n, q, &config.budget)?;
    count_alt_spaces(n, q, config, |a| {
        !a.is_degenerate() && catalog.is_directly_indecomposable(a)
    })
}

fn sum_over_decompositions(
    decompositions: &[OrderedDecomposition],
    config: &Config,
    term: impl Fn(&OrderedDecomposition) -> BigUint + Sync,
) -> BigUint {
    config.install(|| {
        decompositions
            .par_iter()
            .map(&term)
            .reduce(BigUint::zero, |a, b| a + b)
    })
}

/// Pairs (space, ordered `c`-decomposition with totally isotropic parts).
///
/// Decompositions form the outer loop; the spaces compatible with one
/// decomposition are exactly the subspaces of its isotropic locus.
pub fn oracle_read_q(n: usize, c: usize, q: u64, config: &Config) -> Result<BigUint> {
    let decompositions = enumerate_c_decompositions(n, c, q, &config.budget)?;
    Ok(sum_over_decompositions(&decompositions, config, |d| {
        galois_number(d.isotropic_locus().dim(), q)
    }))
}

/// Pairs (space, ordered orthogonal `c`-decomposition), via orthogonal loci.
pub fn oracle_ortho(n: usize, c: usize, q: u64, config: &Config) -> Result<BigUint> {
    let decompositions = enumerate_c_decompositions(n, c, q, &config.budget)?;
    Ok(sum_over_decompositions(&decompositions, config, |d| {
        galois_number(d.orthogonal_locus().dim(), q)
    }))
}

/// [`oracle_read_q`] as a plain double loop over spaces and decompositions.
pub fn oracle_read_q_naive(n: usize, c: usize, q: u64, config: &Config) -> Result<BigUint> {
    let decompositions = enumerate_c_decompositions(n, c, q, &config.budget)?;
    count_pairs(n, q, config, |a| {
        decompositions
            .iter()
            .filter(|d| d.parts().iter().all(|u| a.is_totally_isotropic(u)))
            .count() as u64
    })
}

/// [`oracle_ortho`] as a plain double loop over spaces and decompositions.
pub fn oracle_ortho_naive(n: usize, c: usize, q: u64, config: &Config) -> Result<BigUint> {
    let prepared: Vec<PreparedDecomposition> = enumerate_c_decompositions(n, c, q, &config.budget)?
        .into_iter()
        .map(PreparedDecomposition::new)
        .collect();
    count_pairs(n, q, config, |a| {
        prepared.iter().filter(|d| d.is_orthogonal_for(a)).count() as u64
    })
}

fn count_pairs(
    n: usize,
    q: u64,
    config: &Config,
    per_space: impl Fn(&AltSpace) -> u64 + Sync,
) -> Result<BigUint> {
    let classes = checked_classes(choose2(n), q, config, &format!("subspaces of Λ({n}, {q})"))?;
    let total: u64 = config.install(|| {
        classes
            .par_iter()
            .map(|c| {
                c.iter()
                    .map(|s| per_space(&AltSpace::new(n, s).expect("ambient dimension is C(n,2)")))
                    .sum::<u64>()
            })
            .sum()
    });
    Ok(BigUint::from(total))
}

/// For every non-degenerate space in `Λ(n, q)`, the number of unordered
/// complete direct decompositions found by exhaustive search; returned as a
/// histogram `count -> number of spaces`.
pub fn complete_decomposition_histogram(
    n: usize,
    q: u64,
    config: &Config,
) -> Result<BTreeMap<usize, u64>> {
    let decompositions = all_decompositions(n, q, &config.budget)?;
    let checker = IndecomposabilityChecker::new(n, q, &config.budget)?;
    let classes = checked_classes(choose2(n), q, config, &format!("subspaces of Λ({n}, {q})"))?;
    let per_class: Vec<BTreeMap<usize, u64>> = config.install(|| {
        classes
            .par_iter()
            .map(|c| {
                let mut hist = BTreeMap::new();
                for s in c.iter() {
                    let a = AltSpace::new(n, s).expect("ambient dimension is C(n,2)");
                    if a.is_degenerate() {
                        continue;
                    }
                    let found = complete_direct_decompositions(&a, &decompositions, &checker).len();
                    *hist.entry(found).or_insert(0) += 1;
                }
                hist
            })
            .collect()
    });
    let mut out = BTreeMap::new();
    for hist in per_class {
        for (k, v) in hist {
            *out.entry(k).or_insert(0) += v;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas;
    use crate::oracle::Budget;

    fn cfg(jobs: usize) -> Config {
        Config::new(Budget::default(), jobs)
    }

    #[test]
    fn census_matches_gauss_binom() {
        let counts = subspace_census(4, 3, &cfg(2)).unwrap();
        let expected: Vec<BigUint> = (0..=4)
            .map(|d| crate::qcalc::gauss_binom(4, d, 3))
            .collect();
        assert_eq!(counts, expected);
    }

    #[test]
    fn small_space_oracles() {
        let c = cfg(2);
        assert_eq!(oracle_nds(3, 2, &c).unwrap(), BigUint::from(8u32));
        assert_eq!(oracle_nds(1, 3, &c).unwrap(), BigUint::from(0u32));
        assert_eq!(oracle_dis(3, 2, &c).unwrap(), BigUint::from(8u32));
        assert_eq!(oracle_read_q(2, 2, 2, &c).unwrap(), BigUint::from(12u32));
        assert_eq!(oracle_ortho(2, 2, 2, &c).unwrap(), BigUint::from(6u32));
    }

    #[test]
    fn fast_and_naive_pair_counts_agree() {
        let c = cfg(3);
        for n in 0..=3 {
            for k in 1..=3 {
                assert_eq!(
                    oracle_read_q(n, k, 2, &c).unwrap(),
                    oracle_read_q_naive(n, k, 2, &c).unwrap()
                );
                assert_eq!(
                    oracle_ortho(n, k, 2, &c).unwrap(),
                    oracle_ortho_naive(n, k, 2, &c).unwrap()
                );
                assert_eq!(
                    oracle_read_q(n, k, 2, &c).unwrap(),
                    formulas::read_q_isotropic(n, k, 2)
                );
            }
        }
        assert_eq!(
            oracle_ortho(2, 2, 3, &c).unwrap(),
            oracle_ortho_naive(2, 2, 3, &c).unwrap()
        );
    }

    #[test]
    fn worker_count_does_not_change_results() {
        for jobs in [1, 4] {
            assert_eq!(
                oracle_nds(4, 2, &cfg(jobs)).unwrap(),
                BigUint::from(2669u32)
            );
        }
    }

    #[test]
    fn unique_complete_decomposition_at_n3() {
        let hist = complete_decomposition_histogram(3, 2, &cfg(2)).unwrap();
        assert_eq!(hist, BTreeMap::from([(1, 8)]));
    }

    #[test]
    fn over_budget_is_refused() {
        let tight = Config::new(Budget::new(100), 1);
        assert!(oracle_nds(4, 2, &tight).is_err());
        assert!(oracle_nds(4, 4, &cfg(1)).is_err());
    }
}
