//! Ordered direct sum decompositions of `F_q^n` and the orthogonal, direct
//! and totally-isotropic conditions they impose on alternating spaces.

use std::collections::{BTreeSet, HashMap};

use super::alt::{pairing_functional, AltSpace};
use super::field::{FqMatrix, PrimeField};
use super::subspace::{subspaces_of_dim, Subspace};
use super::Budget;
use crate::error::{Error, Result};
use crate::qcalc::{choose2, compositions, decomposition_count, Composition};

/// `F_q^n = U_1 + ... + U_c`, direct, with every part nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderedDecomposition {
    parts: Vec<Subspace>,
}

impl OrderedDecomposition {
    pub fn new(parts: Vec<Subspace>) -> Result<Self> {
        let Some(first) = parts.first() else {
            return Err(Error::InvalidArgument(
                "a decomposition needs at least one part".into(),
            ));
        };
        let n = first.ambient_dim();
        if parts.iter().any(|p| p.ambient_dim() != n || p.is_zero()) {
            return Err(Error::InvalidArgument(
                "parts must be nonzero subspaces of one ambient space".into(),
            ));
        }
        let total: usize = parts.iter().map(Subspace::dim).sum();
        let span = parts
            .iter()
            .skip(1)
            .fold(first.clone(), |acc, p| acc.sum(p));
        if total != n || span.dim() != n {
            return Err(Error::InvalidArgument(
                "parts do not form a direct sum of the ambient space".into(),
            ));
        }
        Ok(Self { parts })
    }

    pub fn parts(&self) -> &[Subspace] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts[0].ambient_dim()
    }

    pub fn field(&self) -> PrimeField {
        self.parts[0].field()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.parts.iter().map(Subspace::dim).collect()
    }

    /// Functionals `A -> u^t A w` for basis vectors `u`, `w` of distinct parts.
    pub fn cross_functionals(&self) -> Vec<Vec<u8>> {
        let f = self.field();
        let mut out = Vec::new();
        for (i, ui) in self.parts.iter().enumerate() {
            for uj in &self.parts[i + 1..] {
                for u in ui.basis().rows() {
                    for w in uj.basis().rows() {
                        out.push(pairing_functional(f, u, w));
                    }
                }
            }
        }
        out
    }

    /// Functionals `A -> u^t A u'` for distinct basis vectors of one part.
    pub fn isotropy_functionals(&self) -> Vec<Vec<u8>> {
        let f = self.field();
        let mut out = Vec::new();
        for part in &self.parts {
            let b = part.basis();
            for s in 0..b.num_rows() {
                for t in s + 1..b.num_rows() {
                    out.push(pairing_functional(f, b.row(s), b.row(t)));
                }
            }
        }
        out
    }

    /// Subspace of `Λ(n, q)` on which the decomposition is orthogonal.
    pub fn orthogonal_locus(&self) -> Subspace {
        locus(self.field(), self.n(), &self.cross_functionals())
    }

    /// Subspace of `Λ(n, q)` on which every part is totally isotropic.
    pub fn isotropic_locus(&self) -> Subspace {
        locus(self.field(), self.n(), &self.isotropy_functionals())
    }

    /// The same parts, sorted; identifies the unordered decomposition.
    pub fn unordered_key(&self) -> Vec<Subspace> {
        let mut parts = self.parts.clone();
        parts.sort();
        parts
    }
}

fn locus(field: PrimeField, n: usize, functionals: &[Vec<u8>]) -> Subspace {
    let m = choose2(n);
    if functionals.is_empty() {
        return Subspace::full(field, m);
    }
    Subspace::span(&FqMatrix::from_rows(field, m, functionals).kernel())
}

/// Every ordered decomposition of `F_q^n` with `dim U_i = parts[i]`, each
/// exactly once.
pub fn enumerate_ordered_decompositions(
    n: usize,
    parts: &Composition,
    q: u64,
    budget: &Budget,
) -> Result<Vec<OrderedDecomposition>> {
    if parts.total() != n {
        return Err(Error::InvalidArgument(format!(
            "composition {parts} does not sum to {n}"
        )));
    }
    let field = PrimeField::new(q)?;
    budget.check(
        &format!("ordered decompositions of F_{q}^{n} of shape {parts}"),
        &decomposition_count(parts, q),
    )?;

    let mut by_dim: HashMap<usize, Vec<Subspace>> = HashMap::new();
    for &d in parts.iter() {
        if let std::collections::hash_map::Entry::Vacant(e) = by_dim.entry(d) {
            e.insert(subspaces_of_dim(n, d, q, budget)?);
        }
    }

    fn extend(
        dims: &[usize],
        by_dim: &HashMap<usize, Vec<Subspace>>,
        span: &Subspace,
        chosen: &mut Vec<Subspace>,
        out: &mut Vec<OrderedDecomposition>,
    ) {
        let Some((&d, rest)) = dims.split_first() else {
            out.push(OrderedDecomposition {
                parts: chosen.clone(),
            });
            return;
        };
        for candidate in &by_dim[&d] {
            let grown = span.sum(candidate);
            if grown.dim() != span.dim() + d {
                continue;
            }
            chosen.push(candidate.clone());
            extend(rest, by_dim, &grown, chosen, out);
            chosen.pop();
        }
    }

    let mut out = Vec::new();
    extend(
        parts,
        &by_dim,
        &Subspace::zero(field, n),
        &mut Vec::new(),
        &mut out,
    );
    Ok(out)
}

/// All ordered decompositions of `F_q^n` into exactly `c` parts.
pub fn enumerate_c_decompositions(
    n: usize,
    c: usize,
    q: u64,
    budget: &Budget,
) -> Result<Vec<OrderedDecomposition>> {
    let mut out = Vec::new();
    for parts in compositions(n, c) {
        out.extend(enumerate_ordered_decompositions(n, &parts, q, budget)?);
    }
    Ok(out)
}

pub fn is_orthogonal_decomposition(a: &AltSpace, d: &OrderedDecomposition) -> bool {
    a.annihilated_by(&d.cross_functionals())
}

/// Orthogonal, and `dim A = sum_i dim A|_{U_i}`.
pub fn is_direct_decomposition(a: &AltSpace, d: &OrderedDecomposition) -> bool {
    is_orthogonal_decomposition(a, d) && restriction_dims_add_up(a, d)
}

fn restriction_dims_add_up(a: &AltSpace, d: &OrderedDecomposition) -> bool {
    d.parts()
        .iter()
        .map(|u| a.restriction_dim(u))
        .sum::<usize>()
        == a.dim()
}

/// A decomposition with its cross functionals precomputed, for repeated
/// orthogonality tests against many spaces.
#[derive(Debug, Clone)]
pub struct PreparedDecomposition {
    decomposition: OrderedDecomposition,
    cross: Vec<Vec<u8>>,
}

impl PreparedDecomposition {
    pub fn new(decomposition: OrderedDecomposition) -> Self {
        let cross = decomposition.cross_functionals();
        Self {
            decomposition,
            cross,
        }
    }

    pub fn decomposition(&self) -> &OrderedDecomposition {
        &self.decomposition
    }

    pub fn is_orthogonal_for(&self, a: &AltSpace) -> bool {
        a.annihilated_by(&self.cross)
    }

    pub fn is_direct_for(&self, a: &AltSpace) -> bool {
        self.is_orthogonal_for(a) && restriction_dims_add_up(a, &self.decomposition)
    }
}

/// Precomputed 2-part decompositions `(k, n-k)`, `1 <= k <= n/2`, of `F_q^n`.
///
/// Swapping the two parts preserves orthogonality and directness, so only
/// `k <= n - k` is needed.
#[derive(Debug, Clone)]
pub struct SplitCatalog {
    n: usize,
    splits: Vec<PreparedDecomposition>,
}

impl SplitCatalog {
    pub fn new(n: usize, q: u64, budget: &Budget) -> Result<Self> {
        let mut splits = Vec::new();
        for k in 1..=n / 2 {
            let shape = Composition::new(vec![k, n - k])?;
            splits.extend(
                enumerate_ordered_decompositions(n, &shape, q, budget)?
                    .into_iter()
                    .map(PreparedDecomposition::new),
            );
        }
        Ok(Self { n, splits })
    }

    pub fn len(&self) -> usize {
        self.splits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.splits.is_empty()
    }

    /// No 2-part direct decomposition exists.
    ///
    /// Checking 2 parts suffices: grouping the parts of any `k`-part direct
    /// decomposition into two blocks keeps it orthogonal, and the restriction
    /// to a block is block-diagonal, so dimensions still add up.
    pub fn is_directly_indecomposable(&self, a: &AltSpace) -> bool {
        assert_eq!(a.n(), self.n, "catalog built for a different size");
        !self.splits.iter().any(|s| s.is_direct_for(a))
    }
}

/// See [`SplitCatalog::is_directly_indecomposable`].
pub fn is_directly_indecomposable(a: &AltSpace) -> Result<bool> {
    let catalog = SplitCatalog::new(a.n(), a.field().order() as u64, &Budget::default())?;
    Ok(catalog.is_directly_indecomposable(a))
}

/// Exhaustive version: no direct decomposition into `k >= 2` parts, any shape.
pub fn is_directly_indecomposable_exhaustive(a: &AltSpace, budget: &Budget) -> Result<bool> {
    let q = a.field().order() as u64;
    for c in 2..=a.n() {
        for d in enumerate_c_decompositions(a.n(), c, q, budget)? {
            if is_direct_decomposition(a, &d) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Split catalogs for every size `1..=n`, used to test the parts of a
/// decomposition for indecomposability after restriction.
#[derive(Debug, Clone)]
pub struct IndecomposabilityChecker {
    catalogs: Vec<SplitCatalog>,
}

impl IndecomposabilityChecker {
    pub fn new(n: usize, q: u64, budget: &Budget) -> Result<Self> {
        let catalogs = (0..=n)
            .map(|k| SplitCatalog::new(k, q, budget))
            .collect::<Result<_>>()?;
        Ok(Self { catalogs })
    }

    pub fn is_directly_indecomposable(&self, a: &AltSpace) -> bool {
        self.catalogs[a.n()].is_directly_indecomposable(a)
    }
}

/// Every ordered decomposition of `F_q^n`, all shapes, each prepared.
pub fn all_decompositions(n: usize, q: u64, budget: &Budget) -> Result<Vec<PreparedDecomposition>> {
    let mut out = Vec::new();
    for c in 1..=n {
        out.extend(
            enumerate_c_decompositions(n, c, q, budget)?
                .into_iter()
                .map(PreparedDecomposition::new),
        );
    }
    Ok(out)
}

/// Unordered complete direct decompositions of `a` found by exhaustive
/// search over `decompositions` (normally [`all_decompositions`]).
///
/// A direct decomposition is complete when every restriction `A|_{U_i}` is
/// directly indecomposable.
pub fn complete_direct_decompositions(
    a: &AltSpace,
    decompositions: &[PreparedDecomposition],
    checker: &IndecomposabilityChecker,
) -> BTreeSet<Vec<Subspace>> {
    decompositions
        .iter()
        .filter(|d| d.is_direct_for(a))
        .filter(|d| {
            d.decomposition()
                .parts()
                .iter()
                .all(|u| checker.is_directly_indecomposable(&a.restriction(u)))
        })
        .map(|d| d.decomposition().unordered_key())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::alt::{elementary, graph_to_altspace};

    fn f(q: u64) -> PrimeField {
        PrimeField::new(q).unwrap()
    }

    fn comp(parts: &[usize]) -> Composition {
        Composition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn decomposition_counts_small() {
        let b = Budget::default();
        assert_eq!(
            enumerate_ordered_decompositions(2, &comp(&[1, 1]), 2, &b)
                .unwrap()
                .len(),
            6
        );
        assert_eq!(
            enumerate_ordered_decompositions(3, &comp(&[1, 2]), 2, &b)
                .unwrap()
                .len(),
            28
        );
        assert_eq!(
            enumerate_ordered_decompositions(3, &comp(&[3]), 3, &b)
                .unwrap()
                .len(),
            1
        );
        assert!(enumerate_ordered_decompositions(3, &comp(&[1, 1]), 2, &b).is_err());
    }

    #[test]
    fn decompositions_are_distinct_and_valid() {
        let b = Budget::default();
        let all = enumerate_ordered_decompositions(3, &comp(&[1, 1, 1]), 3, &b).unwrap();
        let set: BTreeSet<_> = all.iter().cloned().collect();
        assert_eq!(set.len(), all.len());
        for d in &all {
            OrderedDecomposition::new(d.parts().to_vec()).unwrap();
        }
    }

    #[test]
    fn new_rejects_non_direct_sums() {
        let field = f(2);
        let l = Subspace::coordinate(field, 2, &[0]);
        assert!(OrderedDecomposition::new(vec![l.clone(), l.clone()]).is_err());
        assert!(OrderedDecomposition::new(vec![l.clone()]).is_err());
        assert!(OrderedDecomposition::new(vec![]).is_err());
    }

    #[test]
    fn zero_space_decomposes_along_anything() {
        let b = Budget::default();
        let zero = AltSpace::zero(f(2), 3);
        for d in enumerate_c_decompositions(3, 2, 2, &b).unwrap() {
            assert!(is_orthogonal_decomposition(&zero, &d));
            assert!(is_direct_decomposition(&zero, &d));
        }
    }

    #[test]
    fn two_k2_is_direct() {
        let field = f(2);
        let a = graph_to_altspace(&[(0, 1), (2, 3)], 4, 2).unwrap();
        let d = OrderedDecomposition::new(vec![
            Subspace::coordinate(field, 4, &[0, 1]),
            Subspace::coordinate(field, 4, &[2, 3]),
        ])
        .unwrap();
        assert!(is_direct_decomposition(&a, &d));
        assert!(!is_directly_indecomposable(&a).unwrap());
    }

    #[test]
    fn indecomposable_examples() {
        for q in [2, 3] {
            assert!(is_directly_indecomposable(&AltSpace::full(f(q), 2)).unwrap());
        }
        let p3 = graph_to_altspace(&[(0, 1), (1, 2)], 3, 2).unwrap();
        assert!(is_directly_indecomposable(&p3).unwrap());
        assert!(is_directly_indecomposable(&AltSpace::zero(f(2), 1)).unwrap());
        assert!(!is_directly_indecomposable(&AltSpace::zero(f(2), 2)).unwrap());
    }

    #[test]
    fn degenerate_example_has_two_direct_splits() {
        let field = f(2);
        let a = AltSpace::from_matrices(
            field,
            5,
            &[elementary(field, 5, 0, 1), elementary(field, 5, 2, 3)],
        )
        .unwrap();
        let first = OrderedDecomposition::new(vec![
            Subspace::coordinate(field, 5, &[0, 1]),
            Subspace::coordinate(field, 5, &[2, 3, 4]),
        ])
        .unwrap();
        let second = OrderedDecomposition::new(vec![
            Subspace::from_vectors(field, 5, &[[1, 0, 0, 0, 1], [0, 1, 0, 0, 0]]),
            Subspace::coordinate(field, 5, &[2, 3, 4]),
        ])
        .unwrap();
        assert_ne!(first, second);
        assert!(is_direct_decomposition(&a, &first));
        assert!(is_direct_decomposition(&a, &second));
    }

    #[test]
    fn two_part_check_matches_exhaustive_at_n3() {
        let b = Budget::default();
        let catalog = SplitCatalog::new(3, 2, &b).unwrap();
        for s in crate::oracle::subspace::enumerate_subspaces(3, 2, &b).unwrap() {
            let a = AltSpace::new(3, s).unwrap();
            assert_eq!(
                catalog.is_directly_indecomposable(&a),
                is_directly_indecomposable_exhaustive(&a, &b).unwrap()
            );
        }
    }

    #[test]
    fn isotropy_conditions_are_independent() {
        let b = Budget::default();
        for (q, n_max) in [(2, 4), (3, 3)] {
            for n in 1..=n_max {
                for c in 1..=n {
                    for parts in compositions(n, c) {
                        for d in enumerate_ordered_decompositions(n, &parts, q, &b).unwrap() {
                            let iso = d.isotropy_functionals();
                            let rank = if iso.is_empty() {
                                0
                            } else {
                                FqMatrix::from_rows(f(q), choose2(n), &iso).rank()
                            };
                            assert_eq!(rank, parts.inner_pairs());
                            assert_eq!(d.isotropic_locus().dim(), choose2(n) - parts.inner_pairs());
                            assert_eq!(d.orthogonal_locus().dim(), parts.inner_pairs());
                        }
                    }
                }
            }
        }
    }
}
