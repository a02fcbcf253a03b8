//! Subspaces of `F_p^m` in canonical RREF form, and their exhaustive
//! enumeration.

use super::field::{FqMatrix, PrimeField};
use super::Budget;
use crate::error::Result;
use crate::qcalc::{galois_number, gauss_binom};

/// A subspace of `F_p^m`, stored as its reduced row-echelon basis.
///
/// RREF is canonical, so two subspaces are equal iff their bases are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    basis: FqMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: PrimeField, ambient_dim: usize) -> Self {
        Self {
            basis: FqMatrix::zeros(field, 0, ambient_dim),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: PrimeField, ambient_dim: usize) -> Self {
        Self {
            basis: FqMatrix::identity(field, ambient_dim),
            pivots: (0..ambient_dim).collect(),
        }
    }

    /// Span of the rows of `generators`.
    pub fn span(generators: &FqMatrix) -> Self {
        let (basis, pivots) = generators.rref();
        Self { basis, pivots }
    }

    pub fn from_vectors<R: AsRef<[u8]>>(
        field: PrimeField,
        ambient_dim: usize,
        vectors: &[R],
    ) -> Self {
        Self::span(&FqMatrix::from_rows(field, ambient_dim, vectors))
    }

    /// `<e_i : i in coords>`.
    pub fn coordinate(field: PrimeField, ambient_dim: usize, coords: &[usize]) -> Self {
        let rows: Vec<Vec<u8>> = coords
            .iter()
            .map(|&i| {
                let mut v = vec![0; ambient_dim];
                v[i] = 1;
                v
            })
            .collect();
        Self::from_vectors(field, ambient_dim, &rows)
    }

    pub fn field(&self) -> PrimeField {
        self.basis.field()
    }

    pub fn dim(&self) -> usize {
        self.basis.num_rows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.num_cols()
    }

    pub fn basis(&self) -> &FqMatrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// `self + other`.
    pub fn sum(&self, other: &Subspace) -> Subspace {
        Self::span(&self.basis.vstack(&other.basis))
    }

    pub fn contains(&self, v: &[u8]) -> bool {
        let single = FqMatrix::from_rows(self.field(), self.ambient_dim(), &[v]);
        self.basis.vstack(&single).rank() == self.dim()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        other.sum(self).dim() == other.dim()
    }
}

/// Subspaces sharing one pivot pattern: the RREF bases with pivot columns
/// `pivots`, parametrized by their free entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PivotClass {
    field: PrimeField,
    ambient_dim: usize,
    pivots: Vec<usize>,
    free: Vec<(usize, usize)>,
}

impl PivotClass {
    fn new(field: PrimeField, ambient_dim: usize, pivots: Vec<usize>) -> Self {
        let mut free = Vec::new();
        for (row, &pc) in pivots.iter().enumerate() {
            for col in pc + 1..ambient_dim {
                if !pivots.contains(&col) {
                    free.push((row, col));
                }
            }
        }
        Self {
            field,
            ambient_dim,
            pivots,
            free,
        }
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// `p^(number of free entries)`.
    pub fn len(&self) -> u64 {
        (self.field.order() as u64).pow(self.free.len() as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn iter(&self) -> impl Iterator<Item = Subspace> + '_ {
        (0..self.len()).map(move |code| self.nth(code))
    }

    pub fn into_subspaces(self) -> impl Iterator<Item = Subspace> {
        (0..self.len()).map(move |code| self.nth(code))
    }

    /// The subspace whose free entries are the base-`p` digits of `code`.
    fn nth(&self, mut code: u64) -> Subspace {
        let p = self.field.order() as u64;
        let mut basis = FqMatrix::zeros(self.field, self.dim(), self.ambient_dim);
        for (row, &pc) in self.pivots.iter().enumerate() {
            basis.set(row, pc, 1);
        }
        for &(row, col) in &self.free {
            basis.set(row, col, (code % p) as u8);
            code /= p;
        }
        Subspace {
            basis,
            pivots: self.pivots.clone(),
        }
    }
}

fn combinations(m: usize, d: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, m: usize, d: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            if m - i < d - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, m, d, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, m, d, &mut Vec::with_capacity(d), &mut out);
    out
}

/// Pivot classes of dimension-`d` subspaces of `F_p^m`, pivots in lex order.
pub fn pivot_classes_of_dim(field: PrimeField, m: usize, d: usize) -> Vec<PivotClass> {
    combinations(m, d)
        .into_iter()
        .map(|pivots| PivotClass::new(field, m, pivots))
        .collect()
}

/// All pivot classes of `F_p^m`, grouped by dimension `0..=m`.
pub fn pivot_classes(field: PrimeField, m: usize) -> Vec<PivotClass> {
    (0..=m)
        .flat_map(|d| pivot_classes_of_dim(field, m, d))
        .collect()
}

/// Every subspace of `F_q^m` exactly once, grouped by dimension.
pub fn enumerate_subspaces(
    m: usize,
    q: u64,
    budget: &Budget,
) -> Result<impl Iterator<Item = Subspace>> {
    let field = PrimeField::new(q)?;
    budget.check(&format!("subspaces of F_{q}^{m}"), &galois_number(m, q))?;
    Ok(pivot_classes(field, m)
        .into_iter()
        .flat_map(PivotClass::into_subspaces))
}

/// Every `d`-dimensional subspace of `F_q^m`.
pub fn subspaces_of_dim(m: usize, d: usize, q: u64, budget: &Budget) -> Result<Vec<Subspace>> {
    let field = PrimeField::new(q)?;
    budget.check(
        &format!("{d}-dimensional subspaces of F_{q}^{m}"),
        &gauss_binom(m, d, q),
    )?;
    Ok(pivot_classes_of_dim(field, m, d)
        .iter()
        .flat_map(|c| c.iter())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;
    use std::collections::HashSet;

    fn class_total(classes: &[PivotClass]) -> BigUint {
        classes.iter().map(|c| BigUint::from(c.len())).sum()
    }

    fn f(q: u64) -> PrimeField {
        PrimeField::new(q).unwrap()
    }

    #[test]
    fn small_censuses() {
        let b = Budget::default();
        assert_eq!(enumerate_subspaces(3, 2, &b).unwrap().count(), 16);
        assert_eq!(enumerate_subspaces(0, 3, &b).unwrap().count(), 1);
        assert_eq!(enumerate_subspaces(2, 3, &b).unwrap().count(), 6);
    }

    #[test]
    fn enumeration_is_canonical_and_distinct() {
        let b = Budget::default();
        for (m, q) in [(4, 2), (3, 3), (2, 5)] {
            let all: Vec<Subspace> = enumerate_subspaces(m, q, &b).unwrap().collect();
            let set: HashSet<_> = all.iter().cloned().collect();
            assert_eq!(set.len(), all.len());
            for s in &all {
                // re-reducing a canonical basis is a no-op
                assert_eq!(&Subspace::span(s.basis()), s);
            }
            assert!(all.windows(2).all(|w| w[0].dim() <= w[1].dim()));
        }
    }

    #[test]
    fn budget_refusal() {
        let tight = Budget::new(10);
        assert!(enumerate_subspaces(3, 2, &tight).is_err());
        assert!(enumerate_subspaces(2, 2, &tight).is_ok());
        assert!(enumerate_subspaces(2, 4, &Budget::default()).is_err());
    }

    #[test]
    fn sums_and_containment() {
        let a = Subspace::coordinate(f(2), 3, &[0]);
        let b = Subspace::from_vectors(f(2), 3, &[[1, 1, 0]]);
        let s = a.sum(&b);
        assert_eq!(s, Subspace::coordinate(f(2), 3, &[0, 1]));
        assert!(s.contains(&[0, 1, 0]));
        assert!(!s.contains(&[0, 0, 1]));
        assert!(a.is_subspace_of(&s));
        assert!(Subspace::zero(f(2), 3).is_subspace_of(&a));
        assert_eq!(Subspace::full(f(3), 2).dim(), 2);
    }

    #[test]
    fn class_sizes_sum_to_galois_number() {
        for (m, q) in [(5, 2), (4, 3)] {
            assert_eq!(class_total(&pivot_classes(f(q), m)), galois_number(m, q));
        }
    }
}
