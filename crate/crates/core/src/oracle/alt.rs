//! Alternating matrix spaces `A <= Λ(n, p)` in strictly-upper-triangular
//! coordinates.
//!
//! An alternating matrix is determined by its entries above the diagonal;
//! coordinate `(i, j)`, `i < j`, is laid out row-major, so `Λ(n, p)` is
//! identified with `F_p^{C(n,2)}`. Unpacking sets `A[j][i] = -A[i][j]` and a
//! zero diagonal, which is also the right notion in characteristic 2.

use super::field::{FqMatrix, PrimeField};
use super::subspace::Subspace;
use crate::error::{Error, Result};
use crate::qcalc::choose2;

/// Index of entry `(i, j)`, `i < j`, among the `C(n,2)` coordinates.
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

/// The coordinate functional `A -> u^t A w` on `Λ(n, p)`.
///
/// Its `(a, b)` coefficient is `u_a w_b - u_b w_a`.
pub fn pairing_functional(field: PrimeField, u: &[u8], w: &[u8]) -> Vec<u8> {
    let n = u.len();
    let mut out = Vec::with_capacity(choose2(n));
    for a in 0..n {
        for b in a + 1..n {
            out.push(field.sub(field.mul(u[a], w[b]), field.mul(u[b], w[a])));
        }
    }
    out
}

/// A subspace of `Λ(n, p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AltSpace {
    n: usize,
    space: Subspace,
}

impl AltSpace {
    pub fn new(n: usize, space: Subspace) -> Result<Self> {
        if space.ambient_dim() != choose2(n) {
            return Err(Error::InvalidArgument(format!(
                "alternating space of size {n} needs ambient dimension {}, got {}",
                choose2(n),
                space.ambient_dim()
            )));
        }
        Ok(Self { n, space })
    }

    pub fn zero(field: PrimeField, n: usize) -> Self {
        Self {
            n,
            space: Subspace::zero(field, choose2(n)),
        }
    }

    pub fn full(field: PrimeField, n: usize) -> Self {
        Self {
            n,
            space: Subspace::full(field, choose2(n)),
        }
    }

    /// Span of explicit `n x n` matrices, which must be alternating.
    pub fn from_matrices(field: PrimeField, n: usize, matrices: &[FqMatrix]) -> Result<Self> {
        let mut rows = Vec::with_capacity(matrices.len());
        for m in matrices {
            if m.num_rows() != n || m.num_cols() != n {
                return Err(Error::InvalidArgument("matrix has the wrong shape".into()));
            }
            for i in 0..n {
                if m.get(i, i) != 0 {
                    return Err(Error::InvalidArgument(
                        "alternating matrix needs a zero diagonal".into(),
                    ));
                }
                for j in i + 1..n {
                    if m.get(j, i) != field.neg(m.get(i, j)) {
                        return Err(Error::InvalidArgument(
                            "matrix is not skew-symmetric".into(),
                        ));
                    }
                }
            }
            rows.push(pack(m));
        }
        Ok(Self {
            n,
            space: Subspace::from_vectors(field, choose2(n), &rows),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> PrimeField {
        self.space.field()
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    /// Basis elements as coordinate vectors.
    pub fn basis_coords(&self) -> impl Iterator<Item = &[u8]> + '_ {
        self.space.basis().rows()
    }

    pub fn basis_matrices(&self) -> Vec<FqMatrix> {
        self.basis_coords()
            .map(|c| unpack(self.field(), self.n, c))
            .collect()
    }

    /// `{ v : A v = 0 for all A in the space }`.
    pub fn radical(&self) -> Subspace {
        let f = self.field();
        let stacked = self
            .basis_matrices()
            .iter()
            .fold(FqMatrix::zeros(f, 0, self.n), |acc, m| acc.vstack(m));
        Subspace::span(&stacked.kernel())
    }

    pub fn is_degenerate(&self) -> bool {
        !self.radical().is_zero()
    }

    /// `{ T^t A T }` where the columns of `T` are the basis of `u`, as a
    /// subspace of `Λ(dim u, p)`.
    pub fn restriction(&self, u: &Subspace) -> AltSpace {
        assert_eq!(
            u.ambient_dim(),
            self.n,
            "restriction to a subspace of the wrong ambient space"
        );
        let f = self.field();
        let k = u.dim();
        let functionals: Vec<Vec<u8>> = (0..k)
            .flat_map(|s| (s + 1..k).map(move |t| (s, t)))
            .map(|(s, t)| pairing_functional(f, u.basis().row(s), u.basis().row(t)))
            .collect();
        let rows: Vec<Vec<u8>> = self
            .basis_coords()
            .map(|a| functionals.iter().map(|func| f.dot(a, func)).collect())
            .collect();
        AltSpace {
            n: k,
            space: Subspace::from_vectors(f, choose2(k), &rows),
        }
    }

    pub fn restriction_dim(&self, u: &Subspace) -> usize {
        self.restriction(u).dim()
    }

    /// `u^t A u' = 0` for all basis vectors `u, u'` of `u` and basis `A`.
    pub fn is_totally_isotropic(&self, u: &Subspace) -> bool {
        let f = self.field();
        let b = u.basis();
        for s in 0..b.num_rows() {
            for t in s + 1..b.num_rows() {
                let func = pairing_functional(f, b.row(s), b.row(t));
                if self.basis_coords().any(|a| f.dot(a, &func) != 0) {
                    return false;
                }
            }
        }
        true
    }

    /// `u^t A w` for the basis element `A` with coordinates `coords`.
    pub fn pairing(field: PrimeField, coords: &[u8], u: &[u8], w: &[u8]) -> u8 {
        field.dot(coords, &pairing_functional(field, u, w))
    }

    /// Whether every basis element is annihilated by every functional.
    pub fn annihilated_by(&self, functionals: &[Vec<u8>]) -> bool {
        let f = self.field();
        functionals
            .iter()
            .all(|func| self.basis_coords().all(|a| f.dot(a, func) == 0))
    }
}

pub fn pack(m: &FqMatrix) -> Vec<u8> {
    let n = m.num_rows();
    let mut out = Vec::with_capacity(choose2(n));
    for i in 0..n {
        for j in i + 1..n {
            out.push(m.get(i, j));
        }
    }
    out
}

pub fn unpack(field: PrimeField, n: usize, coords: &[u8]) -> FqMatrix {
    let mut m = FqMatrix::zeros(field, n, n);
    for i in 0..n {
        for j in i + 1..n {
            let x = coords[pair_index(n, i, j)];
            m.set(i, j, x);
            m.set(j, i, field.neg(x));
        }
    }
    m
}

/// Elementary alternating matrix `A_{i,j}`: `+1` at `(i, j)`, `-1` at `(j, i)`.
pub fn elementary(field: PrimeField, n: usize, i: usize, j: usize) -> FqMatrix {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    let mut coords = vec![0; choose2(n)];
    coords[pair_index(n, i, j)] = 1;
    unpack(field, n, &coords)
}

/// `A_G = <A_{i,j} : {i,j} in E>` for a graph on vertices `0..n`.
pub fn graph_to_altspace(edges: &[(usize, usize)], n: usize, q: u64) -> Result<AltSpace> {
    let field = PrimeField::new(q)?;
    let mut rows = Vec::with_capacity(edges.len());
    for &(i, j) in edges {
        if i == j || i >= n || j >= n {
            return Err(Error::InvalidArgument(format!(
                "({i}, {j}) is not an edge on {n} vertices"
            )));
        }
        let mut v = vec![0; choose2(n)];
        v[pair_index(n, i.min(j), i.max(j))] = 1;
        rows.push(v);
    }
    Ok(AltSpace {
        n,
        space: Subspace::from_vectors(field, choose2(n), &rows),
    })
}
