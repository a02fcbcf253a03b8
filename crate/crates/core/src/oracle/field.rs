//! Dense linear algebra over small prime fields.

use std::fmt;

use crate::error::{Error, Result};

/// A prime field `F_p` with `p` in {2, 3, 5}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeField {
    p: u8,
}

impl PrimeField {
    pub fn new(q: u64) -> Result<Self> {
        match q {
            2 | 3 | 5 => Ok(Self { p: q as u8 }),
            _ => Err(Error::UnsupportedField(q)),
        }
    }

    pub fn order(self) -> u8 {
        self.p
    }

    #[inline]
    pub fn add(self, a: u8, b: u8) -> u8 {
        (a + b) % self.p
    }

    #[inline]
    pub fn sub(self, a: u8, b: u8) -> u8 {
        (a + self.p - b) % self.p
    }

    #[inline]
    pub fn mul(self, a: u8, b: u8) -> u8 {
        (a * b) % self.p
    }

    #[inline]
    pub fn neg(self, a: u8) -> u8 {
        (self.p - a) % self.p
    }

    pub fn inv(self, a: u8) -> u8 {
        assert!(!a.is_multiple_of(self.p), "zero has no inverse");
        (1..self.p)
            .find(|&b| self.mul(a, b) == 1)
            .expect("field element without inverse")
    }

    pub fn dot(self, a: &[u8], b: &[u8]) -> u8 {
        debug_assert_eq!(a.len(), b.len());
        let s: u32 = a.iter().zip(b).map(|(&x, &y)| x as u32 * y as u32).sum();
        (s % self.p as u32) as u8
    }
}

/// Row-major `rows x cols` matrix with entries in `[0, p)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FqMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl FqMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Self {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from rows, reducing every entry mod `p`.
    pub fn from_rows<R: AsRef<[u8]>>(field: PrimeField, cols: usize, rows: &[R]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().map(|&x| x % field.p));
        }
        Self {
            field,
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn num_rows(&self) -> usize {
        self.rows
    }

    pub fn num_cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u8) {
        self.data[i * self.cols + j] = v % self.field.p;
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u8]> + '_ {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, rhs: &FqMatrix) -> FqMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in matrix product");
        let f = self.field;
        let mut out = Self::zeros(f, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = f.add(out.get(i, j), f.mul(a, rhs.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &FqMatrix) -> FqMatrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Self {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Reduced row-echelon form, in place. Returns the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field;
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.get(i, col) != 0) else {
                continue;
            };
            self.swap_rows(r, pr);
            let inv = f.inv(self.get(r, col));
            for j in 0..self.cols {
                let v = f.mul(self.get(r, j), inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                let factor = self.get(i, col);
                if i == r || factor == 0 {
                    continue;
                }
                for j in col..self.cols {
                    let v = f.sub(self.get(i, j), f.mul(factor, self.get(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(col);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// RREF with the zero rows dropped, plus the pivot columns.
    pub fn rref(&self) -> (FqMatrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        m.data.truncate(pivots.len() * m.cols);
        m.rows = pivots.len();
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.clone().rref_in_place().len()
    }

    /// Basis (as rows) of `{ v : self * v = 0 }`.
    pub fn kernel(&self) -> FqMatrix {
        let f = self.field;
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Self::zeros(f, free.len(), self.cols);
        for (k, &fc) in free.iter().enumerate() {
            out.set(k, fc, 1);
            for (i, &pc) in pivots.iter().enumerate() {
                out.set(k, pc, f.neg(r.get(i, fc)));
            }
        }
        out
    }
}

impl fmt::Debug for FqMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "FqMatrix<F_{}>({} x {})",
            self.field.p, self.rows, self.cols
        )?;
        for r in self.rows() {
            writeln!(f, "  {r:?}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn only_small_primes() {
        assert!(PrimeField::new(2).is_ok());
        assert!(PrimeField::new(5).is_ok());
        assert_eq!(PrimeField::new(4), Err(Error::UnsupportedField(4)));
        assert_eq!(PrimeField::new(7), Err(Error::UnsupportedField(7)));
    }

    #[test]
    fn inverses() {
        for p in [2, 3, 5] {
            let f = PrimeField::new(p).unwrap();
            for a in 1..p as u8 {
                assert_eq!(f.mul(a, f.inv(a)), 1);
            }
        }
    }

    #[test]
    fn rref_and_kernel_over_f3() {
        let f = PrimeField::new(3).unwrap();
        let m = FqMatrix::from_rows(f, 3, &[[1, 2, 0], [2, 1, 0], [0, 0, 1]]);
        // second row is twice the first
        assert_eq!(m.rank(), 2);
        let k = m.kernel();
        assert_eq!(k.num_rows(), 1);
        assert!(m.mul(&k.transpose()).is_zero());
        let (r, pivots) = m.rref();
        assert_eq!(pivots, vec![0, 2]);
        assert_eq!(r.row(0), &[1, 2, 0]);
    }

    #[test]
    fn kernel_dimension_is_nullity() {
        let f = PrimeField::new(2).unwrap();
        let m = FqMatrix::from_rows(f, 4, &[[1, 1, 0, 0], [0, 1, 1, 0], [1, 0, 1, 0]]);
        let k = m.kernel();
        assert_eq!(k.num_rows() + m.rank(), 4);
        assert!(m.mul(&k.transpose()).is_zero());
    }
}
