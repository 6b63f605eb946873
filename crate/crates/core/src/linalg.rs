//! Dense matrices over a prime field `F_p` and Gaussian elimination.

use std::fmt;

use crate::error::{Error, Result};

pub const DEFAULT_CHARACTERISTIC: u32 = 32003;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) || p > u32::MAX as u64 {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p: p as u32 })
    }

    pub fn characteristic(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.p as u64) as u32
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        ((a as u64 + self.p as u64 - b as u64) % self.p as u64) as u32
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        self.sub(0, a)
    }

    pub fn inv(self, a: u32) -> u32 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero");
        self.pow(a, self.p as u64 - 2)
    }

    pub fn pow(self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Image of a signed integer.
    pub fn from_i64(self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField { p: DEFAULT_CHARACTERISTIC }
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut q = 2u64;
    while q * q <= p {
        if p.is_multiple_of(q) {
            return false;
        }
        q += 1;
    }
    true
}

/// Row-major dense matrix with entries reduced mod `p`.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for FieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldMatrix[{}x{} mod {}]", self.rows, self.cols, self.field.p)?;
        for r in 0..self.rows {
            write!(f, "\n  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl FieldMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        FieldMatrix { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: PrimeField, size: usize) -> Self {
        let mut m = Self::zeros(field, size, size);
        for i in 0..size {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(field: PrimeField, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let data = rows.iter().flatten().map(|&v| field.from_i64(v)).collect();
        FieldMatrix { field, rows: rows.len(), cols, data }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.field.p;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn mul(&self, other: &FieldMatrix) -> FieldMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let f = self.field;
        let mut out = FieldMatrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * out.cols + j;
                    out.data[idx] = f.add(out.data[idx], f.mul(a, other.get(k, j)));
                }
            }
        }
        out
    }

    pub fn scale(&self, c: u32) -> FieldMatrix {
        let f = self.field;
        FieldMatrix { data: self.data.iter().map(|&v| f.mul(v, c)).collect(), ..self.clone() }
    }

    pub fn add(&self, other: &FieldMatrix) -> FieldMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        FieldMatrix { data, ..self.clone() }
    }

    pub fn sub(&self, other: &FieldMatrix) -> FieldMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        FieldMatrix { data, ..self.clone() }
    }

    /// Brings the matrix to reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let f = self.field;
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| self.get(r, col) != 0) else { continue };
            if p != row {
                for c in 0..self.cols {
                    self.data.swap(p * self.cols + c, row * self.cols + c);
                }
            }
            let inv = f.inv(self.get(row, col));
            for c in col..self.cols {
                let idx = row * self.cols + c;
                self.data[idx] = f.mul(self.data[idx], inv);
            }
            for r in 0..self.rows {
                let factor = self.get(r, col);
                if r == row || factor == 0 {
                    continue;
                }
                for c in col..self.cols {
                    let pv = self.data[row * self.cols + c];
                    let idx = r * self.cols + c;
                    self.data[idx] = f.sub(self.data[idx], f.mul(factor, pv));
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    /// Basis of `{v : self * v = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<u32>> {
        let f = self.field;
        let mut m = self.clone();
        let pivots = m.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![0; self.cols];
                v[free] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(m.get(r, free));
                }
                v
            })
            .collect()
    }
}

pub fn rank(m: &FieldMatrix) -> usize {
    m.clone().rref().len()
}

/// Rank of a family of vectors of equal length.
pub fn rank_of_vectors(field: PrimeField, vectors: &[Vec<u32>]) -> usize {
    let Some(first) = vectors.first() else { return 0 };
    let mut m = FieldMatrix::zeros(field, vectors.len(), first.len());
    for (r, v) in vectors.iter().enumerate() {
        m.data[r * m.cols..(r + 1) * m.cols].copy_from_slice(v);
    }
    rank(&m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rank_examples() {
        let f = PrimeField::default();
        assert_eq!(rank(&FieldMatrix::identity(f, 3)), 3);
        assert_eq!(rank(&FieldMatrix::zeros(f, 2, 5)), 0);
        assert_eq!(rank(&FieldMatrix::from_rows(f, &[vec![1, 2], vec![2, 4]])), 1);
        // Characteristic matters: this matrix is singular only mod 2.
        let m = |p| FieldMatrix::from_rows(PrimeField::new(p).unwrap(), &[vec![1, 1], vec![1, -1]]);
        assert_eq!(rank(&m(2)), 1);
        assert_eq!(rank(&m(32003)), 2);
    }

    #[test]
    fn primes() {
        assert!(PrimeField::new(2).is_ok());
        assert!(PrimeField::new(32003).is_ok());
        assert_eq!(PrimeField::new(32004), Err(Error::NotPrime(32004)));
        assert!(PrimeField::new(1).is_err());
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.mul(3, f.inv(3)), 1);
        assert_eq!(f.from_i64(-1), 6);
    }

    #[test]
    fn nullspace_is_kernel() {
        let f = PrimeField::new(5).unwrap();
        let m = FieldMatrix::from_rows(f, &[vec![1, 2, 3, 4], vec![2, 4, 1, 3]]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 4 - rank(&m));
        for v in ns {
            let col = FieldMatrix::from_rows(f, &v.iter().map(|&x| vec![x as i64]).collect::<Vec<_>>());
            assert!(m.mul(&col).is_zero());
        }
    }

    fn small_matrix() -> impl Strategy<Value = (usize, usize, Vec<i64>)> {
        (1usize..6, 1usize..6)
            .prop_flat_map(|(r, c)| (Just(r), Just(c), proptest::collection::vec(-3i64..4, r * c)))
    }

    proptest! {
        #[test]
        fn rank_invariant_under_permutation((r, c, vals) in small_matrix(), seed in any::<u64>()) {
            let f = PrimeField::new(3).unwrap();
            let rows: Vec<Vec<i64>> = vals.chunks(c).map(<[i64]>::to_vec).collect();
            let m = FieldMatrix::from_rows(f, &rows);
            let mut perm_r: Vec<usize> = (0..r).collect();
            let mut perm_c: Vec<usize> = (0..c).collect();
            perm_r.rotate_left((seed % r as u64) as usize);
            perm_c.reverse();
            perm_c.rotate_left(((seed >> 8) % c as u64) as usize);
            let permuted: Vec<Vec<i64>> =
                perm_r.iter().map(|&i| perm_c.iter().map(|&j| rows[i][j]).collect()).collect();
            let pm = FieldMatrix::from_rows(f, &permuted);
            prop_assert_eq!(rank(&m), rank(&pm));
            prop_assert!(rank(&m) <= r.min(c));
        }
    }
}
