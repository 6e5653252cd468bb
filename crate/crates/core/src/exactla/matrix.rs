//! Dense matrices over a prime field.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::{PrimeField, Scalar};
use crate::error::{Error, Result};

/// A dense row-major matrix over `F_p`. Zero rows or zero columns are allowed
/// and stand for maps to or from the zero space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// Reduced row echelon form of a matrix together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    /// Builds a matrix from row-major canonical entries.
    pub fn new(field: PrimeField, rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|&&x| x >= field.modulus()) {
            return Err(Error::Shape(format!(
                "entry {bad} is not a canonical element of {field}"
            )));
        }
        Ok(Matrix {
            field,
            rows,
            cols,
            data,
        })
    }

    /// Builds a matrix from integer rows, reducing every entry mod p.
    /// `cols` is taken from the first row; a matrix without rows has zero columns.
    pub fn from_rows<R: AsRef<[i64]>>(field: PrimeField, rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(Error::Shape("ragged rows".into()));
            }
            data.extend(row.iter().map(|&x| field.elem(x).value()));
        }
        Ok(Matrix {
            field,
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % field.modulus();
        }
        m
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

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    /// Canonical representative of entry `(r, c)`.
    #[inline]
    pub fn entry(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        self.field.elem(self.entry(r, c) as i64)
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: u32) {
        debug_assert!(value < self.field.modulus());
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.entry(r, c);
            }
        }
        t
    }

    pub fn scale(&self, s: Scalar) -> Matrix {
        let mut out = self.clone();
        for x in &mut out.data {
            *x = self.field.mul(*x, s.value());
        }
        out
    }

    fn check_field(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(
                self.field.modulus(),
                other.field.modulus(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.shape() != other.shape() {
            return Err(Error::Shape(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| self.field.add(a, b))
            .collect();
        Ok(Matrix {
            data,
            ..self.clone()
        })
    }

    /// The product `self * other`.
    pub fn multiply(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let p = self.field.modulus() as u64;
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        let mut acc = vec![0u64; other.cols];
        for r in 0..self.rows {
            acc.iter_mut().for_each(|x| *x = 0);
            for k in 0..self.cols {
                let a = self.entry(r, k) as u64;
                if a == 0 {
                    continue;
                }
                for (slot, &b) in acc.iter_mut().zip(other.row(k)) {
                    *slot = (*slot + a * b as u64) % p;
                }
            }
            for (c, &v) in acc.iter().enumerate() {
                out.data[r * other.cols + c] = v as u32;
            }
        }
        Ok(out)
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.rows != other.rows {
            return Err(Error::Shape(format!(
                "cannot stack {} rows beside {} rows",
                self.rows, other.rows
            )));
        }
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            data.extend_from_slice(self.row(r));
            data.extend_from_slice(other.row(r));
        }
        Ok(Matrix {
            field: self.field,
            rows: self.rows,
            cols,
            data,
        })
    }

    /// Columns `start..end` as a new matrix.
    pub fn columns(&self, start: usize, end: usize) -> Matrix {
        assert!(start <= end && end <= self.cols);
        let cols = end - start;
        let mut data = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            data.extend_from_slice(&self.row(r)[start..end]);
        }
        Matrix {
            field: self.field,
            rows: self.rows,
            cols,
            data,
        }
    }

    /// Block-diagonal matrix `diag(self, other)`.
    pub fn block_diagonal(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        let mut out = Matrix::zeros(
            self.field,
            self.rows + other.rows,
            self.cols + other.cols,
        );
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.entry(r, c));
            }
        }
        for r in 0..other.rows {
            for c in 0..other.cols {
                out.set(self.rows + r, self.cols + c, other.entry(r, c));
            }
        }
        Ok(out)
    }

    /// Row reduction to reduced echelon form. The pivot in each column is the
    /// first nonzero entry at or below the current row.
    pub fn echelon(&self) -> Echelon {
        let mut m = self.clone();
        let pivots = m.reduce_in_place(self.cols);
        Echelon { reduced: m, pivots }
    }

    /// Reduces using only the first `pivot_cols` columns as pivot candidates,
    /// applying the same row operations to the remaining columns.
    fn reduce_in_place(&mut self, pivot_cols: usize) -> Vec<usize> {
        let f = self.field;
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..pivot_cols {
            if row == self.rows {
                break;
            }
            let Some(found) = (row..self.rows).find(|&r| self.entry(r, col) != 0) else {
                continue;
            };
            if found != row {
                for c in 0..cols {
                    self.data.swap(found * cols + c, row * cols + c);
                }
            }
            let inv = f.inv(self.entry(row, col)).expect("pivot is nonzero");
            for c in col..cols {
                let v = self.entry(row, c);
                self.set(row, c, f.mul(v, inv));
            }
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let factor = self.entry(r, col);
                if factor == 0 {
                    continue;
                }
                for c in col..cols {
                    let v = f.sub(self.entry(r, c), f.mul(factor, self.entry(row, c)));
                    self.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// A basis of the null space, as the columns of a `cols x nullity` matrix.
    pub fn kernel_basis(&self) -> Matrix {
        let Echelon { reduced, pivots } = self.echelon();
        let f = self.field;
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut basis = Matrix::zeros(f, self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            basis.set(fc, k, 1 % f.modulus());
            for (r, &pc) in pivots.iter().enumerate() {
                basis.set(pc, k, f.neg(reduced.entry(r, fc)));
            }
        }
        basis
    }

    /// Some `X` with `self * X = target`, or `None` if the system is inconsistent.
    pub fn solve_right(&self, target: &Matrix) -> Result<Option<Matrix>> {
        self.check_field(target)?;
        if self.rows != target.rows {
            return Err(Error::Shape(format!(
                "cannot solve a {}-row system against a {}-row target",
                self.rows, target.rows
            )));
        }
        let mut aug = self.hstack(target)?;
        let pivots = aug.reduce_in_place(self.cols);
        let rank = pivots.len();
        for r in rank..aug.rows {
            if aug.row(r)[self.cols..].iter().any(|&x| x != 0) {
                return Ok(None);
            }
        }
        let mut x = Matrix::zeros(self.field, self.cols, target.cols);
        for (r, &pc) in pivots.iter().enumerate() {
            for c in 0..target.cols {
                x.set(pc, c, aug.entry(r, self.cols + c));
            }
        }
        Ok(Some(x))
    }

    /// Inverse of a square matrix, `None` if singular.
    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let id = Matrix::identity(self.field, self.rows);
        let x = self.solve_right(&id).ok()??;
        // A consistent solve of A X = I for square A already forces invertibility.
        Some(x)
    }

    /// A uniformly drawn invertible `n x n` matrix, reproducible from `seed`.
    pub fn random_invertible(field: PrimeField, n: usize, seed: u64) -> Matrix {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self::random_invertible_with(field, n, &mut rng)
    }

    pub(crate) fn random_invertible_with<R: Rng>(field: PrimeField, n: usize, rng: &mut R) -> Matrix {
        let p = field.modulus();
        loop {
            let data = (0..n * n).map(|_| rng.gen_range(0..p)).collect();
            let m = Matrix {
                field,
                rows: n,
                cols: n,
                data,
            };
            if m.rank() == n {
                return m;
            }
        }
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for (c, x) in self.row(r).iter().enumerate() {
                if c > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn m(p: u64, rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(f(p), rows).unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::identity(f(5), 3).rank(), 3);
        assert_eq!(Matrix::zeros(f(5), 2, 4).rank(), 0);
        assert_eq!(m(5, &[&[1, 2], &[2, 4]]).rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        let k = Matrix::identity(f(5), 2).kernel_basis();
        assert_eq!(k.shape(), (2, 0));

        let k = Matrix::zeros(f(5), 1, 3).kernel_basis();
        assert_eq!(k, Matrix::identity(f(5), 3));

        // x1 + x2 = 0 over F_5 is spanned by (1, 4).
        let k = m(5, &[&[1, 1]]).kernel_basis();
        assert_eq!(k.shape(), (2, 1));
        let v = (k.entry(0, 0), k.entry(1, 0));
        let s = f(5).elem(v.0 as i64).inv().unwrap();
        assert_eq!((1, f(5).mul(v.1, s.value())), (1, 4));
    }

    #[test]
    fn multiply_examples() {
        let a = m(5, &[&[1, 2, 3], &[4, 0, 1]]);
        assert_eq!(Matrix::identity(f(5), 2).multiply(&a).unwrap(), a);
        let wide = Matrix::zeros(f(5), 3, 0);
        assert_eq!(a.multiply(&wide).unwrap().shape(), (2, 0));
        assert_eq!(m(5, &[&[2]]).multiply(&m(5, &[&[3]])).unwrap(), m(5, &[&[1]]));
        assert!(a.multiply(&a).is_err());
    }

    #[test]
    fn empty_products_are_zero_maps() {
        let a = Matrix::zeros(f(7), 2, 0);
        let b = Matrix::zeros(f(7), 0, 3);
        let c = a.multiply(&b).unwrap();
        assert_eq!(c, Matrix::zeros(f(7), 2, 3));
    }

    #[test]
    fn solve_examples() {
        let t = m(5, &[&[1, 2], &[3, 4]]);
        let id = Matrix::identity(f(5), 2);
        assert_eq!(id.solve_right(&t).unwrap(), Some(t.clone()));
        assert_eq!(Matrix::zeros(f(5), 2, 2).solve_right(&t).unwrap(), None);

        let a = m(5, &[&[1, 1]]);
        let target = m(5, &[&[3]]);
        let x = a.solve_right(&target).unwrap().unwrap();
        assert_eq!(a.multiply(&x).unwrap(), target);
    }

    #[test]
    fn random_invertible_examples() {
        assert_eq!(Matrix::random_invertible(f(7), 0, 1).shape(), (0, 0));
        for seed in 0..20 {
            let one = Matrix::random_invertible(f(7), 1, seed);
            assert_ne!(one.entry(0, 0), 0);
        }
        let m4 = Matrix::random_invertible(f(7), 4, 42);
        assert_eq!(m4.rank(), 4);
        assert_eq!(m4, Matrix::random_invertible(f(7), 4, 42));
        let inv = m4.inverse().unwrap();
        assert_eq!(m4.multiply(&inv).unwrap(), Matrix::identity(f(7), 4));
    }

    #[test]
    fn rejects_noncanonical_entries() {
        assert!(Matrix::new(f(5), 1, 1, vec![5]).is_err());
        assert!(Matrix::new(f(5), 1, 2, vec![1]).is_err());
    }
}
