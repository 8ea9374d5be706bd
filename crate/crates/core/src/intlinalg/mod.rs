//! Exact integer linear algebra: sparse integer matrices, Smith normal form,
//! cokernels and the graded groups built from them.

mod graded;
mod snf;

pub use graded::{GradedGroup, GroupPiece};
pub use snf::{
    cokernel, determinant, kernel_basis, rank_rational, smith_normal_form,
    smith_normal_form_with, solve, Cokernel, SnfFlags, SnfResult,
};

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::Error;

/// Upper bounds on the size of the linear-algebra problems a computation may
/// build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_nonzeros: usize,
}

impl Limits {
    pub const DEFAULT_MAX_NONZEROS: usize = 200_000;

    pub fn new(max_nonzeros: usize) -> Self {
        Limits { max_nonzeros }
    }

    pub fn check(&self, m: &IntMatrix) -> Result<(), Error> {
        if m.nnz() > self.max_nonzeros {
            return Err(Error::ResourceCap { nonzeros: m.nnz(), cap: self.max_nonzeros });
        }
        Ok(())
    }
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_nonzeros: Self::DEFAULT_MAX_NONZEROS }
    }
}

/// A sparse matrix over the integers. Absent entries are zero; stored
/// entries are never zero.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn diagonal<T: Into<BigInt> + Clone>(diag: &[T]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, d) in diag.iter().enumerate() {
            m.set(i, i, d.clone().into());
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(nrows, ncols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, v.clone().into());
            }
        }
        m
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`, given as sparse
    /// `(row, value)` lists. Repeated rows within a column are summed.
    pub fn from_columns(rows: usize, columns: &[Vec<(usize, BigInt)>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, v) in col {
                m.add_to(*i, j, v);
            }
        }
        m
    }

    pub(crate) fn from_dense(rows: usize, cols: usize, data: &[Vec<BigInt>]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, row) in data.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    m.entries.insert((i, j), v.clone());
                }
            }
        }
        m
    }

    pub(crate) fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut d = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (&(i, j), v) in &self.entries {
            d[i][j] = v.clone();
        }
        d
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        self.entries.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        if v.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: &BigInt) {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        let e = self.entries.entry((i, j)).or_default();
        *e += v;
        if e.is_zero() {
            self.entries.remove(&(i, j));
        }
    }

    /// Nonzero entries in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.entries.iter().map(|(&(i, j), v)| (i, j, v))
    }

    pub fn transpose(&self) -> Self {
        IntMatrix {
            rows: self.cols,
            cols: self.rows,
            entries: self.entries.iter().map(|(&(i, j), v)| ((j, i), v.clone())).collect(),
        }
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    /// Keeps the listed columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut pos = vec![usize::MAX; self.cols];
        for (new, &old) in cols.iter().enumerate() {
            pos[old] = new;
        }
        let mut m = Self::zeros(self.rows, cols.len());
        for (&(i, j), v) in &self.entries {
            if pos[j] != usize::MAX {
                m.entries.insert((i, pos[j]), v.clone());
            }
        }
        m
    }

    /// Keeps the listed rows, in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> Self {
        self.transpose().select_columns(rows).transpose()
    }

    pub fn hstack(&self, other: &IntMatrix) -> Self {
        assert_eq!(self.rows, other.rows, "row counts differ");
        let mut m = self.clone();
        m.cols += other.cols;
        for (&(i, j), v) in &other.entries {
            m.entries.insert((i, j + self.cols), v.clone());
        }
        m
    }

    pub fn mul(&self, other: &IntMatrix) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut by_row: Vec<Vec<(usize, &BigInt)>> = vec![Vec::new(); other.rows];
        for (&(i, j), v) in &other.entries {
            by_row[i].push((j, v));
        }
        let mut m = Self::zeros(self.rows, other.cols);
        for (&(i, k), a) in &self.entries {
            for &(j, b) in &by_row[k] {
                m.add_to(i, j, &(a * b));
            }
        }
        m
    }

    pub fn mul_vec(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, x.len(), "dimension mismatch in product");
        let mut y = vec![BigInt::zero(); self.rows];
        for (&(i, j), v) in &self.entries {
            y[i] += v * &x[j];
        }
        y
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Whether the nonzero entries lie on the main diagonal.
    pub fn is_diagonal(&self) -> bool {
        self.entries.keys().all(|&(i, j)| i == j)
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}
