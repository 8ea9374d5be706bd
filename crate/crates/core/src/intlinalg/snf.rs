//! Smith normal form over the integers with optional transform tracking.
//!
//! Pivoting always picks the nonzero entry of least absolute value in the
//! active submatrix, which keeps coefficient growth in check for the sparse
//! `0/±1` relation matrices this crate produces.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;
use crate::error::Error;

/// Which unimodular transforms to accumulate while diagonalizing.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SnfFlags {
    pub left: bool,
    pub right: bool,
    pub left_inverse: bool,
    pub right_inverse: bool,
}

impl SnfFlags {
    pub const NONE: SnfFlags = SnfFlags { left: false, right: false, left_inverse: false, right_inverse: false };
    pub const ALL: SnfFlags = SnfFlags { left: true, right: true, left_inverse: true, right_inverse: true };
    pub const TRANSFORMS: SnfFlags = SnfFlags { left: true, right: true, left_inverse: false, right_inverse: false };
    pub const RIGHT: SnfFlags = SnfFlags { left: false, right: true, left_inverse: false, right_inverse: false };
}

/// `U * M * V` equals the `rows x cols` matrix carrying `diagonal` on its
/// main diagonal and zeros elsewhere.
#[derive(Clone, Debug)]
pub struct SnfResult {
    pub rows: usize,
    pub cols: usize,
    /// The nonzero invariant factors `d_1 | d_2 | ... | d_r`, all positive.
    pub diagonal: Vec<BigInt>,
    pub u: Option<IntMatrix>,
    pub v: Option<IntMatrix>,
    pub u_inv: Option<IntMatrix>,
    pub v_inv: Option<IntMatrix>,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    /// The diagonal matrix padded with zeros to the shape of the input.
    pub fn padded(&self) -> IntMatrix {
        let mut d = IntMatrix::zeros(self.rows, self.cols);
        for (i, v) in self.diagonal.iter().enumerate() {
            d.set(i, i, v.clone());
        }
        d
    }
}

/// Free rank and torsion coefficients of `Z^rows / image(M)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Cokernel {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    smith_normal_form_with(m, SnfFlags::TRANSFORMS)
}

pub fn smith_normal_form_with(m: &IntMatrix, flags: SnfFlags) -> SnfResult {
    let mut calc = SnfCalc::new(m, flags);
    calc.run();
    calc.finish()
}

/// Cokernel of `M` viewed as a map from the column space to the row space.
/// Unit pivots are eliminated sparsely before the Smith normal form.
pub fn cokernel(m: &IntMatrix) -> Cokernel {
    let reduced = unit_pivot_presolve(m);
    let snf = smith_normal_form_with(&reduced, SnfFlags::NONE);
    Cokernel {
        free_rank: reduced.rows() - snf.rank(),
        torsion: snf.diagonal.into_iter().filter(|d| !d.is_one()).collect(),
    }
}

/// Repeatedly takes a column with an entry of absolute value 1 in some row,
/// clears that row from the other columns, and drops the row and the
/// column. The cokernel is unchanged.
fn unit_pivot_presolve(m: &IntMatrix) -> IntMatrix {
    use std::collections::{BTreeMap, BTreeSet};
    let mut columns: Vec<BTreeMap<usize, BigInt>> = vec![BTreeMap::new(); m.cols()];
    let mut row_cols: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m.rows()];
    for (i, j, v) in m.iter() {
        columns[j].insert(i, v.clone());
        row_cols[i].insert(j);
    }
    let mut row_alive = vec![true; m.rows()];
    loop {
        let mut order: Vec<usize> = (0..columns.len()).filter(|&c| !columns[c].is_empty()).collect();
        order.sort_by_key(|&c| columns[c].len());
        let mut progress = false;
        for c in order {
            // The unit entry whose row is shared by the fewest columns.
            let Some(r) = columns[c]
                .iter()
                .filter(|(_, v)| v.abs().is_one())
                .map(|(&r, _)| r)
                .min_by_key(|&r| row_cols[r].len())
            else {
                continue;
            };
            let mut pivot = std::mem::take(&mut columns[c]);
            if pivot[&r].is_negative() {
                for v in pivot.values_mut() {
                    *v = -&*v;
                }
            }
            for &i in pivot.keys() {
                row_cols[i].remove(&c);
            }
            let others: Vec<usize> = row_cols[r].iter().copied().collect();
            for other in others {
                let a = columns[other][&r].clone();
                for (&i, v) in &pivot {
                    let e = columns[other].entry(i).or_insert_with(BigInt::zero);
                    *e -= v * &a;
                    if e.is_zero() {
                        columns[other].remove(&i);
                        row_cols[i].remove(&other);
                    } else {
                        row_cols[i].insert(other);
                    }
                }
            }
            debug_assert!(row_cols[r].is_empty());
            row_alive[r] = false;
            progress = true;
        }
        if !progress {
            break;
        }
    }
    let mut new_index = vec![usize::MAX; m.rows()];
    let mut rows = 0;
    for (i, alive) in row_alive.iter().enumerate() {
        if *alive {
            new_index[i] = rows;
            rows += 1;
        }
    }
    let cols: Vec<Vec<(usize, BigInt)>> = columns
        .into_iter()
        .filter(|c| !c.is_empty())
        .map(|c| c.into_iter().map(|(i, v)| (new_index[i], v)).collect())
        .collect();
    IntMatrix::from_columns(rows, &cols)
}

/// A basis of `{x : M x = 0}`, as the columns of the returned matrix.
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form_with(m, SnfFlags::RIGHT);
    let v = snf.v.as_ref().expect("right transform requested");
    let cols: Vec<usize> = (snf.rank()..m.cols()).collect();
    v.select_columns(&cols)
}

/// Solves `A X = B` over the integers. Free variables are set to zero.
pub fn solve(a: &IntMatrix, b: &IntMatrix) -> Result<IntMatrix, Error> {
    assert_eq!(a.rows(), b.rows(), "row counts differ");
    let snf = smith_normal_form_with(a, SnfFlags::TRANSFORMS);
    let u = snf.u.as_ref().expect("left transform requested");
    let v = snf.v.as_ref().expect("right transform requested");
    let ub = u.mul(b);
    let mut y = IntMatrix::zeros(a.cols(), b.cols());
    for (i, j, val) in ub.iter() {
        match snf.diagonal.get(i) {
            Some(d) => {
                let (q, r) = val.div_rem(d);
                if !r.is_zero() {
                    return Err(Error::NoIntegerSolution);
                }
                y.set(i, j, q);
            }
            None => return Err(Error::NoIntegerSolution),
        }
    }
    Ok(v.mul(&y))
}

/// Rank over the rationals by sparse fraction-free row elimination, with
/// each row divided by its content. Independent of the Smith normal form
/// code path.
pub fn rank_rational(m: &IntMatrix) -> usize {
    use std::collections::BTreeMap;
    let mut rows: Vec<BTreeMap<usize, BigInt>> = vec![BTreeMap::new(); m.rows()];
    for (i, j, v) in m.iter() {
        rows[i].insert(j, v.clone());
    }
    // Pivot rows keyed by their leading column.
    let mut pivots: BTreeMap<usize, BTreeMap<usize, BigInt>> = BTreeMap::new();
    for mut row in rows {
        while let Some((&lead, _)) = row.iter().next() {
            let Some(pivot) = pivots.get(&lead) else {
                pivots.insert(lead, row);
                break;
            };
            // row <- p * row - a * pivot, which clears the leading entry.
            let p = pivot[&lead].clone();
            let a = row[&lead].clone();
            let g = p.gcd(&a);
            let (p, a) = (&p / &g, &a / &g);
            let mut next: BTreeMap<usize, BigInt> = BTreeMap::new();
            for (&j, v) in &row {
                next.insert(j, v * &p);
            }
            for (&j, v) in pivot {
                let e = next.entry(j).or_insert_with(BigInt::zero);
                *e -= v * &a;
            }
            next.retain(|_, v| !v.is_zero());
            let content = next.values().fold(BigInt::zero(), |acc, v| acc.gcd(v));
            if !content.is_zero() && !content.is_one() {
                for v in next.values_mut() {
                    *v /= &content;
                }
            }
            row = next;
        }
    }
    pivots.len()
}

/// Determinant of a square matrix by fraction-free elimination.
pub fn determinant(m: &IntMatrix) -> BigInt {
    assert_eq!(m.rows(), m.cols(), "determinant of a non-square matrix");
    if m.rows() == 0 {
        return BigInt::one();
    }
    let n = m.rows();
    let (rank, sign, a) = bareiss(m.to_dense(), n);
    if rank < n {
        return BigInt::zero();
    }
    let d = a[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

fn bareiss(mut a: Vec<Vec<BigInt>>, cols: usize) -> (usize, i32, Vec<Vec<BigInt>>) {
    let rows = a.len();
    let mut prev = BigInt::one();
    let mut rank = 0;
    let mut sign = 1;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        if p != rank {
            a.swap(p, rank);
            sign = -sign;
        }
        for i in rank + 1..rows {
            for j in col + 1..cols {
                let v = (&a[i][j] * &a[rank][col] - &a[i][col] * &a[rank][j]) / &prev;
                a[i][j] = v;
            }
            a[i][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    (rank, sign, a)
}

struct SnfCalc {
    rows: usize,
    cols: usize,
    a: Vec<Vec<BigInt>>,
    u: Option<Vec<Vec<BigInt>>>,
    v: Option<Vec<Vec<BigInt>>>,
    u_inv: Option<Vec<Vec<BigInt>>>,
    v_inv: Option<Vec<Vec<BigInt>>>,
    diagonal: Vec<BigInt>,
}

fn dense_identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

fn add_row_multiple(m: &mut [Vec<BigInt>], target: usize, src: usize, c: &BigInt) {
    let (t, s) = if target < src {
        let (lo, hi) = m.split_at_mut(src);
        (&mut lo[target], &hi[0])
    } else {
        let (lo, hi) = m.split_at_mut(target);
        (&mut hi[0], &lo[src])
    };
    for (x, y) in t.iter_mut().zip(s.iter()) {
        if !y.is_zero() {
            *x += c * y;
        }
    }
}

fn add_col_multiple(m: &mut [Vec<BigInt>], target: usize, src: usize, c: &BigInt) {
    for row in m.iter_mut() {
        if !row[src].is_zero() {
            let add = c * &row[src];
            row[target] += add;
        }
    }
}

fn swap_cols(m: &mut [Vec<BigInt>], i: usize, j: usize) {
    for row in m.iter_mut() {
        row.swap(i, j);
    }
}

impl SnfCalc {
    fn new(m: &IntMatrix, flags: SnfFlags) -> Self {
        let (rows, cols) = (m.rows(), m.cols());
        SnfCalc {
            rows,
            cols,
            a: m.to_dense(),
            u: flags.left.then(|| dense_identity(rows)),
            v: flags.right.then(|| dense_identity(cols)),
            u_inv: flags.left_inverse.then(|| dense_identity(rows)),
            v_inv: flags.right_inverse.then(|| dense_identity(cols)),
            diagonal: Vec::new(),
        }
    }

    // row_i += c * row_t
    fn row_add(&mut self, i: usize, t: usize, c: &BigInt) {
        add_row_multiple(&mut self.a, i, t, c);
        if let Some(u) = &mut self.u {
            add_row_multiple(u, i, t, c);
        }
        if let Some(ui) = &mut self.u_inv {
            add_col_multiple(ui, t, i, &-c);
        }
    }

    // col_j += c * col_t
    fn col_add(&mut self, j: usize, t: usize, c: &BigInt) {
        add_col_multiple(&mut self.a, j, t, c);
        if let Some(v) = &mut self.v {
            add_col_multiple(v, j, t, c);
        }
        if let Some(vi) = &mut self.v_inv {
            add_row_multiple(vi, t, j, &-c);
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        if let Some(u) = &mut self.u {
            u.swap(i, j);
        }
        if let Some(ui) = &mut self.u_inv {
            swap_cols(ui, i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        swap_cols(&mut self.a, i, j);
        if let Some(v) = &mut self.v {
            swap_cols(v, i, j);
        }
        if let Some(vi) = &mut self.v_inv {
            vi.swap(i, j);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.a[i].iter_mut() {
            *x = -&*x;
        }
        if let Some(u) = &mut self.u {
            for x in u[i].iter_mut() {
                *x = -&*x;
            }
        }
        if let Some(ui) = &mut self.u_inv {
            for row in ui.iter_mut() {
                row[i] = -&row[i];
            }
        }
    }

    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let x = &self.a[i][j];
                if x.is_zero() {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some((bi, bj)) => x.abs() < self.a[bi][bj].abs(),
                };
                if better {
                    best = Some((i, j));
                    if x.abs().is_one() {
                        return best;
                    }
                }
            }
        }
        best
    }

    // Reduces column t below the pivot; returns true once it is clear.
    fn clear_column(&mut self, t: usize) -> bool {
        let mut smallest: Option<usize> = None;
        for i in t + 1..self.rows {
            if self.a[i][t].is_zero() {
                continue;
            }
            let q = &self.a[i][t] / &self.a[t][t];
            if !q.is_zero() {
                self.row_add(i, t, &-q);
            }
            if !self.a[i][t].is_zero()
                && smallest.is_none_or(|s| self.a[i][t].abs() < self.a[s][t].abs())
            {
                smallest = Some(i);
            }
        }
        match smallest {
            Some(i) => {
                self.swap_rows(t, i);
                false
            }
            None => true,
        }
    }

    fn clear_row(&mut self, t: usize) -> bool {
        let mut smallest: Option<usize> = None;
        for j in t + 1..self.cols {
            if self.a[t][j].is_zero() {
                continue;
            }
            let q = &self.a[t][j] / &self.a[t][t];
            if !q.is_zero() {
                self.col_add(j, t, &-q);
            }
            if !self.a[t][j].is_zero()
                && smallest.is_none_or(|s| self.a[t][j].abs() < self.a[t][s].abs())
            {
                smallest = Some(j);
            }
        }
        match smallest {
            Some(j) => {
                self.swap_cols(t, j);
                false
            }
            None => true,
        }
    }

    fn non_divisible_row(&self, t: usize) -> Option<usize> {
        let p = &self.a[t][t];
        (t + 1..self.rows).find(|&i| (t + 1..self.cols).any(|j| !self.a[i][j].is_multiple_of(p)))
    }

    fn run(&mut self) {
        let mut t = 0;
        while t < self.rows.min(self.cols) {
            let Some((pi, pj)) = self.min_pivot(t) else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let col_clear = self.clear_column(t);
                let row_clear = self.clear_row(t);
                if !(col_clear && row_clear) {
                    continue;
                }
                // A row swap inside clear_row cannot happen, but a column swap
                // may have refilled column t.
                if !(t + 1..self.rows).all(|i| self.a[i][t].is_zero()) {
                    continue;
                }
                match self.non_divisible_row(t) {
                    Some(i) => self.row_add(t, i, &BigInt::one()),
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t);
            }
            self.diagonal.push(self.a[t][t].clone());
            t += 1;
        }
    }

    fn finish(self) -> SnfResult {
        let (rows, cols) = (self.rows, self.cols);
        let wrap = |m: Option<Vec<Vec<BigInt>>>, r: usize, c: usize| m.map(|d| IntMatrix::from_dense(r, c, &d));
        SnfResult {
            rows,
            cols,
            diagonal: self.diagonal,
            u: wrap(self.u, rows, rows),
            v: wrap(self.v, cols, cols),
            u_inv: wrap(self.u_inv, rows, rows),
            v_inv: wrap(self.v_inv, cols, cols),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn check_contract(m: &IntMatrix) -> SnfResult {
        let snf = smith_normal_form_with(m, SnfFlags::ALL);
        let (u, v) = (snf.u.as_ref().unwrap(), snf.v.as_ref().unwrap());
        assert_eq!(u.mul(m).mul(v), snf.padded());
        assert_eq!(u.mul(snf.u_inv.as_ref().unwrap()), IntMatrix::identity(m.rows()));
        assert_eq!(v.mul(snf.v_inv.as_ref().unwrap()), IntMatrix::identity(m.cols()));
        for w in snf.diagonal.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        snf
    }

    #[test]
    fn presolve_keeps_the_cokernel() {
        // Z^3 / <e0 - e1, e1 + e2, 4 e2> = Z/4.
        let m = IntMatrix::from_rows(&[vec![1, 0, 0], vec![-1, 1, 0], vec![0, 1, 4]]);
        let reduced = unit_pivot_presolve(&m);
        assert_eq!((reduced.rows(), reduced.cols()), (1, 1));
        assert_eq!(cokernel(&m), Cokernel { free_rank: 0, torsion: ints(&[4]) });
    }

    #[test]
    fn coprime_diagonal_collapses() {
        let snf = check_contract(&IntMatrix::diagonal(&[2, 3]));
        assert_eq!(snf.diagonal, ints(&[1, 6]));
    }

    #[test]
    fn zero_matrix_has_empty_diagonal() {
        let snf = check_contract(&IntMatrix::zeros(3, 3));
        assert!(snf.diagonal.is_empty());
    }

    #[test]
    fn two_by_two_example() {
        // Desk oracle: gcd of entries is 2 and |det| = |16 - 24| = 8, so D = diag(2, 4).
        let snf = check_contract(&IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]));
        assert_eq!(snf.diagonal, ints(&[2, 4]));
    }

    #[test]
    fn empty_shapes() {
        assert!(check_contract(&IntMatrix::zeros(0, 3)).diagonal.is_empty());
        assert!(check_contract(&IntMatrix::zeros(2, 0)).diagonal.is_empty());
        assert_eq!(cokernel(&IntMatrix::zeros(2, 0)).free_rank, 2);
    }

    #[test]
    fn cokernel_examples() {
        assert_eq!(cokernel(&IntMatrix::identity(2)), Cokernel { free_rank: 0, torsion: vec![] });
        assert_eq!(cokernel(&IntMatrix::from_rows(&[vec![2]])), Cokernel { free_rank: 0, torsion: ints(&[2]) });
        let identify = IntMatrix::from_rows(&[vec![1], vec![-1]]);
        assert_eq!(cokernel(&identify), Cokernel { free_rank: 1, torsion: vec![] });
    }

    #[test]
    fn kernel_and_solve() {
        let m = IntMatrix::from_rows(&[vec![1, 1, 0], vec![0, 2, 2]]);
        let k = kernel_basis(&m);
        assert_eq!(k.cols(), 1);
        assert!(m.mul(&k).is_zero());
        let b = IntMatrix::from_rows(&[vec![3], vec![4]]);
        let x = solve(&m, &b).unwrap();
        assert_eq!(m.mul(&x), b);
        let odd = IntMatrix::from_rows(&[vec![3], vec![3]]);
        assert!(matches!(solve(&m, &odd), Err(Error::NoIntegerSolution)));
    }

    #[test]
    fn determinant_and_rational_rank() {
        let m = IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]);
        assert_eq!(determinant(&m), BigInt::from(-8));
        assert_eq!(rank_rational(&IntMatrix::from_rows(&[vec![1, 2], vec![2, 4]])), 1);
        assert_eq!(determinant(&IntMatrix::zeros(0, 0)), BigInt::one());
    }
}
