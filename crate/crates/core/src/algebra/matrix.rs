//! Exact matrices over Q: rank, inverse and linear solves.
//!
//! Rank is computed by splitting the matrix into independent blocks (rows
//! and columns connected through nonzero entries) and running fraction-free
//! Bareiss elimination on each block after clearing denominators.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::rational::{common_denominator, rat, to_canonical, Rational};
use crate::error::{MotiveError, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(MotiveError::SizeMismatch("ragged matrix rows".into()));
        }
        let n = rows.len();
        Ok(RationalMatrix { rows: n, cols, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect())
            .expect("rectangular integer matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(MotiveError::SizeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(MotiveError::SizeMismatch(format!("{} columns, vector of length {}", self.cols, v.len())));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).filter(|(a, _)| !a.is_zero()).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn is_idempotent(&self) -> bool {
        self.rows == self.cols && self.mul(self).is_ok_and(|sq| &sq == self)
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).sum()
    }

    pub fn rank(&self) -> usize {
        SparseMatrix::from_dense(self).rank()
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else { continue };
            m.swap_rows(p, r);
            let inv = m[(r, c)].recip();
            for j in c..m.cols {
                let v = &m[(r, j)] * &inv;
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    let v = &m[(r, j)] * &f;
                    if !v.is_zero() {
                        m[(i, j)] -= v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == m.rows {
                break;
            }
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.rows != self.cols {
            return Err(MotiveError::NotInvertible(format!("{}x{} matrix is not square", self.rows, self.cols)));
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Rational::one();
        }
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(MotiveError::NotInvertible("singular matrix".into()));
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = red[(i, n + j)].clone();
            }
        }
        Ok(inv)
    }

    /// Some `x` with `self * x = b`, if one exists.
    pub fn solve(&self, b: &[Rational]) -> Result<Vec<Rational>> {
        if b.len() != self.rows {
            return Err(MotiveError::SizeMismatch(format!("{} rows, right-hand side of length {}", self.rows, b.len())));
        }
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let (red, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Err(MotiveError::NotInvertible("inconsistent linear system".into()));
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = red[(r, self.cols)].clone();
        }
        Ok(x)
    }

    /// A basis of the column space, as column indices of `self`.
    pub fn column_basis(&self) -> Vec<usize> {
        self.rref().1
    }
}

impl Index<(usize, usize)> for RationalMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Serialize for RationalMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = (0..self.rows).map(|i| self.row(i).iter().map(to_canonical).collect()).collect();
        rows.serialize(s)
    }
}

pub fn matrix_rank(m: &RationalMatrix) -> usize {
    m.rank()
}

/// Row-major sparse matrix, used for action matrices of correspondences on
/// large tensor powers where almost every entry vanishes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BTreeMap<usize, Rational>>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, entries: vec![BTreeMap::new(); rows] }
    }

    pub fn from_dense(m: &RationalMatrix) -> Self {
        let mut s = Self::zeros(m.rows, m.cols);
        for i in 0..m.rows {
            for (j, v) in m.row(i).iter().enumerate() {
                if !v.is_zero() {
                    s.entries[i].insert(j, v.clone());
                }
            }
        }
        s
    }

    pub fn to_dense(&self) -> RationalMatrix {
        let mut m = RationalMatrix::zeros(self.rows, self.cols);
        for (i, row) in self.entries.iter().enumerate() {
            for (&j, v) in row {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.entries[i].get(&j).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn row(&self, i: usize) -> &BTreeMap<usize, Rational> {
        &self.entries[i]
    }

    pub fn add_to(&mut self, i: usize, j: usize, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.entries[i].entry(j).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.entries[i].remove(&j);
        }
    }

    pub fn nnz(&self) -> usize {
        self.entries.iter().map(BTreeMap::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(BTreeMap::is_empty)
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(MotiveError::SizeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for (i, row) in self.entries.iter().enumerate() {
            for (&k, a) in row {
                for (&j, b) in &other.entries[k] {
                    out.add_to(i, j, &(a * b));
                }
            }
        }
        Ok(out)
    }

    pub fn is_idempotent(&self) -> bool {
        self.rows == self.cols && self.mul(self).is_ok_and(|sq| &sq == self)
    }

    /// Connected components of the bipartite row/column graph whose edges
    /// are the nonzero entries. Each block lists its rows and columns.
    pub fn blocks(&self) -> Vec<(Vec<usize>, Vec<usize>)> {
        let mut parent: Vec<usize> = (0..self.rows + self.cols).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for (i, row) in self.entries.iter().enumerate() {
            for &j in row.keys() {
                let (a, b) = (find(&mut parent, i), find(&mut parent, self.rows + j));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        let mut groups: BTreeMap<usize, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
        for i in 0..self.rows {
            if !self.entries[i].is_empty() {
                let r = find(&mut parent, i);
                groups.entry(r).or_default().0.push(i);
            }
        }
        let mut col_seen = vec![false; self.cols];
        for row in &self.entries {
            for &j in row.keys() {
                if !col_seen[j] {
                    col_seen[j] = true;
                    let r = find(&mut parent, self.rows + j);
                    groups.entry(r).or_default().1.push(j);
                }
            }
        }
        groups
            .into_values()
            .map(|(r, mut c)| {
                c.sort_unstable();
                (r, c)
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.blocks()
            .into_iter()
            .map(|(rows, cols)| {
                let col_pos: BTreeMap<usize, usize> = cols.iter().enumerate().map(|(k, &c)| (c, k)).collect();
                let block: Vec<Vec<BigInt>> = rows
                    .iter()
                    .map(|&i| {
                        let row = &self.entries[i];
                        let scale = common_denominator(row.values());
                        let mut dense = vec![BigInt::zero(); cols.len()];
                        for (j, v) in row {
                            dense[col_pos[j]] = (v * Rational::from_integer(scale.clone())).to_integer();
                        }
                        dense
                    })
                    .collect();
                bareiss_rank(block)
            })
            .sum()
    }
}

/// Fraction-free row echelon elimination; every intermediate entry is a
/// minor of the input, so the divisions are exact.
fn bareiss_rank(mut a: Vec<Vec<BigInt>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(p, r);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = (&a[r][c] * &a[i][j] - &a[i][c] * &a[r][j]) / &prev;
                a[i][j] = v;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::ratio;
    use proptest::prelude::*;

    /// Plain Gaussian elimination over Q, kept independent of the Bareiss path.
    fn naive_rank(m: &RationalMatrix) -> usize {
        let mut rows: Vec<Vec<Rational>> = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
        let mut rank = 0;
        for c in 0..m.cols() {
            if let Some(p) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) {
                rows.swap(p, rank);
                for i in rank + 1..rows.len() {
                    let f = &rows[i][c] / &rows[rank][c];
                    let (pivot, rest) = rows.split_at_mut(i);
                    for (x, p) in rest[0].iter_mut().zip(&pivot[rank]) {
                        *x -= p * &f;
                    }
                }
                rank += 1;
            }
        }
        rank
    }

    #[test]
    fn small_ranks() {
        assert_eq!(RationalMatrix::from_i64(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(RationalMatrix::identity(4).rank(), 4);
        assert_eq!(RationalMatrix::zeros(3, 2).rank(), 0);
        assert_eq!(RationalMatrix::from_i64(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]).rank(), 2);
        let mut m = RationalMatrix::zeros(2, 2);
        m[(0, 0)] = ratio(1, 2);
        m[(0, 1)] = ratio(1, 3);
        m[(1, 0)] = ratio(3, 2);
        m[(1, 1)] = rat(1);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn inverse_and_solve() {
        let m = RationalMatrix::from_i64(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(inv, RationalMatrix::from_i64(&[&[1, -1], &[-1, 2]]));
        assert_eq!(m.mul(&inv).unwrap(), RationalMatrix::identity(2));
        assert_eq!(m.solve(&[rat(3), rat(2)]).unwrap(), vec![rat(1), rat(1)]);
        assert!(RationalMatrix::from_i64(&[&[1, 2], &[2, 4]]).inverse().is_err());
        assert!(RationalMatrix::from_i64(&[&[1, 2], &[2, 4]]).solve(&[rat(1), rat(0)]).is_err());
    }

    #[test]
    fn blocks_split_independent_parts() {
        let m = RationalMatrix::from_i64(&[&[1, 0, 0], &[0, 0, 2], &[0, 0, 3], &[0, 0, 0]]);
        let s = SparseMatrix::from_dense(&m);
        assert_eq!(s.blocks(), vec![(vec![0], vec![0]), (vec![1, 2], vec![2])]);
        assert_eq!(s.rank(), 2);
    }

    #[test]
    fn idempotents() {
        let p = RationalMatrix::from_i64(&[&[1, 1], &[0, 0]]);
        assert!(p.is_idempotent());
        assert_eq!(p.trace(), rat(p.rank() as i64));
        assert!(!RationalMatrix::from_i64(&[&[2, 0], &[0, 0]]).is_idempotent());
    }

    fn arb_matrix() -> impl Strategy<Value = RationalMatrix> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
            proptest::collection::vec((-3i64..=3, 1i64..=3, prop::bool::weighted(0.4)), r * c).prop_map(move |v| {
                let data = v.into_iter().map(|(n, d, zero)| if zero { rat(0) } else { ratio(n, d) }).collect();
                RationalMatrix { rows: r, cols: c, data }
            })
        })
    }

    proptest! {
        #[test]
        fn rank_matches_naive_elimination(m in arb_matrix()) {
            prop_assert_eq!(m.rank(), naive_rank(&m));
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn product_of_rank_one_factors(u in proptest::collection::vec(-3i64..=3, 4), v in proptest::collection::vec(-3i64..=3, 5)) {
            let col = RationalMatrix::from_rows(u.iter().map(|&x| vec![rat(x)]).collect()).unwrap();
            let row = RationalMatrix::from_rows(vec![v.iter().map(|&x| rat(x)).collect()]).unwrap();
            let outer = col.mul(&row).unwrap();
            let expected = usize::from(u.iter().any(|&x| x != 0) && v.iter().any(|&x| x != 0));
            prop_assert_eq!(outer.rank(), expected);
        }
    }
}
