use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};


use crate::scalar::{Checked, Scalar};
use crate::LinalgError;

/// A finitely supported vector: sorted `(index, value)` pairs, no zero values.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SparseVec<T> {
    entries: Vec<(usize, T)>,
}

impl<T> Default for SparseVec<T> {
    fn default() -> Self {
        SparseVec { entries: Vec::new() }
    }
}

impl<T: Scalar> SparseVec<T> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn unit(i: usize) -> Self {
        SparseVec { entries: vec![(i, T::one())] }
    }

    pub fn single(i: usize, value: T) -> Self {
        if value.is_zero() {
            Self::zero()
        } else {
            SparseVec { entries: vec![(i, value)] }
        }
    }

    /// Sums repeated indices and drops zeros.
    pub fn from_entries<I: IntoIterator<Item = (usize, T)>>(iter: I) -> Self {
        let mut v: Vec<(usize, T)> = iter.into_iter().collect();
        v.sort_by_key(|e| e.0);
        let mut out: Vec<(usize, T)> = Vec::with_capacity(v.len());
        for (i, x) in v {
            match out.last_mut() {
                Some((j, y)) if *j == i => *y = y.clone() + x,
                _ => out.push((i, x)),
            }
        }
        out.retain(|e| !e.1.is_zero());
        SparseVec { entries: out }
    }

    pub fn from_dense(values: &[T]) -> Self {
        SparseVec {
            entries: values
                .iter()
                .enumerate()
                .filter(|e| !e.1.is_zero())
                .map(|(i, x)| (i, x.clone()))
                .collect(),
        }
    }

    /// Takes already sorted, zero-free entries.
    pub fn from_sorted_unchecked(entries: Vec<(usize, T)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|e| !e.1.is_zero()));
        SparseVec { entries }
    }

    pub fn entries(&self) -> &[(usize, T)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, T)> {
        self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &T)> + '_ {
        self.entries.iter().map(|(i, x)| (*i, x))
    }

    pub fn get(&self, i: usize) -> T {
        match self.entries.binary_search_by_key(&i, |e| e.0) {
            Ok(k) => self.entries[k].1.clone(),
            Err(_) => T::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|e| e.0)
    }

    pub fn to_dense(&self, len: usize) -> Vec<T> {
        let mut out = vec![T::zero(); len];
        for (i, x) in &self.entries {
            out[*i] = x.clone();
        }
        out
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, other: &Self, c: &T) -> Self {
        self.try_add_scaled(other, c).expect("overflow in sparse vector arithmetic")
    }

    pub fn try_add_scaled(&self, other: &Self, c: &T) -> Checked<Self> {
        if c.is_zero() || other.is_zero() {
            return Ok(self.clone());
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, y.c_mul(c)?));
                        b.next();
                    } else {
                        let s = x.c_add(&y.c_mul(c)?)?;
                        if !s.is_zero() {
                            out.push((*i, s));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, y.c_mul(c)?));
                    b.next();
                }
                (None, None) => break,
            }
        }
        Ok(SparseVec { entries: out })
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        SparseVec { entries: self.entries.iter().map(|(i, x)| (*i, x.clone() * c.clone())).collect() }
    }

    /// Re-indexes entries; colliding targets are summed.
    pub fn map_indices(&self, f: impl Fn(usize) -> usize) -> Self {
        Self::from_entries(self.entries.iter().map(|(i, x)| (f(*i), x.clone())))
    }

    pub fn dot(&self, other: &Self) -> T {
        let mut acc = T::zero();
        let (mut a, mut b) = (0, 0);
        while a < self.entries.len() && b < other.entries.len() {
            let (i, j) = (self.entries[a].0, other.entries[b].0);
            if i == j {
                acc = acc + self.entries[a].1.clone() * other.entries[b].1.clone();
                a += 1;
                b += 1;
            } else if i < j {
                a += 1;
            } else {
                b += 1;
            }
        }
        acc
    }

    pub fn try_convert<U: Scalar>(&self) -> Option<SparseVec<U>> {
        let entries = self
            .entries
            .iter()
            .map(|(i, x)| U::from_bigint(&x.to_bigint()).map(|y| (*i, y)))
            .collect::<Option<Vec<_>>>()?;
        Some(SparseVec { entries })
    }
}

impl<T: Scalar> Add for &SparseVec<T> {
    type Output = SparseVec<T>;
    fn add(self, rhs: Self) -> SparseVec<T> {
        self.add_scaled(rhs, &T::one())
    }
}

impl<T: Scalar> Sub for &SparseVec<T> {
    type Output = SparseVec<T>;
    fn sub(self, rhs: Self) -> SparseVec<T> {
        self.add_scaled(rhs, &(T::zero() - T::one()))
    }
}

impl<T: Scalar> Neg for &SparseVec<T> {
    type Output = SparseVec<T>;
    fn neg(self) -> SparseVec<T> {
        SparseVec { entries: self.entries.iter().map(|(i, x)| (*i, -x.clone())).collect() }
    }
}

/// Accumulates a linear combination before freezing it into a [`SparseVec`].
#[derive(Clone, Debug, Default)]
pub struct Accumulator<T> {
    terms: BTreeMap<usize, T>,
}

impl<T: Scalar> Accumulator<T> {
    pub fn new() -> Self {
        Accumulator { terms: BTreeMap::new() }
    }

    pub fn add(&mut self, i: usize, x: T) {
        if x.is_zero() {
            return;
        }
        let e = self.terms.entry(i).or_insert_with(T::zero);
        *e = e.clone() + x;
    }

    pub fn add_vec(&mut self, v: &SparseVec<T>, c: &T) {
        for (i, x) in v.iter() {
            self.add(i, x.clone() * c.clone());
        }
    }

    pub fn finish(self) -> SparseVec<T> {
        SparseVec { entries: self.terms.into_iter().filter(|e| !e.1.is_zero()).collect() }
    }
}

/// Column-major sparse matrix; column `j` is the image of the `j`-th basis vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparseMatrix<T> {
    nrows: usize,
    cols: Vec<SparseVec<T>>,
}

impl<T: Scalar> SparseMatrix<T> {
    pub fn zero(nrows: usize, ncols: usize) -> Self {
        SparseMatrix { nrows, cols: vec![SparseVec::zero(); ncols] }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix { nrows: n, cols: (0..n).map(SparseVec::unit).collect() }
    }

    pub fn from_columns(nrows: usize, cols: Vec<SparseVec<T>>) -> Result<Self, LinalgError> {
        if let Some(bad) = cols.iter().find(|c| c.max_index().is_some_and(|m| m >= nrows)) {
            return Err(LinalgError::DimensionMismatch(format!(
                "column entry at row {} in a matrix with {} rows",
                bad.max_index().unwrap_or(0),
                nrows
            )));
        }
        Ok(SparseMatrix { nrows, cols })
    }

    pub fn from_dense_rows(rows: &[Vec<T>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let cols = (0..ncols)
            .map(|j| SparseVec::from_entries((0..nrows).map(|i| (i, rows[i][j].clone()))))
            .collect();
        SparseMatrix { nrows, cols }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &SparseVec<T> {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[SparseVec<T>] {
        &self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.cols[j].get(i)
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(SparseVec::nnz).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(SparseVec::is_zero)
    }

    /// Matrix-vector product, the vector indexing columns.
    pub fn apply(&self, v: &SparseVec<T>) -> SparseVec<T> {
        let mut acc = Accumulator::new();
        for (j, x) in v.iter() {
            acc.add_vec(&self.cols[j], x);
        }
        acc.finish()
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self, LinalgError> {
        if self.ncols() != rhs.nrows {
            return Err(LinalgError::DimensionMismatch(format!(
                "product of {}x{} and {}x{}",
                self.nrows,
                self.ncols(),
                rhs.nrows,
                rhs.ncols()
            )));
        }
        Ok(SparseMatrix { nrows: self.nrows, cols: rhs.cols.iter().map(|c| self.apply(c)).collect() })
    }

    pub fn transpose(&self) -> Self {
        let mut rows: Vec<Vec<(usize, T)>> = vec![Vec::new(); self.nrows];
        for (j, c) in self.cols.iter().enumerate() {
            for (i, x) in c.iter() {
                rows[i].push((j, x.clone()));
            }
        }
        SparseMatrix {
            nrows: self.ncols(),
            cols: rows.into_iter().map(SparseVec::from_sorted_unchecked).collect(),
        }
    }

    pub fn to_dense_rows(&self) -> Vec<Vec<T>> {
        let mut out = vec![vec![T::zero(); self.ncols()]; self.nrows];
        for (j, c) in self.cols.iter().enumerate() {
            for (i, x) in c.iter() {
                out[i][j] = x.clone();
            }
        }
        out
    }

    /// Kronecker product; basis pair `(i, j)` of the result sits at `i * rhs_dim + j`.
    pub fn kron(&self, rhs: &Self) -> Self {
        let mut cols = Vec::with_capacity(self.ncols() * rhs.ncols());
        for a in &self.cols {
            for b in &rhs.cols {
                let mut entries = Vec::with_capacity(a.nnz() * b.nnz());
                for (i, x) in a.iter() {
                    for (k, y) in b.iter() {
                        entries.push((i * rhs.nrows + k, x.clone() * y.clone()));
                    }
                }
                cols.push(SparseVec::from_sorted_unchecked(entries));
            }
        }
        SparseMatrix { nrows: self.nrows * rhs.nrows, cols }
    }

    pub fn try_convert<U: Scalar>(&self) -> Option<SparseMatrix<U>> {
        let cols = self.cols.iter().map(SparseVec::try_convert).collect::<Option<Vec<_>>>()?;
        Some(SparseMatrix { nrows: self.nrows, cols })
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.nrows, self.ncols()), (rhs.nrows, rhs.ncols()));
        SparseMatrix { nrows: self.nrows, cols: self.cols.iter().zip(&rhs.cols).map(|(a, b)| a - b).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(e: &[(usize, i64)]) -> SparseVec<i64> {
        SparseVec::from_entries(e.iter().copied())
    }

    #[test]
    fn from_entries_merges_and_drops_zeros() {
        let x = v(&[(3, 1), (1, 2), (3, -1), (0, 0)]);
        assert_eq!(x.entries(), &[(1, 2)]);
    }

    #[test]
    fn add_scaled_matches_dense() {
        let a = v(&[(0, 1), (2, 3)]);
        let b = v(&[(1, 1), (2, -1)]);
        assert_eq!(a.add_scaled(&b, &3).to_dense(3), vec![1, 3, 0]);
    }

    #[test]
    fn product_and_transpose() {
        let a = SparseMatrix::from_dense_rows(&[vec![1i64, 2], vec![0, 1], vec![3, 0]]);
        let b = SparseMatrix::from_dense_rows(&[vec![1i64, 0, 1], vec![1, 1, 0]]);
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab.to_dense_rows(), vec![vec![3, 2, 1], vec![1, 1, 0], vec![3, 0, 3]]);
        assert_eq!(a.transpose().transpose(), a);
        assert_eq!(a.transpose().to_dense_rows(), vec![vec![1, 0, 3], vec![2, 1, 0]]);
    }

    #[test]
    fn kron_indexing() {
        let a = SparseMatrix::from_dense_rows(&[vec![0i64, 1], vec![1, 0]]);
        let i = SparseMatrix::<i64>::identity(2);
        let k = a.kron(&i);
        assert_eq!(k.get(2, 0), 1);
        assert_eq!(k.get(3, 1), 1);
        assert_eq!(k.get(0, 2), 1);
    }

    #[test]
    fn mismatched_product_is_an_error() {
        let a = SparseMatrix::<i64>::zero(2, 3);
        assert!(a.mul(&a).is_err());
    }
}
