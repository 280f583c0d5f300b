use num_traits::Zero;

use crate::scalar::{Checked, Scalar};
use crate::sparse::{SparseMatrix, SparseVec};

/// Row-major dense integer matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DenseMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

/// Column Hermite form `A·V = H` with `V` unimodular.
///
/// The first `rank` columns of `H` are nonzero with strictly increasing pivot
/// rows; the remaining columns of `V` span the integer kernel of `A`.
#[derive(Clone, Debug)]
pub struct ColumnHermite<T> {
    pub h: DenseMatrix<T>,
    pub v: DenseMatrix<T>,
    pub pivot_rows: Vec<usize>,
}

impl<T> ColumnHermite<T> {
    pub fn rank(&self) -> usize {
        self.pivot_rows.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solve<T> {
    Solution(Vec<T>),
    /// No rational solution: the right-hand side leaves the column span.
    InconsistentOverQ,
    /// A rational solution exists but no integral one.
    InconsistentOverZ,
}

impl<T: Scalar> DenseMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        DenseMatrix { rows: r, cols: c, data: rows.iter().flatten().cloned().collect() }
    }

    /// Builds a `rows × cols.len()` matrix from sparse columns.
    pub fn from_columns(rows: usize, cols: &[SparseVec<T>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, x) in c.iter() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn from_sparse(s: &SparseMatrix<T>) -> Self {
        Self::from_columns(s.nrows(), s.columns())
    }

    pub fn to_sparse(&self) -> SparseMatrix<T> {
        SparseMatrix::from_columns(self.rows, (0..self.cols).map(|j| self.column(j)).collect())
            .expect("shape is consistent")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: T) {
        self.data[i * self.cols + j] = x;
    }

    pub fn column(&self, j: usize) -> SparseVec<T> {
        SparseVec::from_entries((0..self.rows).map(|i| (i, self.get(i, j).clone())))
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column_block(&self, range: std::ops::Range<usize>) -> Vec<SparseVec<T>> {
        range.map(|j| self.column(j)).collect()
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    /// col[dst] -= q * col[src]
    fn col_axpy(&mut self, dst: usize, q: &T, src: usize) -> Checked<()> {
        if q.is_zero() {
            return Ok(());
        }
        for i in 0..self.rows {
            let s = &self.data[i * self.cols + src];
            if !s.is_zero() {
                let d = self.data[i * self.cols + dst].c_sub_mul(q, s)?;
                self.data[i * self.cols + dst] = d;
            }
        }
        Ok(())
    }

    /// row[dst] -= q * row[src], touching columns from `from` on.
    fn row_axpy(&mut self, dst: usize, q: &T, src: usize, from: usize) -> Checked<()> {
        if q.is_zero() {
            return Ok(());
        }
        for j in from..self.cols {
            let s = &self.data[src * self.cols + j];
            if !s.is_zero() {
                let d = self.data[dst * self.cols + j].c_sub_mul(q, s)?;
                self.data[dst * self.cols + j] = d;
            }
        }
        Ok(())
    }

    fn negate_col(&mut self, j: usize) -> Checked<()> {
        for i in 0..self.rows {
            let x = self.data[i * self.cols + j].c_neg()?;
            self.data[i * self.cols + j] = x;
        }
        Ok(())
    }

    pub fn try_column_hermite(&self) -> Checked<ColumnHermite<T>> {
        let mut h = self.clone();
        let mut v = Self::identity(self.cols);
        let mut pivots = Vec::new();
        let mut k = 0;
        for r in 0..self.rows {
            if k == self.cols {
                break;
            }
            loop {
                let best = (k..self.cols)
                    .filter(|&j| !h.get(r, j).is_zero())
                    .min_by(|&a, &b| h.get(r, a).abs().cmp(&h.get(r, b).abs()).then(a.cmp(&b)));
                let Some(j) = best else { break };
                h.swap_cols(k, j);
                v.swap_cols(k, j);
                let p = h.get(r, k).clone();
                let mut clean = true;
                for j in k + 1..self.cols {
                    let x = h.get(r, j).clone();
                    if x.is_zero() {
                        continue;
                    }
                    let q = x.c_div_floor(&p)?;
                    h.col_axpy(j, &q, k)?;
                    v.col_axpy(j, &q, k)?;
                    if !h.get(r, j).is_zero() {
                        clean = false;
                    }
                }
                if clean {
                    break;
                }
            }
            if k < self.cols && !h.get(r, k).is_zero() {
                if h.get(r, k).is_negative() {
                    h.negate_col(k)?;
                    v.negate_col(k)?;
                }
                let p = h.get(r, k).clone();
                for j in 0..k {
                    let q = h.get(r, j).c_div_floor(&p)?;
                    h.col_axpy(j, &q, k)?;
                    v.col_axpy(j, &q, k)?;
                }
                pivots.push(r);
                k += 1;
            }
        }
        Ok(ColumnHermite { h, v, pivot_rows: pivots })
    }

    pub fn rank(&self) -> Checked<usize> {
        Ok(self.try_column_hermite()?.rank())
    }

    /// Basis of the saturated integer kernel, as columns.
    pub fn try_kernel(&self) -> Checked<Vec<SparseVec<T>>> {
        let hf = self.try_column_hermite()?;
        Ok(hf.v.column_block(hf.rank()..self.cols))
    }

    /// Basis of the lattice spanned by the columns.
    pub fn try_image(&self) -> Checked<Vec<SparseVec<T>>> {
        let hf = self.try_column_hermite()?;
        Ok(hf.h.column_block(0..hf.rank()))
    }

    pub fn try_solve(&self, b: &[T]) -> Checked<Solve<T>> {
        assert_eq!(b.len(), self.rows);
        let hf = self.try_column_hermite()?;
        let mut residual = b.to_vec();
        let mut y = vec![T::zero(); self.cols];
        let mut integral = true;
        for (k, &r) in hf.pivot_rows.iter().enumerate() {
            let p = hf.h.get(r, k);
            let (q, rem) = num_integer::Integer::div_mod_floor(&residual[r], p);
            if !rem.is_zero() {
                integral = false;
                break;
            }
            for i in 0..self.rows {
                let x = hf.h.get(i, k);
                if !x.is_zero() {
                    residual[i] = residual[i].c_sub_mul(&q, x)?;
                }
            }
            y[k] = q;
        }
        if integral && residual.iter().all(Zero::is_zero) {
            let mut x = vec![T::zero(); self.cols];
            for (i, xi) in x.iter_mut().enumerate() {
                let mut acc = T::zero();
                for (k, yk) in y.iter().enumerate() {
                    if !yk.is_zero() {
                        acc = acc.c_add(&hf.v.get(i, k).c_mul(yk)?)?;
                    }
                }
                *xi = acc;
            }
            return Ok(Solve::Solution(x));
        }
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        if aug.rank()? > hf.rank() {
            Ok(Solve::InconsistentOverQ)
        } else {
            Ok(Solve::InconsistentOverZ)
        }
    }

    /// Rank and the invariant factors different from 1, ascending.
    pub fn try_smith(&self) -> Checked<(usize, Vec<T>)> {
        let mut a = self.clone();
        let (m, n) = (a.rows, a.cols);
        let mut diag: Vec<T> = Vec::new();
        let mut t = 0;
        while t < m && t < n {
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    let x = a.get(i, j);
                    if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < a.get(bi, bj).abs()) {
                        best = Some((i, j));
                        if x.is_unit() {
                            break;
                        }
                    }
                }
                if best.is_some_and(|(bi, bj)| a.get(bi, bj).is_unit()) {
                    break;
                }
            }
            let Some((bi, bj)) = best else { break };
            a.swap_rows(t, bi);
            a.swap_cols(t, bj);
            loop {
                let p = a.get(t, t).clone();
                let mut clean = true;
                for i in t + 1..m {
                    let x = a.get(i, t).clone();
                    if !x.is_zero() {
                        let q = x.c_div_floor(&p)?;
                        a.row_axpy(i, &q, t, t)?;
                        clean &= a.get(i, t).is_zero();
                    }
                }
                for j in t + 1..n {
                    let x = a.get(t, j).clone();
                    if !x.is_zero() {
                        let q = x.c_div_floor(&p)?;
                        a.col_axpy(j, &q, t)?;
                        clean &= a.get(t, j).is_zero();
                    }
                }
                if !clean {
                    let mut best = (t, t);
                    for i in t + 1..m {
                        let x = a.get(i, t);
                        if !x.is_zero() && x.abs() < a.get(best.0, best.1).abs() {
                            best = (i, t);
                        }
                    }
                    for j in t + 1..n {
                        let x = a.get(t, j);
                        if !x.is_zero() && x.abs() < a.get(best.0, best.1).abs() {
                            best = (t, j);
                        }
                    }
                    a.swap_rows(t, best.0);
                    a.swap_cols(t, best.1);
                    continue;
                }
                let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !divides(&p, a.get(i, j))));
                match bad {
                    Some(i) => a.row_axpy(t, &(T::zero() - T::one()), i, t)?,
                    None => break,
                }
            }
            diag.push(a.get(t, t).c_abs()?);
            t += 1;
        }
        let rank = diag.len();
        Ok((rank, diag.into_iter().filter(|d| !d.is_one()).collect()))
    }

    /// Square and invertible over the integers.
    pub fn try_is_unimodular(&self) -> Checked<bool> {
        if self.rows != self.cols {
            return Ok(false);
        }
        let (rank, inv) = self.try_smith()?;
        Ok(rank == self.rows && inv.is_empty())
    }
}

fn divides<T: Scalar>(p: &T, x: &T) -> bool {
    x.is_zero() || (!p.is_zero() && x.mod_floor(p).is_zero())
}

/// Convenience wrappers for [`num_bigint::BigInt`] matrices, which never overflow.
impl DenseMatrix<num_bigint::BigInt> {
    pub fn column_hermite(&self) -> ColumnHermite<num_bigint::BigInt> {
        self.try_column_hermite().expect("bigint arithmetic does not overflow")
    }

    pub fn kernel(&self) -> Vec<SparseVec<num_bigint::BigInt>> {
        self.try_kernel().expect("bigint arithmetic does not overflow")
    }

    pub fn image(&self) -> Vec<SparseVec<num_bigint::BigInt>> {
        self.try_image().expect("bigint arithmetic does not overflow")
    }

    pub fn solve(&self, b: &[num_bigint::BigInt]) -> Solve<num_bigint::BigInt> {
        self.try_solve(b).expect("bigint arithmetic does not overflow")
    }

    pub fn smith(&self) -> (usize, Vec<num_bigint::BigInt>) {
        self.try_smith().expect("bigint arithmetic does not overflow")
    }

    pub fn is_unimodular(&self) -> bool {
        self.try_is_unimodular().expect("bigint arithmetic does not overflow")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn m(rows: &[&[i64]]) -> DenseMatrix<i64> {
        DenseMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    fn apply(a: &DenseMatrix<i64>, x: &[i64]) -> Vec<i64> {
        (0..a.rows()).map(|i| (0..a.cols()).map(|j| a.get(i, j) * x[j]).sum()).collect()
    }

    #[test]
    fn smith_of_small_matrices() {
        assert_eq!(m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]).try_smith().unwrap(), (3, vec![2, 6, 12]));
        assert_eq!(m(&[&[2, 0], &[0, 3]]).try_smith().unwrap(), (2, vec![6]));
        assert_eq!(m(&[&[0, 0], &[0, 0]]).try_smith().unwrap(), (0, vec![]));
        assert_eq!(m(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]).try_smith().unwrap(), (2, vec![3]));
    }

    #[test]
    fn hermite_kernel_is_kernel() {
        let a = m(&[&[1, 2, 3, 4], &[2, 4, 6, 9]]);
        let k = a.try_kernel().unwrap();
        assert_eq!(k.len(), 2);
        for c in k {
            assert!(apply(&a, &c.to_dense(4)).iter().all(|x| *x == 0));
        }
        let hf = a.try_column_hermite().unwrap();
        assert!(hf.v.try_is_unimodular().unwrap());
    }

    #[test]
    fn solve_distinguishes_q_and_z() {
        let a = m(&[&[2, 0], &[0, 3]]);
        assert_eq!(a.try_solve(&[4, 9]).unwrap(), Solve::Solution(vec![2, 3]));
        assert_eq!(a.try_solve(&[1, 0]).unwrap(), Solve::InconsistentOverZ);
        let b = m(&[&[1], &[1]]);
        assert_eq!(b.try_solve(&[1, 2]).unwrap(), Solve::InconsistentOverQ);
    }

    #[test]
    fn unimodular() {
        assert!(m(&[&[2, 1], &[1, 1]]).try_is_unimodular().unwrap());
        assert!(!m(&[&[2, 0], &[0, 1]]).try_is_unimodular().unwrap());
        let big = DenseMatrix::from_rows(&[vec![BigInt::from(0), BigInt::from(-1)], vec![BigInt::from(1), BigInt::from(0)]]);
        assert!(big.is_unimodular());
    }
}
