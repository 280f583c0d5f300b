use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_bigint::BigInt;

use crate::dense::DenseMatrix;
use crate::scalar::{Checked, Scalar};
use crate::sparse::SparseMatrix;

/// Rank and the invariant factors different from 1 (ascending, each dividing the next).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SmithSummary {
    pub rank: usize,
    pub invariants: Vec<BigInt>,
}

/// Smith invariants of a sparse integer matrix.
///
/// Runs on `i64` when every entry fits and restarts on [`BigInt`] if an
/// intermediate value overflows. Both paths are deterministic.
pub fn smith_summary<T: Scalar>(m: &SparseMatrix<T>) -> SmithSummary {
    if let Some(small) = m.try_convert::<i64>() {
        if let Ok(s) = try_smith_sparse(&small) {
            return s;
        }
    }
    let big = m.try_convert::<BigInt>().expect("every scalar embeds in BigInt");
    try_smith_sparse(&big).expect("BigInt arithmetic does not overflow")
}

/// Markowitz-style elimination on unit pivots, then dense Smith reduction of
/// whatever is left.
pub fn try_smith_sparse<T: Scalar>(m: &SparseMatrix<T>) -> Checked<SmithSummary> {
    let ncols = m.ncols();
    let mut rows: Vec<Vec<(usize, T)>> = m.transpose().columns().iter().map(|c| c.entries().to_vec()).collect();
    let nrows = rows.len();
    let mut col_rows: Vec<Vec<usize>> = vec![Vec::new(); ncols];
    let mut col_count = vec![0usize; ncols];
    for (r, row) in rows.iter().enumerate() {
        for (c, _) in row {
            col_rows[*c].push(r);
            col_count[*c] += 1;
        }
    }
    let mut alive = vec![true; nrows];
    let mut version = vec![0u32; nrows];
    let mut heap: BinaryHeap<Reverse<(usize, usize, u32)>> =
        (0..nrows).filter(|&r| !rows[r].is_empty()).map(|r| Reverse((rows[r].len(), r, 0))).collect();
    let mut rank = 0;

    while let Some(Reverse((_, r, ver))) = heap.pop() {
        if !alive[r] || version[r] != ver || rows[r].is_empty() {
            continue;
        }
        let pick = rows[r]
            .iter()
            .filter(|(_, x)| x.is_unit())
            .min_by_key(|(c, _)| (col_count[*c], *c))
            .cloned();
        let Some((c, p)) = pick else { continue };
        let pivot_row = std::mem::take(&mut rows[r]);
        alive[r] = false;
        for (cc, _) in &pivot_row {
            col_count[*cc] -= 1;
        }
        let mut others = std::mem::take(&mut col_rows[c]);
        others.sort_unstable();
        others.dedup();
        for r2 in others {
            if !alive[r2] {
                continue;
            }
            let Ok(k) = rows[r2].binary_search_by_key(&c, |e| e.0) else { continue };
            let factor = rows[r2][k].1.c_mul(&p)?;
            let old = std::mem::take(&mut rows[r2]);
            let mut merged = Vec::with_capacity(old.len() + pivot_row.len());
            let (mut a, mut b) = (0, 0);
            while a < old.len() || b < pivot_row.len() {
                let ca = old.get(a).map_or(usize::MAX, |e| e.0);
                let cb = pivot_row.get(b).map_or(usize::MAX, |e| e.0);
                if ca < cb {
                    merged.push(old[a].clone());
                    a += 1;
                } else if cb < ca {
                    let x = T::zero().c_sub_mul(&factor, &pivot_row[b].1)?;
                    col_count[cb] += 1;
                    col_rows[cb].push(r2);
                    merged.push((cb, x));
                    b += 1;
                } else {
                    let x = old[a].1.c_sub_mul(&factor, &pivot_row[b].1)?;
                    if x.is_zero() {
                        col_count[ca] -= 1;
                    } else {
                        merged.push((ca, x));
                    }
                    a += 1;
                    b += 1;
                }
            }
            rows[r2] = merged;
            version[r2] += 1;
            if !rows[r2].is_empty() {
                heap.push(Reverse((rows[r2].len(), r2, version[r2])));
            }
        }
        rank += 1;
    }

    let live: Vec<usize> = (0..nrows).filter(|&r| alive[r] && !rows[r].is_empty()).collect();
    let mut col_index = vec![usize::MAX; ncols];
    let mut next = 0;
    for &r in &live {
        for (c, _) in &rows[r] {
            if col_index[*c] == usize::MAX {
                col_index[*c] = next;
                next += 1;
            }
        }
    }
    let mut residual = DenseMatrix::zeros(live.len(), next);
    for (i, &r) in live.iter().enumerate() {
        for (c, x) in &rows[r] {
            residual.set(i, col_index[*c], x.clone());
        }
    }
    let (res_rank, inv) = residual.try_smith()?;
    Ok(SmithSummary { rank: rank + res_rank, invariants: inv.iter().map(Scalar::to_bigint).collect() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sm(rows: &[&[i64]]) -> SparseMatrix<i64> {
        SparseMatrix::from_dense_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    #[test]
    fn agrees_with_dense_on_examples() {
        let cases = [
            sm(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]),
            sm(&[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]),
            sm(&[&[0, 0], &[0, 0]]),
            sm(&[&[1, -1, 0, 0], &[-1, 1, 0, 0], &[0, 0, 2, 2]]),
        ];
        for m in cases {
            let (rank, inv) = DenseMatrix::from_sparse(&m).try_smith().unwrap();
            let s = smith_summary(&m);
            assert_eq!(s.rank, rank);
            assert_eq!(s.invariants, inv.iter().map(|x| BigInt::from(*x)).collect::<Vec<_>>());
        }
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let big = i64::MAX / 2;
        let m = sm(&[&[big, big - 1], &[big - 1, big - 2]]);
        let s = smith_summary(&m);
        assert_eq!(s.rank, 2);
        assert!(s.invariants.is_empty());
        let m = sm(&[&[big, 0], &[0, big]]);
        assert_eq!(smith_summary(&m).invariants, vec![BigInt::from(big), BigInt::from(big)]);
    }

    #[test]
    fn empty_shapes() {
        assert_eq!(smith_summary(&SparseMatrix::<i64>::zero(0, 5)).rank, 0);
        assert_eq!(smith_summary(&SparseMatrix::<i64>::zero(5, 0)).rank, 0);
    }
}
