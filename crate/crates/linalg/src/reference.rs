//! Brute-force reference computations for small dense matrices.
//!
//! Nothing here shares code with the elimination routines; it exists to
//! cross-examine them. Costs are exponential in the matrix size.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::complex::FGAbelianGroup;

pub type Rows = Vec<Vec<i64>>;

fn to_big(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

/// Rank over ℚ by fraction-free (Bareiss) elimination.
pub fn rational_rank(rows: &[Vec<i64>]) -> usize {
    let mut a = to_big(rows);
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..n {
        let Some(p) = (rank..m).find(|&i| !a[i][col].is_zero()) else { continue };
        a.swap(rank, p);
        for i in rank + 1..m {
            for j in col + 1..n {
                let v = &a[rank][col] * &a[i][j] - &a[i][col] * &a[rank][j];
                a[i][j] = v / &prev;
            }
            a[i][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    rank
}

/// Rank over 𝔽_p by plain Gaussian elimination.
pub fn rank_mod_p(rows: &[Vec<i64>], p: i64) -> usize {
    let mut a: Vec<Vec<i64>> = rows.iter().map(|r| r.iter().map(|x| x.rem_euclid(p)).collect()).collect();
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..n {
        let Some(piv) = (rank..m).find(|&i| a[i][col] != 0) else { continue };
        a.swap(rank, piv);
        let inv = mod_inverse(a[rank][col], p);
        for i in 0..m {
            if i != rank && a[i][col] != 0 {
                let f = a[i][col] * inv % p;
                for j in 0..n {
                    a[i][j] = (a[i][j] - f * a[rank][j]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn mod_inverse(x: i64, p: i64) -> i64 {
    (1..p).find(|y| x * y % p == 1).expect("p is prime and x is nonzero")
}

fn det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else { return BigInt::zero() };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[k][k] * &a[i][j] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        BigInt::one()
    } else {
        sign * &a[n - 1][n - 1]
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Invariant factors from determinantal divisors: `d_k = D_k / D_{k-1}` where
/// `D_k` is the gcd of all `k×k` minors. Returns every nonzero factor, units included.
pub fn determinantal_invariants(rows: &[Vec<i64>]) -> Vec<BigInt> {
    let a = to_big(rows);
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    let mut prev = BigInt::one();
    for k in 1..=m.min(n) {
        let mut g = BigInt::zero();
        for rs in subsets(m, k) {
            for cs in subsets(n, k) {
                let minor = rs.iter().map(|&i| cs.iter().map(|&j| a[i][j].clone()).collect()).collect();
                g = g.gcd(&det(minor));
            }
        }
        if g.is_zero() {
            break;
        }
        out.push(&g / &prev);
        prev = g;
    }
    out
}

const SMALL_PRIMES: [i64; 10] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29];

/// `H_n` of `C_{n+1} → C_n → C_{n-1}` from brute-force data, given the
/// incoming and outgoing boundaries as dense rows (`None` for zero maps).
///
/// Panics if the rational rank, the determinantal divisors and the ranks
/// modulo small primes disagree with each other.
pub fn brute_homology(dim: usize, outgoing: Option<&Rows>, incoming: Option<&Rows>) -> FGAbelianGroup {
    let out_rank = outgoing.map_or(0, |d| rational_rank(d));
    let (in_rank, factors) = match incoming {
        Some(d) => {
            let f = determinantal_invariants(d);
            let r = rational_rank(d);
            assert_eq!(f.len(), r, "determinantal rank disagrees with Bareiss rank");
            for p in SMALL_PRIMES {
                let coprime = f.iter().filter(|x| !(*x % p).is_zero()).count();
                assert_eq!(rank_mod_p(d, p), coprime, "rank mod {p} disagrees with invariant factors");
            }
            (r, f)
        }
        None => (0, Vec::new()),
    };
    FGAbelianGroup::new(dim - out_rank - in_rank, factors.into_iter().map(|x| x.abs()))
}

/// A random complex `C_0 ← C_1 ← … ← C_len` with ranks at most 6 and entries
/// in `[-5, 5]`. `d∘d = 0` holds by construction: each new boundary is built
/// from short integer kernel vectors of the previous one, found by search.
///
/// `next(k)` must return a uniform value in `0..k`.
pub fn random_small_complex(next: &mut dyn FnMut(u32) -> u32) -> (Vec<usize>, Vec<Rows>) {
    let len = 1 + next(3) as usize;
    let ranks: Vec<usize> = (0..=len).map(|_| next(7) as usize).collect();
    let mut boundaries: Vec<Rows> = Vec::new();
    for n in 1..=len {
        let (rows, cols) = (ranks[n - 1], ranks[n]);
        let d = if n == 1 {
            random_matrix(rows, cols, next)
        } else {
            let prev = &boundaries[n - 2];
            let kernel = short_kernel_vectors(prev, rows);
            let mut d = vec![vec![0i64; cols]; rows];
            for j in 0..cols {
                if kernel.is_empty() || next(5) == 0 {
                    continue;
                }
                let mut v = kernel[next(kernel.len() as u32) as usize].clone();
                if next(2) == 0 {
                    let w = &kernel[next(kernel.len() as u32) as usize];
                    let s: Vec<i64> = v.iter().zip(w).map(|(a, b)| a + b).collect();
                    if s.iter().all(|x| x.abs() <= 5) {
                        v = s;
                    }
                }
                let k = [1, 1, 2, 3][next(4) as usize];
                if v.iter().all(|x| (x * k).abs() <= 5) {
                    v.iter_mut().for_each(|x| *x *= k);
                }
                for i in 0..rows {
                    d[i][j] = v[i];
                }
            }
            d
        };
        boundaries.push(d);
    }
    (ranks, boundaries)
}

fn random_matrix(rows: usize, cols: usize, next: &mut dyn FnMut(u32) -> u32) -> Rows {
    if next(3) == 0 && rows > 0 && cols > 0 {
        let k = 1 + next(rows.min(cols) as u32) as usize;
        let a: Rows = (0..rows).map(|_| (0..k).map(|_| next(5) as i64 - 2).collect()).collect();
        let b: Rows = (0..k).map(|_| (0..cols).map(|_| next(3) as i64 - 1).collect()).collect();
        return (0..rows)
            .map(|i| (0..cols).map(|j| (0..k).map(|t| a[i][t] * b[t][j]).sum::<i64>().clamp(-5, 5)).collect())
            .collect();
    }
    (0..rows).map(|_| (0..cols).map(|_| next(11) as i64 - 5).collect()).collect()
}

fn short_kernel_vectors(d: &Rows, len: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let total = 5usize.pow(len as u32);
    for code in 1..total {
        let mut c = code;
        let v: Vec<i64> = (0..len)
            .map(|_| {
                let x = (c % 5) as i64 - 2;
                c /= 5;
                x
            })
            .collect();
        if v.iter().all(|&x| x == 0) {
            continue;
        }
        if d.iter().all(|row| row.iter().zip(&v).map(|(a, b)| a * b).sum::<i64>() == 0) {
            out.push(v);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinantal_divisors_of_known_matrix() {
        let m = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        assert_eq!(determinantal_invariants(&m), vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
        assert_eq!(rational_rank(&m), 3);
        assert_eq!(rank_mod_p(&m, 2), 0);
        assert_eq!(rank_mod_p(&m, 3), 1);
    }

    #[test]
    fn generated_complexes_square_to_zero() {
        let mut state = 12345u64;
        let mut next = move |k: u32| {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) % k as u64) as u32
        };
        for _ in 0..50 {
            let (ranks, ds) = random_small_complex(&mut next);
            for w in ds.windows(2) {
                let (a, b) = (&w[0], &w[1]);
                for i in 0..a.len() {
                    for j in 0..b.first().map_or(0, Vec::len) {
                        let s: i64 = (0..b.len()).map(|k| a[i][k] * b[k][j]).sum();
                        assert_eq!(s, 0);
                    }
                }
            }
            assert!(ranks.iter().all(|&r| r <= 6));
            assert!(ds.iter().flatten().flatten().all(|x| x.abs() <= 5));
        }
    }
}
