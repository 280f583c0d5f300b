use equihom_linalg::reference::{brute_homology, random_small_complex, Rows};
use equihom_linalg::{ChainComplex, FGAbelianGroup, SparseMatrix, SparseVec};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn to_sparse(rows: &Rows, nrows: usize, ncols: usize) -> SparseMatrix<i64> {
    let cols = (0..ncols).map(|j| SparseVec::from_entries((0..nrows).map(|i| (i, rows[i][j])))).collect();
    SparseMatrix::from_columns(nrows, cols).unwrap()
}

fn nonzero_shape(d: &Rows) -> Option<&Rows> {
    (!d.is_empty() && !d[0].is_empty()).then_some(d)
}

fn oracle(ranks: &[usize], ds: &[Rows]) -> Vec<FGAbelianGroup> {
    (0..ranks.len())
        .map(|n| {
            let outgoing = if n == 0 { None } else { nonzero_shape(&ds[n - 1]) };
            let incoming = ds.get(n).and_then(nonzero_shape);
            brute_homology(ranks[n], outgoing, incoming)
        })
        .collect()
}

#[test]
fn random_complexes_match_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut next = |k: u32| rng.gen_range(0..k);
    let mut with_torsion = 0;
    for _ in 0..500 {
        let (ranks, ds) = random_small_complex(&mut next);
        let bs: Vec<SparseMatrix<i64>> =
            ds.iter().enumerate().map(|(k, d)| to_sparse(d, ranks[k], ranks[k + 1])).collect();
        let c = ChainComplex::new_checked(0, ranks.clone(), bs).unwrap();
        let h = c.homology_upto(c.hi());
        assert_eq!(h, oracle(&ranks, &ds), "ranks {ranks:?} boundaries {ds:?}");
        with_torsion += usize::from(h.iter().any(|g| !g.torsion().is_empty()));
    }
    assert!(with_torsion >= 50, "only {with_torsion} complexes exercised torsion");
}

proptest! {
    #[test]
    fn bigint_and_i64_paths_agree(entries in proptest::collection::vec(-5i64..=5, 1..=30), cols in 1usize..=6) {
        let rows: Vec<Vec<i64>> = entries.chunks(cols).filter(|r| r.len() == cols).map(<[i64]>::to_vec).collect();
        prop_assume!(!rows.is_empty());
        let small = SparseMatrix::from_dense_rows(&rows);
        let big: SparseMatrix<num_bigint::BigInt> = small.try_convert().unwrap();
        let a = equihom_linalg::try_smith_sparse(&small).unwrap();
        let b = equihom_linalg::try_smith_sparse(&big).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn smith_is_invariant_under_transpose(entries in proptest::collection::vec(-5i64..=5, 1..=30), cols in 1usize..=6) {
        let rows: Vec<Vec<i64>> = entries.chunks(cols).filter(|r| r.len() == cols).map(<[i64]>::to_vec).collect();
        prop_assume!(!rows.is_empty());
        let m = SparseMatrix::from_dense_rows(&rows);
        prop_assert_eq!(equihom_linalg::smith_summary(&m), equihom_linalg::smith_summary(&m.transpose()));
    }
}
