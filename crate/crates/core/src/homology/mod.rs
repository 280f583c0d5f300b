//! Exact integral homology: Hochschild, cyclic and bar complexes, group
//! hyperhomology, and coends over the orbit category.

mod coend;
mod hyper;
mod words;

use equihom_linalg::{ChainComplexZ, DenseMatrix, FGAbelianGroup, LinalgError, ZMatrix, ZVec, Z};
use thiserror::Error;

use crate::groups::GroupError;
use crate::lincat::CatError;
use crate::polyfun::PolyError;
use crate::rings::{BasedRing, RingError};
use crate::simplicial::ComplexError;

pub use coend::{
    alpha_check, equivariant_coend, orbit_complex, reilu_rhs_summand, verify_reilu, AlphaCheck, CoendReport, ReiluReport,
    ReiluSummand,
};
pub use hyper::{group_hyperhomology, EquivariantComplex};
pub use words::{
    bar_complex, bar_tor_probe, cyclic_hc, cyclic_homology, cyclic_nerve_complex, hochschild_complex, hochschild_homology,
    BarProbe, CoefficientGroup, Coefficients, ConjugacySummand, FilteredAlgebra, HochschildComplex, Letters, WordBasis,
};

/// Largest number of basis elements any single degree may have.
pub const WORD_CAP: usize = 400_000;
pub const BAR_MAX_DEGREE: usize = 6;
pub const HC_MAX_DEGREE: usize = 4;

#[derive(Debug, Error)]
pub enum HomologyError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Cat(#[from] CatError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("{what} needs {size} basis elements, over the cap of {cap}")]
    CapExceeded { what: String, size: usize, cap: usize },
    #[error("degree {degree} is beyond the supported bound {bound}")]
    DegreeTooLarge { degree: usize, bound: usize },
    #[error("the ring carries no crossed-product grading")]
    NotGraded,
    #[error("the ring must be unital")]
    NonUnital,
    #[error("module structure is not equivariant: {0}")]
    NotEquivariant(String),
    #[error("{0}")]
    Inconsistent(String),
}

pub(crate) fn check_cap(what: impl Into<String>, size: usize, cap: usize) -> Result<(), HomologyError> {
    if size > cap {
        return Err(HomologyError::CapExceeded { what: what.into(), size, cap });
    }
    Ok(())
}

/// `H_n(C)` after checking `d∘d = 0`.
pub fn snf_homology(c: &ChainComplexZ, n: i64) -> Result<FGAbelianGroup, HomologyError> {
    c.validate()?;
    if n < c.lo() || n > c.hi() {
        return Err(HomologyError::Inconsistent(format!("degree {n} is outside [{}, {}]", c.lo(), c.hi())));
    }
    Ok(c.homology(n))
}

/// `L_n A` as a sublattice of `A^{⊗n+2}`, with `L₋₁A = A` and
/// `L_{n+1}A = ker(μ: A ⊗ L_nA → L_nA)`.
#[derive(Clone, Debug)]
pub struct Ladder {
    pub n: i64,
    /// Rank of the ambient tensor power.
    pub ambient: usize,
    pub basis: Vec<ZVec>,
}

impl Ladder {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn group(&self) -> FGAbelianGroup {
        FGAbelianGroup::free(self.rank())
    }
}

pub const LADDER_CAP: usize = 20_000;

pub fn l_ladder(a: &BasedRing, n: i64) -> Result<Ladder, HomologyError> {
    if n < -1 {
        return Err(HomologyError::Inconsistent("the ladder starts at n = -1".into()));
    }
    let r = a.rank();
    let mut current = Ladder { n: -1, ambient: r, basis: (0..r).map(ZVec::unit).collect() };
    while current.n < n {
        let ambient = current.ambient * r;
        check_cap("L-ladder", ambient, LADDER_CAP)?;
        let block = current.ambient / r;
        // a ⊗ l ↦ a·l, multiplying into the first tensor factor of l
        let mut cols = Vec::with_capacity(r * current.rank());
        for i in 0..r {
            for l in &current.basis {
                let mut acc = equihom_linalg::Accumulator::new();
                for (idx, c) in l.iter() {
                    let (first, rest) = (idx / block, idx % block);
                    for (p, d) in a.basis_mul(i, first).iter() {
                        acc.add(p * block + rest, c * d);
                    }
                }
                cols.push(acc.finish());
            }
        }
        let kernel = DenseMatrix::<Z>::from_columns(current.ambient, &cols).kernel();
        let m = current.rank();
        let basis = kernel
            .iter()
            .map(|v| {
                let mut acc = equihom_linalg::Accumulator::new();
                for (k, c) in v.iter() {
                    let (i, j) = (k / m, k % m);
                    acc.add_vec(&current.basis[j].map_indices(|idx| i * current.ambient + idx), c);
                }
                acc.finish()
            })
            .collect();
        current = Ladder { n: current.n + 1, ambient, basis };
    }
    Ok(current)
}

/// Boundary matrix from columns, with a shape error mapped into this module.
pub(crate) fn matrix(rows: usize, cols: Vec<ZVec>) -> Result<ZMatrix, HomologyError> {
    Ok(ZMatrix::from_columns(rows, cols)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::{integers, matrix_ring};
    use crate::simplicial::GSimplicialComplex;
    use equihom_linalg::reference::{brute_homology, random_small_complex};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn boundary_of_tetrahedron() {
        let x = GSimplicialComplex::simplicial(4, &[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]], None).unwrap();
        let c = x.chain_complex(&x.all());
        let h: Vec<_> = (0..=2).map(|n| snf_homology(&c, n).unwrap()).collect();
        assert_eq!(h, vec![FGAbelianGroup::free(1), FGAbelianGroup::zero(), FGAbelianGroup::free(1)]);
    }

    #[test]
    fn multiplication_by_two() {
        let d = ZMatrix::from_dense_rows(&[vec![Z::from(2)]]);
        let c = ChainComplexZ::new(0, vec![1, 1], vec![d]).unwrap();
        assert_eq!(snf_homology(&c, 0).unwrap(), FGAbelianGroup::from_small(0, &[2]));
        assert_eq!(snf_homology(&c, 1).unwrap(), FGAbelianGroup::zero());
        let zero = ChainComplexZ::new(0, vec![0, 0], vec![ZMatrix::zero(0, 0)]).unwrap();
        assert!(snf_homology(&zero, 1).unwrap().is_zero());
    }

    #[test]
    fn non_complex_is_rejected() {
        let one = ZMatrix::identity(1);
        let c = ChainComplexZ::new(0, vec![1, 1, 1], vec![one.clone(), one]).unwrap();
        assert!(matches!(snf_homology(&c, 1), Err(HomologyError::Linalg(LinalgError::NotAComplex { .. }))));
    }

    #[test]
    fn snf_agrees_with_brute_force_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..500 {
            let mut next = |m: u32| rng.gen_range(0..m);
            let (ranks, rows) = random_small_complex(&mut next);
            let boundaries: Vec<ZMatrix> = rows
                .iter()
                .map(|r| ZMatrix::from_dense_rows(&r.iter().map(|row| row.iter().map(|&x| Z::from(x)).collect()).collect::<Vec<_>>()))
                .zip(1..)
                .map(|(m, k)| if m.nrows() == 0 { ZMatrix::zero(ranks[k - 1], ranks[k]) } else { m })
                .collect();
            let c = ChainComplexZ::new(0, ranks.clone(), boundaries).unwrap();
            for n in 0..ranks.len() {
                let outgoing = if n > 0 { Some(&rows[n - 1]) } else { None };
                let incoming = rows.get(n);
                let expected = brute_homology(ranks[n], outgoing, incoming);
                assert_eq!(snf_homology(&c, n as i64).unwrap(), expected, "ranks {ranks:?}, degree {n}");
            }
        }
    }

    #[test]
    fn ladder_examples() {
        let z = integers();
        assert_eq!(l_ladder(&z, -1).unwrap().rank(), 1);
        assert_eq!(l_ladder(&z, 0).unwrap().rank(), 0);
        let m2 = matrix_ring(2);
        assert_eq!(l_ladder(&m2, -1).unwrap().rank(), 4);
        let l0 = l_ladder(&m2, 0).unwrap();
        assert_eq!(l0.rank(), 12);
        assert_eq!(l0.ambient, 16);
        // L₁ = ker(A ⊗ L₀ → L₀): A ⊗ L₀ has rank 48 and the map is onto L₀
        assert_eq!(l_ladder(&m2, 1).unwrap().rank(), 36);
    }
}
