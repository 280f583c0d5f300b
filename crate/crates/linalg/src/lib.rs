//! Exact integer linear algebra: sparse vectors and matrices, Hermite and
//! Smith normal forms, integer lattices, and homology of chain complexes.
//!
//! Algorithms are generic over [`Scalar`]; the aliases below fix the
//! arbitrary-precision instantiation used by the algebra layers.

mod complex;
mod dense;
pub mod reference;
mod scalar;
mod snf;
mod sparse;

pub use complex::{universal_coefficients_zmod, ChainComplex, FGAbelianGroup};
pub use dense::{ColumnHermite, DenseMatrix, Solve};
pub use scalar::{ext_gcd, Checked, Overflow, Scalar};
pub use snf::{smith_summary, try_smith_sparse, SmithSummary};
pub use sparse::{Accumulator, SparseMatrix, SparseVec};

pub use num_bigint::BigInt;

pub type Z = BigInt;
pub type ZVec = SparseVec<Z>;
pub type ZMatrix = SparseMatrix<Z>;
pub type ZDense = DenseMatrix<Z>;
pub type ChainComplexZ = ChainComplex<Z>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("boundary composite d∘d is nonzero into degree {}", degree - 2)]
    NotAComplex { degree: i64 },
    #[error("cannot parse abelian group {0:?}")]
    Parse(String),
}
