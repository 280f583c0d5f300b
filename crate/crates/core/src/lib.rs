pub mod groups;
pub mod homology;
pub mod induction;
pub mod polyfun;
pub mod lincat;
pub mod rings;
pub mod simplicial;
