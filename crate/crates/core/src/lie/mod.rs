//! Finite-dimensional Lie algebras over exact scalars: Chevalley–Eilenberg
//! cochains, the homology boundary, and (co)homology by exact linear algebra.

mod algebra;
mod complex;

pub(crate) use complex::{image_space, kernel_space};

pub use algebra::{LieAlgebra, LieModule};
pub use complex::{
    boundary_delta, boundary_matrix, boundary_preimage, ce_coboundary, coboundary_matrix,
    cohomology, homology, lemma_equivalence_probe, supercommutator, ChainElement, Cochain,
    HomologyGroup,
};
