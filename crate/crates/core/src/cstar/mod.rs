//! Finite-dimensional C*-algebras as direct sums of matrix blocks.

mod algebra;
mod hom;
mod tensor;

pub use algebra::{
    diag, is_positive, is_projection, make_algebra, op_norm, AlgElement, AlgElementJson,
    BlockAlgebra, UnitIndex, DEFAULT_TOL,
};
pub use hom::{
    block_irrep, embed_corner, irreps_of, rank_at_most_one, validate_star_hom, HomDefects,
    StarHom,
};
pub use tensor::{interleave, mixed_radix, split_radix, tensor_algebra, tensor_elements, TensorLayout};
