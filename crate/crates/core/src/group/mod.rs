//! Finite groups, group algebras, induced representations and character tables.

mod algebra;
mod characters;
mod rep;
mod table;

pub use algebra::{
    convolve, gelfand_check, hecke, k_average, modular_delta, proj_pk, star, GelfandVerdict, GroupAlgebraElement,
    Hecke,
};
pub use characters::{decompose_rep, regular_rep_embed, CharacterTable, Decomposition, Fourier};
pub use rep::{character_inner, induce, induced_character, invariant_subspace, Rep, RepDefects, RepJson};
pub use table::{group_from_table, subgroup_generate, FiniteGroup, GroupJson, Subgroup};
