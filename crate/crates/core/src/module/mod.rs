//! Right Hilbert C*-modules, their operators, and tensor constructions.

mod correspondence;
mod hmodule;
mod interior;
mod json;
mod operator;

pub use correspondence::{
    commutant_dimension, rep_multiplicities, validate_correspondence, Correspondence, LeftAction,
};
pub use hmodule::{exterior_tensor, module_norm, validate_module, CoordTensor, HModule};
pub use interior::{
    balanced_gram, interior_tensor, interior_tensor_from_units, relation_defect, InteriorTensor,
    NULL_CUTOFF,
};
pub use json::HModuleJson;
pub use operator::{
    a_linearity_defect, adjoint, adjoint_defect, adjoint_with, compact_basis, compact_dimension,
    compact_from_coefficients, operator_norm, rank_one, rank_one_matrix, span_dimension,
    ModOperator, TraceGeometry,
};
