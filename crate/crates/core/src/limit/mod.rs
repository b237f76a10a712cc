//! Compatible families, truncation levels and the restricted-product checks.

mod checks;
mod family;
mod level;
pub mod random;
mod reps;

pub use family::{
    cvec_from_pairs, cvec_to_pairs, fixed_vector_defect, validate_algebra_family, validate_corr_family,
    validate_module_family, AlgebraFamily, AlgebraFamilyJson, CorrFamily, CorrFamilyJson, Level,
    ModuleFamily, ModuleFamilyJson,
};
pub use level::{
    connecting_map, functoriality_defect, gram_identity_defect, level_algebra, level_layout, level_module,
    level_projection, level_vector, AlgebraConnection, ConnectingMap,
};
pub use checks::{
    check_direct_limit_identity, coherence_check, coherence_defect, coherence_sufficient_check,
    commuting_square_check, compact_connection, compacts_iso_check, left_action_level, type_i_check,
    FULL_LIMIT_COLUMNS,
};
pub use reps::{
    factorize_irrep, induction_commutes_check, level_operator, level_representation, local_rep_defects,
    Factorization, LevelOperator, LocalRep,
};
