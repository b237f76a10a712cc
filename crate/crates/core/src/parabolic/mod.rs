//! `GL_2(F_q)`, its Borel decomposition, and parabolic induction as a correspondence.

mod datum;
mod field;
mod global;
mod local;

pub use datum::{build_datum, KChoice, ParabolicDatum};
pub use field::{det, mat_mul, FiniteField, Gl2, Mat2};
pub use global::{adelic_family, family_report, global_induction_check, local_rep, AdelicFamily};
pub use local::{
    asspar_check, asspar_check_with, build_egn, distinguished_vector, egn_inner, l_character,
    local_induction_check, x_inner, LocalCorrespondence,
};
