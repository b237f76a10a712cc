//! Restricted tensor products of finite-dimensional C*-algebras, Hilbert
//! C*-modules and C*-correspondences, checked level by level, plus a finite-group
//! model of parabolic induction for `GL_2` over small finite fields.

pub mod cstar;
pub mod error;
pub mod group;
pub mod harness;
pub mod limit;
pub mod linalg;
pub mod module;
pub mod parabolic;
pub mod report;

pub use error::{Error, Result};
