//! Correspondences from group data: coefficients, exponent, the genus-zero
//! criterion, dimensions and genera, and the Hecke operator on `G/H`.

mod engine;
mod hecke;
mod input;
mod report;

pub use engine::{
    coefficients, correspondence_coefficients, criterion_residual, exponent, galois_cover_genus,
    isotypic_condition, prym_dimension, quotient_genus_x, CorrespondenceData, IsotypicVerdict,
    MaximalityMethod,
};
pub use hecke::{hecke_commutes, hecke_matrix, projector_identity_check, ProjectorVerdict};
pub use input::{
    cyclic_subgroups_conjugate, Branch, EngineOptions, GeometricSignature, PresentationInput,
    DEFAULT_MATRIX_BOUND,
};
pub use report::{run_presentation, Check, CheckStatus, DoubleCosetRow, PrymReport, Spectrum};
