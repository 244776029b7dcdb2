//! The symmetric and alternating families: builders, closed forms, the
//! product coefficient identity and the reproduction table.

mod family;
mod table;

pub use family::{
    closed_form_expectation, jacobian_presentation, lemma_coefficient_identity, product_presentation,
    product_presentation_with, ClosedFormExpectation, Family, FamilySpec, LemmaCheck, LemmaRow,
};
pub use table::{
    alternating_matrix, corrupted_signatures, exponent_matrix, hyperelliptic_matrix, path_equivalence,
    projector_holds, reproduce_paper_table, TableRow, Verdict,
};

#[cfg(test)]
mod tests;
