//! Exact computation and verification of Prym-Tyurin presentations from
//! finite permutation-group data.
//!
//! The crate is layered bottom-up:
//!
//! * [`permgrp`]: permutations, groups, conjugacy classes, double cosets;
//! * [`reptheory`]: rational class functions and the characters used here;
//! * [`prym`]: correspondence coefficients, exponent, criterion, genera and
//!   the Hecke-operator realisation of the correspondence;
//! * [`constructions`]: builders for the symmetric and alternating families
//!   and their closed-form cross-checks.

pub mod constructions;
pub mod error;
pub mod linalg;
pub mod permgrp;
pub mod prym;
pub mod reptheory;
pub mod serde_decimal;

pub use error::{Error, Result};
