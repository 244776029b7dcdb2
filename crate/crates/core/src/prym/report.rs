use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::engine::{
    correspondence_coefficients, criterion_residual, galois_cover_genus, isotypic_condition, prym_dimension,
    quotient_genus_x, CorrespondenceData, MaximalityMethod,
};
use super::hecke::{hecke_commutes, hecke_matrix, projector_identity_check, ProjectorVerdict};
use super::input::PresentationInput;
use crate::error::{Error, Result};
use crate::reptheory::is_valid_irreducible;
use crate::serde_decimal;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub status: CheckStatus,
    pub detail: String,
}

impl Check {
    fn new(passed: bool, detail: impl Into<String>) -> Self {
        Self {
            status: if passed { CheckStatus::Pass } else { CheckStatus::Fail },
            detail: detail.into(),
        }
    }

    fn skipped(detail: impl Into<String>) -> Self {
        Self {
            status: CheckStatus::Skipped,
            detail: detail.into(),
        }
    }

    pub fn failed(&self) -> bool {
        self.status == CheckStatus::Fail
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DoubleCosetRow {
    /// `g_{i1}` in cycle notation.
    pub rep: String,
    /// Number of left cosets of `H` in `H g_{i1} H`.
    #[serde(serialize_with = "serde_decimal::uint")]
    pub n_i: BigUint,
    #[serde(serialize_with = "serde_decimal::int")]
    pub b_i: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Spectrum {
    #[serde(serialize_with = "serde_decimal::int")]
    pub eigenvalue: BigInt,
    /// Multiplicity of `b·q`.
    pub rank: usize,
    /// Multiplicity of 0.
    pub kernel: usize,
    pub square_ok: bool,
    #[serde(serialize_with = "serde_decimal::int")]
    pub expected_rank: BigInt,
}

impl Spectrum {
    fn new(index: usize, p: &ProjectorVerdict) -> Self {
        Self {
            eigenvalue: p.lambda.clone(),
            rank: p.rank,
            kernel: index - p.rank,
            square_ok: p.square_ok,
            expected_rank: p.expected_rank.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrymReport {
    pub group: String,
    #[serde(serialize_with = "serde_decimal::uint")]
    pub group_order: BigUint,
    #[serde(serialize_with = "serde_decimal::uint")]
    pub subgroup_order: BigUint,
    #[serde(serialize_with = "serde_decimal::uint")]
    pub index: BigUint,
    pub representations: Vec<String>,
    #[serde(serialize_with = "serde_decimal::int_vec")]
    pub fixed_dims: Vec<BigInt>,
    pub double_cosets: Vec<DoubleCosetRow>,
    #[serde(serialize_with = "serde_decimal::int")]
    pub b: BigInt,
    #[serde(serialize_with = "serde_decimal::int")]
    pub q: BigInt,
    #[serde(serialize_with = "serde_decimal::opt_int")]
    pub dim_prym: Option<BigInt>,
    #[serde(serialize_with = "serde_decimal::opt_int")]
    pub genus_x: Option<BigInt>,
    #[serde(serialize_with = "serde_decimal::opt_int")]
    pub genus_z: Option<BigInt>,
    #[serde(serialize_with = "serde_decimal::opt_int")]
    pub criterion_residual: Option<BigInt>,
    pub maximality_method: MaximalityMethod,
    pub spectrum: Option<Spectrum>,
    pub checks: BTreeMap<String, Check>,
    pub valid: bool,
    pub verdict: String,
}

impl PrymReport {
    pub fn failed_checks(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|(_, c)| c.failed())
            .map(|(k, _)| k.as_str())
            .collect()
    }
}

/// Signature inconsistencies become failed checks; everything else is an
/// error.
fn soft(result: Result<BigInt>, checks: &mut Vec<(String, Check)>, name: &str) -> Result<Option<BigInt>> {
    match result {
        Ok(v) => Ok(Some(v)),
        Err(Error::InconsistentSignature(msg)) => {
            checks.push((name.into(), Check::new(false, msg)));
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

pub fn run_presentation(input: &PresentationInput) -> Result<PrymReport> {
    let mut checks: Vec<(String, Check)> = Vec::new();

    let mut irreducible = true;
    let mut notes = Vec::new();
    for (k, chi) in input.characters().iter().enumerate() {
        let v = is_valid_irreducible(chi)?;
        if !v.is_irreducible_rational() {
            irreducible = false;
            notes.push(format!("V_{}: ⟨χ,χ⟩ = {}, integral = {}", k + 1, v.norm, v.integral));
        }
    }
    checks.push((
        "irreducibility".into(),
        Check::new(
            irreducible,
            if irreducible {
                "all representations are rational irreducible".to_string()
            } else {
                notes.join("; ")
            },
        ),
    ));

    let iso = isotypic_condition(input).map_err(|e| e.context("isotypic condition"))?;
    let dims: Vec<String> = iso.fixed_dims.iter().map(|d| d.to_string()).collect();
    checks.push((
        "isotypic".into(),
        Check::new(iso.fixed_dims_ok(), format!("dim V_k^H = [{}]", dims.join(", "))),
    ));
    let method = match iso.method {
        MaximalityMethod::Exhaustive => "exhaustive",
        MaximalityMethod::Structural => "structural",
    };
    checks.push((
        "maximality".into(),
        Check::new(
            iso.maximal,
            match &iso.witness {
                None => format!("{method}: every proper overgroup kills some V_k^H"),
                Some(g) => format!("{method}: ⟨H, {g}⟩ still fixes a line in every V_k"),
            },
        ),
    ));

    let CorrespondenceData {
        decomposition,
        coefficients,
        b,
        q,
    } = correspondence_coefficients(input).map_err(|e| e.context("correspondence coefficients"))?;

    let residual = if input.signature().quotient_genus.is_zero() {
        let r = criterion_residual(input, &q)?;
        checks.push(("criterion".into(), Check::new(r.is_zero(), format!("residual {r}"))));
        Some(r)
    } else {
        checks.push((
            "criterion".into(),
            Check::skipped("the criterion is stated for genus-zero quotients only"),
        ));
        None
    };

    let dim_prym = soft(prym_dimension(input), &mut checks, "dim_prym")?;
    if let Some(d) = &dim_prym {
        checks.push((
            "dim_prym".into(),
            Check::new(!d.is_negative(), format!("dim P = {d}")),
        ));
    }
    let genus_x = soft(quotient_genus_x(input), &mut checks, "genus_x")?;
    if let Some(g) = &genus_x {
        checks.push(("genus_x".into(), Check::new(true, format!("g_X = {g}"))));
    }
    let genus_z = soft(galois_cover_genus(input.group(), input.signature()), &mut checks, "genus_z")?;
    if let Some(g) = &genus_z {
        checks.push(("genus_z".into(), Check::new(true, format!("g_Z = {g}"))));
    }

    let index = input.subgroup().index();
    let matrix_bound = input.options().matrix_bound;
    let spectrum = match hecke_matrix(&decomposition, &coefficients, matrix_bound) {
        Ok(m) => {
            let commutes = hecke_commutes(input.group(), &decomposition, &m)?;
            checks.push((
                "hecke_commutation".into(),
                Check::new(commutes, "M commutes with the action of every generator of G"),
            ));
            let p = projector_identity_check(&m, &b, &q, input.characters())?;
            checks.push((
                "projector".into(),
                Check::new(
                    p.holds(),
                    format!(
                        "M² {} {}·M; rank {} (expected {})",
                        if p.square_ok { "=" } else { "≠" },
                        p.lambda,
                        p.rank,
                        p.expected_rank
                    ),
                ),
            ));
            Some(Spectrum::new(m.rows(), &p))
        }
        Err(Error::IndexTooLarge { index, bound }) => {
            let why = format!("index {index} exceeds the matrix bound {bound}");
            checks.push(("hecke_commutation".into(), Check::skipped(why.clone())));
            checks.push(("projector".into(), Check::skipped(why)));
            None
        }
        Err(e) => return Err(e.context("Hecke matrix")),
    };

    let double_cosets = decomposition
        .reps()
        .iter()
        .zip(decomposition.sizes())
        .zip(&coefficients)
        .map(|((g, n), bi)| DoubleCosetRow {
            rep: g.to_string(),
            n_i: n.clone(),
            b_i: bi.clone(),
        })
        .collect();

    let checks: BTreeMap<String, Check> = checks.into_iter().collect();
    let failed: Vec<&str> = checks.iter().filter(|(_, c)| c.failed()).map(|(k, _)| k.as_str()).collect();
    let valid = failed.is_empty();
    let verdict = if valid {
        format!("valid Prym-Tyurin presentation of exponent {q}")
    } else {
        format!("not a valid presentation: failed {}", failed.join(", "))
    };

    Ok(PrymReport {
        group: input.group().label().to_string(),
        group_order: input.group().order().clone(),
        subgroup_order: input.subgroup().order().clone(),
        index,
        representations: input.reps().iter().map(|r| r.describe()).collect(),
        fixed_dims: iso.fixed_dims,
        double_cosets,
        b,
        q,
        dim_prym,
        genus_x,
        genus_z,
        criterion_residual: residual,
        maximality_method: iso.method,
        spectrum,
        checks,
        valid,
        verdict,
    })
}
