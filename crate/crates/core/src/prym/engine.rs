use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::input::{GeometricSignature, PresentationInput};
use crate::error::{Error, Result};
use crate::permgrp::{
    double_cosets, simultaneous_coset_reps, DoubleCosetDecomposition, PermGroup, Permutation, Subgroup,
};
use crate::reptheory::{
    character_of, fixed_space_dim, induced_trivial_character, inner_product, ClassFunction, RepSpec,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MaximalityMethod {
    /// Every minimal overgroup `⟨H, g⟩` was enumerated.
    Exhaustive,
    /// Per-factor exhaustive check on a direct product with outer-tensor
    /// representations.
    Structural,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsotypicVerdict {
    /// `dim V_k^H` per representation.
    pub fixed_dims: Vec<BigInt>,
    pub maximal: bool,
    pub method: MaximalityMethod,
    /// An element `g` such that `⟨H, g⟩` still fixes a line in every `V_k`.
    pub witness: Option<Permutation>,
}

impl IsotypicVerdict {
    pub fn fixed_dims_ok(&self) -> bool {
        self.fixed_dims.iter().all(|d| d.is_one())
    }

    pub fn holds(&self) -> bool {
        self.fixed_dims_ok() && self.maximal
    }
}

/// Checks `dim V_k^H = 1` for all `k` and that `H` is maximal with this
/// property.
///
/// Maximality only needs the minimal overgroups `⟨H, g⟩`, one per nontrivial
/// double coset `HgH`, because fixed spaces shrink as the subgroup grows.
pub fn isotypic_condition(input: &PresentationInput) -> Result<IsotypicVerdict> {
    let h = input.subgroup();
    let fixed_dims = input
        .characters()
        .iter()
        .map(|chi| fixed_space_dim(chi, h))
        .collect::<Result<Vec<_>>>()?;

    let group = input.group();
    let bound = input.options().enumeration_bound;
    let fits = *group.order() <= BigUint::from(bound);
    if fits {
        if let Some((maximal, witness)) = maximal_exhaustive(group, h, input.characters(), bound)? {
            return Ok(IsotypicVerdict {
                fixed_dims,
                maximal,
                method: MaximalityMethod::Exhaustive,
                witness,
            });
        }
    }
    let (maximal, witness) = maximal_structural(input)?;
    Ok(IsotypicVerdict {
        fixed_dims,
        maximal,
        method: MaximalityMethod::Structural,
        witness,
    })
}

/// `None` when some overgroup is too large to enumerate.
fn maximal_exhaustive(
    group: &Arc<PermGroup>,
    h: &Subgroup,
    characters: &[ClassFunction],
    bound: usize,
) -> Result<Option<(bool, Option<Permutation>)>> {
    let dcs = double_cosets(group, h, h)?;
    for g in dcs.reps().iter().skip(1) {
        let mut gens = h.generators().to_vec();
        gens.push(g.clone());
        let overgroup = match Subgroup::generated(group, gens, bound) {
            Ok(n) => n,
            Err(e) if e.is_resource() => return Ok(None),
            Err(e) => return Err(e),
        };
        let mut killed = false;
        for chi in characters {
            if fixed_space_dim(chi, &overgroup)?.is_zero() {
                killed = true;
                break;
            }
        }
        if !killed {
            return Ok(Some((false, Some(g.clone()))));
        }
    }
    Ok(Some((true, None)))
}

/// On `G_1 × … × G_m` with `H = H_1 × … × H_m` and each `V_k` an outer
/// tensor supported on one factor, `H` is maximal iff every `H_j` is maximal
/// for the representations placed on factor `j`: the projection of
/// `⟨H, g⟩` to factor `j` is `⟨H_j, g_j⟩`, and a factor-`j` representation
/// sees only that projection.
fn maximal_structural(input: &PresentationInput) -> Result<(bool, Option<Permutation>)> {
    let group = input.group();
    let bound = input.options().enumeration_bound;
    let h_factors = input.subgroup().factors().ok_or_else(|| {
        Error::Structural("maximality on a large group needs a product-structured subgroup".into())
    })?;
    let blocks = group.blocks();
    let mut per_factor: Vec<Vec<&RepSpec>> = vec![Vec::new(); blocks.len()];
    for rep in input.reps() {
        match rep {
            RepSpec::OuterTensor { position, inner, .. } => per_factor[*position].push(inner),
            other => {
                return Err(Error::Structural(format!(
                    "maximality on a large group needs outer-tensor representations, got {}",
                    other.describe()
                )))
            }
        }
    }
    for (j, (factor, reps)) in blocks.iter().zip(&per_factor).enumerate() {
        let witness = || Some(group.embed(j, &non_member(factor, &h_factors[j])));
        if reps.is_empty() {
            // H_j can be enlarged to G_j without touching any V_k.
            if h_factors[j].order() != factor.order() {
                return Ok((false, witness()));
            }
            continue;
        }
        let chars = reps
            .iter()
            .map(|r| character_of(factor, r, bound))
            .collect::<Result<Vec<_>>>()?;
        match maximal_exhaustive(factor, &h_factors[j], &chars, bound)? {
            Some((true, _)) => {}
            Some((false, w)) => return Ok((false, w.map(|g| group.embed(j, &g)))),
            None => {
                return Err(Error::TooLarge {
                    order: factor.order().to_string(),
                    bound,
                })
            }
        }
    }
    Ok((true, None))
}

fn non_member(group: &PermGroup, h: &Subgroup) -> Permutation {
    group
        .elements()
        .and_then(|els| els.iter().find(|g| !h.contains(g)).cloned())
        .unwrap_or_else(|| group.identity())
}

/// The double cosets with their two-sided representatives and the
/// coefficients `b_i = Σ_k Σ_{h∈H} χ_{V_k}(h g_{i1}^{-1})`.
pub fn coefficients(input: &PresentationInput) -> Result<(DoubleCosetDecomposition, Vec<BigInt>)> {
    let dec = simultaneous_coset_reps(input.group(), input.subgroup())?;
    let h = input.subgroup();
    let mut coeffs = Vec::with_capacity(dec.len());
    for (i, g) in dec.reps().iter().enumerate() {
        let hist = h.class_histogram(Some(&g.inverse()))?;
        let sum: BigRational = input.characters().iter().map(|chi| chi.sum_over(&hist)).sum();
        if !sum.is_integer() {
            return Err(Error::NotACharacter(format!(
                "coefficient b_{} = {sum} is not an integer",
                i + 1
            )));
        }
        coeffs.push(sum.to_integer());
    }
    Ok((dec, coeffs))
}

#[derive(Debug, Clone)]
pub struct CorrespondenceData {
    pub decomposition: DoubleCosetDecomposition,
    /// `b_i`, aligned with the double-coset representatives.
    pub coefficients: Vec<BigInt>,
    /// `gcd{b_1 − b_i : i ≥ 2}`.
    pub b: BigInt,
    /// `|G| / (b · dim V_1)`.
    pub q: BigInt,
}

pub fn correspondence_coefficients(input: &PresentationInput) -> Result<CorrespondenceData> {
    let (decomposition, coefficients) = coefficients(input)?;
    let (b, q) = exponent(input, &coefficients)?;
    Ok(CorrespondenceData {
        decomposition,
        coefficients,
        b,
        q,
    })
}

/// `b` and `q` from the coefficients.
pub fn exponent(input: &PresentationInput, coefficients: &[BigInt]) -> Result<(BigInt, BigInt)> {
    if coefficients.len() < 2 {
        return Err(Error::Degenerate);
    }
    let b = coefficients[1..]
        .iter()
        .fold(BigInt::zero(), |acc, bi| acc.gcd(&(&coefficients[0] - bi)));
    if b.is_zero() {
        return Err(Error::Degenerate);
    }
    let dim = dimension(&input.characters()[0])?;
    let denom = &b * &dim;
    let order = BigInt::from(input.group().order().clone());
    let (q, r) = order.div_rem(&denom);
    if !r.is_zero() {
        return Err(Error::ExponentNotIntegral(format!("|G| = {order}, b · dim V_1 = {denom}")));
    }
    Ok((b, q))
}

pub(crate) fn dimension(chi: &ClassFunction) -> Result<BigInt> {
    let d = chi.degree();
    if !d.is_integer() || !d.is_positive() {
        return Err(Error::NotACharacter(format!("degree {d}")));
    }
    Ok(d.to_integer())
}

/// Per-branch data: `Σ_k (dim V_k − dim V_k^{G_j})`, and
/// `|H\G/G_j| = ⟨ρ_H^G, ρ_{G_j}^G⟩`.
struct BranchData {
    deficits: Vec<BigInt>,
    double_cosets: BigInt,
}

fn branch_data(input: &PresentationInput) -> Result<Vec<BranchData>> {
    let rho_h = induced_trivial_character(input.subgroup(), input.group())?;
    input
        .branch_groups()
        .iter()
        .map(|gj| {
            let deficits = input
                .characters()
                .iter()
                .map(|chi| Ok(dimension(chi)? - fixed_space_dim(chi, gj)?))
                .collect::<Result<Vec<_>>>()?;
            let rho_j = induced_trivial_character(gj, input.group())?;
            let count = inner_product(&rho_h, &rho_j)?;
            debug_assert!(count.is_integer());
            Ok(BranchData {
                deficits,
                double_cosets: count.to_integer(),
            })
        })
        .collect()
}

fn counts(signature: &GeometricSignature) -> impl Iterator<Item = BigInt> + '_ {
    signature.branches.iter().map(|b| BigInt::from(b.count.clone()))
}

/// `Σ_j s_j (q Σ_k (dim V_k − dim V_k^{G_j}) − ([G:H] − |H\G/G_j|))`; zero
/// exactly when the criterion holds.
pub fn criterion_residual(input: &PresentationInput, q: &BigInt) -> Result<BigInt> {
    let gamma = &input.signature().quotient_genus;
    if !gamma.is_zero() {
        return Err(Error::NonzeroQuotientGenus(gamma.to_string()));
    }
    let index = BigInt::from(input.subgroup().index());
    let data = branch_data(input)?;
    Ok(data
        .iter()
        .zip(counts(input.signature()))
        .map(|(d, s)| {
            let deficit: BigInt = d.deficits.iter().sum();
            s * (q * deficit - (&index - &d.double_cosets))
        })
        .sum())
}

fn half(twice: BigInt, what: &str) -> Result<BigInt> {
    if twice.is_odd() {
        return Err(Error::InconsistentSignature(format!("{what} is not an integer ({twice}/2)")));
    }
    Ok(twice / 2)
}

/// `Σ_k [dim V_k (γ − 1) + ½ Σ_j s_j (dim V_k − dim V_k^{G_j})]`. At `γ = 0`
/// and equal dimensions this is the usual `Σ_k [−dim V_1 + ½ Σ_j …]`.
pub fn prym_dimension(input: &PresentationInput) -> Result<BigInt> {
    let gamma = BigInt::from(input.signature().quotient_genus.clone());
    let data = branch_data(input)?;
    let mut total = BigInt::zero();
    for (k, chi) in input.characters().iter().enumerate() {
        let twice: BigInt = data
            .iter()
            .zip(counts(input.signature()))
            .map(|(d, s)| s * &d.deficits[k])
            .sum();
        total += dimension(chi)? * (&gamma - 1) + half(twice, "dim P")?;
    }
    Ok(total)
}

/// Genus of `X = Z/H` by Riemann–Hurwitz for the degree-`[G:H]` map to
/// the quotient: `1 + [G:H](γ − 1) + ½ Σ_j s_j ([G:H] − |H\G/G_j|)`.
pub fn quotient_genus_x(input: &PresentationInput) -> Result<BigInt> {
    let gamma = BigInt::from(input.signature().quotient_genus.clone());
    let index = BigInt::from(input.subgroup().index());
    let data = branch_data(input)?;
    let twice: BigInt = data
        .iter()
        .zip(counts(input.signature()))
        .map(|(d, s)| s * (&index - &d.double_cosets))
        .sum();
    let g: BigInt = BigInt::one() + &index * (gamma - 1) + half(twice, "genus of X")?;
    if g.is_negative() {
        return Err(Error::InconsistentSignature(format!("genus of X would be {g}")));
    }
    Ok(g)
}

/// Genus of a Galois cover with group `G` and the given signature:
/// `1 + |G|(γ − 1) + (|G|/2) Σ_j s_j (1 − 1/|G_j|)`.
pub fn galois_cover_genus(group: &PermGroup, signature: &GeometricSignature) -> Result<BigInt> {
    let order = BigInt::from(group.order().clone());
    let gamma = BigInt::from(signature.quotient_genus.clone());
    let mut twice = BigRational::zero();
    for branch in &signature.branches {
        let stab = BigInt::from(branch.generator.order());
        let s = BigInt::from(branch.count.clone());
        twice += BigRational::new(&order * s * (&stab - 1), stab);
    }
    if !twice.is_integer() {
        return Err(Error::InconsistentSignature(format!(
            "ramification term {twice} is not an integer"
        )));
    }
    let g: BigInt = BigInt::one() + &order * (gamma - 1) + half(twice.to_integer(), "genus of Z")?;
    if g.is_negative() {
        return Err(Error::InconsistentSignature(format!("genus of Z would be {g}")));
    }
    Ok(g)
}
