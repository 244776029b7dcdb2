//! Exact character theory on enumerable and product-structured groups.
//!
//! No general character-table algorithm lives here. The characters needed
//! are permutation characters, the standard representation of `S_n`
//! (fixed points minus one), outer tensor products of those on direct
//! products, and explicitly supplied class functions.

use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::permgrp::{PermGroup, Permutation, Subgroup, SubgroupSpec};

/// A rational-valued function on the conjugacy classes of a group, indexed
/// in the group's canonical class order.
#[derive(Debug, Clone)]
pub struct ClassFunction {
    group: Arc<PermGroup>,
    values: Vec<BigRational>,
}

impl PartialEq for ClassFunction {
    fn eq(&self, other: &Self) -> bool {
        same_group(&self.group, &other.group) && self.values == other.values
    }
}

pub(crate) fn same_group(a: &Arc<PermGroup>, b: &Arc<PermGroup>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn rat(x: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(x.into())
}

impl ClassFunction {
    pub fn new(group: &Arc<PermGroup>, values: Vec<BigRational>) -> Result<Self> {
        let k = group.classes().len();
        if values.len() != k {
            return Err(Error::InvalidInput(format!(
                "class function has {} values but {} has {k} conjugacy classes",
                values.len(),
                group.label()
            )));
        }
        Ok(Self {
            group: group.clone(),
            values,
        })
    }

    pub fn trivial(group: &Arc<PermGroup>) -> Self {
        Self {
            group: group.clone(),
            values: vec![BigRational::one(); group.classes().len()],
        }
    }

    /// Evaluates `f` on each class representative.
    pub fn from_representatives(
        group: &Arc<PermGroup>,
        mut f: impl FnMut(&Permutation) -> Result<BigRational>,
    ) -> Result<Self> {
        let values = group
            .classes()
            .iter()
            .map(|c| f(&c.representative))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            group: group.clone(),
            values,
        })
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn value_at(&self, g: &Permutation) -> Result<&BigRational> {
        let c = self
            .group
            .class_of(g)
            .ok_or_else(|| Error::NotInGroup(g.to_string()))?;
        Ok(&self.values[c])
    }

    /// Value at the identity.
    pub fn degree(&self) -> &BigRational {
        &self.values[0]
    }

    pub fn is_integral(&self) -> bool {
        self.values.iter().all(|v| v.is_integer())
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&BigRational, &BigRational) -> BigRational) -> Result<Self> {
        if !same_group(&self.group, &other.group) {
            return Err(Error::GroupMismatch);
        }
        Ok(Self {
            group: self.group.clone(),
            values: self.values.iter().zip(&other.values).map(|(a, b)| f(a, b)).collect(),
        })
    }

    /// `Σ_c counts[c] · χ(c)`, i.e. the sum of `χ` over a set of elements
    /// given by its class histogram.
    pub fn sum_over(&self, counts: &[BigUint]) -> BigRational {
        self.values
            .iter()
            .zip(counts)
            .filter(|(_, n)| !n.is_zero())
            .map(|(v, n)| v * rat(BigInt::from(n.clone())))
            .sum()
    }
}

/// Declarative representation, evaluated against a group by [`character_of`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RepSpec {
    Trivial,
    /// Degree-(n-1) standard representation of `S_n`: fixed points minus one.
    StandardOfSymmetric(usize),
    /// `ρ_H^G − χ₀`; for `A_{n-1} ≤ A_n` this is the standard representation of `A_n`.
    PermMinusTrivial(SubgroupSpec),
    /// `χ₀ ⊗ … ⊗ V ⊗ … ⊗ χ₀` with `inner` at the 0-based `position`.
    OuterTensor {
        position: usize,
        factors: usize,
        inner: Box<RepSpec>,
    },
    /// Values in the group's canonical class order.
    ClassFunction(Vec<BigRational>),
}

impl RepSpec {
    pub fn describe(&self) -> String {
        match self {
            RepSpec::Trivial => "trivial".into(),
            RepSpec::StandardOfSymmetric(n) => format!("standard of S{n}"),
            RepSpec::PermMinusTrivial(_) => "permutation character minus trivial".into(),
            RepSpec::OuterTensor { position, factors, inner } => {
                format!("{} in factor {} of {factors}", inner.describe(), position + 1)
            }
            RepSpec::ClassFunction(_) => "explicit class function".into(),
        }
    }
}

/// The character of `spec` on `group`. `bound` limits any subgroup
/// enumeration the representation needs.
pub fn character_of(group: &Arc<PermGroup>, spec: &RepSpec, bound: usize) -> Result<ClassFunction> {
    match spec {
        RepSpec::Trivial => Ok(ClassFunction::trivial(group)),
        RepSpec::StandardOfSymmetric(n) => {
            if group.degree() != *n {
                return Err(Error::InvalidInput(format!(
                    "standard representation of S{n} on a group of degree {}",
                    group.degree()
                )));
            }
            ClassFunction::from_representatives(group, |g| Ok(rat(g.fixed_points() as i64 - 1)))
        }
        RepSpec::PermMinusTrivial(sub) => {
            let h = Subgroup::build(group, sub, bound)?;
            induced_trivial_character(&h, group)?.checked_sub(&ClassFunction::trivial(group))
        }
        RepSpec::OuterTensor {
            position,
            factors,
            inner,
        } => {
            let blocks = group.blocks();
            if blocks.len() != *factors || *position >= *factors {
                return Err(Error::Structural(format!(
                    "outer tensor at position {} of {factors} on a group with {} factors",
                    position + 1,
                    blocks.len()
                )));
            }
            let factor = &blocks[*position];
            let chi = character_of(factor, inner, bound)?;
            ClassFunction::from_representatives(group, |g| {
                chi.value_at(&group.component(g, *position)).cloned()
            })
        }
        RepSpec::ClassFunction(values) => ClassFunction::new(group, values.clone()),
    }
}

/// `⟨χ₁, χ₂⟩ = (1/|G|) Σ_c |c| χ₁(c) χ₂(c)`. All values are rational, so no
/// conjugation is needed.
pub fn inner_product(a: &ClassFunction, b: &ClassFunction) -> Result<BigRational> {
    if !same_group(&a.group, &b.group) {
        return Err(Error::GroupMismatch);
    }
    let sum: BigRational = a
        .group
        .classes()
        .iter()
        .zip(a.values.iter().zip(&b.values))
        .map(|(c, (x, y))| x * y * rat(BigInt::from(c.size.clone())))
        .sum();
    Ok(sum / rat(BigInt::from(a.group.order().clone())))
}

/// `ρ_H^G`: the permutation character on `G/H`. At `g` it counts the cosets
/// fixed by `g`, which is `|C_G(g)| · |g^G ∩ H| / |H|`.
pub fn induced_trivial_character(h: &Subgroup, group: &Arc<PermGroup>) -> Result<ClassFunction> {
    if !same_group(h.ambient(), group) {
        return Err(Error::GroupMismatch);
    }
    let hist = h.class_histogram(None)?;
    let g_order = BigInt::from(group.order().clone());
    let h_order = BigInt::from(h.order().clone());
    let values = group
        .classes()
        .iter()
        .zip(&hist)
        .map(|(c, n)| {
            BigRational::new(
                &g_order * BigInt::from(n.clone()),
                &h_order * BigInt::from(c.size.clone()),
            )
        })
        .collect();
    ClassFunction::new(group, values)
}

/// `dim V^S = (1/|S|) Σ_{s∈S} χ(s)`, required to be a non-negative integer.
pub fn fixed_space_dim(chi: &ClassFunction, s: &Subgroup) -> Result<BigInt> {
    if !same_group(&chi.group, s.ambient()) {
        return Err(Error::GroupMismatch);
    }
    let hist = s.class_histogram(None)?;
    let avg = chi.sum_over(&hist) / rat(BigInt::from(s.order().clone()));
    if !avg.is_integer() || avg.is_negative() {
        return Err(Error::NotACharacter(format!(
            "average {avg} over a subgroup of order {}",
            s.order()
        )));
    }
    Ok(avg.to_integer())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IrreducibilityVerdict {
    pub norm: BigRational,
    pub integral: bool,
    pub trivial: bool,
    pub positive_degree: bool,
}

impl IrreducibilityVerdict {
    /// Absolutely irreducible and rational (integer-valued).
    pub fn is_irreducible_rational(&self) -> bool {
        self.norm.is_one() && self.integral && self.positive_degree
    }
}

pub fn is_valid_irreducible(chi: &ClassFunction) -> Result<IrreducibilityVerdict> {
    let norm = inner_product(chi, chi)?;
    let positive_degree = chi.degree().is_integer() && chi.degree().is_positive();
    Ok(IrreducibilityVerdict {
        norm,
        integral: chi.is_integral(),
        trivial: chi == &ClassFunction::trivial(&chi.group),
        positive_degree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgrp::{cyclic_subgroup, generate_group, GroupSpec, DEFAULT_ENUMERATION_BOUND};

    const B: usize = DEFAULT_ENUMERATION_BOUND;

    fn ints(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| rat(x)).collect()
    }

    fn sym(n: usize) -> Arc<PermGroup> {
        generate_group(&GroupSpec::Symmetric(n), B).unwrap()
    }

    fn stab(g: &Arc<PermGroup>, p: usize) -> Subgroup {
        Subgroup::build(g, &SubgroupSpec::PointStabilizer(p), B).unwrap()
    }

    #[test]
    fn standard_character_values() {
        let g = sym(3);
        let chi = character_of(&g, &RepSpec::StandardOfSymmetric(3), B).unwrap();
        // classes: e, (1 2)-type, 3-cycles
        assert_eq!(chi.values(), ints(&[2, 0, -1]).as_slice());
        for n in 3..=7 {
            let g = sym(n);
            let chi = character_of(&g, &RepSpec::StandardOfSymmetric(n), B).unwrap();
            let tau = Permutation::parse("(1 2)", n).unwrap();
            assert_eq!(*chi.value_at(&tau).unwrap(), rat(n as i64 - 3));
        }
    }

    #[test]
    fn perm_minus_trivial_on_a7() {
        let g = generate_group(&GroupSpec::Alternating(7), B).unwrap();
        let chi = character_of(&g, &RepSpec::PermMinusTrivial(SubgroupSpec::PointStabilizer(7)), B).unwrap();
        let dt = Permutation::parse("(1 2)(3 4)", 7).unwrap();
        assert_eq!(*chi.value_at(&dt).unwrap(), rat(2));
        let c3 = cyclic_subgroup(&g, "(1 2 3)", B).unwrap();
        assert_eq!(fixed_space_dim(&chi, &c3).unwrap(), BigInt::from(4));
    }

    #[test]
    fn inner_products() {
        let g = sym(3);
        let h = stab(&g, 3);
        let rho = induced_trivial_character(&h, &g).unwrap();
        assert_eq!(rho.values(), ints(&[3, 1, 0]).as_slice());
        assert_eq!(inner_product(&rho, &rho).unwrap(), rat(2));
        let v = character_of(&g, &RepSpec::StandardOfSymmetric(3), B).unwrap();
        assert_eq!(inner_product(&ClassFunction::trivial(&g), &v).unwrap(), rat(0));
        let g4 = sym(4);
        let v4 = character_of(&g4, &RepSpec::StandardOfSymmetric(4), B).unwrap();
        assert_eq!(inner_product(&v4, &v4).unwrap(), rat(1));
        assert_eq!(inner_product(&v4, &v).unwrap_err(), Error::GroupMismatch);
    }

    #[test]
    fn permutation_character_decomposes() {
        for n in 3..=6 {
            let g = sym(n);
            let rho = induced_trivial_character(&stab(&g, n), &g).unwrap();
            let v = character_of(&g, &RepSpec::StandardOfSymmetric(n), B).unwrap();
            let rest = rho
                .checked_sub(&ClassFunction::trivial(&g))
                .unwrap()
                .checked_sub(&v)
                .unwrap();
            assert!(rest.is_zero());
        }
        let g = sym(4);
        let whole = Subgroup::build(&g, &SubgroupSpec::Whole, B).unwrap();
        assert_eq!(induced_trivial_character(&whole, &g).unwrap(), ClassFunction::trivial(&g));
    }

    #[test]
    fn fixed_dims_of_standard() {
        for n in 3..=7 {
            let g = sym(n);
            let v = character_of(&g, &RepSpec::StandardOfSymmetric(n), B).unwrap();
            let tau = cyclic_subgroup(&g, "(1 2)", B).unwrap();
            assert_eq!(fixed_space_dim(&v, &tau).unwrap(), BigInt::from(n - 2));
            assert_eq!(fixed_space_dim(&v, &stab(&g, n)).unwrap(), BigInt::one());
        }
        let g = sym(4);
        let v = character_of(&g, &RepSpec::StandardOfSymmetric(4), B).unwrap();
        let klein = Subgroup::build(
            &g,
            &SubgroupSpec::Generated(vec![
                Permutation::parse("(1 2)(3 4)", 4).unwrap(),
                Permutation::parse("(1 3)(2 4)", 4).unwrap(),
            ]),
            B,
        )
        .unwrap();
        assert_eq!(fixed_space_dim(&v, &klein).unwrap(), BigInt::zero());
    }

    #[test]
    fn not_a_character() {
        let g = sym(3);
        let f = ClassFunction::new(&g, ints(&[1, 0, 0])).unwrap();
        let tau = cyclic_subgroup(&g, "(1 2)", B).unwrap();
        assert!(matches!(fixed_space_dim(&f, &tau), Err(Error::NotACharacter(_))));
        assert!(ClassFunction::new(&g, ints(&[1, 0])).is_err());
    }

    #[test]
    fn irreducibility() {
        let g = sym(5);
        let v = character_of(&g, &RepSpec::StandardOfSymmetric(5), B).unwrap();
        assert!(is_valid_irreducible(&v).unwrap().is_irreducible_rational());
        let rho = induced_trivial_character(&stab(&g, 5), &g).unwrap();
        let verdict = is_valid_irreducible(&rho).unwrap();
        assert_eq!(verdict.norm, rat(2));
        assert!(!verdict.is_irreducible_rational());
        let triv = is_valid_irreducible(&ClassFunction::trivial(&g)).unwrap();
        assert!(triv.is_irreducible_rational() && triv.trivial);
    }

    #[test]
    fn outer_tensor_on_products() {
        let spec = GroupSpec::Product(vec![GroupSpec::Symmetric(3), GroupSpec::Symmetric(4)]);
        let g = generate_group(&spec, B).unwrap();
        let flat = g.flattened(B).unwrap();
        let v2 = RepSpec::OuterTensor {
            position: 1,
            factors: 2,
            inner: Box::new(RepSpec::StandardOfSymmetric(4)),
        };
        let a = character_of(&g, &v2, B).unwrap();
        let b = character_of(&flat, &v2, B).unwrap();
        assert_eq!(a.values(), b.values());
        assert_eq!(*a.degree(), rat(3));
        assert_eq!(inner_product(&a, &a).unwrap(), rat(1));
        let bad = RepSpec::OuterTensor {
            position: 2,
            factors: 2,
            inner: Box::new(RepSpec::Trivial),
        };
        assert!(character_of(&g, &bad, B).is_err());
    }
}
