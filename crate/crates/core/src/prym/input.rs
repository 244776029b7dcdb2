use std::sync::Arc;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::permgrp::{
    cyclic_subgroup_of, generate_group, GroupSpec, PermGroup, Permutation, Subgroup, SubgroupSpec,
    DEFAULT_ENUMERATION_BOUND,
};
use crate::reptheory::{character_of, ClassFunction, RepSpec};

pub const DEFAULT_MATRIX_BOUND: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EngineOptions {
    /// Largest plain group (or subgroup) enumerated element by element.
    pub enumeration_bound: usize,
    /// Largest coset space on which the Hecke matrix is built.
    pub matrix_bound: usize,
    /// Enumerate direct products as plain groups instead of factor by factor.
    pub flatten_products: bool,
}

impl Default for EngineOptions {
    fn default() -> Self {
        Self {
            enumeration_bound: DEFAULT_ENUMERATION_BOUND,
            matrix_bound: DEFAULT_MATRIX_BOUND,
            flatten_products: false,
        }
    }
}

impl EngineOptions {
    pub fn flattened(self) -> Self {
        Self {
            flatten_products: true,
            ..self
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Branch {
    /// Generator of the cyclic stabilizer.
    pub generator: Permutation,
    /// Number of branch points of this type.
    pub count: BigUint,
}

/// `[γ; (C_1, s_1), …, (C_t, s_t)]` with each class `C_j` given by a
/// generator of one of its cyclic subgroups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeometricSignature {
    pub quotient_genus: BigUint,
    pub branches: Vec<Branch>,
}

impl GeometricSignature {
    pub fn genus_zero(branches: Vec<(Permutation, u64)>) -> Self {
        Self {
            quotient_genus: BigUint::zero(),
            branches: branches
                .into_iter()
                .map(|(generator, count)| Branch {
                    generator,
                    count: BigUint::from(count),
                })
                .collect(),
        }
    }
}

/// A candidate presentation `(G, H, {V_k}, signature)`, resolved and
/// validated against the group.
#[derive(Debug, Clone)]
pub struct PresentationInput {
    group_spec: GroupSpec,
    subgroup_spec: SubgroupSpec,
    reps: Vec<RepSpec>,
    signature: GeometricSignature,
    options: EngineOptions,
    group: Arc<PermGroup>,
    subgroup: Subgroup,
    characters: Vec<ClassFunction>,
    branch_groups: Vec<Subgroup>,
}

/// Two inputs are equal when they describe the same presentation; the
/// resolved groups and engine options are not compared.
impl PartialEq for PresentationInput {
    fn eq(&self, other: &Self) -> bool {
        self.group_spec == other.group_spec
            && self.subgroup_spec == other.subgroup_spec
            && self.reps == other.reps
            && self.signature == other.signature
    }
}

impl PresentationInput {
    pub fn new(
        group_spec: GroupSpec,
        subgroup_spec: SubgroupSpec,
        reps: Vec<RepSpec>,
        signature: GeometricSignature,
        options: EngineOptions,
    ) -> Result<Self> {
        let bound = options.enumeration_bound;
        let mut group = generate_group(&group_spec, bound).map_err(|e| e.context("group"))?;
        if options.flatten_products && group.is_product() {
            group = group.flattened(bound).map_err(|e| e.context("flattening product"))?;
        }
        let subgroup = Subgroup::build(&group, &subgroup_spec, bound).map_err(|e| e.context("subgroup"))?;

        if reps.is_empty() {
            return Err(Error::InvalidInput("at least one representation is required".into()));
        }
        let characters = reps
            .iter()
            .enumerate()
            .map(|(k, r)| {
                character_of(&group, r, bound).map_err(|e| e.context(format!("representation {}", k + 1)))
            })
            .collect::<Result<Vec<_>>>()?;
        let trivial = ClassFunction::trivial(&group);
        for (k, chi) in characters.iter().enumerate() {
            if *chi == trivial {
                return Err(Error::InvalidInput(format!(
                    "representation {} is trivial; the V_k must be nontrivial",
                    k + 1
                )));
            }
            if chi.degree() != characters[0].degree() {
                return Err(Error::InvalidInput(format!(
                    "representation {} has dimension {} but representation 1 has {}",
                    k + 1,
                    chi.degree(),
                    characters[0].degree()
                )));
            }
            if let Some(j) = characters[..k].iter().position(|other| other == chi) {
                return Err(Error::InvalidInput(format!(
                    "representations {} and {} coincide",
                    j + 1,
                    k + 1
                )));
            }
        }

        let mut branch_groups = Vec::with_capacity(signature.branches.len());
        for (j, branch) in signature.branches.iter().enumerate() {
            let g = &branch.generator;
            if g.degree() != group.degree() {
                return Err(Error::InvalidInput(format!(
                    "branch {}: element {g} has degree {}, group has degree {}",
                    j + 1,
                    g.degree(),
                    group.degree()
                )));
            }
            if g.is_identity() {
                return Err(Error::InvalidInput(format!("branch {}: trivial stabilizer", j + 1)));
            }
            if branch.count.is_zero() {
                return Err(Error::InvalidInput(format!("branch {}: count must be at least 1", j + 1)));
            }
            let sub = cyclic_subgroup_of(&group, g, bound).map_err(|e| e.context(format!("branch {}", j + 1)))?;
            for (i, earlier) in signature.branches[..j].iter().enumerate() {
                if cyclic_subgroups_conjugate(&group, &earlier.generator, g) {
                    return Err(Error::InvalidInput(format!(
                        "branches {} and {} have conjugate cyclic stabilizers",
                        i + 1,
                        j + 1
                    )));
                }
            }
            branch_groups.push(sub);
        }

        Ok(Self {
            group_spec,
            subgroup_spec,
            reps,
            signature,
            options,
            group,
            subgroup,
            characters,
            branch_groups,
        })
    }

    /// The same presentation rebuilt under different engine options.
    pub fn with_options(&self, options: EngineOptions) -> Result<Self> {
        Self::new(
            self.group_spec.clone(),
            self.subgroup_spec.clone(),
            self.reps.clone(),
            self.signature.clone(),
            options,
        )
    }

    /// The same group data with another signature.
    pub fn with_signature(&self, signature: GeometricSignature) -> Result<Self> {
        Self::new(
            self.group_spec.clone(),
            self.subgroup_spec.clone(),
            self.reps.clone(),
            signature,
            self.options,
        )
    }

    pub fn group_spec(&self) -> &GroupSpec {
        &self.group_spec
    }

    pub fn subgroup_spec(&self) -> &SubgroupSpec {
        &self.subgroup_spec
    }

    pub fn reps(&self) -> &[RepSpec] {
        &self.reps
    }

    pub fn signature(&self) -> &GeometricSignature {
        &self.signature
    }

    pub fn options(&self) -> EngineOptions {
        self.options
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn characters(&self) -> &[ClassFunction] {
        &self.characters
    }

    /// Cyclic subgroups `G_j`, aligned with the signature's branches.
    pub fn branch_groups(&self) -> &[Subgroup] {
        &self.branch_groups
    }
}

/// `⟨a⟩` and `⟨b⟩` are conjugate iff `b` is conjugate to a generator `a^k`
/// of `⟨a⟩`.
pub fn cyclic_subgroups_conjugate(group: &PermGroup, a: &Permutation, b: &Permutation) -> bool {
    let n = a.order();
    if n != b.order() {
        return false;
    }
    let Some(cb) = group.class_of(b) else {
        return false;
    };
    (1..=n)
        .filter(|k| k.gcd(&n).is_one())
        .any(|k| group.class_of(&a.pow(k)) == Some(cb))
}
