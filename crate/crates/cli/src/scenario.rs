//! Scenario files: TOML documents describing a group, a subgroup, the
//! representations and a signature.
//!
//! ```toml
//! [group]
//! kind = "symmetric"
//! n = 3
//!
//! [subgroup]
//! kind = "point_stabilizer"
//! point = 3
//!
//! [[representation]]
//! kind = "standard"
//! n = 3
//!
//! [signature]
//! genus = 0
//!
//! [[signature.branch]]
//! element = "(1 2)"
//! count = 8
//! ```

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use prym_core::permgrp::{GroupSpec, Permutation, SubgroupSpec};
use prym_core::prym::{Branch, EngineOptions, GeometricSignature, PresentationInput};
use prym_core::reptheory::RepSpec;
use prym_core::Error;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub title: Option<String>,
    pub group: GroupEntry,
    pub subgroup: SubgroupEntry,
    pub representation: Vec<RepEntry>,
    pub signature: SignatureEntry,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupEntry {
    Symmetric { n: usize },
    Alternating { n: usize },
    Explicit { degree: usize, generators: Vec<String> },
    Product { factors: Vec<GroupEntry> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SubgroupEntry {
    /// 1-based point.
    PointStabilizer { point: usize },
    Explicit { generators: Vec<String> },
    Product { factors: Vec<SubgroupEntry> },
    Whole,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum RepEntry {
    Trivial,
    Standard { n: usize },
    PermMinusTrivial { subgroup: SubgroupEntry },
    /// `position` is 1-based.
    OuterTensor { position: usize, factors: usize, inner: Box<RepEntry> },
    /// Values in class order, as integers or strings such as `"-1/2"`.
    ClassFunction { values: Vec<Number> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SignatureEntry {
    #[serde(default = "Number::zero")]
    pub genus: Number,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub branch: Vec<BranchEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BranchEntry {
    pub element: String,
    pub count: Number,
}

/// An integer or a string holding an arbitrary-precision integer or fraction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Number {
    Int(i64),
    Text(String),
}

impl Number {
    fn zero() -> Self {
        Number::Int(0)
    }

    fn text(&self) -> String {
        match self {
            Number::Int(i) => i.to_string(),
            Number::Text(s) => s.trim().to_string(),
        }
    }

    fn from_display(x: impl fmt::Display) -> Self {
        let s = x.to_string();
        s.parse().map_or(Number::Text(s), Number::Int)
    }
}

/// A scenario problem, located in the source when possible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub line: Option<usize>,
    pub column: Option<usize>,
    pub message: String,
    /// Whether the error is about resources rather than the input itself.
    pub resource: bool,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.line, self.column) {
            (Some(l), Some(c)) => write!(f, "line {l}, column {c}: {}", self.message),
            (Some(l), None) => write!(f, "line {l}: {}", self.message),
            _ => f.write_str(&self.message),
        }
    }
}

impl std::error::Error for Diagnostic {}

fn line_col(source: &str, offset: usize) -> (usize, usize) {
    let before = &source[..offset.min(source.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rfind('\n').map_or(before.len(), |nl| before.len() - nl - 1) + 1;
    (line, column)
}

/// Anchors `message` at the first quoted occurrence of `literal`, shifted by
/// `inner` bytes into the literal.
fn anchored(source: &str, literal: &str, inner: usize, message: String) -> Diagnostic {
    let found = ['"', '\'']
        .iter()
        .find_map(|q| source.find(&format!("{q}{literal}{q}")).map(|at| at + 1));
    let (line, column) = match found {
        Some(at) => {
            let (l, c) = line_col(source, at);
            (Some(l), Some(c + inner))
        }
        None => (None, None),
    };
    Diagnostic {
        line,
        column,
        message,
        resource: false,
    }
}

fn plain(message: impl Into<String>) -> Diagnostic {
    Diagnostic {
        line: None,
        column: None,
        message: message.into(),
        resource: false,
    }
}

impl Scenario {
    pub fn parse(source: &str) -> Result<Self, Diagnostic> {
        toml::from_str(source).map_err(|e: toml::de::Error| {
            let (line, column) = match e.span() {
                Some(span) => {
                    let (l, c) = line_col(source, span.start);
                    (Some(l), Some(c))
                }
                None => (None, None),
            };
            Diagnostic {
                line,
                column,
                message: e.message().trim().to_string(),
                resource: false,
            }
        })
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("scenario serializes")
    }

    /// Resolves the scenario against the engine. `source` is the text it was
    /// parsed from and is used to place diagnostics.
    pub fn to_input(&self, source: &str, options: EngineOptions) -> Result<PresentationInput, Diagnostic> {
        let group = group_spec(&self.group, source)?;
        let subgroup = subgroup_spec(&self.subgroup, &group, source)?;
        let reps = self
            .representation
            .iter()
            .map(|r| rep_spec(r, &group, source))
            .collect::<Result<Vec<_>, _>>()?;
        let degree = group.degree();
        let quotient_genus = parse_uint(&self.signature.genus, source, "genus")?;
        let branches = self
            .signature
            .branch
            .iter()
            .map(|b| {
                Ok(Branch {
                    generator: parse_perm(&b.element, degree, source)?,
                    count: parse_uint(&b.count, source, "count")?,
                })
            })
            .collect::<Result<Vec<_>, Diagnostic>>()?;
        let signature = GeometricSignature {
            quotient_genus,
            branches,
        };
        PresentationInput::new(group, subgroup, reps, signature, options).map_err(|e| engine_diagnostic(e, source))
    }

    /// The declarative data of `input` as a scenario.
    pub fn from_input(input: &PresentationInput, title: Option<String>) -> Self {
        let group = group_entry(input.group_spec());
        let subgroup = subgroup_entry(input.subgroup_spec());
        let representation = input.reps().iter().map(rep_entry).collect();
        let sig = input.signature();
        Scenario {
            title,
            group,
            subgroup,
            representation,
            signature: SignatureEntry {
                genus: Number::from_display(&sig.quotient_genus),
                branch: sig
                    .branches
                    .iter()
                    .map(|b| BranchEntry {
                        element: b.generator.to_string(),
                        count: Number::from_display(&b.count),
                    })
                    .collect(),
            },
        }
    }
}

/// Engine errors raised while building the input, anchored at the element
/// they mention when it appears in the source.
fn engine_diagnostic(e: Error, source: &str) -> Diagnostic {
    let message = e.to_string();
    let resource = e.is_resource();
    let mut d = match e.root() {
        Error::NotInGroup(elem) => anchored(source, elem, 0, message),
        _ => plain(message),
    };
    d.resource = resource;
    d
}

fn parse_perm(word: &str, degree: usize, source: &str) -> Result<Permutation, Diagnostic> {
    Permutation::parse(word, degree).map_err(|e| match e {
        Error::Parse { position, .. } => anchored(source, word, position, e.to_string()),
        other => anchored(source, word, 0, other.to_string()),
    })
}

fn parse_uint(n: &Number, source: &str, what: &str) -> Result<BigUint, Diagnostic> {
    let text = n.text();
    BigUint::from_str(&text).map_err(|_| match n {
        Number::Text(s) => anchored(source, s, 0, format!("{what} must be a non-negative integer, got {text:?}")),
        Number::Int(_) => plain(format!("{what} must be a non-negative integer, got {text}")),
    })
}

fn parse_rational(n: &Number, source: &str) -> Result<BigRational, Diagnostic> {
    let text = n.text();
    BigRational::from_str(&text).map_err(|_| match n {
        Number::Text(s) => anchored(source, s, 0, format!("not a rational number: {text:?}")),
        Number::Int(_) => plain(format!("not a rational number: {text}")),
    })
}

fn group_spec(entry: &GroupEntry, source: &str) -> Result<GroupSpec, Diagnostic> {
    Ok(match entry {
        GroupEntry::Symmetric { n } => GroupSpec::Symmetric(*n),
        GroupEntry::Alternating { n } => GroupSpec::Alternating(*n),
        GroupEntry::Explicit { degree, generators } => GroupSpec::Explicit {
            degree: *degree,
            generators: generators
                .iter()
                .map(|g| parse_perm(g, *degree, source))
                .collect::<Result<_, _>>()?,
        },
        GroupEntry::Product { factors } => GroupSpec::Product(
            factors
                .iter()
                .map(|f| group_spec(f, source))
                .collect::<Result<_, _>>()?,
        ),
    })
}

fn subgroup_spec(entry: &SubgroupEntry, group: &GroupSpec, source: &str) -> Result<SubgroupSpec, Diagnostic> {
    Ok(match entry {
        SubgroupEntry::PointStabilizer { point } => SubgroupSpec::PointStabilizer(*point),
        SubgroupEntry::Whole => SubgroupSpec::Whole,
        SubgroupEntry::Explicit { generators } => SubgroupSpec::Generated(
            generators
                .iter()
                .map(|g| parse_perm(g, group.degree(), source))
                .collect::<Result<_, _>>()?,
        ),
        SubgroupEntry::Product { factors } => {
            let GroupSpec::Product(groups) = group else {
                return Err(plain("a product subgroup needs a product group"));
            };
            if groups.len() != factors.len() {
                return Err(plain(format!(
                    "product subgroup has {} factors, the group has {}",
                    factors.len(),
                    groups.len()
                )));
            }
            SubgroupSpec::Product(
                factors
                    .iter()
                    .zip(groups)
                    .map(|(f, g)| subgroup_spec(f, g, source))
                    .collect::<Result<_, _>>()?,
            )
        }
    })
}

fn rep_spec(entry: &RepEntry, group: &GroupSpec, source: &str) -> Result<RepSpec, Diagnostic> {
    Ok(match entry {
        RepEntry::Trivial => RepSpec::Trivial,
        RepEntry::Standard { n } => RepSpec::StandardOfSymmetric(*n),
        RepEntry::PermMinusTrivial { subgroup } => RepSpec::PermMinusTrivial(subgroup_spec(subgroup, group, source)?),
        RepEntry::OuterTensor {
            position,
            factors,
            inner,
        } => {
            let GroupSpec::Product(groups) = group else {
                return Err(plain("outer_tensor needs a product group"));
            };
            if *position == 0 || *position > groups.len() {
                return Err(plain(format!(
                    "outer_tensor position {position} outside 1..{}",
                    groups.len()
                )));
            }
            RepSpec::OuterTensor {
                position: position - 1,
                factors: *factors,
                inner: Box::new(rep_spec(inner, &groups[position - 1], source)?),
            }
        }
        RepEntry::ClassFunction { values } => RepSpec::ClassFunction(
            values
                .iter()
                .map(|v| parse_rational(v, source))
                .collect::<Result<_, _>>()?,
        ),
    })
}

fn group_entry(spec: &GroupSpec) -> GroupEntry {
    match spec {
        GroupSpec::Symmetric(n) => GroupEntry::Symmetric { n: *n },
        GroupSpec::Alternating(n) => GroupEntry::Alternating { n: *n },
        GroupSpec::Explicit { degree, generators } => GroupEntry::Explicit {
            degree: *degree,
            generators: generators.iter().map(|g| g.to_string()).collect(),
        },
        GroupSpec::Product(factors) => GroupEntry::Product {
            factors: factors.iter().map(group_entry).collect(),
        },
    }
}

fn subgroup_entry(spec: &SubgroupSpec) -> SubgroupEntry {
    match spec {
        SubgroupSpec::PointStabilizer(p) => SubgroupEntry::PointStabilizer { point: *p },
        SubgroupSpec::Generated(gens) => SubgroupEntry::Explicit {
            generators: gens.iter().map(|g| g.to_string()).collect(),
        },
        SubgroupSpec::Product(factors) => SubgroupEntry::Product {
            factors: factors.iter().map(subgroup_entry).collect(),
        },
        SubgroupSpec::Whole => SubgroupEntry::Whole,
    }
}

fn rep_entry(spec: &RepSpec) -> RepEntry {
    match spec {
        RepSpec::Trivial => RepEntry::Trivial,
        RepSpec::StandardOfSymmetric(n) => RepEntry::Standard { n: *n },
        RepSpec::PermMinusTrivial(sub) => RepEntry::PermMinusTrivial {
            subgroup: subgroup_entry(sub),
        },
        RepSpec::OuterTensor {
            position,
            factors,
            inner,
        } => RepEntry::OuterTensor {
            position: position + 1,
            factors: *factors,
            inner: Box::new(rep_entry(inner)),
        },
        RepSpec::ClassFunction(values) => RepEntry::ClassFunction {
            values: values.iter().map(Number::from_display).collect(),
        },
    }
}
