use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{pow, One, Zero};

use crate::error::{Error, Result};
use crate::permgrp::{factorial, simultaneous_coset_reps, GroupSpec, Permutation, SubgroupSpec};
use crate::prym::{coefficients, EngineOptions, GeometricSignature, PresentationInput};
use crate::reptheory::RepSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// `S_n`, simple coverings: inertia generated by a transposition.
    SymmetricSimple,
    /// `A_n`, inertia generated by a double transposition.
    AlternatingDoubleTransposition,
    /// `A_n`, inertia generated by a three-cycle.
    AlternatingThreeCycle,
}

impl Family {
    pub fn is_alternating(self) -> bool {
        self != Family::SymmetricSimple
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::SymmetricSimple => "sym",
            Family::AlternatingDoubleTransposition => "alt-dt",
            Family::AlternatingThreeCycle => "alt-3c",
        }
    }

    pub fn base_group(self, n: usize) -> GroupSpec {
        if self.is_alternating() {
            GroupSpec::Alternating(n)
        } else {
            GroupSpec::Symmetric(n)
        }
    }

    pub fn base_rep(self, n: usize) -> RepSpec {
        if self.is_alternating() {
            RepSpec::PermMinusTrivial(SubgroupSpec::PointStabilizer(n))
        } else {
            RepSpec::StandardOfSymmetric(n)
        }
    }

    /// Inertia generator on `1..=n`.
    pub fn inertia(self) -> Vec<Vec<usize>> {
        match self {
            Family::SymmetricSimple => vec![vec![0, 1]],
            Family::AlternatingDoubleTransposition => vec![vec![0, 1], vec![2, 3]],
            Family::AlternatingThreeCycle => vec![vec![0, 1, 2]],
        }
    }

    pub fn inertia_order(self) -> u64 {
        match self {
            Family::AlternatingThreeCycle => 3,
            _ => 2,
        }
    }

    /// Branch points of the degree-`n` cover `X → P¹` of genus `g`.
    ///
    /// Each branch point of a simple cover contributes ramification 1, so
    /// Riemann–Hurwitz gives `s = 2(g + n − 1)`. A double transposition or a
    /// three-cycle contributes 2, giving `s = g + n − 1`.
    pub fn branch_count(self, n: u64, g: u64) -> u64 {
        match self {
            Family::SymmetricSimple => 2 * (g + n - 1),
            _ => g + n - 1,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sym" => Ok(Family::SymmetricSimple),
            "alt-dt" => Ok(Family::AlternatingDoubleTransposition),
            "alt-3c" => Ok(Family::AlternatingThreeCycle),
            other => Err(Error::InvalidInput(format!(
                "unknown family {other:?} (expected sym, alt-dt or alt-3c)"
            ))),
        }
    }
}

/// `m` curves of genera `g_i`, each with a degree-`n` cover of the given
/// family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilySpec {
    family: Family,
    n: usize,
    genera: Vec<u64>,
    mixed: Option<Vec<Family>>,
}

impl FamilySpec {
    pub fn new(family: Family, n: usize, genera: Vec<u64>) -> Result<Self> {
        let spec = Self {
            family,
            n,
            genera,
            mixed: None,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Per-factor families; all must share the base group.
    pub fn mixed(n: usize, genera: Vec<u64>, families: Vec<Family>) -> Result<Self> {
        let first = *families
            .first()
            .ok_or_else(|| Error::InvalidInput("mixed family list is empty".into()))?;
        let spec = Self {
            family: first,
            n,
            genera,
            mixed: Some(families),
        };
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<()> {
        let m = self.genera.len();
        if m == 0 {
            return Err(Error::InvalidInput("at least one genus is required".into()));
        }
        if let Some(fams) = &self.mixed {
            if fams.len() != m {
                return Err(Error::InvalidInput(format!(
                    "{} families given for {m} genera",
                    fams.len()
                )));
            }
            if fams.iter().any(|f| f.is_alternating() != self.family.is_alternating()) {
                return Err(Error::InvalidInput(
                    "mixed families must share the base group".into(),
                ));
            }
        }
        let n = self.n as u64;
        for (i, &g) in self.genera.iter().enumerate() {
            let fam = self.family_of(i);
            if fam.is_alternating() {
                if g < 3 {
                    return Err(Error::InvalidInput(format!("genus {g} < 3 for an alternating family")));
                }
                if n < 2 * g + 1 {
                    return Err(Error::InvalidInput(format!("n = {n} < 2g + 1 = {}", 2 * g + 1)));
                }
            } else {
                if self.n < 2 {
                    return Err(Error::InvalidInput(format!("n = {n} < 2")));
                }
                if g < 2 {
                    return Err(Error::InvalidInput(format!("genus {g} < 2")));
                }
                // every genus-g curve is a double cover of P¹ when hyperelliptic
                if n != 2 && n < g + 1 {
                    return Err(Error::InvalidInput(format!("n = {n} < g + 1 = {}", g + 1)));
                }
            }
        }
        Ok(())
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn genera(&self) -> &[u64] {
        &self.genera
    }

    pub fn m(&self) -> usize {
        self.genera.len()
    }

    pub fn families(&self) -> Option<&[Family]> {
        self.mixed.as_deref()
    }

    pub fn family_of(&self, i: usize) -> Family {
        self.mixed.as_ref().map_or(self.family, |f| f[i])
    }

    pub fn branch_counts(&self) -> Vec<u64> {
        (0..self.m())
            .map(|i| self.family_of(i).branch_count(self.n as u64, self.genera[i]))
            .collect()
    }

    /// The single-factor spec for factor `i`.
    pub fn factor(&self, i: usize) -> FamilySpec {
        FamilySpec {
            family: self.family_of(i),
            n: self.n,
            genera: vec![self.genera[i]],
            mixed: None,
        }
    }

    pub fn describe(&self) -> String {
        let genera: Vec<String> = self.genera.iter().map(u64::to_string).collect();
        let fam = match &self.mixed {
            None => self.family.name().to_string(),
            Some(f) => f.iter().map(|x| x.name()).collect::<Vec<_>>().join("/"),
        };
        format!("{fam} n={} genera ({})", self.n, genera.join(","))
    }
}

/// A single Jacobian with exponent 1: `S_n ⊃ S_{n−1}`, the standard
/// representation and `2(g + n − 1)` transposition branch points.
pub fn jacobian_presentation(n: usize, g: u64) -> Result<PresentationInput> {
    product_presentation(&FamilySpec::new(Family::SymmetricSimple, n, vec![g])?)
}

pub fn product_presentation(spec: &FamilySpec) -> Result<PresentationInput> {
    product_presentation_with(spec, EngineOptions::default())
}

/// `G^m ⊃ H^m` with one outer-tensor copy of the base representation per
/// factor and the base inertia generator embedded in coordinate `i` for the
/// `i`-th branch entry. For `m = 1` the plain base group is used.
pub fn product_presentation_with(spec: &FamilySpec, options: EngineOptions) -> Result<PresentationInput> {
    let n = spec.n;
    let m = spec.m();
    let counts = spec.branch_counts();
    let embed = |i: usize| -> Result<Permutation> {
        let cycles = spec
            .family_of(i)
            .inertia()
            .into_iter()
            .map(|c| c.into_iter().map(|p| i * n + p).collect())
            .collect::<Vec<Vec<usize>>>();
        Permutation::from_cycles(n * m, &cycles)
    };
    let branches = (0..m).map(|i| Ok((embed(i)?, counts[i]))).collect::<Result<Vec<_>>>()?;
    let signature = GeometricSignature::genus_zero(branches);
    let base = spec.family.base_group(n);
    if m == 1 {
        return PresentationInput::new(
            base,
            SubgroupSpec::PointStabilizer(n),
            vec![spec.family.base_rep(n)],
            signature,
            options,
        );
    }
    PresentationInput::new(
        GroupSpec::Product(vec![base; m]),
        SubgroupSpec::Product(vec![SubgroupSpec::PointStabilizer(n); m]),
        (0..m)
            .map(|i| RepSpec::OuterTensor {
                position: i,
                factors: m,
                inner: Box::new(spec.family.base_rep(n)),
            })
            .collect(),
        signature,
        options,
    )
}

/// The stated closed forms for a family, evaluated exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedFormExpectation {
    /// `n^{m−1}`.
    pub q: BigInt,
    /// `|H|^{m−1} · |G_base| / dim V`; for `S_n` this is `|H|^{m−1}(n−2)!·n`.
    pub b: BigInt,
    /// `Σ g_i`.
    pub dim_prym: BigInt,
    /// `n^{m−1}(Σ g_i + (m−1)n − m) + 1`.
    pub genus_x: BigInt,
    pub genus_z: BigInt,
    /// Genus of the Galois closure of each single cover `X_i → P¹`.
    pub genus_zi: Vec<BigInt>,
    pub s: Vec<u64>,
    /// The two dimension formulas stated for the alternating families, in
    /// the order given: `1 + n^{m−1}(n(2m−1) − 2m + 2Σg)` and
    /// `1 + n^{m−1}(n(m−1) − m + Σg)`.
    pub published_alternating: Option<(BigInt, BigInt)>,
}

fn exact(x: BigRational) -> BigInt {
    debug_assert!(x.is_integer(), "closed form {x} is not an integer");
    x.to_integer()
}

pub fn closed_form_expectation(spec: &FamilySpec) -> ClosedFormExpectation {
    let n = BigInt::from(spec.n);
    let m = spec.m();
    let mm = BigInt::from(m);
    let sum_g: BigInt = spec.genera.iter().map(|&g| BigInt::from(g)).sum();
    let n_pow = pow(n.clone(), m - 1);
    let n_fact = BigInt::from(factorial(spec.n));
    let alt = spec.family.is_alternating();
    let base_order = if alt { &n_fact / 2 } else { n_fact.clone() };
    let h_order = &base_order / &n;

    let b = pow(h_order.clone(), m - 1) * &base_order / (&n - 1);
    let genus_x = &n_pow * (&sum_g + (&mm - 1) * &n - &mm) + 1;
    let s = spec.branch_counts();

    // Riemann–Hurwitz for the Galois closure of one factor: each branch
    // point has |G|/o preimages of ramification o − 1.
    let zi = |i: usize| -> BigRational {
        let fam = spec.family_of(i);
        let o = BigInt::from(fam.inertia_order());
        let order = BigRational::from_integer(base_order.clone());
        BigRational::one() - &order
            + &order * BigRational::new(BigInt::from(s[i]) * (&o - 1), o * 2)
    };
    let genus_zi: Vec<BigInt> = (0..m).map(|i| exact(zi(i))).collect();

    let genus_z = if alt || spec.mixed.is_some() {
        let total = pow(base_order.clone(), m);
        let mut ram = BigRational::zero();
        for i in 0..m {
            let o = BigInt::from(spec.family_of(i).inertia_order());
            ram += BigRational::new(BigInt::from(s[i]) * (&o - 1), o);
        }
        exact(BigRational::one() - BigRational::from_integer(total.clone())
            + BigRational::from_integer(total) * ram / BigRational::from_integer(BigInt::from(2)))
    } else {
        // (n!)^m / 2 · (Σ g_i + m(n − 1) − 2) + 1
        pow(n_fact.clone(), m) * (&sum_g + &mm * (&n - 1) - 2) / 2 + 1
    };

    let published_alternating = alt.then(|| {
        (
            1 + &n_pow * (&n * (2 * &mm - 1) - 2 * &mm + 2 * &sum_g),
            1 + &n_pow * (&n * (&mm - 1) - &mm + &sum_g),
        )
    });

    ClosedFormExpectation {
        q: n_pow,
        b,
        dim_prym: sum_g,
        genus_x,
        genus_z,
        genus_zi,
        s,
        published_alternating,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaRow {
    pub multi_index: Vec<usize>,
    /// `g_{i1}` of the product double coset.
    pub rep: Permutation,
    /// Coefficient computed by character sums on `G^m`.
    pub engine: BigInt,
    /// `|H|^{m−1}(a_{i_1} + … + a_{i_m})` from the single-factor run.
    pub formula: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaCheck {
    pub rows: Vec<LemmaRow>,
    /// Whether the engine side was computed on the enumerated product.
    pub enumerated: bool,
}

impl LemmaCheck {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(|r| r.engine == r.formula)
    }
}

/// Compares every coefficient of the product correspondence with
/// `|H|^{m−1}` times the sum of the single-factor coefficients.
///
/// The product side is taken from a plain enumeration of `G^m` whenever it
/// fits the enumeration bound, so it shares no code path with the
/// per-factor computation.
pub fn lemma_coefficient_identity(spec: &FamilySpec) -> Result<LemmaCheck> {
    let single = product_presentation(&spec.factor(0))?;
    let (_, a) = coefficients(&single)?;
    let h_order = BigInt::from(single.subgroup().order().clone());
    let m = spec.m();
    let scale = pow(h_order, m - 1);

    let product = product_presentation(spec)?;
    let layout = simultaneous_coset_reps(product.group(), product.subgroup())?;
    let fits = *product.group().order() <= num_bigint::BigUint::from(product.options().enumeration_bound);
    let engine_input = if fits && product.group().is_product() {
        product.with_options(product.options().flattened())?
    } else {
        product.clone()
    };
    let (dec, coeffs) = coefficients(&engine_input)?;

    let rows = layout
        .reps()
        .into_iter()
        .enumerate()
        .map(|(idx, rep)| {
            let multi_index = layout.double_cosets().multi_index(idx);
            let i = dec
                .index_of(&rep)
                .ok_or_else(|| Error::NotInGroup(rep.to_string()))?;
            let formula = &scale * multi_index.iter().map(|&k| &a[k]).sum::<BigInt>();
            Ok(LemmaRow {
                multi_index,
                rep,
                engine: coeffs[i].clone(),
                formula,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LemmaCheck {
        rows,
        enumerated: fits && product.group().is_product(),
    })
}
