use std::collections::{HashSet, VecDeque};
use std::sync::{Arc, OnceLock};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::group::{PermGroup, Structure};
use super::perm::Permutation;
use crate::error::{Error, Result};

/// Declarative description of a subgroup, resolved against an ambient group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubgroupSpec {
    /// Stabilizer of a 1-based point.
    PointStabilizer(usize),
    Generated(Vec<Permutation>),
    /// One subgroup per factor of a direct product.
    Product(Vec<SubgroupSpec>),
    Whole,
}

/// A subgroup of an ambient permutation group.
#[derive(Debug, Clone)]
pub struct Subgroup {
    ambient: Arc<PermGroup>,
    generators: Vec<Permutation>,
    order: BigUint,
    elements: Arc<OnceLock<Option<Vec<Permutation>>>>,
    factors: Option<Vec<Subgroup>>,
    bound: usize,
}

impl Subgroup {
    pub fn build(ambient: &Arc<PermGroup>, spec: &SubgroupSpec, bound: usize) -> Result<Self> {
        match spec {
            SubgroupSpec::Whole => {
                if let Structure::DirectProduct(factors) = ambient.structure() {
                    let parts = factors
                        .iter()
                        .map(|f| Subgroup::build(f, &SubgroupSpec::Whole, bound))
                        .collect::<Result<Vec<_>>>()?;
                    return Ok(Self::from_factors(ambient, parts, bound));
                }
                Ok(Self::with_elements(
                    ambient,
                    ambient.generators().to_vec(),
                    ambient.elements().expect("plain group").to_vec(),
                    bound,
                ))
            }
            SubgroupSpec::PointStabilizer(point) => {
                let p = *point;
                if p == 0 || p > ambient.degree() {
                    return Err(Error::InvalidInput(format!(
                        "point {p} outside 1..{}",
                        ambient.degree()
                    )));
                }
                match ambient.structure() {
                    Structure::DirectProduct(_) => Err(Error::Structural(
                        "point stabilizer of a direct product; give one subgroup per factor".into(),
                    )),
                    Structure::Plain => {
                        let elements: Vec<Permutation> = ambient
                            .elements()
                            .expect("plain group")
                            .iter()
                            .filter(|g| g.image(p - 1) == p - 1)
                            .cloned()
                            .collect();
                        let generators = small_generating_set(&elements);
                        Ok(Self::with_elements(ambient, generators, elements, bound))
                    }
                }
            }
            SubgroupSpec::Generated(gens) => {
                for g in gens {
                    if !ambient.contains(g) {
                        return Err(Error::NotInGroup(g.to_string()));
                    }
                }
                Self::generated(ambient, gens.clone(), bound)
            }
            SubgroupSpec::Product(parts) => {
                let blocks = ambient.blocks();
                if blocks.len() != parts.len() {
                    return Err(Error::Structural(format!(
                        "{} subgroup factors for a group with {} factors",
                        parts.len(),
                        blocks.len()
                    )));
                }
                let subs = blocks
                    .iter()
                    .zip(parts)
                    .map(|(b, s)| Subgroup::build(b, s, bound))
                    .collect::<Result<Vec<_>>>()?;
                match ambient.structure() {
                    Structure::DirectProduct(_) => Ok(Self::from_factors(ambient, subs, bound)),
                    Structure::Plain => {
                        // Flattened product: same generators, enumerated directly.
                        let mut gens = Vec::new();
                        for (k, s) in subs.iter().enumerate() {
                            gens.extend(s.generators.iter().map(|g| ambient.embed(k, g)));
                        }
                        Self::generated(ambient, gens, bound)
                    }
                }
            }
        }
    }

    fn with_elements(
        ambient: &Arc<PermGroup>,
        generators: Vec<Permutation>,
        mut elements: Vec<Permutation>,
        bound: usize,
    ) -> Self {
        elements.sort_unstable();
        let cell = OnceLock::new();
        let order = BigUint::from(elements.len());
        let _ = cell.set(Some(elements));
        Self {
            ambient: ambient.clone(),
            generators,
            order,
            elements: Arc::new(cell),
            factors: None,
            bound,
        }
    }

    fn from_factors(ambient: &Arc<PermGroup>, factors: Vec<Subgroup>, bound: usize) -> Self {
        let mut generators = Vec::new();
        for (k, s) in factors.iter().enumerate() {
            generators.extend(s.generators.iter().map(|g| ambient.embed(k, g)));
        }
        Self {
            ambient: ambient.clone(),
            generators,
            order: factors.iter().map(|s| s.order.clone()).product(),
            elements: Arc::new(OnceLock::new()),
            factors: Some(factors),
            bound,
        }
    }

    /// Subgroup generated by `gens`, enumerated by closure. Fails if the
    /// closure outgrows `bound`.
    pub fn generated(ambient: &Arc<PermGroup>, gens: Vec<Permutation>, bound: usize) -> Result<Self> {
        let elements = closure(&ambient.identity(), &gens, bound)?;
        let generators = if gens.is_empty() { Vec::new() } else { gens };
        Ok(Self::with_elements(ambient, generators, elements, bound))
    }

    pub fn ambient(&self) -> &Arc<PermGroup> {
        &self.ambient
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    pub fn index(&self) -> BigUint {
        self.ambient.order() / &self.order
    }

    pub fn factors(&self) -> Option<&[Subgroup]> {
        self.factors.as_deref()
    }

    /// Sorted elements, enumerated on first use when the order is within
    /// the bound.
    pub fn elements(&self) -> Option<&[Permutation]> {
        self.elements
            .get_or_init(|| {
                if self.order > BigUint::from(self.bound) {
                    return None;
                }
                closure(&self.ambient.identity(), &self.generators, self.bound)
                    .ok()
                    .map(|mut v| {
                        v.sort_unstable();
                        v
                    })
            })
            .as_deref()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if let Some(factors) = &self.factors {
            return factors
                .iter()
                .enumerate()
                .all(|(k, s)| s.contains(&self.ambient.component(g, k)));
        }
        self.elements()
            .map(|e| e.binary_search(g).is_ok())
            .unwrap_or(false)
    }

    /// Counts, per conjugacy class of the ambient group, the elements of the
    /// coset `self · shift` (or of the subgroup itself). Product-structured
    /// subgroups of direct products are handled factor by factor without
    /// enumerating the product.
    pub fn class_histogram(&self, shift: Option<&Permutation>) -> Result<Vec<BigUint>> {
        let ambient = &self.ambient;
        let mut hist = vec![BigUint::zero(); ambient.classes().len()];
        if let (Some(factors), Structure::DirectProduct(groups)) = (&self.factors, ambient.structure()) {
            let mut acc: Vec<BigUint> = vec![BigUint::one()];
            for (k, (s, group)) in factors.iter().zip(groups).enumerate() {
                let part_shift = shift.map(|x| ambient.component(x, k));
                let part = s.class_histogram(part_shift.as_ref())?;
                let width = group.classes().len();
                let mut next = vec![BigUint::zero(); acc.len() * width];
                for (i, a) in acc.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    for (j, p) in part.iter().enumerate() {
                        if !p.is_zero() {
                            next[i * width + j] = a * p;
                        }
                    }
                }
                acc = next;
            }
            return Ok(acc);
        }
        let elements = self.elements().ok_or_else(|| Error::TooLarge {
            order: self.order.to_string(),
            bound: self.bound,
        })?;
        let mut counts = vec![0u64; hist.len()];
        for h in elements {
            let x = match shift {
                Some(s) => h * s,
                None => h.clone(),
            };
            let c = ambient
                .class_of(&x)
                .ok_or_else(|| Error::NotInGroup(x.to_string()))?;
            counts[c] += 1;
        }
        for (slot, c) in hist.iter_mut().zip(counts) {
            *slot = BigUint::from(c);
        }
        Ok(hist)
    }

    /// Enumeration bound this subgroup was built with.
    pub fn bound(&self) -> usize {
        self.bound
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.order == other.order && self.generators == other.generators
    }
}

/// The cyclic subgroup generated by the element spelled `word`.
pub fn cyclic_subgroup(group: &Arc<PermGroup>, word: &str, bound: usize) -> Result<Subgroup> {
    let g = Permutation::parse(word, group.degree())?;
    cyclic_subgroup_of(group, &g, bound)
}

pub fn cyclic_subgroup_of(group: &Arc<PermGroup>, g: &Permutation, bound: usize) -> Result<Subgroup> {
    if !group.contains(g) {
        return Err(Error::NotInGroup(g.to_string()));
    }
    let mut powers = Vec::new();
    let mut x = group.identity();
    loop {
        powers.push(x.clone());
        x = &x * g;
        if x.is_identity() {
            break;
        }
    }
    // Keep the product structure when only one coordinate moves.
    if let Structure::DirectProduct(factors) = group.structure() {
        let comps = group.components(g);
        let moving: Vec<usize> = (0..comps.len()).filter(|&k| !comps[k].is_identity()).collect();
        if moving.len() <= 1 {
            let parts = factors
                .iter()
                .zip(&comps)
                .map(|(f, c)| cyclic_subgroup_of(f, c, bound))
                .collect::<Result<Vec<_>>>()?;
            let sub = Subgroup::from_factors(group, parts, bound);
            let _ = sub.elements.set(Some({
                let mut p = powers;
                p.sort_unstable();
                p
            }));
            return Ok(sub);
        }
    }
    Ok(Subgroup::with_elements(group, vec![g.clone()], powers, bound))
}

/// Elements of `⟨gens⟩` by breadth-first closure from `identity`.
pub(crate) fn closure(
    identity: &Permutation,
    gens: &[Permutation],
    bound: usize,
) -> Result<Vec<Permutation>> {
    let mut seen: HashSet<Permutation> = HashSet::from([identity.clone()]);
    let mut elements = vec![identity.clone()];
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for g in gens {
            let next = &elements[i] * g;
            if seen.insert(next.clone()) {
                if elements.len() >= bound {
                    return Err(Error::TooLarge {
                        order: format!("> {bound}"),
                        bound,
                    });
                }
                queue.push_back(elements.len());
                elements.push(next);
            }
        }
    }
    Ok(elements)
}

/// A short generating set for a subgroup given by its element list: add
/// elements greedily until the closure is everything.
fn small_generating_set(elements: &[Permutation]) -> Vec<Permutation> {
    let target = elements.len();
    let mut gens: Vec<Permutation> = Vec::new();
    let Some(first) = elements.first() else {
        return gens;
    };
    let identity = Permutation::identity(first.degree());
    let mut span: HashSet<Permutation> = HashSet::from([identity.clone()]);
    // Prefer elements of large order; they grow the span fastest.
    let mut candidates: Vec<&Permutation> = elements.iter().collect();
    candidates.sort_by(|a, b| b.order().cmp(&a.order()).then_with(|| a.cmp_simplicity(b)));
    for c in candidates {
        if span.len() == target {
            break;
        }
        if span.contains(c) {
            continue;
        }
        gens.push(c.clone());
        span = closure(&identity, &gens, usize::MAX)
            .expect("unbounded closure")
            .into_iter()
            .collect();
    }
    gens
}

/// Lagrange check used by tests and validation.
pub fn order_divides_ambient(sub: &Subgroup) -> bool {
    (sub.ambient.order() % sub.order()).is_zero()
}

/// Orbits of a set of permutations on points, as a count.
pub fn orbit_count(degree: usize, gens: &[Permutation]) -> usize {
    let mut parent: Vec<usize> = (0..degree).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut y = x;
        while parent[y] != r {
            let next = parent[y];
            parent[y] = r;
            y = next;
        }
        r
    }
    for g in gens {
        for p in 0..degree {
            let a = find(&mut parent, p);
            let b = find(&mut parent, g.image(p));
            if a != b {
                parent[a] = b;
            }
        }
    }
    (0..degree).filter(|&p| find(&mut parent, p) == p).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgrp::group::{generate_group, GroupSpec, DEFAULT_ENUMERATION_BOUND};

    const B: usize = DEFAULT_ENUMERATION_BOUND;

    #[test]
    fn cyclic_orders() {
        let s3 = generate_group(&GroupSpec::Symmetric(3), B).unwrap();
        assert_eq!(*cyclic_subgroup(&s3, "(1 2)", B).unwrap().order(), BigUint::from(2u32));
        let a7 = generate_group(&GroupSpec::Alternating(7), B).unwrap();
        assert_eq!(*cyclic_subgroup(&a7, "(1 2)(3 4)", B).unwrap().order(), BigUint::from(2u32));
        assert_eq!(*cyclic_subgroup(&a7, "(1 2 3)", B).unwrap().order(), BigUint::from(3u32));
        assert!(matches!(cyclic_subgroup(&a7, "(1 2)", B), Err(Error::NotInGroup(_))));
        assert!(matches!(cyclic_subgroup(&a7, "(1 2", B), Err(Error::Parse { .. })));
    }

    #[test]
    fn point_stabilizers() {
        let s5 = generate_group(&GroupSpec::Symmetric(5), B).unwrap();
        let h = Subgroup::build(&s5, &SubgroupSpec::PointStabilizer(5), B).unwrap();
        assert_eq!(*h.order(), BigUint::from(24u32));
        assert_eq!(h.index(), BigUint::from(5u32));
        assert!(order_divides_ambient(&h));
        let regenerated = Subgroup::generated(&s5, h.generators().to_vec(), B).unwrap();
        assert_eq!(regenerated.elements(), h.elements());
    }

    #[test]
    fn product_subgroups_and_histograms() {
        let spec = GroupSpec::Product(vec![GroupSpec::Symmetric(3), GroupSpec::Symmetric(4)]);
        let g = generate_group(&spec, B).unwrap();
        let hs = SubgroupSpec::Product(vec![SubgroupSpec::PointStabilizer(3), SubgroupSpec::PointStabilizer(4)]);
        let h = Subgroup::build(&g, &hs, B).unwrap();
        assert_eq!(*h.order(), BigUint::from(12u32));
        let flat = g.flattened(B).unwrap();
        let hf = Subgroup::build(&flat, &hs, B).unwrap();
        assert_eq!(h.elements(), hf.elements());
        let shift = Permutation::parse("(1 3)(4 5 6 7)", 7).unwrap();
        assert_eq!(
            h.class_histogram(Some(&shift)).unwrap(),
            hf.class_histogram(Some(&shift)).unwrap()
        );
        assert_eq!(h.class_histogram(None).unwrap(), hf.class_histogram(None).unwrap());
        assert!(h.contains(&Permutation::parse("(1 2)(5 6)", 7).unwrap()));
        assert!(!h.contains(&Permutation::parse("(1 3)", 7).unwrap()));
    }

    #[test]
    fn cyclic_in_products() {
        let spec = GroupSpec::Product(vec![GroupSpec::Symmetric(3), GroupSpec::Symmetric(3)]);
        let g = generate_group(&spec, B).unwrap();
        let tau2 = cyclic_subgroup(&g, "(4 5)", B).unwrap();
        assert!(tau2.factors().is_some());
        let diag = cyclic_subgroup(&g, "(1 2)(4 5)", B).unwrap();
        assert!(diag.factors().is_none());
        assert_eq!(*diag.order(), BigUint::from(2u32));
        let mixed = cyclic_subgroup(&g, "(1 2)(4 5 6)", B).unwrap();
        assert_eq!(*mixed.order(), BigUint::from(6u32));
    }

    #[test]
    fn orbit_counts() {
        let g = Permutation::parse("(1 2)(3 4)", 7).unwrap();
        assert_eq!(orbit_count(7, &[g]), 5);
        assert_eq!(orbit_count(7, &[]), 7);
    }
}
