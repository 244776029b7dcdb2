use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use super::perm::{Permutation, MAX_DEGREE};
use crate::error::{Error, Result};

pub const DEFAULT_ENUMERATION_BOUND: usize = 200_000;

/// Declarative description of a permutation group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Symmetric(usize),
    Alternating(usize),
    Explicit {
        degree: usize,
        generators: Vec<Permutation>,
    },
    Product(Vec<GroupSpec>),
}

impl GroupSpec {
    pub fn degree(&self) -> usize {
        match self {
            GroupSpec::Symmetric(n) | GroupSpec::Alternating(n) => *n,
            GroupSpec::Explicit { degree, .. } => *degree,
            GroupSpec::Product(factors) => factors.iter().map(GroupSpec::degree).sum(),
        }
    }

    pub fn label(&self) -> String {
        match self {
            GroupSpec::Symmetric(n) => format!("S{n}"),
            GroupSpec::Alternating(n) => format!("A{n}"),
            GroupSpec::Explicit { degree, generators } => {
                let gens: Vec<String> = generators.iter().map(|g| g.to_string()).collect();
                format!("<{}> on {degree} points", gens.join(", "))
            }
            GroupSpec::Product(factors) => factors
                .iter()
                .map(|f| match f {
                    GroupSpec::Product(_) => format!("({})", f.label()),
                    _ => f.label(),
                })
                .collect::<Vec<_>>()
                .join(" x "),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Structure {
    Plain,
    DirectProduct(Vec<Arc<PermGroup>>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub representative: Permutation,
    pub size: BigUint,
}

/// Every element of a plain group, sorted lexicographically, with its class.
#[derive(Debug)]
pub(crate) struct ElementTable {
    pub(crate) elements: Vec<Permutation>,
    pub(crate) index: HashMap<Permutation, u32>,
    pub(crate) class_of: Vec<u32>,
}

/// A finite permutation group.
///
/// Plain groups are enumerated in full on construction. Direct products keep
/// their factors and are never enumerated; their classes, cosets and sums
/// are assembled factor by factor.
#[derive(Debug)]
pub struct PermGroup {
    label: String,
    degree: usize,
    generators: Vec<Permutation>,
    structure: Structure,
    order: BigUint,
    classes: Vec<ConjugacyClass>,
    table: Option<ElementTable>,
    /// Factor groups acting on consecutive point blocks. Set for direct
    /// products, and also for plain groups flattened from a product.
    blocks: Vec<Arc<PermGroup>>,
    offsets: Vec<usize>,
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree
            && self.order == other.order
            && self.generators == other.generators
            && std::mem::discriminant(&self.structure) == std::mem::discriminant(&other.structure)
    }
}

impl Eq for PermGroup {}

pub(crate) fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// Builds the group described by `spec`. Plain groups whose order exceeds
/// `bound` are rejected; products are bounded per factor.
pub fn generate_group(spec: &GroupSpec, bound: usize) -> Result<Arc<PermGroup>> {
    match spec {
        GroupSpec::Symmetric(n) => {
            let n = *n;
            if n == 0 || n > MAX_DEGREE {
                return Err(Error::InvalidInput(format!("symmetric group of degree {n}")));
            }
            check_bound(&factorial(n), bound)?;
            let mut gens = Vec::new();
            if n >= 2 {
                gens.push(Permutation::from_cycles(n, &[vec![0, 1]])?);
            }
            if n >= 3 {
                gens.push(Permutation::from_cycles(n, &[(0..n).collect()])?);
            }
            PermGroup::plain(spec.label(), n, gens, bound, Vec::new())
        }
        GroupSpec::Alternating(n) => {
            let n = *n;
            if !(3..=MAX_DEGREE).contains(&n) {
                return Err(Error::InvalidInput(format!(
                    "alternating group needs degree at least 3, got {n}"
                )));
            }
            check_bound(&(factorial(n) / 2u32), bound)?;
            // 3-cycles (1 2 k) generate A_n.
            let gens = (2..n)
                .map(|k| Permutation::from_cycles(n, &[vec![0, 1, k]]))
                .collect::<Result<Vec<_>>>()?;
            PermGroup::plain(spec.label(), n, gens, bound, Vec::new())
        }
        GroupSpec::Explicit { degree, generators } => {
            if *degree == 0 || *degree > MAX_DEGREE {
                return Err(Error::InvalidInput(format!("degree {degree}")));
            }
            if let Some(g) = generators.iter().find(|g| g.degree() != *degree) {
                return Err(Error::InvalidInput(format!(
                    "generator {g} has degree {}, expected {degree}",
                    g.degree()
                )));
            }
            PermGroup::plain(spec.label(), *degree, generators.clone(), bound, Vec::new())
        }
        GroupSpec::Product(factors) => {
            if factors.is_empty() {
                return Err(Error::InvalidInput("product of zero factors".into()));
            }
            if spec.degree() > MAX_DEGREE {
                return Err(Error::InvalidInput(format!(
                    "product degree {} exceeds {MAX_DEGREE}",
                    spec.degree()
                )));
            }
            let factors = factors
                .iter()
                .map(|f| generate_group(f, bound))
                .collect::<Result<Vec<_>>>()?;
            Ok(Arc::new(PermGroup::direct_product(spec.label(), factors)))
        }
    }
}

fn check_bound(order: &BigUint, bound: usize) -> Result<()> {
    if *order > BigUint::from(bound) {
        return Err(Error::TooLarge {
            order: order.to_string(),
            bound,
        });
    }
    Ok(())
}

impl PermGroup {
    fn plain(
        label: String,
        degree: usize,
        generators: Vec<Permutation>,
        bound: usize,
        blocks: Vec<Arc<PermGroup>>,
    ) -> Result<Arc<Self>> {
        let identity = Permutation::identity(degree);
        let mut index: HashMap<Permutation, u32> = HashMap::new();
        let mut elements = vec![identity.clone()];
        index.insert(identity, 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in &generators {
                let next = &elements[i] * g;
                if !index.contains_key(&next) {
                    if elements.len() >= bound {
                        return Err(Error::TooLarge {
                            order: format!("> {bound}"),
                            bound,
                        });
                    }
                    index.insert(next.clone(), elements.len() as u32);
                    queue.push_back(elements.len());
                    elements.push(next);
                }
            }
        }
        elements.sort_unstable();
        for (i, e) in elements.iter().enumerate() {
            *index.get_mut(e).expect("closure element") = i as u32;
        }

        // Conjugacy classes by orbit search, seeded in lexicographic order so
        // each class is discovered at its smallest element.
        let mut class_of = vec![u32::MAX; elements.len()];
        let mut classes = Vec::new();
        for seed in 0..elements.len() {
            if class_of[seed] != u32::MAX {
                continue;
            }
            let id = classes.len() as u32;
            class_of[seed] = id;
            let mut size = 1usize;
            let mut stack = vec![seed];
            while let Some(i) = stack.pop() {
                for g in &generators {
                    let c = index[&elements[i].conjugate_by(g)] as usize;
                    if class_of[c] == u32::MAX {
                        class_of[c] = id;
                        size += 1;
                        stack.push(c);
                    }
                }
            }
            classes.push(ConjugacyClass {
                representative: elements[seed].clone(),
                size: BigUint::from(size),
            });
        }

        let offsets = block_offsets(&blocks);
        Ok(Arc::new(Self {
            label,
            degree,
            generators,
            structure: Structure::Plain,
            order: BigUint::from(elements.len()),
            classes,
            table: Some(ElementTable {
                elements,
                index,
                class_of,
            }),
            blocks,
            offsets,
        }))
    }

    fn direct_product(label: String, factors: Vec<Arc<PermGroup>>) -> Self {
        let offsets = block_offsets(&factors);
        let degree = factors.iter().map(|f| f.degree).sum();
        let mut generators = Vec::new();
        for (k, f) in factors.iter().enumerate() {
            for g in &f.generators {
                generators.push(embed_in_blocks(&factors, k, g));
            }
        }
        let order = factors.iter().map(|f| f.order.clone()).product();

        let mut classes = vec![ConjugacyClass {
            representative: Permutation::identity(0),
            size: BigUint::one(),
        }];
        for f in &factors {
            let mut next = Vec::with_capacity(classes.len() * f.classes.len());
            for c in &classes {
                for fc in &f.classes {
                    next.push(ConjugacyClass {
                        representative: Permutation::concat([&c.representative, &fc.representative]),
                        size: &c.size * &fc.size,
                    });
                }
            }
            classes = next;
        }

        Self {
            label,
            degree,
            generators,
            structure: Structure::DirectProduct(factors.clone()),
            order,
            classes,
            table: None,
            blocks: factors,
            offsets,
        }
    }

    /// The same group as a plain, fully enumerated group. Factor blocks are
    /// remembered so outer-tensor characters can still be evaluated.
    pub fn flattened(&self, bound: usize) -> Result<Arc<PermGroup>> {
        check_bound(&self.order, bound)?;
        Self::plain(
            self.label.clone(),
            self.degree,
            self.generators.clone(),
            bound,
            self.blocks.clone(),
        )
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn structure(&self) -> &Structure {
        &self.structure
    }

    pub fn is_product(&self) -> bool {
        matches!(self.structure, Structure::DirectProduct(_))
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    pub(crate) fn table(&self) -> Option<&ElementTable> {
        self.table.as_ref()
    }

    /// All elements in lexicographic order, for plain groups.
    pub fn elements(&self) -> Option<&[Permutation]> {
        self.table.as_ref().map(|t| t.elements.as_slice())
    }

    /// Factor groups on consecutive point blocks, if the group carries a
    /// product decomposition (structured or flattened).
    pub fn blocks(&self) -> &[Arc<PermGroup>] {
        &self.blocks
    }

    /// Component of `g` in block `k`.
    pub fn component(&self, g: &Permutation, k: usize) -> Permutation {
        g.restrict(self.offsets[k], self.blocks[k].degree)
    }

    pub fn components(&self, g: &Permutation) -> Vec<Permutation> {
        (0..self.blocks.len()).map(|k| self.component(g, k)).collect()
    }

    /// Embeds an element of block `k` with identity elsewhere.
    pub fn embed(&self, k: usize, g: &Permutation) -> Permutation {
        embed_in_blocks(&self.blocks, k, g)
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        match (&self.structure, &self.table) {
            (_, Some(t)) => t.index.contains_key(g),
            (Structure::DirectProduct(factors), None) => factors
                .iter()
                .enumerate()
                .all(|(k, f)| f.contains(&self.component(g, k))),
            (Structure::Plain, None) => unreachable!("plain groups are enumerated"),
        }
    }

    /// Conjugacy classes, ordered by their lexicographically smallest
    /// element (the identity class first). For direct products this is the
    /// lexicographic order of factor-class tuples.
    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn class_of(&self, g: &Permutation) -> Option<usize> {
        match (&self.structure, &self.table) {
            (_, Some(t)) => t.index.get(g).map(|&i| t.class_of[i as usize] as usize),
            (Structure::DirectProduct(factors), None) => {
                let mut idx = 0usize;
                for (k, f) in factors.iter().enumerate() {
                    let c = f.class_of(&self.component(g, k))?;
                    idx = idx * f.classes.len() + c;
                }
                Some(idx)
            }
            (Structure::Plain, None) => unreachable!("plain groups are enumerated"),
        }
    }

    pub fn order_u64(&self) -> Option<u64> {
        self.order.to_u64()
    }
}

fn block_offsets(blocks: &[Arc<PermGroup>]) -> Vec<usize> {
    let mut offsets = Vec::with_capacity(blocks.len());
    let mut acc = 0;
    for b in blocks {
        offsets.push(acc);
        acc += b.degree;
    }
    offsets
}

fn embed_in_blocks(blocks: &[Arc<PermGroup>], k: usize, g: &Permutation) -> Permutation {
    let ids: Vec<Permutation> = blocks.iter().map(|b| b.identity()).collect();
    Permutation::concat(
        ids.iter()
            .enumerate()
            .map(|(j, id)| if j == k { g } else { id }),
    )
}

/// The conjugacy classes of `group` as (representative, size) pairs.
pub fn conjugacy_classes(group: &PermGroup) -> &[ConjugacyClass] {
    group.classes()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn build(spec: GroupSpec) -> Arc<PermGroup> {
        generate_group(&spec, DEFAULT_ENUMERATION_BOUND).unwrap()
    }

    #[test]
    fn orders() {
        assert_eq!(*build(GroupSpec::Symmetric(3)).order(), BigUint::from(6u32));
        let p = build(GroupSpec::Product(vec![GroupSpec::Symmetric(3), GroupSpec::Symmetric(3)]));
        assert_eq!(*p.order(), BigUint::from(36u32));
        assert_eq!(p.degree(), 6);
        assert_eq!(*build(GroupSpec::Alternating(7)).order(), BigUint::from(2520u32));
        assert_eq!(*build(GroupSpec::Symmetric(1)).order(), BigUint::one());
        assert_eq!(*build(GroupSpec::Symmetric(8)).order(), BigUint::from(40320u32));
    }

    #[test]
    fn enumeration_bound() {
        assert!(matches!(
            generate_group(&GroupSpec::Symmetric(9), DEFAULT_ENUMERATION_BOUND),
            Err(Error::TooLarge { .. })
        ));
        let explicit = GroupSpec::Explicit {
            degree: 6,
            generators: vec![
                Permutation::parse("(1 2)", 6).unwrap(),
                Permutation::parse("(1 2 3 4 5 6)", 6).unwrap(),
            ],
        };
        assert!(matches!(generate_group(&explicit, 100), Err(Error::TooLarge { .. })));
        assert_eq!(*generate_group(&explicit, 1000).unwrap().order(), BigUint::from(720u32));
        // Products are bounded per factor only.
        let big = GroupSpec::Product(vec![GroupSpec::Alternating(7); 3]);
        let g = generate_group(&big, DEFAULT_ENUMERATION_BOUND).unwrap();
        assert_eq!(*g.order(), BigUint::from(2520u64.pow(3)));
    }

    #[test]
    fn class_counts() {
        let s3 = build(GroupSpec::Symmetric(3));
        let sizes: Vec<u32> = s3.classes().iter().map(|c| c.size.to_u32().unwrap()).collect();
        assert_eq!(sizes, vec![1, 3, 2]);
        assert_eq!(build(GroupSpec::Symmetric(4)).classes().len(), 5);
        assert_eq!(build(GroupSpec::Alternating(5)).classes().len(), 5);
        let p = build(GroupSpec::Product(vec![GroupSpec::Symmetric(3), GroupSpec::Symmetric(3)]));
        assert_eq!(p.classes().len(), 9);
        let flat = p.flattened(1000).unwrap();
        assert_eq!(flat.classes().len(), 9);
    }

    #[test]
    fn product_and_plain_class_orders_agree() {
        let spec = GroupSpec::Product(vec![GroupSpec::Symmetric(3), GroupSpec::Alternating(4)]);
        let p = build(spec);
        let flat = p.flattened(DEFAULT_ENUMERATION_BOUND).unwrap();
        assert_eq!(p.classes(), flat.classes());
        for g in flat.elements().unwrap() {
            assert_eq!(p.class_of(g), flat.class_of(g));
            assert!(p.contains(g));
        }
    }

    #[test]
    fn membership() {
        let a4 = build(GroupSpec::Alternating(4));
        assert!(a4.contains(&Permutation::parse("(1 2)(3 4)", 4).unwrap()));
        assert!(!a4.contains(&Permutation::parse("(1 2)", 4).unwrap()));
        assert!(!a4.contains(&Permutation::parse("(1 2)(3 4)", 5).unwrap()));
    }
}
