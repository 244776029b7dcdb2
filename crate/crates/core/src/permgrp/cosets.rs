use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use super::group::{PermGroup, Structure};
use super::matching::max_matching;
use super::perm::Permutation;
use super::subgroup::Subgroup;
use crate::error::{Error, Result};

/// Locates the double coset `H g K` of an element.
#[derive(Debug, Clone)]
enum DoubleLocator {
    Plain { ambient: Arc<PermGroup>, dc_of: Vec<u32> },
    Product { ambient: Arc<PermGroup>, factors: Vec<DoubleCosets> },
}

/// The double cosets `H\G/K`.
///
/// Ordered by the lexicographically smallest element of each double coset,
/// which puts `HK` first. `sizes[i]` counts the cosets `xK` inside the i-th
/// double coset.
#[derive(Debug, Clone)]
pub struct DoubleCosets {
    reps: Vec<Permutation>,
    sizes: Vec<BigUint>,
    locator: DoubleLocator,
}

impl DoubleCosets {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn reps(&self) -> &[Permutation] {
        &self.reps
    }

    pub fn sizes(&self) -> &[BigUint] {
        &self.sizes
    }

    pub fn index_of(&self, g: &Permutation) -> Option<usize> {
        match &self.locator {
            DoubleLocator::Plain { ambient, dc_of } => {
                let t = ambient.table().expect("plain group");
                t.index.get(g).map(|&i| dc_of[i as usize] as usize)
            }
            DoubleLocator::Product { ambient, factors } => {
                let mut idx = 0;
                for (k, f) in factors.iter().enumerate() {
                    idx = idx * f.len() + f.index_of(&ambient.component(g, k))?;
                }
                Some(idx)
            }
        }
    }

    /// Multi-index of a product double coset (first factor most significant).
    pub fn multi_index(&self, mut idx: usize) -> Vec<usize> {
        match &self.locator {
            DoubleLocator::Plain { .. } => vec![idx],
            DoubleLocator::Product { factors, .. } => {
                let mut out = vec![0; factors.len()];
                for (k, f) in factors.iter().enumerate().rev() {
                    out[k] = idx % f.len();
                    idx /= f.len();
                }
                out
            }
        }
    }
}

/// Left cosets `xH`, indexed in order of their smallest element (products:
/// lexicographic order of factor indices).
#[derive(Debug, Clone)]
enum LeftLocator {
    Plain { ambient: Arc<PermGroup>, left_of: Vec<u32>, reps: Vec<Permutation> },
    Product { ambient: Arc<PermGroup>, factors: Vec<LeftCosets> },
}

#[derive(Debug, Clone)]
pub struct LeftCosets {
    count: usize,
    locator: LeftLocator,
}

impl LeftCosets {
    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn index_of(&self, g: &Permutation) -> Option<usize> {
        match &self.locator {
            LeftLocator::Plain { ambient, left_of, .. } => {
                let t = ambient.table().expect("plain group");
                t.index.get(g).map(|&i| left_of[i as usize] as usize)
            }
            LeftLocator::Product { ambient, factors } => {
                let mut idx = 0;
                for (k, f) in factors.iter().enumerate() {
                    idx = idx * f.len() + f.index_of(&ambient.component(g, k))?;
                }
                Some(idx)
            }
        }
    }

    /// One representative per left coset, in index order.
    pub fn transversal(&self) -> Vec<Permutation> {
        match &self.locator {
            LeftLocator::Plain { reps, .. } => reps.clone(),
            LeftLocator::Product { factors, .. } => {
                let parts: Vec<Vec<Permutation>> = factors.iter().map(|f| f.transversal()).collect();
                cartesian_concat(&parts)
            }
        }
    }
}

/// Double-coset decomposition of `G` by `H` on both sides, with elements
/// that represent the left and the right cosets of `H` simultaneously.
#[derive(Debug, Clone)]
pub struct DoubleCosetDecomposition {
    cosets: DoubleCosets,
    two_sided: Vec<Vec<Permutation>>,
    left: LeftCosets,
}

impl DoubleCosetDecomposition {
    pub fn len(&self) -> usize {
        self.cosets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cosets.is_empty()
    }

    /// `g_{i1}`: the first two-sided representative of each double coset.
    /// The first one is the identity.
    pub fn reps(&self) -> Vec<Permutation> {
        self.two_sided.iter().map(|r| r[0].clone()).collect()
    }

    /// `n_i`: left cosets (equivalently right cosets) per double coset.
    pub fn sizes(&self) -> &[BigUint] {
        self.cosets.sizes()
    }

    pub fn two_sided_reps(&self) -> &[Vec<Permutation>] {
        &self.two_sided
    }

    pub fn double_cosets(&self) -> &DoubleCosets {
        &self.cosets
    }

    pub fn left_cosets(&self) -> &LeftCosets {
        &self.left
    }

    pub fn index_of(&self, g: &Permutation) -> Option<usize> {
        self.cosets.index_of(g)
    }
}

fn require_member(group: &PermGroup, sub: &Subgroup) -> Result<()> {
    if sub.ambient().as_ref() != group {
        return Err(Error::Structural("subgroup belongs to a different group".into()));
    }
    Ok(())
}

/// `H\G/K` with sizes and a locator.
pub fn double_cosets(group: &Arc<PermGroup>, h: &Subgroup, k: &Subgroup) -> Result<DoubleCosets> {
    require_member(group, h)?;
    require_member(group, k)?;
    match group.structure() {
        Structure::Plain => Ok(plain_double_cosets(group, h, k)),
        Structure::DirectProduct(factors) => {
            let (Some(hf), Some(kf)) = (h.factors(), k.factors()) else {
                return Err(Error::Structural(
                    "double cosets in a direct product need product-structured subgroups".into(),
                ));
            };
            let parts = factors
                .iter()
                .zip(hf.iter().zip(kf))
                .map(|(f, (a, b))| double_cosets(f, a, b))
                .collect::<Result<Vec<_>>>()?;
            let reps = cartesian_concat(&parts.iter().map(|p| p.reps.clone()).collect::<Vec<_>>());
            let mut sizes = vec![BigUint::from(1u32)];
            for p in &parts {
                sizes = sizes
                    .iter()
                    .flat_map(|s| p.sizes.iter().map(move |t| s * t))
                    .collect();
            }
            Ok(DoubleCosets {
                reps,
                sizes,
                locator: DoubleLocator::Product {
                    ambient: group.clone(),
                    factors: parts,
                },
            })
        }
    }
}

fn plain_double_cosets(group: &Arc<PermGroup>, h: &Subgroup, k: &Subgroup) -> DoubleCosets {
    let t = group.table().expect("plain group");
    let n = t.elements.len();
    let k_order = k.order().to_usize().expect("plain subgroup order");
    let mut dc_of = vec![u32::MAX; n];
    let mut reps = Vec::new();
    let mut sizes = Vec::new();
    for seed in 0..n {
        if dc_of[seed] != u32::MAX {
            continue;
        }
        let id = reps.len() as u32;
        dc_of[seed] = id;
        let mut count = 1usize;
        let mut stack = vec![seed];
        while let Some(i) = stack.pop() {
            let x = &t.elements[i];
            let left = h.generators().iter().map(|a| a * x);
            let right = k.generators().iter().map(|b| x * b);
            for y in left.chain(right).collect::<Vec<_>>() {
                let j = t.index[&y] as usize;
                if dc_of[j] == u32::MAX {
                    dc_of[j] = id;
                    count += 1;
                    stack.push(j);
                }
            }
        }
        reps.push(t.elements[seed].clone());
        sizes.push(BigUint::from(count / k_order));
    }
    DoubleCosets {
        reps,
        sizes,
        locator: DoubleLocator::Plain {
            ambient: group.clone(),
            dc_of,
        },
    }
}

/// Orbit labels of the elements of a plain group under multiplication by
/// `gens` on one side, numbered in order of the smallest element.
fn coset_labels(group: &PermGroup, gens: &[Permutation], on_right: bool) -> (Vec<u32>, Vec<Permutation>) {
    let t = group.table().expect("plain group");
    let mut label = vec![u32::MAX; t.elements.len()];
    let mut reps = Vec::new();
    for seed in 0..t.elements.len() {
        if label[seed] != u32::MAX {
            continue;
        }
        let id = reps.len() as u32;
        label[seed] = id;
        let mut stack = vec![seed];
        while let Some(i) = stack.pop() {
            for g in gens {
                let y = if on_right { &t.elements[i] * g } else { g * &t.elements[i] };
                let j = t.index[&y] as usize;
                if label[j] == u32::MAX {
                    label[j] = id;
                    stack.push(j);
                }
            }
        }
        reps.push(t.elements[seed].clone());
    }
    (label, reps)
}

/// Double cosets `H\G/H` together with, inside each double coset, `n_i`
/// elements that hit every left coset and every right coset of `H` in it
/// exactly once.
///
/// Within a double coset the left and right cosets form a bipartite graph
/// (edge when they intersect); a perfect matching picks the representatives.
/// Each edge carries the simplest element of its intersection and edges are
/// tried simplest first, which for `S_n ⊃ S_{n-1}` yields the transpositions
/// `(i n)`.
pub fn simultaneous_coset_reps(group: &Arc<PermGroup>, h: &Subgroup) -> Result<DoubleCosetDecomposition> {
    require_member(group, h)?;
    match group.structure() {
        Structure::Plain => plain_simultaneous(group, h),
        Structure::DirectProduct(factors) => {
            let hf = h.factors().ok_or_else(|| {
                Error::Structural("coset representatives in a direct product need a product subgroup".into())
            })?;
            let parts = factors
                .iter()
                .zip(hf)
                .map(|(f, s)| simultaneous_coset_reps(f, s))
                .collect::<Result<Vec<_>>>()?;
            let cosets = DoubleCosets {
                reps: cartesian_concat(&parts.iter().map(|p| p.cosets.reps.clone()).collect::<Vec<_>>()),
                sizes: {
                    let mut sizes = vec![BigUint::from(1u32)];
                    for p in &parts {
                        sizes = sizes
                            .iter()
                            .flat_map(|s| p.cosets.sizes.iter().map(move |t| s * t))
                            .collect();
                    }
                    sizes
                },
                locator: DoubleLocator::Product {
                    ambient: group.clone(),
                    factors: parts.iter().map(|p| p.cosets.clone()).collect(),
                },
            };
            // Two-sided reps of a product double coset: all tuples of
            // factor two-sided reps.
            let mut two_sided: Vec<Vec<Vec<Permutation>>> = vec![vec![Vec::new()]];
            for p in &parts {
                let mut next = Vec::with_capacity(two_sided.len() * p.len());
                for prefix in &two_sided {
                    for reps in &p.two_sided {
                        let mut tuples = Vec::with_capacity(prefix.len() * reps.len());
                        for a in prefix {
                            for r in reps {
                                let mut t = a.clone();
                                t.push(r.clone());
                                tuples.push(t);
                            }
                        }
                        next.push(tuples);
                    }
                }
                two_sided = next;
            }
            let two_sided = two_sided
                .into_iter()
                .map(|tuples| tuples.iter().map(|t| Permutation::concat(t.iter())).collect())
                .collect();
            let left = LeftCosets {
                count: parts.iter().map(|p| p.left.count).product(),
                locator: LeftLocator::Product {
                    ambient: group.clone(),
                    factors: parts.iter().map(|p| p.left.clone()).collect(),
                },
            };
            Ok(DoubleCosetDecomposition { cosets, two_sided, left })
        }
    }
}

fn plain_simultaneous(group: &Arc<PermGroup>, h: &Subgroup) -> Result<DoubleCosetDecomposition> {
    let t = group.table().expect("plain group");
    let cosets = plain_double_cosets(group, h, h);
    let DoubleLocator::Plain { dc_of, .. } = &cosets.locator else {
        unreachable!()
    };
    let (left_of, left_reps) = coset_labels(group, h.generators(), true);
    let (right_of, _) = coset_labels(group, h.generators(), false);

    // Simplest element of each (left coset, right coset) intersection,
    // grouped by double coset.
    let mut best: Vec<HashMap<(u32, u32), usize>> = vec![HashMap::new(); cosets.len()];
    for (i, e) in t.elements.iter().enumerate() {
        let slot = best[dc_of[i] as usize]
            .entry((left_of[i], right_of[i]))
            .or_insert(i);
        if e.cmp_simplicity(&t.elements[*slot]).is_lt() {
            *slot = i;
        }
    }

    let mut two_sided = Vec::with_capacity(cosets.len());
    for (d, edges) in best.iter().enumerate() {
        let mut lefts: Vec<u32> = edges.keys().map(|&(l, _)| l).collect();
        let mut rights: Vec<u32> = edges.keys().map(|&(_, r)| r).collect();
        lefts.sort_unstable();
        lefts.dedup();
        rights.sort_unstable();
        rights.dedup();
        let right_pos: HashMap<u32, usize> = rights.iter().enumerate().map(|(i, &r)| (r, i)).collect();
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); lefts.len()];
        for (li, &l) in lefts.iter().enumerate() {
            for &r in &rights {
                if let Some(&e) = edges.get(&(l, r)) {
                    adj[li].push((right_pos[&r], e));
                }
            }
            adj[li].sort_by(|a, b| t.elements[a.1].cmp_simplicity(&t.elements[b.1]));
        }
        let plain_adj: Vec<Vec<usize>> = adj.iter().map(|v| v.iter().map(|&(r, _)| r).collect()).collect();
        let matching = max_matching(&plain_adj, rights.len());
        let mut reps = Vec::with_capacity(lefts.len());
        for (li, m) in matching.iter().enumerate() {
            let r = m.ok_or_else(|| {
                Error::Structural(format!("internal: no perfect matching in double coset {d}"))
            })?;
            let e = adj[li].iter().find(|&&(rr, _)| rr == r).expect("matched edge").1;
            reps.push(t.elements[e].clone());
        }
        reps.sort_by(|a, b| a.cmp_simplicity(b));
        two_sided.push(reps);
    }
    debug_assert!(two_sided[0] == vec![group.identity()]);

    let left = LeftCosets {
        count: left_reps.len(),
        locator: LeftLocator::Plain {
            ambient: group.clone(),
            left_of,
            reps: left_reps,
        },
    };
    Ok(DoubleCosetDecomposition { cosets, two_sided, left })
}

/// All concatenations `a_1 ⊕ … ⊕ a_m` with `a_k` from `parts[k]`, in
/// lexicographic order of the index tuple.
fn cartesian_concat(parts: &[Vec<Permutation>]) -> Vec<Permutation> {
    let mut acc: Vec<Permutation> = vec![Permutation::identity(0)];
    for part in parts {
        acc = acc
            .iter()
            .flat_map(|a| part.iter().map(move |p| Permutation::concat([a, p])))
            .collect();
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgrp::group::{generate_group, GroupSpec, DEFAULT_ENUMERATION_BOUND};
    use crate::permgrp::subgroup::{cyclic_subgroup, SubgroupSpec};

    const B: usize = DEFAULT_ENUMERATION_BOUND;

    fn sizes(d: &[BigUint]) -> Vec<u64> {
        d.iter().map(|x| x.to_u64().unwrap()).collect()
    }

    #[test]
    fn s3_by_transposition() {
        let g = generate_group(&GroupSpec::Symmetric(3), B).unwrap();
        let h = cyclic_subgroup(&g, "(1 2)", B).unwrap();
        let dc = double_cosets(&g, &h, &h).unwrap();
        assert_eq!(sizes(dc.sizes()), vec![1, 2]);
        let dec = simultaneous_coset_reps(&g, &h).unwrap();
        let reps: Vec<String> = dec.reps().iter().map(|p| p.to_string()).collect();
        assert_eq!(reps, vec!["()", "(1 3)"]);
        let second: Vec<String> = dec.two_sided_reps()[1].iter().map(|p| p.to_string()).collect();
        assert_eq!(second, vec!["(1 3)", "(2 3)"]);
    }

    #[test]
    fn symmetric_point_stabilizer_transpositions() {
        for n in 3..=6 {
            let g = generate_group(&GroupSpec::Symmetric(n), B).unwrap();
            let h = Subgroup::build(&g, &SubgroupSpec::PointStabilizer(n), B).unwrap();
            let dec = simultaneous_coset_reps(&g, &h).unwrap();
            assert_eq!(sizes(dec.sizes()), vec![1, (n - 1) as u64]);
            let expected: Vec<String> = (1..n).map(|i| format!("({i} {n})")).collect();
            let got: Vec<String> = dec.two_sided_reps()[1].iter().map(|p| p.to_string()).collect();
            assert_eq!(got, expected);
        }
    }

    #[test]
    fn whole_group_single_coset() {
        let g = generate_group(&GroupSpec::Symmetric(4), B).unwrap();
        let h = Subgroup::build(&g, &SubgroupSpec::Whole, B).unwrap();
        let dec = simultaneous_coset_reps(&g, &h).unwrap();
        assert_eq!(dec.len(), 1);
        assert_eq!(dec.reps(), vec![g.identity()]);
    }

    #[test]
    fn a7_stabilizer_by_double_transposition() {
        let g = generate_group(&GroupSpec::Alternating(7), B).unwrap();
        let h = Subgroup::build(&g, &SubgroupSpec::PointStabilizer(7), B).unwrap();
        let k = cyclic_subgroup(&g, "(1 2)(3 4)", B).unwrap();
        assert_eq!(double_cosets(&g, &h, &k).unwrap().len(), 5);
    }

    #[test]
    fn product_needs_product_subgroups() {
        let spec = GroupSpec::Product(vec![GroupSpec::Symmetric(3), GroupSpec::Symmetric(3)]);
        let g = generate_group(&spec, B).unwrap();
        let diag = cyclic_subgroup(&g, "(1 2)(4 5)", B).unwrap();
        assert!(matches!(double_cosets(&g, &diag, &diag), Err(Error::Structural(_))));
    }

    #[test]
    fn product_matches_flattened() {
        let spec = GroupSpec::Product(vec![GroupSpec::Symmetric(3), GroupSpec::Symmetric(4)]);
        let hs = SubgroupSpec::Product(vec![SubgroupSpec::PointStabilizer(3), SubgroupSpec::PointStabilizer(4)]);
        let g = generate_group(&spec, B).unwrap();
        let flat = g.flattened(B).unwrap();
        let h = Subgroup::build(&g, &hs, B).unwrap();
        let hf = Subgroup::build(&flat, &hs, B).unwrap();
        let a = simultaneous_coset_reps(&g, &h).unwrap();
        let b = simultaneous_coset_reps(&flat, &hf).unwrap();
        assert_eq!(a.len(), 4);
        assert_eq!(a.sizes(), b.sizes());
        assert_eq!(a.double_cosets().reps(), b.double_cosets().reps());
        for x in flat.elements().unwrap() {
            assert_eq!(a.index_of(x), b.index_of(x));
            assert_eq!(a.left_cosets().index_of(x), b.left_cosets().index_of(x));
        }
        assert_eq!(a.left_cosets().transversal(), b.left_cosets().transversal());
    }
}
