//! Permutations as image arrays.
//!
//! Points are stored 0-based; everything user-facing (cycle notation,
//! [`Permutation::images_one_based`]) is 1-based. Composition acts on points
//! left to right: `(a * b)(x) = b(a(x))`, i.e. `a` is applied first.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Mul;

use num_integer::Integer;
use smallvec::SmallVec;

use crate::error::{Error, Result};

pub const MAX_DEGREE: usize = u8::MAX as usize;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: SmallVec<[u8; 16]>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        assert!(degree <= MAX_DEGREE, "degree {degree} exceeds {MAX_DEGREE}");
        Self {
            images: (0..degree).map(|i| i as u8).collect(),
        }
    }

    /// Builds a permutation from 0-based images, checking bijectivity.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        if images.len() > MAX_DEGREE {
            return Err(Error::InvalidInput(format!(
                "degree {} exceeds {MAX_DEGREE}",
                images.len()
            )));
        }
        let mut seen = vec![false; images.len()];
        for &x in images {
            if x >= images.len() || seen[x] {
                return Err(Error::InvalidInput(format!(
                    "image array {images:?} is not a bijection"
                )));
            }
            seen[x] = true;
        }
        Ok(Self {
            images: images.iter().map(|&x| x as u8).collect(),
        })
    }

    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::InvalidInput("point 0 in a 1-based image array".into()));
        }
        let zero: Vec<usize> = images.iter().map(|&x| x - 1).collect();
        Self::from_images(&zero)
    }

    /// Product of disjoint-or-not cycles given as 0-based point lists,
    /// composed left to right.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut acc = Self::identity(degree);
        for cycle in cycles {
            let mut images: Vec<usize> = (0..degree).collect();
            for (k, &p) in cycle.iter().enumerate() {
                if p >= degree {
                    return Err(Error::InvalidInput(format!(
                        "point {} outside 1..{degree}",
                        p + 1
                    )));
                }
                images[p] = cycle[(k + 1) % cycle.len()];
            }
            acc = &acc * &Self::from_images(&images)?;
        }
        Ok(acc)
    }

    /// Parses cycle notation such as `"(1 2)(3 4)"` or `"()"` on `degree` points.
    pub fn parse(word: &str, degree: usize) -> Result<Self> {
        let cycles = parse_cycles(word)?;
        let mut seen = vec![false; degree];
        for cycle in &cycles {
            for &(pos, p) in cycle {
                if p == 0 || p > degree {
                    return Err(Error::Parse {
                        position: pos,
                        message: format!("point {p} outside 1..{degree}"),
                    });
                }
                if seen[p - 1] {
                    return Err(Error::Parse {
                        position: pos,
                        message: format!("point {p} repeated"),
                    });
                }
                seen[p - 1] = true;
            }
        }
        let cycles: Vec<Vec<usize>> = cycles
            .into_iter()
            .map(|c| c.into_iter().map(|(_, p)| p - 1).collect())
            .collect();
        Self::from_cycles(degree, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.images.iter().map(|&x| x as usize)
    }

    pub fn images_one_based(&self) -> Vec<usize> {
        self.images().map(|x| x + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    pub fn inverse(&self) -> Self {
        let mut inv: SmallVec<[u8; 16]> = SmallVec::from_elem(0, self.images.len());
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Self { images: inv }
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(self.degree());
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    pub fn fixed_points(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .filter(|&(i, &x)| i == x as usize)
            .count()
    }

    /// 0-based points moved by the permutation, ascending.
    pub fn support(&self) -> Vec<usize> {
        self.images
            .iter()
            .enumerate()
            .filter(|&(i, &x)| i != x as usize)
            .map(|(i, _)| i)
            .collect()
    }

    /// Nontrivial cycles as 0-based point lists, each starting at its
    /// smallest point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.image(start) == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut p = self.image(start);
            while p != start {
                seen[p] = true;
                cycle.push(p);
                p = self.image(p);
            }
            out.push(cycle);
        }
        out
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| acc.lcm(&(c.len() as u64)))
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }

    /// `g⁻¹ · self · g`.
    pub fn conjugate_by(&self, g: &Permutation) -> Self {
        &(&g.inverse() * self) * g
    }

    /// Ordering that prefers elements moving few, small points. Used to pick
    /// readable coset representatives.
    pub fn cmp_simplicity(&self, other: &Self) -> Ordering {
        let a = self.support();
        let b = other.support();
        a.len()
            .cmp(&b.len())
            .then_with(|| a.cmp(&b))
            .then_with(|| self.images.cmp(&other.images))
    }

    /// Restriction to the block `offset..offset + len`, renumbered from 0.
    /// The block must be invariant.
    pub fn restrict(&self, offset: usize, len: usize) -> Self {
        Self {
            images: self.images[offset..offset + len]
                .iter()
                .map(|&x| x - offset as u8)
                .collect(),
        }
    }

    /// Concatenates permutations acting on consecutive disjoint blocks.
    pub fn concat<'a>(parts: impl IntoIterator<Item = &'a Permutation>) -> Self {
        let mut images = SmallVec::new();
        let mut offset = 0usize;
        for part in parts {
            images.extend(part.images.iter().map(|&x| x + offset as u8));
            offset += part.degree();
        }
        assert!(offset <= MAX_DEGREE);
        Self { images }
    }
}

impl Ord for Permutation {
    /// Lexicographic order of image arrays.
    fn cmp(&self, other: &Self) -> Ordering {
        self.images.cmp(&other.images)
    }
}

impl PartialOrd for Permutation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    fn mul(self, rhs: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), rhs.degree());
        Permutation {
            images: self.images.iter().map(|&x| rhs.images[x as usize]).collect(),
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in cycles {
            f.write_str("(")?;
            for (k, p) in cycle.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", p + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{}", self)
    }
}

/// Tokenizes cycle notation into cycles of `(byte position, 1-based point)`.
fn parse_cycles(word: &str) -> Result<Vec<Vec<(usize, usize)>>> {
    let bytes = word.as_bytes();
    let mut i = 0;
    let mut cycles = Vec::new();
    let skip_ws = |i: &mut usize| {
        while *i < bytes.len() && bytes[*i].is_ascii_whitespace() {
            *i += 1;
        }
    };
    skip_ws(&mut i);
    if i == bytes.len() {
        return Err(Error::Parse {
            position: 0,
            message: "empty permutation; write \"()\" for the identity".into(),
        });
    }
    while i < bytes.len() {
        if bytes[i] != b'(' {
            return Err(Error::Parse {
                position: i,
                message: format!("expected '(' but found '{}'", bytes[i] as char),
            });
        }
        let open = i;
        i += 1;
        let mut cycle = Vec::new();
        loop {
            skip_ws(&mut i);
            if i == bytes.len() {
                return Err(Error::Parse {
                    position: i,
                    message: format!("unclosed cycle opened at position {open}"),
                });
            }
            if bytes[i] == b')' {
                i += 1;
                break;
            }
            if !bytes[i].is_ascii_digit() {
                return Err(Error::Parse {
                    position: i,
                    message: format!("expected a point or ')' but found '{}'", bytes[i] as char),
                });
            }
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let point: usize = word[start..i].parse().map_err(|_| Error::Parse {
                position: start,
                message: "point out of range".into(),
            })?;
            cycle.push((start, point));
        }
        if cycle.len() == 1 {
            return Err(Error::Parse {
                position: open,
                message: "a cycle needs at least two points".into(),
            });
        }
        if !cycle.is_empty() {
            cycles.push(cycle);
        }
        skip_ws(&mut i);
    }
    Ok(cycles)
}
