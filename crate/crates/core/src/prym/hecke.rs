use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::permgrp::{DoubleCosetDecomposition, PermGroup};
use crate::reptheory::ClassFunction;

use super::engine::dimension;

/// The correspondence `Σ_i b_i H g_i H` acting on the left cosets `xH`:
/// `M[x][y] = b_i` where `x^{-1} y ∈ H g_i H`.
pub fn hecke_matrix(
    dec: &DoubleCosetDecomposition,
    coefficients: &[BigInt],
    matrix_bound: usize,
) -> Result<IntMatrix> {
    let n = dec.left_cosets().len();
    if n > matrix_bound {
        return Err(Error::IndexTooLarge {
            index: n.to_string(),
            bound: matrix_bound,
        });
    }
    let transversal = dec.left_cosets().transversal();
    let inverses: Vec<_> = transversal.iter().map(|x| x.inverse()).collect();
    let mut out = IntMatrix::zeros(n, n);
    for (a, xi) in inverses.iter().enumerate() {
        for (b, y) in transversal.iter().enumerate() {
            let i = dec
                .index_of(&(xi * y))
                .ok_or_else(|| Error::NotInGroup((xi * y).to_string()))?;
            out[(a, b)] = coefficients[i].clone();
        }
    }
    Ok(out)
}

/// Whether `M` commutes with the left action of every generator of `G`
/// on the cosets.
pub fn hecke_commutes(group: &PermGroup, dec: &DoubleCosetDecomposition, m: &IntMatrix) -> Result<bool> {
    let left = dec.left_cosets();
    let transversal = left.transversal();
    for s in group.generators() {
        let action = transversal
            .iter()
            .map(|x| left.index_of(&(s * x)).ok_or_else(|| Error::NotInGroup((s * x).to_string())))
            .collect::<Result<Vec<_>>>()?;
        for a in 0..transversal.len() {
            for b in 0..transversal.len() {
                if m[(action[a], action[b])] != m[(a, b)] {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectorVerdict {
    /// `b · q`, the expected eigenvalue.
    pub lambda: BigInt,
    pub square_ok: bool,
    pub rank: usize,
    /// `Σ_k dim V_k`.
    pub expected_rank: BigInt,
}

impl ProjectorVerdict {
    pub fn rank_ok(&self) -> bool {
        self.expected_rank == BigInt::from(self.rank)
    }

    pub fn holds(&self) -> bool {
        self.square_ok && self.rank_ok()
    }
}

/// `M` is `bq` times the projector onto the `V_k`-isotypic part of the
/// permutation module, so `M² = bq·M` and `rank M = Σ_k dim V_k`.
pub fn projector_identity_check(
    m: &IntMatrix,
    b: &BigInt,
    q: &BigInt,
    characters: &[ClassFunction],
) -> Result<ProjectorVerdict> {
    let lambda = b * q;
    let square_ok = (m * m) == m.scaled(&lambda);
    let expected_rank = characters.iter().map(dimension).sum::<Result<BigInt>>()?;
    Ok(ProjectorVerdict {
        lambda,
        square_ok,
        rank: m.rank(),
        expected_rank,
    })
}
