use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::Cokernel;

/// One bigraded piece of a finitely generated abelian group: `Z^free_rank`
/// plus `Z/t` for each torsion coefficient `t`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GroupPiece {
    pub free_rank: usize,
    /// Each entry exceeds one and divides the next.
    pub torsion: Vec<BigInt>,
}

impl GroupPiece {
    pub fn free(rank: usize) -> Self {
        GroupPiece { free_rank: rank, torsion: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl From<Cokernel> for GroupPiece {
    fn from(c: Cokernel) -> Self {
        GroupPiece { free_rank: c.free_rank, torsion: normalize_torsion(c.torsion) }
    }
}

/// Brings a list of cyclic orders into invariant-factor form: drops units,
/// and makes each entry divide the next.
pub(crate) fn normalize_torsion(orders: Vec<BigInt>) -> Vec<BigInt> {
    use num_integer::Integer;
    let mut factors: Vec<BigInt> = Vec::new();
    for mut x in orders.into_iter().map(|x| if x < BigInt::zero() { -x } else { x }) {
        if x.is_zero() || x.is_one() {
            continue;
        }
        // Insert x and restore the divisibility chain: (a, b) -> (gcd, lcm).
        for f in factors.iter_mut() {
            let g = f.gcd(&x);
            let l = f.lcm(&x);
            *f = g;
            x = l;
        }
        factors.push(x);
    }
    factors.retain(|f| !f.is_one());
    factors
}

/// A finitely generated abelian group graded by (homological, quantum)
/// degree. Zero pieces are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedGroup {
    pieces: BTreeMap<(i64, i64), GroupPiece>,
}

impl GradedGroup {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, i: i64, j: i64, piece: GroupPiece) {
        if piece.is_zero() {
            self.pieces.remove(&(i, j));
        } else {
            self.pieces.insert((i, j), piece);
        }
    }

    pub fn piece(&self, i: i64, j: i64) -> GroupPiece {
        self.pieces.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn rank(&self, i: i64, j: i64) -> usize {
        self.pieces.get(&(i, j)).map_or(0, |p| p.free_rank)
    }

    pub fn torsion(&self, i: i64, j: i64) -> &[BigInt] {
        self.pieces.get(&(i, j)).map_or(&[], |p| p.torsion.as_slice())
    }

    pub fn is_free(&self) -> bool {
        self.pieces.values().all(|p| p.torsion.is_empty())
    }

    pub fn is_zero(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn total_rank(&self) -> usize {
        self.pieces.values().map(|p| p.free_rank).sum()
    }

    /// Nonzero pieces in increasing (i, j) order.
    pub fn iter(&self) -> impl Iterator<Item = ((i64, i64), &GroupPiece)> {
        self.pieces.iter().map(|(&k, v)| (k, v))
    }

    /// Restriction to quantum degrees `j` with `lo <= j <= hi`.
    pub fn window(&self, lo: i64, hi: i64) -> GradedGroup {
        GradedGroup {
            pieces: self
                .pieces
                .iter()
                .filter(|((_, j), _)| (lo..=hi).contains(j))
                .map(|(&k, v)| (k, v.clone()))
                .collect(),
        }
    }
}
