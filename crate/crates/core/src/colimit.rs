//! Cabled `gl_2` homology of the `p`-framed unknot at level 0, as the
//! quotient of `⊕_n Z(H^n)_{4n+j}` (for `p > 0`) or `⊕_n Z(H^n)^∨_{-j}` (for
//! `p < 0`) by the symmetric-group, `psi(v) ~ 0` and `phi(v) ~ v` relations,
//! truncated to levels `n <= n_max`.
//!
//! A relation is used when every term it involves lies in a level
//! `<= n_max`. A term in a graded piece that is zero contributes nothing, so
//! `phi(v) - v` with `phi(v)` landing in a zero piece is kept as `-v`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use crate::center::{
    expected_rank, psi_phi_negative, psi_phi_positive, relation_matrix, CenterElement, DualLattice,
    ParityPermutation, SignConvention, Subset,
};
use crate::error::Error;
use crate::intlinalg::{cokernel, GradedGroup, GroupPiece, IntMatrix, Limits};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FramingSign {
    Positive,
    Negative,
}

/// A truncation of the colimit system.
#[derive(Clone, Debug)]
pub struct TruncatedSystem {
    pub p_sign: FramingSign,
    pub n_max: usize,
    /// Quantum window `j_min <= j <= j_max`.
    pub j_min: i64,
    pub j_max: i64,
    pub signs: SignConvention,
    /// Must be 2.
    pub rank: usize,
    /// Must be 0.
    pub alpha: i64,
    pub limits: Limits,
}

impl TruncatedSystem {
    pub fn new(p_sign: FramingSign, n_max: usize, j_min: i64) -> Self {
        TruncatedSystem {
            p_sign,
            n_max,
            j_min,
            j_max: 0,
            signs: SignConvention::CONJECTURED,
            rank: 2,
            alpha: 0,
            limits: Limits::default(),
        }
    }

    fn validate(&self) -> Result<(), Error> {
        if self.rank != 2 {
            return Err(Error::InvalidParameter(format!("framed unknots need N = 2, got N = {}", self.rank)));
        }
        if self.alpha != 0 {
            return Err(Error::InvalidParameter(format!("framed unknots need alpha = 0, got {}", self.alpha)));
        }
        if self.j_min > self.j_max {
            return Err(Error::InvalidParameter("empty quantum window".into()));
        }
        if self.n_max > 12 {
            return Err(Error::DimensionCap { n: self.n_max, max: 12 });
        }
        Ok(())
    }
}

/// The truncated quotient together with the same computation one level
/// lower. A degree is marked stable when the two agree and some level below
/// `n_max` already carries generators in that degree; odd and positive
/// degrees vanish at every level and are always stable.
#[derive(Clone, Debug)]
pub struct FramedUnknotResult {
    pub group: GradedGroup,
    pub previous: Option<GradedGroup>,
    pub stable: BTreeMap<i64, bool>,
}

impl FramedUnknotResult {
    pub fn all_stable(&self) -> bool {
        self.stable.values().all(|&s| s)
    }
}

pub fn cabled_khr2_framed_unknot(sys: &TruncatedSystem) -> Result<FramedUnknotResult, Error> {
    sys.validate()?;
    let group = truncated_quotient(sys, sys.n_max)?;
    let previous = match sys.n_max {
        0 => None,
        n => Some(truncated_quotient(sys, n - 1)?),
    };
    let stable = (sys.j_min..=sys.j_max)
        .map(|j| {
            let agree = previous.as_ref().is_some_and(|prev| prev.piece(0, j) == group.piece(0, j));
            let never_carried = j > 0 || j % 2 != 0;
            let seen = (0..sys.n_max).any(|n| carries(sys.p_sign, n, j));
            (j, never_carried || (agree && seen))
        })
        .collect();
    Ok(FramedUnknotResult { group, previous, stable })
}

/// The quotient truncated at `n_max`, over the window of `sys`.
pub fn truncated_quotient(sys: &TruncatedSystem, n_max: usize) -> Result<GradedGroup, Error> {
    sys.validate()?;
    let degrees: Vec<i64> = (sys.j_min..=sys.j_max).collect();
    let pieces: Result<Vec<(i64, GroupPiece)>, Error> = degrees
        .par_iter()
        .map(|&j| {
            let m = match sys.p_sign {
                FramingSign::Positive => positive_relations(n_max, j, sys.signs),
                FramingSign::Negative => negative_relations(n_max, j, sys.signs)?,
            };
            sys.limits.check(&m)?;
            Ok((j, GroupPiece::from(cokernel(&m))))
        })
        .collect();
    let mut g = GradedGroup::new();
    for (j, piece) in pieces? {
        g.set(0, j, piece);
    }
    Ok(g)
}

/// Whether level `n` has a nonzero piece in degree `j`.
fn carries(p_sign: FramingSign, n: usize, j: i64) -> bool {
    match p_sign {
        FramingSign::Positive => positive_k(n, j).is_some(),
        FramingSign::Negative => j <= 0 && j % 2 == 0 && (-j / 2) as usize <= n,
    }
}

/// `k` with `Z(H^n)_{2k}` the degree-`j` piece at level `n` for `p > 0`, if
/// that piece can be nonzero.
fn positive_k(n: usize, j: i64) -> Option<usize> {
    let twice = 4 * n as i64 + j;
    if twice < 0 || twice % 2 != 0 {
        return None;
    }
    let k = (twice / 2) as usize;
    (k <= n).then_some(k)
}

/// Generators: monomials `X_I`, `|I| = k`, at every level carrying a
/// nonzero degree-`j` piece. Relations: the defining relations of each
/// `Z(H^n)_{2k}`, `sigma(X_I) - X_I`, `psi(X_I)` from degree `j + 2`, and
/// `phi(X_I) - X_I`.
fn positive_relations(n_max: usize, j: i64, signs: SignConvention) -> IntMatrix {
    let mut index: HashMap<(usize, Subset), usize> = HashMap::new();
    let mut levels = Vec::new();
    for n in 0..=n_max {
        if let Some(k) = positive_k(n, j) {
            for s in crate::center::subsets(2 * n, k) {
                let next = index.len();
                index.insert((n, s), next);
            }
            levels.push((n, k));
        }
    }
    let mut columns: Vec<Vec<(usize, BigInt)>> = Vec::new();
    let mut push = |terms: Vec<(usize, i64)>| {
        let mut col: BTreeMap<usize, i64> = BTreeMap::new();
        for (r, c) in terms {
            *col.entry(r).or_insert(0) += c;
        }
        let col: Vec<(usize, BigInt)> = col.into_iter().filter(|(_, c)| *c != 0).map(|(r, c)| (r, c.into())).collect();
        if !col.is_empty() {
            columns.push(col);
        }
    };
    let element_terms = |n: usize, x: &CenterElement| -> Vec<(usize, i64)> {
        x.iter().map(|(s, c)| (index[&(n, *s)], c)).collect()
    };

    for &(n, k) in &levels {
        let (monomials, _, rel) = relation_matrix(n, k);
        for c in 0..rel.cols() {
            push(rel.column(c).iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(r, _)| (index[&(n, monomials[r])], 1)).collect());
        }
        for sigma in ParityPermutation::generators(n) {
            for &s in &monomials {
                push(vec![(index[&(n, sigma.apply_subset(s))], 1), (index[&(n, s)], -1)]);
            }
        }
        // phi into level n + 1, same j, degree 2k + 4.
        let target_nonzero = k + 2 <= n + 1;
        if target_nonzero && n + 1 > n_max {
            continue;
        }
        for &s in &monomials {
            let x = CenterElement::single(s, 1);
            let mut terms = vec![(index[&(n, s)], -1)];
            if target_nonzero {
                let (_, phi) = psi_phi_positive(n, &x, signs);
                terms.extend(element_terms(n + 1, &phi));
            }
            push(terms);
        }
    }
    // psi from level n at degree j + 2 into level n + 1 at degree j.
    for n in 0..n_max {
        let (Some(k_src), Some(_)) = (positive_k(n, j + 2), positive_k(n + 1, j)) else { continue };
        for s in crate::center::subsets(2 * n, k_src) {
            let (psi, _) = psi_phi_positive(n, &CenterElement::single(s, 1), signs);
            push(element_terms(n + 1, &psi));
        }
    }
    IntMatrix::from_columns(index.len(), &columns)
}

/// Generators: a lattice basis of `Z(H^n)^∨_{2k}`, `k = -j / 2`, at each
/// level `n >= k`. Relations: `sigma(f) - f`, `psi(f)` from degree `2k - 2`
/// at level `n - 1`, and `phi(f) - f`, all in lattice coordinates.
fn negative_relations(n_max: usize, j: i64, signs: SignConvention) -> Result<IntMatrix, Error> {
    if j > 0 || j % 2 != 0 {
        return Ok(IntMatrix::zeros(0, 0));
    }
    let k = (-j / 2) as usize;
    let lattices: BTreeMap<usize, DualLattice> = (k..=n_max).map(|n| (n, DualLattice::new(n, k))).collect();
    let mut offsets = BTreeMap::new();
    let mut total = 0;
    for (&n, l) in &lattices {
        debug_assert_eq!(l.rank(), expected_rank(n, k));
        offsets.insert(n, total);
        total += l.rank();
    }
    let mut columns: Vec<Vec<(usize, BigInt)>> = Vec::new();
    let mut push = |mut col: Vec<(usize, BigInt)>| {
        col.retain(|(_, v)| !v.is_zero());
        if !col.is_empty() {
            columns.push(col);
        }
    };
    let embed = |n: usize, coords: Vec<BigInt>| -> Vec<(usize, BigInt)> {
        coords.into_iter().enumerate().map(|(i, v)| (offsets[&n] + i, v)).collect()
    };

    for (&n, lattice) in &lattices {
        let basis: Vec<_> = (0..lattice.rank()).map(|c| lattice.basis_functional(c)).collect();
        for sigma in ParityPermutation::generators(n) {
            let moved: Vec<_> = basis.iter().map(|f| sigma.act_dual(f)).collect();
            let coords = lattice.coordinates_of_all(&moved)?;
            for (c, _) in basis.iter().enumerate() {
                let mut col = embed(n, coords.column(c));
                col.push((offsets[&n] + c, BigInt::from(-1)));
                push(merge(col));
            }
        }
        if let Some(next) = lattices.get(&(n + 1)) {
            let images: Vec<_> = basis.iter().map(|f| psi_phi_negative(f, signs).1).collect();
            let coords = next.coordinates_of_all(&images)?;
            for (c, _) in basis.iter().enumerate() {
                let mut col = embed(n + 1, coords.column(c));
                col.push((offsets[&n] + c, BigInt::from(-1)));
                push(merge(col));
            }
        }
        // psi from level n - 1 >= k - 1, degree 2k - 2.
        if k >= 1 {
            let source = DualLattice::new(n - 1, k - 1);
            let images: Vec<_> =
                (0..source.rank()).map(|c| psi_phi_negative(&source.basis_functional(c), signs).0).collect();
            let coords = lattice.coordinates_of_all(&images)?;
            for c in 0..source.rank() {
                push(embed(n, coords.column(c)));
            }
        }
    }
    Ok(IntMatrix::from_columns(total, &columns))
}

fn merge(col: Vec<(usize, BigInt)>) -> Vec<(usize, BigInt)> {
    let mut m: BTreeMap<usize, BigInt> = BTreeMap::new();
    for (r, v) in col {
        *m.entry(r).or_insert_with(BigInt::zero) += v;
    }
    m.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}
