//! The center `Z(H^n)` in its presentation by square-free monomials in
//! `X_1, ..., X_{2n}` modulo the relations `sum_{|I| = k, I > J} X_I = 0`,
//! its admissible basis, its dual lattice with the matching functionals, the
//! symmetric-group action, and the maps `psi`, `phi` to `Z(H^{n+1})`.
//!
//! Subsets of `{1, ..., 2n}` are bitmasks with bit `i - 1` standing for
//! `X_i`; lists of subsets of a fixed size are in lexicographic order of
//! their sorted elements.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::intlinalg::{
    determinant, kernel_basis, smith_normal_form, smith_normal_form_with, solve, GradedGroup,
    GroupPiece, IntMatrix, SnfFlags,
};
use crate::lincomb::LinComb;

/// A square-free monomial `X_I`, or the dual basis vector `X_I^∨`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subset(pub u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    /// From 1-based elements.
    pub fn from_elements(elements: &[usize]) -> Self {
        Subset(elements.iter().fold(0, |m, &i| m | (1 << (i - 1))))
    }

    /// Sorted 1-based elements.
    pub fn elements(&self) -> Vec<usize> {
        (0..64).filter(|b| self.0 >> b & 1 == 1).map(|b| b + 1).collect()
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0 >> (i - 1) & 1 == 1
    }

    pub fn is_subset_of(&self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn with(&self, i: usize) -> Subset {
        Subset(self.0 | 1 << (i - 1))
    }

    /// Product of monomials; zero when they share a variable.
    pub fn product(&self, other: Subset) -> Option<Subset> {
        (self.0 & other.0 == 0).then_some(Subset(self.0 | other.0))
    }

    /// Degree `2 |I|`.
    pub fn degree(&self) -> i64 {
        2 * self.len() as i64
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        for i in self.elements() {
            write!(f, "X{i}")?;
        }
        Ok(())
    }
}

/// All `k`-element subsets of `{1, ..., universe}`, lexicographically.
pub fn subsets(universe: usize, k: usize) -> Vec<Subset> {
    fn go(next: usize, universe: usize, k: usize, cur: u64, out: &mut Vec<Subset>) {
        if k == 0 {
            out.push(Subset(cur));
            return;
        }
        for i in next..=universe {
            if universe - i + 1 < k {
                break;
            }
            go(i + 1, universe, k - 1, cur | 1 << (i - 1), out);
        }
    }
    let mut out = Vec::new();
    if k <= universe {
        go(1, universe, k, 0, &mut out);
    }
    out
}

/// Elements of `Z(H^n)` before reduction: combinations of monomials.
pub type CenterElement = LinComb<Subset>;

/// Product in the square-free polynomial ring (before the symmetric
/// relations are imposed).
pub fn multiply(x: &CenterElement, y: &CenterElement) -> CenterElement {
    let mut out = CenterElement::zero();
    for (a, c) in x.iter() {
        for (b, d) in y.iter() {
            if let Some(p) = a.product(*b) {
                out.add_term(p, c * d);
            }
        }
    }
    out
}

/// The degree-`2k` piece of `Z(H^n)` as a cokernel.
#[derive(Clone, Debug)]
pub struct CenterPiece {
    pub n: usize,
    pub k: usize,
    /// Row labels: all `k`-subsets of `{1, ..., 2n}`.
    pub monomials: Vec<Subset>,
    /// Column labels: all subsets `J` with `|J| < k`.
    pub relation_labels: Vec<Subset>,
    /// Column `J` is `sum_{I > J, |I| = k} X_I`.
    pub relations: IntMatrix,
    pub group: GroupPiece,
}

/// The relation matrix of the degree-`2k` piece of `Z(H^n)`.
pub fn relation_matrix(n: usize, k: usize) -> (Vec<Subset>, Vec<Subset>, IntMatrix) {
    let monomials = subsets(2 * n, k);
    let labels: Vec<Subset> = (0..k).flat_map(|s| subsets(2 * n, s)).collect();
    let columns: Vec<Vec<(usize, BigInt)>> = labels
        .iter()
        .map(|j| {
            monomials
                .iter()
                .enumerate()
                .filter(|(_, i)| j.is_subset_of(**i))
                .map(|(r, _)| (r, BigInt::one()))
                .collect()
        })
        .collect();
    let m = IntMatrix::from_columns(monomials.len(), &columns);
    (monomials, labels, m)
}

pub fn center_presented(n: usize, k: usize) -> CenterPiece {
    let (monomials, relation_labels, relations) = relation_matrix(n, k);
    let group = GroupPiece::from(crate::intlinalg::cokernel(&relations));
    CenterPiece { n, k, monomials, relation_labels, relations, group }
}

/// All graded pieces of `Z(H^n)`, at bidegrees `(0, 2k)`.
pub fn center_graded(n: usize) -> GradedGroup {
    let mut g = GradedGroup::new();
    for k in 0..=2 * n {
        g.set(0, 2 * k as i64, center_presented(n, k).group);
    }
    g
}

/// `|I ∩ {1, ..., m}| <= m / 2` for every `m`.
pub fn is_admissible(subset: Subset) -> bool {
    let top = 64 - subset.0.leading_zeros() as usize;
    let mut count = 0;
    (1..=top).all(|m| {
        count += usize::from(subset.contains(m));
        2 * count <= m
    })
}

pub fn admissible_basis(n: usize, k: usize) -> Vec<Subset> {
    subsets(2 * n, k).into_iter().filter(|s| is_admissible(*s)).collect()
}

/// A quotient map with kernel the relation lattice, from the rows of the
/// left Smith transform beyond the rank.
fn snf_quotient(relations: &IntMatrix, n: usize, k: usize) -> Result<IntMatrix, Error> {
    let snf = smith_normal_form(relations);
    if snf.diagonal.iter().any(|d| !d.is_one()) {
        return Err(Error::InvalidParameter(format!("Z(H^{n}) has torsion in degree {}", 2 * k)));
    }
    let u = snf.u.as_ref().expect("left transform requested");
    let rows: Vec<usize> = (snf.rank()..relations.rows()).collect();
    Ok(u.select_rows(&rows))
}

/// Coordinates on the degree-`2k` piece in the admissible basis.
#[derive(Clone, Debug)]
pub struct AdmissibleCoordinates {
    pub n: usize,
    pub k: usize,
    pub monomials: Vec<Subset>,
    pub basis: Vec<Subset>,
    /// A quotient map `Z^{monomials} -> Z^{rank}` whose kernel is the
    /// relation lattice.
    pub quotient: IntMatrix,
    /// The quotient map restricted to the admissible monomials.
    pub basis_block: IntMatrix,
    /// Column `I` holds the admissible coordinates of `X_I`.
    pub transform: IntMatrix,
    index: HashMap<Subset, usize>,
}

impl AdmissibleCoordinates {
    /// Fails when the admissible monomials are not a basis of the piece.
    pub fn new(n: usize, k: usize) -> Result<Self, Error> {
        let (monomials, _, relations) = relation_matrix(n, k);
        let basis = admissible_basis(n, k);
        let index: HashMap<Subset, usize> = monomials.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        let cols: Vec<usize> = basis.iter().map(|s| index[s]).collect();
        let quotient = snf_quotient(&relations, n, k)?;
        let basis_block = quotient.select_columns(&cols);
        if basis_block.rows() != basis_block.cols() || !determinant(&basis_block).abs().is_one() {
            return Err(Error::NoIntegerSolution);
        }
        let transform = if basis_block == IntMatrix::identity(basis.len()) { quotient.clone() } else { solve(&basis_block, &quotient)? };
        Ok(AdmissibleCoordinates { n, k, monomials, basis, quotient, basis_block, transform, index })
    }

    /// Admissible coordinates of a homogeneous element of degree `2k`.
    pub fn reduce(&self, x: &CenterElement) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.basis.len()];
        for (s, c) in x.iter() {
            let col = self.index[s];
            for (r, v) in out.iter_mut().enumerate() {
                *v += self.transform.get(r, col) * c;
            }
        }
        out
    }

    /// Whether `x` vanishes in `Z(H^n)`.
    pub fn is_zero(&self, x: &CenterElement) -> bool {
        self.reduce(x).iter().all(Zero::is_zero)
    }
}

/// An integer functional on the degree-`2k` monomials of `Z^n_k`, written
/// in the dual basis `X_I^∨`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualFunctional {
    pub n: usize,
    pub k: usize,
    pub terms: LinComb<Subset>,
}

impl DualFunctional {
    pub fn new(n: usize, k: usize, terms: LinComb<Subset>) -> Self {
        debug_assert!(terms.keys().all(|s| s.len() == k && s.0 >> (2 * n) == 0));
        DualFunctional { n, k, terms }
    }

    /// `(X_∅)^∨` on `Z(H^n)_0`.
    pub fn unit(n: usize) -> Self {
        DualFunctional::new(n, 0, LinComb::single(Subset::EMPTY, 1))
    }

    pub fn evaluate(&self, monomial: Subset) -> i64 {
        self.terms.coefficient(&monomial)
    }

    /// `X_I^∨ X_J^∨ = X_{I ∪ J}^∨` for disjoint `I`, `J`, and 0 otherwise.
    pub fn multiply(&self, other: &DualFunctional) -> DualFunctional {
        let n = self.n.max(other.n);
        let mut terms = LinComb::zero();
        for (a, c) in self.terms.iter() {
            for (b, d) in other.terms.iter() {
                if let Some(p) = a.product(*b) {
                    terms.add_term(p, c * d);
                }
            }
        }
        DualFunctional::new(n, self.k + other.k, terms)
    }

    pub fn scaled(&self, s: i64) -> DualFunctional {
        DualFunctional::new(self.n, self.k, self.terms.scaled(s))
    }

    /// The functional as an integer vector over `subsets(2n, k)`.
    pub fn to_vector(&self) -> Vec<BigInt> {
        subsets(2 * self.n, self.k).iter().map(|s| BigInt::from(self.evaluate(*s))).collect()
    }
}

/// Whether `f` kills every relation `sum_{|I| = k, I > J} X_I`, `|J| < k`.
pub fn dual_membership(f: &DualFunctional) -> bool {
    (0..f.k).all(|s| {
        subsets(2 * f.n, s).into_iter().all(|j| {
            let total: i64 = f.terms.iter().filter(|(i, _)| j.is_subset_of(**i)).map(|(_, c)| c).sum();
            total == 0
        })
    })
}

/// A set of disjoint ordered pairs `(i, j)` of 1-based points.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PartialMatching {
    pairs: Vec<(usize, usize)>,
}

impl PartialMatching {
    pub fn new(pairs: Vec<(usize, usize)>) -> Result<Self, Error> {
        let mut used = 0u64;
        for &(i, j) in &pairs {
            if i == 0 || j == 0 || i == j || i > 64 || j > 64 {
                return Err(Error::InvalidParameter(format!("bad pair ({i}, {j})")));
            }
            let bits = 1u64 << (i - 1) | 1u64 << (j - 1);
            if used & bits != 0 {
                return Err(Error::InvalidParameter("pairs of a partial matching must be disjoint".into()));
            }
            used |= bits;
        }
        Ok(PartialMatching { pairs })
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Every pair joins an odd and an even point.
    pub fn is_balanced(&self) -> bool {
        self.pairs.iter().all(|&(i, j)| (i + j) % 2 == 1)
    }

    pub fn with_pair(&self, i: usize, j: usize) -> Result<Self, Error> {
        let mut pairs = self.pairs.clone();
        pairs.push((i, j));
        PartialMatching::new(pairs)
    }
}

/// `f_m = prod_{(i, j) in m} (X_i^∨ - X_j^∨)` on `Z(H^n)`.
pub fn matching_functional(n: usize, m: &PartialMatching) -> DualFunctional {
    let mut f = DualFunctional::unit(n);
    for &(i, j) in m.pairs() {
        let factor: LinComb<Subset> =
            [(Subset::from_elements(&[i]), 1), (Subset::from_elements(&[j]), -1)].into_iter().collect();
        f = f.multiply(&DualFunctional::new(n, 1, factor));
    }
    f
}

/// All balanced partial matchings of size `k` on `{1, ..., 2n}`, each pair
/// written `(odd, even)`.
pub fn balanced_matchings(n: usize, k: usize) -> Vec<PartialMatching> {
    fn go(odd: usize, n: usize, k: usize, used_even: u64, cur: &mut Vec<(usize, usize)>, out: &mut Vec<PartialMatching>) {
        if cur.len() == k {
            out.push(PartialMatching { pairs: cur.clone() });
            return;
        }
        if odd > n || n - odd + 1 < k - cur.len() {
            return;
        }
        for e in 1..=n {
            if used_even >> e & 1 == 0 {
                cur.push((2 * odd - 1, 2 * e));
                go(odd + 1, n, k, used_even | 1 << e, cur, out);
                cur.pop();
            }
        }
        go(odd + 1, n, k, used_even, cur, out);
    }
    let mut out = Vec::new();
    go(1, n, k, 0, &mut Vec::new(), &mut out);
    out
}

/// For an admissible `I`, each point of `I` paired with the nearest
/// earlier unpaired point outside `I`, as `(point, partner)`.
pub fn bracket_matching(subset: Subset) -> PartialMatching {
    let mut open = Vec::new();
    let mut pairs = Vec::new();
    let top = 64 - subset.0.leading_zeros() as usize;
    for p in 1..=top {
        if !subset.contains(p) {
            open.push(p);
        } else {
            let q = open.pop().expect("admissible subsets close every point");
            pairs.push((p, q));
        }
    }
    PartialMatching { pairs }
}

/// The dual lattice `Z(H^n)^∨_{2k}`: functionals on `Z^n_k` vanishing on the
/// relations.
#[derive(Clone, Debug)]
pub struct DualLattice {
    pub n: usize,
    pub k: usize,
    pub monomials: Vec<Subset>,
    /// Columns form a basis of the lattice, over `monomials`.
    pub basis: IntMatrix,
    bracket: Option<BracketBasis>,
}

/// The bracket basis in sparse form.
#[derive(Clone, Debug)]
struct BracketBasis {
    /// Column of each admissible subset.
    column: HashMap<Subset, usize>,
    functionals: Vec<LinComb<Subset>>,
}

impl DualLattice {
    /// The basis `f_{m(I)}` over admissible `I`, with `m(I)` the bracket
    /// matching. Evaluated on the admissible monomials it is unitriangular
    /// with respect to the sum of the points.
    pub fn new(n: usize, k: usize) -> Self {
        let monomials = subsets(2 * n, k);
        let index: HashMap<Subset, usize> = monomials.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        let admissible = admissible_basis(n, k);
        let functionals: Vec<LinComb<Subset>> =
            admissible.iter().map(|a| matching_functional(n, &bracket_matching(*a)).terms).collect();
        let columns: Vec<Vec<(usize, BigInt)>> = functionals
            .iter()
            .map(|f| f.iter().map(|(s, c)| (index[s], BigInt::from(c))).collect())
            .collect();
        let basis = IntMatrix::from_columns(monomials.len(), &columns);
        let column = admissible.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        DualLattice { n, k, monomials, basis, bracket: Some(BracketBasis { column, functionals }) }
    }

    /// A basis from the kernel of the transposed relation matrix.
    pub fn from_kernel(n: usize, k: usize) -> Self {
        let (monomials, _, relations) = relation_matrix(n, k);
        let basis = kernel_basis(&relations.transpose());
        DualLattice { n, k, monomials, basis, bracket: None }
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis_functional(&self, c: usize) -> DualFunctional {
        if let Some(b) = &self.bracket {
            return DualFunctional::new(self.n, self.k, b.functionals[c].clone());
        }
        let terms = self
            .basis
            .column(c)
            .into_iter()
            .zip(&self.monomials)
            .filter(|(v, _)| !v.is_zero())
            .map(|(v, s)| (*s, i64::try_from(v).expect("small lattice coefficient")))
            .collect();
        DualFunctional::new(self.n, self.k, terms)
    }

    /// Coordinates of `f` in the lattice basis.
    pub fn coordinates(&self, f: &DualFunctional) -> Result<Vec<BigInt>, Error> {
        self.coordinates_of_all(std::slice::from_ref(f)).map(|m| m.column(0))
    }

    /// Coordinates of several functionals, as the columns of a matrix.
    pub fn coordinates_of_all(&self, fs: &[DualFunctional]) -> Result<IntMatrix, Error> {
        let Some(bracket) = &self.bracket else {
            let cols: Vec<Vec<(usize, BigInt)>> = fs
                .iter()
                .map(|f| f.to_vector().into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect())
                .collect();
            let b = IntMatrix::from_columns(self.monomials.len(), &cols);
            return solve(&self.basis, &b).map_err(|_| Error::NotInDual);
        };
        let mut cols = Vec::with_capacity(fs.len());
        for f in fs {
            let coords = bracket.coordinates(f);
            // Accept only if the coordinates reproduce f.
            let mut rebuilt = LinComb::zero();
            for &(c, v) in &coords {
                rebuilt.add_scaled(&bracket.functionals[c], v);
            }
            if rebuilt != f.terms {
                return Err(Error::NotInDual);
            }
            cols.push(coords.into_iter().map(|(c, v)| (c, BigInt::from(v))).collect());
        }
        Ok(IntMatrix::from_columns(self.rank(), &cols))
    }
}

impl BracketBasis {
    /// Triangular solve against the values of `f` on admissible monomials,
    /// from the largest point sum down.
    fn coordinates(&self, f: &DualFunctional) -> Vec<(usize, i64)> {
        let key = |s: Subset| (s.elements().iter().sum::<usize>(), s);
        let mut pending: BTreeMap<(usize, Subset), i64> = BTreeMap::new();
        for (s, c) in f.terms.iter() {
            if self.column.contains_key(s) {
                *pending.entry(key(*s)).or_insert(0) += c;
            }
        }
        let mut out = Vec::new();
        while let Some(((_, a), value)) = pending.pop_last() {
            if value == 0 {
                continue;
            }
            let c = self.column[&a];
            out.push((c, value));
            for (s, v) in self.functionals[c].iter() {
                if *s != a && self.column.contains_key(s) {
                    *pending.entry(key(*s)).or_insert(0) -= value * v;
                }
            }
        }
        out.sort_unstable();
        out
    }
}

/// Whether the balanced matching functionals of size `k` span the whole dual
/// lattice over the integers.
pub fn balanced_span_check(n: usize, k: usize) -> Result<bool, Error> {
    let lattice = DualLattice::from_kernel(n, k);
    let fs: Vec<DualFunctional> = balanced_matchings(n, k).iter().map(|m| matching_functional(n, m)).collect();
    let coords = lattice.coordinates_of_all(&fs)?;
    let snf = smith_normal_form_with(&coords, SnfFlags::NONE);
    Ok(snf.rank() == lattice.rank() && snf.diagonal.iter().all(One::is_one))
}

/// A permutation of `{1, ..., 2n}` preserving parity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParityPermutation {
    /// `images[i - 1]` is the image of `i`.
    images: Vec<usize>,
}

impl ParityPermutation {
    pub fn identity(n: usize) -> Self {
        ParityPermutation { images: (1..=2 * n).collect() }
    }

    /// From permutations of the odd points (`odd[i]` is where the `(i+1)`-th
    /// odd point goes, 0-based among odds) and of the even points.
    pub fn from_parts(odd: &[usize], even: &[usize]) -> Result<Self, Error> {
        if odd.len() != even.len() {
            return Err(Error::InvalidParameter("odd and even parts differ in size".into()));
        }
        let n = odd.len();
        let mut images = vec![0; 2 * n];
        for i in 0..n {
            images[2 * i] = 2 * odd[i] + 1;
            images[2 * i + 1] = 2 * even[i] + 2;
        }
        Self::from_images(images)
    }

    /// From the full list of 1-based images; rejects maps that are not
    /// bijections or that send an odd point to an even one.
    pub fn from_images(images: Vec<usize>) -> Result<Self, Error> {
        let len = images.len();
        if !len.is_multiple_of(2) {
            return Err(Error::InvalidParameter("permutation of an odd number of points".into()));
        }
        let mut seen = vec![false; len];
        for (i, &t) in images.iter().enumerate() {
            if t == 0 || t > len || seen[t - 1] {
                return Err(Error::InvalidParameter("not a permutation".into()));
            }
            seen[t - 1] = true;
            if (i + 1) % 2 != t % 2 {
                return Err(Error::ParityMixing);
            }
        }
        Ok(ParityPermutation { images })
    }

    /// The transposition of two points of equal parity.
    pub fn transposition(n: usize, i: usize, j: usize) -> Result<Self, Error> {
        let mut images: Vec<usize> = (1..=2 * n).collect();
        images.swap(i - 1, j - 1);
        Self::from_images(images)
    }

    /// Adjacent transpositions of odd points and of even points, which
    /// generate the parity-preserving group.
    pub fn generators(n: usize) -> Vec<Self> {
        (1..n)
            .flat_map(|i| {
                [
                    Self::transposition(n, 2 * i - 1, 2 * i + 1).expect("odd swap"),
                    Self::transposition(n, 2 * i, 2 * i + 2).expect("even swap"),
                ]
            })
            .collect()
    }

    pub fn n(&self) -> usize {
        self.images.len() / 2
    }

    pub fn image(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    /// The same permutation on `{1, ..., 2n + 2}`, fixing the last two points.
    pub fn extended(&self) -> Self {
        let mut images = self.images.clone();
        images.push(images.len() + 1);
        images.push(images.len() + 1);
        ParityPermutation { images }
    }

    pub fn apply_subset(&self, s: Subset) -> Subset {
        Subset::from_elements(&s.elements().iter().map(|&i| self.image(i)).collect::<Vec<_>>())
    }

    /// `X_I -> X_{sigma(I)}`.
    pub fn act(&self, x: &CenterElement) -> CenterElement {
        x.iter().map(|(s, c)| (self.apply_subset(*s), c)).collect()
    }

    /// `(sigma f)(X_{sigma(I)}) = f(X_I)`, so `X_I^∨ -> X_{sigma(I)}^∨`.
    pub fn act_dual(&self, f: &DualFunctional) -> DualFunctional {
        DualFunctional::new(f.n, f.k, f.terms.iter().map(|(s, c)| (self.apply_subset(*s), c)).collect())
    }
}

/// Signs used for `psi` and `phi`. The maps are determined only up to sign;
/// the conjectured choice takes every sign positive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SignConvention {
    pub psi: i64,
    pub phi: i64,
}

impl SignConvention {
    pub const CONJECTURED: SignConvention = SignConvention { psi: 1, phi: 1 };
    pub const FLIPPED: SignConvention = SignConvention { psi: -1, phi: -1 };

    /// Every independent choice of the two signs.
    pub fn all() -> [SignConvention; 4] {
        [
            Self::CONJECTURED,
            SignConvention { psi: 1, phi: -1 },
            SignConvention { psi: -1, phi: 1 },
            Self::FLIPPED,
        ]
    }

    pub fn name(&self) -> &'static str {
        match (self.psi, self.phi) {
            (1, 1) => "conjectured",
            (-1, -1) => "flipped",
            (1, -1) => "psi+phi-",
            _ => "psi-phi+",
        }
    }
}

/// `psi(x) = x (X_{2n+2} - X_{2n+1})` and `phi(x) = -x X_{2n+1} X_{2n+2}`,
/// scaled by the configured signs, from `Z(H^n)` to `Z(H^{n+1})`.
pub fn psi_phi_positive(n: usize, x: &CenterElement, signs: SignConvention) -> (CenterElement, CenterElement) {
    let (a, b) = (2 * n + 1, 2 * n + 2);
    let psi_factor: CenterElement =
        [(Subset::from_elements(&[b]), signs.psi), (Subset::from_elements(&[a]), -signs.psi)].into_iter().collect();
    let phi_factor = CenterElement::single(Subset::from_elements(&[a, b]), -signs.phi);
    (multiply(x, &psi_factor), multiply(x, &phi_factor))
}

/// The dual maps: `psi(f) = f (X_{2n+2}^∨ - X_{2n+1}^∨)` and `phi(f)` the
/// extension of `f` by zero, scaled by the configured signs.
pub fn psi_phi_negative(f: &DualFunctional, signs: SignConvention) -> (DualFunctional, DualFunctional) {
    let n = f.n;
    let (a, b) = (2 * n + 1, 2 * n + 2);
    let factor: LinComb<Subset> =
        [(Subset::from_elements(&[b]), signs.psi), (Subset::from_elements(&[a]), -signs.psi)].into_iter().collect();
    let lifted = DualFunctional::new(n + 1, f.k, f.terms.clone());
    let psi = lifted.multiply(&DualFunctional::new(n + 1, 1, factor));
    let phi = lifted.scaled(signs.phi);
    (psi, phi)
}

/// Ranks of the degree-`2k` piece predicted by the ballot numbers
/// `C(2n, k) - C(2n, k - 1)` (zero above `k = n`).
pub fn expected_rank(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let c = |m: usize, r: usize| -> usize {
        if r > m {
            return 0;
        }
        (0..r).fold(1usize, |acc, i| acc * (m - i) / (i + 1))
    };
    c(2 * n, k) - if k == 0 { 0 } else { c(2 * n, k - 1) }
}
