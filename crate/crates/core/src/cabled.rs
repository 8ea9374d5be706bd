//! Cabled Khovanov-Rozansky homology of 0-framed unknots and unlinks.
//!
//! Two independent routes are provided. The direct route works with
//! partition labels in the `V^a = X^{N-1-a}` basis and reduces every class to
//! a normal form with no positive-strand parts. The brute-force route builds
//! the truncated quotient of the cable system over the standard monomial
//! basis, with the comultiplication taken from [`crate::frobenius`], and
//! computes its cokernel over the integers.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::error::Error;
use crate::frobenius::{FrobBasisElt, Frobenius};
use crate::intlinalg::{cokernel, GradedGroup, GroupPiece, IntMatrix, Limits};
use crate::lincomb::LinComb;
use crate::partitions::{self, BoundedPartition};

/// A cable level of a 0-framed unlink: component `i` is replaced by
/// `r_i - min(alpha_i, 0)` negatively and `r_i + max(alpha_i, 0)` positively
/// oriented parallel strands.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CableLevel {
    rank: usize,
    alpha: Vec<i64>,
    r: Vec<usize>,
}

impl CableLevel {
    pub fn new(rank: usize, alpha: Vec<i64>, r: Vec<usize>) -> Result<Self, Error> {
        if rank == 0 {
            return Err(Error::InvalidParameter("rank N must be at least 1".into()));
        }
        if alpha.len() != r.len() {
            return Err(Error::InvalidParameter(format!(
                "{} levels alpha given for {} components",
                alpha.len(),
                r.len()
            )));
        }
        Ok(CableLevel { rank, alpha, r })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn alpha(&self) -> &[i64] {
        &self.alpha
    }

    pub fn r(&self) -> &[usize] {
        &self.r
    }

    pub fn components(&self) -> usize {
        self.r.len()
    }

    pub fn negative_strands(&self, component: usize) -> usize {
        self.r[component] + self.alpha[component].min(0).unsigned_abs() as usize
    }

    pub fn positive_strands(&self, component: usize) -> usize {
        self.r[component] + self.alpha[component].max(0) as usize
    }

    /// The quantum shift `(1 - N) * sum_i (2 r_i + |alpha_i|)`.
    pub fn shift(&self) -> i64 {
        let strands: usize = (0..self.components())
            .map(|c| self.negative_strands(c) + self.positive_strands(c))
            .sum();
        (1 - self.rank as i64) * strands as i64
    }

    /// The level with `r_component` increased by one.
    pub fn raised(&self, component: usize) -> CableLevel {
        let mut next = self.clone();
        next.r[component] += 1;
        next
    }
}

/// Partition labels `(d, e)` of a symmetrized monomial on one component:
/// `d` lists the nonzero `V` labels of the negative strands, `e` the nonzero
/// `W` labels of the positive strands.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PartitionPair {
    pub d: BoundedPartition,
    pub e: BoundedPartition,
}

impl PartitionPair {
    pub fn new(d: BoundedPartition, e: BoundedPartition) -> Self {
        PartitionPair { d, e }
    }

    pub fn weight(&self) -> usize {
        self.d.weight() + self.e.weight()
    }

    /// Shifted quantum degree `-2 (|d| + |e|)`.
    pub fn degree(&self) -> i64 {
        -2 * self.weight() as i64
    }
}

impl fmt::Display for PartitionPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.d, self.e)
    }
}

/// A basis element of the symmetric-group coinvariants of a cable level:
/// one partition pair per component.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymmetrizedBasisElt {
    pub components: Vec<PartitionPair>,
}

impl SymmetrizedBasisElt {
    pub fn degree(&self) -> i64 {
        self.components.iter().map(PartitionPair::degree).sum()
    }
}

/// Graded ranks of `A^{(x) r_minus} (x) B^{(x) r_plus}`, unshifted, in
/// homological degree 0.
pub fn unlink_homology(r_minus: usize, r_plus: usize, rank: usize) -> Result<GradedGroup, Error> {
    let alg = Frobenius::new(rank)?;
    // Polynomial in the quantum degree, stored with an offset.
    let factors = r_minus + r_plus;
    let offset = factors * (rank - 1);
    let mut poly = vec![0usize; 2 * offset + 1];
    poly[offset] = 1;
    for _ in 0..factors {
        let mut next = vec![0usize; poly.len()];
        for (idx, &c) in poly.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for b in alg.basis() {
                let t = idx as i64 + alg.degree(b);
                if (0..next.len() as i64).contains(&t) {
                    next[t as usize] += c;
                }
            }
        }
        poly = next;
    }
    let mut g = GradedGroup::new();
    for (idx, &c) in poly.iter().enumerate() {
        g.set(0, idx as i64 - offset as i64, GroupPiece::free(c));
    }
    Ok(g)
}

/// All symmetrized basis elements of a level, sorted.
pub fn symmetrized_basis(level: &CableLevel) -> Vec<SymmetrizedBasisElt> {
    let top = level.rank() - 1;
    let mut out = vec![SymmetrizedBasisElt::default()];
    for c in 0..level.components() {
        let ds = partitions::enumerate_all(top, level.negative_strands(c));
        let es = partitions::enumerate_all(top, level.positive_strands(c));
        let mut next = Vec::with_capacity(out.len() * ds.len() * es.len());
        for prefix in &out {
            for d in &ds {
                for e in &es {
                    let mut elt = prefix.clone();
                    elt.components.push(PartitionPair::new(d.clone(), e.clone()));
                    next.push(elt);
                }
            }
        }
        out = next;
    }
    out.sort();
    out
}

/// `psi^[m]` on partition labels: the new negative strand receives `V^a` and
/// the new positive strand `W^b`, summed over `a + b = N - 1 - m`.
pub fn psi_m_pair(rank: usize, m: usize, pair: &PartitionPair) -> Result<LinComb<PartitionPair>, Error> {
    if m >= rank {
        return Err(Error::ExponentOutOfRange { exponent: m, max: rank - 1 });
    }
    let total = rank - 1 - m;
    Ok((0..=total)
        .map(|a| (PartitionPair::new(pair.d.with_part(a), pair.e.with_part(total - a)), 1))
        .collect())
}

/// The matrix of `psi^[m]` on one component, between the full symmetrized
/// bases of a level and the level raised on that component.
#[derive(Clone, Debug)]
pub struct LevelMap {
    pub source: Vec<SymmetrizedBasisElt>,
    pub target: Vec<SymmetrizedBasisElt>,
    /// Rows index `target`, columns index `source`.
    pub matrix: IntMatrix,
}

pub fn psi_m_map(m: usize, source: &CableLevel, component: usize) -> Result<LevelMap, Error> {
    if component >= source.components() {
        return Err(Error::InvalidParameter(format!("component {component} out of range")));
    }
    if m >= source.rank() {
        return Err(Error::ExponentOutOfRange { exponent: m, max: source.rank() - 1 });
    }
    let target_level = source.raised(component);
    let src = symmetrized_basis(source);
    let tgt = symmetrized_basis(&target_level);
    let index: HashMap<&SymmetrizedBasisElt, usize> = tgt.iter().enumerate().map(|(i, b)| (b, i)).collect();
    let mut matrix = IntMatrix::zeros(tgt.len(), src.len());
    for (col, v) in src.iter().enumerate() {
        for (pair, c) in psi_m_pair(source.rank(), m, &v.components[component])? {
            let mut image = v.clone();
            image.components[component] = pair;
            let row = index[&image];
            matrix.add_to(row, col, &BigInt::from(c));
        }
    }
    Ok(LevelMap { source: src, target: tgt, matrix })
}

/// Reduces a class to its normal form in the colimit: a combination of
/// classes `(d, empty)`, returned as a combination of the `d` partitions.
///
/// A part `p` of `e` is traded for parts of `d` using the relation
/// `psi^[N-1-p](d, e - p) ~ 0`:
/// `(d, e' + p) = -sum_{k=0}^{p-1} (d + (p - k), e' + k)`.
pub fn reduce_pair(pair: &PartitionPair) -> LinComb<BoundedPartition> {
    let mut out = LinComb::zero();
    let mut pending: LinComb<PartitionPair> = LinComb::single(pair.clone(), 1);
    // Each step lowers |e| or the number of parts of e, so this terminates.
    loop {
        let Some((current, coeff)) = pending.iter().next().map(|(k, c)| (k.clone(), c)) else { break };
        pending.add_term(current.clone(), -coeff);
        let Some(p) = current.e.largest_part() else {
            out.add_term(current.d, coeff);
            continue;
        };
        let rest = current.e.without_part(p).expect("largest part is present");
        for k in 0..p {
            let next = PartitionPair::new(current.d.with_part(p - k), rest.with_part(k));
            pending.add_term(next, -coeff);
        }
    }
    out
}

/// Closed-form cabled homology of the 0-framed unknot: the quotient is free
/// with basis the normal forms `(d, empty)`, so the rank at `(0, -2q)` is the
/// number of partitions of `q` into parts at most `N - 1`. The level `alpha`
/// does not enter.
pub fn cabled_direct(rank: usize, alpha: i64, q_max: usize) -> Result<GradedGroup, Error> {
    Frobenius::new(rank)?;
    let _ = alpha;
    let mut g = GradedGroup::new();
    for q in 0..=q_max {
        let normal_forms = partitions::enumerate(q, rank - 1, None);
        g.set(0, -2 * q as i64, GroupPiece::free(normal_forms.len()));
    }
    Ok(g)
}

/// Parameters of the brute-force truncated quotient.
#[derive(Clone, Debug)]
pub struct CabledParams {
    pub rank: usize,
    pub alpha: Vec<i64>,
    /// Framing of each component; only 0 is supported here.
    pub framing: Vec<i64>,
    pub r_max: usize,
    /// Lower end of the quantum window; the upper end is 0.
    pub q_min: i64,
    pub allow_unstable: bool,
    pub limits: Limits,
}

impl CabledParams {
    pub fn unknot(rank: usize, alpha: i64, r_max: usize, q_min: i64) -> Self {
        Self::unlink(rank, vec![alpha], r_max, q_min)
    }

    pub fn unlink(rank: usize, alpha: Vec<i64>, r_max: usize, q_min: i64) -> Self {
        let framing = vec![0; alpha.len()];
        CabledParams { rank, alpha, framing, r_max, q_min, allow_unstable: false, limits: Limits::default() }
    }

    /// Smallest truncation accepted for the window: every class of degree
    /// `j >= q_min` has at most `ceil(|q_min| / 2)` nontrivial labels per
    /// side, and `|alpha|` extra strands sit on one side.
    pub fn required_r_max(&self) -> usize {
        let half = self.q_min.unsigned_abs().div_ceil(2) as usize;
        let alpha = self.alpha.iter().map(|a| a.unsigned_abs() as usize).max().unwrap_or(0);
        half + alpha + 1
    }

    fn validate(&self) -> Result<(), Error> {
        Frobenius::new(self.rank)?;
        if self.alpha.is_empty() {
            return Err(Error::InvalidParameter("at least one component is required".into()));
        }
        if self.framing.len() != self.alpha.len() {
            return Err(Error::InvalidParameter("framing and alpha lengths differ".into()));
        }
        if let Some(&f) = self.framing.iter().find(|&&f| f != 0) {
            return Err(Error::NonzeroFraming(f));
        }
        if self.q_min > 0 {
            return Err(Error::InvalidParameter("q_min must be nonpositive".into()));
        }
        let required = self.required_r_max();
        if !self.allow_unstable && self.r_max < required {
            return Err(Error::UnstableWindow { r_max: self.r_max, q_min: self.q_min, required });
        }
        Ok(())
    }
}

/// A symmetric-group orbit of standard monomials on one component: the
/// exponents on the negative and on the positive strands, each sorted in
/// decreasing order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrbitMonomial {
    pub negative: Vec<usize>,
    pub positive: Vec<usize>,
}

impl OrbitMonomial {
    /// Shifted quantum degree, from the grading of the algebra.
    pub fn degree(&self, alg: &Frobenius) -> i64 {
        let strands = (self.negative.len() + self.positive.len()) as i64;
        let unshifted: i64 = self
            .negative
            .iter()
            .chain(&self.positive)
            .map(|&m| alg.degree(FrobBasisElt::new(m)))
            .sum();
        unshifted + (1 - alg.rank() as i64) * strands
    }

    /// Change of basis to partition labels, `X^m = V^{N-1-m}`.
    pub fn to_labels(&self, alg: &Frobenius) -> PartitionPair {
        let flip = |side: &[usize]| BoundedPartition::new(side.iter().map(|&m| alg.flip_index(m)).collect());
        PartitionPair::new(flip(&self.negative), flip(&self.positive))
    }

    /// Inverse change of basis on a level with the given strand counts.
    pub fn from_labels(alg: &Frobenius, pair: &PartitionPair, negative: usize, positive: usize) -> Option<Self> {
        let side = |p: &BoundedPartition, len: usize| -> Option<Vec<usize>> {
            if p.num_parts() > len {
                return None;
            }
            let mut labels = p.parts().to_vec();
            labels.resize(len, 0);
            let mut exps: Vec<usize> = labels.iter().map(|&a| alg.flip_index(a)).collect();
            exps.sort_unstable_by(|a, b| b.cmp(a));
            Some(exps)
        };
        Some(OrbitMonomial { negative: side(&pair.d, negative)?, positive: side(&pair.e, positive)? })
    }
}

/// Sorted exponent multisets of the given length whose total deficiency
/// `sum (N - 1 - m)` is at most `budget`.
fn exponent_multisets(alg: &Frobenius, len: usize, budget: usize) -> Vec<(Vec<usize>, usize)> {
    fn go(
        top: usize,
        len: usize,
        max_exp: usize,
        budget: usize,
        used: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<(Vec<usize>, usize)>,
    ) {
        if cur.len() == len {
            out.push((cur.clone(), used));
            return;
        }
        for m in (0..=max_exp).rev() {
            let cost = top - m;
            if used + cost > budget {
                break;
            }
            cur.push(m);
            go(top, len, m, budget, used + cost, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(alg.top(), len, alg.top(), budget, 0, &mut Vec::new(), &mut out);
    out
}

type Generator = (Vec<usize>, Vec<OrbitMonomial>);

/// The truncated presentation: for each even quantum degree in the window,
/// the generators (level, orbit tuple) and the relation matrix whose
/// cokernel is the degree-`j` piece.
#[derive(Clone, Debug)]
pub struct CabledSystem {
    pub degrees: BTreeMap<i64, (Vec<Generator>, IntMatrix)>,
}

pub fn cabled_system(params: &CabledParams) -> Result<CabledSystem, Error> {
    params.validate()?;
    let alg = Frobenius::new(params.rank)?;
    let budget = (params.q_min.unsigned_abs() / 2) as usize;
    let comps = params.alpha.len();
    let levels = all_levels(comps, params.r_max);

    // Generators bucketed by degree.
    let mut by_degree: BTreeMap<i64, Vec<Generator>> = BTreeMap::new();
    for r in &levels {
        let level = CableLevel::new(params.rank, params.alpha.clone(), r.clone())?;
        for tuple in orbit_tuples(&alg, &level, budget) {
            let deg: i64 = tuple.iter().map(|o| o.degree(&alg)).sum();
            if deg >= params.q_min {
                by_degree.entry(deg).or_default().push((r.clone(), tuple));
            }
        }
    }
    let index: HashMap<i64, HashMap<Generator, usize>> = by_degree
        .iter()
        .map(|(&d, gens)| (d, gens.iter().cloned().enumerate().map(|(i, g)| (g, i)).collect()))
        .collect();

    let mut degrees = BTreeMap::new();
    let mut j = 0;
    while j >= params.q_min {
        let gens = by_degree.get(&j).cloned().unwrap_or_default();
        let empty = HashMap::new();
        let idx = index.get(&j).unwrap_or(&empty);
        let mut columns: Vec<Vec<(usize, BigInt)>> = Vec::new();
        for m in 0..params.rank {
            // Sources of psi^[m] landing in degree j.
            let src_deg = j + 2 * (alg.top() - m) as i64;
            let Some(sources) = by_degree.get(&src_deg) else { continue };
            for (r, tuple) in sources {
                for c in 0..comps {
                    if r[c] + 1 > params.r_max {
                        continue;
                    }
                    let mut col: LinComb<usize> = LinComb::zero();
                    let mut r_next = r.clone();
                    r_next[c] += 1;
                    for (orbit, coeff) in psi_m_orbit(&alg, m, &tuple[c])? {
                        let mut image = tuple.clone();
                        image[c] = orbit;
                        let row = idx[&(r_next.clone(), image)];
                        col.add_term(row, coeff);
                    }
                    if m == alg.top() {
                        col.add_term(idx[&(r.clone(), tuple.clone())], -1);
                    }
                    if !col.is_zero() {
                        columns.push(col.into_iter().map(|(i, v)| (i, BigInt::from(v))).collect());
                    }
                }
            }
        }
        let matrix = IntMatrix::from_columns(gens.len(), &columns);
        params.limits.check(&matrix)?;
        degrees.insert(j, (gens, matrix));
        j -= 2;
    }
    Ok(CabledSystem { degrees })
}

/// Brute-force cabled homology of a 0-framed unlink over the window
/// `q_min <= j <= 0`, from the truncation `r <= r_max` on every component.
pub fn cabled_bruteforce(params: &CabledParams) -> Result<GradedGroup, Error> {
    let system = cabled_system(params)?;
    let pieces: Vec<(i64, GroupPiece)> = system
        .degrees
        .par_iter()
        .map(|(&j, (_, m))| (j, GroupPiece::from(cokernel(m))))
        .collect();
    let mut g = GradedGroup::new();
    for (j, piece) in pieces {
        g.set(0, j, piece);
    }
    Ok(g)
}

/// `psi^[m]` on a standard orbit: append `Delta(X^m)`, first factor to a new
/// negative strand, second to a new positive strand.
pub fn psi_m_orbit(alg: &Frobenius, m: usize, orbit: &OrbitMonomial) -> Result<LinComb<OrbitMonomial>, Error> {
    let delta = alg.comultiply(FrobBasisElt::new(m))?;
    let mut out = LinComb::zero();
    for (pair, c) in delta.terms() {
        let mut negative = orbit.negative.clone();
        negative.push(pair[0]);
        negative.sort_unstable_by(|a, b| b.cmp(a));
        let mut positive = orbit.positive.clone();
        positive.push(pair[1]);
        positive.sort_unstable_by(|a, b| b.cmp(a));
        out.add_term(OrbitMonomial { negative, positive }, c);
    }
    Ok(out)
}

fn all_levels(components: usize, r_max: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..components {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<usize>| {
                (0..=r_max).map(move |r| {
                    let mut v = prefix.clone();
                    v.push(r);
                    v
                })
            })
            .collect();
    }
    out
}

fn orbit_tuples(alg: &Frobenius, level: &CableLevel, budget: usize) -> Vec<Vec<OrbitMonomial>> {
    // (tuple, deficiency used so far)
    let mut out: Vec<(Vec<OrbitMonomial>, usize)> = vec![(Vec::new(), 0)];
    for c in 0..level.components() {
        let mut next = Vec::new();
        for (prefix, used) in &out {
            let left = budget - used;
            for (neg, a) in exponent_multisets(alg, level.negative_strands(c), left) {
                for (pos, b) in exponent_multisets(alg, level.positive_strands(c), left - a) {
                    let mut t = prefix.clone();
                    t.push(OrbitMonomial { negative: neg.clone(), positive: pos });
                    next.push((t, used + a + b));
                }
            }
        }
        out = next;
    }
    out.into_iter().map(|(t, _)| t).collect()
}
