//! Khovanov's arc ring `H^n` (with `N = 2`): crossingless matchings, the
//! TQFT multiplication, the `X_i` actions, and a brute-force computation of
//! the center.
//!
//! Points are numbered `1..=2n` in the public interface and `0..2n`
//! internally. Matchings are listed in lexicographic order of their partner
//! arrays.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::Error;
use crate::intlinalg::{kernel_basis, smith_normal_form_with, GradedGroup, GroupPiece, IntMatrix, Limits, SnfFlags};
use crate::lincomb::LinComb;

/// A non-crossing perfect matching of `2n` points on a line.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CrossinglessMatching {
    partner: Vec<usize>,
}

impl CrossinglessMatching {
    /// Builds a matching from 1-based arcs, checking that it is perfect and
    /// planar.
    pub fn from_arcs(n: usize, arcs: &[(usize, usize)]) -> Result<Self, Error> {
        let mut partner = vec![usize::MAX; 2 * n];
        for &(i, j) in arcs {
            if i == j || i == 0 || j == 0 || i > 2 * n || j > 2 * n {
                return Err(Error::InvalidParameter(format!("bad arc ({i}, {j})")));
            }
            for p in [i, j] {
                if partner[p - 1] != usize::MAX {
                    return Err(Error::InvalidParameter(format!("point {p} used twice")));
                }
            }
            partner[i - 1] = j - 1;
            partner[j - 1] = i - 1;
        }
        if partner.contains(&usize::MAX) {
            return Err(Error::InvalidParameter("matching is not perfect".into()));
        }
        let m = CrossinglessMatching { partner };
        if !m.is_planar() {
            return Err(Error::InvalidParameter("arcs cross".into()));
        }
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.partner.len() / 2
    }

    /// 0-based partner of a 0-based point.
    pub fn partner(&self, point: usize) -> usize {
        self.partner[point]
    }

    /// Arcs as 1-based pairs `(i, j)` with `i < j`, sorted.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        (0..self.partner.len())
            .filter(|&i| i < self.partner[i])
            .map(|i| (i + 1, self.partner[i] + 1))
            .collect()
    }

    fn is_planar(&self) -> bool {
        let arcs = self.arcs();
        arcs.iter().all(|&(i, j)| arcs.iter().all(|&(k, l)| !(i < k && k < j && j < l)))
    }
}

impl fmt::Display for CrossinglessMatching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arcs: Vec<String> = self.arcs().iter().map(|(i, j)| format!("({i},{j})")).collect();
        write!(f, "{{{}}}", arcs.join(","))
    }
}

/// All crossingless matchings of `2n` points, in lexicographic order.
pub fn enumerate_matchings(n: usize) -> Vec<CrossinglessMatching> {
    fn intervals(lo: usize, hi: usize) -> Vec<Vec<(usize, usize)>> {
        if lo >= hi {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        let mut k = lo + 1;
        while k < hi {
            for inner in intervals(lo + 1, k) {
                for outer in intervals(k + 1, hi) {
                    let mut arcs = vec![(lo, k)];
                    arcs.extend_from_slice(&inner);
                    arcs.extend_from_slice(&outer);
                    out.push(arcs);
                }
            }
            k += 2;
        }
        out
    }
    let mut out: Vec<CrossinglessMatching> = intervals(0, 2 * n)
        .into_iter()
        .map(|arcs| {
            let mut partner = vec![0; 2 * n];
            for (i, j) in arcs {
                partner[i] = j;
                partner[j] = i;
            }
            CrossinglessMatching { partner }
        })
        .collect();
    out.sort();
    out
}

/// The circles of `b-bar a`: each circle is the sorted list of its 0-based
/// points, and circles are ordered by their smallest point.
pub fn compose_circles(a: &CrossinglessMatching, b: &CrossinglessMatching) -> Vec<Vec<usize>> {
    assert_eq!(a.n(), b.n(), "matchings of different sizes");
    let size = 2 * a.n();
    let mut seen = vec![false; size];
    let mut circles = Vec::new();
    for start in 0..size {
        if seen[start] {
            continue;
        }
        let mut circle = Vec::new();
        let mut p = start;
        // Alternate a-arcs and b-arcs until the walk closes.
        loop {
            seen[p] = true;
            circle.push(p);
            let q = a.partner(p);
            seen[q] = true;
            circle.push(q);
            p = b.partner(q);
            if p == start {
                break;
            }
        }
        circle.sort_unstable();
        circles.push(circle);
    }
    circles
}

/// A basis diagram of `H^n`: matchings `a` and `b` (indices into the
/// matching list) and a label per circle of `b-bar a`; bit `k` of `labels` is
/// set when circle `k` carries `X`, clear when it carries `1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArcBasisElt {
    pub a: usize,
    pub b: usize,
    pub labels: u32,
}

pub type ArcElement = LinComb<ArcBasisElt>;

const ONE: u8 = 0;
const X: u8 = 1;

/// The ring `H^n` with its matchings and circle data precomputed.
#[derive(Clone, Debug)]
pub struct ArcRing {
    n: usize,
    matchings: Vec<CrossinglessMatching>,
    /// `circles[a][b]` are the circles of `b-bar a`.
    circles: Vec<Vec<Vec<Vec<usize>>>>,
    /// `circle_of[a][b][p]` is the circle of `b-bar a` through point `p`.
    circle_of: Vec<Vec<Vec<usize>>>,
}

impl ArcRing {
    pub fn new(n: usize) -> Self {
        let matchings = enumerate_matchings(n);
        let mut circles = Vec::new();
        let mut circle_of = Vec::new();
        for a in &matchings {
            let mut row = Vec::new();
            let mut row_of = Vec::new();
            for b in &matchings {
                let cs = compose_circles(a, b);
                let mut of = vec![0; 2 * n];
                for (k, c) in cs.iter().enumerate() {
                    for &p in c {
                        of[p] = k;
                    }
                }
                row.push(cs);
                row_of.push(of);
            }
            circles.push(row);
            circle_of.push(row_of);
        }
        ArcRing { n, matchings, circles, circle_of }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matchings(&self) -> &[CrossinglessMatching] {
        &self.matchings
    }

    pub fn circles(&self, a: usize, b: usize) -> &[Vec<usize>] {
        &self.circles[a][b]
    }

    /// All basis diagrams, ordered by `(a, b, labels)`.
    pub fn basis(&self) -> Vec<ArcBasisElt> {
        let m = self.matchings.len();
        let mut out = Vec::new();
        for a in 0..m {
            for b in 0..m {
                for labels in 0..(1u32 << self.circles[a][b].len()) {
                    out.push(ArcBasisElt { a, b, labels });
                }
            }
        }
        out
    }

    pub fn dimension(&self) -> usize {
        self.circles.iter().flatten().map(|c| 1usize << c.len()).sum()
    }

    /// Quantum degree: `-1` per circle labeled 1, `+1` per circle labeled
    /// `X`, plus `n`.
    pub fn degree(&self, x: ArcBasisElt) -> i64 {
        let circles = self.circles[x.a][x.b].len() as i64;
        let xs = x.labels.count_ones() as i64;
        self.n as i64 + 2 * xs - circles
    }

    /// The idempotent `a 1 a`.
    pub fn idempotent(&self, a: usize) -> ArcBasisElt {
        ArcBasisElt { a, b: a, labels: 0 }
    }

    /// The unit `sum_a a 1 a`.
    pub fn identity(&self) -> ArcElement {
        (0..self.matchings.len()).map(|a| (self.idempotent(a), 1)).collect()
    }

    pub fn multiply(&self, x: &ArcElement, y: &ArcElement) -> ArcElement {
        let mut out = ArcElement::zero();
        for (&bx, cx) in x.iter() {
            for (&by, cy) in y.iter() {
                out.add_scaled(&self.multiply_basis(bx, by), cx * cy);
            }
        }
        out
    }

    /// Product of two diagrams, contracting the middle arcs innermost first.
    pub fn multiply_basis(&self, x: ArcBasisElt, y: ArcBasisElt) -> ArcElement {
        if x.b != y.a {
            return ArcElement::zero();
        }
        let mut order: Vec<(usize, usize)> = self.matchings[x.b].arcs();
        order.sort_by_key(|&(i, j)| (j - i, i));
        self.multiply_basis_in_order(x, y, &order)
    }

    /// Product of two diagrams contracting the middle arcs in the given
    /// order, which must list every arc of the middle matching once (1-based
    /// pairs). The result does not depend on the order.
    pub fn multiply_basis_in_order(&self, x: ArcBasisElt, y: ArcBasisElt, order: &[(usize, usize)]) -> ArcElement {
        if x.b != y.a {
            return ArcElement::zero();
        }
        let size = 2 * self.n;
        // Nodes 0..size are the points of the first diagram, size..2*size
        // those of the second. Each node lies on exactly two edges.
        let mut edges: Vec<(usize, usize)> = Vec::with_capacity(2 * size);
        let (a, b, c) = (&self.matchings[x.a], &self.matchings[x.b], &self.matchings[y.b]);
        for i in 0..size {
            if i < a.partner(i) {
                edges.push((i, a.partner(i)));
            }
            if i < b.partner(i) {
                edges.push((i, b.partner(i)));
                edges.push((size + i, size + b.partner(i)));
            }
            if i < c.partner(i) {
                edges.push((size + i, size + c.partner(i)));
            }
        }
        let mut node_labels = vec![ONE; 2 * size];
        for (k, circle) in self.circles[x.a][x.b].iter().enumerate() {
            for &p in circle {
                node_labels[p] = ((x.labels >> k) & 1) as u8;
            }
        }
        for (k, circle) in self.circles[y.a][y.b].iter().enumerate() {
            for &p in circle {
                node_labels[size + p] = ((y.labels >> k) & 1) as u8;
            }
        }
        let mut states: BTreeMap<Vec<u8>, i64> = BTreeMap::new();
        states.insert(node_labels, 1);

        for &(i1, j1) in order {
            let (i, j) = (i1 - 1, j1 - 1);
            let before = components(2 * size, &edges);
            let merge = before[i] != before[size + i];
            remove_edge(&mut edges, i, j);
            remove_edge(&mut edges, size + i, size + j);
            edges.push((i, size + i));
            edges.push((j, size + j));
            let after = components(2 * size, &edges);
            let mut next: BTreeMap<Vec<u8>, i64> = BTreeMap::new();
            for (labels, coeff) in states {
                if merge {
                    let l = labels[i] + labels[size + i];
                    if l > X {
                        continue;
                    }
                    let mut new = labels;
                    set_component(&mut new, &after, after[i], l);
                    add_state(&mut next, new, coeff);
                } else {
                    let (ci, cj) = (after[i], after[j]);
                    let splits: &[(u8, u8)] = if labels[i] == ONE { &[(ONE, X), (X, ONE)] } else { &[(X, X)] };
                    for &(li, lj) in splits {
                        let mut new = labels.clone();
                        set_component(&mut new, &after, ci, li);
                        set_component(&mut new, &after, cj, lj);
                        add_state(&mut next, new, coeff);
                    }
                }
            }
            states = next;
        }

        let mut out = ArcElement::zero();
        for (labels, coeff) in states {
            let mut mask = 0u32;
            for (k, circle) in self.circles[x.a][y.b].iter().enumerate() {
                if labels[circle[0]] == X {
                    mask |= 1 << k;
                }
            }
            out.add_term(ArcBasisElt { a: x.a, b: y.b, labels: mask }, coeff);
        }
        out
    }

    /// `X_i` acting on a diagram: `(-1)^i` times `X` on the circle through
    /// point `i` (1-based).
    pub fn xi_action_basis(&self, i: usize, x: ArcBasisElt) -> Result<ArcElement, Error> {
        if i == 0 || i > 2 * self.n {
            return Err(Error::InvalidParameter(format!("point index {i} outside 1..={}", 2 * self.n)));
        }
        let k = self.circle_of[x.a][x.b][i - 1];
        if (x.labels >> k) & 1 == 1 {
            return Ok(ArcElement::zero());
        }
        let sign = if i.is_multiple_of(2) { 1 } else { -1 };
        Ok(ArcElement::single(ArcBasisElt { labels: x.labels | (1 << k), ..x }, sign))
    }

    pub fn xi_action(&self, i: usize, x: &ArcElement) -> Result<ArcElement, Error> {
        let mut out = ArcElement::zero();
        for (&b, c) in x.iter() {
            out.add_scaled(&self.xi_action_basis(i, b)?, c);
        }
        Ok(out)
    }

    /// `X_I = X_{i_1} ... X_{i_k}` applied to the identity, for 1-based `I`.
    pub fn monomial(&self, subset: &[usize]) -> Result<ArcElement, Error> {
        let mut x = self.identity();
        for &i in subset {
            x = self.xi_action(i, &x)?;
        }
        Ok(x)
    }
}

fn remove_edge(edges: &mut Vec<(usize, usize)>, u: usize, v: usize) {
    let pos = edges
        .iter()
        .position(|&(p, q)| (p, q) == (u, v) || (p, q) == (v, u))
        .expect("edge present");
    edges.swap_remove(pos);
}

fn components(nodes: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..nodes).collect();
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
    for &(u, v) in edges {
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        if ru != rv {
            parent[ru] = rv;
        }
    }
    (0..nodes).map(|x| find(&mut parent, x)).collect()
}

fn set_component(labels: &mut [u8], comp: &[usize], which: usize, value: u8) {
    for (node, &c) in comp.iter().enumerate() {
        if c == which {
            labels[node] = value;
        }
    }
}

fn add_state(states: &mut BTreeMap<Vec<u8>, i64>, labels: Vec<u8>, coeff: i64) {
    let e = states.entry(labels).or_insert(0);
    *e += coeff;
}

/// The brute-force center of `H^n`: graded ranks and a lattice basis of each
/// nonzero graded piece.
#[derive(Clone, Debug)]
pub struct BruteCenter {
    pub n: usize,
    /// Pieces at `(0, degree)`.
    pub ranks: GradedGroup,
    pub basis: BTreeMap<i64, Vec<ArcElement>>,
}

/// Default largest `n` accepted by [`center_bruteforce`].
pub const DEFAULT_MAX_CENTER_N: usize = 3;

/// Computes `{ x : x h = h x for every basis diagram h }` degree by degree,
/// as the integer kernel of the commutator map.
pub fn center_bruteforce(n: usize, max_n: usize, limits: &Limits) -> Result<BruteCenter, Error> {
    if n > max_n {
        return Err(Error::DimensionCap { n, max: max_n });
    }
    let ring = ArcRing::new(n);
    let basis = ring.basis();
    let mut by_degree: BTreeMap<i64, Vec<ArcBasisElt>> = BTreeMap::new();
    for &b in &basis {
        by_degree.entry(ring.degree(b)).or_default().push(b);
    }
    let mut ranks = GradedGroup::new();
    let mut central = BTreeMap::new();
    for (&deg, elts) in &by_degree {
        // Row = (generator h, output diagram).
        let mut rows: HashMap<(usize, ArcBasisElt), usize> = HashMap::new();
        let mut columns: Vec<Vec<(usize, BigInt)>> = Vec::with_capacity(elts.len());
        for &x in elts {
            let xe = ArcElement::single(x, 1);
            let mut col = Vec::new();
            for (hi, &h) in basis.iter().enumerate() {
                let he = ArcElement::single(h, 1);
                let mut comm = ring.multiply(&xe, &he);
                comm.add_scaled(&ring.multiply(&he, &xe), -1);
                for (&t, c) in comm.iter() {
                    let next = rows.len();
                    let r = *rows.entry((hi, t)).or_insert(next);
                    col.push((r, BigInt::from(c)));
                }
            }
            columns.push(col);
        }
        let m = IntMatrix::from_columns(rows.len(), &columns);
        limits.check(&m)?;
        let k = kernel_basis(&m);
        if k.cols() == 0 {
            continue;
        }
        ranks.set(0, deg, GroupPiece::free(k.cols()));
        let elements = (0..k.cols())
            .map(|c| {
                k.column(c)
                    .into_iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(r, v)| (elts[r], i64::try_from(v).expect("small kernel coefficient")))
                    .collect()
            })
            .collect();
        central.insert(deg, elements);
    }
    Ok(BruteCenter { n, ranks, basis: central })
}

impl BruteCenter {
    /// Whether the given elements of degree `deg` span the same lattice as
    /// the computed central basis in that degree.
    pub fn spans_degree(&self, deg: i64, elements: &[ArcElement]) -> bool {
        let empty = Vec::new();
        let central = self.basis.get(&deg).unwrap_or(&empty);
        let mut index: HashMap<ArcBasisElt, usize> = HashMap::new();
        for x in central.iter().chain(elements) {
            for (&b, _) in x.iter() {
                let next = index.len();
                index.entry(b).or_insert(next);
            }
        }
        let to_cols = |xs: &[ArcElement]| -> IntMatrix {
            let cols: Vec<Vec<(usize, BigInt)>> =
                xs.iter().map(|x| x.iter().map(|(b, c)| (index[b], BigInt::from(c))).collect()).collect();
            IntMatrix::from_columns(index.len(), &cols)
        };
        let k = to_cols(central);
        let g = to_cols(elements);
        let coords = match crate::intlinalg::solve(&k, &g) {
            Ok(c) => c,
            Err(_) => return false,
        };
        let snf = smith_normal_form_with(&coords, SnfFlags::NONE);
        snf.rank() == central.len() && snf.diagonal.iter().all(|d| *d == BigInt::from(1))
    }
}
