//! The rank-`N` Frobenius algebra `Z[X]/(X^N)` with unit in quantum degree
//! `1 - N`, and integer combinations of pure tensors over it.

use std::collections::BTreeMap;

use crate::error::Error;

/// Orientation of the cable strand a tensor factor belongs to. Negatively
/// oriented strands carry `X` variables, positively oriented ones `Y`
/// variables; the algebra structure is the same.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Strand {
    Negative,
    Positive,
}

/// The monomial `X^exponent`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FrobBasisElt {
    pub exponent: usize,
}

impl FrobBasisElt {
    pub fn new(exponent: usize) -> Self {
        FrobBasisElt { exponent }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Frobenius {
    rank: usize,
}

impl Frobenius {
    pub fn new(rank: usize) -> Result<Self, Error> {
        if rank == 0 {
            return Err(Error::InvalidParameter("Frobenius algebra rank must be at least 1".into()));
        }
        Ok(Frobenius { rank })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn top(&self) -> usize {
        self.rank - 1
    }

    pub fn basis(&self) -> impl Iterator<Item = FrobBasisElt> {
        (0..self.rank).map(FrobBasisElt::new)
    }

    fn check(&self, x: FrobBasisElt) -> Result<(), Error> {
        if x.exponent >= self.rank {
            return Err(Error::ExponentOutOfRange { exponent: x.exponent, max: self.top() });
        }
        Ok(())
    }

    pub fn degree(&self, x: FrobBasisElt) -> i64 {
        1 - self.rank as i64 + 2 * x.exponent as i64
    }

    pub fn multiply(&self, a: FrobBasisElt, b: FrobBasisElt) -> Option<FrobBasisElt> {
        let e = a.exponent + b.exponent;
        (e < self.rank).then_some(FrobBasisElt::new(e))
    }

    /// `X^m -> sum_{k=0}^{N-m-1} X^{k+m} (x) X^{N-1-k}`.
    pub fn comultiply(&self, x: FrobBasisElt) -> Result<TensorElt, Error> {
        self.check(x)?;
        let n = self.rank;
        let m = x.exponent;
        let mut t = TensorElt::zero(vec![Strand::Negative, Strand::Negative]);
        for k in 0..n - m {
            t.add_term(vec![k + m, n - 1 - k], 1);
        }
        Ok(t)
    }

    pub fn counit(&self, x: FrobBasisElt) -> Result<i64, Error> {
        self.check(x)?;
        Ok(i64::from(x.exponent == self.top()))
    }

    /// The re-indexing `V^a = X^{N-1-a}`; it is its own inverse.
    pub fn flip_index(&self, exponent: usize) -> usize {
        debug_assert!(exponent < self.rank);
        self.top() - exponent
    }
}

/// An integer combination of pure tensors `X^{m_1} (x) ... (x) X^{m_t}`;
/// every factor carries the orientation tag of its strand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElt {
    tags: Vec<Strand>,
    terms: BTreeMap<Vec<usize>, i64>,
}

impl TensorElt {
    pub fn zero(tags: Vec<Strand>) -> Self {
        TensorElt { tags, terms: BTreeMap::new() }
    }

    pub fn pure(tags: Vec<Strand>, exponents: Vec<usize>) -> Self {
        assert_eq!(tags.len(), exponents.len());
        let mut t = Self::zero(tags);
        t.add_term(exponents, 1);
        t
    }

    pub fn tags(&self) -> &[Strand] {
        &self.tags
    }

    pub fn arity(&self) -> usize {
        self.tags.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[usize], i64)> {
        self.terms.iter().map(|(k, &v)| (k.as_slice(), v))
    }

    pub fn coefficient(&self, exponents: &[usize]) -> i64 {
        self.terms.get(exponents).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exponents: Vec<usize>, coeff: i64) {
        assert_eq!(exponents.len(), self.tags.len(), "arity mismatch");
        use std::collections::btree_map::Entry;
        match self.terms.entry(exponents) {
            Entry::Vacant(v) => {
                if coeff != 0 {
                    v.insert(coeff);
                }
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&mut self, other: &TensorElt) {
        for (k, &v) in &other.terms {
            self.add_term(k.clone(), v);
        }
    }

    pub fn with_tags(mut self, tags: Vec<Strand>) -> Self {
        assert_eq!(tags.len(), self.tags.len());
        self.tags = tags;
        self
    }

    pub fn tensor(&self, other: &TensorElt) -> TensorElt {
        let mut tags = self.tags.clone();
        tags.extend_from_slice(&other.tags);
        let mut t = TensorElt::zero(tags);
        for (a, &x) in &self.terms {
            for (b, &y) in &other.terms {
                let mut k = a.clone();
                k.extend_from_slice(b);
                t.add_term(k, x * y);
            }
        }
        t
    }

    /// The common quantum degree of all terms, or `None` when the element is
    /// zero or inhomogeneous.
    pub fn degree(&self, alg: &Frobenius) -> Option<i64> {
        let mut degrees = self
            .terms
            .keys()
            .map(|k| k.iter().map(|&m| alg.degree(FrobBasisElt::new(m))).sum::<i64>());
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    /// Applies the comultiplication to factor `pos`, which becomes two
    /// factors with the same tag.
    pub fn comultiply_at(&self, alg: &Frobenius, pos: usize) -> Result<TensorElt, Error> {
        let mut tags = self.tags.clone();
        tags.insert(pos, self.tags[pos]);
        let mut out = TensorElt::zero(tags);
        for (k, &c) in &self.terms {
            let delta = alg.comultiply(FrobBasisElt::new(k[pos]))?;
            for (pair, d) in delta.terms() {
                let mut key = k[..pos].to_vec();
                key.extend_from_slice(pair);
                key.extend_from_slice(&k[pos + 1..]);
                out.add_term(key, c * d);
            }
        }
        Ok(out)
    }

    /// Multiplies factors `pos` and `pos + 1` together.
    pub fn multiply_at(&self, alg: &Frobenius, pos: usize) -> TensorElt {
        let mut tags = self.tags.clone();
        tags.remove(pos + 1);
        let mut out = TensorElt::zero(tags);
        for (k, &c) in &self.terms {
            if let Some(p) = alg.multiply(FrobBasisElt::new(k[pos]), FrobBasisElt::new(k[pos + 1])) {
                let mut key = k.clone();
                key.remove(pos + 1);
                key[pos] = p.exponent;
                out.add_term(key, c);
            }
        }
        out
    }

    /// Applies the counit to factor `pos`, removing it.
    pub fn counit_at(&self, alg: &Frobenius, pos: usize) -> Result<TensorElt, Error> {
        let mut tags = self.tags.clone();
        tags.remove(pos);
        let mut out = TensorElt::zero(tags);
        for (k, &c) in &self.terms {
            let e = alg.counit(FrobBasisElt::new(k[pos]))?;
            if e != 0 {
                let mut key = k.clone();
                key.remove(pos);
                out.add_term(key, c * e);
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(m: usize) -> FrobBasisElt {
        FrobBasisElt::new(m)
    }

    fn neg(n: usize) -> Vec<Strand> {
        vec![Strand::Negative; n]
    }

    #[test]
    fn multiplication_examples() {
        let a2 = Frobenius::new(2).unwrap();
        assert_eq!(a2.multiply(x(1), x(1)), None);
        assert_eq!(a2.multiply(x(0), x(1)), Some(x(1)));
        let a3 = Frobenius::new(3).unwrap();
        assert_eq!(a3.multiply(x(1), x(1)), Some(x(2)));
    }

    #[test]
    fn comultiplication_examples() {
        let a2 = Frobenius::new(2).unwrap();
        let mut expect = TensorElt::zero(neg(2));
        expect.add_term(vec![0, 1], 1);
        expect.add_term(vec![1, 0], 1);
        assert_eq!(a2.comultiply(x(0)).unwrap(), expect);
        assert_eq!(a2.comultiply(x(1)).unwrap(), TensorElt::pure(neg(2), vec![1, 1]));

        let a3 = Frobenius::new(3).unwrap();
        let mut expect = TensorElt::zero(neg(2));
        expect.add_term(vec![1, 2], 1);
        expect.add_term(vec![2, 1], 1);
        assert_eq!(a3.comultiply(x(1)).unwrap(), expect);
    }

    #[test]
    fn counit_examples() {
        let a2 = Frobenius::new(2).unwrap();
        assert_eq!(a2.counit(x(1)).unwrap(), 1);
        assert_eq!(a2.counit(x(0)).unwrap(), 0);
        assert_eq!(Frobenius::new(5).unwrap().counit(x(3)).unwrap(), 0);
    }

    #[test]
    fn out_of_range_exponents_are_rejected() {
        let a2 = Frobenius::new(2).unwrap();
        assert!(matches!(a2.comultiply(x(2)), Err(Error::ExponentOutOfRange { exponent: 2, max: 1 })));
        assert!(a2.counit(x(5)).is_err());
        assert!(Frobenius::new(0).is_err());
    }

    #[test]
    fn degrees() {
        let a3 = Frobenius::new(3).unwrap();
        assert_eq!(a3.basis().map(|b| a3.degree(b)).collect::<Vec<_>>(), vec![-2, 0, 2]);
        assert_eq!(a3.comultiply(x(0)).unwrap().degree(&a3), Some(-2 + 2));
        assert_eq!(a3.flip_index(a3.flip_index(1)), 1);
        assert_eq!(a3.flip_index(0), 2);
    }

    #[test]
    fn tensor_concatenates_tags() {
        let a = TensorElt::pure(vec![Strand::Negative], vec![1]);
        let b = TensorElt::pure(vec![Strand::Positive], vec![0]);
        let t = a.tensor(&b);
        assert_eq!(t.tags(), &[Strand::Negative, Strand::Positive]);
        assert_eq!(t.coefficient(&[1, 0]), 1);
    }
}
