use std::collections::btree_map::{self, Entry};
use std::collections::BTreeMap;

/// A finite integer combination of keys. Zero coefficients are never stored,
/// and iteration follows the key order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinComb<K: Ord> {
    terms: BTreeMap<K, i64>,
}

impl<K: Ord> Default for LinComb<K> {
    fn default() -> Self {
        LinComb { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> LinComb<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(key: K, coeff: i64) -> Self {
        let mut c = Self::zero();
        c.add_term(key, coeff);
        c
    }

    pub fn add_term(&mut self, key: K, coeff: i64) {
        match self.terms.entry(key) {
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

    pub fn add_scaled(&mut self, other: &LinComb<K>, scale: i64) {
        for (k, &v) in &other.terms {
            self.add_term(k.clone(), v * scale);
        }
    }

    pub fn scaled(&self, scale: i64) -> Self {
        let mut c = Self::zero();
        c.add_scaled(self, scale);
        c
    }

    pub fn coefficient(&self, key: &K) -> i64 {
        self.terms.get(key).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, i64)> {
        self.terms.iter().map(|(k, &v)| (k, v))
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    /// Applies a linear map given on keys.
    pub fn map_linear<L: Ord + Clone>(&self, mut f: impl FnMut(&K) -> LinComb<L>) -> LinComb<L> {
        let mut out = LinComb::zero();
        for (k, &v) in &self.terms {
            out.add_scaled(&f(k), v);
        }
        out
    }
}

impl<K: Ord + Clone> FromIterator<(K, i64)> for LinComb<K> {
    fn from_iter<T: IntoIterator<Item = (K, i64)>>(iter: T) -> Self {
        let mut c = Self::zero();
        for (k, v) in iter {
            c.add_term(k, v);
        }
        c
    }
}

impl<K: Ord> IntoIterator for LinComb<K> {
    type Item = (K, i64);
    type IntoIter = btree_map::IntoIter<K, i64>;

    fn into_iter(self) -> Self::IntoIter {
        self.terms.into_iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancellation_removes_terms() {
        let mut c = LinComb::single("a", 2);
        c.add_term("b", 1);
        c.add_term("a", -2);
        assert_eq!(c.len(), 1);
        assert_eq!(c.coefficient(&"a"), 0);
        assert_eq!(c.scaled(-3).coefficient(&"b"), -3);
    }
}
