//! Partitions with bounded part size and bounded number of parts, and the
//! generating functions counting them.

use std::collections::HashMap;
use std::fmt;

/// An unordered partition, stored with its parts in weakly decreasing order.
/// Zero parts are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BoundedPartition {
    parts: Vec<usize>,
}

impl BoundedPartition {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Canonicalizes an arbitrary list of parts: zeros are dropped and the
    /// rest sorted in decreasing order.
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        BoundedPartition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn largest_part(&self) -> Option<usize> {
        self.parts.first().copied()
    }

    /// Adds a part; adding a zero part leaves the partition unchanged.
    pub fn with_part(&self, part: usize) -> Self {
        if part == 0 {
            return self.clone();
        }
        let pos = self.parts.iter().position(|&p| p < part).unwrap_or(self.parts.len());
        let mut parts = self.parts.clone();
        parts.insert(pos, part);
        BoundedPartition { parts }
    }

    /// Removes one copy of `part`, if present.
    pub fn without_part(&self, part: usize) -> Option<Self> {
        let pos = self.parts.iter().position(|&p| p == part)?;
        let mut parts = self.parts.clone();
        parts.remove(pos);
        Some(BoundedPartition { parts })
    }
}

impl fmt::Display for BoundedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "()");
        }
        let s: Vec<String> = self.parts.iter().map(usize::to_string).collect();
        write!(f, "{}", s.join("+"))
    }
}

/// All partitions of `q` into parts of size at most `max_part`, using at most
/// `max_parts` parts (`None` for no bound). Output is sorted lexicographically
/// by the decreasing part sequence.
pub fn enumerate(q: usize, max_part: usize, max_parts: Option<usize>) -> Vec<BoundedPartition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill(q, max_part, max_parts.unwrap_or(usize::MAX), &mut current, &mut out);
    out
}

fn fill(rest: usize, max_part: usize, slots: usize, current: &mut Vec<usize>, out: &mut Vec<BoundedPartition>) {
    if rest == 0 {
        out.push(BoundedPartition { parts: current.clone() });
        return;
    }
    if slots == 0 {
        return;
    }
    for p in 1..=max_part.min(rest) {
        current.push(p);
        fill(rest - p, p, slots - 1, current, out);
        current.pop();
    }
}

/// All partitions of any weight with at most `max_parts` parts, each at most
/// `max_part`, ordered by weight and then lexicographically.
pub fn enumerate_all(max_part: usize, max_parts: usize) -> Vec<BoundedPartition> {
    let top = max_part * max_parts;
    (0..=top).flat_map(|q| enumerate(q, max_part, Some(max_parts))).collect()
}

/// `P_m(q)`: the number of partitions of `q` with parts of size at most
/// `max_part`, by the recursion `P(q, m) = P(q, m - 1) + P(q - m, m)`.
pub fn count_partitions(q: usize, max_part: usize) -> u64 {
    fn go(q: usize, m: usize, memo: &mut HashMap<(usize, usize), u64>) -> u64 {
        if q == 0 {
            return 1;
        }
        if m == 0 {
            return 0;
        }
        if let Some(&v) = memo.get(&(q, m)) {
            return v;
        }
        let mut v = go(q, m - 1, memo);
        if q >= m {
            v += go(q - m, m, memo);
        }
        memo.insert((q, m), v);
        v
    }
    go(q, max_part, &mut HashMap::new())
}

/// Coefficients of `prod_{k=1}^{max_part} 1 / (1 - x^{step * k})` up to and
/// including `x^degree`, by truncated power-series multiplication.
pub fn series_coefficients(max_part: usize, step: usize, degree: usize) -> Vec<u64> {
    assert!(step >= 1, "step must be positive");
    let mut series = vec![0u64; degree + 1];
    series[0] = 1;
    for k in 1..=max_part {
        let d = step * k;
        // Multiplying by 1/(1 - x^d) is a running sum with stride d.
        for i in d..=degree {
            series[i] += series[i - d];
        }
    }
    series
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> BoundedPartition {
        BoundedPartition::new(parts.to_vec())
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(enumerate(0, 3, None), vec![BoundedPartition::empty()]);
        assert_eq!(enumerate(3, 2, None), vec![p(&[1, 1, 1]), p(&[2, 1])]);
        assert_eq!(enumerate(4, 2, Some(2)), vec![p(&[2, 2])]);
        assert!(enumerate(5, 2, Some(2)).is_empty());
        assert!(enumerate(2, 0, None).is_empty());
    }

    #[test]
    fn counting_examples() {
        for q in 0..20 {
            assert_eq!(count_partitions(q, 1), 1);
            assert_eq!(count_partitions(q, 2), 1 + q as u64 / 2);
        }
        assert_eq!(count_partitions(5, 2), 3);
        assert_eq!(count_partitions(4, 2), 3);
    }

    #[test]
    fn series_matches_count() {
        let s = series_coefficients(3, 1, 12);
        for (q, &c) in s.iter().enumerate() {
            assert_eq!(c, count_partitions(q, 3));
        }
        let s2 = series_coefficients(2, 2, 8);
        assert_eq!(s2, vec![1, 0, 1, 0, 2, 0, 2, 0, 3]);
    }

    #[test]
    fn part_editing() {
        let a = p(&[2, 1]);
        assert_eq!(a.with_part(2), p(&[2, 2, 1]));
        assert_eq!(a.with_part(0), a);
        assert_eq!(a.without_part(1), Some(p(&[2])));
        assert_eq!(a.without_part(3), None);
        assert_eq!(a.weight(), 3);
        assert_eq!(a.to_string(), "2+1");
    }

    #[test]
    fn enumerate_all_orders_by_weight() {
        let all = enumerate_all(2, 2);
        let weights: Vec<usize> = all.iter().map(BoundedPartition::weight).collect();
        assert_eq!(weights, vec![0, 1, 2, 2, 3, 4]);
    }
}
