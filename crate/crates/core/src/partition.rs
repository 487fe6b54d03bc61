//! Integer partitions, box enumeration and the staircase index sets that
//! link partitions to column subsets of alternant matrices.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("negative part {0}")]
    NegativePart(i64),
    #[error("parts are not weakly decreasing at position {0}")]
    NotDecreasing(usize),
    #[error("partition {lambda} has length {len}, more than {bound}")]
    TooLong { lambda: Partition, len: usize, bound: usize },
    #[error("first part of {lambda} exceeds rectangle width {width}")]
    TooWide { lambda: Partition, width: u32 },
    #[error("cannot parse partition from {0:?}")]
    Parse(String),
}

/// A weakly decreasing sequence of positive integers. Trailing zeros are
/// dropped at construction, so `len()` is the number of positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<u32>")]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn new(parts: &[i64]) -> Result<Self, PartitionError> {
        let mut out = Vec::with_capacity(parts.len());
        for (i, &p) in parts.iter().enumerate() {
            if p < 0 {
                return Err(PartitionError::NegativePart(p));
            }
            if i > 0 && p > parts[i - 1] {
                return Err(PartitionError::NotDecreasing(i));
            }
            out.push(p as u32);
        }
        while out.last() == Some(&0) {
            out.pop();
        }
        Ok(Self { parts: out })
    }

    pub fn from_parts(parts: &[u32]) -> Result<Self, PartitionError> {
        let wide: Vec<i64> = parts.iter().map(|&p| p as i64).collect();
        Self::new(&wide)
    }

    /// Parses the command-line form: comma separated parts, empty string for ∅.
    pub fn parse(text: &str) -> Result<Self, PartitionError> {
        let text = text.trim();
        if text.is_empty() || text == "∅" {
            return Ok(Self::empty());
        }
        let parts = text
            .split(',')
            .map(|s| s.trim().parse::<i64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| PartitionError::Parse(text.to_string()))?;
        Self::new(&parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// `λ_i` with 1-based `i`; zero past the length.
    pub fn part(&self, i: usize) -> u32 {
        assert!(i >= 1, "parts are 1-indexed");
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    pub fn first(&self) -> u32 {
        self.part(1)
    }

    /// Parts padded with zeros to exactly `len` entries.
    pub fn padded(&self, len: usize) -> Result<Vec<u32>, PartitionError> {
        self.check_len(len)?;
        let mut v = self.parts.clone();
        v.resize(len, 0);
        Ok(v)
    }

    pub fn check_len(&self, bound: usize) -> Result<(), PartitionError> {
        if self.len() > bound {
            return Err(PartitionError::TooLong {
                lambda: self.clone(),
                len: self.len(),
                bound,
            });
        }
        Ok(())
    }

    /// Drops the first part: `(λ_2, λ_3, …)`.
    pub fn tail(&self) -> Partition {
        Partition {
            parts: self.parts.iter().skip(1).copied().collect(),
        }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("∅");
        }
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl TryFrom<Vec<i64>> for Partition {
    type Error = PartitionError;

    fn try_from(v: Vec<i64>) -> Result<Self, Self::Error> {
        Partition::new(&v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

/// All partitions with at most `max_len` parts, each at most `max_part`.
///
/// Output is in lexicographic order of the part sequences, a prefix sorting
/// before its extensions: the 2×1 box gives `[∅, (1), (1,1)]`. The count is
/// `binomial(max_len + max_part, max_len)`.
pub fn enumerate_bounded(max_len: usize, max_part: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(max_len);
    fill(&mut current, max_len, max_part, &mut out);
    out
}

// Extends `current` by parts no larger than `cap`; emits before extending so
// shorter partitions precede their extensions.
fn fill(current: &mut Vec<u32>, max_len: usize, cap: u32, out: &mut Vec<Partition>) {
    out.push(Partition {
        parts: current.clone(),
    });
    if current.len() == max_len {
        return;
    }
    for p in 1..=cap {
        current.push(p);
        fill(current, max_len, p, out);
        current.pop();
    }
}

/// Partitions with at most `max_len` parts and size at most `max_size`.
pub fn enumerate_by_size(max_len: usize, max_size: u32) -> Vec<Partition> {
    enumerate_bounded(max_len, max_size)
        .into_iter()
        .filter(|l| l.size() <= max_size)
        .collect()
}

/// `(r, …, r [k times], λ_1, λ_2, …)`.
pub fn prepend_rect(r: u32, k: usize, lambda: &Partition) -> Result<Partition, PartitionError> {
    if lambda.first() > r {
        return Err(PartitionError::TooWide {
            lambda: lambda.clone(),
            width: r,
        });
    }
    if r == 0 {
        return Ok(lambda.clone());
    }
    let mut parts = vec![r; k];
    parts.extend_from_slice(&lambda.parts);
    Ok(Partition { parts })
}

/// The rectangle `(r^k)`.
pub fn rectangle(r: u32, k: usize) -> Partition {
    if r == 0 {
        return Partition::empty();
    }
    Partition { parts: vec![r; k] }
}

/// A set of distinct nonnegative integers, stored in descending order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IndexSet {
    elements: Vec<usize>,
}

impl IndexSet {
    /// Builds a set from distinct indices; returns `None` on a repeat.
    pub fn new(mut elements: Vec<usize>) -> Option<Self> {
        elements.sort_unstable_by(|a, b| b.cmp(a));
        if elements.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some(Self { elements })
    }

    /// Elements in descending order.
    pub fn descending(&self) -> &[usize] {
        &self.elements
    }

    pub fn ascending(&self) -> Vec<usize> {
        self.elements.iter().rev().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.elements.contains(&i)
    }

    /// Inverse of [`index_set`]: subtract the staircase `(k-1, …, 0)`.
    pub fn to_partition(&self) -> Partition {
        let k = self.elements.len();
        let parts: Vec<u32> = self
            .elements
            .iter()
            .enumerate()
            .map(|(j, &e)| (e - (k - 1 - j)) as u32)
            .collect();
        Partition::from_parts(&parts).expect("strictly decreasing set minus staircase is a partition")
    }
}

/// `{λ_j + k − j : 1 ≤ j ≤ k}` for `k = n_plus_1`.
pub fn index_set(lambda: &Partition, n_plus_1: usize) -> Result<IndexSet, PartitionError> {
    let padded = lambda.padded(n_plus_1)?;
    let elements = padded
        .iter()
        .enumerate()
        .map(|(j, &p)| p as usize + n_plus_1 - 1 - j)
        .collect();
    Ok(IndexSet { elements })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::from_parts(parts).unwrap()
    }

    #[test]
    fn normalizes_trailing_zeros() {
        assert_eq!(Partition::new(&[2, 1, 0, 0]).unwrap().parts(), &[2, 1]);
        assert!(Partition::new(&[]).unwrap().is_empty());
        assert_eq!(Partition::new(&[0, 0]).unwrap().len(), 0);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(Partition::new(&[1, 2]), Err(PartitionError::NotDecreasing(1)));
        assert_eq!(Partition::new(&[1, -1]), Err(PartitionError::NegativePart(-1)));
        assert!(Partition::parse("2,x").is_err());
    }

    #[test]
    fn parses_cli_form() {
        assert_eq!(Partition::parse("").unwrap(), Partition::empty());
        assert_eq!(Partition::parse("3, 1").unwrap(), p(&[3, 1]));
        assert_eq!(p(&[3, 1]).to_string(), "(3,1)");
        assert_eq!(Partition::empty().to_string(), "∅");
    }

    #[test]
    fn box_enumeration() {
        assert_eq!(enumerate_bounded(2, 1), vec![Partition::empty(), p(&[1]), p(&[1, 1])]);
        assert_eq!(enumerate_bounded(0, 5), vec![Partition::empty()]);
        assert_eq!(enumerate_bounded(2, 2).len(), 6);
        assert_eq!(enumerate_bounded(3, 0), vec![Partition::empty()]);
        // partitions of 0..=4 into at most 2 parts: 1 + 1 + 2 + 2 + 3
        assert_eq!(enumerate_by_size(2, 4).len(), 9);
    }

    #[test]
    fn rectangle_prefix() {
        assert_eq!(prepend_rect(2, 2, &p(&[1])).unwrap(), p(&[2, 2, 1]));
        assert_eq!(prepend_rect(3, 0, &p(&[2, 1])).unwrap(), p(&[2, 1]));
        assert!(matches!(
            prepend_rect(1, 2, &p(&[2])),
            Err(PartitionError::TooWide { .. })
        ));
        assert_eq!(rectangle(2, 3), p(&[2, 2, 2]));
        assert_eq!(rectangle(0, 3), Partition::empty());
    }

    #[test]
    fn staircase_index_sets() {
        assert_eq!(index_set(&p(&[2, 1]), 3).unwrap().descending(), &[4, 2, 0]);
        assert_eq!(index_set(&Partition::empty(), 3).unwrap().descending(), &[2, 1, 0]);
        assert_eq!(index_set(&p(&[5]), 1).unwrap().descending(), &[5]);
        assert!(index_set(&p(&[1, 1, 1]), 2).is_err());
    }

    #[test]
    fn index_set_is_injective_on_small_box() {
        let all = enumerate_bounded(3, 3);
        let sets: std::collections::HashSet<_> =
            all.iter().map(|l| index_set(l, 3).unwrap()).collect();
        assert_eq!(sets.len(), all.len());
        for l in &all {
            assert_eq!(&index_set(l, 3).unwrap().to_partition(), l);
        }
    }

    #[test]
    fn json_is_plain_array() {
        let json = serde_json::to_string(&p(&[2, 1])).unwrap();
        assert_eq!(json, "[2,1]");
        let back: Partition = serde_json::from_str("[2,1,0]").unwrap();
        assert_eq!(back, p(&[2, 1]));
        assert!(serde_json::from_str::<Partition>("[1,2]").is_err());
    }
}
