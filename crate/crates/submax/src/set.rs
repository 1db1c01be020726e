//! Ground sets and bitset subsets.
//!
//! Elements are plain `usize` indices into `{0, .., n-1}`. A [`Subset`] packs
//! membership into 64-bit words; one inline word covers every ground set up
//! to 64 elements without allocating.

use smallvec::SmallVec;
use std::cmp::Ordering;
use std::fmt;

use crate::error::Error;
use crate::Result;

/// The universe `{0, .., n-1}`, optionally carrying display labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundSet {
    n: usize,
    labels: Option<Vec<String>>,
}

impl GroundSet {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGroundSet);
        }
        Ok(GroundSet { n, labels: None })
    }

    /// Labels must be distinct and match the universe size one-to-one.
    pub fn with_labels(n: usize, labels: Vec<String>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGroundSet);
        }
        if labels.len() != n {
            return Err(Error::LabelCount {
                expected: n,
                got: labels.len(),
            });
        }
        let mut seen = std::collections::HashSet::with_capacity(n);
        for label in &labels {
            if !seen.insert(label.as_str()) {
                return Err(Error::DuplicateLabel {
                    label: label.clone(),
                });
            }
        }
        Ok(GroundSet {
            n,
            labels: Some(labels),
        })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, index: usize) -> Option<&str> {
        self.labels.as_ref().and_then(|l| l.get(index)).map(|s| s.as_str())
    }

    /// All elements as a full subset.
    pub fn full(&self) -> Subset {
        let mut s = Subset::empty(self.n);
        for v in 0..self.n {
            s.insert(v).expect("element within universe");
        }
        s
    }
}

/// A subset of `{0, .., n-1}` stored as a bitset.
///
/// Invariants: bits at positions `>= n` are zero, and `len` always equals the
/// total population count of `words`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subset {
    n: usize,
    words: SmallVec<[u64; 1]>,
    len: usize,
}

fn word_count(n: usize) -> usize {
    n.div_ceil(64).max(1)
}

impl Subset {
    pub fn empty(n: usize) -> Self {
        Subset {
            n,
            words: smallvec::smallvec![0; word_count(n)],
            len: 0,
        }
    }

    /// Builds from an element list; duplicates are rejected so callers notice
    /// malformed input instead of silently deduplicating it.
    pub fn from_members(n: usize, members: &[usize]) -> Result<Self> {
        let mut s = Subset::empty(n);
        for &v in members {
            if v >= n {
                return Err(Error::IndexOutOfRange { index: v, n });
            }
            if s.contains(v) {
                return Err(Error::DuplicateElement { element: v });
            }
            s.insert(v)?;
        }
        Ok(s)
    }

    /// Interprets bit `i` of `mask` as membership of element `i`.
    /// Only universes up to 64 elements fit in one mask.
    pub fn from_mask(n: usize, mask: u64) -> Result<Self> {
        debug_assert!(n <= 64);
        if n < 64 && mask >> n != 0 {
            let index = 63 - mask.leading_zeros() as usize;
            return Err(Error::IndexOutOfRange { index, n });
        }
        let mut words: SmallVec<[u64; 1]> = smallvec::smallvec![0; word_count(n)];
        words[0] = mask;
        Ok(Subset {
            n,
            words,
            len: mask.count_ones() as usize,
        })
    }

    pub fn universe_size(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.n && self.words[v / 64] >> (v % 64) & 1 == 1
    }

    pub fn insert(&mut self, v: usize) -> Result<bool> {
        if v >= self.n {
            return Err(Error::IndexOutOfRange { index: v, n: self.n });
        }
        let w = &mut self.words[v / 64];
        let bit = 1u64 << (v % 64);
        if *w & bit == 0 {
            *w |= bit;
            self.len += 1;
            Ok(true)
        } else {
            Ok(false)
        }
    }

    pub fn remove(&mut self, v: usize) -> Result<bool> {
        if v >= self.n {
            return Err(Error::IndexOutOfRange { index: v, n: self.n });
        }
        let w = &mut self.words[v / 64];
        let bit = 1u64 << (v % 64);
        if *w & bit != 0 {
            *w &= !bit;
            self.len -= 1;
            Ok(true)
        } else {
            Ok(false)
        }
    }

    /// `self ∪ {v}` without mutating `self`.
    pub fn with(&self, v: usize) -> Result<Subset> {
        let mut s = self.clone();
        s.insert(v)?;
        Ok(s)
    }

    pub fn union(&self, other: &Subset) -> Subset {
        debug_assert_eq!(self.n, other.n);
        let mut words = self.words.clone();
        for (w, o) in words.iter_mut().zip(&other.words) {
            *w |= o;
        }
        let len = words.iter().map(|w| w.count_ones() as usize).sum();
        Subset {
            n: self.n,
            words,
            len,
        }
    }

    pub fn intersection(&self, other: &Subset) -> Subset {
        debug_assert_eq!(self.n, other.n);
        let mut words = self.words.clone();
        for (w, o) in words.iter_mut().zip(&other.words) {
            *w &= o;
        }
        let len = words.iter().map(|w| w.count_ones() as usize).sum();
        Subset {
            n: self.n,
            words,
            len,
        }
    }

    pub fn is_subset_of(&self, other: &Subset) -> bool {
        debug_assert_eq!(self.n, other.n);
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    /// Members in ascending order.
    pub fn members(&self) -> Members<'_> {
        Members {
            words: &self.words,
            word_idx: 0,
            current: self.words[0],
        }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.members().collect()
    }

    /// Low word of the bitset; valid as a full mask only when `n <= 64`.
    pub fn low_mask(&self) -> u64 {
        self.words[0]
    }
}

/// Ascending-index member iterator.
pub struct Members<'a> {
    words: &'a [u64],
    word_idx: usize,
    current: u64,
}

impl Iterator for Members<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        while self.current == 0 {
            self.word_idx += 1;
            if self.word_idx >= self.words.len() {
                return None;
            }
            self.current = self.words[self.word_idx];
        }
        let bit = self.current.trailing_zeros() as usize;
        self.current &= self.current - 1;
        Some(self.word_idx * 64 + bit)
    }
}

impl Ord for Subset {
    /// Lexicographic order on the ascending member sequence, so `{0, 2}`
    /// sorts before `{1}`. This is the tie-break order used by solvers and
    /// checkers; it is not the numeric order of the underlying masks.
    fn cmp(&self, other: &Self) -> Ordering {
        self.members().cmp(other.members())
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.members().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ground_set_rejects_empty() {
        assert_eq!(GroundSet::new(0), Err(Error::EmptyGroundSet));
    }

    #[test]
    fn labels_validated() {
        let err = GroundSet::with_labels(2, vec!["a".into()]).unwrap_err();
        assert_eq!(err, Error::LabelCount { expected: 2, got: 1 });
        let err = GroundSet::with_labels(2, vec!["a".into(), "a".into()]).unwrap_err();
        assert_eq!(err, Error::DuplicateLabel { label: "a".into() });
        let g = GroundSet::with_labels(2, vec!["a".into(), "b".into()]).unwrap();
        assert_eq!(g.label(1), Some("b"));
    }

    #[test]
    fn insert_remove_len() {
        let mut s = Subset::empty(70);
        assert!(s.insert(3).unwrap());
        assert!(s.insert(69).unwrap());
        assert!(!s.insert(3).unwrap());
        assert_eq!(s.len(), 2);
        assert!(s.contains(69));
        assert!(!s.contains(68));
        assert!(s.remove(3).unwrap());
        assert!(!s.remove(3).unwrap());
        assert_eq!(s.to_vec(), vec![69]);
        assert_eq!(
            s.insert(70),
            Err(Error::IndexOutOfRange { index: 70, n: 70 })
        );
    }

    #[test]
    fn from_members_rejects_bad_input() {
        assert_eq!(
            Subset::from_members(4, &[1, 1]),
            Err(Error::DuplicateElement { element: 1 })
        );
        assert_eq!(
            Subset::from_members(4, &[4]),
            Err(Error::IndexOutOfRange { index: 4, n: 4 })
        );
    }

    #[test]
    fn mask_round_trip() {
        let s = Subset::from_mask(6, 0b101001).unwrap();
        assert_eq!(s.to_vec(), vec![0, 3, 5]);
        assert_eq!(s.low_mask(), 0b101001);
        assert!(Subset::from_mask(4, 0b10000).is_err());
    }

    #[test]
    fn members_ascending_across_words() {
        let s = Subset::from_members(130, &[129, 0, 64, 63]).unwrap();
        assert_eq!(s.to_vec(), vec![0, 63, 64, 129]);
    }

    #[test]
    fn union_intersection_subset() {
        let a = Subset::from_members(8, &[0, 2, 5]).unwrap();
        let b = Subset::from_members(8, &[2, 3]).unwrap();
        assert_eq!(a.union(&b).to_vec(), vec![0, 2, 3, 5]);
        assert_eq!(a.intersection(&b).to_vec(), vec![2]);
        assert!(a.intersection(&b).is_subset_of(&a));
        assert!(!a.is_subset_of(&b));
        assert!(Subset::empty(8).is_subset_of(&b));
    }

    #[test]
    fn order_is_member_lexicographic() {
        let a = Subset::from_members(4, &[0, 2]).unwrap();
        let b = Subset::from_members(4, &[1]).unwrap();
        // Numeric masks would order these the other way around.
        assert!(a < b);
        let c = Subset::from_members(4, &[0]).unwrap();
        // Prefix sorts first.
        assert!(c < a);
        assert!(Subset::empty(4) < c);
    }

    #[test]
    fn display() {
        let s = Subset::from_members(5, &[4, 1]).unwrap();
        assert_eq!(s.to_string(), "{1, 4}");
    }
}
