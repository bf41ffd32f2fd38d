// SPDX-License-Identifier: MIT
//! Small fixed-capacity node sets backed by a `u64` bitmask.
//!
//! Node indices are positions in a graph's sorted variable list, so iterating
//! a set yields variables in lexicographic order.

use std::fmt;

/// Upper bound on the number of variables a single graph may hold.
pub const MAX_NODES: usize = 64;

#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeSet(u64);

impl NodeSet {
    pub const EMPTY: NodeSet = NodeSet(0);

    #[inline]
    pub const fn from_bits(bits: u64) -> Self {
        NodeSet(bits)
    }

    #[inline]
    pub const fn bits(self) -> u64 {
        self.0
    }

    /// The set `{0, 1, .., n-1}`.
    #[inline]
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_NODES);
        if n == MAX_NODES {
            NodeSet(u64::MAX)
        } else {
            NodeSet((1u64 << n) - 1)
        }
    }

    #[inline]
    pub fn singleton(i: usize) -> Self {
        NodeSet(1u64 << i)
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        i < MAX_NODES && self.0 >> i & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        self.0 |= 1u64 << i;
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1u64 << i);
    }

    #[inline]
    pub fn with(self, i: usize) -> Self {
        NodeSet(self.0 | 1u64 << i)
    }

    #[inline]
    pub fn without(self, i: usize) -> Self {
        NodeSet(self.0 & !(1u64 << i))
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn union(self, other: NodeSet) -> Self {
        NodeSet(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: NodeSet) -> Self {
        NodeSet(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: NodeSet) -> Self {
        NodeSet(self.0 & !other.0)
    }

    #[inline]
    pub fn is_subset(self, other: NodeSet) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn intersects(self, other: NodeSet) -> bool {
        self.0 & other.0 != 0
    }

    /// Lowest member, if any.
    #[inline]
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> NodeSetIter {
        NodeSetIter(self.0)
    }

    /// Subsets of `self` in order of increasing cardinality, lexicographic
    /// (by member index) within one cardinality.
    pub fn subsets_by_size(self) -> impl Iterator<Item = NodeSet> {
        let members: Vec<usize> = self.iter().collect();
        (0..=members.len()).flat_map(move |k| Combinations::new(members.clone(), k))
    }

    /// Subsets of `self` with exactly `k` members, lexicographic order.
    pub fn subsets_of_size(self, k: usize) -> Combinations {
        Combinations::new(self.iter().collect(), k)
    }
}

impl fmt::Debug for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for NodeSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = NodeSet::EMPTY;
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl IntoIterator for NodeSet {
    type Item = usize;
    type IntoIter = NodeSetIter;
    fn into_iter(self) -> NodeSetIter {
        self.iter()
    }
}

pub struct NodeSetIter(u64);

impl Iterator for NodeSetIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for NodeSetIter {}

/// k-combinations of a member list in lexicographic order.
pub struct Combinations {
    members: Vec<usize>,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    fn new(members: Vec<usize>, k: usize) -> Self {
        let done = k > members.len();
        Combinations {
            idx: (0..k).collect(),
            members,
            done,
        }
    }
}

impl Iterator for Combinations {
    type Item = NodeSet;

    fn next(&mut self) -> Option<NodeSet> {
        if self.done {
            return None;
        }
        let out: NodeSet = self.idx.iter().map(|&i| self.members[i]).collect();
        let n = self.members.len();
        let k = self.idx.len();
        // advance to the next combination
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}
