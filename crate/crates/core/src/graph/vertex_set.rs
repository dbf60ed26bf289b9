use std::fmt;

use super::Vertex;

/// A set of vertex ids, stored sorted and without duplicates.
///
/// Range checking against a particular graph happens at evaluation time,
/// since the same set may be queried against graphs of different order.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet {
    members: Vec<Vertex>,
}

impl VertexSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// All vertices `0..n`.
    pub fn full(n: usize) -> Self {
        Self {
            members: (0..n).collect(),
        }
    }

    pub fn singleton(v: Vertex) -> Self {
        Self { members: vec![v] }
    }

    pub fn pair(u: Vertex, v: Vertex) -> Self {
        Self::from_unsorted(vec![u, v])
    }

    /// Sorts and deduplicates `members`.
    pub fn from_unsorted(mut members: Vec<Vertex>) -> Self {
        members.sort_unstable();
        members.dedup();
        Self { members }
    }

    /// Wraps an already strictly increasing sequence.
    pub(crate) fn from_sorted_unchecked(members: Vec<Vertex>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        Self { members }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn as_slice(&self) -> &[Vertex] {
        &self.members
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = Vertex> + '_ {
        self.members.iter().copied()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn max(&self) -> Option<Vertex> {
        self.members.last().copied()
    }

    /// A copy with `v` added.
    pub fn with(&self, v: Vertex) -> Self {
        match self.members.binary_search(&v) {
            Ok(_) => self.clone(),
            Err(pos) => {
                let mut members = Vec::with_capacity(self.members.len() + 1);
                members.extend_from_slice(&self.members[..pos]);
                members.push(v);
                members.extend_from_slice(&self.members[pos..]);
                Self { members }
            }
        }
    }

    /// A copy with `v` removed.
    pub fn without(&self, v: Vertex) -> Self {
        let mut out = self.clone();
        if let Ok(pos) = out.members.binary_search(&v) {
            out.members.remove(pos);
        }
        out
    }

    pub fn union(&self, other: &Self) -> Self {
        let (a, b) = (&self.members, &other.members);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Self { members: out }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let (a, b) = (&self.members, &other.members);
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    out.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        Self { members: out }
    }

    pub fn difference(&self, other: &Self) -> Self {
        let (a, b) = (&self.members, &other.members);
        let mut out = Vec::with_capacity(a.len());
        let mut j = 0;
        for &x in a {
            while j < b.len() && b[j] < x {
                j += 1;
            }
            if j >= b.len() || b[j] != x {
                out.push(x);
            }
        }
        Self { members: out }
    }

    /// Splits into a first half of `ceil(k/2)` and a second half of `floor(k/2)`
    /// members, in sorted order.
    pub fn split_halves(&self) -> (Self, Self) {
        let mid = self.members.len().div_ceil(2);
        (
            Self {
                members: self.members[..mid].to_vec(),
            },
            Self {
                members: self.members[mid..].to_vec(),
            },
        )
    }

    pub fn into_vec(self) -> Vec<Vertex> {
        self.members
    }

    /// Replaces the contents with the set bits of `words`.
    pub(crate) fn refill_from_bits(&mut self, words: &[u64]) {
        self.members.clear();
        for (i, &w) in words.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                self.members.push(i * 64 + w.trailing_zeros() as usize);
                w &= w - 1;
            }
        }
    }
}

impl FromIterator<Vertex> for VertexSet {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        Self::from_unsorted(iter.into_iter().collect())
    }
}

impl From<Vec<Vertex>> for VertexSet {
    fn from(v: Vec<Vertex>) -> Self {
        Self::from_unsorted(v)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.members.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_algebra() {
        let a = VertexSet::from(vec![5, 1, 3, 3]);
        let b = VertexSet::from(vec![3, 4, 5]);
        assert_eq!(a.as_slice(), &[1, 3, 5]);
        assert_eq!(a.union(&b).as_slice(), &[1, 3, 4, 5]);
        assert_eq!(a.intersection(&b).as_slice(), &[3, 5]);
        assert_eq!(a.difference(&b).as_slice(), &[1]);
        assert_eq!(b.difference(&a).as_slice(), &[4]);
        assert_eq!(a.with(2).as_slice(), &[1, 2, 3, 5]);
        assert_eq!(a.with(3), a);
        assert_eq!(a.without(3).as_slice(), &[1, 5]);
    }

    #[test]
    fn halves_put_the_extra_vertex_first() {
        let (l, r) = VertexSet::full(5).split_halves();
        assert_eq!(l.as_slice(), &[0, 1, 2]);
        assert_eq!(r.as_slice(), &[3, 4]);
        let (l, r) = VertexSet::singleton(7).split_halves();
        assert_eq!(l.len(), 1);
        assert!(r.is_empty());
    }

    #[test]
    fn in_place_edits() {
        let mut s = VertexSet::from(vec![4, 1, 4, 2]);
        assert_eq!(s.as_slice(), &[1, 2, 4]);
        s.refill_from_bits(&[0b1010, 1]);
        assert_eq!(s.as_slice(), &[1, 3, 64]);
    }
}
