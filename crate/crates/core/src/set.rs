//! Dense element sets over the fixed mixed-radix element order of a group.

use std::fmt;

use crate::group::{GroupElement, GroupSpec};

/// A subset of a group, stored as membership bits indexed by the group's
/// element order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ElementSet {
    group: GroupSpec,
    words: Vec<u64>,
}

impl ElementSet {
    pub fn empty(group: GroupSpec) -> Self {
        let n = group.order() as usize;
        ElementSet {
            group,
            words: vec![0; n.div_ceil(64)],
        }
    }

    pub fn full(group: GroupSpec) -> Self {
        let mut s = Self::empty(group);
        let n = s.group.order();
        for i in 0..n {
            s.insert(i);
        }
        s
    }

    pub fn from_indices(group: GroupSpec, indices: &[u64]) -> Self {
        let mut s = Self::empty(group);
        for &i in indices {
            s.insert(i);
        }
        s
    }

    pub fn from_elements<'a, I: IntoIterator<Item = &'a GroupElement>>(
        group: GroupSpec,
        elems: I,
    ) -> Self {
        let mut s = Self::empty(group);
        for e in elems {
            s.insert_element(e);
        }
        s
    }

    /// Builds the set of all elements satisfying a predicate.
    pub fn from_predicate<F: FnMut(&GroupElement) -> bool>(group: GroupSpec, mut pred: F) -> Self {
        let mut s = Self::empty(group.clone());
        for i in 0..group.order() {
            if pred(&group.element_of_index(i)) {
                s.insert(i);
            }
        }
        s
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn insert(&mut self, idx: u64) {
        debug_assert!(idx < self.group.order());
        self.words[(idx / 64) as usize] |= 1 << (idx % 64);
    }

    pub fn remove(&mut self, idx: u64) {
        self.words[(idx / 64) as usize] &= !(1 << (idx % 64));
    }

    pub fn contains(&self, idx: u64) -> bool {
        self.words[(idx / 64) as usize] >> (idx % 64) & 1 == 1
    }

    pub fn insert_element(&mut self, e: &GroupElement) {
        self.insert(self.group.index_of(e));
    }

    pub fn contains_element(&self, e: &GroupElement) -> bool {
        self.contains(self.group.index_of(e))
    }

    pub fn len(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Member indices in increasing order.
    pub fn indices(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.group.order()).filter(move |&i| self.contains(i))
    }

    /// Member elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        self.indices().map(move |i| self.group.element_of_index(i))
    }

    fn assert_same_group(&self, other: &ElementSet) {
        assert_eq!(self.group, other.group, "sets belong to different groups");
    }

    pub fn union(&self, other: &ElementSet) -> ElementSet {
        self.assert_same_group(other);
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a | b)
            .collect();
        ElementSet {
            group: self.group.clone(),
            words,
        }
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        self.assert_same_group(other);
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a & b)
            .collect();
        ElementSet {
            group: self.group.clone(),
            words,
        }
    }

    pub fn difference(&self, other: &ElementSet) -> ElementSet {
        self.assert_same_group(other);
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a & !b)
            .collect();
        ElementSet {
            group: self.group.clone(),
            words,
        }
    }

    pub fn complement(&self) -> ElementSet {
        let mut out = Self::empty(self.group.clone());
        for i in 0..self.group.order() {
            if !self.contains(i) {
                out.insert(i);
            }
        }
        out
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.assert_same_group(other);
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &ElementSet) -> bool {
        self.assert_same_group(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    /// The set `-S`.
    pub fn negation(&self) -> ElementSet {
        let mut out = Self::empty(self.group.clone());
        for i in self.indices() {
            out.insert(self.group.neg_index(i));
        }
        out
    }

    /// The sumset `S + S` (repetition allowed).
    pub fn sumset(&self) -> ElementSet {
        let members: Vec<u64> = self.indices().collect();
        let mut out = Self::empty(self.group.clone());
        for &a in &members {
            for &b in &members {
                out.insert(self.group.add_indices(a, b));
            }
        }
        out
    }

    /// The difference set `S - S`.
    pub fn difference_set(&self) -> ElementSet {
        let members: Vec<u64> = self.indices().collect();
        let mut out = Self::empty(self.group.clone());
        for &a in &members {
            for &b in &members {
                out.insert(self.group.sub_indices(a, b));
            }
        }
        out
    }

    /// The translate `g + S`.
    pub fn translate(&self, g: &GroupElement) -> ElementSet {
        let gi = self.group.index_of(g);
        let mut out = Self::empty(self.group.clone());
        for i in self.indices() {
            out.insert(self.group.add_indices(gi, i));
        }
        out
    }

    /// `S  u  (-S)`.
    pub fn symmetrized(&self) -> ElementSet {
        self.union(&self.negation())
    }
}

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements().map(|e| e.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;

    #[test]
    fn basic_ops() {
        let g = GroupSpec::parse("Z8").unwrap();
        let odds = ElementSet::from_indices(g.clone(), &[1, 3, 5, 7]);
        assert_eq!(odds.len(), 4);
        assert_eq!(odds.complement().len(), 4);
        let neg = odds.negation();
        assert_eq!(neg, odds); // odds are closed under negation in Z8
        let ss = odds.sumset();
        for i in ss.indices() {
            assert_eq!(i % 2, 0);
        }
        assert!(ss.is_disjoint(&odds));
    }

    #[test]
    fn sumset_and_difference_set_indexing() {
        let g = GroupSpec::parse("Z2*Z5").unwrap();
        let s = ElementSet::from_predicate(g.clone(), |e| e.residues()[1] == 1);
        let ds = s.difference_set();
        assert!(ds.contains_element(&g.zero()));
        let tr = s.translate(&g.element(&[0, 1]).unwrap());
        assert_eq!(tr.len(), s.len());
        assert!(tr.is_disjoint(&s));
    }
}
