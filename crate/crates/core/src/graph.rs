use alloc::collections::BTreeSet;

use crate::term::{Iri, Term, Triple};

/// A set of triples with an optional graph name.
///
/// Iteration order is the total order on [`Triple`], which is what the
/// serializers rely on for deterministic output.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Graph {
    name: Option<Iri>,
    triples: BTreeSet<Triple>,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn named(name: Iri) -> Self {
        Graph {
            name: Some(name),
            triples: BTreeSet::new(),
        }
    }

    pub fn name(&self) -> Option<&Iri> {
        self.name.as_ref()
    }

    pub fn set_name(&mut self, name: Option<Iri>) {
        self.name = name;
    }

    /// Returns `false` when the triple was already present.
    pub fn insert(&mut self, triple: Triple) -> bool {
        self.triples.insert(triple)
    }

    pub fn remove(&mut self, triple: &Triple) -> bool {
        self.triples.remove(triple)
    }

    pub fn contains(&self, triple: &Triple) -> bool {
        self.triples.contains(triple)
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Triple> + '_ {
        self.triples.iter()
    }

    /// Adds every triple of `other`; the graph name is left untouched.
    pub fn extend_from(&mut self, other: &Graph) {
        self.triples.extend(other.triples.iter().cloned());
    }

    pub fn union(&self, other: &Graph) -> Graph {
        let mut g = self.clone();
        g.extend_from(other);
        g
    }

    pub fn is_subgraph_of(&self, other: &Graph) -> bool {
        self.triples.is_subset(&other.triples)
    }

    /// Triples matching the given positions; `None` is a wildcard.
    pub fn matching<'a, 'b>(
        &'a self,
        subject: Option<&'b Term>,
        predicate: Option<&'b Iri>,
        object: Option<&'b Term>,
    ) -> impl Iterator<Item = &'a Triple> + use<'a, 'b> {
        self.triples.iter().filter(move |t| {
            subject.is_none_or(|s| t.subject() == s)
                && predicate.is_none_or(|p| t.predicate() == p)
                && object.is_none_or(|o| t.object() == o)
        })
    }

    pub fn objects<'a, 'b>(
        &'a self,
        subject: &'b Term,
        predicate: &'b Iri,
    ) -> impl Iterator<Item = &'a Term> + use<'a, 'b> {
        self.matching(Some(subject), Some(predicate), None)
            .map(Triple::object)
    }
}

impl PartialOrd for Graph {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Graph {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        self.name
            .cmp(&other.name)
            .then_with(|| self.triples.iter().cmp(other.triples.iter()))
    }
}

impl FromIterator<Triple> for Graph {
    fn from_iter<I: IntoIterator<Item = Triple>>(iter: I) -> Self {
        Graph {
            name: None,
            triples: iter.into_iter().collect(),
        }
    }
}

impl Extend<Triple> for Graph {
    fn extend<I: IntoIterator<Item = Triple>>(&mut self, iter: I) {
        self.triples.extend(iter);
    }
}

impl IntoIterator for Graph {
    type Item = Triple;
    type IntoIter = alloc::collections::btree_set::IntoIter<Triple>;

    fn into_iter(self) -> Self::IntoIter {
        self.triples.into_iter()
    }
}

impl<'a> IntoIterator for &'a Graph {
    type Item = &'a Triple;
    type IntoIter = alloc::collections::btree_set::Iter<'a, Triple>;

    fn into_iter(self) -> Self::IntoIter {
        self.triples.iter()
    }
}
