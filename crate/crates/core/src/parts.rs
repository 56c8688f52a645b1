//! Reading contextual parts back out of a graph.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::ContextError;
use crate::graph::Graph;
use crate::registry::{ExtentRole, Roles};
use crate::term::{Iri, Term, Triple};

/// Index of the part scaffolding of one graph.
pub struct PartIndex<'g> {
    graph: &'g Graph,
    roles: Roles,
    part_of: BTreeMap<&'g Term, BTreeSet<&'g Term>>,
    extents: BTreeMap<&'g Term, Vec<&'g Triple>>,
    parts: BTreeSet<&'g Term>,
    types: BTreeMap<&'g Term, BTreeSet<&'g Iri>>,
}

/// A part followed to its base entity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Resolved<'g> {
    pub entity: &'g Term,
    /// Parts from the given one outwards, excluding the entity.
    pub chain: Vec<&'g Term>,
    /// Dimension name to context, accumulated over the whole chain.
    pub contexts: BTreeMap<String, Iri>,
    /// Extent targets as written, including combined contexts.
    pub extent_targets: BTreeSet<&'g Term>,
}

impl<'g> PartIndex<'g> {
    pub fn new(graph: &'g Graph, roles: Roles) -> Self {
        let mut part_of: BTreeMap<&Term, BTreeSet<&Term>> = BTreeMap::new();
        let mut extents: BTreeMap<&Term, Vec<&Triple>> = BTreeMap::new();
        let mut parts = BTreeSet::new();
        let mut types: BTreeMap<&Term, BTreeSet<&Iri>> = BTreeMap::new();
        for t in graph.iter() {
            let p = t.predicate();
            if roles.part_of.contains(p) {
                part_of.entry(t.subject()).or_default().insert(t.object());
                parts.insert(t.subject());
            } else if roles.extent.contains_key(p) {
                extents.entry(t.subject()).or_default().push(t);
                parts.insert(t.subject());
            } else if *p == roles.rdf_type {
                if let Term::Iri(class) = t.object() {
                    types.entry(t.subject()).or_default().insert(class);
                    if roles.part_classes.contains(class) {
                        parts.insert(t.subject());
                    }
                }
            }
        }
        PartIndex {
            graph,
            roles,
            part_of,
            extents,
            parts,
            types,
        }
    }

    pub fn roles(&self) -> &Roles {
        &self.roles
    }

    pub fn is_part(&self, term: &Term) -> bool {
        self.parts.contains(term)
    }

    pub fn parts(&self) -> impl Iterator<Item = &'g Term> + '_ {
        self.parts.iter().copied()
    }

    /// The single entity `part` is a part of.
    pub fn parent(&self, part: &Term) -> Result<&'g Term, ContextError> {
        let targets = self.part_of.get(part);
        match targets {
            Some(t) if t.len() == 1 => Ok(t.iter().next().copied().expect("one element")),
            other => Err(ContextError::PartOfCardinality {
                part: part.to_string(),
                count: other.map_or(0, BTreeSet::len),
            }),
        }
    }

    fn dimension_of_context(&self, ctx: &Term) -> Option<&str> {
        self.types.get(ctx).and_then(|classes| {
            classes
                .iter()
                .find_map(|c| self.roles.context_class_dim.get(*c).map(String::as_str))
        })
    }

    fn add_context(
        contexts: &mut BTreeMap<String, Iri>,
        part: &Term,
        dimension: &str,
        ctx: &Term,
    ) -> Result<(), ContextError> {
        let Term::Iri(ctx) = ctx else {
            return Err(ContextError::DanglingPart(part.to_string()));
        };
        match contexts.get(dimension) {
            Some(existing) if existing != ctx => Err(ContextError::ConflictingContexts {
                part: part.to_string(),
                dimension: dimension.into(),
            }),
            Some(_) => Ok(()),
            None => {
                contexts.insert(dimension.into(), ctx.clone());
                Ok(())
            }
        }
    }

    /// Walks `contextualPartOf` from `part` until a non-part is reached,
    /// collecting the extents of every part on the way.
    pub fn resolve(&self, part: &'g Term) -> Result<Resolved<'g>, ContextError> {
        let mut chain = Vec::new();
        let mut contexts = BTreeMap::new();
        let mut extent_targets = BTreeSet::new();
        let mut current = part;
        while self.is_part(current) {
            if chain.contains(&current) {
                return Err(ContextError::CyclicChain {
                    part: part.to_string(),
                });
            }
            chain.push(current);
            let extents = self.extents.get(current).map(Vec::as_slice).unwrap_or(&[]);
            if extents.is_empty() {
                return Err(ContextError::DanglingPart(current.to_string()));
            }
            for t in extents {
                let ctx = t.object();
                extent_targets.insert(ctx);
                match &self.roles.extent[t.predicate()] {
                    ExtentRole::Dimension(d) => Self::add_context(&mut contexts, current, d, ctx)?,
                    ExtentRole::Core => {
                        let d = self
                            .dimension_of_context(ctx)
                            .ok_or_else(|| ContextError::UnresolvedCombinedContext(ctx.to_string()))?;
                        Self::add_context(&mut contexts, current, d, ctx)?;
                    }
                    ExtentRole::Combined => {
                        let mut found = false;
                        for member in self.graph.objects(ctx, &self.roles.member) {
                            let d = self.dimension_of_context(member).ok_or_else(|| {
                                ContextError::UnresolvedCombinedContext(ctx.to_string())
                            })?;
                            Self::add_context(&mut contexts, current, d, member)?;
                            extent_targets.insert(member);
                            found = true;
                        }
                        if !found {
                            return Err(ContextError::UnresolvedCombinedContext(ctx.to_string()));
                        }
                    }
                }
            }
            current = self.parent(current)?;
        }
        Ok(Resolved {
            entity: current,
            chain,
            contexts,
            extent_targets,
        })
    }

    /// Triples that state facts about parts, as opposed to building them.
    pub fn statements(&self) -> impl Iterator<Item = &'g Triple> + '_ {
        self.graph
            .iter()
            .filter(|t| !self.roles.is_scaffolding(t.predicate()) && self.is_part(t.subject()))
    }

    /// Type, partOf and extent triples of `part`, plus the type and member
    /// triples of the contexts it points to.
    pub fn scaffolding_of(&self, part: &Term, out: &mut Graph) {
        for t in self.graph.matching(Some(part), None, None) {
            if self.roles.is_scaffolding(t.predicate()) {
                out.insert(t.clone());
            }
        }
        for t in self.extents.get(part).into_iter().flatten() {
            let ctx = t.object();
            for ct in self.graph.matching(Some(ctx), None, None) {
                if *ct.predicate() == self.roles.rdf_type || *ct.predicate() == self.roles.member {
                    out.insert(ct.clone());
                }
            }
            for member in self.graph.objects(ctx, &self.roles.member) {
                for mt in self.graph.matching(Some(member), Some(&self.roles.rdf_type), None) {
                    out.insert(mt.clone());
                }
            }
        }
    }
}
