//! Rewriting annotated statements into contextual parts and back.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::axiom::{Axiom, EntityKind, PropertyKind};
use crate::error::ContextError;
use crate::graph::Graph;
use crate::mint::{combined_context, mint_part, MintingPolicy};
use crate::modules::{
    combined_dimension_module, core_axioms, datatype_axioms, dedup_in_order,
    dimension_module, dimension_restriction_axioms, functional_extent_axiom, transitivity_axiom,
};
use crate::parts::PartIndex;
use crate::registry::Registry;
use crate::term::{Iri, Term, Triple};
use crate::vocab::{iri, rdf, ContextDimension};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ContextAssignment {
    pub dimension: String,
    pub context: Iri,
    /// Triples describing the context; copied verbatim into the output.
    pub description: Option<Graph>,
}

impl ContextAssignment {
    pub fn new(dimension: impl Into<String>, context: Iri) -> Self {
        ContextAssignment {
            dimension: dimension.into(),
            context,
            description: None,
        }
    }

    pub fn described(mut self, description: Graph) -> Self {
        self.description = Some(description);
        self
    }
}

/// A base triple together with at most one context per dimension.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AnnotatedStatement {
    base: Triple,
    contexts: BTreeMap<String, ContextAssignment>,
}

impl AnnotatedStatement {
    pub fn new(
        base: Triple,
        assignments: impl IntoIterator<Item = ContextAssignment>,
    ) -> Result<Self, ContextError> {
        for term in [base.subject(), base.object()] {
            if let Term::BlankNode(b) = term {
                return Err(ContextError::BlankNode(b.to_string()));
            }
        }
        let mut contexts = BTreeMap::new();
        for a in assignments {
            if contexts.contains_key(&a.dimension) {
                return Err(ContextError::DuplicateAssignment(a.dimension));
            }
            contexts.insert(a.dimension.clone(), a);
        }
        if contexts.is_empty() {
            return Err(ContextError::NoContexts(base.to_string()));
        }
        Ok(AnnotatedStatement { base, contexts })
    }

    pub fn base(&self) -> &Triple {
        &self.base
    }

    /// Assignments ordered by dimension name.
    pub fn contexts(&self) -> impl Iterator<Item = &ContextAssignment> + '_ {
        self.contexts.values()
    }

    pub fn context(&self, dimension: &str) -> Option<&Iri> {
        self.contexts.get(dimension).map(|a| &a.context)
    }

    pub fn dimension_count(&self) -> usize {
        self.contexts.len()
    }

    /// (dimension, context) pairs in dimension order.
    pub fn pairs(&self) -> Vec<(&str, &Iri)> {
        self.contexts
            .values()
            .map(|a| (a.dimension.as_str(), &a.context))
            .collect()
    }

    /// The statement with every context description dropped.
    pub fn without_descriptions(&self) -> Self {
        let mut s = self.clone();
        for a in s.contexts.values_mut() {
            a.description = None;
        }
        s
    }
}

/// How several dimensions are attached to one entity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CombinationModel {
    /// Parts nested in parts, one level per dimension. The first name in
    /// `order` is the part closest to the entity; statements link the
    /// innermost parts.
    ContextsInContext { order: Vec<String> },
    /// One part per entity and context set, with one extent per dimension.
    MultiContextPart,
    /// One part per entity with a single extent to a combined context.
    CombinedExtent,
}

impl CombinationModel {
    pub fn label(&self) -> &'static str {
        match self {
            CombinationModel::ContextsInContext { .. } => "contexts-in-context",
            CombinationModel::MultiContextPart => "multi-context-part",
            CombinationModel::CombinedExtent => "combined-extent",
        }
    }
}

/// What happens to the predicate of a base statement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PredicatePolicy {
    /// The base predicate is used as is and declared a subproperty of the
    /// dimension's contextual property.
    Keep,
    /// A related contextual property is used instead, so that the original
    /// property's domain and range never apply to parts. `overrides` maps
    /// originals to user-chosen IRIs; anything else is minted by
    /// [`related_predicate`].
    Related { overrides: BTreeMap<Iri, Iri> },
}

impl Default for PredicatePolicy {
    fn default() -> Self {
        PredicatePolicy::Related {
            overrides: BTreeMap::new(),
        }
    }
}

/// `ex:capitalOf` becomes `ex:contextualCapitalOf`; a local name that does
/// not start with a lowercase ASCII letter gets a `contextual_` prefix
/// instead, so the mapping is injective and [`original_predicate`] can undo
/// it.
pub fn related_predicate(original: &Iri) -> Result<Iri, ContextError> {
    let ns = original.namespace();
    let local = original.local_name();
    if ns.is_empty() {
        return Err(ContextError::UnmappedPredicate(original.clone()));
    }
    let mut chars = local.chars();
    let minted = match chars.next() {
        Some(c) if c.is_ascii_lowercase() => {
            format!("{ns}contextual{}{}", c.to_ascii_uppercase(), chars.as_str())
        }
        _ => format!("{ns}contextual_{local}"),
    };
    Iri::new(minted).map_err(|_| ContextError::UnmappedPredicate(original.clone()))
}

/// Inverse of [`related_predicate`].
pub fn original_predicate(related: &Iri) -> Option<Iri> {
    let ns = related.namespace();
    let rest = related.local_name().strip_prefix("contextual")?;
    if let Some(local) = rest.strip_prefix('_') {
        if local.is_empty() || local.starts_with(|c: char| c.is_ascii_lowercase()) {
            return None;
        }
        return Iri::new(format!("{ns}{local}")).ok();
    }
    let mut chars = rest.chars();
    match chars.next() {
        Some(c) if c.is_ascii_uppercase() => {
            Iri::new(format!("{ns}{}{}", c.to_ascii_lowercase(), chars.as_str())).ok()
        }
        _ => None,
    }
}

/// Which optional modules go into the generated ontology.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OntologyOptions {
    pub datatype_axioms: bool,
    pub restriction_axioms: bool,
}

impl Default for OntologyOptions {
    fn default() -> Self {
        OntologyOptions {
            datatype_axioms: true,
            restriction_axioms: true,
        }
    }
}

/// A named group of axioms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OntologyModule {
    pub name: String,
    pub axioms: Vec<Axiom>,
}

/// Contextualizes statements under one model and reads them back.
#[derive(Debug, Clone)]
pub struct Contextualizer {
    registry: Registry,
    model: CombinationModel,
    minting: MintingPolicy,
    predicates: PredicatePolicy,
}

impl Contextualizer {
    pub fn new(registry: Registry, model: CombinationModel) -> Self {
        Contextualizer {
            registry,
            model,
            minting: MintingPolicy::default(),
            predicates: PredicatePolicy::default(),
        }
    }

    pub fn with_minting(mut self, minting: MintingPolicy) -> Self {
        self.minting = minting;
        self
    }

    pub fn with_predicates(mut self, predicates: PredicatePolicy) -> Self {
        self.predicates = predicates;
        self
    }

    pub fn registry(&self) -> &Registry {
        &self.registry
    }

    pub fn model(&self) -> &CombinationModel {
        &self.model
    }

    pub fn minting(&self) -> &MintingPolicy {
        &self.minting
    }

    pub fn predicates(&self) -> &PredicatePolicy {
        &self.predicates
    }

    fn dimension(&self, name: &str) -> Result<&ContextDimension, ContextError> {
        self.registry
            .get(name)
            .ok_or_else(|| ContextError::UnknownDimension(name.into()))
    }

    fn check_order(&self) -> Result<(), ContextError> {
        if let CombinationModel::ContextsInContext { order } = &self.model {
            let mut seen = BTreeSet::new();
            for name in order {
                self.dimension(name)?;
                if !seen.insert(name) {
                    return Err(ContextError::OrderDuplicate(name.clone()));
                }
            }
        }
        Ok(())
    }

    fn check_statement(&self, s: &AnnotatedStatement) -> Result<(), ContextError> {
        for a in s.contexts() {
            self.dimension(&a.dimension)?;
            if let CombinationModel::ContextsInContext { order } = &self.model {
                if !order.contains(&a.dimension) {
                    return Err(ContextError::OrderIncomplete(a.dimension.clone()));
                }
            }
        }
        let p = s.base.predicate();
        if self.registry.roles().is_scaffolding(p) {
            return Err(ContextError::ReservedPredicate(p.clone()));
        }
        Ok(())
    }

    /// The predicate used between parts for `base`.
    pub fn rewrite_predicate(&self, base: &Iri) -> Result<Iri, ContextError> {
        match &self.predicates {
            PredicatePolicy::Keep => Ok(base.clone()),
            PredicatePolicy::Related { overrides } => match overrides.get(base) {
                Some(custom) => Ok(custom.clone()),
                None => related_predicate(base),
            },
        }
    }

    fn restore_predicate(&self, rewritten: &Iri) -> Result<Iri, ContextError> {
        match &self.predicates {
            PredicatePolicy::Keep => Ok(rewritten.clone()),
            PredicatePolicy::Related { overrides } => overrides
                .iter()
                .find(|(_, custom)| *custom == rewritten)
                .map(|(orig, _)| orig.clone())
                .or_else(|| original_predicate(rewritten))
                .ok_or_else(|| ContextError::UnmappedPredicate(rewritten.clone())),
        }
    }

    /// Adds the part of `entity` for `s` to `g` and returns it.
    fn build_part(
        &self,
        g: &mut Graph,
        entity: &Iri,
        s: &AnnotatedStatement,
    ) -> Result<Iri, ContextError> {
        let rdf_type = iri(rdf::TYPE);
        let pairs = s.pairs();
        let attach = |g: &mut Graph, part: &Iri, parent: &Iri, dim: &ContextDimension, ctx: &Iri| {
            g.insert(Triple::with_iri_subject(part, &rdf_type, &dim.part_class));
            g.insert(Triple::with_iri_subject(part, &dim.part_of, parent));
            g.insert(Triple::with_iri_subject(part, &dim.extent, ctx));
            g.insert(Triple::with_iri_subject(ctx, &rdf_type, &dim.context_class));
        };
        match &self.model {
            CombinationModel::ContextsInContext { order } => {
                let mut parent = entity.clone();
                for name in order {
                    let Some(ctx) = s.context(name) else { continue };
                    let dim = self.dimension(name)?;
                    let part = mint_part(&parent, &[(name.as_str(), ctx)], &self.minting)
                        .map_err(crate::error::VocabError::from)?;
                    attach(g, &part, &parent, dim, ctx);
                    parent = part;
                }
                Ok(parent)
            }
            CombinationModel::CombinedExtent if pairs.len() >= 2 => {
                let names: Vec<&str> = pairs.iter().map(|(d, _)| *d).collect();
                let combined = self.registry.combined(&names)?;
                let ctx = combined_context(&self.registry.vocab().context_namespace, &pairs)
                    .map_err(crate::error::VocabError::from)?;
                let part = mint_part(entity, &[(combined.name(), &ctx)], &self.minting)
                    .map_err(crate::error::VocabError::from)?;
                attach(g, &part, entity, &combined, &ctx);
                for (name, member) in &pairs {
                    let dim = self.dimension(name)?;
                    g.insert(Triple::with_iri_subject(
                        &ctx,
                        &self.registry.vocab().member_context,
                        *member,
                    ));
                    g.insert(Triple::with_iri_subject(member, &rdf_type, &dim.context_class));
                }
                Ok(part)
            }
            CombinationModel::MultiContextPart | CombinationModel::CombinedExtent => {
                let part = mint_part(entity, &pairs, &self.minting)
                    .map_err(crate::error::VocabError::from)?;
                for (name, ctx) in &pairs {
                    attach(g, &part, entity, self.dimension(name)?, ctx);
                }
                Ok(part)
            }
        }
    }

    /// Rewrites every statement onto contextual parts.
    ///
    /// Only IRI positions get parts; a literal object stays on the
    /// subject's part. Parts are shared between statements with the same
    /// entity and context set.
    pub fn contextualize(&self, statements: &[AnnotatedStatement]) -> Result<Graph, ContextError> {
        self.check_order()?;
        let mut g = Graph::new();
        for s in statements {
            self.check_statement(s)?;
            for a in s.contexts() {
                if let Some(d) = &a.description {
                    g.extend_from(d);
                }
            }
            let Term::Iri(subject) = s.base.subject() else {
                return Err(ContextError::BlankNode(s.base.subject().to_string()));
            };
            let subject_part = self.build_part(&mut g, subject, s)?;
            let object: Term = match s.base.object() {
                Term::Iri(o) => self.build_part(&mut g, o, s)?.into(),
                other => other.clone(),
            };
            let predicate = self.rewrite_predicate(s.base.predicate())?;
            g.insert(Triple::with_iri_subject(&subject_part, &predicate, object));
        }
        Ok(g)
    }

    /// Maps every statement between parts back to its base triple and the
    /// contexts found along the subject's part chain. With a selection,
    /// only statements with at least one selected context are returned.
    pub fn decontextualize(
        &self,
        graph: &Graph,
        selection: Option<&BTreeSet<Iri>>,
    ) -> Result<Vec<AnnotatedStatement>, ContextError> {
        let index = PartIndex::new(graph, self.registry.roles());
        for part in index.parts() {
            index.parent(part)?;
        }
        let mut out = BTreeSet::new();
        for t in index.statements() {
            let subject = index.resolve(t.subject())?;
            let object = if index.is_part(t.object()) {
                index.resolve(t.object())?.entity.clone()
            } else {
                t.object().clone()
            };
            if let Some(sel) = selection {
                if !subject.contexts.values().any(|c| sel.contains(c)) {
                    continue;
                }
            }
            let predicate = self.restore_predicate(t.predicate())?;
            let base = Triple::new(subject.entity.clone(), predicate, object)
                .map_err(crate::error::VocabError::from)?;
            let assignments = subject
                .contexts
                .into_iter()
                .map(|(d, c)| ContextAssignment::new(d, c));
            out.insert(AnnotatedStatement::new(base, assignments)?);
        }
        Ok(out.into_iter().collect())
    }

    /// The subgraph holding every statement whose part chain reaches
    /// `context`, with the part scaffolding needed to read it back.
    pub fn context_slice(&self, graph: &Graph, context: &Iri) -> Graph {
        crate::query::context_slice(graph, &self.registry, context)
    }

    /// The ontology modules for this registry and model: the core, one
    /// module per dimension, transitivity for nested parts, the functional
    /// extent and combined dimensions for combined extents, and optionally
    /// datatype support and per-dimension restrictions.
    pub fn ontology_modules(&self, options: OntologyOptions) -> Vec<OntologyModule> {
        let v = self.registry.vocab();
        let mut out = alloc::vec![OntologyModule {
            name: "core".into(),
            axioms: core_axioms(v),
        }];
        if options.datatype_axioms {
            out.push(OntologyModule {
                name: "datatype".into(),
                axioms: datatype_axioms(v),
            });
        }
        for d in self.registry.dimensions() {
            out.push(OntologyModule {
                name: format!("dimension-{}", d.name()),
                axioms: dimension_module(v, d),
            });
        }
        match &self.model {
            CombinationModel::ContextsInContext { .. } => out.push(OntologyModule {
                name: "transitive".into(),
                axioms: alloc::vec![transitivity_axiom(v)],
            }),
            CombinationModel::CombinedExtent => {
                out.push(OntologyModule {
                    name: "functional-extent".into(),
                    axioms: alloc::vec![functional_extent_axiom(v)],
                });
                for (names, combined) in self.registry.all_combinations() {
                    let dims: Vec<_> = names.iter().filter_map(|n| self.registry.get(n)).collect();
                    out.push(OntologyModule {
                        name: format!("combined-{}", combined.name()),
                        axioms: combined_dimension_module(&dims, &combined)
                            .expect("two or more members"),
                    });
                }
            }
            CombinationModel::MultiContextPart => {}
        }
        if options.restriction_axioms {
            for d in self.registry.dimensions() {
                out.push(OntologyModule {
                    name: format!("restriction-{}", d.name()),
                    axioms: dimension_restriction_axioms(v, d),
                });
            }
        }
        out
    }

    /// Every axiom of [`Self::ontology_modules`] plus the predicate axioms
    /// for `statements`, without duplicates.
    pub fn ontology(
        &self,
        options: OntologyOptions,
        statements: &[AnnotatedStatement],
    ) -> Result<Vec<Axiom>, ContextError> {
        let mut out: Vec<Axiom> = self
            .ontology_modules(options)
            .into_iter()
            .flat_map(|m| m.axioms)
            .collect();
        out.extend(self.predicate_axioms(statements)?);
        dedup_in_order(&mut out);
        Ok(out)
    }

    /// Axioms linking the predicates used by `statements` into the
    /// contextual property hierarchy of the dimensions they are used with.
    pub fn predicate_axioms(
        &self,
        statements: &[AnnotatedStatement],
    ) -> Result<Vec<Axiom>, ContextError> {
        let mut out = Vec::new();
        for s in statements {
            self.check_statement(s)?;
            let base = s.base.predicate();
            let rewritten = self.rewrite_predicate(base)?;
            let datatype = s.base.object().is_literal();
            let names: Vec<&str> = match &self.model {
                CombinationModel::ContextsInContext { order } => order
                    .iter()
                    .rev()
                    .find(|n| s.context(n).is_some())
                    .map(String::as_str)
                    .into_iter()
                    .collect(),
                _ => s.contexts().map(|a| a.dimension.as_str()).collect(),
            };
            let kind = if datatype {
                PropertyKind::Data
            } else {
                PropertyKind::Object
            };
            out.push(Axiom::Declaration {
                entity: rewritten.clone(),
                kind: if datatype {
                    EntityKind::DataProperty
                } else {
                    EntityKind::ObjectProperty
                },
            });
            for name in names {
                let dim = self.dimension(name)?;
                let sup = if datatype {
                    &dim.contextual_datatype_property
                } else {
                    &dim.contextual_property
                };
                out.push(Axiom::SubPropertyOf {
                    sub: rewritten.clone(),
                    sup: sup.clone(),
                    kind,
                });
            }
        }
        dedup_in_order(&mut out);
        Ok(out)
    }
}
