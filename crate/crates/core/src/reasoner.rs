//! Forward-chaining saturation over [`Axiom`]s and validation of the
//! contextual part pattern.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::axiom::Axiom;
use crate::graph::Graph;
use crate::modules::{combined_dimension_module, core_axioms, dedup_in_order, dimension_module};
use crate::parts::PartIndex;
use crate::registry::{ExtentRole, Registry};
use crate::term::{Iri, Term, Triple};
use crate::vocab::{iri, owl, rdf, Vocabulary};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ViolationKind {
    DisjointClasses,
    FunctionalConflict,
    MissingPartOf,
    RangeComplement,
    SameExtentRule,
}

impl ViolationKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ViolationKind::DisjointClasses => "DisjointClasses",
            ViolationKind::FunctionalConflict => "FunctionalConflict",
            ViolationKind::MissingPartOf => "MissingPartOf",
            ViolationKind::RangeComplement => "RangeComplement",
            ViolationKind::SameExtentRule => "SameExtentRule",
        }
    }
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Violation {
    pub kind: ViolationKind,
    pub resources: Vec<Term>,
    pub detail: String,
    /// The triples that make the violation hold.
    pub triggers: Vec<Triple>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)?;
        for r in &self.resources {
            write!(f, " {r}")?;
        }
        write!(f, ": {}", self.detail)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct InferenceResult {
    /// Triples not in the input, `owl:sameAs` pairs included.
    pub derived: Graph,
    pub violations: Vec<Violation>,
}

impl InferenceResult {
    /// Pairs reported as the same individual, each in both directions.
    pub fn same_as(&self) -> impl Iterator<Item = (&Term, &Term)> + '_ {
        let same = iri(owl::SAME_AS);
        self.derived
            .iter()
            .filter(move |t| *t.predicate() == same)
            .map(|t| (t.subject(), t.object()))
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ValidationOptions {
    /// Check that parts linked by a contextual statement agree on every
    /// dimension they share.
    pub same_extent: bool,
}

type Closure = BTreeMap<Iri, BTreeSet<Iri>>;

/// Strict reflexive-free transitive closure of `edges`.
fn closure(edges: &[(Iri, Iri)]) -> Closure {
    let mut direct: Closure = BTreeMap::new();
    for (a, b) in edges {
        direct.entry(a.clone()).or_default().insert(b.clone());
    }
    let mut out = Closure::new();
    for start in direct.keys() {
        let mut seen = BTreeSet::new();
        let mut stack: Vec<&Iri> = direct[start].iter().collect();
        while let Some(n) = stack.pop() {
            if seen.insert(n.clone()) {
                if let Some(next) = direct.get(n) {
                    stack.extend(next.iter());
                }
            }
        }
        seen.remove(start);
        out.insert(start.clone(), seen);
    }
    out
}

#[derive(Debug, Clone, Default)]
struct Schema {
    super_classes: Closure,
    super_props: Closure,
    domains: BTreeMap<Iri, Vec<Iri>>,
    ranges: BTreeMap<Iri, Vec<Iri>>,
    transitive: BTreeSet<Iri>,
    functional: BTreeSet<Iri>,
    inverse_functional: BTreeSet<Iri>,
    disjoint: Vec<(Iri, Iri)>,
    range_complement: Vec<(Iri, Iri)>,
    // property -> (via, class), and via -> (property, class)
    avf_domain: BTreeMap<Iri, Vec<(Iri, Iri)>>,
    avf_range: BTreeMap<Iri, Vec<(Iri, Iri)>>,
    avf_domain_via: BTreeMap<Iri, Vec<(Iri, Iri)>>,
    avf_range_via: BTreeMap<Iri, Vec<(Iri, Iri)>>,
}

impl Schema {
    fn new(axioms: &[Axiom]) -> Self {
        let mut s = Schema::default();
        let mut sub_class = Vec::new();
        let mut sub_prop = Vec::new();
        for a in axioms {
            match a {
                Axiom::SubClassOf { sub, sup } => sub_class.push((sub.clone(), sup.clone())),
                Axiom::SubPropertyOf { sub, sup, .. } => sub_prop.push((sub.clone(), sup.clone())),
                Axiom::Domain { property, class } => {
                    s.domains.entry(property.clone()).or_default().push(class.clone())
                }
                Axiom::Range { property, class } => {
                    s.ranges.entry(property.clone()).or_default().push(class.clone())
                }
                Axiom::RangeComplementOf { property, class } => {
                    s.range_complement.push((property.clone(), class.clone()))
                }
                Axiom::Functional(p) => {
                    s.functional.insert(p.clone());
                }
                Axiom::InverseFunctional(p) => {
                    s.inverse_functional.insert(p.clone());
                }
                Axiom::Transitive(p) => {
                    s.transitive.insert(p.clone());
                }
                Axiom::DisjointClasses(a, b) => s.disjoint.push((a.clone(), b.clone())),
                Axiom::AllValuesFromDomain {
                    property,
                    via,
                    class,
                } => {
                    s.avf_domain
                        .entry(property.clone())
                        .or_default()
                        .push((via.clone(), class.clone()));
                    s.avf_domain_via
                        .entry(via.clone())
                        .or_default()
                        .push((property.clone(), class.clone()));
                }
                Axiom::AllValuesFromRange {
                    property,
                    via,
                    class,
                } => {
                    s.avf_range
                        .entry(property.clone())
                        .or_default()
                        .push((via.clone(), class.clone()));
                    s.avf_range_via
                        .entry(via.clone())
                        .or_default()
                        .push((property.clone(), class.clone()));
                }
                Axiom::Declaration { .. } => {}
            }
        }
        s.super_classes = closure(&sub_class);
        s.super_props = closure(&sub_prop);
        s
    }
}

/// The saturated graph with the indexes the rules join on.
struct Store {
    all: BTreeSet<Triple>,
    sp: BTreeMap<(Term, Iri), BTreeSet<Term>>,
    po: BTreeMap<(Iri, Term), BTreeSet<Term>>,
}

impl Store {
    fn new() -> Self {
        Store {
            all: BTreeSet::new(),
            sp: BTreeMap::new(),
            po: BTreeMap::new(),
        }
    }

    fn insert(&mut self, t: Triple) -> bool {
        if self.all.contains(&t) {
            return false;
        }
        self.sp
            .entry((t.subject().clone(), t.predicate().clone()))
            .or_default()
            .insert(t.object().clone());
        self.po
            .entry((t.predicate().clone(), t.object().clone()))
            .or_default()
            .insert(t.subject().clone());
        self.all.insert(t)
    }

    fn objects(&self, s: &Term, p: &Iri) -> impl Iterator<Item = &Term> + '_ {
        self.sp
            .get(&(s.clone(), p.clone()))
            .into_iter()
            .flatten()
    }

    fn subjects(&self, p: &Iri, o: &Term) -> impl Iterator<Item = &Term> + '_ {
        self.po
            .get(&(p.clone(), o.clone()))
            .into_iter()
            .flatten()
    }

    fn has(&self, s: &Term, p: &Iri, o: &Term) -> bool {
        self.sp
            .get(&(s.clone(), p.clone()))
            .is_some_and(|set| set.contains(o))
    }
}

/// A rule engine compiled from a fixed set of axioms.
#[derive(Debug, Clone)]
pub struct Reasoner {
    schema: Schema,
    rdf_type: Iri,
    same_as: Iri,
    part_of: BTreeSet<Iri>,
}

impl Reasoner {
    /// `contextualPartOf` and its subproperties are treated as part-of
    /// properties: a functional conflict on them is a violation rather
    /// than an identity.
    pub fn new(vocab: &Vocabulary, axioms: &[Axiom]) -> Self {
        let schema = Schema::new(axioms);
        let root = &vocab.contextual_part_of;
        let mut part_of: BTreeSet<Iri> = schema
            .super_props
            .iter()
            .filter(|(_, sups)| sups.contains(root))
            .map(|(p, _)| p.clone())
            .collect();
        part_of.insert(root.clone());
        Reasoner {
            schema,
            rdf_type: iri(rdf::TYPE),
            same_as: iri(owl::SAME_AS),
            part_of,
        }
    }

    /// Consequences of one new triple, joined against the store.
    fn consequences(&self, t: &Triple, store: &Store, out: &mut Vec<Triple>) {
        let sc = &self.schema;
        let (s, p, o) = (t.subject(), t.predicate(), t.object());
        let mut add = |subject: &Term, predicate: &Iri, object: &Term| {
            if let Ok(t) = Triple::new(subject.clone(), predicate.clone(), object.clone()) {
                out.push(t);
            }
        };
        let ty = &self.rdf_type;
        if p == ty {
            if let Term::Iri(class) = o {
                for sup in sc.super_classes.get(class).into_iter().flatten() {
                    add(s, ty, &sup.into());
                }
            }
        }
        for q in sc.super_props.get(p).into_iter().flatten() {
            add(s, q, o);
        }
        for c in sc.domains.get(p).into_iter().flatten() {
            add(s, ty, &c.into());
        }
        if !o.is_literal() {
            for c in sc.ranges.get(p).into_iter().flatten() {
                add(o, ty, &c.into());
            }
        }
        if sc.transitive.contains(p) {
            if !o.is_literal() {
                for z in store.objects(o, p) {
                    add(s, p, z);
                }
            }
            for w in store.subjects(p, s) {
                add(w, p, o);
            }
        }
        for (via, c) in sc.avf_domain.get(p).into_iter().flatten() {
            for z in store.objects(s, via) {
                add(z, ty, &c.into());
            }
        }
        if !o.is_literal() {
            for (via, c) in sc.avf_range.get(p).into_iter().flatten() {
                for z in store.objects(o, via) {
                    add(z, ty, &c.into());
                }
            }
        }
        for (prop, c) in sc.avf_domain_via.get(p).into_iter().flatten() {
            if store.objects(s, prop).next().is_some() {
                add(o, ty, &c.into());
            }
        }
        for (prop, c) in sc.avf_range_via.get(p).into_iter().flatten() {
            if store.subjects(prop, s).next().is_some() {
                add(o, ty, &c.into());
            }
        }
    }

    fn fixpoint(&self, graph: &Graph) -> Store {
        let mut store = Store::new();
        let mut delta: Vec<Triple> = graph.iter().cloned().collect();
        for t in &delta {
            store.insert(t.clone());
        }
        let mut buf = Vec::new();
        while !delta.is_empty() {
            let mut next = Vec::new();
            for t in &delta {
                buf.clear();
                self.consequences(t, &store, &mut buf);
                for new in buf.drain(..) {
                    if store.insert(new.clone()) {
                        next.push(new);
                    }
                }
            }
            delta = next;
        }
        store
    }

    /// Whether `from` reaches `to` over part-of edges.
    fn reaches(&self, store: &Store, from: &Term, to: &Term) -> bool {
        let mut seen = BTreeSet::new();
        let mut stack = alloc::vec![from];
        while let Some(n) = stack.pop() {
            if n == to {
                return true;
            }
            if seen.insert(n) {
                for p in &self.part_of {
                    stack.extend(store.objects(n, p));
                }
            }
        }
        false
    }

    fn conflicts(&self, store: &Store, subject: &Term, p: &Iri) -> Vec<(Term, Term)> {
        let targets: Vec<&Term> = store.objects(subject, p).filter(|o| !o.is_literal()).collect();
        let mut out = Vec::new();
        for (i, a) in targets.iter().enumerate() {
            for b in &targets[i + 1..] {
                if !self.reaches(store, a, b) && !self.reaches(store, b, a) {
                    out.push(((*a).clone(), (*b).clone()));
                }
            }
        }
        out
    }

    /// Applies every rule until nothing new is derived, then reports
    /// identities and violations.
    pub fn saturate(&self, graph: &Graph) -> InferenceResult {
        self.run(graph).1
    }

    fn run(&self, graph: &Graph) -> (Store, InferenceResult) {
        let store = self.fixpoint(graph);
        let mut derived: Graph = store
            .all
            .iter()
            .filter(|t| !graph.contains(t))
            .cloned()
            .collect();
        let mut violations = Violations::default();
        let sc = &self.schema;

        let same = |a: &Term, b: &Term, derived: &mut Graph| {
            for (x, y) in [(a, b), (b, a)] {
                if let Ok(t) = Triple::new(x.clone(), self.same_as.clone(), y.clone()) {
                    if !graph.contains(&t) {
                        derived.insert(t);
                    }
                }
            }
        };
        for p in &sc.functional {
            let subjects: BTreeSet<&Term> = store
                .sp
                .keys()
                .filter(|(_, q)| q == p)
                .map(|(s, _)| s)
                .collect();
            for s in subjects {
                if self.part_of.contains(p) {
                    for (a, b) in self.conflicts(&store, s, p) {
                        violations.functional(s, p, &a, &b);
                    }
                    continue;
                }
                let objs: Vec<&Term> = store.objects(s, p).filter(|o| !o.is_literal()).collect();
                for (i, a) in objs.iter().enumerate() {
                    for b in &objs[i + 1..] {
                        same(a, b, &mut derived);
                    }
                }
            }
        }
        for p in &sc.inverse_functional {
            for subjects in store.po.iter().filter(|((q, _), _)| q == p).map(|(_, s)| s) {
                let subs: Vec<&Term> = subjects.iter().collect();
                for (i, a) in subs.iter().enumerate() {
                    for b in &subs[i + 1..] {
                        same(a, b, &mut derived);
                    }
                }
            }
        }
        let ty = &self.rdf_type;
        for (c, d) in &sc.disjoint {
            let ct: Term = c.into();
            let dt: Term = d.into();
            for x in store.subjects(ty, &ct) {
                if store.has(x, ty, &dt) {
                    violations.push(Violation {
                        kind: ViolationKind::DisjointClasses,
                        resources: alloc::vec![x.clone()],
                        detail: format!("{x} is an instance of the disjoint classes {c} and {d}"),
                        triggers: alloc::vec![
                            Triple::new(x.clone(), ty.clone(), ct.clone()).expect("typed subject"),
                            Triple::new(x.clone(), ty.clone(), dt.clone()).expect("typed subject"),
                        ],
                    });
                }
            }
        }
        for (p, c) in &sc.range_complement {
            let ct: Term = c.into();
            for t in store.all.iter().filter(|t| t.predicate() == p) {
                if store.has(t.object(), ty, &ct) {
                    violations.push(Violation {
                        kind: ViolationKind::RangeComplement,
                        resources: alloc::vec![t.subject().clone(), t.object().clone()],
                        detail: format!("{} is a value of {p} but an instance of {c}", t.object()),
                        triggers: alloc::vec![
                            t.clone(),
                            Triple::new(t.object().clone(), ty.clone(), ct.clone())
                                .expect("typed subject"),
                        ],
                    });
                }
            }
        }
        let result = InferenceResult {
            derived,
            violations: violations.into_vec(),
        };
        (store, result)
    }
}

/// Violations deduplicated by kind and resources, first occurrence wins.
#[derive(Default)]
struct Violations(BTreeMap<(ViolationKind, Vec<Term>), Violation>);

impl Violations {
    fn push(&mut self, v: Violation) {
        self.0
            .entry((v.kind, v.resources.clone()))
            .or_insert(v);
    }

    fn functional(&mut self, part: &Term, p: &Iri, a: &Term, b: &Term) {
        let trigger = |o: &Term| Triple::new(part.clone(), p.clone(), o.clone()).expect("part subject");
        self.push(Violation {
            kind: ViolationKind::FunctionalConflict,
            resources: alloc::vec![part.clone(), a.clone(), b.clone()],
            detail: format!("{part} is a part of both {a} and {b}"),
            triggers: alloc::vec![trigger(a), trigger(b)],
        });
    }

    fn extend(&mut self, vs: impl IntoIterator<Item = Violation>) {
        for v in vs {
            self.push(v);
        }
    }

    fn into_vec(self) -> Vec<Violation> {
        self.0.into_values().collect()
    }
}

/// Saturates `graph` under `axioms` with the default vocabulary.
pub fn saturate(graph: &Graph, axioms: &[Axiom]) -> InferenceResult {
    Reasoner::new(&Vocabulary::default(), axioms).saturate(graph)
}

/// The core, dimension and combined-dimension modules of `registry`, which
/// validation always assumes on top of the given axioms.
pub fn structural_axioms(registry: &Registry) -> Vec<Axiom> {
    let v = registry.vocab();
    let mut out = core_axioms(v);
    for d in registry.dimensions() {
        out.extend(dimension_module(v, d));
    }
    for (names, combined) in registry.all_combinations() {
        let dims: Vec<_> = names
            .iter()
            .filter_map(|n| registry.get(n))
            .collect();
        out.extend(combined_dimension_module(&dims, &combined).expect("two or more members"));
    }
    out
}

/// Checks a contextualized graph against the pattern:
///
/// - nothing is both a context and a contextual part,
/// - a part belongs to one entity per part-of property (targets on one
///   nested chain do not conflict),
/// - every part has a part-of edge,
/// - no part-of edge points at a context,
/// - optionally, parts linked by a statement agree on shared dimensions.
///
/// Violations are sorted and unique by kind and resources.
pub fn validate(
    graph: &Graph,
    axioms: &[Axiom],
    registry: &Registry,
    options: ValidationOptions,
) -> Vec<Violation> {
    let v = registry.vocab();
    let mut all_axioms = structural_axioms(registry);
    all_axioms.extend(axioms.iter().cloned());
    dedup_in_order(&mut all_axioms);
    let reasoner = Reasoner::new(v, &all_axioms);
    let (store, result) = reasoner.run(graph);
    let mut violations = Violations::default();
    violations.extend(result.violations);

    let roles = registry.roles();
    let ty = iri(rdf::TYPE);
    for p in &roles.part_of {
        let subjects: BTreeSet<&Term> = store
            .sp
            .keys()
            .filter(|(_, q)| q == p)
            .map(|(s, _)| s)
            .collect();
        for s in subjects {
            for (a, b) in reasoner.conflicts(&store, s, p) {
                violations.functional(s, p, &a, &b);
            }
        }
    }

    let part_class: Term = (&v.contextual_part).into();
    let mut parts: BTreeMap<&Term, Triple> = BTreeMap::new();
    for x in store.subjects(&ty, &part_class) {
        parts.insert(x, Triple::new(x.clone(), ty.clone(), part_class.clone()).expect("subject"));
    }
    for t in &store.all {
        if roles.extent.contains_key(t.predicate()) {
            parts.entry(t.subject()).or_insert_with(|| t.clone());
        }
    }
    for (part, why) in parts {
        let linked = roles
            .part_of
            .iter()
            .any(|p| store.objects(part, p).next().is_some());
        if !linked {
            violations.push(Violation {
                kind: ViolationKind::MissingPartOf,
                resources: alloc::vec![part.clone()],
                detail: format!("contextual part {part} is not a part of any entity"),
                triggers: alloc::vec![why],
            });
        }
    }

    if options.same_extent {
        violations.extend(same_extent_violations(graph, registry));
    }
    violations.into_vec()
}

fn same_extent_violations(graph: &Graph, registry: &Registry) -> Vec<Violation> {
    let roles = registry.roles();
    let index = PartIndex::new(graph, roles.clone());
    let mut out = Vec::new();
    for t in index.statements() {
        if !index.is_part(t.object()) {
            continue;
        }
        let (Ok(s), Ok(o)) = (index.resolve(t.subject()), index.resolve(t.object())) else {
            continue;
        };
        for (dim, sc) in &s.contexts {
            let Some(oc) = o.contexts.get(dim) else { continue };
            if sc == oc {
                continue;
            }
            let mut triggers = alloc::vec![t.clone()];
            for part in s.chain.iter().chain(o.chain.iter()) {
                for et in graph.matching(Some(part), None, None) {
                    let hit = match roles.extent.get(et.predicate()) {
                        Some(ExtentRole::Dimension(d)) => d == dim,
                        Some(_) => true,
                        None => false,
                    };
                    if hit {
                        triggers.push(et.clone());
                    }
                }
            }
            out.push(Violation {
                kind: ViolationKind::SameExtentRule,
                resources: alloc::vec![t.subject().clone(), t.object().clone()],
                detail: format!(
                    "statement {t} links parts in {dim} contexts {sc} and {oc}"
                ),
                triggers,
            });
        }
    }
    out
}

/// Renders a violation list one line per violation.
pub fn report(violations: &[Violation]) -> String {
    let mut out = String::new();
    for v in violations {
        out.push_str(&v.to_string());
        out.push('\n');
        for t in &v.triggers {
            out.push_str("    ");
            out.push_str(&t.to_string());
            out.push('\n');
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex(l: &str) -> Iri {
        Iri::new(format!("http://ex.org/{l}")).unwrap()
    }

    fn t(s: &str, p: &str, o: &str) -> Triple {
        Triple::with_iri_subject(&ex(s), &ex(p), ex(o))
    }

    #[test]
    fn closure_excludes_self_unless_cyclic() {
        let c = closure(&[(ex("a"), ex("b")), (ex("b"), ex("c")), (ex("c"), ex("b"))]);
        assert_eq!(c[&ex("a")].len(), 2);
        assert!(c[&ex("b")].contains(&ex("c")));
        assert!(!c[&ex("b")].contains(&ex("b")));
    }

    #[test]
    fn transitive_chain() {
        let g: Graph = [t("a", "p", "b"), t("b", "p", "c"), t("c", "p", "d")]
            .into_iter()
            .collect();
        let r = saturate(&g, &[Axiom::Transitive(ex("p"))]);
        assert_eq!(r.derived.len(), 3);
        assert!(r.derived.contains(&t("a", "p", "d")));
    }

    #[test]
    fn transitive_chain_ending_in_literal() {
        let lit = crate::term::Literal::integer(0);
        let g: Graph = [
            t("a", "p", "b"),
            Triple::with_iri_subject(&ex("b"), &ex("q"), lit.clone()),
        ]
        .into_iter()
        .collect();
        let axioms = [
            Axiom::Transitive(ex("p")),
            Axiom::SubPropertyOf {
                sub: ex("q"),
                sup: ex("p"),
                kind: crate::axiom::PropertyKind::Object,
            },
        ];
        let r = saturate(&g, &axioms);
        assert!(r.derived.contains(&Triple::with_iri_subject(&ex("a"), &ex("p"), lit)));
    }

    #[test]
    fn literal_objects_are_not_typed() {
        let g: Graph = [Triple::with_iri_subject(
            &ex("a"),
            &ex("p"),
            crate::term::Literal::integer(3),
        )]
        .into_iter()
        .collect();
        let r = saturate(
            &g,
            &[Axiom::Range {
                property: ex("p"),
                class: ex("C"),
            }],
        );
        assert!(r.derived.is_empty());
    }

    #[test]
    fn functional_gives_same_as() {
        let g: Graph = [t("a", "p", "b"), t("a", "p", "c")].into_iter().collect();
        let r = saturate(&g, &[Axiom::Functional(ex("p"))]);
        let pairs: Vec<_> = r.same_as().collect();
        assert_eq!(pairs.len(), 2);
        assert!(r.violations.is_empty());
    }
}
