//! A small schema algebra and its RDF encoding.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::error::VocabError;
use crate::graph::Graph;
use crate::term::{BlankNode, Iri, Term, Triple};
use crate::vocab::{iri, owl, rdf, rdfs};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PropertyKind {
    Object,
    Data,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EntityKind {
    Class,
    ObjectProperty,
    DataProperty,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    SubClassOf { sub: Iri, sup: Iri },
    SubPropertyOf { sub: Iri, sup: Iri, kind: PropertyKind },
    Domain { property: Iri, class: Iri },
    Range { property: Iri, class: Iri },
    /// The range is the complement of `class`.
    RangeComplementOf { property: Iri, class: Iri },
    Functional(Iri),
    InverseFunctional(Iri),
    Transitive(Iri),
    DisjointClasses(Iri, Iri),
    /// Every subject of `property` is something all of whose `via`
    /// values are instances of `class`.
    AllValuesFromDomain { property: Iri, via: Iri, class: Iri },
    /// Same as [`Axiom::AllValuesFromDomain`], for objects of `property`.
    AllValuesFromRange { property: Iri, via: Iri, class: Iri },
    Declaration { entity: Iri, kind: EntityKind },
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axiom::SubClassOf { sub, sup } => write!(f, "SubClassOf({sub} {sup})"),
            Axiom::SubPropertyOf { sub, sup, kind } => match kind {
                PropertyKind::Object => write!(f, "SubObjectPropertyOf({sub} {sup})"),
                PropertyKind::Data => write!(f, "SubDataPropertyOf({sub} {sup})"),
            },
            Axiom::Domain { property, class } => write!(f, "PropertyDomain({property} {class})"),
            Axiom::Range { property, class } => write!(f, "PropertyRange({property} {class})"),
            Axiom::RangeComplementOf { property, class } => {
                write!(f, "PropertyRange({property} ObjectComplementOf({class}))")
            }
            Axiom::Functional(p) => write!(f, "FunctionalProperty({p})"),
            Axiom::InverseFunctional(p) => write!(f, "InverseFunctionalProperty({p})"),
            Axiom::Transitive(p) => write!(f, "TransitiveObjectProperty({p})"),
            Axiom::DisjointClasses(a, b) => write!(f, "DisjointClasses({a} {b})"),
            Axiom::AllValuesFromDomain {
                property,
                via,
                class,
            } => write!(f, "PropertyDomain({property} ObjectAllValuesFrom({via} {class}))"),
            Axiom::AllValuesFromRange {
                property,
                via,
                class,
            } => write!(f, "PropertyRange({property} ObjectAllValuesFrom({via} {class}))"),
            Axiom::Declaration { entity, kind } => match kind {
                EntityKind::Class => write!(f, "Declaration(Class({entity}))"),
                EntityKind::ObjectProperty => write!(f, "Declaration(ObjectProperty({entity}))"),
                EntityKind::DataProperty => write!(f, "Declaration(DataProperty({entity}))"),
            },
        }
    }
}

/// Encodes axioms with the standard RDFS/OWL predicates. Class
/// expressions become blank nodes labelled `b0`, `b1`, ... in axiom order.
pub fn axioms_to_graph(axioms: &[Axiom]) -> Graph {
    let mut g = Graph::new();
    let mut next_blank = 0usize;
    let mut fresh = || {
        let b = BlankNode::new(format!("b{next_blank}")).expect("valid label");
        next_blank += 1;
        b
    };
    let t = |s: &Iri, p: &str, o: Term| Triple::with_iri_subject(s, &iri(p), o);
    let bt = |s: &BlankNode, p: &str, o: Term| {
        Triple::new(s.clone(), iri(p), o).expect("blank subject")
    };
    for axiom in axioms {
        match axiom {
            Axiom::SubClassOf { sub, sup } => {
                g.insert(t(sub, rdfs::SUB_CLASS_OF, sup.into()));
            }
            Axiom::SubPropertyOf { sub, sup, .. } => {
                g.insert(t(sub, rdfs::SUB_PROPERTY_OF, sup.into()));
            }
            Axiom::Domain { property, class } => {
                g.insert(t(property, rdfs::DOMAIN, class.into()));
            }
            Axiom::Range { property, class } => {
                g.insert(t(property, rdfs::RANGE, class.into()));
            }
            Axiom::RangeComplementOf { property, class } => {
                let b = fresh();
                g.insert(t(property, rdfs::RANGE, b.clone().into()));
                g.insert(bt(&b, rdf::TYPE, iri(owl::CLASS).into()));
                g.insert(bt(&b, owl::COMPLEMENT_OF, class.into()));
            }
            Axiom::Functional(p) => {
                g.insert(t(p, rdf::TYPE, iri(owl::FUNCTIONAL_PROPERTY).into()));
            }
            Axiom::InverseFunctional(p) => {
                g.insert(t(p, rdf::TYPE, iri(owl::INVERSE_FUNCTIONAL_PROPERTY).into()));
            }
            Axiom::Transitive(p) => {
                g.insert(t(p, rdf::TYPE, iri(owl::TRANSITIVE_PROPERTY).into()));
            }
            Axiom::DisjointClasses(a, b) => {
                g.insert(t(a, owl::DISJOINT_WITH, b.into()));
            }
            Axiom::AllValuesFromDomain {
                property,
                via,
                class,
            }
            | Axiom::AllValuesFromRange {
                property,
                via,
                class,
            } => {
                let link = if matches!(axiom, Axiom::AllValuesFromDomain { .. }) {
                    rdfs::DOMAIN
                } else {
                    rdfs::RANGE
                };
                let b = fresh();
                g.insert(t(property, link, b.clone().into()));
                g.insert(bt(&b, rdf::TYPE, iri(owl::RESTRICTION).into()));
                g.insert(bt(&b, owl::ON_PROPERTY, via.into()));
                g.insert(bt(&b, owl::ALL_VALUES_FROM, class.into()));
            }
            Axiom::Declaration { entity, kind } => {
                let class = match kind {
                    EntityKind::Class => owl::CLASS,
                    EntityKind::ObjectProperty => owl::OBJECT_PROPERTY,
                    EntityKind::DataProperty => owl::DATATYPE_PROPERTY,
                };
                g.insert(t(entity, rdf::TYPE, iri(class).into()));
            }
        }
    }
    g
}

/// Reads back the axiom forms produced by [`axioms_to_graph`]. Triples that
/// encode nothing in the algebra are ignored.
///
/// Property kinds are recovered from declarations; an undeclared
/// subproperty is taken to be an object property.
pub fn axioms_from_graph(graph: &Graph) -> Result<Vec<Axiom>, VocabError> {
    let rdf_type = iri(rdf::TYPE);
    let mut blank_props: BTreeMap<&Term, BTreeMap<&str, &Term>> = BTreeMap::new();
    for t in graph.iter().filter(|t| t.subject().is_blank()) {
        blank_props
            .entry(t.subject())
            .or_default()
            .insert(t.predicate().as_str(), t.object());
    }
    let data_props: BTreeSet<&Term> = graph
        .iter()
        .filter(|t| {
            t.predicate() == &rdf_type && t.object().as_iri().map(Iri::as_str) == Some(owl::DATATYPE_PROPERTY)
        })
        .map(Triple::subject)
        .collect();

    let mut out = Vec::new();
    for t in graph.iter() {
        let Term::Iri(s) = t.subject() else { continue };
        let o = t.object();
        let obj_iri = || {
            o.as_iri()
                .cloned()
                .ok_or_else(|| VocabError::MalformedAxiom(format!("{t}: expected an IRI object")))
        };
        match t.predicate().as_str() {
            rdfs::SUB_CLASS_OF => out.push(Axiom::SubClassOf {
                sub: s.clone(),
                sup: obj_iri()?,
            }),
            rdfs::SUB_PROPERTY_OF => out.push(Axiom::SubPropertyOf {
                sub: s.clone(),
                sup: obj_iri()?,
                kind: if data_props.contains(t.subject()) {
                    PropertyKind::Data
                } else {
                    PropertyKind::Object
                },
            }),
            owl::DISJOINT_WITH => out.push(Axiom::DisjointClasses(s.clone(), obj_iri()?)),
            p @ (rdfs::DOMAIN | rdfs::RANGE) => {
                let is_domain = p == rdfs::DOMAIN;
                match o {
                    Term::Iri(class) => out.push(if is_domain {
                        Axiom::Domain {
                            property: s.clone(),
                            class: class.clone(),
                        }
                    } else {
                        Axiom::Range {
                            property: s.clone(),
                            class: class.clone(),
                        }
                    }),
                    Term::BlankNode(_) => {
                        let props = blank_props.get(o).ok_or_else(|| {
                            VocabError::MalformedAxiom(format!("{t}: empty class expression"))
                        })?;
                        let get = |k: &str| props.get(k).and_then(|v| v.as_iri()).cloned();
                        if let Some(class) = get(owl::COMPLEMENT_OF) {
                            if !is_domain {
                                out.push(Axiom::RangeComplementOf {
                                    property: s.clone(),
                                    class,
                                });
                                continue;
                            }
                        } else if let (Some(via), Some(class)) =
                            (get(owl::ON_PROPERTY), get(owl::ALL_VALUES_FROM))
                        {
                            out.push(if is_domain {
                                Axiom::AllValuesFromDomain {
                                    property: s.clone(),
                                    via,
                                    class,
                                }
                            } else {
                                Axiom::AllValuesFromRange {
                                    property: s.clone(),
                                    via,
                                    class,
                                }
                            });
                            continue;
                        }
                        return Err(VocabError::MalformedAxiom(format!(
                            "{t}: unsupported class expression"
                        )));
                    }
                    Term::Literal(_) => {
                        return Err(VocabError::MalformedAxiom(format!("{t}: literal class")))
                    }
                }
            }
            rdf::TYPE => {
                let Some(class) = o.as_iri() else { continue };
                let axiom = match class.as_str() {
                    owl::FUNCTIONAL_PROPERTY => Axiom::Functional(s.clone()),
                    owl::INVERSE_FUNCTIONAL_PROPERTY => Axiom::InverseFunctional(s.clone()),
                    owl::TRANSITIVE_PROPERTY => Axiom::Transitive(s.clone()),
                    owl::CLASS => Axiom::Declaration {
                        entity: s.clone(),
                        kind: EntityKind::Class,
                    },
                    owl::OBJECT_PROPERTY => Axiom::Declaration {
                        entity: s.clone(),
                        kind: EntityKind::ObjectProperty,
                    },
                    owl::DATATYPE_PROPERTY => Axiom::Declaration {
                        entity: s.clone(),
                        kind: EntityKind::DataProperty,
                    },
                    _ => continue,
                };
                out.push(axiom);
            }
            _ => {}
        }
    }
    Ok(out)
}
