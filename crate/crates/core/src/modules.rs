//! Generators for the ontology modules: the core vocabulary, datatype
//! support, one module per dimension, per-dimension property restrictions,
//! the optional transitivity and functional-extent axioms, combined
//! dimensions, and related contextual properties.
//!
//! Every generator is a pure function; output order is fixed and free of
//! duplicates.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use alloc::format;

use crate::axiom::{Axiom, EntityKind, PropertyKind};
use crate::error::VocabError;
use crate::term::Iri;
use crate::vocab::{capitalize, ContextDimension, Vocabulary};

fn declare(entity: &Iri, kind: EntityKind) -> Axiom {
    Axiom::Declaration {
        entity: entity.clone(),
        kind,
    }
}

/// The core module. `contextualExtent` is deliberately not functional
/// here; see [`functional_extent_axiom`].
pub fn core_axioms(v: &Vocabulary) -> Vec<Axiom> {
    vec![
        declare(&v.context, EntityKind::Class),
        declare(&v.contextual_part, EntityKind::Class),
        Axiom::DisjointClasses(v.context.clone(), v.contextual_part.clone()),
        declare(&v.contextual_property, EntityKind::ObjectProperty),
        Axiom::Domain {
            property: v.contextual_property.clone(),
            class: v.contextual_part.clone(),
        },
        Axiom::Range {
            property: v.contextual_property.clone(),
            class: v.contextual_part.clone(),
        },
        declare(&v.contextual_extent, EntityKind::ObjectProperty),
        Axiom::Domain {
            property: v.contextual_extent.clone(),
            class: v.contextual_part.clone(),
        },
        Axiom::Range {
            property: v.contextual_extent.clone(),
            class: v.context.clone(),
        },
        declare(&v.contextual_part_of, EntityKind::ObjectProperty),
        Axiom::Functional(v.contextual_part_of.clone()),
        Axiom::Domain {
            property: v.contextual_part_of.clone(),
            class: v.contextual_part.clone(),
        },
        Axiom::RangeComplementOf {
            property: v.contextual_part_of.clone(),
            class: v.context.clone(),
        },
    ]
}

pub fn datatype_axioms(v: &Vocabulary) -> Vec<Axiom> {
    vec![
        declare(&v.contextual_datatype_property, EntityKind::DataProperty),
        Axiom::Domain {
            property: v.contextual_datatype_property.clone(),
            class: v.contextual_part.clone(),
        },
    ]
}

/// Ties one dimension's part class, context class, extent and partOf
/// properties to the core vocabulary.
pub fn dimension_module(v: &Vocabulary, dim: &ContextDimension) -> Vec<Axiom> {
    vec![
        declare(&dim.context_class, EntityKind::Class),
        Axiom::SubClassOf {
            sub: dim.context_class.clone(),
            sup: v.context.clone(),
        },
        declare(&dim.part_class, EntityKind::Class),
        Axiom::SubClassOf {
            sub: dim.part_class.clone(),
            sup: v.contextual_part.clone(),
        },
        declare(&dim.extent, EntityKind::ObjectProperty),
        Axiom::SubPropertyOf {
            sub: dim.extent.clone(),
            sup: v.contextual_extent.clone(),
            kind: PropertyKind::Object,
        },
        Axiom::Domain {
            property: dim.extent.clone(),
            class: dim.part_class.clone(),
        },
        Axiom::Range {
            property: dim.extent.clone(),
            class: dim.context_class.clone(),
        },
        declare(&dim.part_of, EntityKind::ObjectProperty),
        Axiom::SubPropertyOf {
            sub: dim.part_of.clone(),
            sup: v.contextual_part_of.clone(),
            kind: PropertyKind::Object,
        },
        Axiom::Domain {
            property: dim.part_of.clone(),
            class: dim.part_class.clone(),
        },
    ]
}

/// Restricts the dimension's contextual object and datatype properties to
/// parts of that dimension.
pub fn dimension_restriction_axioms(v: &Vocabulary, dim: &ContextDimension) -> Vec<Axiom> {
    vec![
        declare(&dim.contextual_property, EntityKind::ObjectProperty),
        Axiom::SubPropertyOf {
            sub: dim.contextual_property.clone(),
            sup: v.contextual_property.clone(),
            kind: PropertyKind::Object,
        },
        Axiom::Domain {
            property: dim.contextual_property.clone(),
            class: dim.part_class.clone(),
        },
        Axiom::Range {
            property: dim.contextual_property.clone(),
            class: dim.part_class.clone(),
        },
        declare(&dim.contextual_datatype_property, EntityKind::DataProperty),
        Axiom::SubPropertyOf {
            sub: dim.contextual_datatype_property.clone(),
            sup: v.contextual_datatype_property.clone(),
            kind: PropertyKind::Data,
        },
        Axiom::Domain {
            property: dim.contextual_datatype_property.clone(),
            class: dim.part_class.clone(),
        },
    ]
}

/// Needed when parts are nested inside other parts.
pub fn transitivity_axiom(v: &Vocabulary) -> Axiom {
    Axiom::Transitive(v.contextual_part_of.clone())
}

/// Needed when every part carries exactly one (combined) extent.
pub fn functional_extent_axiom(v: &Vocabulary) -> Axiom {
    Axiom::Functional(v.contextual_extent.clone())
}

/// Mints the vocabulary of the combination of `dims`. Names are sorted, so
/// the result does not depend on input order: `{provenance, temporal}`
/// gives `Provenance_TemporalPart`, `provenance_temporalExtent`, and so on.
pub fn combined_dimension(
    v: &Vocabulary,
    dims: &[&ContextDimension],
) -> Result<ContextDimension, VocabError> {
    if dims.len() < 2 {
        return Err(VocabError::TooFewDimensions(dims.len()));
    }
    let mut names: Vec<&str> = dims.iter().map(|d| d.name()).collect();
    names.sort_unstable();
    names.dedup();
    if names.len() < 2 {
        return Err(VocabError::TooFewDimensions(names.len()));
    }
    let name = names.join("_");
    let cap: Vec<String> = names.iter().map(|n| capitalize(n)).collect();
    let cap = cap.join("_");
    let ns = &v.combined_namespace;
    let mk = |local: String| Iri::new(format!("{ns}{local}")).map_err(VocabError::from);
    ContextDimension::new(
        name.clone(),
        mk(format!("{cap}Part"))?,
        mk(format!("{cap}Context"))?,
        mk(format!("{name}PartOf"))?,
        mk(format!("{name}Extent"))?,
        mk(format!("{name}Property"))?,
        mk(format!("{name}DatatypeProperty"))?,
    )
}

/// Links a combined dimension to each member so that queries and reasoning
/// written against the members also see combined parts.
pub fn combined_dimension_module(
    dims: &[&ContextDimension],
    combined: &ContextDimension,
) -> Result<Vec<Axiom>, VocabError> {
    if dims.len() < 2 {
        return Err(VocabError::TooFewDimensions(dims.len()));
    }
    let mut out = vec![
        declare(&combined.part_class, EntityKind::Class),
        declare(&combined.context_class, EntityKind::Class),
        declare(&combined.extent, EntityKind::ObjectProperty),
        declare(&combined.part_of, EntityKind::ObjectProperty),
        Axiom::Domain {
            property: combined.extent.clone(),
            class: combined.part_class.clone(),
        },
        Axiom::Range {
            property: combined.extent.clone(),
            class: combined.context_class.clone(),
        },
    ];
    for d in dims {
        out.push(Axiom::SubClassOf {
            sub: combined.part_class.clone(),
            sup: d.part_class.clone(),
        });
        out.push(Axiom::SubClassOf {
            sub: combined.context_class.clone(),
            sup: d.context_class.clone(),
        });
        out.push(Axiom::SubPropertyOf {
            sub: combined.extent.clone(),
            sup: d.extent.clone(),
            kind: PropertyKind::Object,
        });
        out.push(Axiom::SubPropertyOf {
            sub: combined.part_of.clone(),
            sup: d.part_of.clone(),
            kind: PropertyKind::Object,
        });
    }
    dedup_in_order(&mut out);
    Ok(out)
}

/// Defines `contextual` as a stand-in for a constrained `original`
/// property: its domain and range constraints are pushed through
/// `contextualPartOf` onto the entities the parts belong to, instead of
/// landing on the parts themselves.
pub fn related_contextual_property(
    v: &Vocabulary,
    original: &Iri,
    contextual: &Iri,
    domain: Option<&Iri>,
    range: Option<&Iri>,
    fluent_super: &Iri,
) -> Result<Vec<Axiom>, VocabError> {
    if original == contextual {
        return Err(VocabError::SameProperty(contextual.clone()));
    }
    let mut out = vec![Axiom::SubPropertyOf {
        sub: contextual.clone(),
        sup: fluent_super.clone(),
        kind: PropertyKind::Object,
    }];
    if let Some(class) = domain {
        out.push(Axiom::AllValuesFromDomain {
            property: contextual.clone(),
            via: v.contextual_part_of.clone(),
            class: class.clone(),
        });
    }
    if let Some(class) = range {
        out.push(Axiom::AllValuesFromRange {
            property: contextual.clone(),
            via: v.contextual_part_of.clone(),
            class: class.clone(),
        });
    }
    Ok(out)
}

pub(crate) fn dedup_in_order(axioms: &mut Vec<Axiom>) {
    let mut seen = alloc::collections::BTreeSet::new();
    axioms.retain(|a| seen.insert(a.clone()));
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeSet;

    fn nd() -> Vocabulary {
        Vocabulary::default()
    }

    fn set(v: &[Axiom]) -> BTreeSet<Axiom> {
        v.iter().cloned().collect()
    }

    #[test]
    fn core_module_contents() {
        let v = nd();
        let core = core_axioms(&v);
        assert!(core.contains(&Axiom::DisjointClasses(
            v.context.clone(),
            v.contextual_part.clone()
        )));
        assert!(core.contains(&Axiom::Functional(v.contextual_part_of.clone())));
        assert!(!core.contains(&Axiom::Functional(v.contextual_extent.clone())));
        assert!(!core.contains(&functional_extent_axiom(&v)));
        assert!(core.contains(&Axiom::RangeComplementOf {
            property: v.contextual_part_of.clone(),
            class: v.context.clone()
        }));
        assert_eq!(core.len(), 13);
    }

    #[test]
    fn datatype_module() {
        let v = nd();
        let dt = datatype_axioms(&v);
        assert_eq!(dt.len(), 2);
        assert!(dt.contains(&Axiom::Domain {
            property: v.contextual_datatype_property.clone(),
            class: v.contextual_part.clone()
        }));
        assert!(set(&dt).is_disjoint(&set(&core_axioms(&v))));
    }

    #[test]
    fn temporal_module_mirrors_4dfluents() {
        let v = nd();
        let t = ContextDimension::temporal();
        let m = dimension_module(&v, &t);
        assert!(m.contains(&Axiom::SubClassOf {
            sub: t.part_class.clone(),
            sup: v.contextual_part.clone()
        }));
        assert!(m.contains(&Axiom::SubPropertyOf {
            sub: t.extent.clone(),
            sup: v.contextual_extent.clone(),
            kind: PropertyKind::Object
        }));
        assert!(m.contains(&Axiom::SubPropertyOf {
            sub: t.part_of.clone(),
            sup: v.contextual_part_of.clone(),
            kind: PropertyKind::Object
        }));
    }

    /// Renaming the temporal IRIs to the provenance ones must map the
    /// temporal module onto the provenance module exactly.
    #[test]
    fn dimension_modules_are_isomorphic() {
        let v = nd();
        let t = ContextDimension::temporal();
        let p = ContextDimension::provenance();
        let mt = dimension_module(&v, &t);
        let mp = dimension_module(&v, &p);
        assert_eq!(mt.len(), mp.len());
        let rename = |i: &Iri| -> Iri {
            t.iris()
                .iter()
                .position(|x| *x == i)
                .map(|k| p.iris()[k].clone())
                .unwrap_or_else(|| i.clone())
        };
        let renamed: Vec<Axiom> = mt
            .iter()
            .map(|a| match a {
                Axiom::SubClassOf { sub, sup } => Axiom::SubClassOf {
                    sub: rename(sub),
                    sup: rename(sup),
                },
                Axiom::SubPropertyOf { sub, sup, kind } => Axiom::SubPropertyOf {
                    sub: rename(sub),
                    sup: rename(sup),
                    kind: *kind,
                },
                Axiom::Domain { property, class } => Axiom::Domain {
                    property: rename(property),
                    class: rename(class),
                },
                Axiom::Range { property, class } => Axiom::Range {
                    property: rename(property),
                    class: rename(class),
                },
                Axiom::Declaration { entity, kind } => Axiom::Declaration {
                    entity: rename(entity),
                    kind: *kind,
                },
                other => other.clone(),
            })
            .collect();
        assert_eq!(renamed, mp);
        assert!(set(&mt).is_disjoint(&set(&mp)));
    }

    #[test]
    fn restriction_axioms() {
        let v = nd();
        let t = ContextDimension::temporal();
        let r = dimension_restriction_axioms(&v, &t);
        assert!(r.contains(&Axiom::Domain {
            property: t.contextual_property.clone(),
            class: t.part_class.clone()
        }));
        assert!(r.contains(&Axiom::Range {
            property: t.contextual_property.clone(),
            class: t.part_class.clone()
        }));
        assert!(r.contains(&Axiom::Domain {
            property: t.contextual_datatype_property.clone(),
            class: t.part_class.clone()
        }));
        // two declarations, two subproperty links, three domain/range
        assert_eq!(r.len(), 7);
        assert_eq!(dimension_restriction_axioms(&v, &ContextDimension::provenance()).len(), 7);
    }

    #[test]
    fn constant_axioms() {
        let v = nd();
        assert_eq!(transitivity_axiom(&v), Axiom::Transitive(v.contextual_part_of.clone()));
        assert_eq!(transitivity_axiom(&v), transitivity_axiom(&v));
        assert_eq!(functional_extent_axiom(&v), Axiom::Functional(v.contextual_extent.clone()));
    }

    #[test]
    fn combined_module() {
        let v = nd();
        let t = ContextDimension::temporal();
        let p = ContextDimension::provenance();
        let c = combined_dimension(&v, &[&t, &p]).unwrap();
        assert_eq!(c, combined_dimension(&v, &[&p, &t]).unwrap());
        assert_eq!(
            c.part_class.as_str(),
            "http://purl.org/NET/ndfluents/combined#Provenance_TemporalPart"
        );
        let m = combined_dimension_module(&[&t, &p], &c).unwrap();
        assert!(m.contains(&Axiom::SubClassOf {
            sub: c.part_class.clone(),
            sup: t.part_class.clone()
        }));
        assert!(m.contains(&Axiom::SubClassOf {
            sub: c.part_class.clone(),
            sup: p.part_class.clone()
        }));
        let declarations = m
            .iter()
            .filter(|a| matches!(a, Axiom::Declaration { .. }))
            .count();
        assert_eq!(m.len(), 2 + 4 * 2 + declarations);

        let trust = ContextDimension::standard("trust", "http://ex.org/trust#", "Trust").unwrap();
        let c3 = combined_dimension(&v, &[&t, &p, &trust]).unwrap();
        let m3 = combined_dimension_module(&[&t, &p, &trust], &c3).unwrap();
        assert_eq!(m3.len(), 2 + 4 * 3 + 4);

        assert_eq!(
            combined_dimension_module(&[&t], &c),
            Err(VocabError::TooFewDimensions(1))
        );
        assert!(combined_dimension(&v, &[&t]).is_err());
    }

    #[test]
    fn related_property() {
        let v = nd();
        let ex = |l: &str| Iri::new(format!("http://ex.org/{l}")).unwrap();
        let fluent = ContextDimension::temporal().contextual_property;
        let r = related_contextual_property(
            &v,
            &ex("capitalOf"),
            &ex("contextualCapitalOf"),
            Some(&ex("City")),
            Some(&ex("Country")),
            &fluent,
        )
        .unwrap();
        assert!(r.contains(&Axiom::AllValuesFromDomain {
            property: ex("contextualCapitalOf"),
            via: v.contextual_part_of.clone(),
            class: ex("City")
        }));
        let bare =
            related_contextual_property(&v, &ex("capitalOf"), &ex("cc"), None, None, &fluent)
                .unwrap();
        assert_eq!(
            bare,
            vec![Axiom::SubPropertyOf {
                sub: ex("cc"),
                sup: fluent.clone(),
                kind: PropertyKind::Object
            }]
        );
        assert!(related_contextual_property(
            &v,
            &ex("capitalOf"),
            &ex("capitalOf"),
            None,
            None,
            &fluent
        )
        .is_err());
    }

    #[test]
    fn generated_modules_touch_core_only_through_links() {
        let v = nd();
        let core: BTreeSet<&Iri> = [
            &v.context,
            &v.contextual_part,
            &v.contextual_property,
            &v.contextual_extent,
            &v.contextual_part_of,
            &v.contextual_datatype_property,
        ]
        .into_iter()
        .collect();
        let t = ContextDimension::temporal();
        let mut axioms = dimension_module(&v, &t);
        axioms.extend(dimension_restriction_axioms(&v, &t));
        for a in &axioms {
            let touches = match a {
                Axiom::SubClassOf { sub, .. } | Axiom::SubPropertyOf { sub, .. } => {
                    core.contains(sub)
                }
                Axiom::Domain { property, class } | Axiom::Range { property, class } => {
                    core.contains(property) || core.contains(class)
                }
                Axiom::Declaration { entity, .. } => core.contains(entity),
                _ => true,
            };
            assert!(!touches, "{a} references a core term directly");
        }
    }
}
