//! Fixed vocabularies and the per-dimension naming scheme.

use alloc::format;
use alloc::string::String;

use crate::error::VocabError;
use crate::term::Iri;

pub mod rdf {
    pub const NS: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
    pub const TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
    pub const LANG_STRING: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString";
    pub const STATEMENT: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#Statement";
    pub const SUBJECT: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#subject";
    pub const PREDICATE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#predicate";
    pub const OBJECT: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#object";
    pub const SINGLETON_PROPERTY_OF: &str =
        "http://www.w3.org/1999/02/22-rdf-syntax-ns#singletonPropertyOf";
}

pub mod rdfs {
    pub const NS: &str = "http://www.w3.org/2000/01/rdf-schema#";
    pub const SUB_CLASS_OF: &str = "http://www.w3.org/2000/01/rdf-schema#subClassOf";
    pub const SUB_PROPERTY_OF: &str = "http://www.w3.org/2000/01/rdf-schema#subPropertyOf";
    pub const DOMAIN: &str = "http://www.w3.org/2000/01/rdf-schema#domain";
    pub const RANGE: &str = "http://www.w3.org/2000/01/rdf-schema#range";
    pub const LABEL: &str = "http://www.w3.org/2000/01/rdf-schema#label";
}

pub mod owl {
    pub const NS: &str = "http://www.w3.org/2002/07/owl#";
    pub const CLASS: &str = "http://www.w3.org/2002/07/owl#Class";
    pub const OBJECT_PROPERTY: &str = "http://www.w3.org/2002/07/owl#ObjectProperty";
    pub const DATATYPE_PROPERTY: &str = "http://www.w3.org/2002/07/owl#DatatypeProperty";
    pub const FUNCTIONAL_PROPERTY: &str = "http://www.w3.org/2002/07/owl#FunctionalProperty";
    pub const INVERSE_FUNCTIONAL_PROPERTY: &str =
        "http://www.w3.org/2002/07/owl#InverseFunctionalProperty";
    pub const TRANSITIVE_PROPERTY: &str = "http://www.w3.org/2002/07/owl#TransitiveProperty";
    pub const DISJOINT_WITH: &str = "http://www.w3.org/2002/07/owl#disjointWith";
    pub const COMPLEMENT_OF: &str = "http://www.w3.org/2002/07/owl#complementOf";
    pub const RESTRICTION: &str = "http://www.w3.org/2002/07/owl#Restriction";
    pub const ON_PROPERTY: &str = "http://www.w3.org/2002/07/owl#onProperty";
    pub const ALL_VALUES_FROM: &str = "http://www.w3.org/2002/07/owl#allValuesFrom";
    pub const SAME_AS: &str = "http://www.w3.org/2002/07/owl#sameAs";
}

pub mod xsd {
    pub const NS: &str = "http://www.w3.org/2001/XMLSchema#";
    pub const STRING: &str = "http://www.w3.org/2001/XMLSchema#string";
    pub const INTEGER: &str = "http://www.w3.org/2001/XMLSchema#integer";
    pub const DECIMAL: &str = "http://www.w3.org/2001/XMLSchema#decimal";
    pub const DOUBLE: &str = "http://www.w3.org/2001/XMLSchema#double";
    pub const FLOAT: &str = "http://www.w3.org/2001/XMLSchema#float";
    pub const BOOLEAN: &str = "http://www.w3.org/2001/XMLSchema#boolean";
}

/// OWL-Time terms used by interval descriptions.
pub mod time {
    pub const NS: &str = "http://www.w3.org/2006/time#";
    pub const INTERVAL: &str = "http://www.w3.org/2006/time#Interval";
    pub const YEAR: &str = "http://www.w3.org/2006/time#year";
    pub const INTERVAL_DURING: &str = "http://www.w3.org/2006/time#intervalDuring";
    pub const HAS_DATE_TIME_DESCRIPTION: &str = "http://www.w3.org/2006/time#hasDateTimeDescription";
    pub const DATE_TIME_DESCRIPTION: &str = "http://www.w3.org/2006/time#DateTimeDescription";
}

/// PROV-O terms used by provenance descriptions.
pub mod prov {
    pub const NS: &str = "http://www.w3.org/ns/prov#";
    pub const ACTIVITY: &str = "http://www.w3.org/ns/prov#Activity";
    pub const AGENT: &str = "http://www.w3.org/ns/prov#Agent";
    pub const WAS_ASSOCIATED_WITH: &str = "http://www.w3.org/ns/prov#wasAssociatedWith";
}

pub const DEFAULT_ND_NAMESPACE: &str = "http://purl.org/NET/ndfluents#";
pub const DEFAULT_COMBINED_NAMESPACE: &str = "http://purl.org/NET/ndfluents/combined#";
pub const DEFAULT_CONTEXT_NAMESPACE: &str = "http://purl.org/NET/ndfluents/context#";
pub const TEMPORAL_NAMESPACE: &str = "http://purl.org/NET/ndfluents/4dFluents#";
pub const PROVENANCE_NAMESPACE: &str = "http://purl.org/NET/ndfluents/provenance#";

pub(crate) fn iri(s: &str) -> Iri {
    Iri::from_static(s)
}

/// The core classes and properties, plus the handful of artifact terms
/// used for combined contexts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vocabulary {
    pub context: Iri,
    pub contextual_part: Iri,
    pub contextual_property: Iri,
    pub contextual_extent: Iri,
    pub contextual_part_of: Iri,
    pub contextual_datatype_property: Iri,
    /// Namespace used to mint combined dimension terms.
    pub combined_namespace: String,
    /// Namespace for minted combined context individuals.
    pub context_namespace: String,
    /// Links a combined context to each of its member contexts.
    pub member_context: Iri,
}

impl Vocabulary {
    pub fn with_namespace(ns: &str) -> Result<Self, VocabError> {
        Self::with_namespaces(ns, DEFAULT_COMBINED_NAMESPACE, DEFAULT_CONTEXT_NAMESPACE)
    }

    pub fn with_namespaces(
        ns: &str,
        combined_ns: &str,
        context_ns: &str,
    ) -> Result<Self, VocabError> {
        let mk = |local: &str| Iri::new(format!("{ns}{local}")).map_err(VocabError::from);
        Iri::new(format!("{combined_ns}x"))?;
        Iri::new(format!("{context_ns}x"))?;
        Ok(Vocabulary {
            context: mk("Context")?,
            contextual_part: mk("ContextualPart")?,
            contextual_property: mk("contextualProperty")?,
            contextual_extent: mk("contextualExtent")?,
            contextual_part_of: mk("contextualPartOf")?,
            contextual_datatype_property: mk("contextualDatatypeProperty")?,
            combined_namespace: combined_ns.into(),
            context_namespace: context_ns.into(),
            member_context: Iri::new(format!("{combined_ns}memberContext"))?,
        })
    }
}

impl Default for Vocabulary {
    fn default() -> Self {
        Vocabulary::with_namespace(DEFAULT_ND_NAMESPACE).expect("default namespace is absolute")
    }
}

/// The vocabulary of one context dimension.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ContextDimension {
    name: String,
    pub part_class: Iri,
    pub context_class: Iri,
    pub part_of: Iri,
    pub extent: Iri,
    pub contextual_property: Iri,
    pub contextual_datatype_property: Iri,
}

impl ContextDimension {
    pub fn new(
        name: impl Into<String>,
        part_class: Iri,
        context_class: Iri,
        part_of: Iri,
        extent: Iri,
        contextual_property: Iri,
        contextual_datatype_property: Iri,
    ) -> Result<Self, VocabError> {
        let name = name.into();
        if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '-') {
            return Err(VocabError::InvalidDimensionName(name));
        }
        let all = [
            &part_class,
            &context_class,
            &part_of,
            &extent,
            &contextual_property,
            &contextual_datatype_property,
        ];
        for (i, a) in all.iter().enumerate() {
            if all[i + 1..].contains(a) {
                return Err(VocabError::DuplicateDimensionIri {
                    dimension: name,
                    iri: (*a).clone(),
                });
            }
        }
        Ok(ContextDimension {
            name,
            part_class,
            context_class,
            part_of,
            extent,
            contextual_property,
            contextual_datatype_property,
        })
    }

    /// Derives every term from the dimension name: `Provenance` + `Part`,
    /// `provenancePartOf`, `provenanceExtent`, `provenanceProperty`,
    /// `provenanceDatatypeProperty`, all under `ns`.
    pub fn standard(name: &str, ns: &str, context_class: &str) -> Result<Self, VocabError> {
        let cap = capitalize(name);
        let mk = |local: String| Iri::new(format!("{ns}{local}")).map_err(VocabError::from);
        ContextDimension::new(
            name,
            mk(format!("{cap}Part"))?,
            mk(context_class.into())?,
            mk(format!("{name}PartOf"))?,
            mk(format!("{name}Extent"))?,
            mk(format!("{name}Property"))?,
            mk(format!("{name}DatatypeProperty"))?,
        )
    }

    /// The 4dFluents names: `TemporalPart`, `Interval`, `temporalPartOf`,
    /// `temporalExtent`, `fluentProperty`, `fluentDatatypeProperty`.
    pub fn temporal() -> Self {
        let ns = TEMPORAL_NAMESPACE;
        let mk = |l: &str| Iri::from_static(&format!("{ns}{l}"));
        ContextDimension::new(
            "temporal",
            mk("TemporalPart"),
            mk("Interval"),
            mk("temporalPartOf"),
            mk("temporalExtent"),
            mk("fluentProperty"),
            mk("fluentDatatypeProperty"),
        )
        .expect("distinct constants")
    }

    pub fn provenance() -> Self {
        ContextDimension::standard("provenance", PROVENANCE_NAMESPACE, "Provenance")
            .expect("distinct constants")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn iris(&self) -> [&Iri; 6] {
        [
            &self.part_class,
            &self.context_class,
            &self.part_of,
            &self.extent,
            &self.contextual_property,
            &self.contextual_datatype_property,
        ]
    }
}

pub(crate) fn capitalize(s: &str) -> String {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) => c.to_uppercase().chain(chars).collect(),
        None => String::new(),
    }
}
