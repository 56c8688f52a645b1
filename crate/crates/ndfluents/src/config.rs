//! Run configuration in TOML.
//!
//! ```toml
//! namespace = "http://purl.org/NET/ndfluents#"
//! model = "multi-context-part"   # or contexts-in-context, combined-extent
//! order = ["temporal", "provenance"]
//! minting = "suffix"             # or hash
//! separator = "@"
//! predicates = "related"         # or keep
//! datatype_axioms = true
//! restriction_axioms = true
//! same_extent = true
//!
//! [[dimension]]
//! name = "temporal"              # built in: temporal, provenance
//!
//! [[dimension]]
//! name = "trust"
//! namespace = "http://example.org/trust#"
//! context_class = "TrustLevel"
//! ```
//!
//! A dimension either names a built-in, gives a `namespace` (terms are
//! derived from the name) or spells out all six IRIs. Without any
//! `[[dimension]]` table the temporal and provenance dimensions are used.

use std::collections::BTreeMap;

use ndfluents_core::vocab::{
    DEFAULT_COMBINED_NAMESPACE, DEFAULT_CONTEXT_NAMESPACE, DEFAULT_ND_NAMESPACE,
};
use ndfluents_core::{
    CombinationModel, ContextDimension, Contextualizer, Iri, MintingPolicy, OntologyOptions,
    PredicatePolicy, Registry, ValidationOptions, VocabError, Vocabulary,
};
use serde::Deserialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error(transparent)]
    Toml(#[from] toml::de::Error),
    #[error(transparent)]
    Vocab(#[from] VocabError),
    #[error(
        "unknown model `{0}` (expected contexts-in-context, multi-context-part or combined-extent)"
    )]
    Model(String),
    #[error("unknown minting policy `{0}` (expected suffix or hash)")]
    Minting(String),
    #[error("unknown predicate policy `{0}` (expected related or keep)")]
    Predicates(String),
    #[error("dimension `{0}`: {1}")]
    Dimension(String, String),
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DimensionConfig {
    pub name: String,
    pub namespace: Option<String>,
    pub context_class: Option<String>,
    pub part_class: Option<String>,
    pub part_of: Option<String>,
    pub extent: Option<String>,
    pub property: Option<String>,
    pub datatype_property: Option<String>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub namespace: Option<String>,
    pub combined_namespace: Option<String>,
    pub context_namespace: Option<String>,
    pub model: Option<String>,
    pub order: Option<Vec<String>>,
    pub minting: Option<String>,
    pub separator: Option<String>,
    pub predicates: Option<String>,
    /// Original predicate IRI to related predicate IRI.
    #[serde(default)]
    pub predicate_overrides: BTreeMap<String, String>,
    pub datatype_axioms: Option<bool>,
    pub restriction_axioms: Option<bool>,
    pub same_extent: Option<bool>,
    #[serde(default, rename = "dimension")]
    pub dimensions: Vec<DimensionConfig>,
}

/// Everything a run needs, resolved from a [`Config`].
#[derive(Debug, Clone)]
pub struct Settings {
    pub registry: Registry,
    pub model: CombinationModel,
    pub minting: MintingPolicy,
    pub predicates: PredicatePolicy,
    pub ontology: OntologyOptions,
    pub validation: ValidationOptions,
}

impl Settings {
    pub fn contextualizer(&self) -> Contextualizer {
        Contextualizer::new(self.registry.clone(), self.model.clone())
            .with_minting(self.minting.clone())
            .with_predicates(self.predicates.clone())
    }

    /// Prefix names for Turtle output: the standard vocabularies, the core
    /// namespace and one per dimension namespace.
    pub fn prefixes(&self) -> Vec<(String, String)> {
        let mut out: Vec<(String, String)> = [
            ("rdf", "http://www.w3.org/1999/02/22-rdf-syntax-ns#"),
            ("rdfs", "http://www.w3.org/2000/01/rdf-schema#"),
            ("owl", "http://www.w3.org/2002/07/owl#"),
            ("xsd", "http://www.w3.org/2001/XMLSchema#"),
        ]
        .iter()
        .map(|(p, ns)| (p.to_string(), ns.to_string()))
        .collect();
        let vocab = self.registry.vocab();
        let mut push = |p: String, ns: &str| {
            if !ns.is_empty() && !out.iter().any(|(q, n)| *q == p || n == ns) {
                out.push((p, ns.to_owned()));
            }
        };
        push("nd".into(), vocab.context.namespace());
        push("ndc".into(), &vocab.combined_namespace);
        push("ctx".into(), &vocab.context_namespace);
        for d in self.registry.dimensions() {
            push(d.name().to_owned(), d.part_class.namespace());
        }
        out
    }
}

fn model(
    name: &str,
    order: Option<&[String]>,
    registry: &Registry,
) -> Result<CombinationModel, ConfigError> {
    match name {
        "contexts-in-context" | "A" | "a" => Ok(CombinationModel::ContextsInContext {
            order: match order {
                Some(o) => o.to_vec(),
                None => registry.dimensions().map(|d| d.name().to_owned()).collect(),
            },
        }),
        "multi-context-part" | "B" | "b" => Ok(CombinationModel::MultiContextPart),
        "combined-extent" | "C" | "c" => Ok(CombinationModel::CombinedExtent),
        other => Err(ConfigError::Model(other.into())),
    }
}

fn dimension(d: &DimensionConfig) -> Result<ContextDimension, ConfigError> {
    let explicit = [
        &d.part_class,
        &d.part_of,
        &d.extent,
        &d.property,
        &d.datatype_property,
    ];
    let err = |m: &str| ConfigError::Dimension(d.name.clone(), m.into());
    if explicit.iter().all(|f| f.is_some()) {
        let mk = |s: &Option<String>| -> Result<Iri, ConfigError> {
            let s = s.as_deref().ok_or_else(|| err("missing IRI"))?;
            Iri::new(s).map_err(|e| ConfigError::Vocab(e.into()))
        };
        return Ok(ContextDimension::new(
            d.name.clone(),
            mk(&d.part_class)?,
            mk(&d.context_class)?,
            mk(&d.part_of)?,
            mk(&d.extent)?,
            mk(&d.property)?,
            mk(&d.datatype_property)?,
        )?);
    }
    if explicit.iter().any(|f| f.is_some()) {
        return Err(err("give all of part_class, context_class, part_of, extent, property and datatype_property, or a namespace"));
    }
    match (&d.namespace, d.name.as_str()) {
        (Some(ns), _) => {
            let class = d.context_class.clone().unwrap_or_else(|| {
                let mut c = d.name.clone();
                c[..1].make_ascii_uppercase();
                c
            });
            Ok(ContextDimension::standard(&d.name, ns, &class)?)
        }
        (None, "temporal") => Ok(ContextDimension::temporal()),
        (None, "provenance") => Ok(ContextDimension::provenance()),
        (None, _) => Err(err("not a built-in dimension; give a namespace")),
    }
}

impl Config {
    pub fn from_toml(text: &str) -> Result<Config, ConfigError> {
        Ok(toml::from_str(text)?)
    }

    pub fn settings(&self) -> Result<Settings, ConfigError> {
        let vocab = Vocabulary::with_namespaces(
            self.namespace.as_deref().unwrap_or(DEFAULT_ND_NAMESPACE),
            self.combined_namespace
                .as_deref()
                .unwrap_or(DEFAULT_COMBINED_NAMESPACE),
            self.context_namespace
                .as_deref()
                .unwrap_or(DEFAULT_CONTEXT_NAMESPACE),
        )?;
        let dims = if self.dimensions.is_empty() {
            vec![ContextDimension::temporal(), ContextDimension::provenance()]
        } else {
            self.dimensions
                .iter()
                .map(dimension)
                .collect::<Result<_, _>>()?
        };
        let registry = Registry::new(vocab, dims)?;
        let model = model(
            self.model.as_deref().unwrap_or("multi-context-part"),
            self.order.as_deref(),
            &registry,
        )?;
        let minting = match self.minting.as_deref().unwrap_or("suffix") {
            "suffix" => MintingPolicy::Suffix {
                separator: self.separator.clone().unwrap_or_else(|| "@".into()),
            },
            "hash" => MintingPolicy::Hash,
            other => return Err(ConfigError::Minting(other.into())),
        };
        let predicates = match self.predicates.as_deref().unwrap_or("related") {
            "related" => {
                let mut overrides = BTreeMap::new();
                for (k, v) in &self.predicate_overrides {
                    let k = Iri::new(k.as_str()).map_err(|e| ConfigError::Vocab(e.into()))?;
                    let v = Iri::new(v.as_str()).map_err(|e| ConfigError::Vocab(e.into()))?;
                    overrides.insert(k, v);
                }
                PredicatePolicy::Related { overrides }
            }
            "keep" => PredicatePolicy::Keep,
            other => return Err(ConfigError::Predicates(other.into())),
        };
        Ok(Settings {
            registry,
            model,
            minting,
            predicates,
            ontology: OntologyOptions {
                datatype_axioms: self.datatype_axioms.unwrap_or(true),
                restriction_axioms: self.restriction_axioms.unwrap_or(true),
            },
            validation: ValidationOptions {
                same_extent: self.same_extent.unwrap_or(true),
            },
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let s = Config::default().settings().unwrap();
        assert_eq!(s.model, CombinationModel::MultiContextPart);
        assert_eq!(s.registry.len(), 2);
        assert!(s.ontology.datatype_axioms && s.ontology.restriction_axioms);
        assert!(s.validation.same_extent);
    }

    #[test]
    fn full_file() {
        let c = Config::from_toml(
            r#"
model = "contexts-in-context"
order = ["trust", "temporal"]
minting = "hash"
restriction_axioms = false

[[dimension]]
name = "temporal"

[[dimension]]
name = "trust"
namespace = "http://example.org/trust#"
context_class = "TrustLevel"
"#,
        )
        .unwrap();
        let s = c.settings().unwrap();
        assert_eq!(
            s.model,
            CombinationModel::ContextsInContext {
                order: vec!["trust".into(), "temporal".into()]
            }
        );
        assert_eq!(s.minting, MintingPolicy::Hash);
        assert!(!s.ontology.restriction_axioms);
        assert_eq!(
            s.registry.get("trust").unwrap().context_class.as_str(),
            "http://example.org/trust#TrustLevel"
        );
        assert!(s.prefixes().iter().any(|(p, _)| p == "trust"));
    }

    #[test]
    fn rejects_bad_values() {
        assert!(matches!(
            Config::from_toml("model = \"D\"").unwrap().settings(),
            Err(ConfigError::Model(_))
        ));
        assert!(Config::from_toml("colour = 1").is_err());
        let dup = "[[dimension]]\nname = \"temporal\"\n[[dimension]]\nname = \"temporal\"\n";
        assert!(Config::from_toml(dup).unwrap().settings().is_err());
        let unknown = "[[dimension]]\nname = \"space\"\n";
        assert!(matches!(
            Config::from_toml(unknown).unwrap().settings(),
            Err(ConfigError::Dimension(..))
        ));
    }
}
