use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::VocabError;
use crate::modules::combined_dimension;
use crate::term::Iri;
use crate::vocab::{iri, rdf, ContextDimension, Vocabulary};

/// Upper bound on registered dimensions; every subset of two or more is a
/// potential combined dimension.
pub const MAX_DIMENSIONS: usize = 12;

/// The registered dimensions together with the core vocabulary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Registry {
    vocab: Vocabulary,
    dims: BTreeMap<String, ContextDimension>,
}

impl Registry {
    /// Dimension names must be unique and no IRI may be shared between two
    /// dimensions or with the core vocabulary.
    pub fn new(
        vocab: Vocabulary,
        dims: impl IntoIterator<Item = ContextDimension>,
    ) -> Result<Self, VocabError> {
        let mut map = BTreeMap::new();
        let mut owner: BTreeMap<Iri, String> = BTreeMap::new();
        for core in [
            &vocab.context,
            &vocab.contextual_part,
            &vocab.contextual_property,
            &vocab.contextual_extent,
            &vocab.contextual_part_of,
            &vocab.contextual_datatype_property,
            &vocab.member_context,
        ] {
            owner.insert(core.clone(), String::from("core"));
        }
        for d in dims {
            if map.contains_key(d.name()) {
                return Err(VocabError::DuplicateDimension(d.name().into()));
            }
            for i in d.iris() {
                if let Some(first) = owner.insert(i.clone(), d.name().into()) {
                    return Err(VocabError::SharedDimensionIri {
                        iri: i.clone(),
                        first,
                        second: d.name().into(),
                    });
                }
            }
            map.insert(d.name().into(), d);
        }
        if map.len() > MAX_DIMENSIONS {
            return Err(VocabError::TooManyDimensions(map.len()));
        }
        Ok(Registry { vocab, dims: map })
    }

    /// Temporal and provenance dimensions over the default vocabulary.
    pub fn temporal_provenance() -> Self {
        Registry::new(
            Vocabulary::default(),
            [ContextDimension::temporal(), ContextDimension::provenance()],
        )
        .expect("built-in dimensions are consistent")
    }

    pub fn vocab(&self) -> &Vocabulary {
        &self.vocab
    }

    pub fn get(&self, name: &str) -> Option<&ContextDimension> {
        self.dims.get(name)
    }

    /// Registered dimensions, ordered by name.
    pub fn dimensions(&self) -> impl Iterator<Item = &ContextDimension> + '_ {
        self.dims.values()
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    /// The combined dimension for a set of at least two registered names.
    pub fn combined(&self, names: &[&str]) -> Result<ContextDimension, VocabError> {
        let dims: Vec<&ContextDimension> = names
            .iter()
            .map(|n| {
                self.dims
                    .get(*n)
                    .ok_or_else(|| VocabError::InvalidDimensionName((*n).into()))
            })
            .collect::<Result<_, _>>()?;
        combined_dimension(&self.vocab, &dims)
    }

    /// Every combined dimension over two or more registered dimensions,
    /// paired with its member names.
    pub fn all_combinations(&self) -> Vec<(Vec<&str>, ContextDimension)> {
        let names: Vec<&str> = self.dims.keys().map(String::as_str).collect();
        let mut out = Vec::new();
        for mask in 1u32..(1u32 << names.len()) {
            if mask.count_ones() < 2 {
                continue;
            }
            let members: Vec<&str> = names
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, n)| *n)
                .collect();
            let combined = self.combined(&members).expect("registered names");
            out.push((members, combined));
        }
        out
    }

    /// What each scaffolding IRI means, for reading graphs back.
    pub fn roles(&self) -> Roles {
        let mut roles = Roles {
            part_of: BTreeSet::new(),
            extent: BTreeMap::new(),
            part_classes: BTreeSet::new(),
            context_class_dim: BTreeMap::new(),
            member: self.vocab.member_context.clone(),
            rdf_type: iri(rdf::TYPE),
        };
        roles.part_of.insert(self.vocab.contextual_part_of.clone());
        roles
            .extent
            .insert(self.vocab.contextual_extent.clone(), ExtentRole::Core);
        roles.part_classes.insert(self.vocab.contextual_part.clone());
        for d in self.dims.values() {
            roles.part_of.insert(d.part_of.clone());
            roles
                .extent
                .insert(d.extent.clone(), ExtentRole::Dimension(d.name().into()));
            roles.part_classes.insert(d.part_class.clone());
            roles
                .context_class_dim
                .insert(d.context_class.clone(), d.name().into());
        }
        for (_, c) in self.all_combinations() {
            roles.part_of.insert(c.part_of.clone());
            roles.extent.insert(c.extent.clone(), ExtentRole::Combined);
            roles.part_classes.insert(c.part_class.clone());
        }
        roles
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtentRole {
    /// The extent property of a registered dimension.
    Dimension(String),
    /// A combined extent; the dimensions come from the member contexts.
    Combined,
    /// `contextualExtent` itself; the dimension comes from the context's type.
    Core,
}

#[derive(Debug, Clone)]
pub struct Roles {
    pub part_of: BTreeSet<Iri>,
    pub extent: BTreeMap<Iri, ExtentRole>,
    pub part_classes: BTreeSet<Iri>,
    pub context_class_dim: BTreeMap<Iri, String>,
    pub member: Iri,
    pub rdf_type: Iri,
}

impl Roles {
    /// Predicates that build parts rather than state facts.
    pub fn is_scaffolding(&self, p: &Iri) -> bool {
        *p == self.rdf_type
            || *p == self.member
            || self.part_of.contains(p)
            || self.extent.contains_key(p)
    }
}
