//! Multi-dimensional contextual parts for RDF.
//!
//! A fact such as "Paris is the capital of France, since 508, according to
//! Wikipedia" is stated between *contextual parts* of Paris and France. Each
//! part is linked to its entity by a `contextualPartOf` subproperty and to
//! the context it lives in by a `contextualExtent` subproperty, one pair per
//! context dimension (time, provenance, trust, ...).
//!
//! This crate holds the allocation-only core:
//!
//! - [`term`] and [`graph`]: the RDF data model.
//! - [`vocab`], [`axiom`] and [`modules`]: the vocabulary and the ontology
//!   modules generated for each dimension and combination model.
//! - [`contextualize`]: rewriting annotated statements into parts, reading
//!   them back, and slicing a graph by context.
//! - [`baseline`]: reification and singleton-property encodings for size
//!   comparison.
//! - [`reasoner`]: forward-chaining saturation and pattern validation.
//! - [`query`]: basic graph patterns with grouping and aggregates.
//! - [`population`]: the world-population estimates use case.
//!
//! Parsing, serialization and the command line live in the `ndfluents`
//! crate.
#![no_std]

extern crate alloc;
#[cfg(any(test, feature = "std"))]
extern crate std;

pub mod axiom;
pub mod baseline;
pub mod contextualize;
pub mod decimal;
pub mod error;
pub mod graph;
pub mod mint;
pub mod modules;
pub mod parts;
pub mod population;
pub mod query;
pub mod reasoner;
pub mod registry;
pub mod term;
pub mod vocab;

pub use axiom::{Axiom, EntityKind, PropertyKind};
pub use contextualize::{
    AnnotatedStatement, CombinationModel, ContextAssignment, Contextualizer, OntologyModule,
    OntologyOptions, PredicatePolicy,
};
pub use error::{ContextError, IngestError, QueryError, TermError, VocabError};
pub use graph::Graph;
pub use mint::MintingPolicy;
pub use reasoner::{InferenceResult, Reasoner, ValidationOptions, Violation, ViolationKind};
pub use registry::Registry;
pub use term::{BlankNode, Iri, Literal, Term, Triple};
pub use vocab::{ContextDimension, Vocabulary};
