use alloc::string::String;

use thiserror::Error;

use crate::term::Iri;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("relative IRI `{0}` has no scheme")]
    RelativeIri(String),
    #[error("IRI `{iri}` contains forbidden character {found:?}")]
    InvalidIriChar { iri: String, found: char },
    #[error("invalid blank node label `{0}`")]
    InvalidBlankNode(String),
    #[error("invalid language tag `{0}`")]
    InvalidLanguageTag(String),
    #[error("a literal cannot be the subject of a triple")]
    LiteralSubject,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VocabError {
    #[error(transparent)]
    Term(#[from] TermError),
    #[error("invalid dimension name `{0}`")]
    InvalidDimensionName(String),
    #[error("dimension `{dimension}` uses {iri} more than once")]
    DuplicateDimensionIri { dimension: String, iri: Iri },
    #[error("dimension `{0}` is registered twice")]
    DuplicateDimension(String),
    #[error("{iri} is used by both `{first}` and `{second}`")]
    SharedDimensionIri { iri: Iri, first: String, second: String },
    #[error("at most 12 dimensions can be registered, got {0}")]
    TooManyDimensions(usize),
    #[error("a combined dimension needs at least two members, got {0}")]
    TooFewDimensions(usize),
    #[error("contextual property {0} must differ from the original property")]
    SameProperty(Iri),
    #[error("malformed axiom graph: {0}")]
    MalformedAxiom(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ContextError {
    #[error(transparent)]
    Vocab(#[from] VocabError),
    #[error("dimension `{0}` is not registered")]
    UnknownDimension(String),
    #[error("statement has no context assignment: {0}")]
    NoContexts(String),
    #[error("dimension `{0}` is assigned twice in one statement")]
    DuplicateAssignment(String),
    #[error("blank node {0} cannot be contextualized")]
    BlankNode(String),
    #[error("predicate {0} is reserved for the contextual scaffolding")]
    ReservedPredicate(Iri),
    #[error("nesting order does not cover dimension `{0}`")]
    OrderIncomplete(String),
    #[error("nesting order lists dimension `{0}` more than once")]
    OrderDuplicate(String),
    #[error("contextual part {part} has {count} contextualPartOf values")]
    PartOfCardinality { part: String, count: usize },
    #[error("contextual part {0} has no contextual extent")]
    DanglingPart(String),
    #[error("contextual part chain of {part} is cyclic")]
    CyclicChain { part: String },
    #[error("contextual part {part} carries two contexts in dimension `{dimension}`")]
    ConflictingContexts { part: String, dimension: String },
    #[error("combined context {0} has no recognisable member contexts")]
    UnresolvedCombinedContext(String),
    #[error("predicate {0} cannot be mapped back to an original property")]
    UnmappedPredicate(Iri),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QueryError {
    #[error("variable ?{0} is not bound by any triple pattern")]
    UnknownVariable(String),
    #[error("literal {0} is not numeric")]
    NotNumeric(String),
    #[error("numeric overflow while aggregating ?{0}")]
    Overflow(String),
    #[error("dimension `{0}` is not registered")]
    UnknownDimension(String),
    #[error("pattern has no triple patterns")]
    EmptyPattern,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IngestError {
    #[error("row {row}: {message}")]
    InvalidRow { row: usize, message: String },
    #[error("row {row}: duplicate estimate for source `{source_name}` in year {year}")]
    DuplicateEstimate {
        row: usize,
        source_name: String,
        year: i64,
    },
    #[error(transparent)]
    Term(#[from] TermError),
}
