//! Reification and singleton-property encodings of annotated statements,
//! used as size baselines.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::contextualize::{AnnotatedStatement, CombinationModel, Contextualizer};
use crate::error::{ContextError, VocabError};
use crate::graph::Graph;
use crate::mint::{mint_part, short_digest, MintingPolicy};
use crate::registry::Registry;
use crate::term::{Iri, Term, Triple};
use crate::vocab::{iri, rdf};

pub const STATEMENT_NAMESPACE: &str = "http://purl.org/NET/ndfluents/statement#";

fn term_keys(t: &Triple) -> [String; 3] {
    [
        format!("{}", t.subject()),
        format!("{}", t.predicate()),
        format!("{}", t.object()),
    ]
}

fn annotate(
    g: &mut Graph,
    node: &Iri,
    s: &AnnotatedStatement,
    registry: &Registry,
) -> Result<(), ContextError> {
    for a in s.contexts() {
        let dim = registry
            .get(&a.dimension)
            .ok_or_else(|| ContextError::UnknownDimension(a.dimension.clone()))?;
        g.insert(Triple::with_iri_subject(node, &dim.extent, &a.context));
    }
    Ok(())
}

/// One `rdf:Statement` node per statement with subject, predicate and
/// object links, plus one extent triple per context.
pub fn encode_reification(
    statements: &[AnnotatedStatement],
    registry: &Registry,
    minting: &MintingPolicy,
) -> Result<Graph, ContextError> {
    let mut g = Graph::new();
    let rdf_type = iri(rdf::TYPE);
    for s in statements {
        let keys = term_keys(s.base());
        let key = Iri::new(format!(
            "{STATEMENT_NAMESPACE}{}",
            short_digest(keys.iter().map(String::as_str))
        ))
        .map_err(VocabError::from)?;
        let node = mint_part(&key, &s.pairs(), minting).map_err(VocabError::from)?;
        g.insert(Triple::with_iri_subject(&node, &rdf_type, iri(rdf::STATEMENT)));
        g.insert(Triple::with_iri_subject(
            &node,
            &iri(rdf::SUBJECT),
            s.base().subject().clone(),
        ));
        g.insert(Triple::with_iri_subject(
            &node,
            &iri(rdf::PREDICATE),
            s.base().predicate(),
        ));
        g.insert(Triple::with_iri_subject(
            &node,
            &iri(rdf::OBJECT),
            s.base().object().clone(),
        ));
        annotate(&mut g, &node, s, registry)?;
    }
    Ok(g)
}

/// A fresh property per statement, linked to the original predicate by
/// `rdf:singletonPropertyOf` and annotated with one triple per context.
pub fn encode_singleton(
    statements: &[AnnotatedStatement],
    registry: &Registry,
    minting: &MintingPolicy,
) -> Result<Graph, ContextError> {
    let mut g = Graph::new();
    for s in statements {
        let keys = term_keys(s.base());
        let base = s.base();
        let key = Iri::new(format!(
            "{}_{}",
            base.predicate().as_str(),
            short_digest([keys[0].as_str(), keys[2].as_str()])
        ))
        .map_err(VocabError::from)?;
        let singleton = mint_part(&key, &s.pairs(), minting).map_err(VocabError::from)?;
        let subject = match base.subject() {
            Term::Iri(i) => i,
            other => return Err(ContextError::BlankNode(format!("{other}"))),
        };
        g.insert(Triple::with_iri_subject(subject, &singleton, base.object().clone()));
        g.insert(Triple::with_iri_subject(
            &singleton,
            &iri(rdf::SINGLETON_PROPERTY_OF),
            base.predicate(),
        ));
        annotate(&mut g, &singleton, s, registry)?;
    }
    Ok(g)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SizeRow {
    pub pattern: &'static str,
    pub model: Option<&'static str>,
    pub triples: usize,
}

/// Triple counts of every encoding. Context descriptions are left out so
/// that only the statement structure is compared. Contexts-in-context nests
/// dimensions in name order.
pub fn size_report(
    statements: &[AnnotatedStatement],
    registry: &Registry,
    minting: &MintingPolicy,
) -> Result<Vec<SizeRow>, ContextError> {
    let bare: Vec<AnnotatedStatement> = statements
        .iter()
        .map(AnnotatedStatement::without_descriptions)
        .collect();
    let order = registry.dimensions().map(|d| d.name().into()).collect();
    let mut rows = Vec::new();
    for model in [
        CombinationModel::ContextsInContext { order },
        CombinationModel::MultiContextPart,
        CombinationModel::CombinedExtent,
    ] {
        let label = model.label();
        let c = Contextualizer::new(registry.clone(), model).with_minting(minting.clone());
        rows.push(SizeRow {
            pattern: "ndfluents",
            model: Some(label),
            triples: c.contextualize(&bare)?.len(),
        });
    }
    rows.push(SizeRow {
        pattern: "reification",
        model: None,
        triples: encode_reification(&bare, registry, minting)?.len(),
    });
    rows.push(SizeRow {
        pattern: "singleton-property",
        model: None,
        triples: encode_singleton(&bare, registry, minting)?.len(),
    });
    Ok(rows)
}
