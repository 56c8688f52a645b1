//! World population estimates as contextual statements about the Earth,
//! with one temporal context per year and one provenance context per
//! source.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::contextualize::{AnnotatedStatement, ContextAssignment};
use crate::error::IngestError;
use crate::graph::Graph;
use crate::registry::Registry;
use crate::term::{Iri, Literal, Triple};
use crate::vocab::{iri, prov, rdf, rdfs, time, xsd};

pub const EARTH: &str = "http://dbpedia.org/resource/Earth";
pub const POPULATION_TOTAL: &str = "http://dbpedia.org/ontology/populationTotal";
pub const DEFAULT_BASE: &str = "http://example.org/population/";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EstimateRow {
    pub source: String,
    /// Astronomical numbering, so year 0 exists.
    pub year: i64,
    pub low: i128,
    pub high: Option<i128>,
}

impl EstimateRow {
    /// The low value, or the mean of low and high rounded half up.
    pub fn value(&self) -> i128 {
        match self.high {
            Some(high) => (self.low + high + 1).div_euclid(2),
            None => self.low,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PopulationData {
    pub statements: Vec<AnnotatedStatement>,
    pub registry: Registry,
    /// Union of every context description.
    pub descriptions: Graph,
}

fn slug(s: &str) -> String {
    s.chars()
        .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
        .collect()
}

fn interval(base: &str, year: i64) -> Result<(Iri, Graph), IngestError> {
    let t = Iri::new(format!("{base}year{year}"))?;
    let during = Iri::new(format!("{base}year{year}/during"))?;
    let desc = Iri::new(format!("{base}year{year}/description"))?;
    let y = Literal::typed(format!("{year}"), iri(xsd::INTEGER));
    let mut g = Graph::new();
    g.insert(Triple::with_iri_subject(&t, &iri(time::YEAR), y.clone()));
    g.insert(Triple::with_iri_subject(&t, &iri(time::INTERVAL_DURING), &during));
    g.insert(Triple::with_iri_subject(&during, &iri(rdf::TYPE), iri(time::INTERVAL)));
    g.insert(Triple::with_iri_subject(
        &during,
        &iri(time::HAS_DATE_TIME_DESCRIPTION),
        &desc,
    ));
    g.insert(Triple::with_iri_subject(
        &desc,
        &iri(rdf::TYPE),
        iri(time::DATE_TIME_DESCRIPTION),
    ));
    g.insert(Triple::with_iri_subject(&desc, &iri(time::YEAR), y));
    Ok((t, g))
}

fn provenance(base: &str, source: &str) -> Result<(Iri, Graph), IngestError> {
    let s = slug(source);
    let p = Iri::new(format!("{base}source_{s}"))?;
    let agent = Iri::new(format!("{base}agent_{s}"))?;
    let mut g = Graph::new();
    g.insert(Triple::with_iri_subject(&p, &iri(rdf::TYPE), iri(prov::ACTIVITY)));
    g.insert(Triple::with_iri_subject(&p, &iri(prov::WAS_ASSOCIATED_WITH), &agent));
    g.insert(Triple::with_iri_subject(&agent, &iri(rdf::TYPE), iri(prov::AGENT)));
    g.insert(Triple::with_iri_subject(
        &agent,
        &iri(rdfs::LABEL),
        Literal::simple(source),
    ));
    Ok((p, g))
}

/// One `populationTotal` statement per row under the temporal and
/// provenance dimensions. Rows are numbered from 1 in error messages.
pub fn build(rows: &[EstimateRow], base: &str) -> Result<PopulationData, IngestError> {
    let mut seen = BTreeSet::new();
    let mut slugs: BTreeMap<String, &str> = BTreeMap::new();
    let earth = iri(EARTH);
    let predicate = iri(POPULATION_TOTAL);
    let mut statements = Vec::with_capacity(rows.len());
    let mut descriptions = Graph::new();
    for (i, r) in rows.iter().enumerate() {
        let row = i + 1;
        let invalid = |message: String| IngestError::InvalidRow { row, message };
        if r.source.trim().is_empty() {
            return Err(invalid("empty source".into()));
        }
        if r.low <= 0 {
            return Err(invalid(format!("population must be positive, got {}", r.low)));
        }
        if let Some(high) = r.high {
            if high < r.low {
                return Err(invalid(format!("high estimate {high} is below low {}", r.low)));
            }
        }
        if !seen.insert((r.source.as_str(), r.year)) {
            return Err(IngestError::DuplicateEstimate {
                row,
                source_name: r.source.clone(),
                year: r.year,
            });
        }
        match slugs.insert(slug(&r.source), &r.source) {
            Some(other) if other != r.source => {
                return Err(invalid(format!(
                    "sources `{other}` and `{}` map to the same IRI",
                    r.source
                )))
            }
            _ => {}
        }
        let (t, tg) = interval(base, r.year)?;
        let (p, pg) = provenance(base, &r.source)?;
        descriptions.extend_from(&tg);
        descriptions.extend_from(&pg);
        let base_triple = Triple::with_iri_subject(&earth, &predicate, Literal::integer(r.value()));
        let s = AnnotatedStatement::new(
            base_triple,
            [
                ContextAssignment::new("temporal", t).described(tg),
                ContextAssignment::new("provenance", p).described(pg),
            ],
        )
        .map_err(|e| invalid(format!("{e}")))?;
        statements.push(s);
    }
    Ok(PopulationData {
        statements,
        registry: Registry::temporal_provenance(),
        descriptions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(source: &str, year: i64, low: i128, high: Option<i128>) -> EstimateRow {
        EstimateRow {
            source: source.into(),
            year,
            low,
            high,
        }
    }

    #[test]
    fn mean_of_interval() {
        assert_eq!(row("a", 0, 100, Some(200)).value(), 150);
        assert_eq!(row("a", 0, 100, Some(101)).value(), 101);
        assert_eq!(row("a", 0, 170_000_000, None).value(), 170_000_000);
    }

    #[test]
    fn counts_and_errors() {
        let rows = [
            row("McEvedy", 0, 170_000_000, None),
            row("Durand", 0, 270_000_000, Some(330_000_000)),
            row("McEvedy", 1000, 265_000_000, None),
        ];
        let d = build(&rows, DEFAULT_BASE).unwrap();
        assert_eq!(d.statements.len(), 3);
        let contexts: BTreeSet<_> = d
            .statements
            .iter()
            .flat_map(|s| s.contexts().map(|a| a.context.clone()))
            .collect();
        assert_eq!(contexts.len(), 2 + 2);
        let dup = [rows[0].clone(), rows[0].clone()];
        assert!(matches!(
            build(&dup, DEFAULT_BASE),
            Err(IngestError::DuplicateEstimate { row: 2, .. })
        ));
        assert!(matches!(
            build(&[row("x", 0, 5, Some(4))], DEFAULT_BASE),
            Err(IngestError::InvalidRow { row: 1, .. })
        ));
        assert!(build(&[row("x", 0, 0, None)], DEFAULT_BASE).is_err());
        assert!(build(&[row("a b", 0, 1, None), row("a_b", 1, 1, None)], DEFAULT_BASE).is_err());
    }
}
