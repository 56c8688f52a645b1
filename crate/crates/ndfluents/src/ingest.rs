//! Annotated statements and population estimates in CSV, and annotated
//! statements as N-Quads with a bundle file.
//!
//! Statement CSV: `subject,predicate,object,objectType,dim1,ctx1,...` with
//! as many dimension/context pairs as needed. `objectType` is `iri`,
//! `literal`, `@<lang>`, one of `string`, `integer`, `decimal`, `double`,
//! `boolean`, or a datatype IRI.
//!
//! Bundles: each N-Quads graph label names a bundle, and the bundle file
//! maps it to (dimension, context) pairs, either as CSV
//! `bundle,dimension,context` or as Turtle `bundle <extent> context`
//! triples using each dimension's extent property.

use std::collections::BTreeMap;
use std::io::{Read, Write};

use ndfluents_core::mint::short_digest;
use ndfluents_core::population::EstimateRow;
use ndfluents_core::vocab::xsd;
use ndfluents_core::{
    AnnotatedStatement, ContextAssignment, ContextError, Graph, IngestError, Iri, Literal,
    Registry, Term, Triple,
};
use serde::Deserialize;
use thiserror::Error;

use crate::rdf::ParseError;

pub const BUNDLE_NAMESPACE: &str = "urn:ndfluents:bundle:";

#[derive(Debug, Error)]
pub enum CsvError {
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("row {row}: {message}")]
    Row { row: usize, message: String },
    #[error("header must start with `{expected}`, found `{found}`")]
    Header { expected: String, found: String },
    #[error(transparent)]
    Ingest(#[from] IngestError),
    #[error(transparent)]
    Rdf(#[from] ParseError),
    #[error(transparent)]
    Context(#[from] ContextError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn row_error(row: usize, message: impl Into<String>) -> CsvError {
    CsvError::Row {
        row,
        message: message.into(),
    }
}

fn reader<R: Read>(input: R) -> csv::Reader<R> {
    csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .flexible(true)
        .comment(Some(b'#'))
        .from_reader(input)
}

fn check_header(headers: &csv::StringRecord, expected: &[&str]) -> Result<(), CsvError> {
    let found: Vec<&str> = headers.iter().take(expected.len()).collect();
    if found != expected {
        return Err(CsvError::Header {
            expected: expected.join(","),
            found: headers.iter().collect::<Vec<_>>().join(","),
        });
    }
    Ok(())
}

#[derive(Debug, Deserialize)]
struct PopulationRecord {
    source: String,
    year: String,
    population_low: String,
    population_high: Option<String>,
}

fn parse_count(row: usize, field: &str, s: &str) -> Result<i128, CsvError> {
    let digits: String = s.chars().filter(|c| !matches!(c, ',' | '_')).collect();
    digits
        .parse()
        .map_err(|_| row_error(row, format!("{field} `{s}` is not an integer")))
}

/// Rows of `source,year,population_low,population_high`; the high value
/// may be empty. Data rows are numbered from 1.
pub fn read_population<R: Read>(input: R) -> Result<Vec<EstimateRow>, CsvError> {
    let mut rdr = reader(input);
    check_header(
        rdr.headers()?,
        &["source", "year", "population_low", "population_high"],
    )?;
    let mut rows = Vec::new();
    for (i, rec) in rdr.deserialize::<PopulationRecord>().enumerate() {
        let row = i + 1;
        let rec = rec?;
        let year = rec
            .year
            .parse()
            .map_err(|_| row_error(row, format!("year `{}` is not an integer", rec.year)))?;
        let high = match rec.population_high.as_deref() {
            None | Some("") => None,
            Some(h) => Some(parse_count(row, "population_high", h)?),
        };
        rows.push(EstimateRow {
            source: rec.source,
            year,
            low: parse_count(row, "population_low", &rec.population_low)?,
            high,
        });
    }
    Ok(rows)
}

const STATEMENT_HEADER: [&str; 4] = ["subject", "predicate", "object", "objectType"];

fn iri(row: usize, s: &str) -> Result<Iri, CsvError> {
    Iri::new(s).map_err(|e| row_error(row, e.to_string()))
}

fn object_term(row: usize, value: &str, kind: &str) -> Result<Term, CsvError> {
    let xsd_type = |local: &str| Iri::new(format!("{}{local}", xsd::NS)).expect("xsd constant");
    Ok(match kind {
        "iri" => Term::Iri(iri(row, value)?),
        "literal" | "" => Term::Literal(Literal::simple(value)),
        "string" | "integer" | "decimal" | "double" | "boolean" => {
            Term::Literal(Literal::typed(value, xsd_type(kind)))
        }
        tag if tag.starts_with('@') => Term::Literal(
            Literal::lang(value, &tag[1..]).map_err(|e| row_error(row, e.to_string()))?,
        ),
        dt => Term::Literal(Literal::typed(value, iri(row, dt)?)),
    })
}

fn object_kind(t: &Term) -> String {
    match t {
        Term::Literal(l) => match l.language() {
            Some(tag) => format!("@{tag}"),
            None => match l.datatype().as_str().strip_prefix(xsd::NS) {
                Some(local @ ("string" | "integer" | "decimal" | "double" | "boolean")) => {
                    local.to_owned()
                }
                _ => l.datatype().as_str().to_owned(),
            },
        },
        _ => "iri".into(),
    }
}

/// Reads the statement CSV. Empty trailing dimension cells are ignored.
pub fn read_statements<R: Read>(input: R) -> Result<Vec<AnnotatedStatement>, CsvError> {
    let mut rdr = reader(input);
    check_header(rdr.headers()?, &STATEMENT_HEADER)?;
    let mut out = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let row = i + 1;
        let rec = rec?;
        if rec.len() < 4 {
            return Err(row_error(
                row,
                format!("expected at least 4 fields, found {}", rec.len()),
            ));
        }
        let subject = iri(row, &rec[0])?;
        let predicate = iri(row, &rec[1])?;
        let object = object_term(row, &rec[2], &rec[3])?;
        let extra: Vec<&str> = rec.iter().skip(4).collect();
        let mut assignments = Vec::new();
        for pair in extra.chunks(2) {
            match pair {
                ["", ""] | [""] => {}
                [dim, ctx] if !dim.is_empty() && !ctx.is_empty() => {
                    assignments.push(ContextAssignment::new(*dim, iri(row, ctx)?));
                }
                _ => return Err(row_error(row, "dimension and context cells come in pairs")),
            }
        }
        let base = Triple::with_iri_subject(&subject, &predicate, object);
        out.push(
            AnnotatedStatement::new(base, assignments)
                .map_err(|e| row_error(row, e.to_string()))?,
        );
    }
    Ok(out)
}

pub fn write_statements<W: Write>(
    output: W,
    statements: &[AnnotatedStatement],
) -> Result<(), CsvError> {
    let width = statements
        .iter()
        .map(|s| s.dimension_count())
        .max()
        .unwrap_or(1);
    let mut w = csv::WriterBuilder::new().flexible(true).from_writer(output);
    let mut header: Vec<String> = STATEMENT_HEADER.iter().map(|h| h.to_string()).collect();
    for n in 1..=width {
        header.push(format!("dim{n}"));
        header.push(format!("ctx{n}"));
    }
    w.write_record(&header)?;
    for s in statements {
        let b = s.base();
        let subject = match b.subject() {
            Term::Iri(i) => i.as_str().to_owned(),
            other => return Err(ContextError::BlankNode(other.to_string()).into()),
        };
        let object = match b.object() {
            Term::Iri(i) => i.as_str().to_owned(),
            Term::Literal(l) => l.lexical().to_owned(),
            other => return Err(ContextError::BlankNode(other.to_string()).into()),
        };
        let mut rec = vec![
            subject,
            b.predicate().as_str().to_owned(),
            object,
            object_kind(b.object()),
        ];
        for (d, c) in s.pairs() {
            rec.push(d.to_owned());
            rec.push(c.as_str().to_owned());
        }
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

pub type Bundles = BTreeMap<Iri, Vec<(String, Iri)>>;

/// Reads `bundle,dimension,context` rows.
pub fn read_bundles_csv<R: Read>(input: R) -> Result<Bundles, CsvError> {
    let mut rdr = reader(input);
    check_header(rdr.headers()?, &["bundle", "dimension", "context"])?;
    let mut out = Bundles::new();
    for (i, rec) in rdr.records().enumerate() {
        let row = i + 1;
        let rec = rec?;
        if rec.len() != 3 {
            return Err(row_error(
                row,
                format!("expected 3 fields, found {}", rec.len()),
            ));
        }
        out.entry(iri(row, &rec[0])?)
            .or_default()
            .push((rec[1].to_owned(), iri(row, &rec[2])?));
    }
    Ok(out)
}

/// Reads `bundle <extent> context` triples; other triples are ignored.
pub fn bundles_from_graph(graph: &Graph, registry: &Registry) -> Bundles {
    let mut out = Bundles::new();
    for dim in registry.dimensions() {
        for t in graph.matching(None, Some(&dim.extent), None) {
            if let (Term::Iri(b), Term::Iri(c)) = (t.subject(), t.object()) {
                out.entry(b.clone())
                    .or_default()
                    .push((dim.name().to_owned(), c.clone()));
            }
        }
    }
    out
}

/// Statements of every named graph, contexts taken from the graph's
/// bundle.
pub fn statements_from_quads(
    graphs: &[Graph],
    bundles: &Bundles,
) -> Result<Vec<AnnotatedStatement>, CsvError> {
    let mut out = Vec::new();
    for g in graphs {
        let Some(name) = g.name() else {
            if g.is_empty() {
                continue;
            }
            return Err(row_error(0, "triples in the default graph have no bundle"));
        };
        let Some(pairs) = bundles.get(name) else {
            return Err(row_error(
                0,
                format!("bundle {name} is not described in the bundle file"),
            ));
        };
        for t in g.iter() {
            let assignments = pairs
                .iter()
                .map(|(d, c)| ContextAssignment::new(d.clone(), c.clone()));
            out.push(AnnotatedStatement::new(t.clone(), assignments)?);
        }
    }
    Ok(out)
}

/// Groups statements by context set. The bundle IRI is a digest of the
/// sorted (dimension, context) pairs.
pub fn statements_to_quads(statements: &[AnnotatedStatement]) -> (Vec<Graph>, Bundles) {
    let mut graphs: BTreeMap<Iri, Graph> = BTreeMap::new();
    let mut bundles = Bundles::new();
    for s in statements {
        let pairs = s.pairs();
        let keys: Vec<String> = pairs
            .iter()
            .map(|(d, c)| format!("{d}={}", c.as_str()))
            .collect();
        let name = Iri::new(format!(
            "{BUNDLE_NAMESPACE}{}",
            short_digest(keys.iter().map(String::as_str))
        ))
        .expect("urn scheme");
        graphs
            .entry(name.clone())
            .or_insert_with(|| Graph::named(name.clone()))
            .insert(s.base().clone());
        bundles.entry(name).or_insert_with(|| {
            pairs
                .iter()
                .map(|(d, c)| ((*d).to_owned(), (*c).clone()))
                .collect()
        });
    }
    (graphs.into_values().collect(), bundles)
}

pub fn write_bundles_csv<W: Write>(output: W, bundles: &Bundles) -> Result<(), CsvError> {
    let mut w = csv::Writer::from_writer(output);
    w.write_record(["bundle", "dimension", "context"])?;
    for (b, pairs) in bundles {
        for (d, c) in pairs {
            w.write_record([b.as_str(), d, c.as_str()])?;
        }
    }
    w.flush()?;
    Ok(())
}
