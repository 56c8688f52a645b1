//! A small line-based pattern language.
//!
//! ```text
//! # comments start with #
//! PREFIX dbo: <http://dbpedia.org/ontology/>
//! ?part dbo:contextualPopulationTotal ?pop .
//! ?part tmp:temporalExtent ?t .
//! ?t time:year ?year .
//! GROUP ?year
//! AVG ?pop AS avgPopulation
//! COUNT ?pop AS studies
//! CONTEXT provenance <http://example.org/population/source_McEvedy>
//! SCALE 2
//! ```
//!
//! Each triple line holds subject, predicate and object, with an optional
//! trailing `.`. Terms are `?variables`, IRIs, prefixed names, `a`, or
//! Turtle literals; `_:x` blank nodes act as variables. Directives:
//! `SELECT ?v ...`, `GROUP ?v`, `AVG|COUNT|MIN|MAX|SUM [DISTINCT] ?v AS
//! name`, `CONTEXT dimension <iri>` and `SCALE n`. Keywords are
//! case-insensitive.

use std::collections::BTreeMap;

use ndfluents_core::query::{Aggregate, AggregateFn, Pattern, PatternTerm, TriplePattern};
use ndfluents_core::vocab::rdf;
use ndfluents_core::{Iri, Term};
use thiserror::Error;

use crate::rdf::parse_term;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct QueryFileError {
    pub line: usize,
    pub message: String,
}

struct Line<'a> {
    no: usize,
    rest: &'a str,
}

impl<'a> Line<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, QueryFileError> {
        Err(QueryFileError {
            line: self.no,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        self.rest = self.rest.trim_start();
    }

    fn word(&mut self) -> &'a str {
        self.skip_ws();
        let end = self
            .rest
            .find(char::is_whitespace)
            .unwrap_or(self.rest.len());
        let (w, r) = self.rest.split_at(end);
        self.rest = r;
        w
    }

    fn variable(&mut self) -> Result<String, QueryFileError> {
        let w = self.word();
        match w.strip_prefix('?') {
            Some(name) if valid_var(name) => Ok(name.to_owned()),
            _ => self.err(format!("expected a ?variable, found `{w}`")),
        }
    }

    fn done(&mut self) -> Result<(), QueryFileError> {
        self.skip_ws();
        if self.rest.is_empty() {
            Ok(())
        } else {
            self.err(format!("unexpected `{}`", self.rest))
        }
    }

    fn term(
        &mut self,
        prefixes: &BTreeMap<String, String>,
        predicate: bool,
    ) -> Result<PatternTerm, QueryFileError> {
        self.skip_ws();
        if let Some(r) = self.rest.strip_prefix('?') {
            let end = r
                .find(|c: char| !(c.is_alphanumeric() || c == '_'))
                .unwrap_or(r.len());
            if end == 0 {
                return self.err("empty variable name");
            }
            self.rest = &r[end..];
            return Ok(PatternTerm::var(&r[..end]));
        }
        if let Some(r) = self.rest.strip_prefix("_:") {
            let end = r
                .find(|c: char| !(c.is_alphanumeric() || c == '_' || c == '-'))
                .unwrap_or(r.len());
            self.rest = &r[end..];
            return Ok(PatternTerm::var(format!("_:{}", &r[..end])));
        }
        if predicate
            && (self.rest == "a" || self.rest.starts_with("a ") || self.rest.starts_with("a\t"))
        {
            self.rest = &self.rest[1..];
            return Ok(PatternTerm::Term(Term::Iri(
                Iri::new(rdf::TYPE).expect("constant"),
            )));
        }
        match parse_term(self.rest, prefixes) {
            Ok((t, used)) => {
                self.rest = &self.rest[used..];
                Ok(PatternTerm::Term(t))
            }
            Err(e) => self.err(e.message),
        }
    }
}

fn valid_var(name: &str) -> bool {
    !name.is_empty() && name.chars().all(|c| c.is_alphanumeric() || c == '_')
}

fn aggregate_fn(w: &str) -> Option<AggregateFn> {
    Some(match w.to_ascii_uppercase().as_str() {
        "AVG" => AggregateFn::Avg,
        "COUNT" => AggregateFn::Count,
        "MIN" => AggregateFn::Min,
        "MAX" => AggregateFn::Max,
        "SUM" => AggregateFn::Sum,
        _ => return None,
    })
}

pub fn parse_query(text: &str) -> Result<Pattern, QueryFileError> {
    let mut prefixes = BTreeMap::new();
    let mut triples = Vec::new();
    let mut select = Vec::new();
    let mut group = None;
    let mut aggregates = Vec::new();
    let mut context = None;
    let mut scale = None;
    for (i, raw) in text.lines().enumerate() {
        let mut line = Line {
            no: i + 1,
            rest: raw,
        };
        line.skip_ws();
        if line.rest.is_empty() || line.rest.starts_with('#') {
            continue;
        }
        let save = line.rest;
        let head = line.word();
        let upper = head.to_ascii_uppercase();
        match upper.as_str() {
            "PREFIX" | "@PREFIX" => {
                let name = line.word();
                let Some(name) = name.strip_suffix(':') else {
                    return line.err(format!("expected `prefix:`, found `{name}`"));
                };
                let ns = line.word();
                let Some(ns) = ns.strip_prefix('<').and_then(|n| n.strip_suffix('>')) else {
                    return line.err(format!("expected <namespace>, found `{ns}`"));
                };
                if Iri::new(format!("{ns}x")).is_err() {
                    return line.err(format!("namespace <{ns}> is not an absolute IRI"));
                }
                prefixes.insert(name.to_owned(), ns.to_owned());
                line.skip_ws();
                line.rest = line.rest.strip_prefix('.').unwrap_or(line.rest);
                line.done()?;
            }
            "SELECT" => {
                while !line.rest.trim().is_empty() {
                    select.push(line.variable()?);
                }
            }
            "GROUP" => {
                if line
                    .rest
                    .trim_start()
                    .to_ascii_uppercase()
                    .starts_with("BY ")
                {
                    line.word();
                }
                if group.is_some() {
                    return line.err("only one GROUP variable is supported");
                }
                group = Some(line.variable()?);
                line.done()?;
            }
            "CONTEXT" => {
                let dim = line.word().to_owned();
                let iri = match line.term(&prefixes, false)? {
                    PatternTerm::Term(Term::Iri(i)) => i,
                    _ => return line.err("CONTEXT needs a dimension name and a context IRI"),
                };
                if dim.is_empty() {
                    return line.err("CONTEXT needs a dimension name");
                }
                context = Some((dim, iri));
                line.done()?;
            }
            "SCALE" => {
                let w = line.word();
                match w.parse::<u32>() {
                    Ok(n) if n <= 18 => scale = Some(n),
                    _ => {
                        return line.err(format!(
                            "SCALE takes a number of digits up to 18, found `{w}`"
                        ))
                    }
                }
                line.done()?;
            }
            _ => {
                if let Some(function) = aggregate_fn(&upper)
                    .filter(|_| !line.rest.trim().is_empty() && !head.contains(':'))
                {
                    let mut distinct = false;
                    let mut rest = line.rest.trim_start();
                    if rest.len() > 8 && rest[..8].eq_ignore_ascii_case("DISTINCT") {
                        distinct = true;
                        rest = &rest[8..];
                    }
                    line.rest = rest;
                    let var = line.variable()?;
                    if !line.word().eq_ignore_ascii_case("AS") {
                        return line.err("expected `AS name` after the aggregated variable");
                    }
                    let name = line.word().trim_start_matches('?').to_owned();
                    if !valid_var(&name) {
                        return line.err(format!("invalid result name `{name}`"));
                    }
                    line.done()?;
                    let mut a = Aggregate::new(function, var, name);
                    if distinct {
                        a = a.distinct();
                    }
                    aggregates.push(a);
                    continue;
                }
                line.rest = save;
                let s = line.term(&prefixes, false)?;
                let p = line.term(&prefixes, true)?;
                let o = line.term(&prefixes, false)?;
                if matches!(s, PatternTerm::Term(Term::Literal(_))) {
                    return line.err("a literal cannot be a subject");
                }
                if !matches!(p, PatternTerm::Var(_) | PatternTerm::Term(Term::Iri(_))) {
                    return line.err("the predicate must be an IRI or a variable");
                }
                line.skip_ws();
                line.rest = line.rest.strip_prefix('.').unwrap_or(line.rest);
                line.done()?;
                triples.push(TriplePattern::new(s, p, o));
            }
        }
    }
    let mut pattern = Pattern::new(triples);
    if !select.is_empty() {
        pattern = pattern.select(select);
    }
    if let Some(g) = group {
        pattern = pattern.group_by(g);
    }
    for a in aggregates {
        pattern = pattern.aggregate(a);
    }
    if let Some((d, c)) = context {
        pattern = pattern.within(d, c);
    }
    if let Some(s) = scale {
        pattern.scale = s;
    }
    Ok(pattern)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndfluents_core::query::ContextFilter;

    #[test]
    fn query_one_shape() {
        let q = parse_query(
            "PREFIX ex: <http://ex.org/>\n\
             # population by year\n\
             ?part ex:pop ?pop .\n\
             ?part a ex:Part\n\
             ?part ex:label \"x y\"@en .\n\
             GROUP BY ?year\n\
             avg ?pop AS avgPop\n\
             COUNT DISTINCT ?part AS n\n\
             CONTEXT provenance ex:src1\n\
             SCALE 3\n",
        )
        .unwrap();
        assert_eq!(q.triples.len(), 3);
        assert_eq!(q.group_by.as_deref(), Some("year"));
        assert_eq!(q.aggregates.len(), 2);
        assert!(q.aggregates[1].distinct);
        assert_eq!(q.scale, 3);
        assert_eq!(
            q.context,
            Some(ContextFilter {
                dimension: "provenance".into(),
                context: Iri::new("http://ex.org/src1").unwrap()
            })
        );
    }

    #[test]
    fn errors_carry_lines() {
        let e = parse_query("?s ?p ?o\n?s <http://a/p>\n").unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse_query("?s ex:p ?o\n").unwrap_err();
        assert!(e.message.contains("undeclared prefix"), "{e}");
        let e = parse_query("AVG ?x\n").unwrap_err();
        assert_eq!(e.line, 1);
        assert!(parse_query("\"lit\" ?p ?o\n").is_err());
        assert!(parse_query("SCALE many\n").is_err());
    }

    #[test]
    fn blank_nodes_are_variables() {
        let q = parse_query("_:x <http://a/p> ?o\n").unwrap();
        assert_eq!(q.triples[0].subject, PatternTerm::var("_:x"));
    }
}
