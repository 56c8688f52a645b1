//! Reading and writing N-Triples, N-Quads and a Turtle subset.
//!
//! The Turtle subset covers `@prefix`/`PREFIX`, `@base`/`BASE`, prefixed
//! names, `a`, predicate and object lists, `[ ... ]` blank nodes, quoted
//! and long literals with language tags or datatypes, and bare numbers and
//! booleans. Collections and quoted triples are rejected.
//!
//! Blank nodes are relabelled `b0`, `b1`, ... in order of first occurrence
//! while parsing. Writers sort triples and pick labels so that reading the
//! output back yields the same labels.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use ndfluents_core::vocab::{rdf, xsd};
use ndfluents_core::{BlankNode, Graph, Iri, Literal, Term, TermError, Triple};
use thiserror::Error;
use url::Url;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    NTriples,
    NQuads,
    Turtle,
}

impl Format {
    /// Guesses from the extension: `.nt`, `.nq`, `.ttl`.
    pub fn from_path(path: &Path) -> Option<Format> {
        match path.extension()?.to_str()? {
            "nt" => Some(Format::NTriples),
            "nq" => Some(Format::NQuads),
            "ttl" => Some(Format::Turtle),
            _ => None,
        }
    }
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "nt" | "ntriples" | "n-triples" => Ok(Format::NTriples),
            "nq" | "nquads" | "n-quads" => Ok(Format::NQuads),
            "ttl" | "turtle" => Ok(Format::Turtle),
            other => Err(format!(
                "unknown RDF format `{other}` (expected nt, nq or ttl)"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

pub fn parse_ntriples(text: &str) -> Result<Graph, ParseError> {
    let mut graphs = Parser::new(text, Format::NTriples, None).run()?;
    Ok(graphs.remove(&None).unwrap_or_default())
}

/// The default graph first, then named graphs in IRI order. Blank node
/// labels are shared across the whole document.
pub fn parse_nquads(text: &str) -> Result<Vec<Graph>, ParseError> {
    let graphs = Parser::new(text, Format::NQuads, None).run()?;
    Ok(graphs.into_values().collect())
}

/// Relative IRIs are resolved against `base` or an `@base` directive and
/// are an error when neither is present.
pub fn parse_turtle(text: &str, base: Option<&str>) -> Result<Graph, ParseError> {
    let base = match base {
        Some(b) => Some(Url::parse(b).map_err(|e| ParseError {
            line: 0,
            column: 0,
            message: format!("invalid base IRI `{b}`: {e}"),
        })?),
        None => None,
    };
    let mut graphs = Parser::new(text, Format::Turtle, base).run()?;
    Ok(graphs.remove(&None).unwrap_or_default())
}

/// Every graph in the document; one graph except for N-Quads.
pub fn parse(text: &str, format: Format, base: Option<&str>) -> Result<Vec<Graph>, ParseError> {
    match format {
        Format::NTriples => Ok(vec![parse_ntriples(text)?]),
        Format::NQuads => parse_nquads(text),
        Format::Turtle => Ok(vec![parse_turtle(text, base)?]),
    }
}

/// Reads one Turtle term (IRI, prefixed name, literal, number or boolean)
/// at the start of `text`, returning it with the number of bytes consumed.
pub fn parse_term(
    text: &str,
    prefixes: &BTreeMap<String, String>,
) -> Result<(Term, usize), ParseError> {
    let mut p = Parser::new(text, Format::Turtle, None);
    p.prefixes = prefixes.clone();
    match p.peek() {
        Some('_' | '[') => Err(p.error(0, "blank nodes are not terms here")),
        _ => {
            let t = p.object()?;
            Ok((t, p.pos))
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    format: Format,
    base: Option<Url>,
    prefixes: BTreeMap<String, String>,
    labels: BTreeMap<String, BlankNode>,
    graphs: BTreeMap<Option<Iri>, Graph>,
}

fn name_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '-' | '.' | '\u{b7}')
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, format: Format, base: Option<Url>) -> Self {
        Parser {
            src: src.strip_prefix('\u{feff}').unwrap_or(src),
            pos: 0,
            format,
            base,
            prefixes: BTreeMap::new(),
            labels: BTreeMap::new(),
            graphs: BTreeMap::new(),
        }
    }

    fn error(&self, at: usize, message: impl Into<String>) -> ParseError {
        let before = &self.src[..at];
        let line_start = before.rfind('\n').map_or(0, |i| i + 1);
        ParseError {
            line: before.matches('\n').count() + 1,
            column: before[line_start..].chars().count() + 1,
            message: message.into(),
        }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn peek_at(&self, n: usize) -> Option<char> {
        self.rest().chars().nth(n)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char, what: &str) -> Result<(), ParseError> {
        self.skip_ws();
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.unexpected(what))
        }
    }

    fn unexpected(&self, what: &str) -> ParseError {
        match self.peek() {
            Some(c) => self.error(self.pos, format!("expected {what}, found `{c}`")),
            None => self.error(self.pos, format!("expected {what}, found end of input")),
        }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == '#' {
                while let Some(c) = self.bump() {
                    if c == '\n' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    /// Case-insensitive keyword followed by whitespace.
    fn keyword(&mut self, word: &str) -> bool {
        let rest = self.rest();
        let matched = rest.len() > word.len()
            && rest.is_char_boundary(word.len())
            && rest[..word.len()].eq_ignore_ascii_case(word)
            && rest[word.len()..].starts_with(char::is_whitespace);
        if matched {
            self.pos += word.len();
        }
        matched
    }

    fn run(mut self) -> Result<BTreeMap<Option<Iri>, Graph>, ParseError> {
        self.graphs.insert(None, Graph::new());
        loop {
            self.skip_ws();
            if self.peek().is_none() {
                break;
            }
            match self.format {
                Format::Turtle => self.turtle_statement()?,
                _ => self.quad_statement()?,
            }
        }
        if self.graphs.len() > 1 && self.graphs[&None].is_empty() {
            self.graphs.remove(&None);
        }
        Ok(self.graphs)
    }

    fn add(
        &mut self,
        at: usize,
        s: Term,
        p: Iri,
        o: Term,
        graph: Option<Iri>,
    ) -> Result<(), ParseError> {
        let t = Triple::new(s, p, o).map_err(|e| self.error(at, e.to_string()))?;
        self.graphs
            .entry(graph.clone())
            .or_insert_with(|| graph.map(Graph::named).unwrap_or_default())
            .insert(t);
        Ok(())
    }

    fn quad_statement(&mut self) -> Result<(), ParseError> {
        let start = self.pos;
        let s = match self.peek() {
            Some('<') => Term::Iri(self.iri_ref()?),
            Some('_') => Term::BlankNode(self.blank_label()?),
            _ => return Err(self.unexpected("a subject IRI or blank node")),
        };
        self.skip_ws();
        if self.peek() != Some('<') {
            return Err(self.unexpected("a predicate IRI"));
        }
        let p = self.iri_ref()?;
        self.skip_ws();
        let o = match self.peek() {
            Some('<') => Term::Iri(self.iri_ref()?),
            Some('_') => Term::BlankNode(self.blank_label()?),
            Some('"') => Term::Literal(self.literal()?),
            _ => return Err(self.unexpected("an object")),
        };
        self.skip_ws();
        let graph = if self.format == Format::NQuads && self.peek() == Some('<') {
            Some(self.iri_ref()?)
        } else if self.format == Format::NQuads && self.peek() == Some('_') {
            return Err(self.error(self.pos, "blank node graph labels are not supported"));
        } else {
            None
        };
        self.expect('.', "`.`")?;
        self.add(start, s, p, o, graph)
    }

    fn turtle_statement(&mut self) -> Result<(), ParseError> {
        if self.keyword("@prefix") {
            self.prefix_decl()?;
            return self.expect('.', "`.` after @prefix");
        }
        if self.keyword("@base") {
            self.base_decl()?;
            return self.expect('.', "`.` after @base");
        }
        if self.keyword("PREFIX") {
            return self.prefix_decl();
        }
        if self.keyword("BASE") {
            return self.base_decl();
        }
        let start = self.pos;
        match self.peek() {
            Some('[') => {
                self.bump();
                self.skip_ws();
                let node = self.fresh_blank();
                if self.eat(']') {
                    self.skip_ws();
                    self.predicate_object_list(start, &node)?;
                } else {
                    self.predicate_object_list(start, &node)?;
                    self.expect(']', "`]`")?;
                    self.skip_ws();
                    if self.peek() != Some('.') {
                        self.predicate_object_list(start, &node)?;
                    }
                }
            }
            _ => {
                let s = self.subject()?;
                self.skip_ws();
                self.predicate_object_list(start, &s)?;
            }
        }
        self.expect('.', "`.` at the end of the statement")
    }

    fn prefix_decl(&mut self) -> Result<(), ParseError> {
        self.skip_ws();
        let start = self.pos;
        let name: String = self.take_while(|c| name_char(c) && c != '.');
        if !self.eat(':') {
            return Err(self.error(start, "expected a prefix name ending in `:`"));
        }
        self.skip_ws();
        if self.peek() != Some('<') {
            return Err(self.unexpected("a namespace IRI"));
        }
        let ns = self.iri_ref()?;
        self.prefixes.insert(name, ns.as_str().to_owned());
        Ok(())
    }

    fn base_decl(&mut self) -> Result<(), ParseError> {
        self.skip_ws();
        if self.peek() != Some('<') {
            return Err(self.unexpected("a base IRI"));
        }
        let at = self.pos;
        let b = self.iri_ref()?;
        self.base = Some(Url::parse(b.as_str()).map_err(|e| self.error(at, e.to_string()))?);
        Ok(())
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> String {
        let mut out = String::new();
        while let Some(c) = self.peek() {
            if !f(c) {
                break;
            }
            out.push(c);
            self.bump();
        }
        out
    }

    fn subject(&mut self) -> Result<Term, ParseError> {
        match self.peek() {
            Some('<') => Ok(Term::Iri(self.iri_ref()?)),
            Some('_') if self.peek_at(1) == Some(':') => Ok(Term::BlankNode(self.blank_label()?)),
            Some('(') => Err(self.error(self.pos, "collections are not supported")),
            Some(c) if c.is_alphabetic() || c == ':' || c == '_' => Ok(Term::Iri(self.pname()?)),
            _ => Err(self.unexpected("a subject")),
        }
    }

    fn verb(&mut self) -> Result<Iri, ParseError> {
        if self.peek() == Some('a') && !self.peek_at(1).is_some_and(|c| name_char(c) || c == ':') {
            self.bump();
            return Ok(Iri::new(rdf::TYPE).expect("constant"));
        }
        match self.peek() {
            Some('<') => self.iri_ref(),
            Some(c) if c.is_alphabetic() || c == ':' || c == '_' => self.pname(),
            _ => Err(self.unexpected("a predicate")),
        }
    }

    fn predicate_object_list(&mut self, start: usize, subject: &Term) -> Result<(), ParseError> {
        loop {
            let p = self.verb()?;
            loop {
                self.skip_ws();
                let o = self.object()?;
                self.add(start, subject.clone(), p.clone(), o, None)?;
                self.skip_ws();
                if !self.eat(',') {
                    break;
                }
            }
            // Repeated and trailing semicolons are allowed.
            let mut more = false;
            while self.eat(';') {
                more = true;
                self.skip_ws();
            }
            if !more || matches!(self.peek(), Some('.' | ']') | None) {
                return Ok(());
            }
        }
    }

    fn object(&mut self) -> Result<Term, ParseError> {
        match self.peek() {
            Some('<') => Ok(Term::Iri(self.iri_ref()?)),
            Some('_') if self.peek_at(1) == Some(':') => Ok(Term::BlankNode(self.blank_label()?)),
            Some('[') => {
                let start = self.pos;
                self.bump();
                self.skip_ws();
                let node = self.fresh_blank();
                if !self.eat(']') {
                    self.predicate_object_list(start, &node)?;
                    self.expect(']', "`]`")?;
                }
                Ok(node)
            }
            Some('(') => Err(self.error(self.pos, "collections are not supported")),
            Some('"' | '\'') => Ok(Term::Literal(self.literal()?)),
            Some(c) if c.is_ascii_digit() || matches!(c, '+' | '-' | '.') => {
                Ok(Term::Literal(self.number()?))
            }
            Some(c) if c.is_alphabetic() || c == ':' || c == '_' => match self.boolean() {
                Some(b) => Ok(Term::Literal(b)),
                None => Ok(Term::Iri(self.pname()?)),
            },
            _ => Err(self.unexpected("an object")),
        }
    }

    fn boolean(&mut self) -> Option<Literal> {
        for word in ["true", "false"] {
            let rest = self.rest();
            if rest.starts_with(word)
                && !rest[word.len()..].starts_with(|c| name_char(c) || c == ':')
            {
                self.pos += word.len();
                return Some(Literal::typed(word, xsd_iri(xsd::BOOLEAN)));
            }
        }
        None
    }

    fn number(&mut self) -> Result<Literal, ParseError> {
        let start = self.pos;
        let mut text = String::new();
        if let Some(c @ ('+' | '-')) = self.peek() {
            text.push(c);
            self.bump();
        }
        text.push_str(&self.take_while(|c| c.is_ascii_digit()));
        let mut datatype = xsd::INTEGER;
        if self.peek() == Some('.') && self.peek_at(1).is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
            text.push('.');
            text.push_str(&self.take_while(|c| c.is_ascii_digit()));
            datatype = xsd::DECIMAL;
        }
        if let Some(e @ ('e' | 'E')) = self.peek() {
            self.bump();
            text.push(e);
            if let Some(c @ ('+' | '-')) = self.peek() {
                text.push(c);
                self.bump();
            }
            let exp = self.take_while(|c| c.is_ascii_digit());
            if exp.is_empty() {
                return Err(self.error(start, format!("malformed number `{text}`")));
            }
            text.push_str(&exp);
            datatype = xsd::DOUBLE;
        }
        if !text.chars().any(|c| c.is_ascii_digit()) {
            return Err(self.error(start, format!("malformed number `{text}`")));
        }
        Ok(Literal::typed(text, xsd_iri(datatype)))
    }

    /// Anonymous nodes take a label slot under a key that no source label
    /// can spell.
    fn fresh_blank(&mut self) -> Term {
        let n = self.labels.len();
        self.labels.insert(format!(" anon{n}"), canonical_label(n));
        Term::BlankNode(canonical_label(n))
    }

    fn blank_label(&mut self) -> Result<BlankNode, ParseError> {
        let start = self.pos;
        if !(self.eat('_') && self.eat(':')) {
            return Err(self.error(start, "expected `_:`"));
        }
        let mut label = self.take_while(name_char);
        while label.ends_with('.') {
            label.pop();
            self.pos -= 1;
        }
        if label.is_empty() {
            return Err(self.error(start, "empty blank node label"));
        }
        let next = self.labels.len();
        Ok(self
            .labels
            .entry(label)
            .or_insert_with(|| canonical_label(next))
            .clone())
    }

    fn iri_ref(&mut self) -> Result<Iri, ParseError> {
        let start = self.pos;
        self.bump();
        let mut value = String::new();
        loop {
            match self.bump() {
                None => return Err(self.error(start, "unterminated IRI")),
                Some('>') => break,
                Some('\\') => value.push(self.unicode_escape()?),
                Some(c) if c <= ' ' || matches!(c, '<' | '"' | '{' | '}' | '|' | '^' | '`') => {
                    return Err(self.error(
                        self.pos - c.len_utf8(),
                        format!("character {c:?} is not allowed in an IRI"),
                    ));
                }
                Some(c) => value.push(c),
            }
        }
        self.resolve(start, value)
    }

    fn resolve(&self, at: usize, value: String) -> Result<Iri, ParseError> {
        match Iri::new(value) {
            Ok(i) => Ok(i),
            Err(TermError::RelativeIri(rel)) => match (&self.base, self.format) {
                (Some(base), Format::Turtle) => {
                    let joined = base
                        .join(&rel)
                        .map_err(|e| self.error(at, format!("cannot resolve <{rel}>: {e}")))?;
                    Iri::new(String::from(joined)).map_err(|e| self.error(at, e.to_string()))
                }
                _ => Err(self.error(at, format!("relative IRI <{rel}> with no base"))),
            },
            Err(e) => Err(self.error(at, e.to_string())),
        }
    }

    fn unicode_escape(&mut self) -> Result<char, ParseError> {
        let at = self.pos - 1;
        let len = match self.bump() {
            Some('u') => 4,
            Some('U') => 8,
            _ => return Err(self.error(at, "invalid escape in IRI")),
        };
        self.hex(at, len)
    }

    fn hex(&mut self, at: usize, len: usize) -> Result<char, ParseError> {
        let digits: String = (0..len).filter_map(|_| self.bump()).collect();
        u32::from_str_radix(&digits, 16)
            .ok()
            .filter(|_| digits.len() == len)
            .and_then(char::from_u32)
            .ok_or_else(|| self.error(at, format!("invalid unicode escape `{digits}`")))
    }

    fn pname(&mut self) -> Result<Iri, ParseError> {
        let start = self.pos;
        let prefix = self.take_while(|c| name_char(c) && c != '.');
        if !self.eat(':') {
            return Err(self.error(start, format!("expected a prefixed name, found `{prefix}`")));
        }
        let Some(ns) = self.prefixes.get(&prefix).cloned() else {
            return Err(self.error(start, format!("undeclared prefix `{prefix}:`")));
        };
        let mut local = String::new();
        while let Some(c) = self.peek() {
            if name_char(c) || c == ':' || c == '%' {
                local.push(c);
                self.bump();
            } else if c == '\\' {
                self.bump();
                match self.bump() {
                    Some(e) if "_~.-!$&'()*+,;=/?#@%".contains(e) => local.push(e),
                    _ => return Err(self.error(self.pos, "invalid escape in prefixed name")),
                }
            } else {
                break;
            }
        }
        while local.ends_with('.') {
            local.pop();
            self.pos -= 1;
        }
        Iri::new(format!("{ns}{local}")).map_err(|e| self.error(start, e.to_string()))
    }

    fn literal(&mut self) -> Result<Literal, ParseError> {
        let start = self.pos;
        let quote = self.bump().expect("caller saw a quote");
        if quote == '\'' && self.format != Format::Turtle {
            return Err(self.error(start, "single-quoted literals are Turtle only"));
        }
        let long = self.format == Format::Turtle
            && self.peek() == Some(quote)
            && self.peek_at(1) == Some(quote);
        if long {
            self.bump();
            self.bump();
        }
        let mut lexical = String::new();
        loop {
            let at = self.pos;
            match self.bump() {
                None => return Err(self.error(start, "unterminated literal")),
                Some(c) if c == quote && !long => break,
                Some(c)
                    if c == quote
                        && self.peek() == Some(quote)
                        && self.peek_at(1) == Some(quote) =>
                {
                    // The closing delimiter is the last three quotes of a run.
                    if self.peek_at(2) == Some(quote) {
                        lexical.push(c);
                        continue;
                    }
                    self.bump();
                    self.bump();
                    break;
                }
                Some('\\') => lexical.push(match self.bump() {
                    Some('t') => '\t',
                    Some('b') => '\u{8}',
                    Some('n') => '\n',
                    Some('r') => '\r',
                    Some('f') => '\u{c}',
                    Some('"') => '"',
                    Some('\'') => '\'',
                    Some('\\') => '\\',
                    Some('u') => self.hex(at, 4)?,
                    Some('U') => self.hex(at, 8)?,
                    _ => return Err(self.error(at, "invalid escape in literal")),
                }),
                Some(c @ ('\n' | '\r')) if !long => {
                    return Err(self.error(at, format!("unescaped {c:?} in literal")))
                }
                Some(c) => lexical.push(c),
            }
        }
        if self.eat('@') {
            let at = self.pos;
            let tag = self.take_while(|c| c.is_ascii_alphanumeric() || c == '-');
            return Literal::lang(lexical, tag).map_err(|e| self.error(at, e.to_string()));
        }
        if self.rest().starts_with("^^") {
            self.pos += 2;
            let datatype = match (self.peek(), self.format) {
                (Some('<'), _) => self.iri_ref()?,
                (Some(_), Format::Turtle) => self.pname()?,
                _ => return Err(self.unexpected("a datatype IRI")),
            };
            return Ok(Literal::typed(lexical, datatype));
        }
        Ok(Literal::simple(lexical))
    }
}

fn canonical_label(n: usize) -> BlankNode {
    BlankNode::new(format!("b{n}")).expect("canonical label")
}

fn xsd_iri(s: &str) -> Iri {
    Iri::new(s).expect("xsd constant")
}

/// One position in the output: graph name (none for the default graph)
/// and triple.
type Line = (Option<Iri>, Triple);

fn relabel_term(t: &Term, map: &BTreeMap<BlankNode, BlankNode>) -> Term {
    match t {
        Term::BlankNode(b) => Term::BlankNode(map[b].clone()),
        other => other.clone(),
    }
}

/// Sorts lines and relabels blank nodes `b0`, `b1`, ... in order of first
/// occurrence, repeating until the labelling no longer changes the order.
fn canonical_lines(mut lines: Vec<Line>) -> Vec<Line> {
    lines.sort();
    let blanks = lines
        .iter()
        .flat_map(|(_, t)| [t.subject(), t.object()])
        .filter(|t| t.is_blank())
        .count();
    for _ in 0..=blanks + 1 {
        let mut map = BTreeMap::new();
        for (_, t) in &lines {
            for term in [t.subject(), t.object()] {
                if let Term::BlankNode(b) = term {
                    let n = map.len();
                    map.entry(b.clone()).or_insert_with(|| canonical_label(n));
                }
            }
        }
        let mut next: Vec<Line> = lines
            .iter()
            .map(|(g, t)| {
                let s = relabel_term(t.subject(), &map);
                let o = relabel_term(t.object(), &map);
                let t = Triple::new(s, t.predicate().clone(), o).expect("subject kind unchanged");
                (g.clone(), t)
            })
            .collect();
        next.sort();
        if next == lines {
            break;
        }
        lines = next;
    }
    lines
}

/// The graph with blank nodes relabelled the way the writers label them.
pub fn canonicalize(graph: &Graph) -> Graph {
    let lines = canonical_lines(graph.iter().map(|t| (None, t.clone())).collect());
    let mut out: Graph = lines.into_iter().map(|(_, t)| t).collect();
    out.set_name(graph.name().cloned());
    out
}

/// One line per triple in sorted order, LF line endings.
pub fn write_ntriples(graph: &Graph) -> String {
    let mut out = String::new();
    for (_, t) in canonical_lines(graph.iter().map(|t| (None, t.clone())).collect()) {
        writeln!(out, "{t}").expect("writing to a String");
    }
    out
}

/// Graph names come from [`Graph::name`]; unnamed graphs go to the default
/// graph.
pub fn write_nquads(graphs: &[Graph]) -> String {
    let lines = graphs
        .iter()
        .flat_map(|g| g.iter().map(move |t| (g.name().cloned(), t.clone())))
        .collect();
    let mut out = String::new();
    for (g, t) in canonical_lines(lines) {
        match g {
            Some(name) => writeln!(
                out,
                "{} {} {} {name} .",
                t.subject(),
                t.predicate(),
                t.object()
            ),
            None => writeln!(out, "{t}"),
        }
        .expect("writing to a String");
    }
    out
}

struct Compactor<'p> {
    prefixes: &'p [(String, String)],
}

fn plain_local(local: &str) -> bool {
    let mut chars = local.chars();
    match chars.next() {
        None => true,
        Some(c) if c.is_ascii_alphanumeric() || c == '_' => {
            local
                .chars()
                .all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '-' | '.'))
                && !local.ends_with('.')
        }
        _ => false,
    }
}

impl Compactor<'_> {
    fn iri(&self, i: &Iri) -> String {
        let best = self
            .prefixes
            .iter()
            .filter(|(_, ns)| i.as_str().starts_with(ns.as_str()))
            .filter(|(_, ns)| plain_local(&i.as_str()[ns.len()..]))
            .max_by_key(|(_, ns)| ns.len());
        match best {
            Some((p, ns)) => format!("{p}:{}", &i.as_str()[ns.len()..]),
            None => i.to_string(),
        }
    }

    fn term(&self, t: &Term) -> String {
        match t {
            Term::Iri(i) => self.iri(i),
            Term::BlankNode(b) => b.to_string(),
            Term::Literal(l) => {
                let quoted = Literal::simple(l.lexical()).to_string();
                match l.language() {
                    Some(tag) => format!("{quoted}@{tag}"),
                    None if l.datatype().as_str() == xsd::STRING => quoted,
                    None => format!("{quoted}^^{}", self.iri(l.datatype())),
                }
            }
        }
    }
}

/// Prefix header, then one block per subject with `;` and `,` lists.
/// `prefixes` pairs a prefix name with its namespace.
pub fn write_turtle(graph: &Graph, prefixes: &[(String, String)]) -> String {
    let mut out = String::new();
    for (p, ns) in prefixes {
        writeln!(out, "@prefix {p}: <{ns}> .").expect("writing to a String");
    }
    let c = Compactor { prefixes };
    let rdf_type = Iri::new(rdf::TYPE).expect("constant");
    let lines = canonical_lines(graph.iter().map(|t| (None, t.clone())).collect());
    let mut prev: Option<&Triple> = None;
    for (_, t) in &lines {
        match prev {
            Some(p) if p.subject() == t.subject() && p.predicate() == t.predicate() => {
                out.push_str(" ,\n        ");
            }
            Some(p) if p.subject() == t.subject() => {
                out.push_str(" ;\n    ");
                out.push_str(&verb(&c, &rdf_type, t.predicate()));
                out.push(' ');
            }
            Some(_) | None => {
                if prev.is_some() {
                    out.push_str(" .\n");
                }
                out.push('\n');
                out.push_str(&c.term(t.subject()));
                out.push(' ');
                out.push_str(&verb(&c, &rdf_type, t.predicate()));
                out.push(' ');
            }
        }
        out.push_str(&c.term(t.object()));
        prev = Some(t);
    }
    if prev.is_some() {
        out.push_str(" .\n");
    }
    out
}

fn verb(c: &Compactor<'_>, rdf_type: &Iri, p: &Iri) -> String {
    if p == rdf_type {
        "a".into()
    } else {
        c.iri(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn error_positions() {
        let e = parse_ntriples(
            "<http://a/x> <http://a/p> <http://a/o> .\n<http://a/x> <http://a/p> .\n",
        )
        .unwrap_err();
        assert_eq!((e.line, e.column), (2, 27));
        let e = parse_turtle("<x> <http://a/p> <http://a/o> .", None).unwrap_err();
        assert_eq!((e.line, e.column), (1, 1));
        assert!(e.message.contains("no base"), "{e}");
        let e = parse_turtle("ex:a ex:b ex:c .", None).unwrap_err();
        assert!(e.message.contains("undeclared prefix"), "{e}");
        let e =
            parse_turtle("@prefix ex: <http://ex.org/> .\nex:a ex:b ( 1 ) .", None).unwrap_err();
        assert_eq!(e.line, 2);
    }

    #[test]
    fn turtle_features() {
        let doc = r#"@base <http://ex.org/base/> .
PREFIX ex: <http://ex.org/>
<rel> a ex:City ; ex:name "Paris"@fr, 'P' ;
    ex:pop 2145906 ; ex:area 105.4 ; ex:d 1e3 ; ex:ok true ;
    ex:desc """multi
line""" ;
    ex:during [ a ex:Interval ; ex:year "508"^^<http://www.w3.org/2001/XMLSchema#integer> ] .
_:x ex:p _:y . _:y ex:p _:x .
"#;
        let g = parse_turtle(doc, None).unwrap();
        assert_eq!(g.len(), 13);
        let nt = write_ntriples(&g);
        assert!(nt.contains("<http://ex.org/base/rel> <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> <http://ex.org/City> ."));
        assert!(nt.contains("\"2145906\"^^<http://www.w3.org/2001/XMLSchema#integer>"));
        assert!(nt.contains("\"multi\\nline\""));
        assert!(nt.contains("\"Paris\"@fr"));
        assert_eq!(parse_ntriples(&nt).unwrap(), canonicalize(&g));
    }

    #[test]
    fn labels_follow_first_occurrence() {
        let g = parse_ntriples("_:zz <http://a/p> _:aa .\n_:aa <http://a/p> _:q .\n").unwrap();
        let nt = write_ntriples(&g);
        assert_eq!(nt, "_:b0 <http://a/p> _:b1 .\n_:b1 <http://a/p> _:b2 .\n");
    }

    #[test]
    fn quads_split_by_graph() {
        let doc = "<http://a/s> <http://a/p> <http://a/o> <http://a/g1> .\n<http://a/s> <http://a/p> <http://a/o> .\n";
        let gs = parse_nquads(doc).unwrap();
        assert_eq!(gs.len(), 2);
        assert_eq!(gs[0].name(), None);
        assert_eq!(gs[1].name().unwrap().as_str(), "http://a/g1");
        assert_eq!(write_nquads(&gs), "<http://a/s> <http://a/p> <http://a/o> .\n<http://a/s> <http://a/p> <http://a/o> <http://a/g1> .\n");
    }

    #[test]
    fn empty_documents() {
        assert!(parse_ntriples("# nothing\n").unwrap().is_empty());
        assert_eq!(write_ntriples(&Graph::new()), "");
        let prefixes = [("ex".to_owned(), "http://ex.org/".to_owned())];
        assert_eq!(
            write_turtle(&Graph::new(), &prefixes),
            "@prefix ex: <http://ex.org/> .\n"
        );
    }
}
