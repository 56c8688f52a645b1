//! RDF terms and triples.

use alloc::borrow::ToOwned;
use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;

use crate::error::TermError;
use crate::vocab::{rdf, xsd};

/// An absolute IRI.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Iri(String);

impl Iri {
    /// Checks that `value` carries a scheme and contains no characters
    /// forbidden inside `<...>` in N-Triples.
    pub fn new(value: impl Into<String>) -> Result<Self, TermError> {
        let value = value.into();
        if !has_scheme(&value) {
            return Err(TermError::RelativeIri(value));
        }
        if let Some(c) = value
            .chars()
            .find(|c| matches!(c, '<' | '>' | '"' | '{' | '}' | '|' | '^' | '`' | '\\') || *c <= ' ')
        {
            return Err(TermError::InvalidIriChar { iri: value, found: c });
        }
        Ok(Iri(value))
    }

    /// For compile-time constants that are known to be absolute.
    pub(crate) fn from_static(value: &str) -> Self {
        debug_assert!(has_scheme(value));
        Iri(value.to_owned())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// The part after the last `#`, `/` or `:`.
    pub fn local_name(&self) -> &str {
        let s = self.0.as_str();
        match s.rfind(['#', '/', ':']) {
            Some(i) if i + 1 < s.len() => &s[i + 1..],
            _ => s,
        }
    }

    /// Everything up to and including the last `#`, `/` or `:`.
    pub fn namespace(&self) -> &str {
        let s = self.0.as_str();
        match s.rfind(['#', '/', ':']) {
            Some(i) if i + 1 < s.len() => &s[..=i],
            _ => "",
        }
    }
}

impl fmt::Display for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.0)
    }
}

fn has_scheme(value: &str) -> bool {
    let Some(colon) = value.find(':') else {
        return false;
    };
    let scheme = &value[..colon];
    let mut chars = scheme.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || matches!(c, '+' | '-' | '.'))
}

/// A blank node label, without the `_:` prefix.
///
/// Ordering puts shorter labels first so that canonical labels
/// (`b0`, `b1`, ..., `b10`) sort numerically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BlankNode(String);

impl BlankNode {
    pub fn new(label: impl Into<String>) -> Result<Self, TermError> {
        let label = label.into();
        let valid = !label.is_empty()
            && label
                .chars()
                .all(|c| c.is_alphanumeric() || matches!(c, '_' | '-' | '.'))
            && !label.ends_with('.');
        if valid {
            Ok(BlankNode(label))
        } else {
            Err(TermError::InvalidBlankNode(label))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl Ord for BlankNode {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for BlankNode {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BlankNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "_:{}", self.0)
    }
}

/// A literal. Equality is term equality: lexical form, datatype and
/// language tag must all match.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    lexical: String,
    datatype: Iri,
    language: Option<String>,
}

impl Literal {
    /// An `xsd:string` literal.
    pub fn simple(lexical: impl Into<String>) -> Self {
        Literal {
            lexical: lexical.into(),
            datatype: Iri::from_static(xsd::STRING),
            language: None,
        }
    }

    pub fn typed(lexical: impl Into<String>, datatype: Iri) -> Self {
        Literal {
            lexical: lexical.into(),
            datatype,
            language: None,
        }
    }

    /// A language-tagged string; the datatype is always `rdf:langString`.
    pub fn lang(lexical: impl Into<String>, tag: impl Into<String>) -> Result<Self, TermError> {
        let tag: String = tag.into();
        let valid = !tag.is_empty()
            && tag.split('-').all(|sub| {
                !sub.is_empty() && sub.len() <= 8 && sub.chars().all(|c| c.is_ascii_alphanumeric())
            })
            && tag.chars().next().is_some_and(|c| c.is_ascii_alphabetic());
        if !valid {
            return Err(TermError::InvalidLanguageTag(tag));
        }
        Ok(Literal {
            lexical: lexical.into(),
            datatype: Iri::from_static(rdf::LANG_STRING),
            language: Some(tag.to_ascii_lowercase()),
        })
    }

    pub fn integer(value: i128) -> Self {
        Literal::typed(alloc::format!("{value}"), Iri::from_static(xsd::INTEGER))
    }

    pub fn lexical(&self) -> &str {
        &self.lexical
    }

    pub fn datatype(&self) -> &Iri {
        &self.datatype
    }

    pub fn language(&self) -> Option<&str> {
        self.language.as_deref()
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("\"")?;
        for c in self.lexical.chars() {
            match c {
                '"' => f.write_str("\\\"")?,
                '\\' => f.write_str("\\\\")?,
                '\n' => f.write_str("\\n")?,
                '\r' => f.write_str("\\r")?,
                '\t' => f.write_str("\\t")?,
                c => write!(f, "{c}")?,
            }
        }
        f.write_str("\"")?;
        if let Some(tag) = &self.language {
            write!(f, "@{tag}")
        } else if self.datatype.as_str() == xsd::STRING {
            Ok(())
        } else {
            write!(f, "^^{}", self.datatype)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Iri(Iri),
    BlankNode(BlankNode),
    Literal(Literal),
}

impl Term {
    pub fn as_iri(&self) -> Option<&Iri> {
        match self {
            Term::Iri(iri) => Some(iri),
            _ => None,
        }
    }

    pub fn as_literal(&self) -> Option<&Literal> {
        match self {
            Term::Literal(lit) => Some(lit),
            _ => None,
        }
    }

    pub fn is_literal(&self) -> bool {
        matches!(self, Term::Literal(_))
    }

    pub fn is_blank(&self) -> bool {
        matches!(self, Term::BlankNode(_))
    }
}

impl From<Iri> for Term {
    fn from(iri: Iri) -> Self {
        Term::Iri(iri)
    }
}

impl From<&Iri> for Term {
    fn from(iri: &Iri) -> Self {
        Term::Iri(iri.clone())
    }
}

impl From<BlankNode> for Term {
    fn from(b: BlankNode) -> Self {
        Term::BlankNode(b)
    }
}

impl From<Literal> for Term {
    fn from(l: Literal) -> Self {
        Term::Literal(l)
    }
}

impl fmt::Display for Term {
    /// N-Triples rendering.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Iri(i) => i.fmt(f),
            Term::BlankNode(b) => b.fmt(f),
            Term::Literal(l) => l.fmt(f),
        }
    }
}

/// An RDF triple. The subject is never a literal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple {
    subject: Term,
    predicate: Iri,
    object: Term,
}

impl Triple {
    pub fn new(
        subject: impl Into<Term>,
        predicate: impl Into<Iri>,
        object: impl Into<Term>,
    ) -> Result<Self, TermError> {
        let subject = subject.into();
        if subject.is_literal() {
            return Err(TermError::LiteralSubject);
        }
        Ok(Triple {
            subject,
            predicate: predicate.into(),
            object: object.into(),
        })
    }

    /// Infallible constructor for an IRI subject.
    pub fn with_iri_subject(subject: &Iri, predicate: &Iri, object: impl Into<Term>) -> Self {
        Triple {
            subject: Term::Iri(subject.clone()),
            predicate: predicate.clone(),
            object: object.into(),
        }
    }

    pub fn subject(&self) -> &Term {
        &self.subject
    }

    pub fn predicate(&self) -> &Iri {
        &self.predicate
    }

    pub fn object(&self) -> &Term {
        &self.object
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} .", self.subject, self.predicate, self.object)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn iri_requires_scheme() {
        assert!(Iri::new("http://ex.org/Paris").is_ok());
        assert!(Iri::new("urn:isbn:123").is_ok());
        assert!(matches!(Iri::new("Paris"), Err(TermError::RelativeIri(_))));
        assert!(matches!(Iri::new("1http://x"), Err(TermError::RelativeIri(_))));
        assert!(Iri::new("http://ex.org/a b").is_err());
    }

    #[test]
    fn local_names() {
        let i = Iri::new("http://ex.org/ns#capitalOf").unwrap();
        assert_eq!(i.local_name(), "capitalOf");
        assert_eq!(i.namespace(), "http://ex.org/ns#");
        let i = Iri::new("http://ex.org/year508").unwrap();
        assert_eq!(i.local_name(), "year508");
    }

    #[test]
    fn literal_defaults() {
        let l = Literal::simple("x");
        assert_eq!(l.datatype().as_str(), xsd::STRING);
        let l = Literal::lang("chat", "FR").unwrap();
        assert_eq!(l.datatype().as_str(), rdf::LANG_STRING);
        assert_eq!(l.language(), Some("fr"));
        assert!(Literal::lang("x", "").is_err());
    }

    #[test]
    fn literal_subject_rejected() {
        let p = Iri::new("http://ex.org/p").unwrap();
        assert_eq!(
            Triple::new(Literal::simple("x"), p.clone(), Literal::simple("y")),
            Err(TermError::LiteralSubject)
        );
    }

    #[test]
    fn blank_nodes_sort_numerically() {
        let b2 = BlankNode::new("b2").unwrap();
        let b10 = BlankNode::new("b10").unwrap();
        assert!(b2 < b10);
    }

    #[test]
    fn literal_display_escapes() {
        let l = Literal::simple("a\"b\\c\n");
        assert_eq!(alloc::format!("{l}"), "\"a\\\"b\\\\c\\n\"");
        assert_eq!(
            alloc::format!("{}", Literal::integer(8000)),
            "\"8000\"^^<http://www.w3.org/2001/XMLSchema#integer>"
        );
    }
}
