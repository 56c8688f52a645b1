//! Basic graph patterns with grouping, aggregates and context filtering.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::decimal::Decimal;
use crate::error::QueryError;
use crate::graph::Graph;
use crate::parts::PartIndex;
use crate::registry::Registry;
use crate::term::{Iri, Term, Triple};
use crate::vocab::xsd;

pub const DEFAULT_SCALE: u32 = 2;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PatternTerm {
    Term(Term),
    Var(String),
}

impl PatternTerm {
    pub fn var(name: impl Into<String>) -> Self {
        PatternTerm::Var(name.into())
    }

    fn as_var(&self) -> Option<&str> {
        match self {
            PatternTerm::Var(v) => Some(v),
            PatternTerm::Term(_) => None,
        }
    }
}

impl<T: Into<Term>> From<T> for PatternTerm {
    fn from(t: T) -> Self {
        PatternTerm::Term(t.into())
    }
}

impl fmt::Display for PatternTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternTerm::Term(t) => t.fmt(f),
            PatternTerm::Var(v) => write!(f, "?{v}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TriplePattern {
    pub subject: PatternTerm,
    pub predicate: PatternTerm,
    pub object: PatternTerm,
}

impl TriplePattern {
    pub fn new(
        subject: impl Into<PatternTerm>,
        predicate: impl Into<PatternTerm>,
        object: impl Into<PatternTerm>,
    ) -> Self {
        TriplePattern {
            subject: subject.into(),
            predicate: predicate.into(),
            object: object.into(),
        }
    }

    fn positions(&self) -> [&PatternTerm; 3] {
        [&self.subject, &self.predicate, &self.object]
    }

    fn vars(&self) -> impl Iterator<Item = &str> + '_ {
        self.positions().into_iter().filter_map(PatternTerm::as_var)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AggregateFn {
    Avg,
    Count,
    Min,
    Max,
    Sum,
}

impl AggregateFn {
    pub fn name(&self) -> &'static str {
        match self {
            AggregateFn::Avg => "AVG",
            AggregateFn::Count => "COUNT",
            AggregateFn::Min => "MIN",
            AggregateFn::Max => "MAX",
            AggregateFn::Sum => "SUM",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Aggregate {
    pub function: AggregateFn,
    pub variable: String,
    /// Column name in the result.
    pub name: String,
    pub distinct: bool,
}

impl Aggregate {
    pub fn new(function: AggregateFn, variable: impl Into<String>, name: impl Into<String>) -> Self {
        Aggregate {
            function,
            variable: variable.into(),
            name: name.into(),
            distinct: false,
        }
    }

    pub fn distinct(mut self) -> Self {
        self.distinct = true;
        self
    }
}

/// Keeps solutions where some bound contextual part lies in `context` for
/// `dimension`, directly or through its part chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContextFilter {
    pub dimension: String,
    pub context: Iri,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern {
    pub triples: Vec<TriplePattern>,
    /// Projected variables when there are no aggregates; empty means all.
    pub select: Vec<String>,
    pub group_by: Option<String>,
    pub aggregates: Vec<Aggregate>,
    pub context: Option<ContextFilter>,
    /// Fractional digits of averages.
    pub scale: u32,
}

impl Pattern {
    pub fn new(triples: Vec<TriplePattern>) -> Self {
        Pattern {
            triples,
            select: Vec::new(),
            group_by: None,
            aggregates: Vec::new(),
            context: None,
            scale: DEFAULT_SCALE,
        }
    }

    pub fn group_by(mut self, var: impl Into<String>) -> Self {
        self.group_by = Some(var.into());
        self
    }

    pub fn aggregate(mut self, a: Aggregate) -> Self {
        self.aggregates.push(a);
        self
    }

    pub fn select(mut self, vars: impl IntoIterator<Item = impl Into<String>>) -> Self {
        self.select = vars.into_iter().map(Into::into).collect();
        self
    }

    pub fn within(mut self, dimension: impl Into<String>, context: Iri) -> Self {
        self.context = Some(ContextFilter {
            dimension: dimension.into(),
            context,
        });
        self
    }

    pub fn variables(&self) -> BTreeSet<&str> {
        self.triples.iter().flat_map(TriplePattern::vars).collect()
    }

    fn check(&self) -> Result<(), QueryError> {
        if self.triples.is_empty() {
            return Err(QueryError::EmptyPattern);
        }
        let vars = self.variables();
        let used = self
            .select
            .iter()
            .chain(self.group_by.iter())
            .chain(self.aggregates.iter().map(|a| &a.variable));
        for v in used {
            if !vars.contains(v.as_str()) {
                return Err(QueryError::UnknownVariable(v.clone()));
            }
        }
        Ok(())
    }
}

pub type Binding = BTreeMap<String, Term>;

fn resolve<'a>(pt: &'a PatternTerm, b: &'a Binding) -> Option<&'a Term> {
    match pt {
        PatternTerm::Term(t) => Some(t),
        PatternTerm::Var(v) => b.get(v),
    }
}

fn bind(pt: &PatternTerm, value: &Term, b: &mut Binding) -> bool {
    match pt {
        PatternTerm::Term(t) => t == value,
        PatternTerm::Var(v) => match b.get(v) {
            Some(existing) => existing == value,
            None => {
                b.insert(v.clone(), value.clone());
                true
            }
        },
    }
}

/// Orders patterns so that each step has as few unbound variables as
/// possible, then as few candidate triples by predicate as possible.
fn join_order<'p>(graph: &Graph, patterns: &'p [TriplePattern]) -> Vec<&'p TriplePattern> {
    let mut extent: BTreeMap<&Iri, usize> = BTreeMap::new();
    for t in graph.iter() {
        *extent.entry(t.predicate()).or_default() += 1;
    }
    let size = |p: &TriplePattern| match &p.predicate {
        PatternTerm::Term(Term::Iri(i)) => extent.get(i).copied().unwrap_or(0),
        PatternTerm::Term(_) => 0,
        PatternTerm::Var(_) => graph.len(),
    };
    let mut bound: BTreeSet<&str> = BTreeSet::new();
    let mut left: Vec<&TriplePattern> = patterns.iter().collect();
    let mut out = Vec::with_capacity(left.len());
    while !left.is_empty() {
        let (i, _) = left
            .iter()
            .enumerate()
            .min_by_key(|(i, p)| {
                let unbound = p.vars().filter(|v| !bound.contains(v)).count();
                (unbound, size(p), *i)
            })
            .expect("non-empty");
        let p = left.remove(i);
        bound.extend(p.vars());
        out.push(p);
    }
    out
}

/// Every solution of the conjunctive pattern, each distinct mapping once,
/// in a deterministic order.
pub fn solutions(graph: &Graph, patterns: &[TriplePattern]) -> Vec<Binding> {
    let order = join_order(graph, patterns);
    let mut current = alloc::vec![Binding::new()];
    for p in order {
        let mut next = Vec::new();
        for b in &current {
            let s = resolve(&p.subject, b);
            let pred = match resolve(&p.predicate, b) {
                Some(Term::Iri(i)) => Some(i),
                Some(_) => continue,
                None => None,
            };
            let o = resolve(&p.object, b);
            for t in graph.matching(s, pred, o) {
                let mut nb = b.clone();
                if bind(&p.subject, t.subject(), &mut nb)
                    && bind(&p.predicate, &Term::Iri(t.predicate().clone()), &mut nb)
                    && bind(&p.object, t.object(), &mut nb)
                {
                    next.push(nb);
                }
            }
        }
        current = next;
        if current.is_empty() {
            break;
        }
    }
    current.sort();
    current.dedup();
    current
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cell {
    Term(Term),
    Number(Decimal),
}

impl Cell {
    /// Plain text: IRIs without brackets, literals by lexical form.
    pub fn text(&self) -> String {
        match self {
            Cell::Term(Term::Iri(i)) => i.as_str().into(),
            Cell::Term(Term::Literal(l)) => l.lexical().into(),
            Cell::Term(t) => t.to_string(),
            Cell::Number(d) => d.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ResultTable {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl ResultTable {
    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

fn numeric_datatype(dt: &str) -> bool {
    let Some(local) = dt.strip_prefix(xsd::NS) else {
        return false;
    };
    matches!(
        local,
        "integer"
            | "decimal"
            | "double"
            | "float"
            | "long"
            | "int"
            | "short"
            | "byte"
            | "nonNegativeInteger"
            | "positiveInteger"
            | "nonPositiveInteger"
            | "negativeInteger"
            | "unsignedLong"
            | "unsignedInt"
            | "unsignedShort"
            | "unsignedByte"
    )
}

/// The value of a numeric literal.
pub fn numeric_value(t: &Term) -> Option<Decimal> {
    let l = t.as_literal()?;
    if !numeric_datatype(l.datatype().as_str()) {
        return None;
    }
    Decimal::parse(l.lexical())
}

/// Numeric literals by value first, everything else by term order.
fn key_cmp(a: &Term, b: &Term) -> Ordering {
    match (numeric_value(a), numeric_value(b)) {
        (Some(x), Some(y)) => x.cmp(&y).then_with(|| a.cmp(b)),
        (Some(_), None) => Ordering::Less,
        (None, Some(_)) => Ordering::Greater,
        (None, None) => a.cmp(b),
    }
}

fn aggregate(
    a: &Aggregate,
    rows: &[&Binding],
    scale: u32,
) -> Result<Decimal, QueryError> {
    let mut values: Vec<&Term> = rows.iter().filter_map(|b| b.get(&a.variable)).collect();
    if a.distinct {
        values.sort();
        values.dedup();
    }
    let count = i128::try_from(values.len()).map_err(|_| QueryError::Overflow(a.variable.clone()))?;
    if a.function == AggregateFn::Count {
        return Ok(Decimal::from_int(count));
    }
    let nums: Vec<Decimal> = values
        .iter()
        .map(|t| numeric_value(t).ok_or_else(|| QueryError::NotNumeric(t.to_string())))
        .collect::<Result<_, _>>()?;
    let overflow = || QueryError::Overflow(a.variable.clone());
    Ok(match a.function {
        AggregateFn::Min => nums.iter().min().copied().unwrap_or(Decimal::ZERO),
        AggregateFn::Max => nums.iter().max().copied().unwrap_or(Decimal::ZERO),
        AggregateFn::Sum | AggregateFn::Avg => {
            let mut sum = Decimal::ZERO;
            for n in &nums {
                sum = sum.checked_add(*n).ok_or_else(overflow)?;
            }
            if a.function == AggregateFn::Sum {
                sum
            } else if count == 0 {
                Decimal::ZERO.round(scale)
            } else {
                sum.checked_div_int(count, scale).ok_or_else(overflow)?
            }
        }
        AggregateFn::Count => unreachable!("handled above"),
    })
}

/// Evaluates `pattern` over `graph`. Contextual parts are recognised
/// through the dimensions of `registry`.
pub fn evaluate(
    graph: &Graph,
    pattern: &Pattern,
    registry: &Registry,
) -> Result<ResultTable, QueryError> {
    pattern.check()?;
    let mut rows = solutions(graph, &pattern.triples);
    if let Some(filter) = &pattern.context {
        if registry.get(&filter.dimension).is_none() {
            return Err(QueryError::UnknownDimension(filter.dimension.clone()));
        }
        let index = PartIndex::new(graph, registry.roles());
        rows.retain(|b| {
            b.values().any(|t| {
                index.is_part(t)
                    && index
                        .resolve(t)
                        .is_ok_and(|r| r.contexts.get(&filter.dimension) == Some(&filter.context))
            })
        });
    }

    if pattern.aggregates.is_empty() && pattern.group_by.is_none() {
        let columns: Vec<String> = if pattern.select.is_empty() {
            pattern.variables().into_iter().map(String::from).collect()
        } else {
            pattern.select.clone()
        };
        let rows = rows
            .iter()
            .map(|b| columns.iter().map(|c| Cell::Term(b[c].clone())).collect())
            .collect();
        return Ok(ResultTable { columns, rows });
    }

    let mut groups: Vec<(Option<&Term>, Vec<&Binding>)> = Vec::new();
    let mut sorted: Vec<&Binding> = rows.iter().collect();
    if let Some(g) = &pattern.group_by {
        sorted.sort_by(|a, b| key_cmp(&a[g], &b[g]));
    }
    for b in sorted {
        let key = pattern.group_by.as_ref().map(|g| &b[g]);
        match groups.last_mut() {
            Some((k, members)) if *k == key => members.push(b),
            _ => groups.push((key, alloc::vec![b])),
        }
    }

    let mut columns: Vec<String> = pattern.group_by.iter().cloned().collect();
    columns.extend(pattern.aggregates.iter().map(|a| a.name.clone()));
    let mut table = ResultTable {
        columns,
        rows: Vec::new(),
    };
    for (key, members) in groups {
        let mut row: Vec<Cell> = key.map(|k| Cell::Term(k.clone())).into_iter().collect();
        for a in &pattern.aggregates {
            row.push(Cell::Number(aggregate(a, &members, pattern.scale)?));
        }
        table.rows.push(row);
    }
    Ok(table)
}

/// The statements whose subject part lies in `context`, directly or
/// through its part chain, together with the scaffolding of every part
/// involved.
pub fn context_slice(graph: &Graph, registry: &Registry, context: &Iri) -> Graph {
    let index = PartIndex::new(graph, registry.roles());
    let mut out = Graph::new();
    for t in index.statements() {
        let Ok(subject) = index.resolve(t.subject()) else {
            continue;
        };
        if !subject.contexts.values().any(|c| c == context) {
            continue;
        }
        let object_chain = if index.is_part(t.object()) {
            match index.resolve(t.object()) {
                Ok(r) => r.chain,
                Err(_) => continue,
            }
        } else {
            Vec::new()
        };
        out.insert(t.clone());
        for part in subject.chain.iter().chain(object_chain.iter()) {
            index.scaffolding_of(part, &mut out);
        }
    }
    out
}

/// Every triple of `graph` matching the pattern, for tests and tooling.
pub fn matching_triples<'g>(graph: &'g Graph, p: &TriplePattern) -> Vec<&'g Triple> {
    graph
        .iter()
        .filter(|t| {
            let mut b = Binding::new();
            bind(&p.subject, t.subject(), &mut b)
                && bind(&p.predicate, &Term::Iri(t.predicate().clone()), &mut b)
                && bind(&p.object, t.object(), &mut b)
        })
        .collect()
}
