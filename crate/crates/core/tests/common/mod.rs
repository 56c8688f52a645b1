//! Hand-built fixtures, a graph isomorphism check and an edge-enumeration
//! oracle shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use ndfluents_core::{
    AnnotatedStatement, CombinationModel, ContextAssignment, ContextDimension, Graph, Iri, Literal,
    Registry, Term, Triple, Vocabulary,
};
use proptest::prelude::*;

pub const ND: &str = "http://purl.org/NET/ndfluents#";
pub const FD: &str = "http://purl.org/NET/ndfluents/4dFluents#";
pub const PV: &str = "http://purl.org/NET/ndfluents/provenance#";
pub const TR: &str = "http://purl.org/NET/ndfluents/trust#";
pub const EX: &str = "http://example.org/";
pub const RDF_TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";

pub fn i(s: &str) -> Iri {
    Iri::new(s).unwrap()
}

pub fn ex(local: &str) -> Iri {
    i(&format!("{EX}{local}"))
}

pub fn nd(local: &str) -> Iri {
    i(&format!("{ND}{local}"))
}

pub fn fd(local: &str) -> Iri {
    i(&format!("{FD}{local}"))
}

pub fn pv(local: &str) -> Iri {
    i(&format!("{PV}{local}"))
}

pub fn t(s: &Iri, p: &Iri, o: impl Into<Term>) -> Triple {
    Triple::with_iri_subject(s, p, o)
}

pub fn a(s: &Iri, class: &Iri) -> Triple {
    t(s, &i(RDF_TYPE), class)
}

pub fn graph(triples: impl IntoIterator<Item = Triple>) -> Graph {
    triples.into_iter().collect()
}

pub fn trust() -> ContextDimension {
    ContextDimension::standard("trust", TR, "Trust").unwrap()
}

pub fn three_dims() -> Registry {
    Registry::new(
        Vocabulary::default(),
        [
            ContextDimension::temporal(),
            ContextDimension::provenance(),
            trust(),
        ],
    )
    .unwrap()
}

pub fn models() -> Vec<CombinationModel> {
    vec![
        CombinationModel::ContextsInContext {
            order: vec!["temporal".into(), "provenance".into(), "trust".into()],
        },
        CombinationModel::MultiContextPart,
        CombinationModel::CombinedExtent,
    ]
}

pub fn statement(s: &str, p: &str, o: impl Into<Term>, ctx: &[(&str, Iri)]) -> AnnotatedStatement {
    AnnotatedStatement::new(
        t(&ex(s), &ex(p), o),
        ctx.iter()
            .map(|(d, c)| ContextAssignment::new(*d, c.clone())),
    )
    .unwrap()
}

/// Paris@1 capitalOf France@1 within interval t1.
pub fn temporal_only() -> Graph {
    let (p1, f1, t1) = (ex("Paris@1"), ex("France@1"), ex("t1"));
    graph([
        a(&p1, &fd("TemporalPart")),
        a(&f1, &fd("TemporalPart")),
        t(&p1, &ex("capitalOf"), &f1),
        t(&p1, &fd("temporalExtent"), &t1),
        t(&f1, &fd("temporalExtent"), &t1),
        t(&p1, &fd("temporalPartOf"), ex("Paris")),
        t(&f1, &fd("temporalPartOf"), ex("France")),
        a(&t1, &fd("Interval")),
    ])
}

/// Provenance parts nested in temporal parts.
pub fn nested_parts() -> Graph {
    let mut g = temporal_only();
    g.remove(&t(&ex("Paris@1"), &ex("capitalOf"), ex("France@1")));
    let (p11, f11, p1) = (ex("Paris@1.1"), ex("France@1.1"), ex("p1"));
    g.extend([
        a(&p11, &pv("ProvenancePart")),
        a(&f11, &pv("ProvenancePart")),
        a(&p1, &pv("Provenance")),
        t(&p11, &ex("capitalOf"), &f11),
        t(&p11, &pv("provenanceExtent"), &p1),
        t(&f11, &pv("provenanceExtent"), &p1),
        t(&p11, &pv("provenancePartOf"), ex("Paris@1")),
        t(&f11, &pv("provenancePartOf"), ex("France@1")),
    ]);
    g
}

/// One part per entity with a temporal and a provenance extent.
pub fn multi_extent() -> Graph {
    let mut g = temporal_only();
    let (p1, f1, pr) = (ex("Paris@1"), ex("France@1"), ex("p1"));
    g.extend([
        a(&p1, &pv("ProvenancePart")),
        a(&f1, &pv("ProvenancePart")),
        t(&p1, &pv("provenanceExtent"), &pr),
        t(&f1, &pv("provenanceExtent"), &pr),
        t(&p1, &pv("provenancePartOf"), ex("Paris")),
        t(&f1, &pv("provenancePartOf"), ex("France")),
        a(&pr, &pv("Provenance")),
    ]);
    g
}

/// A single combined extent, plus the member links that say which
/// contexts the combined one stands for.
pub fn combined_extent() -> Graph {
    let c = "http://purl.org/NET/ndfluents/combined#";
    let ci = |l: &str| i(&format!("{c}{l}"));
    let (p1, f1, tp1) = (ex("Paris@1"), ex("France@1"), ex("t1&p1"));
    graph([
        a(&p1, &ci("Provenance_TemporalPart")),
        a(&f1, &ci("Provenance_TemporalPart")),
        t(&p1, &ex("capitalOf"), &f1),
        t(&p1, &ci("provenance_temporalExtent"), &tp1),
        t(&f1, &ci("provenance_temporalExtent"), &tp1),
        t(&p1, &ci("provenance_temporalPartOf"), ex("Paris")),
        t(&f1, &ci("provenance_temporalPartOf"), ex("France")),
        a(&tp1, &ci("Provenance_TemporalContext")),
        t(&tp1, &ci("memberContext"), ex("t1")),
        t(&tp1, &ci("memberContext"), ex("p1")),
        a(&ex("t1"), &fd("Interval")),
        a(&ex("p1"), &pv("Provenance")),
    ])
}

/// The Paris/France statement with the given contexts out of t1 and p1.
pub fn paris(dims: &[&str]) -> AnnotatedStatement {
    let ctx: Vec<(&str, Iri)> = dims
        .iter()
        .map(|d| match *d {
            "temporal" => ("temporal", ex("t1")),
            "provenance" => ("provenance", ex("p1")),
            other => panic!("no fixture context for {other}"),
        })
        .collect();
    statement("Paris", "capitalOf", ex("France"), &ctx)
}

fn rename(g: &Graph, map: &BTreeMap<Iri, Iri>) -> BTreeSet<Triple> {
    let term = |x: &Term| match x {
        Term::Iri(i) => Term::Iri(map.get(i).cloned().unwrap_or_else(|| i.clone())),
        other => other.clone(),
    };
    g.iter()
        .map(|tr| {
            let p = map
                .get(tr.predicate())
                .cloned()
                .unwrap_or_else(|| tr.predicate().clone());
            Triple::new(term(tr.subject()), p, term(tr.object())).unwrap()
        })
        .collect()
}

fn iris(g: &Graph, keep: &dyn Fn(&Iri) -> bool) -> Vec<Iri> {
    let mut out = BTreeSet::new();
    for tr in g {
        for x in [tr.subject(), tr.object()] {
            if let Term::Iri(i) = x {
                if keep(i) {
                    out.insert(i.clone());
                }
            }
        }
    }
    out.into_iter().collect()
}

/// Whether some bijection between the minted IRIs of `a` and `b` maps one
/// graph onto the other. Everything else must match exactly.
pub fn isomorphic_modulo(a: &Graph, b: &Graph, minted: &dyn Fn(&Iri) -> bool) -> bool {
    let (ma, mb) = (iris(a, minted), iris(b, minted));
    if ma.len() != mb.len() || a.len() != b.len() {
        return false;
    }
    let target: BTreeSet<Triple> = b.iter().cloned().collect();
    let mut used = vec![false; mb.len()];
    let mut map = BTreeMap::new();
    fn search(
        k: usize,
        ma: &[Iri],
        mb: &[Iri],
        used: &mut [bool],
        map: &mut BTreeMap<Iri, Iri>,
        a: &Graph,
        target: &BTreeSet<Triple>,
    ) -> bool {
        if k == ma.len() {
            return rename(a, map) == *target;
        }
        for j in 0..mb.len() {
            if !used[j] {
                used[j] = true;
                map.insert(ma[k].clone(), mb[j].clone());
                if search(k + 1, ma, mb, used, map, a, target) {
                    return true;
                }
                used[j] = false;
            }
        }
        map.remove(&ma[k]);
        false
    }
    search(0, &ma, &mb, &mut used, &mut map, a, &target)
}

/// Parts, fixture part names and combined contexts.
pub fn is_minted(iri: &Iri) -> bool {
    iri.as_str().contains('@')
        || iri
            .as_str()
            .starts_with("http://purl.org/NET/ndfluents/context#")
        || iri.as_str() == format!("{EX}t1&p1")
}

/// Counts the edges the pattern calls for by enumerating them as abstract
/// tuples, without building any RDF.
pub fn oracle_count(statements: &[AnnotatedStatement], model: &CombinationModel) -> usize {
    let mut edges: BTreeSet<Vec<String>> = BTreeSet::new();
    let e = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<String>>();
    for s in statements {
        let ctx: Vec<(String, String)> = s
            .contexts()
            .map(|c| (c.dimension.clone(), c.context.as_str().to_string()))
            .collect();
        let mut endpoints = vec![s.base().subject().to_string()];
        let object_is_iri = matches!(s.base().object(), Term::Iri(_));
        if object_is_iri {
            endpoints.push(s.base().object().to_string());
        }
        let mut parts = Vec::new();
        for entity in &endpoints {
            let part = match model {
                CombinationModel::ContextsInContext { order } => {
                    let mut parent = entity.clone();
                    for d in order {
                        let Some((_, c)) = ctx.iter().find(|(dd, _)| dd == d) else {
                            continue;
                        };
                        let part = format!("{parent}/{d}={c}");
                        edges.insert(e(&["type", &part, d]));
                        edges.insert(e(&["partOf", &part, d, &parent]));
                        edges.insert(e(&["extent", &part, d, c]));
                        edges.insert(e(&["ctxtype", c, d]));
                        parent = part;
                    }
                    parent
                }
                CombinationModel::CombinedExtent if ctx.len() >= 2 => {
                    let combo: Vec<&str> = ctx.iter().map(|(d, _)| d.as_str()).collect();
                    let combo = combo.join("+");
                    let cctx = format!("{ctx:?}");
                    let part = format!("{entity}/{cctx}");
                    edges.insert(e(&["type", &part, &combo]));
                    edges.insert(e(&["partOf", &part, &combo, entity]));
                    edges.insert(e(&["extent", &part, &combo, &cctx]));
                    edges.insert(e(&["ctxtype", &cctx, &combo]));
                    for (d, c) in &ctx {
                        edges.insert(e(&["member", &cctx, c]));
                        edges.insert(e(&["ctxtype", c, d]));
                    }
                    part
                }
                _ => {
                    let part = format!("{entity}/{ctx:?}");
                    for (d, c) in &ctx {
                        edges.insert(e(&["type", &part, d]));
                        edges.insert(e(&["partOf", &part, d, entity]));
                        edges.insert(e(&["extent", &part, d, c]));
                        edges.insert(e(&["ctxtype", c, d]));
                    }
                    part
                }
            };
            parts.push(part);
        }
        let object = if object_is_iri {
            parts[1].clone()
        } else {
            s.base().object().to_string()
        };
        edges.insert(e(&[
            "stmt",
            &parts[0],
            s.base().predicate().as_str(),
            &object,
        ]));
    }
    edges.len()
}

const DIMS: [(&str, &str, &str); 3] = [
    ("temporal", "http://example.org/time/", "t"),
    ("provenance", "http://example.org/source/", "p"),
    ("trust", "http://example.org/trust/", "r"),
];

/// Up to ten statements over a small pool of entities, predicates and
/// contexts, so that parts are frequently shared between statements.
pub fn arb_corpus() -> impl Strategy<Value = Vec<AnnotatedStatement>> {
    let one = (
        0usize..5,
        0usize..3,
        prop_oneof![3 => (0usize..5).prop_map(Ok), 1 => (0i128..4).prop_map(Err)],
        1u8..8,
        proptest::array::uniform3(0usize..3),
    )
        .prop_map(|(s, p, o, mask, ctx)| {
            let object: Term = match o {
                Ok(o) => ex(&format!("e{o}")).into(),
                Err(n) => Literal::integer(n).into(),
            };
            let assignments = DIMS
                .iter()
                .enumerate()
                .filter(|(k, _)| mask & (1 << k) != 0)
                .map(|(k, (d, ns, prefix))| {
                    ContextAssignment::new(*d, i(&format!("{ns}{prefix}{}", ctx[k])))
                });
            AnnotatedStatement::new(
                t(&ex(&format!("e{s}")), &ex(&format!("p{p}")), object),
                assignments,
            )
            .unwrap()
        });
    proptest::collection::vec(one, 0..=10)
}

pub fn normalized(statements: &[AnnotatedStatement]) -> BTreeSet<AnnotatedStatement> {
    statements
        .iter()
        .map(AnnotatedStatement::without_descriptions)
        .collect()
}
