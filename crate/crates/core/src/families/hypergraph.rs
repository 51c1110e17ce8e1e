//! Hypergraphs: sets of hyperedges of size at least two.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result, DEFAULT_BUDGET};
use crate::label::{lex_key, parse_label, LabelSet, Relabeling};
use crate::species::{AdjunctionSpec, OrderSpec, Product, Species};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hypergraph {
    vertices: LabelSet,
    edges: BTreeSet<LabelSet>,
}

/// All subsets of `labels` of size at least two, in (size, lex) order.
fn possible_edges(labels: LabelSet) -> Vec<LabelSet> {
    let mut all: Vec<LabelSet> = labels.subsets().filter(|e| e.len() >= 2).collect();
    all.sort_by_key(|&e| lex_key(e));
    all
}

impl Hypergraph {
    pub fn new(vertices: LabelSet, edges: impl IntoIterator<Item = LabelSet>) -> Result<Hypergraph> {
        let mut set = BTreeSet::new();
        for e in edges {
            if e.len() < 2 {
                return Err(Error::Parse(format!("hyperedge {e} has fewer than two vertices")));
            }
            if !e.is_subset(vertices) {
                return Err(Error::Parse(format!("hyperedge {e} leaves {vertices}")));
            }
            set.insert(e);
        }
        Ok(Hypergraph { vertices, edges: set })
    }

    pub fn empty(vertices: LabelSet) -> Hypergraph {
        Hypergraph {
            vertices,
            edges: BTreeSet::new(),
        }
    }

    pub fn vertices(&self) -> LabelSet {
        self.vertices
    }

    pub fn edges(&self) -> impl Iterator<Item = LabelSet> + '_ {
        self.edges.iter().copied()
    }

    pub fn complement(&self) -> Hypergraph {
        Hypergraph {
            vertices: self.vertices,
            edges: possible_edges(self.vertices)
                .into_iter()
                .filter(|e| !self.edges.contains(e))
                .collect(),
        }
    }

    pub fn restrict(&self, s: LabelSet) -> Hypergraph {
        Hypergraph {
            vertices: s,
            edges: self.edges.iter().filter(|e| e.is_subset(s)).copied().collect(),
        }
    }

    pub fn disjoint_union(&self, other: &Hypergraph) -> Result<Hypergraph> {
        if !self.vertices.is_disjoint(other.vertices) {
            return Err(Error::LabelOverlap {
                left: self.vertices.to_string(),
                right: other.vertices.to_string(),
            });
        }
        Ok(Hypergraph {
            vertices: self.vertices.union(other.vertices),
            edges: self.edges.union(&other.edges).copied().collect(),
        })
    }

    /// Disjoint union plus every hyperedge meeting both sides.
    pub fn free_product(&self, other: &Hypergraph) -> Result<Hypergraph> {
        let mut h = self.disjoint_union(other)?;
        for e in possible_edges(h.vertices) {
            if !e.is_disjoint(self.vertices) && !e.is_disjoint(other.vertices) {
                h.edges.insert(e);
            }
        }
        Ok(h)
    }

    pub fn relabel(&self, f: &Relabeling) -> Hypergraph {
        Hypergraph {
            vertices: f.apply_set(self.vertices),
            edges: self.edges.iter().map(|&e| f.apply_set(e)).collect(),
        }
    }

    /// Vertex sets of connected components, ordered by minimum.
    pub fn components(&self) -> Vec<LabelSet> {
        let mut comps: Vec<LabelSet> = self.vertices.iter().map(LabelSet::singleton).collect();
        for &e in &self.edges {
            let (touching, rest): (Vec<LabelSet>, Vec<LabelSet>) = comps.into_iter().partition(|c| !c.is_disjoint(e));
            let merged = touching.into_iter().fold(LabelSet::EMPTY, LabelSet::union);
            comps = rest;
            comps.push(merged);
        }
        comps.sort_by_key(|c| c.min_label());
        comps
    }
}

impl fmt::Debug for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&Hypergraphs::encode_hypergraph(self))
    }
}

#[derive(Clone, Debug)]
pub struct Hypergraphs {
    pub budget: usize,
}

impl Default for Hypergraphs {
    fn default() -> Self {
        Hypergraphs { budget: DEFAULT_BUDGET }
    }
}

pub(crate) fn encode_set(s: LabelSet) -> String {
    let items: Vec<String> = s.iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

pub(crate) fn parse_set(tok: &str) -> Result<LabelSet> {
    let inner = tok
        .trim()
        .strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .ok_or_else(|| Error::Parse(format!("expected `{{...}}`, found `{tok}`")))?;
    let mut set = LabelSet::EMPTY;
    for v in inner.split(',').filter(|v| !v.trim().is_empty()) {
        set.insert(parse_label(v)?);
    }
    Ok(set)
}

/// Splits `"<prefix>:<labels>;<key>=a;b;c"` into the label set and items.
pub(crate) fn split_encoding<'a>(s: &'a str, prefix: &str, key: &str) -> Result<(LabelSet, Vec<&'a str>)> {
    let body = s
        .trim()
        .strip_prefix(prefix)
        .ok_or_else(|| Error::Parse(format!("expected `{prefix}` prefix in `{s}`")))?;
    let mut parts = body.split(';');
    let labels = LabelSet::parse(parts.next().unwrap_or(""))?;
    let first = parts
        .next()
        .and_then(|p| p.strip_prefix(key))
        .ok_or_else(|| Error::Parse(format!("missing `{key}` in `{s}`")))?;
    let items = std::iter::once(first)
        .chain(parts)
        .filter(|p| !p.trim().is_empty())
        .collect();
    Ok((labels, items))
}

impl Hypergraphs {
    pub fn encode_hypergraph(h: &Hypergraph) -> String {
        let mut edges: Vec<LabelSet> = h.edges.iter().copied().collect();
        edges.sort_by_key(|&e| lex_key(e));
        let edges: Vec<String> = edges.into_iter().map(encode_set).collect();
        format!("H:{};E={}", h.vertices.encode(), edges.join(";"))
    }
}

impl Species for Hypergraphs {
    type Obj = Hypergraph;

    fn name(&self) -> &str {
        "hypergraphs"
    }

    fn budget(&self) -> usize {
        self.budget
    }

    fn labels(&self, x: &Hypergraph) -> LabelSet {
        x.vertices
    }

    fn unit(&self) -> Hypergraph {
        Hypergraph::empty(LabelSet::EMPTY)
    }

    fn carrier_size(&self, labels: LabelSet) -> u128 {
        let n = labels.len() as u32;
        let edges = (1u128 << n) - n as u128 - 1;
        if edges >= 128 {
            u128::MAX
        } else {
            1u128 << edges
        }
    }

    fn enumerate(&self, labels: LabelSet) -> Vec<Hypergraph> {
        let all = possible_edges(labels);
        (0u64..(1u64 << all.len()))
            .map(|mask| Hypergraph {
                vertices: labels,
                edges: all
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, e)| *e)
                    .collect(),
            })
            .collect()
    }

    fn relabel(&self, x: &Hypergraph, f: &Relabeling) -> Hypergraph {
        x.relabel(f)
    }

    fn mult(&self, x: &Hypergraph, y: &Hypergraph) -> Result<Hypergraph> {
        x.disjoint_union(y)
    }

    fn restrict(&self, x: &Hypergraph, s: LabelSet) -> Hypergraph {
        x.restrict(s)
    }

    fn free_mult(&self, x: &Hypergraph, y: &Hypergraph) -> Result<Hypergraph> {
        x.free_product(y)
    }

    fn has_free_mult(&self) -> bool {
        true
    }

    fn native_leq(&self, a: &Hypergraph, b: &Hypergraph) -> bool {
        a.vertices == b.vertices && a.edges.is_subset(&b.edges)
    }

    fn encode(&self, x: &Hypergraph) -> String {
        Hypergraphs::encode_hypergraph(x)
    }

    fn parse(&self, s: &str) -> Result<Hypergraph> {
        let (vertices, items) = split_encoding(s, "H:", "E=")?;
        let edges = items.into_iter().map(parse_set).collect::<Result<Vec<_>>>()?;
        Hypergraph::new(vertices, edges)
    }

    fn primary_adjunction(&self) -> AdjunctionSpec {
        AdjunctionSpec {
            order: OrderSpec::NATIVE,
            product: Product::Free,
        }
    }
}
