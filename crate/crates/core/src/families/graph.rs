//! Simple graphs on a label set: disjoint union, restriction, free product,
//! flats, contraction and acyclic orientations.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result, DEFAULT_BUDGET};
use crate::label::{parse_label, LabelSet, Relabeling};
use crate::linear::FreeVector;
use crate::poset::IntPolynomial;
use crate::species::{AdjunctionSpec, OrderSpec, Product, Species};

/// Edges are stored as `(i, j)` with `i < j`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    vertices: LabelSet,
    edges: BTreeSet<(u8, u8)>,
}

fn ordered(a: u8, b: u8) -> (u8, u8) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

impl Graph {
    pub fn new(vertices: LabelSet, edges: impl IntoIterator<Item = (u8, u8)>) -> Result<Graph> {
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::Parse(format!("loop at {a}")));
            }
            if !vertices.contains(a) || !vertices.contains(b) {
                return Err(Error::Parse(format!("edge {a}-{b} leaves {vertices}")));
            }
            set.insert(ordered(a, b));
        }
        Ok(Graph { vertices, edges: set })
    }

    pub fn edgeless(vertices: LabelSet) -> Graph {
        Graph {
            vertices,
            edges: BTreeSet::new(),
        }
    }

    pub fn complete(vertices: LabelSet) -> Graph {
        let vs: Vec<u8> = vertices.iter().collect();
        let mut edges = BTreeSet::new();
        for (i, &a) in vs.iter().enumerate() {
            for &b in &vs[i + 1..] {
                edges.insert((a, b));
            }
        }
        Graph { vertices, edges }
    }

    pub fn vertices(&self) -> LabelSet {
        self.vertices
    }

    pub fn edges(&self) -> impl Iterator<Item = (u8, u8)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, a: u8, b: u8) -> bool {
        self.edges.contains(&ordered(a, b))
    }

    pub fn is_subgraph_of(&self, other: &Graph) -> bool {
        self.vertices == other.vertices && self.edges.is_subset(&other.edges)
    }

    pub fn complement(&self) -> Graph {
        let full = Graph::complete(self.vertices);
        Graph {
            vertices: self.vertices,
            edges: full.edges.difference(&self.edges).copied().collect(),
        }
    }

    pub fn restrict(&self, s: LabelSet) -> Graph {
        Graph {
            vertices: s,
            edges: self
                .edges
                .iter()
                .filter(|(a, b)| s.contains(*a) && s.contains(*b))
                .copied()
                .collect(),
        }
    }

    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        if !self.vertices.is_disjoint(other.vertices) {
            return Err(Error::LabelOverlap {
                left: self.vertices.to_string(),
                right: other.vertices.to_string(),
            });
        }
        Ok(Graph {
            vertices: self.vertices.union(other.vertices),
            edges: self.edges.union(&other.edges).copied().collect(),
        })
    }

    /// Disjoint union plus every edge between the two vertex sets.
    pub fn free_product(&self, other: &Graph) -> Result<Graph> {
        let mut g = self.disjoint_union(other)?;
        for a in self.vertices.iter() {
            for b in other.vertices.iter() {
                g.edges.insert(ordered(a, b));
            }
        }
        Ok(g)
    }

    pub fn relabel(&self, f: &Relabeling) -> Graph {
        Graph {
            vertices: f.apply_set(self.vertices),
            edges: self
                .edges
                .iter()
                .map(|&(a, b)| ordered(f.apply(a), f.apply(b)))
                .collect(),
        }
    }

    /// Vertex sets of the connected components, ordered by minimum.
    pub fn components(&self) -> Vec<LabelSet> {
        let mut comps: Vec<LabelSet> = Vec::new();
        let mut seen = LabelSet::EMPTY;
        for v in self.vertices.iter() {
            if seen.contains(v) {
                continue;
            }
            let mut comp = LabelSet::singleton(v);
            let mut stack = vec![v];
            while let Some(u) = stack.pop() {
                for &(a, b) in &self.edges {
                    let w = if a == u {
                        b
                    } else if b == u {
                        a
                    } else {
                        continue;
                    };
                    if !comp.contains(w) {
                        comp.insert(w);
                        stack.push(w);
                    }
                }
            }
            seen = seen.union(comp);
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Size of a spanning forest: `|V| - #components`.
    pub fn rank(&self) -> usize {
        self.vertices.len() - self.components().len()
    }

    /// Spanning subgraphs `H` of `self` that agree with `self` on each of
    /// their own connected components.
    pub fn flats(&self) -> Vec<Graph> {
        let edges: Vec<(u8, u8)> = self.edges.iter().copied().collect();
        let mut out = Vec::new();
        for mask in 0u64..(1u64 << edges.len()) {
            let h = Graph {
                vertices: self.vertices,
                edges: edges
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, e)| *e)
                    .collect(),
            };
            if self.is_flat(&h) {
                out.push(h);
            }
        }
        out.sort();
        out
    }

    pub fn is_flat(&self, h: &Graph) -> bool {
        h.is_subgraph_of(self) && h.components().into_iter().all(|c| h.restrict(c) == self.restrict(c))
    }

    /// Contracts each component of the flat `h` to a point. Loops and
    /// parallel edges are dropped.
    pub fn contract(&self, h: &Graph) -> Result<Quotient> {
        if !self.is_flat(h) {
            return Err(Error::NotAFlat {
                graph: Graphs::encode_graph(self),
                flat: Graphs::encode_graph(h),
            });
        }
        let components = h.components();
        let index = |v: u8| components.iter().position(|c| c.contains(v)).unwrap() as u8;
        let edges: Vec<(u8, u8)> = self
            .edges
            .iter()
            .map(|&(a, b)| (index(a), index(b)))
            .filter(|(a, b)| a != b)
            .collect();
        let graph = Graph::new(LabelSet::range(components.len()), edges)?;
        Ok(Quotient { components, graph })
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&Graphs::encode_graph(self))
    }
}

/// `G/H`: one vertex per component of `H` (vertex `i` is `components[i]`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    pub components: Vec<LabelSet>,
    pub graph: Graph,
}

/// Acyclic orientations by trying all `2^|E|` orientations.
pub fn acyclic_orientations_brute(g: &Graph) -> u64 {
    let edges: Vec<(u8, u8)> = g.edges().collect();
    let verts: Vec<u8> = g.vertices().iter().collect();
    let pos = |v: u8| verts.iter().position(|&w| w == v).unwrap();
    let mut count = 0;
    for mask in 0u64..(1u64 << edges.len()) {
        let mut indeg = vec![0usize; verts.len()];
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); verts.len()];
        for (i, &(a, b)) in edges.iter().enumerate() {
            let (s, t) = if mask & (1 << i) != 0 { (b, a) } else { (a, b) };
            out[pos(s)].push(pos(t));
            indeg[pos(t)] += 1;
        }
        // Kahn
        let mut queue: Vec<usize> = (0..verts.len()).filter(|&v| indeg[v] == 0).collect();
        let mut removed = 0;
        while let Some(v) = queue.pop() {
            removed += 1;
            for &w in &out[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    queue.push(w);
                }
            }
        }
        if removed == verts.len() {
            count += 1;
        }
    }
    count
}

/// Chromatic polynomial by deletion–contraction.
pub fn chromatic_polynomial(g: &Graph) -> IntPolynomial {
    fn go(n: u32, edges: &[(u8, u8)]) -> IntPolynomial {
        let Some((&(a, b), rest)) = edges.split_first() else {
            return IntPolynomial::from_coeffs([(n, 1)]);
        };
        let deleted = go(n, rest);
        // contract b into a, then renumber so labels stay below n - 1
        let fix = |v: u8| {
            let v = if v == b { a } else { v };
            if v > b {
                v - 1
            } else {
                v
            }
        };
        let mut merged: Vec<(u8, u8)> = rest
            .iter()
            .map(|&(x, y)| ordered(fix(x), fix(y)))
            .filter(|(x, y)| x != y)
            .collect();
        merged.sort();
        merged.dedup();
        let contracted = go(n - 1, &merged);
        let mut out = deleted;
        for (e, c) in contracted.terms() {
            out.add_term(e, -c);
        }
        out
    }
    let std = Relabeling::standardize(g.vertices());
    let edges: Vec<(u8, u8)> = g.relabel(&std).edges().collect();
    go(g.vertices().len() as u32, &edges)
}

/// Brute force up to 20 edges, `|χ(-1)|` beyond.
pub fn acyclic_orientation_count(g: &Graph) -> u64 {
    if g.edge_count() <= 20 {
        acyclic_orientations_brute(g)
    } else {
        chromatic_polynomial(g).eval(-1).unsigned_abs()
    }
}

/// `Σ_{H flat} (-1)^{|I| - rk H} acyc(G/H) H`.
pub fn closed_form_antipode_graphs(g: &Graph) -> FreeVector<Graph> {
    let n = g.vertices().len();
    let mut v = FreeVector::zero();
    for h in g.flats() {
        let q = g.contract(&h).expect("flats contract");
        let sign = if (n - h.rank()).is_multiple_of(2) { 1 } else { -1 };
        v.add_int(h, sign * acyclic_orientation_count(&q.graph) as i64);
    }
    v
}

/// The species of simple graphs.
#[derive(Clone, Debug)]
pub struct Graphs {
    pub budget: usize,
}

impl Default for Graphs {
    fn default() -> Self {
        Graphs { budget: DEFAULT_BUDGET }
    }
}

impl Graphs {
    pub fn encode_graph(g: &Graph) -> String {
        let edges: Vec<String> = g.edges.iter().map(|(a, b)| format!("{a}-{b}")).collect();
        format!("G:{};E={}", g.vertices.encode(), edges.join(","))
    }
}

impl Species for Graphs {
    type Obj = Graph;

    fn name(&self) -> &str {
        "graphs"
    }

    fn budget(&self) -> usize {
        self.budget
    }

    fn labels(&self, x: &Graph) -> LabelSet {
        x.vertices
    }

    fn unit(&self) -> Graph {
        Graph::edgeless(LabelSet::EMPTY)
    }

    fn carrier_size(&self, labels: LabelSet) -> u128 {
        let n = labels.len() as u32;
        let pairs = n * n.saturating_sub(1) / 2;
        1u128.checked_shl(pairs).unwrap_or(u128::MAX)
    }

    fn enumerate(&self, labels: LabelSet) -> Vec<Graph> {
        let all: Vec<(u8, u8)> = Graph::complete(labels).edges().collect();
        (0u64..(1u64 << all.len()))
            .map(|mask| Graph {
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

    fn relabel(&self, x: &Graph, f: &Relabeling) -> Graph {
        x.relabel(f)
    }

    fn mult(&self, x: &Graph, y: &Graph) -> Result<Graph> {
        x.disjoint_union(y)
    }

    fn restrict(&self, x: &Graph, s: LabelSet) -> Graph {
        x.restrict(s)
    }

    fn free_mult(&self, x: &Graph, y: &Graph) -> Result<Graph> {
        x.free_product(y)
    }

    fn has_free_mult(&self) -> bool {
        true
    }

    fn native_leq(&self, a: &Graph, b: &Graph) -> bool {
        a.is_subgraph_of(b)
    }

    fn encode(&self, x: &Graph) -> String {
        Graphs::encode_graph(x)
    }

    fn parse(&self, s: &str) -> Result<Graph> {
        let body = s
            .trim()
            .strip_prefix("G:")
            .ok_or_else(|| Error::Parse(format!("graph must start with `G:`: `{s}`")))?;
        let (labels, edges) = body
            .split_once(';')
            .ok_or_else(|| Error::Parse(format!("missing `;E=` in `{s}`")))?;
        let vertices = LabelSet::parse(labels)?;
        let edges = edges
            .strip_prefix("E=")
            .ok_or_else(|| Error::Parse(format!("missing `E=` in `{s}`")))?;
        let mut list = Vec::new();
        for e in edges.split(',').filter(|e| !e.trim().is_empty()) {
            let (a, b) = e
                .split_once('-')
                .ok_or_else(|| Error::Parse(format!("bad edge `{e}`")))?;
            list.push((parse_label(a)?, parse_label(b)?));
        }
        Graph::new(vertices, list)
    }

    fn primary_adjunction(&self) -> AdjunctionSpec {
        AdjunctionSpec {
            order: OrderSpec::NATIVE,
            product: Product::Free,
        }
    }
}
