//! Simplicial complexes: downward-closed families of faces, always containing
//! the empty face. Singletons of the ground set are not required to be faces.

use std::collections::BTreeSet;
use std::fmt;

use super::graph::{acyclic_orientation_count, Graph, Graphs};
use super::hypergraph::{encode_set, parse_set, split_encoding};
use crate::error::{Error, Result, DEFAULT_BUDGET};
use crate::label::{lex_key, LabelSet, Relabeling};
use crate::linear::FreeVector;
use crate::species::{AdjunctionSpec, OrderSpec, Product, Species};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplicialComplex {
    vertices: LabelSet,
    faces: BTreeSet<LabelSet>,
}

impl SimplicialComplex {
    /// The downward closure of `facets` (plus the empty face).
    pub fn from_facets(vertices: LabelSet, facets: impl IntoIterator<Item = LabelSet>) -> Result<Self> {
        let mut faces = BTreeSet::from([LabelSet::EMPTY]);
        for f in facets {
            if !f.is_subset(vertices) {
                return Err(Error::Parse(format!("face {f} leaves {vertices}")));
            }
            faces.extend(f.subsets());
        }
        Ok(SimplicialComplex { vertices, faces })
    }

    /// Only the empty face.
    pub fn void(vertices: LabelSet) -> Self {
        SimplicialComplex {
            vertices,
            faces: BTreeSet::from([LabelSet::EMPTY]),
        }
    }

    /// The full simplex on `vertices`.
    pub fn simplex(vertices: LabelSet) -> Self {
        SimplicialComplex {
            vertices,
            faces: vertices.subsets().collect(),
        }
    }

    pub fn vertices(&self) -> LabelSet {
        self.vertices
    }

    pub fn faces(&self) -> impl Iterator<Item = LabelSet> + '_ {
        self.faces.iter().copied()
    }

    pub fn contains_face(&self, f: LabelSet) -> bool {
        self.faces.contains(&f)
    }

    /// Maximal faces in (size, lex) order; `[∅]` for the void complex.
    pub fn facets(&self) -> Vec<LabelSet> {
        let mut out: Vec<LabelSet> = self
            .faces
            .iter()
            .filter(|&&f| {
                !self
                    .vertices
                    .difference(f)
                    .iter()
                    .any(|v| self.faces.contains(&f.union(LabelSet::singleton(v))))
            })
            .copied()
            .collect();
        out.sort_by_key(|&f| lex_key(f));
        out
    }

    pub fn restrict(&self, s: LabelSet) -> Self {
        SimplicialComplex {
            vertices: s,
            faces: self.faces.iter().filter(|f| f.is_subset(s)).copied().collect(),
        }
    }

    pub fn disjoint_union(&self, other: &Self) -> Result<Self> {
        if !self.vertices.is_disjoint(other.vertices) {
            return Err(Error::LabelOverlap {
                left: self.vertices.to_string(),
                right: other.vertices.to_string(),
            });
        }
        Ok(SimplicialComplex {
            vertices: self.vertices.union(other.vertices),
            faces: self.faces.union(&other.faces).copied().collect(),
        })
    }

    pub fn relabel(&self, f: &Relabeling) -> Self {
        SimplicialComplex {
            vertices: f.apply_set(self.vertices),
            faces: self.faces.iter().map(|&x| f.apply_set(x)).collect(),
        }
    }

    pub fn is_subcomplex_of(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.faces.is_subset(&other.faces)
    }

    /// Graph on the same vertices whose edges are the 2-element faces.
    pub fn one_skeleton(&self) -> Graph {
        let edges = self.faces.iter().filter(|f| f.len() == 2).map(|f| {
            let mut it = f.iter();
            (it.next().unwrap(), it.next().unwrap())
        });
        Graph::new(self.vertices, edges).expect("faces lie inside the vertex set")
    }

    /// `Γ(F)`: the union of the restrictions to the components of the flat `f`.
    pub fn gamma_of_flat(&self, f: &Graph) -> Result<Self> {
        let skeleton = self.one_skeleton();
        if !skeleton.is_flat(f) {
            return Err(Error::NotAFlat {
                graph: Graphs::encode_graph(&skeleton),
                flat: Graphs::encode_graph(f),
            });
        }
        let mut out = SimplicialComplex::void(LabelSet::EMPTY);
        for c in f.components() {
            out = out.disjoint_union(&self.restrict(c))?;
        }
        Ok(out)
    }
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&SimplicialComplexes::encode_complex(self))
    }
}

/// `Σ_F (-1)^{|I| - rk F} acyc(Γ¹/F) Γ(F)` over flats of the 1-skeleton.
pub fn closed_form_antipode_sc(c: &SimplicialComplex) -> FreeVector<SimplicialComplex> {
    let n = c.vertices().len();
    let skeleton = c.one_skeleton();
    let mut v = FreeVector::zero();
    for f in skeleton.flats() {
        let q = skeleton.contract(&f).expect("flats contract");
        let sign = if (n - f.rank()).is_multiple_of(2) { 1 } else { -1 };
        let gamma = c.gamma_of_flat(&f).expect("flat of the skeleton");
        v.add_int(gamma, sign * acyclic_orientation_count(&q.graph) as i64);
    }
    v
}

/// Dedekind numbers minus one (the void complex replaces the empty family).
const COUNTS: [u128; 8] = [1, 2, 5, 19, 167, 7580, 7_828_353, 2_414_682_040_997];

#[derive(Clone, Debug)]
pub struct SimplicialComplexes {
    pub budget: usize,
}

impl Default for SimplicialComplexes {
    fn default() -> Self {
        SimplicialComplexes { budget: DEFAULT_BUDGET }
    }
}

impl SimplicialComplexes {
    pub fn encode_complex(c: &SimplicialComplex) -> String {
        let facets: Vec<String> = c.facets().into_iter().map(encode_set).collect();
        format!("S:{};F={}", c.vertices.encode(), facets.join(";"))
    }
}

impl Species for SimplicialComplexes {
    type Obj = SimplicialComplex;

    fn name(&self) -> &str {
        "simplicial"
    }

    fn budget(&self) -> usize {
        self.budget
    }

    fn labels(&self, x: &SimplicialComplex) -> LabelSet {
        x.vertices
    }

    fn unit(&self) -> SimplicialComplex {
        SimplicialComplex::void(LabelSet::EMPTY)
    }

    fn carrier_size(&self, labels: LabelSet) -> u128 {
        COUNTS.get(labels.len()).copied().unwrap_or(u128::MAX)
    }

    fn enumerate(&self, labels: LabelSet) -> Vec<SimplicialComplex> {
        let mut candidates: Vec<LabelSet> = labels.subsets().filter(|s| !s.is_empty()).collect();
        candidates.sort_by_key(|&s| lex_key(s));
        fn go(
            i: usize,
            candidates: &[LabelSet],
            faces: &mut BTreeSet<LabelSet>,
            labels: LabelSet,
            out: &mut Vec<SimplicialComplex>,
        ) {
            let Some(&f) = candidates.get(i) else {
                out.push(SimplicialComplex {
                    vertices: labels,
                    faces: faces.clone(),
                });
                return;
            };
            go(i + 1, candidates, faces, labels, out);
            // candidates come in size order, so every boundary face is decided
            let closed = f.iter().all(|v| faces.contains(&f.difference(LabelSet::singleton(v))));
            if closed {
                faces.insert(f);
                go(i + 1, candidates, faces, labels, out);
                faces.remove(&f);
            }
        }
        let mut out = Vec::new();
        let mut faces = BTreeSet::from([LabelSet::EMPTY]);
        go(0, &candidates, &mut faces, labels, &mut out);
        out.sort();
        out
    }

    fn relabel(&self, x: &SimplicialComplex, f: &Relabeling) -> SimplicialComplex {
        x.relabel(f)
    }

    fn mult(&self, x: &SimplicialComplex, y: &SimplicialComplex) -> Result<SimplicialComplex> {
        x.disjoint_union(y)
    }

    fn restrict(&self, x: &SimplicialComplex, s: LabelSet) -> SimplicialComplex {
        x.restrict(s)
    }

    fn native_leq(&self, a: &SimplicialComplex, b: &SimplicialComplex) -> bool {
        a.is_subcomplex_of(b)
    }

    fn encode(&self, x: &SimplicialComplex) -> String {
        SimplicialComplexes::encode_complex(x)
    }

    fn parse(&self, s: &str) -> Result<SimplicialComplex> {
        let (vertices, items) = split_encoding(s, "S:", "F=")?;
        let facets = items.into_iter().map(parse_set).collect::<Result<Vec<_>>>()?;
        SimplicialComplex::from_facets(vertices, facets)
    }

    /// `m ⊣ Δ` under face inclusion, i.e. `Δ ⊣ m` in the reversed order.
    fn primary_adjunction(&self) -> AdjunctionSpec {
        AdjunctionSpec {
            order: OrderSpec::NATIVE.reversed(),
            product: Product::Mult,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sc(s: &str) -> SimplicialComplex {
        SimplicialComplexes::default().parse(s).unwrap()
    }

    #[test]
    fn counts() {
        let fam = SimplicialComplexes::default();
        for n in 0..=4 {
            let all = fam.enumerate(LabelSet::range(n));
            assert_eq!(all.len() as u128, fam.carrier_size(LabelSet::range(n)), "n = {n}");
        }
        // requiring every singleton leaves 9 complexes on three labels
        let full_vertex = fam
            .enumerate(LabelSet::range(3))
            .into_iter()
            .filter(|c| (0..3).all(|v| c.contains_face(LabelSet::singleton(v))))
            .count();
        assert_eq!(full_vertex, 9);
    }

    #[test]
    fn encoding() {
        let fam = SimplicialComplexes::default();
        for s in ["S:n=0;F={}", "S:n=3;F={}", "S:n=3;F={2};{0,1}", "S:n=3;F={0,1,2}"] {
            assert_eq!(fam.encode(&sc(s)), s);
        }
        assert_eq!(fam.encode(&sc("S:n=3;F={0,1};{1};{0}")), "S:n=3;F={0,1}");
        assert_eq!(sc("S:n=2;F="), SimplicialComplex::void(LabelSet::range(2)));
        assert!(fam.parse("S:n=2;F={0,3}").is_err());
    }

    #[test]
    fn skeleton_and_gamma() {
        let tri = SimplicialComplex::simplex(LabelSet::range(3));
        assert_eq!(tri.one_skeleton(), Graph::complete(LabelSet::range(3)));
        let c = sc("S:n=3;F={0,1};{0,2}");
        assert_eq!(Graphs::encode_graph(&c.one_skeleton()), "G:n=3;E=0-1,0-2");
        let f = Graphs::default().parse("G:n=3;E=0-1").unwrap();
        assert_eq!(tri.gamma_of_flat(&f).unwrap(), sc("S:n=3;F={2};{0,1}"));
        let e = Graph::edgeless(LabelSet::range(3));
        assert_eq!(tri.gamma_of_flat(&e).unwrap(), sc("S:n=3;F={0};{1};{2}"));
        assert_eq!(tri.gamma_of_flat(&tri.one_skeleton()).unwrap(), tri);
        let bad = Graphs::default().parse("G:n=3;E=0-1,0-2").unwrap();
        assert!(matches!(tri.gamma_of_flat(&bad), Err(Error::NotAFlat { .. })));
    }

    #[test]
    fn closed_form_small() {
        let pt = sc("S:n=1;F={0}");
        assert_eq!(closed_form_antipode_sc(&pt), FreeVector::from_ints([(pt, -1)]));
        let edge = sc("S:n=2;F={0,1}");
        assert_eq!(
            closed_form_antipode_sc(&edge),
            FreeVector::from_ints([(edge, -1), (sc("S:n=2;F={0};{1}"), 2)])
        );
    }
}
