//! Structural facts about the four families, checked exhaustively.

use std::collections::BTreeSet;

use hsl_core::antipode::{antipode_involution_check, factor_count, factorize, takeuchi_antipode};
use hsl_core::families::{Graph, Graphs, Hypergraphs, Partitions, SimplicialComplexes};
use hsl_core::label::{bell, set_partitions, LabelSet};
use hsl_core::order::reassembly_upset;
use hsl_core::species::Species;

fn graphs_on(n: usize) -> Vec<Graph> {
    Graphs::default().carrier(LabelSet::range(n)).unwrap()
}

#[test]
fn free_product_is_complement_of_union() {
    let fam = Graphs::default();
    for x in graphs_on(2) {
        for y in fam.carrier([2u8, 3].into_iter().collect()).unwrap() {
            let free = fam.free_mult(&x, &y).unwrap();
            let via = x.complement().disjoint_union(&y.complement()).unwrap().complement();
            assert_eq!(free, via);
        }
    }
}

#[test]
fn free_indecomposables_have_connected_complement() {
    let fam = Graphs::default();
    for n in 1..=4 {
        for x in graphs_on(n) {
            let splits_freely = hsl_core::label::proper_splits(x.vertices())
                .any(|(s, t)| fam.free_mult(&x.restrict(s), &x.restrict(t)).unwrap() == x);
            assert_eq!(!splits_freely, x.complement().is_connected(), "{x:?}");
        }
    }
}

#[test]
fn graph_reassembly_upset_is_flats() {
    let fam = Graphs::default();
    for n in 0..=4 {
        for g in graphs_on(n) {
            let up: BTreeSet<Graph> = reassembly_upset(&fam, &g).unwrap().into_iter().collect();
            // reassembly only deletes edges, so the up-set lives among subgraphs
            let flats: BTreeSet<Graph> = g.flats().into_iter().collect();
            assert_eq!(up, flats, "{g:?}");
        }
    }
}

#[test]
fn simplicial_upset_is_gamma_of_skeleton_flats() {
    let fam = SimplicialComplexes::default();
    for n in 0..=3 {
        for c in fam.carrier(LabelSet::range(n)).unwrap() {
            let up: BTreeSet<_> = reassembly_upset(&fam, &c).unwrap().into_iter().collect();
            let skel = c.one_skeleton();
            let gamma: BTreeSet<_> = skel.flats().iter().map(|f| c.gamma_of_flat(f).unwrap()).collect();
            assert_eq!(up, gamma, "{c:?}");
        }
    }
}

#[test]
fn partition_upset_is_refinements() {
    let fam = Partitions::default();
    for n in 0..=4 {
        for p in fam.carrier(LabelSet::range(n)).unwrap() {
            let up: BTreeSet<_> = reassembly_upset(&fam, &p).unwrap().into_iter().collect();
            let refinements: BTreeSet<_> = p.refinements().into_iter().collect();
            assert_eq!(up, refinements);
        }
    }
    assert_eq!(set_partitions(LabelSet::range(5)).len() as u128, bell(5));
}

#[test]
fn factorization_is_unique_and_grades_by_components() {
    let g = Graphs::default();
    for n in 0..=4 {
        for x in graphs_on(n) {
            assert_eq!(factor_count(&g, &x).unwrap(), x.components().len());
        }
    }
    let p = Partitions::default();
    for x in p.carrier(LabelSet::range(4)).unwrap() {
        assert_eq!(factor_count(&p, &x).unwrap(), x.len());
    }
    let h = Hypergraphs::default();
    for x in h.carrier(LabelSet::range(3)).unwrap() {
        let f = factorize(&h, &x).unwrap();
        assert_eq!(f.len(), x.components().len());
        for (block, factor) in f.partition.blocks().iter().zip(&f.factors) {
            assert_eq!(h.labels(factor), *block);
        }
    }
}

#[test]
fn antipode_is_an_involution() {
    assert!(antipode_involution_check(&Graphs::default(), 3).unwrap().passed());
    assert!(antipode_involution_check(&Partitions::default(), 3).unwrap().passed());
    assert!(antipode_involution_check(&Hypergraphs::default(), 3).unwrap().passed());
    assert!(antipode_involution_check(&SimplicialComplexes::default(), 3)
        .unwrap()
        .passed());
}

#[test]
fn antipode_of_k3() {
    let g = Graphs::default();
    let k3 = g.parse("G:n=3;E=0-1,0-2,1-2").unwrap();
    let s = takeuchi_antipode(&g, &k3).unwrap();
    assert_eq!(s.coeff(&k3), hsl_core::linear::rational(-1));
    assert_eq!(s.coeff(&g.parse("G:n=3;E=0-1").unwrap()), hsl_core::linear::rational(2));
    assert_eq!(s.coeff(&g.parse("G:n=3;E=").unwrap()), hsl_core::linear::rational(-6));
    assert_eq!(s.len(), 5);
}
