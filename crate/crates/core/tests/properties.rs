//! Randomized invariants on larger label sets than the exhaustive tests reach.

use hsl_core::antipode::{antipode_on_inverted_check, closed_form_antipode, takeuchi_antipode};
use hsl_core::families::{
    acyclic_orientations_brute, chromatic_polynomial, closed_form_antipode_graphs, Graph, Graphs,
};
use hsl_core::label::{LabelSet, Relabeling};
use hsl_core::linear::{vector_from_json, vector_to_json};
use hsl_core::species::Species;
use proptest::prelude::*;

fn graph(n: usize) -> impl Strategy<Value = Graph> {
    let pairs: Vec<(u8, u8)> = Graph::complete(LabelSet::range(n)).edges().collect();
    proptest::collection::vec(any::<bool>(), pairs.len()).prop_map(move |mask| {
        let edges = pairs.iter().zip(mask).filter(|(_, keep)| *keep).map(|(e, _)| *e);
        Graph::new(LabelSet::range(n), edges).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn methods_agree_on_five_vertices(g in graph(5)) {
        let fam = Graphs::default();
        let t = takeuchi_antipode(&fam, &g).unwrap();
        prop_assert_eq!(&t, &closed_form_antipode(&fam, &g).unwrap().upper);
        prop_assert_eq!(&t, &closed_form_antipode_graphs(&g));
        prop_assert!(antipode_on_inverted_check(&fam, &g).unwrap().holds());
    }

    #[test]
    fn antipode_commutes_with_relabeling(g in graph(4), shift in 1u8..40) {
        let fam = Graphs::default();
        let f = Relabeling::new((0..4u8).map(|v| (v, (3 - v) * 7 % 11 + shift))).unwrap();
        let lhs = takeuchi_antipode(&fam, &g).unwrap().map_linear(|y| hsl_core::linear::FreeVector::basis(y.relabel(&f)));
        let rhs = takeuchi_antipode(&fam, &g.relabel(&f)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn acyclic_orientations_match_on_six(g in graph(6)) {
        prop_assert_eq!(acyclic_orientations_brute(&g), chromatic_polynomial(&g).eval(-1).unsigned_abs());
    }

    #[test]
    fn json_round_trip(g in graph(4)) {
        let fam = Graphs::default();
        let v = takeuchi_antipode(&fam, &g).unwrap();
        let json = vector_to_json(&fam, g.vertices(), &v);
        let (ambient, back) = vector_from_json(&fam, &json).unwrap();
        prop_assert_eq!(ambient, "graphs:n=4");
        prop_assert_eq!(back, v);
    }

    #[test]
    fn encoding_round_trip(g in graph(5)) {
        let fam = Graphs::default();
        prop_assert_eq!(fam.parse(&fam.encode(&g)).unwrap(), g);
    }
}
