//! The unlabeled quotient.

use hsl_core::families::{Graphs, Partitions};
use hsl_core::fock::{fock_coproduct, fock_image, fock_primitive_check, orbit_canonicalize};
use hsl_core::label::{LabelSet, Relabeling};
use hsl_core::linear::Adjunction;
use hsl_core::species::Species;

#[test]
fn orbits_are_relabeling_invariant() {
    let g = Graphs::default();
    for x in g.carrier(LabelSet::range(4)).unwrap() {
        let c = orbit_canonicalize(&g, &x).unwrap();
        for sigma in Relabeling::permutations(LabelSet::range(4)) {
            assert_eq!(orbit_canonicalize(&g, &x.relabel(&sigma)).unwrap(), c);
        }
    }
}

#[test]
fn orbit_counts() {
    let g = Graphs::default();
    let classes: std::collections::BTreeSet<_> = g
        .carrier(LabelSet::range(4))
        .unwrap()
        .iter()
        .map(|x| orbit_canonicalize(&g, x).unwrap())
        .collect();
    assert_eq!(classes.len(), 11);
    let p = Partitions::default();
    let shapes: std::collections::BTreeSet<_> = p
        .carrier(LabelSet::range(5))
        .unwrap()
        .iter()
        .map(|x| orbit_canonicalize(&p, x).unwrap())
        .collect();
    assert_eq!(shapes.len(), 7);
}

#[test]
fn coproduct_is_well_defined_on_orbits() {
    let g = Graphs::default();
    for x in g.carrier(LabelSet::range(3)).unwrap() {
        let c = orbit_canonicalize(&g, &x).unwrap();
        let from_x = fock_coproduct(
            &g,
            &hsl_core::fock::OrbitClass {
                degree: 3,
                rep: x.clone(),
            },
        )
        .unwrap();
        assert_eq!(from_x, fock_coproduct(&g, &c).unwrap());
    }
}

#[test]
fn labeled_primitives_stay_primitive() {
    let g = Graphs::default();
    let adj = Adjunction::verify(&g, g.primary_adjunction(), 4).unwrap();
    for n in 1..=4 {
        for (_, omega) in adj.primitives_basis(LabelSet::range(n)).unwrap() {
            let image = fock_image(&g, &omega).unwrap();
            assert!(fock_primitive_check(&g, &image).unwrap());
        }
    }
}
