//! The four concrete families.

pub mod graph;
pub mod hypergraph;
pub mod partition;
pub mod simplicial;

pub use graph::{
    acyclic_orientation_count, acyclic_orientations_brute, chromatic_polynomial, closed_form_antipode_graphs, Graph,
    Graphs, Quotient,
};
pub use hypergraph::{Hypergraph, Hypergraphs};
pub use partition::{closed_form_antipode_partitions, Partitions, SetPartition};
pub use simplicial::{closed_form_antipode_sc, SimplicialComplex, SimplicialComplexes};
