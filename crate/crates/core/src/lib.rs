//! Poset Hopf monoids on labeled combinatorial structures, with exact
//! arithmetic throughout.

pub mod antipode;
pub mod error;
pub mod families;
pub mod fock;
pub mod label;
pub mod linear;
pub mod order;
pub mod poset;
pub mod species;
pub mod symfunc;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/structures.md")]
    mod structures {}
    #[doc = include_str!("../../../book/src/orders.md")]
    mod orders {}
    #[doc = include_str!("../../../book/src/antipode.md")]
    mod antipode {}
    #[doc = include_str!("../../../book/src/primitives.md")]
    mod primitives {}
    #[doc = include_str!("../../../book/src/symmetric-functions.md")]
    mod symmetric_functions {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
