pub mod actions;
pub mod algebra;
pub mod bernoulli;
pub mod category;
pub mod cli;
pub mod completion;
pub mod error;
pub mod expansion;
pub mod fixtures;
pub mod poset;
pub mod spec_file;

pub use category::{
    find_inverse_structure, validate_category, CategoryBuilder, FiniteCategory, Functor,
    InverseCategory, InverseStructure, MorId, ObjectId, ValidationReport, Violation,
};
pub use error::{Error, Limits, Result};
pub use poset::{build_iic, compose_partial_isos, Iic, OrderIdeal, PartialOrderIso, Poset};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/categories.md")]
    mod categories {}
    #[doc = include_str!("../../../book/src/posets.md")]
    mod posets {}
    #[doc = include_str!("../../../book/src/actions.md")]
    mod actions {}
    #[doc = include_str!("../../../book/src/bernoulli.md")]
    mod bernoulli {}
    #[doc = include_str!("../../../book/src/expansions.md")]
    mod expansions {}
    #[doc = include_str!("../../../book/src/completion.md")]
    mod completion {}
    #[doc = include_str!("../../../book/src/algebra.md")]
    mod algebra {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
