//! Meet-completions of finite posets through standard closure operators,
//! lifted operations on completed expansions, and the closure completion
//! of finite ordered domain algebras together with its representation.
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod axioms;
pub mod bits;
pub mod closure;
pub mod completion;
pub mod error;
pub mod examples;
pub mod expansion;
pub mod oda;
pub mod order;
pub mod poset;
pub mod relation;
pub mod representation;
pub mod term;

pub use axioms::{check_axioms, AxiomReport, LawVerdict, LAWS};
pub use closure::{
    closure_violation, commuting_isomorphisms, completion_from_gamma, gamma_from_completion, h_iso,
    is_standard_closure, Closure, ClosureOperator, Coverage,
};
pub use completion::{
    check_completion_axioms, enumerate_closed_sets, partial_star_explore, ClosedUpSet, CompletionReport,
    CompletionTable, OdaClosure,
};
pub use error::{Error, Result};
pub use examples::{reproduce_example, Example, ExampleWitness};
pub use expansion::{CompletedExpansion, Expansion, PosetExpansion};
pub use oda::{generate_subalgebra, AbstractOda, FullProperOda, OdaOps, ProperAlgebra};
pub use order::{Order, UpSet};
pub use poset::{CompletionMap, FinitePoset};
pub use relation::BinRel;
pub use representation::{build_representation, frp_report, verify_representation, Representation};
pub use term::{Signature, Term};
