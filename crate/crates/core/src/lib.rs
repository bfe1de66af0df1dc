//! Generalized unit-clause propagation and hardness measures for CNF
//! clause-sets.
//!
//! The library models clause-sets with set semantics, computes the level-k
//! propagation hierarchy and the derived hardness measures (tree-hardness,
//! propagation-hardness, width-hardness), decides membership in the
//! single-lookahead and height-bounded classes by direct simulation,
//! computes prime implicates and minimum k-bases (with a polynomial 2-CNF
//! pipeline), and ships brute-force reference implementations used by the
//! test suites to validate every nontrivial result at desk scale.
//!
//! Everything is immutable after construction; all types are `Send + Sync`
//! and any value can be shared between threads.

pub mod bases;
pub mod dimacs;
pub mod families;
pub mod hardness;
pub mod oracle;
pub mod reductions;
pub mod resolution;
pub mod slur;
pub mod types;

#[doc(hidden)]
pub mod testutil;

pub use types::{
    apply_assignment, assignment_from_clause, canonical_form, CanonicalKey, Clause, ClauseSet,
    ForcedLiterals, Lit, PartialAssignment, Var,
};
