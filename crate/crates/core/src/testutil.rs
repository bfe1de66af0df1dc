//! Small constructors shared by the unit and integration test suites.
//!
//! Not part of the stable API.
#![doc(hidden)]

use crate::types::{Clause, ClauseSet, PartialAssignment, Var};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Clause from DIMACS literal codes: `cl(&[1, -2])` is `{x1, x̄2}`.
pub fn cl(lits: &[i32]) -> Clause {
    Clause::try_from_lits(lits.iter().map(|&i| {
        crate::types::Lit::from_dimacs(i).expect("nonzero literal code")
    }))
    .expect("clash-free test clause")
}

/// Clause-set from DIMACS literal codes.
pub fn cs(clauses: &[&[i32]]) -> ClauseSet {
    ClauseSet::from_clauses(clauses.iter().map(|c| cl(c)))
}

/// Partial assignment from `(variable id, value)` pairs.
pub fn pa(pairs: &[(u32, bool)]) -> PartialAssignment {
    PartialAssignment::from_pairs(pairs.iter().map(|&(v, b)| (Var::new(v), b)))
        .expect("conflict-free test assignment")
}

/// Deterministic random clause-set with mixed clause lengths, for
/// regression-style randomized tests: `max_vars` variables, `clauses`
/// clauses of length 1..=3 (capped by `max_vars`).
pub fn random_clause_set(max_vars: u32, clauses: usize, seed: u64) -> ClauseSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_clause_set_with(&mut rng, max_vars, clauses)
}

/// As [`random_clause_set`] but drawing from a caller-provided generator.
pub fn random_clause_set_with(rng: &mut ChaCha8Rng, max_vars: u32, clauses: usize) -> ClauseSet {
    let mut out = Vec::with_capacity(clauses);
    for _ in 0..clauses {
        let len = rng.gen_range(1..=3.min(max_vars));
        let mut lits = Vec::new();
        let mut used = Vec::new();
        while lits.len() < len as usize {
            let v = rng.gen_range(1..=max_vars);
            if used.contains(&v) {
                continue;
            }
            used.push(v);
            lits.push(crate::types::Lit::new(Var::new(v), rng.gen_bool(0.5)));
        }
        out.push(Clause::try_from_lits(lits).expect("distinct variables"));
    }
    ClauseSet::from_clauses(out)
}
