//! Generalized unit-clause propagation: the level-k reductions, forced
//! literals, the limit reduction, and the level-k implication relation.
//!
//! `reduce(1, _)` is unit-clause propagation, `reduce(2, _)` is complete
//! failed-literal elimination; level k+1 probes each literal with the level-k
//! reduction and applies the forced assignment when the probe refutes. The
//! result does not depend on the probe order; the default order is the
//! canonical literal order so traces are reproducible.

use std::collections::HashMap;
use std::sync::Arc;

use crate::oracle;
use crate::types::{
    assignment_from_clause, CanonicalKey, Clause, ClauseSet, ForcedLiterals, Lit,
    PartialAssignment,
};

/// An unsatisfiability oracle for the relativised reduction: a named
/// membership predicate on clause-sets.
///
/// A valid oracle contains `{⊥}`, detects only unsatisfiable clause-sets,
/// and is stable under application of partial assignments. These obligations
/// are the caller's; the stability one is spot-tested, never enforced.
#[derive(Clone)]
pub struct UnsatOracle {
    name: String,
    pred: Arc<dyn Fn(&ClauseSet) -> bool + Send + Sync>,
    /// Exact semantic match for the base oracle `U_0`, enabling the
    /// empty-clause short-circuit inside the reduction engine.
    is_empty_clause_oracle: bool,
}

impl UnsatOracle {
    /// `U_0`: detects exactly the clause-sets containing the empty clause.
    pub fn empty_clause() -> UnsatOracle {
        UnsatOracle {
            name: "empty-clause".into(),
            pred: Arc::new(|f: &ClauseSet| f.has_empty_clause()),
            is_empty_clause_oracle: true,
        }
    }

    /// The full unsatisfiability test (complete SAT search); the strongest
    /// valid oracle.
    pub fn complete_unsat_test() -> UnsatOracle {
        UnsatOracle {
            name: "complete-unsat".into(),
            pred: Arc::new(|f: &ClauseSet| !oracle::is_satisfiable(f)),
            is_empty_clause_oracle: false,
        }
    }

    pub fn new(
        name: impl Into<String>,
        pred: impl Fn(&ClauseSet) -> bool + Send + Sync + 'static,
    ) -> UnsatOracle {
        UnsatOracle { name: name.into(), pred: Arc::new(pred), is_empty_clause_oracle: false }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn holds(&self, f: &ClauseSet) -> bool {
        (self.pred)(f)
    }
}

impl std::fmt::Debug for UnsatOracle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "UnsatOracle({})", self.name)
    }
}

/// A reduction engine with a memo table keyed by level and canonical form;
/// the naive recursion re-probes identical residues exponentially often, and
/// callers issuing many related queries (hardness, SLUR exploration) share
/// one `Reducer` to share the table.
pub struct Reducer {
    oracle: UnsatOracle,
    rank: Option<HashMap<Lit, u32>>,
    memo: HashMap<(u32, CanonicalKey), ClauseSet>,
}

impl Default for Reducer {
    fn default() -> Reducer {
        Reducer::new()
    }
}

impl Reducer {
    /// Reducer for the plain hierarchy (`U_0`, canonical probe order).
    pub fn new() -> Reducer {
        Reducer { oracle: UnsatOracle::empty_clause(), rank: None, memo: HashMap::new() }
    }

    pub fn with_oracle(oracle: UnsatOracle) -> Reducer {
        Reducer { oracle, rank: None, memo: HashMap::new() }
    }

    /// Probes literals by the given rank, smaller first, canonical order
    /// breaking ties and covering unlisted literals.
    pub fn with_probe_rank(rank: HashMap<Lit, u32>) -> Reducer {
        Reducer { oracle: UnsatOracle::empty_clause(), rank: Some(rank), memo: HashMap::new() }
    }

    /// The level-k reduction of `F`.
    pub fn reduce(&mut self, k: u32, f: &ClauseSet) -> ClauseSet {
        self.run(k, f.clone())
    }

    /// `F ⊨_k C`.
    pub fn implies_level(&mut self, f: &ClauseSet, c: &Clause, k: u32) -> bool {
        self.run(k, f.apply(&assignment_from_clause(c))).is_bot()
    }

    fn probe_order(&self, f: &ClauseSet) -> Vec<Lit> {
        let mut lits: Vec<Lit> = f.lits().into_iter().collect();
        if let Some(rank) = &self.rank {
            lits.sort_by_key(|l| (rank.get(l).copied().unwrap_or(u32::MAX), *l));
        }
        lits
    }

    fn run(&mut self, k: u32, f: ClauseSet) -> ClauseSet {
        if k == 0 {
            return if self.oracle.holds(&f) { ClauseSet::contradiction() } else { f };
        }
        if self.oracle.is_empty_clause_oracle && f.has_empty_clause() {
            // once ⊥ is present every probe refutes and all assignments end
            // in {⊥}; this short-circuit is exact for U_0 only
            return ClauseSet::contradiction();
        }
        let key = (k, f.canonical_key());
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let mut cur = f;
        'outer: loop {
            for x in self.probe_order(&cur) {
                let probe = cur.apply(&PartialAssignment::singleton_true(x.complement()));
                if self.run(k - 1, probe).is_bot() {
                    cur = cur.apply(&PartialAssignment::singleton_true(x));
                    if self.oracle.is_empty_clause_oracle && cur.has_empty_clause() {
                        cur = ClauseSet::contradiction();
                        break 'outer;
                    }
                    continue 'outer;
                }
            }
            break;
        }
        self.memo.insert(key, cur.clone());
        cur
    }
}

/// The level-k reduction with the canonical probe order.
pub fn reduce(k: u32, f: &ClauseSet) -> ClauseSet {
    Reducer::new().reduce(k, f)
}

/// The level-k reduction probing literals by the given rank (smaller rank
/// first, canonical order breaking ties). The result is provably
/// independent of the order; this entry point exists to test exactly that.
pub fn reduce_with_order(k: u32, f: &ClauseSet, rank: &HashMap<Lit, u32>) -> ClauseSet {
    Reducer::with_probe_rank(rank.clone()).reduce(k, f)
}

/// The oracle-relativised level-k reduction; with [`UnsatOracle::empty_clause`]
/// it coincides with [`reduce`] on all inputs.
pub fn reduce_with_oracle(k: u32, f: &ClauseSet, oracle: &UnsatOracle) -> ClauseSet {
    Reducer::with_oracle(oracle.clone()).reduce(k, f)
}

/// The forced literals of `F`, decided by the complete SAT search: every
/// literal for unsatisfiable `F`, otherwise `{x : F ⊨ x}`.
pub fn forced_literals(f: &ClauseSet) -> ForcedLiterals {
    if !oracle::is_satisfiable(f) {
        return ForcedLiterals::All;
    }
    let forced = f
        .lits()
        .into_iter()
        .filter(|&x| {
            let refuted = f.apply(&PartialAssignment::singleton_true(x.complement()));
            !oracle::is_satisfiable(&refuted)
        })
        .collect();
    ForcedLiterals::Finite(forced)
}

/// The limit reduction: applies every forced assignment. Yields `{⊥}`
/// exactly for unsatisfiable inputs, otherwise a clause-set without forced
/// literals.
pub fn reduce_inf(f: &ClauseSet) -> ClauseSet {
    match forced_literals(f) {
        ForcedLiterals::All => ClauseSet::contradiction(),
        ForcedLiterals::Finite(lits) => {
            let phi = PartialAssignment::from_pairs(
                lits.iter().map(|l| (l.var(), l.is_positive())),
            )
            .expect("forced literals of a satisfiable clause-set are clash-free");
            f.apply(&phi)
        }
    }
}

/// `F ⊨_k C`: the level-k reduction refutes `φ_C * F`.
pub fn implies_level(f: &ClauseSet, c: &Clause, k: u32) -> bool {
    reduce(k, &f.apply(&assignment_from_clause(c))).is_bot()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{cl, cs, random_clause_set};
    use crate::types::ClauseSet;
    use std::collections::BTreeSet;

    fn full2() -> ClauseSet {
        cs(&[&[1, 2], &[1, -2], &[-1, 2], &[-1, -2]])
    }

    #[test]
    fn reduce_bot_and_top_are_fixed() {
        for k in 0..4 {
            assert_eq!(reduce(k, &ClauseSet::contradiction()), ClauseSet::contradiction());
            assert_eq!(reduce(k, &ClauseSet::top()), ClauseSet::top());
        }
    }

    #[test]
    fn reduce_unit_clauses() {
        // {{x1},...,{xn}}: level 0 leaves it, level ≥ 1 satisfies it
        let f = cs(&[&[1], &[2], &[3]]);
        assert_eq!(reduce(0, &f), f);
        for k in 1..4 {
            assert_eq!(reduce(k, &f), ClauseSet::top());
        }
        // plus a binary clause: that clause survives (it has no forced literals)
        let g = cs(&[&[1], &[2], &[3], &[4, 5]]);
        assert_eq!(reduce(0, &g), g);
        assert_eq!(reduce(1, &g), cs(&[&[4, 5]]));
    }

    #[test]
    fn reduce_needs_level_two_for_failed_literals() {
        let f = cs(&[&[1, 2], &[1, -2]]);
        assert_eq!(reduce(0, &f), f);
        assert_eq!(reduce(1, &f), f);
        for k in 2..4 {
            assert_eq!(reduce(k, &f), ClauseSet::top());
        }
    }

    #[test]
    fn reduce_full_two_var_set() {
        let f = full2();
        assert_eq!(reduce(0, &f), f);
        assert_eq!(reduce(1, &f), f);
        for k in 2..4 {
            assert_eq!(reduce(k, &f), ClauseSet::contradiction());
        }
    }

    #[test]
    fn forced_literal_examples() {
        assert_eq!(forced_literals(&ClauseSet::contradiction()), ForcedLiterals::All);
        assert_eq!(forced_literals(&ClauseSet::top()), ForcedLiterals::Finite(BTreeSet::new()));
        assert_eq!(
            forced_literals(&cs(&[&[1, 2], &[1, -2]])),
            ForcedLiterals::Finite([Lit::pos(1)].into_iter().collect())
        );
        assert_eq!(
            forced_literals(&cs(&[&[1, -2], &[-1, 2]])),
            ForcedLiterals::Finite(BTreeSet::new())
        );
        assert_eq!(
            forced_literals(&cs(&[&[1], &[2]])),
            ForcedLiterals::Finite([Lit::pos(1), Lit::pos(2)].into_iter().collect())
        );
    }

    #[test]
    fn reduce_inf_examples() {
        assert_eq!(reduce_inf(&ClauseSet::contradiction()), ClauseSet::contradiction());
        let fixed = cs(&[&[1, -2], &[-1, 2]]);
        assert_eq!(reduce_inf(&fixed), fixed);
        // forced literals {x, z}; applying both satisfies everything
        assert_eq!(reduce_inf(&cs(&[&[1, 2], &[1, -2], &[3]])), ClauseSet::top());
    }

    #[test]
    fn implies_level_examples() {
        let f = cs(&[&[1, 2], &[1, -2]]);
        assert!(!implies_level(&f, &cl(&[1]), 0));
        assert!(implies_level(&f, &cl(&[1]), 1));
        assert!(implies_level(&f, &cl(&[1]), 2));

        // needs level 2: {{x̄,y,w},{ȳ,z,w},{x̄,y,w̄},{ȳ,z,w̄}} ⊨_k {x̄,z} iff k ≥ 2
        let g = cs(&[&[-1, 2, 4], &[-2, 3, 4], &[-1, 2, -4], &[-2, 3, -4]]);
        let c = cl(&[-1, 3]);
        assert!(!implies_level(&g, &c, 1));
        assert!(implies_level(&g, &c, 2));

        // {⊥} implies everything at level 0; ⊤ implies nothing
        assert!(implies_level(&ClauseSet::contradiction(), &cl(&[1]), 0));
        assert!(implies_level(&ClauseSet::contradiction(), &Clause::empty(), 0));
        assert!(!implies_level(&ClauseSet::top(), &cl(&[1]), 3));

        // a clause of F is implied at every level
        let h = cs(&[&[-1, 2], &[-2, 3]]);
        assert!(implies_level(&h, &cl(&[-1, 2]), 0));
        assert!(implies_level(&h, &cl(&[-1, 3]), 1));
        assert!(!implies_level(&h, &cl(&[-1, 3]), 0));
    }

    #[test]
    fn oracle_reduction_coincides_with_u0() {
        let u0 = UnsatOracle::empty_clause();
        for seed in 0..30 {
            let f = random_clause_set(5, 6, seed);
            for k in 0..3 {
                assert_eq!(reduce_with_oracle(k, &f, &u0), reduce(k, &f), "seed {seed} k {k}");
            }
        }
    }

    #[test]
    fn complete_oracle_detects_at_level_zero() {
        let u = UnsatOracle::complete_unsat_test();
        assert_eq!(reduce_with_oracle(0, &full2(), &u), ClauseSet::contradiction());
        // probing x̄ hands the oracle an unsatisfiable residue, forcing x; then z
        let f = cs(&[&[1, 2], &[1, -2], &[3]]);
        assert_eq!(reduce_with_oracle(1, &f, &u), ClauseSet::top());
    }

    #[test]
    fn oracle_stability_spot_check() {
        // valid oracles stay valid under application of partial assignments;
        // sampled, not proven
        let u = UnsatOracle::complete_unsat_test();
        assert!(u.holds(&ClauseSet::contradiction()));
        for seed in 0..20 {
            let f = random_clause_set(4, 6, seed);
            if u.holds(&f) {
                for x in f.lits() {
                    let g = f.apply(&PartialAssignment::singleton_true(x));
                    assert!(u.holds(&g));
                }
            }
        }
    }

    #[test]
    fn reduction_applies_only_forced_assignments() {
        // satisfiability is preserved in both directions
        for seed in 0..40 {
            let f = random_clause_set(5, 7, seed);
            for k in 0..3 {
                let red = reduce(k, &f);
                assert_eq!(
                    crate::oracle::is_satisfiable(&f),
                    crate::oracle::is_satisfiable(&red),
                    "seed {seed} k {k}"
                );
            }
        }
    }

    #[test]
    fn forced_literals_match_prime_unit_clauses() {
        // x is forced iff ⊥ or {x} is a prime implicate
        for seed in 0..25 {
            let f = random_clause_set(4, 5, seed);
            let primes =
                crate::oracle::prime_implicates_bruteforce(&f, &Default::default()).unwrap();
            match forced_literals(&f) {
                ForcedLiterals::All => assert!(primes.is_bot()),
                ForcedLiterals::Finite(lits) => {
                    let from_primes: BTreeSet<Lit> = primes
                        .iter()
                        .filter(|c| c.len() == 1)
                        .map(|c| c.lits()[0])
                        .collect();
                    assert_eq!(lits, from_primes, "seed {seed}");
                }
            }
        }
    }
}
