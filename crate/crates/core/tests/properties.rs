//! Property-based invariants for the clause-set model, the reductions and
//! the hardness measures.

use std::collections::HashMap;

use proptest::prelude::*;

use cnfhd::dimacs::{emit_dimacs, parse_dimacs};
use cnfhd::hardness::hardness;
use cnfhd::reductions::{reduce, reduce_with_order};
use cnfhd::resolution::{derives_nested_witness, WitnessOutcome};
use cnfhd::types::{
    apply_assignment, Clause, ClauseSet, Lit, PartialAssignment, Var,
};

fn arb_clause(max_var: u32) -> impl Strategy<Value = Clause> {
    (
        proptest::collection::btree_set(1..=max_var, 1..=3usize),
        proptest::collection::vec(any::<bool>(), 3),
    )
        .prop_map(|(vars, signs)| {
            Clause::try_from_lits(
                vars.into_iter()
                    .zip(signs)
                    .map(|(v, s)| Lit::new(Var::new(v), s)),
            )
            .expect("distinct variables cannot clash")
        })
}

fn arb_clause_set(max_var: u32, max_clauses: usize) -> impl Strategy<Value = ClauseSet> {
    proptest::collection::vec(arb_clause(max_var), 0..=max_clauses)
        .prop_map(ClauseSet::from_clauses)
}

fn arb_assignment(max_var: u32) -> impl Strategy<Value = PartialAssignment> {
    proptest::collection::btree_map(1..=max_var, any::<bool>(), 0..=max_var as usize)
        .prop_map(|m| {
            PartialAssignment::from_pairs(m.into_iter().map(|(v, b)| (Var::new(v), b)))
                .expect("map keys are unique")
        })
}

proptest! {
    #[test]
    fn application_restricts_variables(f in arb_clause_set(5, 7), phi in arb_assignment(5)) {
        let reduced = apply_assignment(&phi, &f);
        let dom: std::collections::BTreeSet<Var> = phi.domain().collect();
        for v in reduced.vars() {
            prop_assert!(f.vars().contains(&v));
            prop_assert!(!dom.contains(&v));
        }
    }

    #[test]
    fn application_composes(f in arb_clause_set(6, 7), phi in arb_assignment(3)) {
        // second assignment over a disjoint variable range
        let psi = PartialAssignment::from_pairs([(Var::new(4), true), (Var::new(5), false)])
            .unwrap();
        let combined = phi.union(&psi).unwrap();
        prop_assert_eq!(
            apply_assignment(&psi, &apply_assignment(&phi, &f)),
            apply_assignment(&combined, &f)
        );
    }

    #[test]
    fn dimacs_round_trips(f in arb_clause_set(6, 8)) {
        prop_assert_eq!(parse_dimacs(&emit_dimacs(&f)).unwrap(), f);
    }

    #[test]
    fn reduction_is_idempotent(f in arb_clause_set(5, 6), k in 0u32..3) {
        let once = reduce(k, &f);
        prop_assert_eq!(reduce(k, &once), once.clone());
    }

    #[test]
    fn refutation_is_monotone(f in arb_clause_set(4, 8), phi in arb_assignment(4), k in 0u32..3) {
        if reduce(k, &f).is_bot() {
            prop_assert!(reduce(k, &apply_assignment(&phi, &f)).is_bot());
        }
    }

    #[test]
    fn reduction_commutes_with_application(
        f in arb_clause_set(4, 6),
        phi in arb_assignment(4),
        k in 0u32..3,
    ) {
        let lhs = reduce(k, &apply_assignment(&phi, &reduce(k, &f)));
        let rhs = reduce(k, &apply_assignment(&phi, &f));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn reduction_levels_are_monotone(f in arb_clause_set(4, 6), k in 0u32..3) {
        prop_assert_eq!(reduce(k + 1, &reduce(k, &f)), reduce(k + 1, &f));
    }

    #[test]
    fn probe_order_is_irrelevant(f in arb_clause_set(4, 6), perm in any::<u64>(), k in 1u32..3) {
        // an arbitrary rank function relabels the probe order
        let mut rank: HashMap<Lit, u32> = HashMap::new();
        for (i, l) in f.lits().into_iter().enumerate() {
            rank.insert(l, (perm.rotate_left(i as u32) & 0xffff) as u32);
        }
        prop_assert_eq!(reduce_with_order(k, &f, &rank), reduce(k, &f));
    }

    #[test]
    fn hardness_never_increases_under_application(
        f in arb_clause_set(4, 6),
        phi in arb_assignment(4),
    ) {
        let base = hardness(&f).value;
        prop_assert!(hardness(&apply_assignment(&phi, &f)).value <= base);
        prop_assert!(base as usize <= f.var_count());
    }

    #[test]
    fn hardness_is_stable_under_good_operations(f in arb_clause_set(4, 5), flip in any::<u8>()) {
        let h = hardness(&f).value;

        // renaming: flipping polarities of a variable subset
        let renamed = ClauseSet::from_clauses(f.clauses().iter().map(|c| {
            Clause::try_from_lits(c.lits().iter().map(|l| {
                if flip & (1 << (l.var().id() % 8)) != 0 {
                    l.complement()
                } else {
                    *l
                }
            }))
            .unwrap()
        }));
        prop_assert_eq!(hardness(&renamed).value, h);

        // subsumption elimination never raises hardness
        let minimized = ClauseSet::from_clauses(
            f.clauses()
                .iter()
                .filter(|c| !f.clauses().iter().any(|d| d.subset_of(c) && *d != **c))
                .cloned(),
        );
        prop_assert!(hardness(&minimized).value <= h);

        // variable-disjoint union stays within the maximum of the parts
        let shifted = ClauseSet::from_clauses(f.clauses().iter().map(|c| {
            Clause::try_from_lits(
                c.lits().iter().map(|l| Lit::new(Var::new(l.var().id() + 10), l.is_positive())),
            )
            .unwrap()
        }));
        let union = f.union(&shifted);
        prop_assert!(hardness(&union).value <= h.max(hardness(&shifted).value));
    }

    #[test]
    fn inferred_clause_addition_never_raises_hardness(f in arb_clause_set(4, 5)) {
        let h = hardness(&f).value;
        let primes = cnfhd::resolution::prime_implicates(&f);
        for c in primes.clauses().iter().take(3) {
            let extended = f.insert(c.clone());
            prop_assert!(hardness(&extended).value <= h);
        }
    }

    #[test]
    fn witness_trees_satisfy_tree_bounds(f in arb_clause_set(4, 6), k in 0u32..3) {
        if let WitnessOutcome::Derived(t) =
            derives_nested_witness(&f, &Clause::empty(), k, 200_000)
        {
            t.verify(&f).unwrap();
            prop_assert!(t.horton_strahler() <= k);
            prop_assert!(t.horton_strahler() <= t.height());
            prop_assert!(t.leaf_count() >= 1usize << t.horton_strahler());
        }
    }
}
