//! The single-lookahead transition systems: the level-k relation assigning
//! one literal followed by the level-k reduction, and the variant making k
//! decision assignments interleaved with unit-clause propagation. Membership
//! is decided by direct simulation over the reachable state graph, memoized
//! on canonical forms, so it can be tested against the hardness-based
//! characterisation independently.

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use crate::reductions::Reducer;
use crate::types::{CanonicalKey, ClauseSet, Lit, PartialAssignment};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SlurVariant {
    /// One literal per transition, reduced at level k.
    SlurK,
    /// One k-decision assignment per transition, unit propagation in between.
    AltSlurStarK,
}

/// Default variable limit for the direct simulation; the state graph is
/// exponential in the worst case.
pub const DEFAULT_SLUR_VAR_LIMIT: u32 = 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TransitionConfig {
    pub level: u32,
    pub variant: SlurVariant,
    pub var_limit: u32,
}

impl TransitionConfig {
    pub fn slur(level: u32) -> TransitionConfig {
        TransitionConfig { level, variant: SlurVariant::SlurK, var_limit: DEFAULT_SLUR_VAR_LIMIT }
    }

    /// The decision-assignment variant is defined for levels ≥ 1.
    pub fn altslurstar(level: u32) -> TransitionConfig {
        assert!(level >= 1, "the decision-assignment variant needs level >= 1");
        TransitionConfig {
            level,
            variant: SlurVariant::AltSlurStarK,
            var_limit: DEFAULT_SLUR_VAR_LIMIT,
        }
    }

    pub fn with_var_limit(mut self, limit: u32) -> TransitionConfig {
        self.var_limit = limit;
        self
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("instance has {vars} variables, the direct simulation is limited to {limit}")]
pub struct SlurGuard {
    pub vars: usize,
    pub limit: u32,
}

/// Unit-clause propagation following the defining recursion literally, with
/// the canonical probe order, returning the performed assignment together
/// with the result. Once `⊥` appears every probe succeeds, so the trace
/// keeps assigning until no literal is left and the result is `{⊥}`.
fn ucp_trace(f: &ClauseSet) -> (PartialAssignment, ClauseSet) {
    let mut phi = PartialAssignment::empty();
    let mut cur = f.clone();
    loop {
        let next: Option<Lit> = if cur.has_empty_clause() {
            cur.lits().into_iter().next()
        } else {
            cur.iter().filter(|c| c.len() == 1).map(|c| c.lits()[0]).min()
        };
        match next {
            None => break,
            Some(x) => {
                phi = phi.bind(x.var(), x.is_positive()).expect("variable still unassigned");
                cur = cur.apply(&PartialAssignment::singleton_true(x));
            }
        }
    }
    (phi, cur)
}

/// The partial assignments making `k` decisions with respect to `F`:
/// zero decisions perform exactly unit-clause propagation; `k` decisions
/// either reach `⊤` with fewer decisions or assign one literal, propagate,
/// and make `k−1` decisions on the result.
///
/// The recursion admits many extensionally equal assignments; this
/// enumeration constructs one canonical trace per branch (transitions only
/// depend on the applied result).
pub fn k_decision_assignments(f: &ClauseSet, k: u32) -> BTreeSet<PartialAssignment> {
    let mut memo = HashMap::new();
    decisions(f, k, &mut memo)
}

type DecisionMemo = HashMap<(CanonicalKey, u32), BTreeSet<PartialAssignment>>;

fn decisions(f: &ClauseSet, k: u32, memo: &mut DecisionMemo) -> BTreeSet<PartialAssignment> {
    let key = (f.canonical_key(), k);
    if let Some(hit) = memo.get(&key) {
        return hit.clone();
    }
    let mut out = BTreeSet::new();
    if k == 0 {
        out.insert(ucp_trace(f).0);
    } else {
        // fewer decisions already reaching ⊤
        for fewer in 0..k {
            for phi in decisions(f, fewer, memo) {
                if f.apply(&phi).is_top() {
                    out.insert(phi);
                }
            }
        }
        // one decision, propagation, then k−1 decisions on the residue
        for x in f.lits() {
            let decided = f.apply(&PartialAssignment::singleton_true(x));
            let (propagated, residue) = ucp_trace(&decided);
            let prefix = PartialAssignment::singleton_true(x)
                .union(&propagated)
                .expect("propagation assigns fresh variables");
            for tail in decisions(&residue, k - 1, memo) {
                out.insert(prefix.union(&tail).expect("tails bind residue variables"));
            }
        }
    }
    memo.insert(key, out.clone());
    out
}

/// The successor states of `F` under the configured transition relation,
/// excluding `{⊥}` (the lookahead) and `F` itself (only `⊤` could
/// self-loop, through the early-satisfaction clause of the decision
/// recursion, and `⊤` is fully reduced).
pub fn slur_successors(f: &ClauseSet, cfg: &TransitionConfig) -> BTreeSet<ClauseSet> {
    let mut reducer = Reducer::new();
    successors_with(f, cfg, &mut reducer, &mut HashMap::new())
}

fn successors_with(
    f: &ClauseSet,
    cfg: &TransitionConfig,
    reducer: &mut Reducer,
    memo: &mut DecisionMemo,
) -> BTreeSet<ClauseSet> {
    let mut out = BTreeSet::new();
    match cfg.variant {
        SlurVariant::SlurK => {
            for x in f.lits() {
                let next = reducer.reduce(cfg.level, &f.apply(&PartialAssignment::singleton_true(x)));
                if !next.is_bot() && next != *f {
                    out.insert(next);
                }
            }
        }
        SlurVariant::AltSlurStarK => {
            for phi in decisions(f, cfg.level, memo) {
                let next = f.apply(&phi);
                if !next.is_bot() && next != *f {
                    out.insert(next);
                }
            }
        }
    }
    out
}

/// The reachable state graph of the transition relation: states in
/// breadth-first discovery order, edges by state index, and the terminal
/// (fully reduced) states.
#[derive(Clone, Debug)]
pub struct SlurExploration {
    pub states: Vec<ClauseSet>,
    pub edges: Vec<(usize, usize)>,
    pub terminals: BTreeSet<ClauseSet>,
}

pub fn slur_explore(f: &ClauseSet, cfg: &TransitionConfig) -> Result<SlurExploration, SlurGuard> {
    if f.var_count() > cfg.var_limit as usize {
        return Err(SlurGuard { vars: f.var_count(), limit: cfg.var_limit });
    }
    let mut reducer = Reducer::new();
    let mut decision_memo = HashMap::new();
    let mut states: Vec<ClauseSet> = vec![f.clone()];
    let mut index: HashMap<CanonicalKey, usize> = HashMap::new();
    index.insert(f.canonical_key(), 0);
    let mut edges = Vec::new();
    let mut terminals = BTreeSet::new();
    let mut frontier = 0usize;
    while frontier < states.len() {
        let cur = states[frontier].clone();
        let succ = successors_with(&cur, cfg, &mut reducer, &mut decision_memo);
        if succ.is_empty() {
            terminals.insert(cur);
        } else {
            for next in succ {
                let key = next.canonical_key();
                let to = *index.entry(key).or_insert_with(|| {
                    states.push(next.clone());
                    states.len() - 1
                });
                edges.push((frontier, to));
            }
        }
        frontier += 1;
    }
    Ok(SlurExploration { states, edges, terminals })
}

/// The fully reduced clause-sets reachable from `F`.
pub fn slur_terminal_set(
    f: &ClauseSet,
    cfg: &TransitionConfig,
) -> Result<BTreeSet<ClauseSet>, SlurGuard> {
    Ok(slur_explore(f, cfg)?.terminals)
}

/// Membership by direct simulation of the defining implication — no
/// shortcut through hardness, so the equivalence of the two routes can be
/// tested.
pub fn slur_member(f: &ClauseSet, cfg: &TransitionConfig) -> Result<bool, SlurGuard> {
    match cfg.variant {
        SlurVariant::SlurK => {
            if Reducer::new().reduce(cfg.level, f).is_bot() {
                return Ok(true);
            }
            let terminals = slur_terminal_set(f, cfg)?;
            Ok(terminals.len() == 1 && terminals.contains(&ClauseSet::top()))
        }
        SlurVariant::AltSlurStarK => {
            let terminals = slur_terminal_set(f, cfg)?;
            if terminals.len() == 1 && terminals.contains(f) {
                return Ok(true);
            }
            Ok(terminals.len() == 1 && terminals.contains(&ClauseSet::top()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::cs;

    fn full2() -> ClauseSet {
        cs(&[&[1, 2], &[1, -2], &[-1, 2], &[-1, -2]])
    }

    fn zpadded() -> ClauseSet {
        cs(&[&[3, 1, 2], &[3, 1, -2], &[3, -1, 2], &[3, -1, -2]])
    }

    #[test]
    fn successors_of_top_and_bot_are_empty() {
        for cfg in [TransitionConfig::slur(1), TransitionConfig::altslurstar(1)] {
            assert!(slur_successors(&ClauseSet::top(), &cfg).is_empty());
            assert!(slur_successors(&ClauseSet::contradiction(), &cfg).is_empty());
        }
    }

    #[test]
    fn successors_examples() {
        let cfg = TransitionConfig::slur(1);
        let f = cs(&[&[-1, 2], &[-2, 3]]);
        assert!(slur_successors(&f, &cfg).contains(&ClauseSet::top()));
        assert!(slur_successors(&full2(), &cfg).is_empty());
        // a single non-empty clause transitions to ⊤
        assert_eq!(
            slur_successors(&cs(&[&[1, 2]]), &cfg),
            [ClauseSet::top()].into_iter().collect()
        );
    }

    #[test]
    fn terminal_set_examples() {
        let cfg = TransitionConfig::slur(1);
        let top_only: BTreeSet<ClauseSet> = [ClauseSet::top()].into_iter().collect();
        assert_eq!(slur_terminal_set(&ClauseSet::top(), &cfg).unwrap(), top_only);
        assert_eq!(
            slur_terminal_set(&ClauseSet::contradiction(), &cfg).unwrap(),
            [ClauseSet::contradiction()].into_iter().collect()
        );
        assert_eq!(slur_terminal_set(&cs(&[&[1, 2]]), &cfg).unwrap(), top_only);
        assert_eq!(slur_terminal_set(&cs(&[&[1, 2], &[1, -2]]), &cfg).unwrap(), top_only);
        assert_eq!(slur_terminal_set(&cs(&[&[-1, 2], &[-2, 3]]), &cfg).unwrap(), top_only);
        // the full two-variable clause-set is stuck immediately
        assert_eq!(
            slur_terminal_set(&full2(), &cfg).unwrap(),
            [full2()].into_iter().collect()
        );
        // the padded variant reaches both ⊤ and the unsatisfiable core
        let terminals = slur_terminal_set(&zpadded(), &cfg).unwrap();
        assert!(terminals.contains(&ClauseSet::top()));
        assert!(terminals.contains(&full2()));
    }

    #[test]
    fn member_examples() {
        assert!(!slur_member(&full2(), &TransitionConfig::slur(1)).unwrap());
        assert!(slur_member(&full2(), &TransitionConfig::slur(2)).unwrap());
        assert!(slur_member(&full2(), &TransitionConfig::altslurstar(1)).unwrap());
        // {x1,x2}-padded full clause-set: Slur_2 but not Slur_1
        let padded = cs(&[
            &[3, 4, 1, 2],
            &[3, 4, 1, -2],
            &[3, 4, -1, 2],
            &[3, 4, -1, -2],
        ]);
        assert!(!slur_member(&padded, &TransitionConfig::slur(1)).unwrap());
        assert!(slur_member(&padded, &TransitionConfig::slur(2)).unwrap());
    }

    #[test]
    fn altslurstar_padded_example() {
        // {x1,x2}-padded full clause-set: reachable unsatisfiable core with
        // 2 decisions, hence outside level 2; inside level 3
        let padded = cs(&[
            &[3, 4, 1, 2],
            &[3, 4, 1, -2],
            &[3, 4, -1, 2],
            &[3, 4, -1, -2],
        ]);
        assert!(!slur_member(&padded, &TransitionConfig::altslurstar(2)).unwrap());
        assert!(slur_member(&padded, &TransitionConfig::altslurstar(3)).unwrap());
    }

    #[test]
    fn k_decision_examples() {
        // zero decisions on a reduced set: the empty trace
        let f = cs(&[&[1, 2]]);
        let zero = k_decision_assignments(&f, 0);
        assert_eq!(zero, [PartialAssignment::empty()].into_iter().collect());
        // one decision suffices to satisfy a single binary clause
        let one = k_decision_assignments(&f, 1);
        assert!(one.iter().any(|phi| f.apply(phi).is_top()));
        // deciding the padding variable reaches the unsatisfiable core
        let reached: BTreeSet<ClauseSet> =
            k_decision_assignments(&zpadded(), 1).iter().map(|phi| zpadded().apply(phi)).collect();
        assert!(reached.contains(&full2()));
        // and with two padding variables, two decisions reach it
        let padded2 = cs(&[&[3, 4, 1, 2], &[3, 4, 1, -2], &[3, 4, -1, 2], &[3, 4, -1, -2]]);
        let reached2: BTreeSet<ClauseSet> =
            k_decision_assignments(&padded2, 2).iter().map(|phi| padded2.apply(phi)).collect();
        assert!(reached2.contains(&full2()));
    }

    #[test]
    fn guard_refuses_large_instances() {
        let cfg = TransitionConfig::slur(1).with_var_limit(2);
        let f = cs(&[&[1, 2, 3]]);
        assert!(matches!(slur_member(&f, &cfg), Err(SlurGuard { vars: 3, limit: 2 })));
    }

    #[test]
    fn satisfiable_reaches_top() {
        // ⊤ is a terminal exactly for satisfiable inputs
        use crate::testutil::random_clause_set;
        for seed in 0..30 {
            let f = random_clause_set(4, 5, seed);
            let cfg = TransitionConfig::slur(1);
            let terminals = slur_terminal_set(&f, &cfg).unwrap();
            assert_eq!(
                terminals.contains(&ClauseSet::top()),
                crate::oracle::is_satisfiable(&f),
                "seed {seed}"
            );
            // non-⊤ terminals are unsatisfiable
            for t in &terminals {
                if !t.is_top() {
                    assert!(!crate::oracle::is_satisfiable(t), "seed {seed}");
                }
            }
        }
    }
}
