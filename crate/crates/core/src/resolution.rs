//! Resolution: the resolution rule, prime implicates via saturation with
//! subsumption, resolution trees and their Horton-Strahler numbers, nested
//! input resolution with explicit witness search, and the height- and
//! width-bounded closures.

use std::collections::HashMap;

use serde::ser::{Serialize, SerializeMap, Serializer};
use thiserror::Error;

use crate::reductions;
use crate::types::{Clause, ClauseSet, Lit};

/// Why two clauses are not resolvable.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ResolveError {
    #[error("clauses do not clash")]
    NoClash,
    #[error("clauses clash in {0} literals")]
    MultipleClashes(usize),
}

/// The resolvent of two clauses clashing in exactly one literal, together
/// with the clashing (pivot) literal as it occurs in the first clause.
pub fn resolvent_with_pivot(c: &Clause, d: &Clause) -> Result<(Clause, Lit), ResolveError> {
    let mut pivot = None;
    let mut clashes = 0usize;
    for &l in c.lits() {
        if d.contains(l.complement()) {
            clashes += 1;
            pivot = Some(l);
        }
    }
    match (clashes, pivot) {
        (1, Some(x)) => {
            let lits = c
                .lits()
                .iter()
                .chain(d.lits())
                .copied()
                .filter(|&l| l != x && l != x.complement());
            let r = Clause::try_from_lits(lits)
                .expect("single-clash parents have a clash-free resolvent");
            Ok((r, x))
        }
        (0, _) => Err(ResolveError::NoClash),
        (n, _) => Err(ResolveError::MultipleClashes(n)),
    }
}

/// The resolvent of two clauses clashing in exactly one literal.
pub fn resolvent(c: &Clause, d: &Clause) -> Result<Clause, ResolveError> {
    resolvent_with_pivot(c, d).map(|(r, _)| r)
}

/// A binary resolution tree; leaves carry axioms, inner nodes carry the
/// resolvent of their children together with the pivot literal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ResolutionTree {
    Leaf(Clause),
    Node { left: Box<ResolutionTree>, right: Box<ResolutionTree>, pivot: Lit, clause: Clause },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("axiom {0:?} is not in the clause-set")]
    UnknownAxiom(Clause),
    #[error("node clause {stored:?} differs from the resolvent {expected:?}")]
    WrongResolvent { stored: Clause, expected: Clause },
    #[error("node pivot {stored} differs from the clashing literal {expected}")]
    WrongPivot { stored: Lit, expected: Lit },
    #[error("children are not resolvable: {0}")]
    NotResolvable(#[from] ResolveError),
}

impl ResolutionTree {
    pub fn leaf(axiom: Clause) -> ResolutionTree {
        ResolutionTree::Leaf(axiom)
    }

    /// Builds an inner node, computing pivot and resolvent from the children.
    pub fn node(left: ResolutionTree, right: ResolutionTree) -> Result<ResolutionTree, ResolveError> {
        let (clause, pivot) = resolvent_with_pivot(left.clause(), right.clause())?;
        Ok(ResolutionTree::Node { left: Box::new(left), right: Box::new(right), pivot, clause })
    }

    /// The clause derived at the root.
    pub fn clause(&self) -> &Clause {
        match self {
            ResolutionTree::Leaf(c) => c,
            ResolutionTree::Node { clause, .. } => clause,
        }
    }

    /// Horton-Strahler number: 0 on leaves, the children's maximum when they
    /// differ, that maximum plus one on ties.
    pub fn horton_strahler(&self) -> u32 {
        match self {
            ResolutionTree::Leaf(_) => 0,
            ResolutionTree::Node { left, right, .. } => {
                let (a, b) = (left.horton_strahler(), right.horton_strahler());
                if a == b {
                    a + 1
                } else {
                    a.max(b)
                }
            }
        }
    }

    /// Height: 0 on leaves.
    pub fn height(&self) -> u32 {
        match self {
            ResolutionTree::Leaf(_) => 0,
            ResolutionTree::Node { left, right, .. } => 1 + left.height().max(right.height()),
        }
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            ResolutionTree::Leaf(_) => 1,
            ResolutionTree::Node { left, right, .. } => left.leaf_count() + right.leaf_count(),
        }
    }

    /// Structural verification against an axiom set: every leaf must be an
    /// axiom, every node clause the resolvent of its children with the
    /// stored pivot.
    pub fn verify(&self, axioms: &ClauseSet) -> Result<(), TreeError> {
        match self {
            ResolutionTree::Leaf(c) => {
                if axioms.contains(c) {
                    Ok(())
                } else {
                    Err(TreeError::UnknownAxiom(c.clone()))
                }
            }
            ResolutionTree::Node { left, right, pivot, clause } => {
                left.verify(axioms)?;
                right.verify(axioms)?;
                let (expected, x) = resolvent_with_pivot(left.clause(), right.clause())?;
                if x != *pivot {
                    return Err(TreeError::WrongPivot { stored: *pivot, expected: x });
                }
                if expected != *clause {
                    return Err(TreeError::WrongResolvent {
                        stored: clause.clone(),
                        expected,
                    });
                }
                Ok(())
            }
        }
    }
}

impl Serialize for ResolutionTree {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            ResolutionTree::Leaf(c) => {
                let mut m = serializer.serialize_map(Some(1))?;
                m.serialize_entry("axiom", c)?;
                m.end()
            }
            ResolutionTree::Node { left, right, pivot, clause } => {
                let mut m = serializer.serialize_map(Some(4))?;
                m.serialize_entry("pivot", &pivot.to_dimacs())?;
                m.serialize_entry("clause", clause)?;
                m.serialize_entry("left", left)?;
                m.serialize_entry("right", right)?;
                m.end()
            }
        }
    }
}

/// `prc0(F)`: the prime implicates, computed by resolution closure with
/// interleaved subsumption elimination. `{⊥}` for unsatisfiable inputs,
/// `∅` for `⊤`.
pub fn prime_implicates(f: &ClauseSet) -> ClauseSet {
    let mut set: Vec<Clause> = Vec::new();
    for c in f.iter() {
        insert_minimal(&mut set, c.clone());
    }
    loop {
        let mut fresh: Vec<Clause> = Vec::new();
        for i in 0..set.len() {
            for j in (i + 1)..set.len() {
                if let Ok(r) = resolvent(&set[i], &set[j]) {
                    if r.is_empty() {
                        return ClauseSet::contradiction();
                    }
                    if !set.iter().any(|c| c.subset_of(&r)) {
                        fresh.push(r);
                    }
                }
            }
        }
        let mut changed = false;
        for r in fresh {
            changed |= insert_minimal(&mut set, r);
        }
        if !changed {
            return ClauseSet::from_clauses(set);
        }
    }
}

/// Inserts a clause unless subsumed, dropping clauses it subsumes. Returns
/// whether the set changed.
fn insert_minimal(set: &mut Vec<Clause>, c: Clause) -> bool {
    if set.iter().any(|d| d.subset_of(&c)) {
        return false;
    }
    set.retain(|d| !c.subset_of(d));
    set.push(c);
    true
}

/// Stability under resolution modulo subsumption: every resolvent of two
/// clauses of `F` is a superset of some clause of `F`. Holds exactly when
/// the hardness is 0 and the prime implicates are contained in `F`.
pub fn is_stable_modulo_subsumption(f: &ClauseSet) -> bool {
    let clauses = f.clauses();
    for i in 0..clauses.len() {
        for j in (i + 1)..clauses.len() {
            if let Ok(r) = resolvent(&clauses[i], &clauses[j]) {
                if !clauses.iter().any(|c| c.subset_of(&r)) {
                    return false;
                }
            }
        }
    }
    true
}

/// Shorthand for [`ResolutionTree::horton_strahler`].
pub fn horton_strahler(tree: &ResolutionTree) -> u32 {
    tree.horton_strahler()
}

/// `F ⊢_k C`: some subclause of `C` is derivable from `F` by a resolution
/// tree with Horton-Strahler number at most `k`.
///
/// This fast path evaluates the equivalent level-k implication; for an
/// explicit tree use [`derives_nested_witness`].
pub fn derives_nested(f: &ClauseSet, c: &Clause, k: u32) -> bool {
    reductions::implies_level(f, c, k)
}

/// Outcome of the explicit witness search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessOutcome {
    Derived(ResolutionTree),
    NotDerivable,
    /// The bounded search gave up; distinct from a definite "no".
    BudgetExhausted,
}

pub const DEFAULT_WITNESS_BUDGET: u64 = 1_000_000;

#[derive(Clone, Debug)]
enum Origin {
    Axiom,
    Resolved { lower: Clause, peer: Clause },
}

/// Explicit bounded search for a tree `T : F ⊢ C' ⊆ C` with
/// `horton_strahler(T) ≤ k`, independent of the reduction machinery.
///
/// Iterative deepening on the Horton-Strahler level: level set 0 holds the
/// axioms, level set k+1 is closed under resolving a clause of level k with
/// one of level k+1. The budget counts resolvent computations.
pub fn derives_nested_witness(
    f: &ClauseSet,
    c: &Clause,
    k: u32,
    budget: u64,
) -> WitnessOutcome {
    let mut remaining = budget;
    // level -> clause -> origin; reconstruction recurses level-monotonically
    let mut levels: Vec<HashMap<Clause, Origin>> = Vec::new();
    let base: HashMap<Clause, Origin> =
        f.iter().map(|cl| (cl.clone(), Origin::Axiom)).collect();
    levels.push(base);

    for level in 0..=k {
        if level > 0 {
            let prev: Vec<Clause> = levels[level as usize - 1].keys().cloned().collect();
            let mut cur = levels[level as usize - 1].clone();
            let mut queue: Vec<Clause> = cur.keys().cloned().collect();
            while let Some(q) = queue.pop() {
                for p in &prev {
                    if remaining == 0 {
                        return WitnessOutcome::BudgetExhausted;
                    }
                    remaining -= 1;
                    if let Ok(r) = resolvent(p, &q) {
                        if !cur.contains_key(&r) {
                            cur.insert(
                                r.clone(),
                                Origin::Resolved { lower: p.clone(), peer: q.clone() },
                            );
                            queue.push(r);
                        }
                    }
                }
            }
            levels.push(cur);
        }
        if let Some(hit) =
            levels[level as usize].keys().find(|cl| cl.subset_of(c)).cloned()
        {
            let tree = rebuild(&levels, level as usize, &hit);
            debug_assert!(tree.verify(f).is_ok());
            debug_assert!(tree.horton_strahler() <= k);
            return WitnessOutcome::Derived(tree);
        }
    }
    WitnessOutcome::NotDerivable
}

fn rebuild(levels: &[HashMap<Clause, Origin>], level: usize, c: &Clause) -> ResolutionTree {
    // prefer the shallowest level recording the clause, so axioms stay leaves
    let (at, origin) = (0..=level)
        .find_map(|j| levels[j].get(c).map(|o| (j, o)))
        .expect("clause recorded at or below the queried level");
    match origin {
        Origin::Axiom => ResolutionTree::leaf(c.clone()),
        Origin::Resolved { lower, peer } => {
            let left = rebuild(levels, at - 1, lower);
            let right = rebuild(levels, at, peer);
            ResolutionTree::node(left, right).expect("recorded parents are resolvable")
        }
    }
}

/// The clauses derivable from `F` by resolution trees of height at most `k`:
/// `H_0 = F`, `H_{i+1} = H_i ∪ {resolvents of pairs in H_i}`. No
/// subsumption pruning; membership is by exact clause.
pub fn height_bounded_closure(f: &ClauseSet, k: u32) -> ClauseSet {
    let mut cur = f.clone();
    for _ in 0..k {
        let clauses = cur.clauses();
        let mut fresh: Vec<Clause> = Vec::new();
        for i in 0..clauses.len() {
            for j in (i + 1)..clauses.len() {
                if let Ok(r) = resolvent(&clauses[i], &clauses[j]) {
                    if !cur.contains(&r) {
                        fresh.push(r);
                    }
                }
            }
        }
        if fresh.is_empty() {
            break;
        }
        cur = cur.union(&ClauseSet::from_clauses(fresh));
    }
    cur
}

/// The closure of `F` under k-resolution: resolution steps where at least
/// one parent has length at most `k`. No subsumption pruning.
pub fn k_resolution_closure(f: &ClauseSet, k: u32) -> ClauseSet {
    let mut set: Vec<Clause> = f.clauses().to_vec();
    let mut queue: Vec<Clause> = set.clone();
    while let Some(q) = queue.pop() {
        let mut fresh = Vec::new();
        for d in &set {
            if q.len() as u32 > k && d.len() as u32 > k {
                continue;
            }
            if let Ok(r) = resolvent(&q, d) {
                if !set.iter().any(|c| *c == r) && !fresh.contains(&r) {
                    fresh.push(r);
                }
            }
        }
        for r in fresh {
            set.push(r.clone());
            queue.push(r);
        }
    }
    ClauseSet::from_clauses(set)
}
