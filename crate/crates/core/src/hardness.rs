//! Hardness measures and class membership: tree-hardness with per-implicate
//! levels, propagation-hardness, width-hardness, the oracle-relativised
//! variant, height-bounded membership, and the gradation witness for
//! unsatisfiable clause-sets.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::oracle;
use crate::reductions::{self, Reducer, UnsatOracle};
use crate::resolution;
use crate::types::{
    assignment_from_clause, assignments_over, Clause, ClauseSet, PartialAssignment,
};

/// Tree-hardness of a clause-set, with the prime implicate attaining it and
/// the level of every prime implicate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HardnessReport {
    pub value: u32,
    /// A prime implicate attaining the value; `None` exactly for `⊤`.
    pub witness: Option<Clause>,
    pub per_implicate_levels: BTreeMap<Clause, u32>,
}

/// Default variable limit for the measures that enumerate all 3^n partial
/// assignments over `var(F)`.
pub const DEFAULT_ASSIGNMENT_ENUM_LIMIT: u32 = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("instance has {vars} variables, the assignment enumeration is limited to {limit}")]
pub struct SizeGuard {
    pub vars: usize,
    pub limit: u32,
}

/// Tree-hardness: the maximum over all prime implicates `C` of the least `k`
/// with `F ⊨_k C`; for unsatisfiable `F` this is the least `k` whose
/// reduction refutes `F`, and `hd(⊤) = 0`.
///
/// Exponential in general (it computes the prime implicates); desk scale by
/// design.
pub fn hardness(f: &ClauseSet) -> HardnessReport {
    let primes = resolution::prime_implicates(f);
    let mut reducer = Reducer::new();
    let bound = f.var_count() as u32;
    let mut per = BTreeMap::new();
    let mut value = 0;
    let mut witness = None;
    for c in primes.iter() {
        let residue = f.apply(&assignment_from_clause(c));
        let level = (0..=bound)
            .find(|&k| reducer.reduce(k, &residue).is_bot())
            .expect("prime implicates are refuted at level n(F) at the latest");
        if level > value || witness.is_none() {
            value = level.max(value);
            if level == value {
                witness = Some(c.clone());
            }
        }
        per.insert(c.clone(), level);
    }
    if per.is_empty() {
        witness = None;
    }
    HardnessReport { value, witness, per_implicate_levels: per }
}

/// `F ∈ UC_k`: hardness at most `k`.
pub fn uc_member(f: &ClauseSet, k: u32) -> bool {
    hardness(f).value <= k
}

/// Propagation-hardness report: the value and, when positive, the first
/// partial assignment (in canonical enumeration order) at which the
/// level-(value−1) reduction differs from the limit reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PHardnessReport {
    pub value: u32,
    pub witness: Option<PartialAssignment>,
}

/// Propagation-hardness: the least `k` with `rk_k(φ*F) = rk_∞(φ*F)` for all
/// partial assignments `φ` (extensional equality). Assignments outside
/// `var(F)` act as the identity, so the enumeration ranges over `var(F)`;
/// that is 3^n assignments, guarded by [`DEFAULT_ASSIGNMENT_ENUM_LIMIT`].
pub fn p_hardness(f: &ClauseSet) -> Result<PHardnessReport, SizeGuard> {
    p_hardness_with_limit(f, DEFAULT_ASSIGNMENT_ENUM_LIMIT)
}

pub fn p_hardness_with_limit(f: &ClauseSet, limit: u32) -> Result<PHardnessReport, SizeGuard> {
    let vars = f.vars();
    if vars.len() > limit as usize {
        return Err(SizeGuard { vars: vars.len(), limit });
    }
    let mut reducer = Reducer::new();
    let bound = vars.len() as u32 + 1;
    let mut value = 0;
    let mut witness = None;
    for phi in assignments_over(&vars) {
        let residue = f.apply(&phi);
        let limit_reduct = reductions::reduce_inf(&residue);
        // equality at level k persists at k+1, so the per-assignment least
        // level is well-defined and the maximum over assignments is the
        // propagation-hardness
        let level = (0..=bound)
            .find(|&k| reducer.reduce(k, &residue) == limit_reduct)
            .expect("the level-(n+1) reduction performs every forced assignment");
        if level > value {
            value = level;
            witness = Some(phi);
        }
    }
    Ok(PHardnessReport { value, witness })
}

/// Width-hardness report: the value and a prime implicate attaining it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WHardnessReport {
    pub value: u32,
    pub witness: Option<Clause>,
}

/// Width-hardness: the least `k` such that every unsatisfiable `φ*F` has a
/// k-resolution refutation. Computed over the prime implicates, mirroring
/// [`hardness`]; the definition-level quantification over all assignments is
/// available as [`w_hardness_all_assignments`].
pub fn w_hardness(f: &ClauseSet) -> WHardnessReport {
    let primes = resolution::prime_implicates(f);
    let bound = f.var_count() as u32;
    let mut value = 0;
    let mut witness = None;
    for c in primes.iter() {
        let residue = f.apply(&assignment_from_clause(c));
        let level = (0..=bound)
            .find(|&k| resolution::k_resolution_closure(&residue, k).has_empty_clause())
            .expect("width-hardness is at most tree-hardness, hence at most n(F)");
        if level > value || witness.is_none() {
            value = level.max(value);
            if level == value {
                witness = Some(c.clone());
            }
        }
    }
    if primes.is_top() {
        witness = None;
    }
    WHardnessReport { value, witness }
}

/// Width-hardness by the definition: the maximum over all `φ` with `φ*F`
/// unsatisfiable of the least `k` admitting a k-resolution refutation.
pub fn w_hardness_all_assignments(f: &ClauseSet, limit: u32) -> Result<u32, SizeGuard> {
    let vars = f.vars();
    if vars.len() > limit as usize {
        return Err(SizeGuard { vars: vars.len(), limit });
    }
    let bound = vars.len() as u32;
    let mut value = 0;
    for phi in assignments_over(&vars) {
        let residue = f.apply(&phi);
        if oracle::is_satisfiable(&residue) {
            continue;
        }
        let level = (0..=bound)
            .find(|&k| resolution::k_resolution_closure(&residue, k).has_empty_clause())
            .expect("unsatisfiable residues have refutations of width at most n");
        value = value.max(level);
    }
    Ok(value)
}

/// Hardness relative to an unsatisfiability oracle: for unsatisfiable `F`
/// the least `k` with `rk_k^U(F) = {⊥}`; in general the maximum over all
/// unsatisfiable `φ*F`, which enumerates 3^n assignments and is guarded.
///
/// The oracle must be valid (contain `{⊥}`, detect only unsatisfiable
/// clause-sets, be stable under partial assignments); validity bounds the
/// level search by `n(F)`.
pub fn hardness_with_oracle(f: &ClauseSet, u: &UnsatOracle) -> Result<u32, SizeGuard> {
    hardness_with_oracle_limited(f, u, DEFAULT_ASSIGNMENT_ENUM_LIMIT)
}

pub fn hardness_with_oracle_limited(
    f: &ClauseSet,
    u: &UnsatOracle,
    limit: u32,
) -> Result<u32, SizeGuard> {
    if f.is_top() {
        return Ok(0);
    }
    let mut reducer = Reducer::with_oracle(u.clone());
    if !oracle::is_satisfiable(f) {
        return Ok(unsat_level_with(&mut reducer, f));
    }
    let vars = f.vars();
    if vars.len() > limit as usize {
        return Err(SizeGuard { vars: vars.len(), limit });
    }
    let mut value = 0;
    for phi in assignments_over(&vars) {
        let residue = f.apply(&phi);
        if !oracle::is_satisfiable(&residue) {
            value = value.max(unsat_level_with(&mut reducer, &residue));
        }
    }
    Ok(value)
}

fn unsat_level_with(reducer: &mut Reducer, f: &ClauseSet) -> u32 {
    let bound = f.var_count() as u32;
    (0..=bound)
        .find(|&k| reducer.reduce(k, f).is_bot())
        .expect("valid oracles refute unsatisfiable clause-sets by level n(F)")
}

/// Membership in the height-k class: every prime implicate has a subclause
/// derivable by a resolution tree of height at most `k`.
pub fn canon_member(f: &ClauseSet, k: u32) -> bool {
    canon_member_mode(f, k, false)
}

/// Strict variant requiring each prime implicate itself (not merely a
/// subclause) in the height-bounded closure.
pub fn canon_member_strict(f: &ClauseSet, k: u32) -> bool {
    canon_member_mode(f, k, true)
}

fn canon_member_mode(f: &ClauseSet, k: u32, strict: bool) -> bool {
    let primes = resolution::prime_implicates(f);
    if primes.is_top() {
        return true;
    }
    let closure = resolution::height_bounded_closure(f, k);
    primes.clauses().iter().all(|c| {
        if strict {
            closure.contains(c)
        } else {
            closure.clauses().iter().any(|d| d.subset_of(c))
        }
    })
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GradationError {
    #[error("the gradation witness is defined for unsatisfiable clause-sets only")]
    Satisfiable,
    #[error("requested level {requested} exceeds the hardness {hardness}")]
    LevelTooLarge { requested: u32, hardness: u32 },
}

/// For unsatisfiable `F` and `0 ≤ k ≤ hd(F)`, a partial assignment `φ` with
/// `n(φ) = k` and `hd(φ*F) = hd(F) − k`, found by the constructive descent:
/// at each step probe single-variable assignments in canonical order and
/// keep the first one lowering the hardness by exactly one.
pub fn hardness_gradation_witness(
    f: &ClauseSet,
    k: u32,
) -> Result<PartialAssignment, GradationError> {
    if oracle::is_satisfiable(f) {
        return Err(GradationError::Satisfiable);
    }
    let mut reducer = Reducer::new();
    let total = unsat_level_with(&mut reducer, f);
    if k > total {
        return Err(GradationError::LevelTooLarge { requested: k, hardness: total });
    }
    let mut phi = PartialAssignment::empty();
    let mut cur = f.clone();
    for step in 0..k {
        let target = total - step - 1;
        let lits = cur.lits();
        let chosen = lits
            .into_iter()
            .find(|&x| {
                let next = cur.apply(&PartialAssignment::singleton_true(x));
                unsat_level_with(&mut reducer, &next) == target
            })
            .expect("the gradation lemma guarantees a hardness-decrementing assignment");
        phi = phi.bind(chosen.var(), chosen.is_positive()).expect("fresh variable");
        cur = cur.apply(&PartialAssignment::singleton_true(chosen));
    }
    Ok(phi)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("clause of length {0} in a 2-CNF computation")]
pub struct NotTwoCnf(pub usize);

/// Polynomial hardness computation for 2-CNF: satisfiable inputs have
/// hardness 0 or 1 (0 exactly when stable under resolution modulo
/// subsumption), unsatisfiable ones 0, 1 or 2.
pub fn two_cnf_hardness(f: &ClauseSet) -> Result<u32, NotTwoCnf> {
    if let Some(c) = f.iter().find(|c| c.len() > 2) {
        return Err(NotTwoCnf(c.len()));
    }
    if oracle::is_satisfiable(f) {
        Ok(if resolution::is_stable_modulo_subsumption(f) { 0 } else { 1 })
    } else if f.has_empty_clause() {
        Ok(0)
    } else if reductions::reduce(1, f).is_bot() {
        Ok(1)
    } else {
        Ok(2)
    }
}
