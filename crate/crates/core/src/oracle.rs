//! Brute-force reference implementations.
//!
//! Everything in this module is written from the definitions, deliberately
//! sharing no algorithmic code with the rest of the library: a plain
//! backtracking SAT search, definition-level prime-implicate enumeration, and
//! a hardness computation that maximises over all partial assignments and
//! measures refutations by an explicit Horton-Strahler-bounded closure over
//! bit-mask clauses. These functions are correctness anchors, not tools;
//! they are exponential and guarded by [`OracleBudget`].

use crate::types::{Clause, ClauseSet, Lit, PartialAssignment, Var};
use thiserror::Error;

/// Resource limits for the brute-force computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_vars: u32,
    pub max_nodes: u64,
}

impl Default for OracleBudget {
    fn default() -> OracleBudget {
        OracleBudget { max_vars: 8, max_nodes: 1 << 24 }
    }
}

impl OracleBudget {
    /// Default budget for [`hardness_bruteforce`], which enumerates all
    /// 3^n partial assignments.
    pub fn for_hardness() -> OracleBudget {
        OracleBudget { max_vars: 6, max_nodes: 1 << 24 }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("instance has {actual} variables, brute-force budget allows {allowed}")]
    TooManyVariables { actual: usize, allowed: u32 },
    #[error("brute-force search exceeded {0} nodes")]
    BudgetExhausted(u64),
}

/// Outcome of the complete SAT search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SatOutcome {
    /// A model; its application yields `⊤`.
    Satisfiable(PartialAssignment),
    Unsatisfiable,
}

impl SatOutcome {
    pub fn is_sat(&self) -> bool {
        matches!(self, SatOutcome::Satisfiable(_))
    }
}

/// Complete backtracking SAT search by splitting on variables in canonical
/// order. Returned models are verified by application.
pub fn sat_complete(f: &ClauseSet) -> SatOutcome {
    let mut nodes = u64::MAX;
    sat_search(f, &PartialAssignment::empty(), &mut nodes).expect("unbounded")
}

/// `F` satisfiable?
pub fn is_satisfiable(f: &ClauseSet) -> bool {
    sat_complete(f).is_sat()
}

/// Budgeted variant of [`sat_complete`].
pub fn sat_complete_budgeted(
    f: &ClauseSet,
    budget: &OracleBudget,
) -> Result<SatOutcome, OracleError> {
    let mut nodes = budget.max_nodes;
    sat_search(f, &PartialAssignment::empty(), &mut nodes)
        .map_err(|()| OracleError::BudgetExhausted(budget.max_nodes))
}

fn sat_search(
    f: &ClauseSet,
    partial: &PartialAssignment,
    nodes: &mut u64,
) -> Result<SatOutcome, ()> {
    if *nodes == 0 {
        return Err(());
    }
    *nodes -= 1;
    if f.is_top() {
        debug_assert!(crate::types::apply_assignment(partial, f).is_top());
        return Ok(SatOutcome::Satisfiable(partial.clone()));
    }
    if f.has_empty_clause() {
        return Ok(SatOutcome::Unsatisfiable);
    }
    let var = *f.vars().iter().next().expect("nonempty clause-set has variables");
    for value in [false, true] {
        let step = partial.bind(var, value).expect("fresh variable");
        let reduced = f.apply(&PartialAssignment::singleton_true(Lit::new(var, value)));
        if let SatOutcome::Satisfiable(model) = sat_search(&reduced, &step, nodes)? {
            return Ok(SatOutcome::Satisfiable(model));
        }
    }
    Ok(SatOutcome::Unsatisfiable)
}

/// Prime implicates by definition-level enumeration: every clause over
/// `var(F)` is tested for implication with the complete SAT search, then the
/// subset-minimal ones are kept.
pub fn prime_implicates_bruteforce(
    f: &ClauseSet,
    budget: &OracleBudget,
) -> Result<ClauseSet, OracleError> {
    let vars: Vec<Var> = f.vars().into_iter().collect();
    if vars.len() > budget.max_vars as usize {
        return Err(OracleError::TooManyVariables {
            actual: vars.len(),
            allowed: budget.max_vars,
        });
    }
    let mut implied: Vec<Clause> = Vec::new();
    for candidate in all_clauses_over(&vars) {
        // F ⊨ C iff F plus the unit clauses falsifying C is unsatisfiable.
        let negation =
            ClauseSet::from_clauses(candidate.lits().iter().map(|l| {
                Clause::try_from_lits([l.complement()]).expect("unit")
            }));
        let test = f.union(&negation);
        if !sat_complete_budgeted(&test, budget)?.is_sat() {
            implied.push(candidate);
        }
    }
    let minimal: Vec<Clause> = implied
        .iter()
        .filter(|c| !implied.iter().any(|d| d.subset_of(c) && *d != **c))
        .cloned()
        .collect();
    Ok(ClauseSet::from_clauses(minimal))
}

/// All clauses over the given variables (3^n of them, including `⊥`), in a
/// deterministic order.
pub fn all_clauses_over(vars: &[Var]) -> Vec<Clause> {
    let mut out = Vec::new();
    let n = vars.len();
    let total = 3usize.pow(n as u32);
    for mut code in 0..total {
        let mut lits = Vec::new();
        for &v in vars {
            match code % 3 {
                0 => {}
                1 => lits.push(Lit::new(v, true)),
                _ => lits.push(Lit::new(v, false)),
            }
            code /= 3;
        }
        out.push(Clause::try_from_lits(lits).expect("one polarity per variable"));
    }
    out.sort();
    out
}

/// Hardness by the definition over all partial assignments, independent of
/// the reduction machinery: the maximum over all `φ` with `φ * F`
/// unsatisfiable of the least Horton-Strahler number of a tree-resolution
/// refutation of `φ * F`.
pub fn hardness_bruteforce(f: &ClauseSet, budget: &OracleBudget) -> Result<u32, OracleError> {
    let vars: Vec<Var> = f.vars().into_iter().collect();
    if vars.len() > budget.max_vars as usize {
        return Err(OracleError::TooManyVariables {
            actual: vars.len(),
            allowed: budget.max_vars,
        });
    }
    if f.is_top() {
        return Ok(0);
    }
    let masks = MaskedSet::build(f, &vars);
    let mut best = 0u32;
    // ternary counter over the variables: 0 unassigned, 1 false, 2 true
    let mut digits = vec![0u8; vars.len()];
    loop {
        let residue = masks.apply(&digits);
        if !mask_satisfiable(&residue) {
            best = best.max(min_refutation_strahler(&residue, vars.len() as u32));
        }
        let mut i = digits.len();
        loop {
            if i == 0 {
                return Ok(best);
            }
            i -= 1;
            if digits[i] < 2 {
                digits[i] += 1;
                break;
            }
            digits[i] = 0;
        }
    }
}

/// Clause-sets as vectors of 2n-bit masks; bit `2i` is the positive literal
/// of the i-th variable, bit `2i+1` the negative one.
struct MaskedSet {
    clauses: Vec<u64>,
}

const POS_BITS: u64 = 0x5555_5555_5555_5555;

fn swap_polarity(m: u64) -> u64 {
    ((m & POS_BITS) << 1) | ((m >> 1) & POS_BITS)
}

impl MaskedSet {
    fn build(f: &ClauseSet, vars: &[Var]) -> MaskedSet {
        assert!(vars.len() <= 32);
        let index = |v: Var| vars.iter().position(|&w| w == v).expect("variable of F") as u64;
        let clauses = f
            .iter()
            .map(|c| {
                c.lits()
                    .iter()
                    .map(|l| 1u64 << (2 * index(l.var()) + u64::from(!l.is_positive())))
                    .fold(0, |a, b| a | b)
            })
            .collect();
        MaskedSet { clauses }
    }

    /// Applies a ternary assignment (indexed like the variable slice) and
    /// returns the deduplicated residue.
    fn apply(&self, digits: &[u8]) -> Vec<u64> {
        let mut satisfied = 0u64;
        let mut falsified = 0u64;
        for (i, d) in digits.iter().enumerate() {
            match d {
                1 => {
                    falsified |= 1 << (2 * i);
                    satisfied |= 1 << (2 * i + 1);
                }
                2 => {
                    satisfied |= 1 << (2 * i);
                    falsified |= 1 << (2 * i + 1);
                }
                _ => {}
            }
        }
        let mut out: Vec<u64> = self
            .clauses
            .iter()
            .filter(|&&c| c & satisfied == 0)
            .map(|&c| c & !falsified)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Plain splitting search on mask clauses.
fn mask_satisfiable(clauses: &[u64]) -> bool {
    if clauses.is_empty() {
        return true;
    }
    if clauses.contains(&0) {
        return false;
    }
    let lit_bit = 1u64 << clauses[0].trailing_zeros();
    for bit in [lit_bit, swap_polarity(lit_bit)] {
        let gone = swap_polarity(bit);
        let residue: Vec<u64> = clauses
            .iter()
            .filter(|&&c| c & bit == 0)
            .map(|&c| c & !gone)
            .collect();
        if mask_satisfiable(&residue) {
            return true;
        }
    }
    false
}

fn resolvent_mask(a: u64, b: u64) -> Option<u64> {
    let clash = a & swap_polarity(b);
    if clash.count_ones() != 1 {
        return None;
    }
    Some((a | b) & !(clash | swap_polarity(clash)))
}

/// Least `k` such that `⊥` has a derivation whose tree has Horton-Strahler
/// number at most `k`: level sets `S_0 = F` and `S_k` = closure of
/// `S_{k-1}` under resolving one clause from `S_{k-1}` with one from `S_k`.
fn min_refutation_strahler(clauses: &[u64], max_level: u32) -> u32 {
    use std::collections::HashSet;
    if clauses.contains(&0) {
        return 0;
    }
    let mut prev: HashSet<u64> = clauses.iter().copied().collect();
    for k in 1..=max_level {
        let mut cur = prev.clone();
        let mut queue: Vec<u64> = cur.iter().copied().collect();
        while let Some(q) = queue.pop() {
            for &p in &prev {
                if let Some(r) = resolvent_mask(p, q) {
                    if cur.insert(r) {
                        queue.push(r);
                    }
                }
            }
        }
        if cur.contains(&0) {
            return k;
        }
        prev = cur;
    }
    unreachable!("unsatisfiable clause-sets have refutations of level at most n")
}
