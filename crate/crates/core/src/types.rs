//! Clause-set data model: variables, literals, clauses, clause-sets and
//! partial assignments.
//!
//! All values are immutable after construction and kept in a canonical form
//! (literals sorted within clauses, clauses sorted within clause-sets), so
//! structural equality coincides with extensional equality and every value
//! can be used as a hash-map key or sent across threads.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::ser::{Serialize, SerializeSeq, Serializer};
use thiserror::Error;

/// A propositional variable, identified by a positive integer id.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(u32);

impl Var {
    /// Creates a variable. Ids start at 1.
    ///
    /// Panics if `id` is zero.
    pub fn new(id: u32) -> Var {
        assert!(id >= 1, "variable ids start at 1");
        Var(id)
    }

    pub fn id(self) -> u32 {
        self.0
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A literal: a variable together with a polarity.
///
/// Encoded as `id * 2 + negated`, so the derived order is the canonical
/// literal order used everywhere: ascending variable id, positive before
/// negative.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lit(u32);

impl Lit {
    pub fn new(var: Var, positive: bool) -> Lit {
        Lit(var.id() * 2 + u32::from(!positive))
    }

    /// Positive literal of variable `id`.
    pub fn pos(id: u32) -> Lit {
        Lit::new(Var::new(id), true)
    }

    /// Negative literal of variable `id`.
    pub fn neg(id: u32) -> Lit {
        Lit::new(Var::new(id), false)
    }

    pub fn var(self) -> Var {
        Var(self.0 / 2)
    }

    pub fn is_positive(self) -> bool {
        self.0 % 2 == 0
    }

    /// Complementation; an involution with `var(x) = var(!x)`.
    pub fn complement(self) -> Lit {
        Lit(self.0 ^ 1)
    }

    /// DIMACS encoding: positive id for positive literals, negated id
    /// otherwise.
    pub fn to_dimacs(self) -> i32 {
        let id = self.var().id() as i32;
        if self.is_positive() {
            id
        } else {
            -id
        }
    }

    /// Parses a non-zero DIMACS literal code.
    pub fn from_dimacs(code: i32) -> Option<Lit> {
        if code == 0 {
            return None;
        }
        Some(Lit::new(Var::new(code.unsigned_abs()), code > 0))
    }
}

impl fmt::Debug for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

/// Error returned when a clause would contain a clashing literal pair.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("clause contains the clashing pair {lit} and {}", lit.complement())]
pub struct ClashError {
    pub lit: Lit,
}

/// A clause: a finite, clash-free set of literals. The empty clause is `⊥`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Clause(Vec<Lit>);

impl Clause {
    /// The empty clause `⊥`.
    pub fn empty() -> Clause {
        Clause(Vec::new())
    }

    /// Builds a clause from literals, deduplicating and sorting; rejects
    /// clashing pairs.
    pub fn try_from_lits<I: IntoIterator<Item = Lit>>(lits: I) -> Result<Clause, ClashError> {
        let mut v: Vec<Lit> = lits.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        for w in v.windows(2) {
            if w[0].var() == w[1].var() {
                return Err(ClashError { lit: w[0] });
            }
        }
        Ok(Clause(v))
    }

    /// Internal constructor for literal vectors already known to be sorted,
    /// deduplicated and clash-free.
    pub(crate) fn from_sorted_unchecked(lits: Vec<Lit>) -> Clause {
        debug_assert!(lits.windows(2).all(|w| w[0] < w[1] && w[0].var() != w[1].var()));
        Clause(lits)
    }

    pub fn lits(&self) -> &[Lit] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, lit: Lit) -> bool {
        self.0.binary_search(&lit).is_ok()
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.0.iter().map(|l| l.var())
    }

    /// Subset relation on the underlying literal sets.
    pub fn subset_of(&self, other: &Clause) -> bool {
        if self.len() > other.len() {
            return false;
        }
        let mut it = other.lits().iter();
        'outer: for l in &self.0 {
            for m in it.by_ref() {
                match m.cmp(l) {
                    std::cmp::Ordering::Less => continue,
                    std::cmp::Ordering::Equal => continue 'outer,
                    std::cmp::Ordering::Greater => return false,
                }
            }
            return false;
        }
        true
    }

    /// The clause with one literal occurrence removed.
    pub fn without(&self, lit: Lit) -> Clause {
        Clause(self.0.iter().copied().filter(|&l| l != lit).collect())
    }

    /// The clause extended by one literal; rejects clashes.
    pub fn with(&self, lit: Lit) -> Result<Clause, ClashError> {
        Clause::try_from_lits(self.0.iter().copied().chain(std::iter::once(lit)))
    }
}

impl fmt::Debug for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "⊥");
        }
        write!(f, "{{")?;
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for Clause {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.0.len()))?;
        for l in &self.0 {
            seq.serialize_element(&l.to_dimacs())?;
        }
        seq.end()
    }
}

/// Injective canonical key of a clause-set, used for memoization.
///
/// Equal extensional clause-sets produce equal keys and distinct ones
/// produce distinct keys (the key is the flattened canonical DIMACS
/// encoding, clauses separated by zeros).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CanonicalKey(Box<[i32]>);

/// A clause-set: a finite set of clauses. The empty clause-set is `⊤`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ClauseSet(Vec<Clause>);

impl ClauseSet {
    /// The empty clause-set `⊤`.
    pub fn top() -> ClauseSet {
        ClauseSet(Vec::new())
    }

    /// The clause-set `{⊥}`, the canonical unsatisfiable result of the
    /// reductions.
    pub fn contradiction() -> ClauseSet {
        ClauseSet(vec![Clause::empty()])
    }

    pub fn from_clauses<I: IntoIterator<Item = Clause>>(clauses: I) -> ClauseSet {
        let mut v: Vec<Clause> = clauses.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        ClauseSet(v)
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = &Clause> {
        self.0.iter()
    }

    /// `c(F)`: the number of clauses.
    pub fn clause_count(&self) -> usize {
        self.0.len()
    }

    /// `n(F)`: the number of variables.
    pub fn var_count(&self) -> usize {
        self.vars().len()
    }

    /// `ℓ(F)`: the number of literal occurrences.
    pub fn literal_occurrences(&self) -> usize {
        self.0.iter().map(Clause::len).sum()
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.0.iter().flat_map(|c| c.vars()).collect()
    }

    /// `lit(F)`: all literals occurring in some polarity, closed under
    /// complementation.
    pub fn lits(&self) -> BTreeSet<Lit> {
        let mut s = BTreeSet::new();
        for c in &self.0 {
            for &l in c.lits() {
                s.insert(l);
                s.insert(l.complement());
            }
        }
        s
    }

    /// `⊤`?
    pub fn is_top(&self) -> bool {
        self.0.is_empty()
    }

    /// Exactly `{⊥}`?
    pub fn is_bot(&self) -> bool {
        self.0.len() == 1 && self.0[0].is_empty()
    }

    /// `⊥ ∈ F`?
    pub fn has_empty_clause(&self) -> bool {
        self.0.first().is_some_and(Clause::is_empty)
    }

    pub fn contains(&self, clause: &Clause) -> bool {
        self.0.binary_search(clause).is_ok()
    }

    pub fn insert(&self, clause: Clause) -> ClauseSet {
        match self.0.binary_search(&clause) {
            Ok(_) => self.clone(),
            Err(pos) => {
                let mut v = self.0.clone();
                v.insert(pos, clause);
                ClauseSet(v)
            }
        }
    }

    pub fn without(&self, clause: &Clause) -> ClauseSet {
        ClauseSet(self.0.iter().filter(|c| *c != clause).cloned().collect())
    }

    pub fn union(&self, other: &ClauseSet) -> ClauseSet {
        ClauseSet::from_clauses(self.0.iter().chain(other.0.iter()).cloned())
    }

    /// Applies a partial assignment: satisfied clauses are removed, falsified
    /// literals are removed from the remaining clauses.
    pub fn apply(&self, phi: &PartialAssignment) -> ClauseSet {
        apply_assignment(phi, self)
    }

    /// The injective memoization key; see [`CanonicalKey`].
    pub fn canonical_key(&self) -> CanonicalKey {
        let mut v = Vec::with_capacity(self.literal_occurrences() + self.clause_count());
        for c in &self.0 {
            for l in c.lits() {
                v.push(l.to_dimacs());
            }
            v.push(0);
        }
        CanonicalKey(v.into_boxed_slice())
    }
}

impl FromIterator<Clause> for ClauseSet {
    fn from_iter<I: IntoIterator<Item = Clause>>(iter: I) -> ClauseSet {
        ClauseSet::from_clauses(iter)
    }
}

impl fmt::Debug for ClauseSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "⊤");
        }
        write!(f, "{{")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c:?}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for ClauseSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.0.len()))?;
        for c in &self.0 {
            seq.serialize_element(c)?;
        }
        seq.end()
    }
}

/// Error returned when a partial assignment would bind a variable twice with
/// conflicting values.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("variable {var} bound to both values")]
pub struct BindConflict {
    pub var: Var,
}

/// A partial assignment: a finite map from variables to truth values.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PartialAssignment(BTreeMap<Var, bool>);

impl PartialAssignment {
    /// The empty partial assignment `ε`.
    pub fn empty() -> PartialAssignment {
        PartialAssignment(BTreeMap::new())
    }

    /// `⟨x→1⟩`: the assignment making literal `x` true.
    pub fn singleton_true(lit: Lit) -> PartialAssignment {
        let mut m = BTreeMap::new();
        m.insert(lit.var(), lit.is_positive());
        PartialAssignment(m)
    }

    pub fn from_pairs<I: IntoIterator<Item = (Var, bool)>>(
        pairs: I,
    ) -> Result<PartialAssignment, BindConflict> {
        let mut m = BTreeMap::new();
        for (v, b) in pairs {
            if *m.entry(v).or_insert(b) != b {
                return Err(BindConflict { var: v });
            }
        }
        Ok(PartialAssignment(m))
    }

    /// `n(φ)`: the number of bound variables.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn value(&self, var: Var) -> Option<bool> {
        self.0.get(&var).copied()
    }

    /// Truth value of a literal under the assignment, if its variable is
    /// bound.
    pub fn assigns(&self, lit: Lit) -> Option<bool> {
        self.value(lit.var()).map(|b| b == lit.is_positive())
    }

    pub fn domain(&self) -> impl Iterator<Item = Var> + '_ {
        self.0.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, bool)> + '_ {
        self.0.iter().map(|(&v, &b)| (v, b))
    }

    /// Extends the assignment by one binding; rejects conflicts, ignores
    /// duplicates.
    pub fn bind(&self, var: Var, value: bool) -> Result<PartialAssignment, BindConflict> {
        match self.0.get(&var) {
            Some(&b) if b != value => Err(BindConflict { var }),
            _ => {
                let mut m = self.0.clone();
                m.insert(var, value);
                Ok(PartialAssignment(m))
            }
        }
    }

    /// Union of two assignments with disjoint or agreeing domains.
    pub fn union(&self, other: &PartialAssignment) -> Result<PartialAssignment, BindConflict> {
        let mut out = self.clone();
        for (v, b) in other.iter() {
            out = out.bind(v, b)?;
        }
        Ok(out)
    }

    /// The literals made true by the assignment, in canonical order.
    pub fn true_literals(&self) -> impl Iterator<Item = Lit> + '_ {
        self.0.iter().map(|(&v, &b)| Lit::new(v, b))
    }
}

impl fmt::Debug for PartialAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨")?;
        for (i, (v, b)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}→{}", v, u8::from(*b))?;
        }
        write!(f, "⟩")
    }
}

impl Serialize for PartialAssignment {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.0.len()))?;
        for l in self.true_literals() {
            seq.serialize_element(&l.to_dimacs())?;
        }
        seq.end()
    }
}

/// The forced literals of a clause-set: every literal (unsatisfiable case) or
/// a finite clash-free set.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ForcedLiterals {
    /// All literals are forced; holds exactly for unsatisfiable clause-sets.
    All,
    Finite(BTreeSet<Lit>),
}

impl ForcedLiterals {
    pub fn is_all(&self) -> bool {
        matches!(self, ForcedLiterals::All)
    }
}

/// `φ * F`: removes satisfied clauses and falsified literals.
pub fn apply_assignment(phi: &PartialAssignment, f: &ClauseSet) -> ClauseSet {
    if phi.is_empty() {
        return f.clone();
    }
    let mut out: Vec<Clause> = Vec::with_capacity(f.clause_count());
    'clauses: for c in f.iter() {
        let mut rest: Vec<Lit> = Vec::with_capacity(c.len());
        for &l in c.lits() {
            match phi.assigns(l) {
                Some(true) => continue 'clauses,
                Some(false) => {}
                None => rest.push(l),
            }
        }
        out.push(Clause::from_sorted_unchecked(rest));
    }
    ClauseSet::from_clauses(out)
}

/// `φ_C`: the assignment setting precisely the literals of `C` to false.
pub fn assignment_from_clause(clause: &Clause) -> PartialAssignment {
    PartialAssignment::from_pairs(clause.lits().iter().map(|l| (l.var(), !l.is_positive())))
        .expect("clauses are clash-free")
}

/// Canonical form of a clause-set; a convenience alias for
/// [`ClauseSet::canonical_key`].
pub fn canonical_form(f: &ClauseSet) -> CanonicalKey {
    f.canonical_key()
}

/// All partial assignments over the given variables, in canonical order:
/// a ternary counter (unassigned, false, true) with the last variable
/// cycling fastest.
pub fn assignments_over(vars: &BTreeSet<Var>) -> AssignmentIter {
    AssignmentIter {
        vars: vars.iter().copied().collect(),
        digits: vec![0; vars.len()],
        done: false,
    }
}

pub struct AssignmentIter {
    vars: Vec<Var>,
    digits: Vec<u8>,
    done: bool,
}

impl Iterator for AssignmentIter {
    type Item = PartialAssignment;

    fn next(&mut self) -> Option<PartialAssignment> {
        if self.done {
            return None;
        }
        let mut m = BTreeMap::new();
        for (v, d) in self.vars.iter().zip(&self.digits) {
            match d {
                0 => {}
                1 => {
                    m.insert(*v, false);
                }
                _ => {
                    m.insert(*v, true);
                }
            }
        }
        // increment the ternary counter, last digit fastest
        let mut i = self.digits.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.digits[i] < 2 {
                self.digits[i] += 1;
                break;
            }
            self.digits[i] = 0;
        }
        Some(PartialAssignment(m))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{cl, cs, pa};

    #[test]
    fn literal_complement_is_involution() {
        let x = Lit::pos(3);
        assert_eq!(x.complement().complement(), x);
        assert_eq!(x.var(), x.complement().var());
        assert!(!x.complement().is_positive());
    }

    #[test]
    fn canonical_literal_order() {
        // ascending variable, positive before negative
        let mut lits = vec![Lit::neg(2), Lit::pos(1), Lit::neg(1), Lit::pos(2)];
        lits.sort();
        assert_eq!(lits, vec![Lit::pos(1), Lit::neg(1), Lit::pos(2), Lit::neg(2)]);
    }

    #[test]
    fn clause_rejects_clashes() {
        assert!(Clause::try_from_lits([Lit::pos(1), Lit::neg(1)]).is_err());
        let c = Clause::try_from_lits([Lit::pos(2), Lit::pos(1), Lit::pos(2)]).unwrap();
        assert_eq!(c.len(), 2);
    }

    #[test]
    fn apply_basic() {
        // ⟨x→1⟩ * {{x,y},{x̄,z}} = {{z}}
        let f = cs(&[&[1, 2], &[-1, 3]]);
        let phi = pa(&[(1, true)]);
        assert_eq!(f.apply(&phi), cs(&[&[3]]));
    }

    #[test]
    fn apply_empty_assignment_is_identity() {
        let f = cs(&[&[1, 2], &[-1, -2]]);
        assert_eq!(f.apply(&PartialAssignment::empty()), f);
    }

    #[test]
    fn apply_can_produce_empty_clause() {
        // ⟨x→1, y→0⟩ * {{x̄,y}} = {⊥}
        let f = cs(&[&[-1, 2]]);
        let phi = pa(&[(1, true), (2, false)]);
        assert_eq!(f.apply(&phi), ClauseSet::contradiction());
        assert!(f.apply(&phi).is_bot());
    }

    #[test]
    fn apply_removes_assigned_vars() {
        let f = cs(&[&[1, 2, 3], &[-1, -2], &[2, -3]]);
        let phi = pa(&[(2, true)]);
        let g = f.apply(&phi);
        assert!(!g.vars().contains(&Var::new(2)));
    }

    #[test]
    fn assignment_from_clause_examples() {
        // φ_⊥ = ε
        assert_eq!(assignment_from_clause(&Clause::empty()), PartialAssignment::empty());
        // φ_{x} = ⟨x→0⟩
        assert_eq!(assignment_from_clause(&cl(&[1])), pa(&[(1, false)]));
        // φ_{x,ȳ} = ⟨x→0, y→1⟩
        assert_eq!(assignment_from_clause(&cl(&[1, -2])), pa(&[(1, false), (2, true)]));
    }

    #[test]
    fn canonical_form_examples() {
        let a = ClauseSet::from_clauses([cl(&[2, 1])]);
        let b = ClauseSet::from_clauses([cl(&[1, 2])]);
        assert_eq!(a.canonical_key(), b.canonical_key());
        assert_eq!(ClauseSet::top().canonical_key(), CanonicalKey(Box::new([])));
        assert_ne!(cs(&[&[1]]).canonical_key(), cs(&[&[-1]]).canonical_key());
    }

    #[test]
    fn counts_are_consistent() {
        let f = cs(&[&[1, 2], &[-1, 3], &[2]]);
        assert_eq!(f.clause_count(), 3);
        assert_eq!(f.var_count(), 3);
        assert_eq!(f.literal_occurrences(), 5);
    }

    #[test]
    fn subset_of_works() {
        assert!(cl(&[1]).subset_of(&cl(&[1, 2])));
        assert!(cl(&[]).subset_of(&cl(&[1])));
        assert!(!cl(&[1, 2]).subset_of(&cl(&[1])));
        assert!(!cl(&[-1]).subset_of(&cl(&[1, 2])));
        assert!(cl(&[1, 3]).subset_of(&cl(&[1, 2, 3])));
    }

    #[test]
    fn assignments_over_counts() {
        let f = cs(&[&[1, 2]]);
        let all: Vec<_> = assignments_over(&f.vars()).collect();
        assert_eq!(all.len(), 9);
        assert_eq!(all[0], PartialAssignment::empty());
        // deterministic order
        let again: Vec<_> = assignments_over(&f.vars()).collect();
        assert_eq!(all, again);
    }

    #[test]
    fn bot_and_top_are_ordinary_values() {
        assert!(ClauseSet::top().is_top());
        assert!(ClauseSet::contradiction().is_bot());
        assert!(ClauseSet::contradiction().has_empty_clause());
        assert_eq!(ClauseSet::contradiction().var_count(), 0);
    }
}
