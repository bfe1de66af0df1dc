//! Irredundant and minimum k-bases: equivalence testing, the k-base
//! predicate, exact minimum search over subsets of the prime implicates, and
//! the polynomial 2-CNF pipeline via the implication digraph (strongly
//! connected components, transitive reduction of the condensation, spanning
//! cycles).

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::hardness;
use crate::oracle;
use crate::resolution;
use crate::types::{Clause, ClauseSet, Lit, PartialAssignment};

/// A hardness bound: a finite level or none at all.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HardnessBound {
    Level(u32),
    Unbounded,
}

impl HardnessBound {
    fn admits(self, value: u32) -> bool {
        match self {
            HardnessBound::Level(k) => value <= k,
            HardnessBound::Unbounded => true,
        }
    }
}

impl fmt::Display for HardnessBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HardnessBound::Level(k) => write!(f, "{k}"),
            HardnessBound::Unbounded => write!(f, "inf"),
        }
    }
}

impl FromStr for HardnessBound {
    type Err = String;

    fn from_str(s: &str) -> Result<HardnessBound, String> {
        match s {
            "inf" | "infinity" | "oo" => Ok(HardnessBound::Unbounded),
            other => other
                .parse::<u32>()
                .map(HardnessBound::Level)
                .map_err(|_| format!("expected a level or 'inf', got {other:?}")),
        }
    }
}

fn implied_by(g: &ClauseSet, c: &Clause) -> bool {
    let negation = ClauseSet::from_clauses(
        c.lits().iter().map(|l| Clause::try_from_lits([l.complement()]).expect("unit")),
    );
    !oracle::is_satisfiable(&g.union(&negation))
}

/// Logical equivalence of two clause-sets: each clause of either is implied
/// by the other, decided by the complete SAT search.
pub fn equivalent(f: &ClauseSet, g: &ClauseSet) -> bool {
    f.iter().all(|c| implied_by(g, c)) && g.iter().all(|c| implied_by(f, c))
}

/// The k-base predicate: hardness within the bound, and removing any single
/// clause or literal occurrence loses equivalence or exceeds the bound.
pub fn is_k_base(f: &ClauseSet, bound: HardnessBound) -> bool {
    if !bound.admits(hardness::hardness(f).value) {
        return false;
    }
    let survives = |reduced: &ClauseSet| {
        // the removal must hurt: inequivalent, or too hard
        !equivalent(reduced, f) || !bound.admits(hardness::hardness(reduced).value)
    };
    for c in f.iter() {
        if !survives(&f.without(c)) {
            return false;
        }
        for &l in c.lits() {
            if !survives(&f.without(c).insert(c.without(l))) {
                return false;
            }
        }
    }
    true
}

/// Result of a minimum-base search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseSearchResult {
    pub base: ClauseSet,
    /// Number of clauses.
    pub cardinality: usize,
    /// Number of literal occurrences.
    pub size: usize,
    /// Whether optimality was certified (search completed within budget).
    pub exact: bool,
}

impl BaseSearchResult {
    fn exact_from(base: ClauseSet) -> BaseSearchResult {
        BaseSearchResult {
            cardinality: base.clause_count(),
            size: base.literal_occurrences(),
            exact: true,
            base,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BaseError {
    #[error("input must equal its prime implicates")]
    NotPrimeClosed,
    #[error("clause of length {0} in a 2-CNF computation")]
    NotTwoCnf(usize),
}

pub const DEFAULT_BASE_BUDGET: u64 = 1 << 20;

/// Minimum-cardinality equivalent subset of a prime-implicate-closed input
/// with hardness within `k`, by exhaustive search in increasing cardinality
/// over the non-necessary clauses. Necessary clauses (not implied by the
/// rest) seed every candidate. Ties are broken towards the canonically
/// least clause-set. The budget counts candidate subsets; on exhaustion the
/// best candidate found so far is returned with `exact = false`.
pub fn min_base_from_primes(
    f: &ClauseSet,
    k: u32,
    budget: u64,
) -> Result<BaseSearchResult, BaseError> {
    if resolution::prime_implicates(f) != *f {
        return Err(BaseError::NotPrimeClosed);
    }
    if f.is_top() {
        return Ok(BaseSearchResult::exact_from(ClauseSet::top()));
    }
    let necessary: Vec<Clause> =
        f.iter().filter(|c| !implied_by(&f.without(c), c)).cloned().collect();
    let optional: Vec<Clause> =
        f.iter().filter(|c| !necessary.contains(c)).cloned().collect();
    let candidate_ok = |s: &ClauseSet| equivalent(s, f) && hardness::hardness(s).value <= k;

    let mut spent = 0u64;
    for take in 0..=optional.len() {
        let mut hits: Vec<ClauseSet> = Vec::new();
        let mut exhausted = false;
        for_each_combination(optional.len(), take, &mut |picked| {
            if spent >= budget {
                exhausted = true;
                return false;
            }
            spent += 1;
            let subset = ClauseSet::from_clauses(
                necessary.iter().cloned().chain(picked.iter().map(|&i| optional[i].clone())),
            );
            if candidate_ok(&subset) {
                hits.push(subset);
            }
            true
        });
        if let Some(best) = hits.into_iter().min() {
            return Ok(BaseSearchResult {
                cardinality: best.clause_count(),
                size: best.literal_occurrences(),
                // exhaustion mid-size leaves the tie-break uncertified
                exact: !exhausted,
                base: best,
            });
        }
        if exhausted {
            // f itself is always a valid fallback: prime-closed sets have
            // hardness 0
            return Ok(BaseSearchResult {
                cardinality: f.clause_count(),
                size: f.literal_occurrences(),
                exact: false,
                base: f.clone(),
            });
        }
    }
    unreachable!("the full set is equivalent to itself and has hardness 0")
}

/// Lexicographic enumeration of `take`-element index combinations; the
/// visitor returns `false` to stop early.
fn for_each_combination(n: usize, take: usize, visit: &mut dyn FnMut(&[usize]) -> bool) {
    if take > n {
        return;
    }
    let mut idx: Vec<usize> = (0..take).collect();
    loop {
        if !visit(&idx) {
            return;
        }
        // advance to the next combination
        let mut i = take;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + n - take {
                idx[i] += 1;
                for j in (i + 1)..take {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// The implication digraph of a set of binary clauses: vertices are the
/// literals over the clause variables; each clause `{a,b}` contributes the
/// arcs `ā→b` and `b̄→a`. The arc set is closed under the skew-symmetric
/// pairing `(u→v) ↔ (v̄→ū)`, and an arc `u→v` maps back to the clause
/// `{ū,v}`.
pub struct ImplicationDigraph {
    lits: Vec<Lit>,
    index: HashMap<Lit, usize>,
    adj: Vec<Vec<usize>>,
}

impl ImplicationDigraph {
    pub fn from_binary_clauses(f: &ClauseSet) -> Result<ImplicationDigraph, BaseError> {
        if let Some(c) = f.iter().find(|c| c.len() != 2) {
            return Err(BaseError::NotTwoCnf(c.len()));
        }
        let lits: Vec<Lit> = f.lits().into_iter().collect();
        let index: HashMap<Lit, usize> =
            lits.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        let mut adj = vec![Vec::new(); lits.len()];
        for c in f.iter() {
            let (a, b) = (c.lits()[0], c.lits()[1]);
            adj[index[&a.complement()]].push(index[&b]);
            adj[index[&b.complement()]].push(index[&a]);
        }
        for row in &mut adj {
            row.sort_unstable();
            row.dedup();
        }
        Ok(ImplicationDigraph { lits, index, adj })
    }

    pub fn lit_count(&self) -> usize {
        self.lits.len()
    }

    pub fn lit(&self, v: usize) -> Lit {
        self.lits[v]
    }

    pub fn complement_vertex(&self, v: usize) -> usize {
        self.index[&self.lits[v].complement()]
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Arc set closure under the skew-symmetric pairing; true by
    /// construction, exposed for tests.
    pub fn is_skew_symmetric(&self) -> bool {
        self.arcs().all(|(u, v)| self.has_arc(self.complement_vertex(v), self.complement_vertex(u)))
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, row)| row.iter().map(move |&v| (u, v)))
    }

    /// Vertices reachable from `from`, including `from` itself.
    pub fn reachable(&self, from: usize) -> Vec<bool> {
        let mut seen = vec![false; self.lits.len()];
        let mut stack = vec![from];
        seen[from] = true;
        while let Some(u) = stack.pop() {
            for &v in &self.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen
    }

    /// Strongly connected components (Kosaraju): returns the component id of
    /// every vertex and the component count.
    pub fn sccs(&self) -> (Vec<usize>, usize) {
        let n = self.lits.len();
        let mut order = Vec::with_capacity(n);
        let mut seen = vec![false; n];
        for start in 0..n {
            if seen[start] {
                continue;
            }
            // iterative post-order
            let mut stack = vec![(start, 0usize)];
            seen[start] = true;
            while let Some(&mut (u, ref mut next)) = stack.last_mut() {
                if *next < self.adj[u].len() {
                    let v = self.adj[u][*next];
                    *next += 1;
                    if !seen[v] {
                        seen[v] = true;
                        stack.push((v, 0));
                    }
                } else {
                    order.push(u);
                    stack.pop();
                }
            }
        }
        let mut radj = vec![Vec::new(); n];
        for (u, v) in self.arcs() {
            radj[v].push(u);
        }
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        for &start in order.iter().rev() {
            if comp[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            comp[start] = count;
            while let Some(u) = stack.pop() {
                for &v in &radj[u] {
                    if comp[v] == usize::MAX {
                        comp[v] = count;
                        stack.push(v);
                    }
                }
            }
            count += 1;
        }
        (comp, count)
    }
}

/// Prime implicates of a 2-CNF by transitive closure on the implication
/// digraph (units enter as arcs `x̄→x`): a path `u ⇝ v` over distinct
/// variables yields the clause `{ū,v}` unless subsumed by a forced-literal
/// unit. Cross-checked against the resolution-closure method in the tests.
pub fn two_cnf_prime_implicates(f: &ClauseSet) -> Result<ClauseSet, BaseError> {
    if let Some(c) = f.iter().find(|c| c.len() > 2) {
        return Err(BaseError::NotTwoCnf(c.len()));
    }
    if f.has_empty_clause() {
        return Ok(ClauseSet::contradiction());
    }
    if f.is_top() {
        return Ok(ClauseSet::top());
    }
    // units as implications of their own complement keeps one uniform graph
    let lits: Vec<Lit> = f.lits().into_iter().collect();
    let index: HashMap<Lit, usize> = lits.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    let mut adj = vec![Vec::new(); lits.len()];
    for c in f.iter() {
        if c.len() == 1 {
            let a = c.lits()[0];
            adj[index[&a.complement()]].push(index[&a]);
        } else {
            let (a, b) = (c.lits()[0], c.lits()[1]);
            adj[index[&a.complement()]].push(index[&b]);
            adj[index[&b.complement()]].push(index[&a]);
        }
    }
    let n = lits.len();
    let mut reach = vec![vec![false; n]; n];
    for u in 0..n {
        let mut stack = vec![u];
        reach[u][u] = true;
        while let Some(w) = stack.pop() {
            for &v in &adj[w] {
                if !reach[u][v] {
                    reach[u][v] = true;
                    stack.push(v);
                }
            }
        }
    }
    let contradictory = |u: usize| reach[u][index[&lits[u].complement()]];
    // unsatisfiable iff some variable is contradictory in both polarities
    for u in 0..n {
        if contradictory(u) && contradictory(index[&lits[u].complement()]) {
            return Ok(ClauseSet::contradiction());
        }
    }
    let forced = |l: Lit| {
        let lbar = index[&l.complement()];
        reach[lbar][index[&l]]
    };
    let mut primes: BTreeSet<Clause> = BTreeSet::new();
    for &l in &lits {
        if forced(l) {
            primes.insert(Clause::try_from_lits([l]).expect("unit"));
        }
    }
    for u in 0..n {
        for v in 0..n {
            if u == v || !reach[u][v] {
                continue;
            }
            let (cu, cv) = (lits[u], lits[v]);
            if cu.var() == cv.var() {
                continue;
            }
            if forced(cu.complement()) || forced(cv) {
                continue;
            }
            primes.insert(
                Clause::try_from_lits([cu.complement(), cv]).expect("distinct variables"),
            );
        }
    }
    Ok(ClauseSet::from_clauses(primes))
}

/// One step of the 2-CNF minimum-base pipeline, for the CLI trace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PipelineStep {
    Unsatisfiable,
    Tautology,
    ForcedUnits(Vec<Lit>),
    PrimeImplicates { count: usize },
    ZeroBase,
    Components { total: usize, nontrivial: usize },
    CycleClauses(Vec<Clause>),
    ReductionClauses(Vec<Clause>),
}

impl fmt::Display for PipelineStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PipelineStep::Unsatisfiable => write!(f, "unsatisfiable: base is {{⊥}}"),
            PipelineStep::Tautology => write!(f, "no clauses: base is ⊤"),
            PipelineStep::ForcedUnits(ls) => {
                write!(f, "forced literals split off as units: {ls:?}")
            }
            PipelineStep::PrimeImplicates { count } => {
                write!(f, "{count} binary prime implicates")
            }
            PipelineStep::ZeroBase => write!(f, "level 0: the prime implicates themselves"),
            PipelineStep::Components { total, nontrivial } => {
                write!(f, "{total} strongly connected components, {nontrivial} nontrivial")
            }
            PipelineStep::CycleClauses(cs) => write!(f, "spanning-cycle clauses: {cs:?}"),
            PipelineStep::ReductionClauses(cs) => {
                write!(f, "transitive-reduction clauses: {cs:?}")
            }
        }
    }
}

/// Shortest equivalent k-base of a 2-CNF, in polynomial time: `{⊥}` for
/// unsatisfiable inputs, `⊤` for `⊤`, forced literals split off as units,
/// and on the forced-free residue the prime implicates themselves for level
/// 0 or, for any higher or unbounded level, the minimum equivalent subset of
/// the binary prime implicates computed on the implication digraph
/// (spanning cycles inside nontrivial components, transitive reduction of
/// the condensation between them, everything respecting the skew-symmetric
/// arc pairing so selected arcs map back to clauses).
pub fn min_base_2cnf(f: &ClauseSet, bound: HardnessBound) -> Result<BaseSearchResult, BaseError> {
    min_base_2cnf_traced(f, bound).map(|(r, _)| r)
}

pub fn min_base_2cnf_traced(
    f: &ClauseSet,
    bound: HardnessBound,
) -> Result<(BaseSearchResult, Vec<PipelineStep>), BaseError> {
    if let Some(c) = f.iter().find(|c| c.len() > 2) {
        return Err(BaseError::NotTwoCnf(c.len()));
    }
    let mut trace = Vec::new();
    if !oracle::is_satisfiable(f) {
        trace.push(PipelineStep::Unsatisfiable);
        return Ok((BaseSearchResult::exact_from(ClauseSet::contradiction()), trace));
    }
    if f.is_top() {
        trace.push(PipelineStep::Tautology);
        return Ok((BaseSearchResult::exact_from(ClauseSet::top()), trace));
    }
    let primes = two_cnf_prime_implicates(f)?;
    let units: Vec<Clause> = primes.iter().filter(|c| c.len() == 1).cloned().collect();
    let binaries = ClauseSet::from_clauses(primes.iter().filter(|c| c.len() == 2).cloned());
    if !units.is_empty() {
        trace.push(PipelineStep::ForcedUnits(units.iter().map(|c| c.lits()[0]).collect()));
    }
    trace.push(PipelineStep::PrimeImplicates { count: binaries.clause_count() });
    if bound == HardnessBound::Level(0) {
        trace.push(PipelineStep::ZeroBase);
        return Ok((BaseSearchResult::exact_from(primes), trace));
    }

    // every ∞-base of a satisfiable 2-CNF is already a 1-base, so all
    // remaining bounds ask for the minimum equivalent subset of the binary
    // primes
    let mut chosen: Vec<Clause> = units;
    if !binaries.is_top() {
        let g = ImplicationDigraph::from_binary_clauses(&binaries)?;
        debug_assert!(g.is_skew_symmetric());
        let (comp, count) = g.sccs();
        let mut members: Vec<Vec<usize>> = vec![Vec::new(); count];
        for v in 0..g.lit_count() {
            members[comp[v]].push(v);
        }
        for m in &mut members {
            m.sort_by_key(|&v| g.lit(v));
        }
        let complement_comp: Vec<usize> =
            (0..count).map(|c| comp[g.complement_vertex(members[c][0])]).collect();
        trace.push(PipelineStep::Components {
            total: count,
            nontrivial: members.iter().filter(|m| m.len() >= 2).count(),
        });

        // spanning cycles: one cycle per complementary pair of nontrivial
        // components; the clause {ūi, u(i+1)} per consecutive pair covers
        // the mirrored cycle in the complement component for free
        let mut cycle_clauses = Vec::new();
        for c in 0..count {
            if members[c].len() < 2 {
                continue;
            }
            let cc = complement_comp[c];
            debug_assert_ne!(c, cc, "no strongly connected component contains a clash");
            if g.lit(members[c][0]) > g.lit(members[cc][0]) {
                continue; // the mirrored component drives the selection
            }
            let m = &members[c];
            for i in 0..m.len() {
                let u = g.lit(m[i]);
                let v = g.lit(m[(i + 1) % m.len()]);
                let clause = Clause::try_from_lits([u.complement(), v])
                    .expect("components never contain clashing literals");
                debug_assert!(binaries.contains(&clause));
                cycle_clauses.push(clause);
            }
        }
        if !cycle_clauses.is_empty() {
            trace.push(PipelineStep::CycleClauses(cycle_clauses.clone()));
        }
        chosen.extend(cycle_clauses);

        // condensation arcs with a canonical representative arc each
        let mut cond: HashMap<(usize, usize), (Lit, Lit)> = HashMap::new();
        for (u, v) in g.arcs() {
            let key = (comp[u], comp[v]);
            if key.0 == key.1 {
                continue;
            }
            let arc = (g.lit(u), g.lit(v));
            cond.entry(key).and_modify(|best| *best = (*best).min(arc)).or_insert(arc);
        }
        // the closure is transitive, hence so is the condensation, and its
        // transitive reduction keeps exactly the arcs with no 2-step bypass
        let mut reduction_clauses = Vec::new();
        for (&(a, b), &(u, v)) in &cond {
            let bypassed = (0..count)
                .any(|m| m != a && m != b && cond.contains_key(&(a, m)) && cond.contains_key(&(m, b)));
            if bypassed {
                continue;
            }
            let pair = (complement_comp[b], complement_comp[a]);
            debug_assert!(pair != (a, b), "arcs into the complement component require a forced literal");
            if (a, b) > pair {
                continue; // handled from the paired arc
            }
            let clause = Clause::try_from_lits([u.complement(), v]).expect("distinct variables");
            debug_assert!(binaries.contains(&clause));
            reduction_clauses.push(clause);
        }
        reduction_clauses.sort();
        if !reduction_clauses.is_empty() {
            trace.push(PipelineStep::ReductionClauses(reduction_clauses.clone()));
        }
        chosen.extend(reduction_clauses);
    }
    let base = ClauseSet::from_clauses(chosen);
    debug_assert!(equivalent(&base, f));
    Ok((BaseSearchResult::exact_from(base), trace))
}

/// Residue of a clause-set under making the given literals true; a helper
/// for callers splitting off forced literals.
pub fn apply_literals(f: &ClauseSet, lits: &[Lit]) -> ClauseSet {
    let phi = PartialAssignment::from_pairs(lits.iter().map(|l| (l.var(), l.is_positive())))
        .expect("clash-free literals");
    f.apply(&phi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::cs;

    fn example_7_1() -> ClauseSet {
        cs(&[
            &[1, -3, -4],
            &[2, 3, -4],
            &[2, -3, 4],
            &[-2, 3, 4],
            &[1, 3, 4],
            &[1, 2],
        ])
    }

    fn c5() -> Clause {
        crate::testutil::cl(&[1, 3, 4])
    }

    fn c6() -> Clause {
        crate::testutil::cl(&[1, 2])
    }

    #[test]
    fn equivalence_examples() {
        let f = example_7_1();
        assert!(equivalent(&f, &f));
        assert!(equivalent(&f, &f.without(&c5())));
        assert!(!equivalent(&f, &f.without(&c5()).without(&c6())));
    }

    #[test]
    fn is_k_base_examples() {
        let f = example_7_1();
        assert!(is_k_base(&f, HardnessBound::Level(0)));
        assert!(!is_k_base(&f, HardnessBound::Level(1)));
        assert!(!is_k_base(&f, HardnessBound::Level(2)));

        let f1 = f.without(&c5());
        assert!(is_k_base(&f1, HardnessBound::Level(1)));
        assert!(is_k_base(&f1, HardnessBound::Level(2)));
        assert!(!is_k_base(&f1, HardnessBound::Level(0)));

        let f2 = f.without(&c6());
        assert!(is_k_base(&f2, HardnessBound::Level(2)));
        assert!(!is_k_base(&f2, HardnessBound::Level(1)));
    }

    #[test]
    fn min_base_from_primes_examples() {
        let f = example_7_1();
        let at1 = min_base_from_primes(&f, 1, DEFAULT_BASE_BUDGET).unwrap();
        assert!(at1.exact);
        assert_eq!(at1.base, f.without(&c5()));
        assert_eq!(at1.cardinality, 5);

        let at0 = min_base_from_primes(&f, 0, DEFAULT_BASE_BUDGET).unwrap();
        assert_eq!(at0.base, f);
        assert_eq!(at0.cardinality, 6);

        // at level 2 both five-clause bases qualify; ties break canonically
        let at2 = min_base_from_primes(&f, 2, DEFAULT_BASE_BUDGET).unwrap();
        assert_eq!(at2.cardinality, 5);
        assert_eq!(at2.base, f.without(&c5()).min(f.without(&c6())));

        let unit = cs(&[&[1]]);
        let r = min_base_from_primes(&unit, 3, DEFAULT_BASE_BUDGET).unwrap();
        assert_eq!(r.base, unit);
    }

    #[test]
    fn min_base_requires_prime_closed_input() {
        assert_eq!(
            min_base_from_primes(&cs(&[&[1, 2], &[1, -2]]), 1, 100).unwrap_err(),
            BaseError::NotPrimeClosed
        );
    }

    #[test]
    fn min_base_budget_exhaustion() {
        let f = example_7_1();
        let r = min_base_from_primes(&f, 2, 1).unwrap();
        assert!(!r.exact);
        assert!(equivalent(&r.base, &f));
    }

    #[test]
    fn two_cnf_primes_match_resolution_closure() {
        use crate::testutil::random_clause_set;
        for seed in 0..60 {
            let f = ClauseSet::from_clauses(
                random_clause_set(5, 7, seed).iter().filter(|c| c.len() <= 2).cloned(),
            );
            assert_eq!(
                two_cnf_prime_implicates(&f).unwrap(),
                resolution::prime_implicates(&f),
                "seed {seed}"
            );
        }
    }

    #[test]
    fn min_base_2cnf_examples() {
        // unsatisfiable input collapses to {⊥}
        let unsat = cs(&[&[1], &[-1]]);
        let r = min_base_2cnf(&unsat, HardnessBound::Level(1)).unwrap();
        assert_eq!(r.base, ClauseSet::contradiction());

        // a transitive chain loses its implied shortcut
        let chain = cs(&[&[-1, 2], &[-2, 3], &[-1, 3]]);
        let r = min_base_2cnf(&chain, HardnessBound::Level(1)).unwrap();
        assert_eq!(r.base, cs(&[&[-1, 2], &[-2, 3]]));
        assert_eq!(r.cardinality, 2);
        assert!(r.exact);

        // forced literal split off, residue satisfied
        let forced = cs(&[&[1, 2], &[1, -2]]);
        let r = min_base_2cnf(&forced, HardnessBound::Level(1)).unwrap();
        assert_eq!(r.base, cs(&[&[1]]));
        let r0 = min_base_2cnf(&forced, HardnessBound::Level(0)).unwrap();
        assert_eq!(r0.base, cs(&[&[1]]));

        // ⊤ stays ⊤
        let r = min_base_2cnf(&ClauseSet::top(), HardnessBound::Unbounded).unwrap();
        assert_eq!(r.base, ClauseSet::top());
    }

    #[test]
    fn min_base_2cnf_equivalence_cycle() {
        // x ≡ y ≡ z: prime implicates form the complete biorientation; a
        // 3-clause cycle is a minimum base
        let f = cs(&[&[-1, 2], &[-2, 3], &[-3, 1]]);
        let r = min_base_2cnf(&f, HardnessBound::Level(1)).unwrap();
        assert_eq!(r.cardinality, 3);
        assert!(equivalent(&r.base, &f));
        assert!(is_k_base(&r.base, HardnessBound::Level(1)));
    }

    #[test]
    fn min_base_2cnf_zero_level_returns_primes() {
        let chain = cs(&[&[-1, 2], &[-2, 3]]);
        let r = min_base_2cnf(&chain, HardnessBound::Level(0)).unwrap();
        assert_eq!(r.base, two_cnf_prime_implicates(&chain).unwrap());
        assert!(is_k_base(&r.base, HardnessBound::Level(0)));
    }

    #[test]
    fn min_base_2cnf_results_are_k_bases() {
        use crate::testutil::random_clause_set;
        for seed in 0..40 {
            let f = ClauseSet::from_clauses(
                random_clause_set(4, 6, seed).iter().filter(|c| c.len() <= 2).cloned(),
            );
            for bound in [HardnessBound::Level(1), HardnessBound::Unbounded] {
                let r = min_base_2cnf(&f, bound).unwrap();
                assert!(equivalent(&r.base, &f), "seed {seed}");
                assert!(is_k_base(&r.base, bound), "seed {seed} bound {bound}");
            }
        }
    }

    #[test]
    fn rejects_long_clauses() {
        assert_eq!(
            min_base_2cnf(&cs(&[&[1, 2, 3]]), HardnessBound::Unbounded).unwrap_err(),
            BaseError::NotTwoCnf(3)
        );
    }

    #[test]
    fn digraph_structure() {
        let f = cs(&[&[1, 2], &[-2, 3]]);
        let g = ImplicationDigraph::from_binary_clauses(&f).unwrap();
        assert!(g.is_skew_symmetric());
        // {x,y}: x̄→y and ȳ→x
        let x_bar = g.index[&Lit::neg(1)];
        let y = g.index[&Lit::pos(2)];
        assert!(g.has_arc(x_bar, y));
        assert!(ImplicationDigraph::from_binary_clauses(&cs(&[&[1]])).is_err());
    }
}
