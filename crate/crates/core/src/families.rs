//! Class recognition (Horn, renamable Horn, bounded clause length) and
//! generators for the standard instance families used throughout the tests
//! and the CLI.

use std::collections::BTreeSet;
use std::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::oracle;
use crate::types::{Clause, ClauseSet, Lit, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ClassTag {
    Horn,
    PureHorn,
    RenamableHorn,
    TwoCnf,
    /// Maximum clause length.
    KCnf(u32),
    /// Every clause contains every variable.
    Full,
}

impl fmt::Display for ClassTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassTag::Horn => write!(f, "horn"),
            ClassTag::PureHorn => write!(f, "pure-horn"),
            ClassTag::RenamableHorn => write!(f, "renamable-horn"),
            ClassTag::TwoCnf => write!(f, "2cnf"),
            ClassTag::KCnf(k) => write!(f, "{k}cnf"),
            ClassTag::Full => write!(f, "full"),
        }
    }
}

/// Classifies a clause-set. Renamable Horn is decided by encoding the
/// sign-flip constraints as a 2-CNF over one selector variable per variable
/// and running the complete SAT search on it.
pub fn classify(f: &ClauseSet) -> BTreeSet<ClassTag> {
    let mut tags = BTreeSet::new();
    let positives = |c: &Clause| c.lits().iter().filter(|l| l.is_positive()).count();
    if f.iter().all(|c| positives(c) <= 1) {
        tags.insert(ClassTag::Horn);
    }
    if f.iter().all(|c| positives(c) == 1) {
        tags.insert(ClassTag::PureHorn);
    }
    if is_renamable_horn(f) {
        tags.insert(ClassTag::RenamableHorn);
    }
    let max_len = f.iter().map(Clause::len).max().unwrap_or(0) as u32;
    tags.insert(ClassTag::KCnf(max_len));
    if max_len <= 2 {
        tags.insert(ClassTag::TwoCnf);
    }
    let vars = f.vars();
    if f.iter().all(|c| c.vars().count() == vars.len()) {
        tags.insert(ClassTag::Full);
    }
    tags
}

fn is_renamable_horn(f: &ClauseSet) -> bool {
    // selector s_v: flip variable v; a literal stays positive after flipping
    // iff (it is positive) xor (its variable is flipped); "at most one
    // positive per clause" becomes one binary constraint per literal pair
    let vars: Vec<Var> = f.vars().into_iter().collect();
    let selector = |v: Var| {
        Var::new(1 + vars.binary_search(&v).expect("literal variable occurs in F") as u32)
    };
    let mut constraints = Vec::new();
    for c in f.iter() {
        let lits = c.lits();
        for i in 0..lits.len() {
            for j in (i + 1)..lits.len() {
                let a = Lit::new(selector(lits[i].var()), lits[i].is_positive());
                let b = Lit::new(selector(lits[j].var()), lits[j].is_positive());
                constraints
                    .push(Clause::try_from_lits([a, b]).expect("distinct selector variables"));
            }
        }
    }
    oracle::is_satisfiable(&ClauseSet::from_clauses(constraints))
}

/// The full clause-set over variables `1..=n`: all 2^n clauses mentioning
/// every variable. `gen_full(0)` is `{⊥}`.
pub fn gen_full(n: u32) -> ClauseSet {
    let mut clauses = Vec::with_capacity(1 << n);
    for pattern in 0u64..(1 << n) {
        let lits = (0..n).map(|i| Lit::new(Var::new(i + 1), pattern & (1 << i) != 0));
        clauses.push(Clause::try_from_lits(lits).expect("one polarity per variable"));
    }
    ClauseSet::from_clauses(clauses)
}

/// The full clause-set over `1..=n` minus the all-positive clause; the
/// canonical satisfiable full example with hardness `n − 1`.
pub fn gen_full_minus_one(n: u32) -> ClauseSet {
    assert!(n >= 1, "needs at least one variable");
    let all_positive =
        Clause::try_from_lits((1..=n).map(Lit::pos)).expect("distinct variables");
    gen_full(n).without(&all_positive)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("pumping variable {var} already occurs in the clause-set")]
pub struct PumpError {
    pub var: Var,
}

/// Doubles the clause-set over a fresh variable:
/// `{C ∪ {v} : C ∈ F} ∪ {C ∪ {v̄} : C ∈ F}`, raising the hardness by one.
pub fn gen_pump(f: &ClauseSet, v: Var) -> Result<ClauseSet, PumpError> {
    if f.vars().contains(&v) {
        return Err(PumpError { var: v });
    }
    let mut clauses = Vec::with_capacity(2 * f.clause_count());
    for c in f.iter() {
        clauses.push(c.with(Lit::new(v, true)).expect("fresh variable"));
        clauses.push(c.with(Lit::new(v, false)).expect("fresh variable"));
    }
    Ok(ClauseSet::from_clauses(clauses))
}

/// The unsatisfiable Horn chain `{{x1}} ∪ {{x̄i, xi+1}} ∪ {{x̄n}}`;
/// hardness 1 but refutation height at least log2 of the length.
pub fn gen_horn_chain(n: u32) -> ClauseSet {
    assert!(n >= 1, "needs at least one variable");
    let mut clauses = vec![Clause::try_from_lits([Lit::pos(1)]).unwrap()];
    for i in 1..n {
        clauses.push(Clause::try_from_lits([Lit::neg(i), Lit::pos(i + 1)]).unwrap());
    }
    clauses.push(Clause::try_from_lits([Lit::neg(n)]).unwrap());
    ClauseSet::from_clauses(clauses)
}

/// The pigeonhole principle with `m` pigeons and `n` holes: every pigeon in
/// some hole, no two pigeons sharing a hole. Variable `(i−1)·n + j` places
/// pigeon `i` in hole `j`.
pub fn gen_php(pigeons: u32, holes: u32) -> ClauseSet {
    assert!(pigeons >= 1 && holes >= 1, "needs at least one pigeon and one hole");
    let var = |i: u32, j: u32| Var::new((i - 1) * holes + j);
    let mut clauses = Vec::new();
    for i in 1..=pigeons {
        clauses.push(
            Clause::try_from_lits((1..=holes).map(|j| Lit::new(var(i, j), true)))
                .expect("distinct hole variables"),
        );
    }
    for j in 1..=holes {
        for i in 1..=pigeons {
            for i2 in (i + 1)..=pigeons {
                clauses.push(
                    Clause::try_from_lits([
                        Lit::new(var(i, j), false),
                        Lit::new(var(i2, j), false),
                    ])
                    .expect("distinct pigeon variables"),
                );
            }
        }
    }
    ClauseSet::from_clauses(clauses)
}

/// Uniform random k-CNF: `c` distinct clauses of length exactly `k` over
/// variables `1..=n`, deterministic under the seed. Duplicate clauses are
/// resampled, so the distribution is uniform over clause sequences with
/// rejection, not over clause-sets.
pub fn gen_random(n: u32, k: u32, c: u32, seed: u64) -> ClauseSet {
    assert!(k >= 1 && k <= n, "clause length must be between 1 and n");
    let capacity = (0..k).fold(1u64, |acc, i| acc * u64::from(n - i))
        / (1..=u64::from(k)).product::<u64>()
        * (1u64 << k);
    assert!(u64::from(c) <= capacity, "more clauses requested than exist");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut set: BTreeSet<Clause> = BTreeSet::new();
    while (set.len() as u32) < c {
        let mut vars: Vec<u32> = Vec::with_capacity(k as usize);
        while vars.len() < k as usize {
            let v = rng.gen_range(1..=n);
            if !vars.contains(&v) {
                vars.push(v);
            }
        }
        let lits = vars.iter().map(|&v| Lit::new(Var::new(v), rng.gen_bool(0.5)));
        set.insert(Clause::try_from_lits(lits).expect("distinct variables"));
    }
    ClauseSet::from_clauses(set)
}

/// A deterministic description of a generated instance, recorded as a
/// comment line in emitted DIMACS files.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Full { n: u32 },
    FullMinusOne { n: u32 },
    HornChain { n: u32 },
    Php { pigeons: u32, holes: u32 },
    RandomKCnf { n: u32, k: u32, c: u32, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub family: Family,
    /// Number of hardness-raising pumps applied on top, each over a fresh
    /// variable.
    pub pumps: u32,
}

impl FamilySpec {
    pub fn new(family: Family) -> FamilySpec {
        FamilySpec { family, pumps: 0 }
    }

    pub fn with_pumps(mut self, pumps: u32) -> FamilySpec {
        self.pumps = pumps;
        self
    }

    pub fn generate(&self) -> ClauseSet {
        let mut f = match self.family {
            Family::Full { n } => gen_full(n),
            Family::FullMinusOne { n } => gen_full_minus_one(n),
            Family::HornChain { n } => gen_horn_chain(n),
            Family::Php { pigeons, holes } => gen_php(pigeons, holes),
            Family::RandomKCnf { n, k, c, seed } => gen_random(n, k, c, seed),
        };
        for _ in 0..self.pumps {
            let fresh = Var::new(f.vars().iter().map(|v| v.id()).max().unwrap_or(0) + 1);
            f = gen_pump(&f, fresh).expect("fresh variable above the maximum");
        }
        f
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::Full { n } => write!(f, "family=full n={n}")?,
            Family::FullMinusOne { n } => write!(f, "family=full-minus-one n={n}")?,
            Family::HornChain { n } => write!(f, "family=horn-chain n={n}")?,
            Family::Php { pigeons, holes } => write!(f, "family=php m={pigeons} holes={holes}")?,
            Family::RandomKCnf { n, k, c, seed } => {
                write!(f, "family=random n={n} k={k} c={c} seed={seed}")?;
            }
        }
        if self.pumps > 0 {
            write!(f, " pumps={}", self.pumps)?;
        }
        Ok(())
    }
}
