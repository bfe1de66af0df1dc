//! DIMACS CNF parsing and emission.
//!
//! The accepted grammar is the plain competition format: optional `c` comment
//! lines, a single `p cnf <vars> <clauses>` header, then zero-terminated
//! clauses which may span lines. Tautological clauses are rejected because
//! clauses are clash-free by construction throughout the library.

use crate::types::{Clause, ClauseSet, Lit};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DimacsError {
    #[error("line {line}: expected 'p cnf <vars> <clauses>' header")]
    MalformedHeader { line: usize },
    #[error("missing 'p cnf' header")]
    MissingHeader,
    #[error("line {line}: unexpected token {token:?}")]
    BadToken { line: usize, token: String },
    #[error("line {line}: literal {lit} exceeds declared variable count {declared}")]
    LiteralOutOfRange { line: usize, lit: i32, declared: u32 },
    #[error("line {line}: tautological clause (variable {var} occurs in both polarities)")]
    TautologicalClause { line: usize, var: u32 },
    #[error("last clause is not terminated by 0")]
    UnterminatedClause,
}

/// Parses DIMACS CNF text into a clause-set.
///
/// Duplicate literals within a clause and duplicate clauses are silently
/// merged (set semantics). The declared clause count is not enforced; the
/// declared variable count is.
pub fn parse_dimacs(input: &str) -> Result<ClauseSet, DimacsError> {
    let mut declared_vars: Option<u32> = None;
    let mut clauses: Vec<Clause> = Vec::new();
    let mut current: Vec<Lit> = Vec::new();
    let mut open_clause = false;

    for (idx, raw_line) in input.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw_line.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('p') {
            if declared_vars.is_some() {
                return Err(DimacsError::MalformedHeader { line: line_no });
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 4 || fields[0] != "p" || fields[1] != "cnf" {
                return Err(DimacsError::MalformedHeader { line: line_no });
            }
            let vars: u32 = fields[2]
                .parse()
                .map_err(|_| DimacsError::MalformedHeader { line: line_no })?;
            let _count: u64 = fields[3]
                .parse()
                .map_err(|_| DimacsError::MalformedHeader { line: line_no })?;
            declared_vars = Some(vars);
            continue;
        }
        let declared = declared_vars.ok_or(DimacsError::MissingHeader)?;
        for token in line.split_whitespace() {
            let code: i32 = token
                .parse()
                .map_err(|_| DimacsError::BadToken { line: line_no, token: token.to_string() })?;
            if code == 0 {
                let clause = Clause::try_from_lits(current.drain(..)).map_err(|e| {
                    DimacsError::TautologicalClause { line: line_no, var: e.lit.var().id() }
                })?;
                clauses.push(clause);
                open_clause = false;
                continue;
            }
            if code.unsigned_abs() > declared {
                return Err(DimacsError::LiteralOutOfRange {
                    line: line_no,
                    lit: code,
                    declared,
                });
            }
            current.push(Lit::from_dimacs(code).expect("nonzero"));
            open_clause = true;
        }
    }
    if declared_vars.is_none() {
        return Err(DimacsError::MissingHeader);
    }
    if open_clause {
        return Err(DimacsError::UnterminatedClause);
    }
    Ok(ClauseSet::from_clauses(clauses))
}

/// Emits a clause-set in canonical DIMACS form.
///
/// The header declares the maximum occurring variable id; clauses and
/// literals appear in canonical order, so emission is deterministic and
/// `parse_dimacs(emit_dimacs(f)) == f`.
pub fn emit_dimacs(f: &ClauseSet) -> String {
    emit_dimacs_with_comments(f, &[])
}

/// As [`emit_dimacs`], with leading `c` comment lines.
pub fn emit_dimacs_with_comments(f: &ClauseSet, comments: &[String]) -> String {
    let max_var = f.vars().iter().map(|v| v.id()).max().unwrap_or(0);
    let mut out = String::new();
    for c in comments {
        out.push_str("c ");
        out.push_str(c);
        out.push('\n');
    }
    out.push_str(&format!("p cnf {} {}\n", max_var, f.clause_count()));
    for clause in f.iter() {
        for l in clause.lits() {
            out.push_str(&l.to_dimacs().to_string());
            out.push(' ');
        }
        out.push_str("0\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::cs;
    use crate::types::ClauseSet;

    #[test]
    fn parse_basic() {
        let f = parse_dimacs("p cnf 2 2\n1 2 0\n-1 -2 0\n").unwrap();
        assert_eq!(f, cs(&[&[1, 2], &[-1, -2]]));
    }

    #[test]
    fn parse_empty_clause() {
        let f = parse_dimacs("p cnf 1 1\n0\n").unwrap();
        assert_eq!(f, ClauseSet::contradiction());
    }

    #[test]
    fn parse_rejects_tautology() {
        let err = parse_dimacs("p cnf 1 1\n1 -1 0\n").unwrap_err();
        assert_eq!(err, DimacsError::TautologicalClause { line: 2, var: 1 });
    }

    #[test]
    fn parse_rejects_out_of_range() {
        let err = parse_dimacs("p cnf 1 1\n2 0\n").unwrap_err();
        assert!(matches!(err, DimacsError::LiteralOutOfRange { lit: 2, declared: 1, .. }));
    }

    #[test]
    fn parse_rejects_missing_header() {
        assert_eq!(parse_dimacs("1 0\n").unwrap_err(), DimacsError::MissingHeader);
        assert_eq!(parse_dimacs("c nothing\n").unwrap_err(), DimacsError::MissingHeader);
    }

    #[test]
    fn parse_rejects_unterminated() {
        assert_eq!(parse_dimacs("p cnf 2 1\n1 2\n").unwrap_err(), DimacsError::UnterminatedClause);
    }

    #[test]
    fn parse_dedups() {
        let f = parse_dimacs("p cnf 2 3\n1 1 2 0\n1 2 0\n2 1 0\n").unwrap();
        assert_eq!(f, cs(&[&[1, 2]]));
    }

    #[test]
    fn clauses_may_span_lines() {
        let f = parse_dimacs("p cnf 3 1\n1\n2 3\n0\n").unwrap();
        assert_eq!(f, cs(&[&[1, 2, 3]]));
    }

    #[test]
    fn emit_round_trip() {
        let f = cs(&[&[1, 2], &[-1, -2], &[3]]);
        assert_eq!(parse_dimacs(&emit_dimacs(&f)).unwrap(), f);
        assert_eq!(emit_dimacs(&ClauseSet::top()), "p cnf 0 0\n");
        assert_eq!(emit_dimacs(&ClauseSet::contradiction()), "p cnf 0 1\n0\n");
    }
}
