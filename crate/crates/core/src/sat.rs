//! Plain 3SAT: DIMACS parsing, evaluation, a guarded brute-force solver and
//! a seeded random-formula generator.
//!
//! Clauses are stored as signed variable indices (positive literal = positive
//! index), at most three literals per clause after normalization.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use std::fmt::Write as _;
use thiserror::Error;

/// Maximum variable count accepted by [`brute_force_sat`].
pub const BRUTE_FORCE_VAR_LIMIT: u32 = 26;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CnfError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("assignment has {got} values, formula has {want} variables")]
    AssignmentLength { got: usize, want: usize },
    #[error("brute force guard: {0} variables exceeds limit {BRUTE_FORCE_VAR_LIMIT}")]
    BruteForceGuard(u32),
}

/// A normalized CNF formula: no empty clauses, no duplicate literals inside a
/// clause, no tautological clauses, clause width at most 3.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    pub num_vars: u32,
    pub clauses: Vec<Vec<i32>>,
}

impl CnfFormula {
    /// Builds a formula from raw clauses, applying the same normalization as
    /// the DIMACS parser (dedup, tautology/width checks).
    pub fn new(num_vars: u32, clauses: Vec<Vec<i32>>) -> Result<Self, CnfError> {
        let mut out = Vec::with_capacity(clauses.len());
        for (idx, cl) in clauses.into_iter().enumerate() {
            out.push(normalize_clause(cl, num_vars, idx + 1)?);
        }
        Ok(CnfFormula { num_vars, clauses: out })
    }
}

/// A truth assignment; index 0 holds variable 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment(pub Vec<bool>);

impl Assignment {
    pub fn value(&self, var: u32) -> bool {
        self.0[(var - 1) as usize]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn satisfies_literal(&self, lit: i32) -> bool {
        let v = self.value(lit.unsigned_abs());
        if lit > 0 {
            v
        } else {
            !v
        }
    }
}

fn normalize_clause(mut lits: Vec<i32>, num_vars: u32, line: usize) -> Result<Vec<i32>, CnfError> {
    let err = |msg: String| CnfError::Parse { line, msg };
    if lits.is_empty() {
        return Err(err("empty clause".into()));
    }
    for &l in &lits {
        if l == 0 || l.unsigned_abs() > num_vars {
            return Err(err(format!("literal {l} out of range [1, {num_vars}]")));
        }
    }
    // Dedup duplicate literals, keeping first-occurrence order.
    let mut seen = Vec::new();
    lits.retain(|&l| {
        if seen.contains(&l) {
            false
        } else {
            seen.push(l);
            true
        }
    });
    for &l in &lits {
        if lits.contains(&-l) {
            return Err(err(format!("tautological clause (contains {l} and {})", -l)));
        }
    }
    if lits.len() > 3 {
        return Err(err(format!("clause width {} exceeds 3", lits.len())));
    }
    Ok(lits)
}

/// Parses DIMACS CNF text. Comment lines start with `c`; the header is
/// `p cnf <vars> <clauses>`; clauses are 0-terminated and may span lines.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula, CnfError> {
    let mut header: Option<(u32, usize)> = None;
    let mut clauses: Vec<Vec<i32>> = Vec::new();
    let mut current: Vec<i32> = Vec::new();
    let mut clause_start_line = 0usize;

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') || trimmed.starts_with('%') {
            continue;
        }
        if trimmed.starts_with('p') {
            if header.is_some() {
                return Err(CnfError::Parse { line, msg: "duplicate header".into() });
            }
            let mut parts = trimmed.split_whitespace();
            let (p, kind) = (parts.next(), parts.next());
            if p != Some("p") || kind != Some("cnf") {
                return Err(CnfError::Parse { line, msg: format!("malformed header `{trimmed}`") });
            }
            let vars: u32 = parts
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| CnfError::Parse { line, msg: "malformed header: bad variable count".into() })?;
            let count: usize = parts
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| CnfError::Parse { line, msg: "malformed header: bad clause count".into() })?;
            if parts.next().is_some() {
                return Err(CnfError::Parse { line, msg: "malformed header: trailing tokens".into() });
            }
            header = Some((vars, count));
            continue;
        }
        let (num_vars, _) = header.ok_or(CnfError::Parse { line, msg: "clause before `p cnf` header".into() })?;
        for tok in trimmed.split_whitespace() {
            let val: i32 = tok
                .parse()
                .map_err(|_| CnfError::Parse { line, msg: format!("bad literal token `{tok}`") })?;
            if val == 0 {
                clauses.push(normalize_clause(
                    std::mem::take(&mut current),
                    num_vars,
                    clause_start_line,
                )?);
            } else {
                if current.is_empty() {
                    clause_start_line = line;
                }
                current.push(val);
            }
        }
    }
    let (num_vars, declared) = header.ok_or(CnfError::Parse { line: 0, msg: "missing `p cnf` header".into() })?;
    if !current.is_empty() {
        return Err(CnfError::Parse { line: clause_start_line, msg: "unterminated clause (missing 0)".into() });
    }
    if clauses.len() != declared {
        return Err(CnfError::Parse {
            line: 0,
            msg: format!("clause count mismatch: header says {declared}, found {}", clauses.len()),
        });
    }
    Ok(CnfFormula { num_vars, clauses })
}

/// Serializes a formula back to DIMACS.
pub fn write_dimacs(f: &CnfFormula) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "p cnf {} {}", f.num_vars, f.clauses.len());
    for cl in &f.clauses {
        for l in cl {
            let _ = write!(out, "{l} ");
        }
        let _ = writeln!(out, "0");
    }
    out
}

/// Per-clause count of literals satisfied by `a`. The formula is satisfied
/// iff every entry is >= 1; downstream transforms also care about the exact
/// counts on implication clauses.
pub fn check_assignment(f: &CnfFormula, a: &Assignment) -> Result<Vec<u32>, CnfError> {
    if a.len() != f.num_vars as usize {
        return Err(CnfError::AssignmentLength { got: a.len(), want: f.num_vars as usize });
    }
    Ok(f.clauses
        .iter()
        .map(|cl| cl.iter().filter(|&&l| a.satisfies_literal(l)).count() as u32)
        .collect())
}

/// True iff every clause has at least one satisfied literal.
pub fn satisfies(f: &CnfFormula, a: &Assignment) -> bool {
    check_assignment(f, a).map(|c| c.iter().all(|&k| k >= 1)).unwrap_or(false)
}

/// Exhaustive 2^n scan, lexicographically first satisfying assignment
/// (all-false branch explored first, variable 1 most significant).
pub fn brute_force_sat(f: &CnfFormula) -> Result<Option<Assignment>, CnfError> {
    let n = f.num_vars;
    if n > BRUTE_FORCE_VAR_LIMIT {
        return Err(CnfError::BruteForceGuard(n));
    }
    for mask in 0u64..(1u64 << n) {
        let a = Assignment((0..n).map(|j| (mask >> (n - 1 - j)) & 1 == 1).collect());
        if satisfies(f, &a) {
            return Ok(Some(a));
        }
    }
    Ok(None)
}

/// Seeded random 3SAT: every clause has 3 distinct variables, signs uniform.
pub fn random_3sat(num_vars: u32, num_clauses: u32, seed: u64) -> CnfFormula {
    assert!(num_vars >= 3, "random_3sat needs at least 3 variables");
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let vars: Vec<u32> = (1..=num_vars).collect();
    let clauses = (0..num_clauses)
        .map(|_| {
            let picked: Vec<u32> = vars.choose_multiple(&mut rng, 3).copied().collect();
            let mut cl: Vec<i32> = picked
                .iter()
                .map(|&v| if rng.gen::<bool>() { v as i32 } else { -(v as i32) })
                .collect();
            cl.sort_by_key(|l| l.unsigned_abs());
            cl
        })
        .collect();
    CnfFormula { num_vars, clauses }
}

/// Seeded random formula in which every variable occurs exactly three times
/// (3 distinct variables per clause, num_vars clauses). Feeding such a
/// formula to the Tovey rewrite yields an instance whose implication pairs
/// are already aligned index triangles.
pub fn random_exact3(num_vars: u32, seed: u64) -> CnfFormula {
    assert!(num_vars >= 3, "random_exact3 needs at least 3 variables");
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    loop {
        let mut occ: Vec<u32> = (1..=num_vars).flat_map(|v| [v, v, v]).collect();
        occ.shuffle(&mut rng);
        let ok = occ.chunks(3).all(|c| c[0] != c[1] && c[0] != c[2] && c[1] != c[2]);
        if !ok {
            continue;
        }
        let clauses = occ
            .chunks(3)
            .map(|c| {
                let mut cl: Vec<i32> = c
                    .iter()
                    .map(|&v| if rng.gen::<bool>() { v as i32 } else { -(v as i32) })
                    .collect();
                cl.sort_by_key(|l| l.unsigned_abs());
                cl
            })
            .collect();
        return CnfFormula { num_vars, clauses };
    }
}

/// `v <lit> ... 0` solution line (DIMACS solver output style).
pub fn write_assignment(a: &Assignment) -> String {
    let mut out = String::from("v");
    for (i, &val) in a.0.iter().enumerate() {
        let v = (i + 1) as i32;
        let _ = write!(out, " {}", if val { v } else { -v });
    }
    out.push_str(" 0\n");
    out
}

pub fn parse_assignment(text: &str) -> Result<Assignment, CnfError> {
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let trimmed = raw.trim();
        if !trimmed.starts_with('v') {
            continue;
        }
        let mut vals: Vec<(u32, bool)> = Vec::new();
        for tok in trimmed[1..].split_whitespace() {
            let lit: i64 = tok
                .parse()
                .map_err(|_| CnfError::Parse { line, msg: format!("bad literal `{tok}`") })?;
            if lit == 0 {
                vals.sort_by_key(|&(v, _)| v);
                for (idx, &(v, _)) in vals.iter().enumerate() {
                    if v != idx as u32 + 1 {
                        return Err(CnfError::Parse { line, msg: format!("missing variable {}", idx + 1) });
                    }
                }
                return Ok(Assignment(vals.into_iter().map(|(_, b)| b).collect()));
            }
            vals.push((lit.unsigned_abs() as u32, lit > 0));
        }
        return Err(CnfError::Parse { line, msg: "unterminated v-line (missing 0)".into() });
    }
    Err(CnfError::Parse { line: 0, msg: "no v-line found".into() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_basic() {
        let f = parse_dimacs("p cnf 3 2\n1 -2 3 0\n-1 2 0\n").unwrap();
        assert_eq!(f.num_vars, 3);
        assert_eq!(f.clauses, vec![vec![1, -2, 3], vec![-1, 2]]);
    }

    #[test]
    fn parse_dedups_duplicate_literal() {
        let f = parse_dimacs("p cnf 1 1\n1 1 0\n").unwrap();
        assert_eq!(f.clauses, vec![vec![1]]);
    }

    #[test]
    fn parse_rejects_tautology() {
        let err = parse_dimacs("p cnf 2 1\n1 -1 0\n").unwrap_err();
        assert!(matches!(err, CnfError::Parse { line: 2, .. }), "{err}");
    }

    #[test]
    fn parse_rejects_wide_and_out_of_range() {
        assert!(parse_dimacs("p cnf 4 1\n1 2 3 4 0\n").is_err());
        assert!(parse_dimacs("p cnf 2 1\n1 3 0\n").is_err());
        assert!(parse_dimacs("p cnf 2 2\n1 2 0\n").is_err());
    }

    #[test]
    fn check_counts() {
        let f = CnfFormula::new(2, vec![vec![1, -2]]).unwrap();
        assert_eq!(check_assignment(&f, &Assignment(vec![true, true])).unwrap(), vec![1]);
        assert_eq!(check_assignment(&f, &Assignment(vec![false, true])).unwrap(), vec![0]);
        let g = CnfFormula::new(3, vec![vec![1, 2, 3]]).unwrap();
        assert_eq!(check_assignment(&g, &Assignment(vec![true; 3])).unwrap(), vec![3]);
    }

    #[test]
    fn brute_force_unsat_and_forced() {
        let f = CnfFormula::new(1, vec![vec![1], vec![-1]]).unwrap();
        assert_eq!(brute_force_sat(&f).unwrap(), None);
        let g = CnfFormula::new(2, vec![vec![1, -2], vec![2]]).unwrap();
        assert_eq!(brute_force_sat(&g).unwrap(), Some(Assignment(vec![true, true])));
    }

    /// Independent evaluator used to cross-check brute_force_sat.
    fn naive_satisfiable(f: &CnfFormula) -> bool {
        let n = f.num_vars;
        'outer: for mask in 0u64..(1u64 << n) {
            for cl in &f.clauses {
                let mut sat = false;
                for &l in cl {
                    let bit = (mask >> (l.unsigned_abs() - 1)) & 1 == 1;
                    if (l > 0) == bit {
                        sat = true;
                        break;
                    }
                }
                if !sat {
                    continue 'outer;
                }
            }
            return true;
        }
        false
    }

    #[test]
    fn brute_force_agrees_with_naive_evaluator() {
        for seed in 0..40 {
            let f = random_3sat(6 + seed % 5, 8 + seed % 9, 1000 + seed as u64);
            let found = brute_force_sat(&f).unwrap();
            assert_eq!(found.is_some(), naive_satisfiable(&f), "seed {seed}");
            if let Some(a) = found {
                assert!(check_assignment(&f, &a).unwrap().iter().all(|&c| c >= 1));
            }
        }
    }

    #[test]
    fn random_3sat_is_deterministic_and_distinct() {
        let a = random_3sat(10, 42, 7);
        let b = random_3sat(10, 42, 7);
        assert_eq!(a, b);
        for cl in &a.clauses {
            let mut vars: Vec<u32> = cl.iter().map(|l| l.unsigned_abs()).collect();
            vars.dedup();
            assert_eq!(vars.len(), 3);
        }
        let tiny = random_3sat(3, 1, 99);
        let vars: Vec<u32> = tiny.clauses[0].iter().map(|l| l.unsigned_abs()).collect();
        assert_eq!(vars, vec![1, 2, 3]);
    }

    #[test]
    fn exact3_occurrences() {
        for seed in 0..10 {
            let f = random_exact3(5, seed);
            let mut occ = vec![0u32; 6];
            for cl in &f.clauses {
                for &l in cl {
                    occ[l.unsigned_abs() as usize] += 1;
                }
            }
            assert!(occ[1..].iter().all(|&c| c == 3));
        }
    }

    #[test]
    fn assignment_line_roundtrip() {
        let a = Assignment(vec![true, false, true]);
        assert_eq!(parse_assignment(&write_assignment(&a)).unwrap(), a);
    }

    proptest! {
        #[test]
        fn dimacs_roundtrip(vars in 3u32..12, clauses in 1u32..20, seed in 0u64..500) {
            let f = random_3sat(vars, clauses, seed);
            let parsed = parse_dimacs(&write_dimacs(&f)).unwrap();
            prop_assert_eq!(&parsed, &f);
            prop_assert_eq!(parse_dimacs(&write_dimacs(&parsed)).unwrap(), f);
        }
    }
}
