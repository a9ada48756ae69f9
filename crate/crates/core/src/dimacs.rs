//! DIMACS CNF reading and writing.

use std::fmt::Write as _;
use std::io::{self, Write};

use crate::cnf::{Clause, Formula, Lit};
use crate::error::{Error, Result};

/// Writes `p cnf <vars> <clauses>` followed by one 0-terminated clause per line,
/// in the formula's canonical (sorted) order.
pub fn write_dimacs<W: Write>(formula: &Formula, mut out: W) -> io::Result<()> {
    writeln!(out, "p cnf {} {}", formula.num_vars(), formula.len())?;
    let mut line = String::new();
    for clause in formula.iter() {
        line.clear();
        for lit in clause.iter() {
            let _ = write!(line, "{lit} ");
        }
        line.push('0');
        writeln!(out, "{line}")?;
    }
    Ok(())
}

pub fn to_dimacs(formula: &Formula) -> String {
    let mut buf = Vec::new();
    write_dimacs(formula, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("DIMACS output is ASCII")
}

/// Parses DIMACS CNF. Comment lines (`c ...`) are skipped and clauses may span
/// lines. The header variable count is kept even when larger than the highest
/// variable used.
pub fn parse_dimacs(text: &str) -> Result<Formula> {
    let mut declared: Option<(u32, usize)> = None;
    let mut clauses = Vec::new();
    let mut current: Vec<Lit> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
            continue;
        }
        if let Some(rest) = line.strip_prefix('p') {
            let fields: Vec<&str> = rest.split_whitespace().collect();
            if declared.is_some() || fields.len() != 3 || fields[0] != "cnf" {
                return Err(Error::parse(lineno + 1, "malformed `p cnf` header"));
            }
            let vars = fields[1]
                .parse()
                .map_err(|_| Error::parse(lineno + 1, "bad variable count"))?;
            let count = fields[2]
                .parse()
                .map_err(|_| Error::parse(lineno + 1, "bad clause count"))?;
            declared = Some((vars, count));
            continue;
        }
        if declared.is_none() {
            return Err(Error::parse(lineno + 1, "clause before `p cnf` header"));
        }
        for tok in line.split_whitespace() {
            let value: i32 = tok
                .parse()
                .map_err(|_| Error::parse(lineno + 1, format!("bad literal `{tok}`")))?;
            match Lit::from_dimacs(value) {
                None => {
                    let clause = Clause::new(current.drain(..)).map_err(|e| {
                        Error::parse(lineno + 1, e.to_string())
                    })?;
                    clauses.push(clause);
                }
                Some(lit) => current.push(lit),
            }
        }
    }
    if !current.is_empty() {
        return Err(Error::parse(text.lines().count(), "last clause is not 0-terminated"));
    }
    let (vars, _) = declared.ok_or_else(|| Error::parse(1, "missing `p cnf` header"))?;
    let formula = Formula::from_clauses(clauses, vars);
    if formula.num_vars() > vars {
        return Err(Error::parse(1, format!(
            "header declares {vars} variables but variable {} occurs",
            formula.num_vars()
        )));
    }
    Ok(formula)
}
