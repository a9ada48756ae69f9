//! Literals, clauses, formulas and partial assignments.
//!
//! A [`Formula`] is a set of [`Clause`]s: clauses are kept canonical (literals
//! sorted, no duplicates) and the clause list is sorted and deduplicated, so
//! syntactically equal clauses collapse and iteration order is reproducible.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::Not;

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// A propositional variable, numbered from 1 as in DIMACS.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(u32);

impl Var {
    /// Panics on 0; variable indices start at 1.
    pub fn new(index: u32) -> Var {
        assert!(index >= 1, "variable indices start at 1");
        Var(index)
    }

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn pos(self) -> Lit {
        Lit::new(self, true)
    }

    pub fn neg(self) -> Lit {
        Lit::new(self, false)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A literal, stored as a signed DIMACS integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Lit(i32);

impl Lit {
    pub fn new(var: Var, positive: bool) -> Lit {
        let v = var.0 as i32;
        Lit(if positive { v } else { -v })
    }

    /// Returns `None` for 0, which DIMACS reserves as the clause terminator.
    pub fn from_dimacs(value: i32) -> Option<Lit> {
        (value != 0 && value != i32::MIN).then_some(Lit(value))
    }

    pub fn to_dimacs(self) -> i32 {
        self.0
    }

    pub fn var(self) -> Var {
        Var(self.0.unsigned_abs())
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    /// Index into per-literal tables: `2 * (var - 1) + (negative as usize)`.
    pub(crate) fn code(self) -> usize {
        2 * (self.var().0 as usize - 1) + usize::from(!self.is_positive())
    }
}

impl Not for Lit {
    type Output = Lit;

    fn not(self) -> Lit {
        Lit(-self.0)
    }
}

impl Ord for Lit {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.var(), self.is_positive()).cmp(&(other.var(), other.is_positive()))
    }
}

impl PartialOrd for Lit {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A disjunction of literals with no duplicates and no complementary pair.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Clause(SmallVec<[Lit; 2]>);

impl Clause {
    /// Builds a canonical clause. Duplicate literals collapse; a complementary
    /// pair is rejected since encoders are never supposed to emit tautologies.
    pub fn new(lits: impl IntoIterator<Item = Lit>) -> Result<Clause> {
        let mut lits: SmallVec<[Lit; 2]> = lits.into_iter().collect();
        lits.sort_unstable();
        lits.dedup();
        if let Some(w) = lits.windows(2).find(|w| w[0].var() == w[1].var()) {
            return Err(Error::Tautology(w[0].var().index()));
        }
        Ok(Clause(lits))
    }

    pub fn empty() -> Clause {
        Clause(SmallVec::new())
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

    pub fn max_var(&self) -> u32 {
        self.0.last().map_or(0, |l| l.var().index())
    }

    pub fn iter(&self) -> impl Iterator<Item = Lit> + '_ {
        self.0.iter().copied()
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (idx, lit) in self.0.iter().enumerate() {
            if idx > 0 {
                write!(f, " ")?;
            }
            write!(f, "{lit}")?;
        }
        write!(f, ")")
    }
}

/// A set of clauses plus the number of declared variables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Formula {
    clauses: Vec<Clause>,
    num_vars: u32,
}

impl Formula {
    pub fn new() -> Formula {
        Formula::default()
    }

    /// Collects clauses with set semantics. `num_vars` is raised to cover every
    /// variable that occurs.
    pub fn from_clauses(clauses: impl IntoIterator<Item = Clause>, num_vars: u32) -> Formula {
        let mut clauses: Vec<Clause> = clauses.into_iter().collect();
        clauses.sort_unstable();
        clauses.dedup();
        let used = clauses.iter().map(Clause::max_var).max().unwrap_or(0);
        Formula {
            clauses,
            num_vars: num_vars.max(used),
        }
    }

    /// Convenience for tests and examples: clauses as DIMACS integer lists.
    pub fn from_dimacs_clauses(clauses: &[&[i32]]) -> Result<Formula> {
        let mut built = Vec::with_capacity(clauses.len());
        for raw in clauses {
            let lits = raw
                .iter()
                .map(|&v| {
                    Lit::from_dimacs(v)
                        .ok_or_else(|| Error::InvalidArgument(format!("bad literal {v}")))
                })
                .collect::<Result<Vec<_>>>()?;
            built.push(Clause::new(lits)?);
        }
        Ok(Formula::from_clauses(built, 0))
    }

    /// Number of clauses.
    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    /// Highest variable index declared or used.
    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }

    pub fn with_num_vars(mut self, num_vars: u32) -> Formula {
        self.num_vars = self.num_vars.max(num_vars);
        self
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn iter(&self) -> impl Iterator<Item = &Clause> + '_ {
        self.clauses.iter()
    }

    pub fn contains(&self, clause: &Clause) -> bool {
        self.clauses.binary_search(clause).is_ok()
    }

    pub fn has_empty_clause(&self) -> bool {
        self.clauses.first().is_some_and(Clause::is_empty)
    }

    /// The variables that actually occur in some clause.
    pub fn vars(&self) -> BTreeSet<Var> {
        self.clauses
            .iter()
            .flat_map(|c| c.iter().map(Lit::var))
            .collect()
    }

    pub fn union(&self, other: &Formula) -> Formula {
        Formula::from_clauses(
            self.clauses.iter().chain(other.clauses.iter()).cloned(),
            self.num_vars.max(other.num_vars),
        )
    }

    /// F restricted by a partial assignment: satisfied clauses are dropped and
    /// falsified literals removed from the rest. A clause whose literals are all
    /// falsified survives as the empty clause.
    pub fn restrict(&self, tau: &Assignment) -> Formula {
        let mut out = Vec::with_capacity(self.clauses.len());
        'clauses: for clause in &self.clauses {
            let mut kept: SmallVec<[Lit; 2]> = SmallVec::new();
            for lit in clause.iter() {
                match tau.value(lit) {
                    Some(true) => continue 'clauses,
                    Some(false) => {}
                    None => kept.push(lit),
                }
            }
            out.push(Clause(kept));
        }
        Formula::from_clauses(out, self.num_vars)
    }

    pub fn is_satisfied_by(&self, tau: &Assignment) -> bool {
        self.clauses.iter().all(|c| tau.satisfies(c))
    }
}

/// Accumulates clauses for an encoder; [`FormulaBuilder::build`] applies set
/// semantics in one pass.
#[derive(Debug, Default)]
pub struct FormulaBuilder {
    clauses: Vec<Clause>,
    num_vars: u32,
}

impl FormulaBuilder {
    pub fn new() -> FormulaBuilder {
        FormulaBuilder::default()
    }

    pub fn add(&mut self, lits: impl IntoIterator<Item = Lit>) -> Result<()> {
        let clause = Clause::new(lits)?;
        self.add_clause(clause);
        Ok(())
    }

    pub fn add_clause(&mut self, clause: Clause) {
        self.num_vars = self.num_vars.max(clause.max_var());
        self.clauses.push(clause);
    }

    pub fn extend(&mut self, formula: &Formula) {
        self.num_vars = self.num_vars.max(formula.num_vars);
        self.clauses.extend(formula.clauses.iter().cloned());
    }

    pub fn declare_vars(&mut self, num_vars: u32) {
        self.num_vars = self.num_vars.max(num_vars);
    }

    /// Clauses pushed so far, before deduplication.
    pub fn pushed(&self) -> usize {
        self.clauses.len()
    }

    pub fn build(self) -> Formula {
        Formula::from_clauses(self.clauses, self.num_vars)
    }
}

/// A (possibly partial) truth assignment.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Assignment(BTreeMap<Var, bool>);

impl Assignment {
    pub fn new() -> Assignment {
        Assignment::default()
    }

    pub fn set(&mut self, var: Var, value: bool) {
        self.0.insert(var, value);
    }

    pub fn with(mut self, var: Var, value: bool) -> Assignment {
        self.set(var, value);
        self
    }

    pub fn get(&self, var: Var) -> Option<bool> {
        self.0.get(&var).copied()
    }

    /// Truth value of a literal, if its variable is assigned.
    pub fn value(&self, lit: Lit) -> Option<bool> {
        self.get(lit.var()).map(|v| v == lit.is_positive())
    }

    pub fn satisfies(&self, clause: &Clause) -> bool {
        clause.iter().any(|l| self.value(l) == Some(true))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, bool)> + '_ {
        self.0.iter().map(|(&v, &b)| (v, b))
    }

    pub fn domain(&self) -> BTreeSet<Var> {
        self.0.keys().copied().collect()
    }

    /// Literals that are true under the assignment.
    pub fn to_lits(&self) -> Vec<Lit> {
        self.iter().map(|(v, b)| Lit::new(v, b)).collect()
    }

    pub fn extend(&mut self, other: &Assignment) {
        self.0.extend(other.iter());
    }
}

impl FromIterator<(Var, bool)> for Assignment {
    fn from_iter<I: IntoIterator<Item = (Var, bool)>>(iter: I) -> Self {
        Assignment(iter.into_iter().collect())
    }
}
