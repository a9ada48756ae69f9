//! A small complete DPLL solver: two watched literals, chronological
//! backtracking, root-level pure-literal elimination, and a static decision
//! order (most frequent variable first, false polarity first).
//!
//! Intended for the desk-scale instances the checkers produce. A [`Solver`] can
//! be reused across many assumption sets, which is how the encoding checkers
//! evaluate `F|τ` without materialising the restricted formula.

use crate::cnf::{Assignment, Formula, Lit, Var};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SatResult {
    Sat(Assignment),
    Unsat,
}

impl SatResult {
    pub fn is_sat(&self) -> bool {
        matches!(self, SatResult::Sat(_))
    }

    pub fn model(&self) -> Option<&Assignment> {
        match self {
            SatResult::Sat(m) => Some(m),
            SatResult::Unsat => None,
        }
    }
}

/// Decides `formula`. The returned model is total over `1..=num_vars`.
pub fn solve(formula: &Formula) -> SatResult {
    Solver::new(formula).solve(&[])
}

/// Decides `formula` under the given assumption literals, i.e. `SAT(F|τ)` for
/// the assignment making every assumption true.
pub fn solve_under(formula: &Formula, assumptions: &[Lit]) -> SatResult {
    Solver::new(formula).solve(assumptions)
}

const UNASSIGNED: i8 = 0;

struct Frame {
    trail_len: usize,
    lit: Lit,
    flipped: bool,
    cursor: usize,
}

pub struct Solver {
    num_vars: usize,
    clauses: Vec<Vec<Lit>>,
    units: Vec<Lit>,
    has_empty: bool,
    watches: Vec<Vec<usize>>,
    values: Vec<i8>,
    trail: Vec<Lit>,
    head: usize,
    order: Vec<Var>,
}

impl Solver {
    pub fn new(formula: &Formula) -> Solver {
        let num_vars = formula.num_vars() as usize;
        let mut clauses = Vec::new();
        let mut units = Vec::new();
        let mut has_empty = false;
        let mut counts = vec![0usize; num_vars + 1];
        for clause in formula.iter() {
            for lit in clause.iter() {
                counts[lit.var().index() as usize] += 1;
            }
            match clause.len() {
                0 => has_empty = true,
                1 => units.push(clause.lits()[0]),
                _ => clauses.push(clause.lits().to_vec()),
            }
        }
        let mut watches = vec![Vec::new(); 2 * num_vars];
        for (idx, c) in clauses.iter().enumerate() {
            watches[c[0].code()].push(idx);
            watches[c[1].code()].push(idx);
        }
        let mut order: Vec<Var> = (1..=num_vars as u32)
            .filter(|&v| counts[v as usize] > 0)
            .map(Var::new)
            .collect();
        order.sort_by_key(|v| (std::cmp::Reverse(counts[v.index() as usize]), v.index()));
        Solver {
            num_vars,
            clauses,
            units,
            has_empty,
            watches,
            values: vec![UNASSIGNED; num_vars + 1],
            trail: Vec::new(),
            head: 0,
            order,
        }
    }

    fn value(&self, lit: Lit) -> i8 {
        let v = self.values[lit.var().index() as usize];
        if lit.is_positive() {
            v
        } else {
            -v
        }
    }

    fn assign(&mut self, lit: Lit) {
        self.values[lit.var().index() as usize] = if lit.is_positive() { 1 } else { -1 };
        self.trail.push(lit);
    }

    /// Makes `lit` true unless already decided; returns false on a clash.
    fn enqueue(&mut self, lit: Lit) -> bool {
        match self.value(lit) {
            1 => true,
            -1 => false,
            _ => {
                self.assign(lit);
                true
            }
        }
    }

    fn undo_to(&mut self, len: usize) {
        for lit in self.trail.drain(len..) {
            self.values[lit.var().index() as usize] = UNASSIGNED;
        }
        self.head = self.head.min(len);
    }

    /// Unit propagation over the watch lists; false on conflict.
    fn propagate(&mut self) -> bool {
        while self.head < self.trail.len() {
            let falsified = !self.trail[self.head];
            self.head += 1;
            let code = falsified.code();
            let mut watchers = std::mem::take(&mut self.watches[code]);
            let mut keep = 0;
            let mut conflict = false;
            let mut idx = 0;
            while idx < watchers.len() {
                let ci = watchers[idx];
                idx += 1;
                if conflict {
                    watchers[keep] = ci;
                    keep += 1;
                    continue;
                }
                let clause = &mut self.clauses[ci];
                if clause[0] == falsified {
                    clause.swap(0, 1);
                }
                let other = clause[0];
                let other_val = {
                    let v = self.values[other.var().index() as usize];
                    if other.is_positive() { v } else { -v }
                };
                if other_val == 1 {
                    watchers[keep] = ci;
                    keep += 1;
                    continue;
                }
                let mut moved = false;
                for k in 2..clause.len() {
                    let cand = clause[k];
                    let v = self.values[cand.var().index() as usize];
                    let cv = if cand.is_positive() { v } else { -v };
                    if cv != -1 {
                        clause.swap(1, k);
                        self.watches[cand.code()].push(ci);
                        moved = true;
                        break;
                    }
                }
                if moved {
                    continue;
                }
                watchers[keep] = ci;
                keep += 1;
                if other_val == -1 {
                    conflict = true;
                } else {
                    self.assign(other);
                }
            }
            watchers.truncate(keep);
            self.watches[code] = watchers;
            if conflict {
                return false;
            }
        }
        true
    }

    /// Assigns literals that occur with a single polarity among the clauses not
    /// yet satisfied, until nothing changes. Never falsifies a literal, so the
    /// watch invariant is untouched.
    fn eliminate_pure(&mut self) {
        loop {
            let mut polarity = vec![0u8; self.num_vars + 1];
            let mut consider = |lits: &[Lit], values: &[i8]| {
                let satisfied = lits.iter().any(|&l| {
                    let v = values[l.var().index() as usize];
                    (if l.is_positive() { v } else { -v }) == 1
                });
                if satisfied {
                    return;
                }
                for &l in lits {
                    if values[l.var().index() as usize] == UNASSIGNED {
                        polarity[l.var().index() as usize] |= if l.is_positive() { 1 } else { 2 };
                    }
                }
            };
            for c in &self.clauses {
                consider(c, &self.values);
            }
            for &u in &self.units {
                consider(&[u], &self.values);
            }
            let mut changed = false;
            for v in 1..=self.num_vars {
                if self.values[v] == UNASSIGNED && (polarity[v] == 1 || polarity[v] == 2) {
                    self.assign(Lit::new(Var::new(v as u32), polarity[v] == 1));
                    changed = true;
                }
            }
            self.head = self.trail.len();
            if !changed {
                return;
            }
        }
    }

    /// Decides the formula under `assumptions`. The solver returns to its
    /// initial state afterwards and can be called again.
    pub fn solve(&mut self, assumptions: &[Lit]) -> SatResult {
        let result = self.search(assumptions);
        self.undo_to(0);
        self.head = 0;
        if let SatResult::Sat(model) = &result {
            for clause in &self.clauses {
                assert!(
                    clause.iter().any(|&l| model.value(l) == Some(true)),
                    "solver produced a model violating a clause"
                );
            }
            for &u in &self.units {
                assert_eq!(model.value(u), Some(true), "solver violated a unit clause");
            }
            for &a in assumptions {
                assert_eq!(model.value(a), Some(true), "solver violated an assumption");
            }
        }
        result
    }

    fn search(&mut self, assumptions: &[Lit]) -> SatResult {
        if self.has_empty {
            return SatResult::Unsat;
        }
        for idx in 0..self.units.len() {
            let u = self.units[idx];
            if !self.enqueue(u) {
                return SatResult::Unsat;
            }
        }
        for &a in assumptions {
            if a.var().index() as usize > self.num_vars {
                continue;
            }
            if !self.enqueue(a) {
                return SatResult::Unsat;
            }
        }
        if !self.propagate() {
            return SatResult::Unsat;
        }
        self.eliminate_pure();

        let mut stack: Vec<Frame> = Vec::new();
        let mut cursor = 0;
        loop {
            while cursor < self.order.len()
                && self.values[self.order[cursor].index() as usize] != UNASSIGNED
            {
                cursor += 1;
            }
            if cursor == self.order.len() {
                return SatResult::Sat(self.model(assumptions));
            }
            let lit = self.order[cursor].neg();
            stack.push(Frame {
                trail_len: self.trail.len(),
                lit,
                flipped: false,
                cursor,
            });
            self.assign(lit);
            while !self.propagate() {
                loop {
                    let Some(frame) = stack.last_mut() else {
                        return SatResult::Unsat;
                    };
                    if frame.flipped {
                        stack.pop();
                        continue;
                    }
                    frame.flipped = true;
                    let (len, lit) = (frame.trail_len, !frame.lit);
                    cursor = frame.cursor;
                    self.undo_to(len);
                    self.assign(lit);
                    break;
                }
            }
        }
    }

    fn model(&self, assumptions: &[Lit]) -> Assignment {
        let mut model: Assignment = (1..=self.num_vars as u32)
            .map(|v| (Var::new(v), self.values[v as usize] == 1))
            .collect();
        // assumptions on variables beyond the formula are honoured verbatim
        for &a in assumptions {
            if a.var().index() as usize > self.num_vars {
                model.set(a.var(), a.is_positive());
            }
        }
        model
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf::Clause;
    use proptest::prelude::*;

    fn f(clauses: &[&[i32]]) -> Formula {
        Formula::from_dimacs_clauses(clauses).unwrap()
    }

    #[test]
    fn trivial_cases() {
        let r = solve(&f(&[&[1]]));
        assert_eq!(r.model().unwrap().get(Var::new(1)), Some(true));
        assert_eq!(solve(&f(&[&[1], &[-1]])), SatResult::Unsat);
        assert!(solve(&Formula::new()).is_sat());
        assert_eq!(solve(&Formula::from_clauses([Clause::empty()], 0)), SatResult::Unsat);
    }

    #[test]
    fn pigeonhole_three_into_two_is_unsat() {
        // p(i,h) = 2*(i-1) + h
        let mut cs: Vec<Vec<i32>> = (0..3).map(|i| vec![2 * i + 1, 2 * i + 2]).collect();
        for h in 1..=2 {
            for a in 0..3 {
                for b in a + 1..3 {
                    cs.push(vec![-(2 * a + h), -(2 * b + h)]);
                }
            }
        }
        let refs: Vec<&[i32]> = cs.iter().map(Vec::as_slice).collect();
        assert_eq!(solve(&f(&refs)), SatResult::Unsat);
    }

    #[test]
    fn solver_is_reusable_across_assumptions() {
        let formula = f(&[&[-1, -2], &[1, 2, 3]]);
        let mut s = Solver::new(&formula);
        let one = Var::new(1).pos();
        let two = Var::new(2).pos();
        let three = Var::new(3).neg();
        assert_eq!(s.solve(&[one, two]), SatResult::Unsat);
        assert!(s.solve(&[one]).is_sat());
        assert_eq!(s.solve(&[!one, !two, three]), SatResult::Unsat);
        assert!(s.solve(&[]).is_sat());
    }

    fn brute_force(formula: &Formula) -> bool {
        let n = formula.num_vars();
        (0u32..1 << n).any(|bits| {
            let tau: Assignment = (1..=n).map(|v| (Var::new(v), bits >> (v - 1) & 1 == 1)).collect();
            formula.is_satisfied_by(&tau)
        })
    }

    fn arb_formula(max_vars: u32) -> impl Strategy<Value = Formula> {
        let clause = prop::collection::btree_map(1..=max_vars, any::<bool>(), 0..5).prop_map(|m| {
            Clause::new(m.into_iter().map(|(v, b)| Lit::new(Var::new(v), b))).unwrap()
        });
        prop::collection::vec(clause, 0..40).prop_map(move |cs| Formula::from_clauses(cs, max_vars))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(400))]
        #[test]
        fn agrees_with_truth_table(formula in arb_formula(12)) {
            let result = solve(&formula);
            prop_assert_eq!(result.is_sat(), brute_force(&formula));
            if let SatResult::Sat(model) = result {
                prop_assert!(formula.is_satisfied_by(&model));
            }
        }

        #[test]
        fn assumptions_match_restriction(
            formula in arb_formula(8),
            tau in prop::collection::btree_map(1u32..=8, any::<bool>(), 0..6),
        ) {
            let tau: Assignment = tau.into_iter().map(|(v, b)| (Var::new(v), b)).collect();
            let via_restrict = solve(&formula.restrict(&tau)).is_sat();
            let via_assumptions = solve_under(&formula, &tau.to_lits()).is_sat();
            prop_assert_eq!(via_restrict, via_assumptions);
        }
    }
}
