//! Ground-truth checkers: independent-set enumeration, the "F encodes the
//! independent-set property" test, and projection equisatisfiability.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cnf::{Assignment, Formula, Lit, Var};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::isp::vertex_name;
use crate::solver::Solver;
use crate::varmap::VarMap;

pub const MAX_ENUMERATION_VERTICES: usize = 25;
pub const MAX_EXHAUSTIVE_VARS: usize = 20;
pub const DEFAULT_SAMPLES: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckMode {
    Exhaustive,
    Sampled { count: usize, seed: u64 },
}

impl CheckMode {
    pub fn sampled(seed: u64) -> CheckMode {
        CheckMode::Sampled {
            count: DEFAULT_SAMPLES,
            seed,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass { checked: usize },
    /// `witness` is the assignment on which the formula and the reference
    /// disagree; `expected_sat` is what the reference says.
    Fail { witness: Assignment, expected_sat: bool },
}

impl Verdict {
    pub fn passed(&self) -> bool {
        matches!(self, Verdict::Pass { .. })
    }
}

/// All independent sets of `g`, ordered by size and then lexicographically.
pub fn enumerate_independent_sets(g: &Graph) -> Result<Vec<Vec<u32>>> {
    let n = g.num_vertices();
    if n > MAX_ENUMERATION_VERTICES {
        return Err(Error::TooLarge(format!(
            "independent-set enumeration is limited to {MAX_ENUMERATION_VERTICES} vertices, got {n}"
        )));
    }
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn grow(g: &Graph, next: u32, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        out.push(current.clone());
        for v in next..=g.num_vertices() as u32 {
            if current.iter().all(|&u| !g.has_edge(u, v)) {
                current.push(v);
                grow(g, v + 1, current, out);
                current.pop();
            }
        }
    }
    grow(g, 1, &mut current, &mut out);
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

/// Looks up the base variable of every vertex of `g` in `map`.
pub fn base_vars(g: &Graph, map: &VarMap) -> Result<Vec<Var>> {
    (1..=g.num_vertices() as u32)
        .map(|v| {
            let name = vertex_name(g, v);
            map.get(&name).ok_or_else(|| Error::MissingVariable(name.to_string()))
        })
        .collect()
}

fn assumptions(vars: &[Var], selected: &[bool]) -> Vec<Lit> {
    vars.iter().zip(selected).map(|(&v, &s)| Lit::new(v, s)).collect()
}

fn witness(vars: &[Var], selected: &[bool]) -> Assignment {
    vars.iter().zip(selected).map(|(&v, &s)| (v, s)).collect()
}

fn independent(g: &Graph, selected: &[bool]) -> bool {
    let chosen: Vec<u32> = (0..selected.len())
        .filter(|&i| selected[i])
        .map(|i| i as u32 + 1)
        .collect();
    g.is_independent(&chosen)
}

/// Draws a selection: half the time uniform, otherwise a random independent
/// set that half the time gets one extra random vertex.
fn sample_selection(g: &Graph, rng: &mut ChaCha8Rng) -> Vec<bool> {
    let n = g.num_vertices();
    if rng.gen_bool(0.5) {
        return (0..n).map(|_| rng.gen_bool(0.5)).collect();
    }
    let mut order: Vec<u32> = (1..=n as u32).collect();
    order.shuffle(rng);
    let mut chosen: Vec<u32> = Vec::new();
    for v in order {
        if rng.gen_bool(0.5) && chosen.iter().all(|&u| !g.has_edge(u, v)) {
            chosen.push(v);
        }
    }
    if n > 0 && rng.gen_bool(0.5) {
        chosen.push(rng.gen_range(1..=n as u32));
    }
    let mut selected = vec![false; n];
    for v in chosen {
        selected[v as usize - 1] = true;
    }
    selected
}

/// Checks `SAT(F|τ) <=> {v : τ(x_v)} is independent in g` for every τ over the
/// base variables (exhaustive) or for seeded random τ (sampled). Auxiliary
/// variables are left to the solver.
pub fn check_isp_vars(g: &Graph, f: &Formula, vars: &[Var], mode: CheckMode) -> Result<Verdict> {
    let n = g.num_vertices();
    if vars.len() != n {
        return Err(Error::InvalidArgument(format!("{} base variables for {n} vertices", vars.len())));
    }
    let mut solver = Solver::new(f);
    let mut check = |selected: &[bool]| -> Option<Verdict> {
        let expected = independent(g, selected);
        let got = solver.solve(&assumptions(vars, selected)).is_sat();
        (got != expected).then(|| Verdict::Fail {
            witness: witness(vars, selected),
            expected_sat: expected,
        })
    };
    match mode {
        CheckMode::Exhaustive => {
            if n > MAX_EXHAUSTIVE_VARS {
                return Err(Error::TooLarge(format!(
                    "exhaustive checking is limited to {MAX_EXHAUSTIVE_VARS} vertices, got {n}"
                )));
            }
            for bits in 0u64..1 << n {
                let selected: Vec<bool> = (0..n).map(|i| bits >> i & 1 == 1).collect();
                if let Some(fail) = check(&selected) {
                    return Ok(fail);
                }
            }
            Ok(Verdict::Pass { checked: 1 << n })
        }
        CheckMode::Sampled { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..count {
                let selected = sample_selection(g, &mut rng);
                if let Some(fail) = check(&selected) {
                    return Ok(fail);
                }
            }
            Ok(Verdict::Pass { checked: count })
        }
    }
}

/// [`check_isp_vars`] with base variables resolved by name through `map`.
pub fn check_isp_encoding(g: &Graph, f: &Formula, map: &VarMap, mode: CheckMode) -> Result<Verdict> {
    let vars = base_vars(g, map)?;
    check_isp_vars(g, f, &vars, mode)
}

/// Checks `SAT(F1|τ) <=> SAT(F2|τ)` for every τ over `shared`.
pub fn check_equisat(f1: &Formula, f2: &Formula, shared: &[Var]) -> Result<Verdict> {
    if shared.len() > MAX_EXHAUSTIVE_VARS {
        return Err(Error::TooLarge(format!(
            "projection check is limited to {MAX_EXHAUSTIVE_VARS} shared variables, got {}",
            shared.len()
        )));
    }
    let mut s1 = Solver::new(f1);
    let mut s2 = Solver::new(f2);
    let n = shared.len();
    for bits in 0u64..1 << n {
        let selected: Vec<bool> = (0..n).map(|i| bits >> i & 1 == 1).collect();
        let lits = assumptions(shared, &selected);
        let a = s1.solve(&lits).is_sat();
        if a != s2.solve(&lits).is_sat() {
            return Ok(Verdict::Fail {
                witness: witness(shared, &selected),
                expected_sat: a,
            });
        }
    }
    Ok(Verdict::Pass { checked: 1 << n })
}

/// Pairs `(a, b)`, `a < b`, of indices into `vars` such that making exactly
/// those two variables true (all others false) is unsatisfiable.
pub fn conflict_pairs(f: &Formula, vars: &[Var]) -> Vec<(usize, usize)> {
    let mut solver = Solver::new(f);
    let mut out = Vec::new();
    let mut lits: Vec<Lit> = vars.iter().map(|v| v.neg()).collect();
    for a in 0..vars.len() {
        lits[a] = vars[a].pos();
        for b in a + 1..vars.len() {
            lits[b] = vars[b].pos();
            if !solver.solve(&lits).is_sat() {
                out.push((a, b));
            }
            lits[b] = vars[b].neg();
        }
        lits[a] = vars[a].neg();
    }
    out
}
