//! Problem-level reductions on top of the independent-set encoders, and the
//! non-preemptive scheduling encoder.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::amo::{exactly_k_into, product_into};
use crate::cnf::{Assignment, Clause, Formula, FormulaBuilder, Lit};
use crate::cover::{bc_isp_into, cc_isp_into, greedy_biclique_cover, greedy_clique_cover};
use crate::error::{Error, Result};
use crate::graph::{intervals, Graph, IntervalVariant};
use crate::interval::{
    encode_interval_isp_block83_in, encode_interval_isp_recursive_in, IntervalLits, RecursiveParams,
    DEFAULT_RECURSION_BASE,
};
use crate::isp::{direct_into, ensure_vertex_vars};
use crate::varmap::{Scope, VarMap, VarName};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Direct,
    /// Greedy clique cover, product AMO per clique.
    CliqueCover,
    /// Greedy biclique cover, one auxiliary per biclique.
    BicliqueCover,
    /// Recursive block encoder; interval graphs only.
    RecursiveBlocks { k: Option<u32>, recursion_base: u32 },
    /// One-level block encoder; interval graphs only.
    Block83 { k: Option<u32> },
}

impl Strategy {
    pub const NAMES: [&'static str; 5] = ["direct", "cliqueCover", "bicliqueCover", "recursiveBlocks", "block83"];

    pub fn recursive() -> Strategy {
        Strategy::RecursiveBlocks {
            k: None,
            recursion_base: DEFAULT_RECURSION_BASE,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Strategy::Direct => "direct",
            Strategy::CliqueCover => "cliqueCover",
            Strategy::BicliqueCover => "bicliqueCover",
            Strategy::RecursiveBlocks { .. } => "recursiveBlocks",
            Strategy::Block83 { .. } => "block83",
        }
    }

    /// Whether the strategy can encode `g`.
    pub fn applies_to(&self, g: &Graph) -> bool {
        match self {
            Strategy::RecursiveBlocks { .. } | Strategy::Block83 { .. } => g.interval_family().is_some(),
            _ => true,
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Strategy> {
        match s {
            "direct" => Ok(Strategy::Direct),
            "cliqueCover" => Ok(Strategy::CliqueCover),
            "bicliqueCover" => Ok(Strategy::BicliqueCover),
            "recursiveBlocks" => Ok(Strategy::recursive()),
            "block83" => Ok(Strategy::Block83 { k: None }),
            other => Err(Error::InvalidArgument(format!(
                "unknown strategy {other:?} (expected one of {})",
                Strategy::NAMES.join(", ")
            ))),
        }
    }
}

fn interval_lits(g: &Graph, lits: &[Lit], strategy: Strategy) -> Result<(IntervalLits, IntervalVariant)> {
    let family = g.interval_family().ok_or_else(|| Error::NotApplicable {
        strategy: strategy.name().to_string(),
        reason: "the graph is not a complete interval graph".to_string(),
    })?;
    Ok((IntervalLits::new(family.n, lits.to_vec())?, family.variant))
}

/// The independent-set property of `g` over arbitrary vertex literals.
pub fn encode_isp_over(
    g: &Graph,
    lits: &[Lit],
    strategy: Strategy,
    pool: &mut VarMap,
    scope: &Scope,
) -> Result<Formula> {
    if lits.len() != g.num_vertices() {
        return Err(Error::InvalidArgument(format!(
            "{} literals for {} vertices",
            lits.len(),
            g.num_vertices()
        )));
    }
    let mut out = FormulaBuilder::new();
    match strategy {
        Strategy::Direct => direct_into(&mut out, g, lits)?,
        Strategy::CliqueCover => cc_isp_into(&mut out, pool, &greedy_clique_cover(g), lits)?,
        Strategy::BicliqueCover => bc_isp_into(&mut out, pool, &greedy_biclique_cover(g), lits)?,
        Strategy::RecursiveBlocks { k, recursion_base } => {
            let (x, variant) = interval_lits(g, lits, strategy)?;
            let params = RecursiveParams {
                variant,
                k,
                recursion_base,
            };
            return encode_interval_isp_recursive_in(&x, params, pool, scope);
        }
        Strategy::Block83 { k } => {
            let (x, variant) = interval_lits(g, lits, strategy)?;
            return encode_interval_isp_block83_in(&x, variant, k, pool, scope);
        }
    }
    out.declare_vars(pool.max_index());
    Ok(out.build())
}

fn exactly(out: &mut FormulaBuilder, lits: &[Lit], k: usize, pool: &mut VarMap) -> Result<()> {
    if k > lits.len() {
        out.add_clause(Clause::empty());
        return Ok(());
    }
    exactly_k_into(out, pool, lits, k)
}

/// Independent sets of `g` (of size exactly `k` when given).
pub fn encode_independent_set(g: &Graph, k: Option<usize>, strategy: Strategy, pool: &mut VarMap) -> Result<Formula> {
    let lits = ensure_vertex_vars(g, pool)?;
    let isp = encode_isp_over(g, &lits, strategy, pool, &Scope::root())?;
    let mut out = FormulaBuilder::new();
    out.extend(&isp);
    if let Some(k) = k {
        exactly(&mut out, &lits, k, pool)?;
    }
    out.declare_vars(pool.max_index());
    Ok(out.build())
}

/// Vertex covers of size exactly `k`: the independent-set encoding over the
/// negated vertex literals plus the cardinality constraint.
pub fn encode_vertex_cover(g: &Graph, k: usize, strategy: Strategy, pool: &mut VarMap) -> Result<Formula> {
    let lits = ensure_vertex_vars(g, pool)?;
    let negated: Vec<Lit> = lits.iter().map(|&l| !l).collect();
    let isp = encode_isp_over(g, &negated, strategy, pool, &Scope::root())?;
    let mut out = FormulaBuilder::new();
    out.extend(&isp);
    exactly(&mut out, &lits, k, pool)?;
    out.declare_vars(pool.max_index());
    Ok(out.build())
}

/// Proper `k`-colorings: one independent-set copy over `col(v,c)` per color
/// and one at-least-one-color clause per vertex.
pub fn encode_coloring(g: &Graph, k: usize, strategy: Strategy, pool: &mut VarMap) -> Result<Formula> {
    if k == 0 {
        return Err(Error::InvalidArgument("coloring needs k >= 1".into()));
    }
    let n = g.num_vertices() as u32;
    let mut colors: Vec<Vec<Lit>> = Vec::with_capacity(k);
    for c in 1..=k as u32 {
        let lits = (1..=n)
            .map(|v| Ok(pool.fresh(VarName::new("col", &[v, c]))?.pos()))
            .collect::<Result<Vec<_>>>()?;
        colors.push(lits);
    }
    let mut out = FormulaBuilder::new();
    for (c, lits) in colors.iter().enumerate() {
        let isp = encode_isp_over(g, lits, strategy, pool, &Scope::root().child(&format!("c{}", c + 1)))?;
        out.extend(&isp);
    }
    for v in 0..n as usize {
        out.add(colors.iter().map(|lits| lits[v]))?;
    }
    out.declare_vars(pool.max_index());
    Ok(out.build())
}

/// Cliques of size exactly `k`: independent sets of the complement.
pub fn encode_clique(g: &Graph, k: usize, strategy: Strategy, pool: &mut VarMap) -> Result<Formula> {
    encode_independent_set(&g.complement(), Some(k), strategy, pool)
}

/// A task with duration `d` that must start and finish within `[r, e]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Task {
    pub d: u32,
    pub r: u32,
    pub e: u32,
}

impl Task {
    /// Feasible start times `r ..= e - d` (possibly empty).
    pub fn starts(&self) -> std::ops::RangeInclusive<u32> {
        self.r..=self.e.saturating_sub(self.d)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchedulingInstance {
    #[serde(rename = "N")]
    pub n: u32,
    #[serde(rename = "M")]
    pub m: u32,
    #[serde(rename = "T")]
    pub t: u32,
    pub tasks: Vec<Task>,
}

impl SchedulingInstance {
    pub fn new(m: u32, t: u32, tasks: Vec<Task>) -> Result<SchedulingInstance> {
        let inst = SchedulingInstance {
            n: tasks.len() as u32,
            m,
            t,
            tasks,
        };
        inst.validate()?;
        Ok(inst)
    }

    pub fn validate(&self) -> Result<()> {
        if self.tasks.len() != self.n as usize {
            return Err(Error::InvalidArgument(format!("N = {} but {} tasks given", self.n, self.tasks.len())));
        }
        if self.m == 0 || self.t == 0 {
            return Err(Error::InvalidArgument("M and T must be positive".into()));
        }
        for (idx, task) in self.tasks.iter().enumerate() {
            if task.d == 0 || task.r == 0 || task.r > task.e || task.e > self.t {
                return Err(Error::InvalidArgument(format!(
                    "task {}: need d >= 1 and 1 <= r <= e <= T, got d={} r={} e={}",
                    idx + 1,
                    task.d,
                    task.r,
                    task.e
                )));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SchedulingParams {
    /// Recursion base of the per-machine interval encoder.
    pub recursion_base: u32,
    /// Replace the interval machinery by one product AMO per machine and time
    /// unit over the starts occupying it.
    pub per_time: bool,
}

impl Default for SchedulingParams {
    fn default() -> Self {
        SchedulingParams {
            recursion_base: DEFAULT_RECURSION_BASE,
            per_time: false,
        }
    }
}

fn start_var_name(i: u32, t: u32, m: u32) -> VarName {
    VarName::new("x", &[i, t, m])
}

/// Schedules: `x(i,t,m)` means task `i` starts at `t` on machine `m` and
/// occupies `[t, t+d)`. Machine occupancy goes through `y(m,t1,t2)` and the
/// recursive encoder for `I0_T`, under which back-to-back tasks do not clash.
pub fn encode_scheduling(inst: &SchedulingInstance, pool: &mut VarMap) -> Result<Formula> {
    encode_scheduling_with(inst, SchedulingParams::default(), pool)
}

pub fn encode_scheduling_with(inst: &SchedulingInstance, params: SchedulingParams, pool: &mut VarMap) -> Result<Formula> {
    inst.validate()?;
    let mut x: Vec<Vec<(u32, u32, Lit)>> = Vec::with_capacity(inst.tasks.len());
    for (idx, task) in inst.tasks.iter().enumerate() {
        let mut starts = Vec::new();
        for t in task.starts() {
            for m in 1..=inst.m {
                starts.push((t, m, pool.fresh(start_var_name(idx as u32 + 1, t, m))?.pos()));
            }
        }
        x.push(starts);
    }

    let mut out = FormulaBuilder::new();
    for starts in &x {
        out.add(starts.iter().map(|s| s.2))?;
    }

    if params.per_time {
        for m in 1..=inst.m {
            for unit in 1..inst.t {
                let busy: Vec<Lit> = inst
                    .tasks
                    .iter()
                    .zip(&x)
                    .flat_map(|(task, starts)| {
                        starts
                            .iter()
                            .filter(move |&&(t, mm, _)| mm == m && t <= unit && unit < t + task.d)
                            .map(|s| s.2)
                    })
                    .collect();
                product_into(&mut out, pool, &busy)?;
            }
        }
        out.declare_vars(pool.max_index());
        return Ok(out.build());
    }

    for m in 1..=inst.m {
        let y = intervals(inst.t)
            .map(|(t1, t2)| Ok(pool.fresh(VarName::new("y", &[m, t1, t2]))?.pos()))
            .collect::<Result<Vec<_>>>()?;
        let y = IntervalLits::new(inst.t, y)?;
        for (task, starts) in inst.tasks.iter().zip(&x) {
            for &(t, mm, lit) in starts {
                if mm == m {
                    out.add([!lit, y.get(t, t + task.d)])?;
                }
            }
        }
        for t in 1..inst.t {
            for d in 1..=inst.t - t {
                let same: Vec<Lit> = inst
                    .tasks
                    .iter()
                    .zip(&x)
                    .filter(|(task, _)| task.d == d)
                    .flat_map(|(_, starts)| starts.iter().filter(|s| s.0 == t && s.1 == m).map(|s| s.2))
                    .collect();
                product_into(&mut out, pool, &same)?;
            }
        }
        if inst.t >= 2 {
            let params = RecursiveParams::new(IntervalVariant::HalfOpen).with_recursion_base(params.recursion_base);
            let machine = encode_interval_isp_recursive_in(&y, params, pool, &Scope::root().child(&format!("m{m}")))?;
            out.extend(&machine);
        }
    }
    out.declare_vars(pool.max_index());
    Ok(out.build())
}

/// Start time and machine per task, read from a model of
/// [`encode_scheduling`].
pub fn decode_schedule(inst: &SchedulingInstance, pool: &VarMap, model: &Assignment) -> Option<Vec<(u32, u32)>> {
    inst.tasks
        .iter()
        .enumerate()
        .map(|(idx, task)| {
            task.starts().find_map(|t| {
                (1..=inst.m).find_map(|m| {
                    let var = pool.get(&start_var_name(idx as u32 + 1, t, m))?;
                    (model.get(var) == Some(true)).then_some((t, m))
                })
            })
        })
        .collect()
}

/// Each task starts within its window and tasks sharing a machine have
/// disjoint half-open occupancy.
pub fn is_valid_schedule(inst: &SchedulingInstance, schedule: &[(u32, u32)]) -> bool {
    if schedule.len() != inst.tasks.len() {
        return false;
    }
    for (a, (task, &(t, m))) in inst.tasks.iter().zip(schedule).enumerate() {
        if !task.starts().contains(&t) || m == 0 || m > inst.m {
            return false;
        }
        for (other, &(t2, m2)) in inst.tasks.iter().zip(schedule).skip(a + 1) {
            if m == m2 && t < t2 + other.d && t2 < t + task.d {
                return false;
            }
        }
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScheduleOutcome {
    Feasible(Vec<(u32, u32)>),
    Infeasible,
}

impl ScheduleOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, ScheduleOutcome::Feasible(_))
    }
}

/// Largest nominal search space `∏ |starts_i| · M` the oracle accepts.
pub const SCHEDULE_SEARCH_LIMIT: u64 = 10_000_000;

/// Exhaustive search over start times and machines.
pub fn brute_force_schedule(inst: &SchedulingInstance) -> Result<ScheduleOutcome> {
    inst.validate()?;
    let mut space: u64 = 1;
    for task in &inst.tasks {
        let options = task.starts().count() as u64 * inst.m as u64;
        if options == 0 {
            return Ok(ScheduleOutcome::Infeasible);
        }
        space = space.saturating_mul(options);
    }
    if space > SCHEDULE_SEARCH_LIMIT {
        return Err(Error::TooLarge(format!(
            "schedule search space {space} exceeds {SCHEDULE_SEARCH_LIMIT}"
        )));
    }
    let mut chosen = Vec::with_capacity(inst.tasks.len());
    Ok(if place(inst, &mut chosen) {
        ScheduleOutcome::Feasible(chosen)
    } else {
        ScheduleOutcome::Infeasible
    })
}

fn place(inst: &SchedulingInstance, chosen: &mut Vec<(u32, u32)>) -> bool {
    let idx = chosen.len();
    let Some(task) = inst.tasks.get(idx) else {
        return true;
    };
    for t in task.starts() {
        for m in 1..=inst.m {
            let clash = inst.tasks[..idx]
                .iter()
                .zip(chosen.iter())
                .any(|(other, &(t2, m2))| m2 == m && t < t2 + other.d && t2 < t + task.d);
            if clash {
                continue;
            }
            chosen.push((t, m));
            if place(inst, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::solve;

    fn all_strategies() -> Vec<Strategy> {
        vec![Strategy::Direct, Strategy::CliqueCover, Strategy::BicliqueCover]
    }

    fn sat(f: &Formula) -> bool {
        solve(f).is_sat()
    }

    /// Every graph on `n` vertices, by edge bitmask.
    fn graphs(n: usize) -> impl Iterator<Item = Graph> {
        let pairs: Vec<(u32, u32)> = (1..=n as u32).flat_map(|u| (u + 1..=n as u32).map(move |v| (u, v))).collect();
        (0u32..1 << pairs.len()).map(move |mask| {
            let edges: Vec<(u32, u32)> = pairs.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &e)| e).collect();
            Graph::from_edges(n, &edges).unwrap()
        })
    }

    fn independence_number(g: &Graph) -> usize {
        let n = g.num_vertices();
        (0u32..1 << n)
            .filter(|s| {
                let vs: Vec<u32> = (0..n).filter(|&v| s >> v & 1 == 1).map(|v| v as u32 + 1).collect();
                g.is_independent(&vs)
            })
            .map(|s| s.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn strategy_names_round_trip() {
        for name in Strategy::NAMES {
            assert_eq!(name.parse::<Strategy>().unwrap().name(), name);
        }
        assert!("greedy".parse::<Strategy>().is_err());
    }

    #[test]
    fn independent_set_examples() {
        let c5 = Graph::cycle(5);
        assert!(sat(&encode_independent_set(&c5, Some(2), Strategy::Direct, &mut VarMap::new()).unwrap()));
        for s in all_strategies() {
            assert!(!sat(&encode_independent_set(&c5, Some(3), s, &mut VarMap::new()).unwrap()));
        }
        assert!(!sat(&encode_independent_set(&c5, Some(9), Strategy::Direct, &mut VarMap::new()).unwrap()));
        let err = encode_independent_set(&c5, None, Strategy::recursive(), &mut VarMap::new());
        assert!(matches!(err, Err(Error::NotApplicable { .. })));
    }

    #[test]
    fn strategies_agree_on_small_graphs() {
        for n in 1..=4 {
            for g in graphs(n) {
                let alpha = independence_number(&g);
                for k in 0..=n {
                    for s in all_strategies() {
                        let f = encode_independent_set(&g, Some(k), s, &mut VarMap::new()).unwrap();
                        assert_eq!(sat(&f), k <= alpha, "{s} k={k} {:?}", g.edges().collect::<Vec<_>>());
                    }
                }
            }
        }
    }

    #[test]
    fn interval_strategies_find_the_independence_number() {
        for variant in [IntervalVariant::Closed, IntervalVariant::HalfOpen] {
            let g = Graph::interval(6, variant).unwrap();
            // disjoint intervals of [1, 6]: [1,2],[3,4],[5,6] or, with shared endpoints allowed, 5 unit steps
            let alpha = if variant == IntervalVariant::Closed { 3 } else { 5 };
            for s in [
                Strategy::Direct,
                Strategy::RecursiveBlocks { k: Some(3), recursion_base: 2 },
                Strategy::Block83 { k: Some(3) },
            ] {
                for k in [alpha, alpha + 1] {
                    let f = encode_independent_set(&g, Some(k), s, &mut VarMap::new()).unwrap();
                    assert_eq!(sat(&f), k == alpha, "{s} {variant:?} k={k}");
                }
            }
        }
    }

    #[test]
    fn vertex_cover_examples() {
        let k3 = Graph::complete(3);
        assert!(sat(&encode_vertex_cover(&k3, 2, Strategy::Direct, &mut VarMap::new()).unwrap()));
        assert!(!sat(&encode_vertex_cover(&k3, 1, Strategy::Direct, &mut VarMap::new()).unwrap()));
        let star = Graph::complete_bipartite(1, 4);
        assert!(sat(&encode_vertex_cover(&star, 1, Strategy::BicliqueCover, &mut VarMap::new()).unwrap()));
        for n in 1..=4 {
            for g in graphs(n) {
                let min_cover = n - independence_number(&g);
                for k in 0..=n {
                    let s = all_strategies()[k % 3];
                    let f = encode_vertex_cover(&g, k, s, &mut VarMap::new()).unwrap();
                    assert_eq!(sat(&f), k >= min_cover);
                }
            }
        }
    }

    #[test]
    fn coloring_examples() {
        let k4 = Graph::complete(4);
        assert!(!sat(&encode_coloring(&k4, 3, Strategy::CliqueCover, &mut VarMap::new()).unwrap()));
        assert!(sat(&encode_coloring(&k4, 4, Strategy::Direct, &mut VarMap::new()).unwrap()));
        let c5 = Graph::cycle(5);
        assert!(!sat(&encode_coloring(&c5, 2, Strategy::Direct, &mut VarMap::new()).unwrap()));
        assert!(sat(&encode_coloring(&c5, 3, Strategy::BicliqueCover, &mut VarMap::new()).unwrap()));
        let petersen = Graph::petersen();
        assert!(sat(&encode_coloring(&petersen, 3, Strategy::Direct, &mut VarMap::new()).unwrap()));
        assert!(!sat(&encode_coloring(&petersen, 2, Strategy::Direct, &mut VarMap::new()).unwrap()));
        assert!(encode_coloring(&c5, 0, Strategy::Direct, &mut VarMap::new()).is_err());
        let g = Graph::interval(5, IntervalVariant::Closed).unwrap();
        let s = Strategy::RecursiveBlocks { k: Some(2), recursion_base: 2 };
        // the 8 intervals through position 3 form a largest clique
        assert!(sat(&encode_coloring(&g, 8, s, &mut VarMap::new()).unwrap()));
        assert!(!sat(&encode_coloring(&g, 7, s, &mut VarMap::new()).unwrap()));
    }

    #[test]
    fn clique_examples() {
        assert!(sat(&encode_clique(&Graph::complete(5), 5, Strategy::Direct, &mut VarMap::new()).unwrap()));
        assert!(!sat(&encode_clique(&Graph::cycle(5), 3, Strategy::CliqueCover, &mut VarMap::new()).unwrap()));
        let g = Graph::random(8, 0.5, 7).unwrap();
        let omega = independence_number(&g.complement());
        for k in 0..=8 {
            let f = encode_clique(&g, k, Strategy::BicliqueCover, &mut VarMap::new()).unwrap();
            assert_eq!(sat(&f), k <= omega);
        }
    }

    fn instance(m: u32, t: u32, tasks: &[(u32, u32, u32)]) -> SchedulingInstance {
        SchedulingInstance::new(m, t, tasks.iter().map(|&(d, r, e)| Task { d, r, e }).collect()).unwrap()
    }

    fn encoded_feasible(inst: &SchedulingInstance, params: SchedulingParams) -> bool {
        let mut pool = VarMap::new();
        let f = encode_scheduling_with(inst, params, &mut pool).unwrap();
        match solve(&f).model() {
            Some(model) => {
                let schedule = decode_schedule(inst, &pool, model).expect("every task is placed");
                assert!(is_valid_schedule(inst, &schedule), "{inst:?} {schedule:?}");
                true
            }
            None => false,
        }
    }

    #[test]
    fn scheduling_examples() {
        let cases = [
            (instance(1, 3, &[(1, 1, 2)]), true),
            (instance(1, 3, &[(2, 1, 3), (2, 1, 3)]), false),
            (instance(1, 5, &[(2, 1, 3), (2, 3, 5)]), true),
            (instance(1, 4, &[]), true),
            (instance(2, 4, &[(3, 2, 4)]), false),
            (instance(2, 3, &[(2, 1, 3), (2, 1, 3)]), true),
        ];
        for (inst, feasible) in cases {
            assert_eq!(brute_force_schedule(&inst).unwrap().is_feasible(), feasible, "{inst:?}");
            assert_eq!(encoded_feasible(&inst, SchedulingParams::default()), feasible);
            let per_time = SchedulingParams { per_time: true, ..Default::default() };
            assert_eq!(encoded_feasible(&inst, per_time), feasible);
        }
        let f = encode_scheduling(&instance(1, 4, &[(3, 2, 4)]), &mut VarMap::new()).unwrap();
        assert!(f.has_empty_clause());
    }

    #[test]
    fn scheduling_validation() {
        assert!(SchedulingInstance::new(1, 3, vec![Task { d: 1, r: 2, e: 4 }]).is_err());
        assert!(SchedulingInstance::new(0, 3, vec![]).is_err());
        let big = instance(2, 60, &[(1, 1, 60); 5]);
        assert!(matches!(brute_force_schedule(&big), Err(Error::TooLarge(_))));
    }

    #[test]
    fn scheduling_agrees_with_search() {
        let mut kinds = Vec::new();
        for r in 1..=5 {
            for e in r..=5 {
                for d in 1..=3 {
                    kinds.push((d, r, e));
                }
            }
        }
        let recursive = SchedulingParams { recursion_base: 2, per_time: false };
        let mut checked = 0;
        for m in 1..=2 {
            for a in 0..kinds.len() {
                for b in a..kinds.len() {
                    for c in (b..kinds.len()).step_by(7) {
                        let inst = instance(m, 5, &[kinds[a], kinds[b], kinds[c]]);
                        let expected = brute_force_schedule(&inst).unwrap().is_feasible();
                        assert_eq!(encoded_feasible(&inst, SchedulingParams::default()), expected, "{inst:?}");
                        if checked % 11 == 0 {
                            assert_eq!(encoded_feasible(&inst, recursive), expected, "{inst:?}");
                        }
                        checked += 1;
                    }
                }
            }
        }
        assert!(checked > 5_000);
    }
}
