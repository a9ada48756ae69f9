//! Independent-set encodings for the complete interval graphs `I_n` and
//! `I0_n`: the interval propagation trick, the recursive block encoder and the
//! one-level block encoder.

use std::fmt;

use crate::blocks::{BlockParams, EdgeClass};
use crate::cnf::{Clause, Formula, FormulaBuilder, Lit, Var};
use crate::error::{Error, Result};
use crate::graph::{interval_count, interval_rank, intervals, IntervalVariant};
use crate::varmap::{Scope, VarMap, VarName};

/// One literal per interval `[i, j]` of `[1, n]`, stored by lexicographic rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalLits {
    n: u32,
    lits: Vec<Lit>,
}

impl IntervalLits {
    pub fn new(n: u32, lits: Vec<Lit>) -> Result<IntervalLits> {
        if lits.len() != interval_count(n) {
            return Err(Error::InvalidArgument(format!(
                "{} literals for the {} intervals of [1, {n}]",
                lits.len(),
                interval_count(n)
            )));
        }
        Ok(IntervalLits { n, lits })
    }

    /// `x(i,j)` for every interval, reusing names already in the pool. The
    /// order matches the vertex order of [`crate::Graph::interval`].
    pub fn allocate(n: u32, pool: &mut VarMap) -> Result<IntervalLits> {
        let lits = intervals(n)
            .map(|(i, j)| {
                let name = VarName::new("x", &[i, j]);
                Ok(match pool.get(&name) {
                    Some(v) => v.pos(),
                    None => pool.fresh(name)?.pos(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(IntervalLits { n, lits })
    }

    fn from_fn(n: u32, mut f: impl FnMut(u32, u32) -> Lit) -> IntervalLits {
        IntervalLits {
            n,
            lits: intervals(n).map(|(i, j)| f(i, j)).collect(),
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn get(&self, i: u32, j: u32) -> Lit {
        self.lits[interval_rank(self.n, i, j)]
    }

    pub fn lits(&self) -> &[Lit] {
        &self.lits
    }

    pub fn vars(&self) -> Vec<Var> {
        self.lits.iter().map(|l| l.var()).collect()
    }

    /// The instance on the listed positions (increasing): local `[a, b]` is
    /// the original `[positions[a-1], positions[b-1]]`.
    pub fn induced(&self, positions: &[u32]) -> IntervalLits {
        debug_assert!(positions.windows(2).all(|w| w[0] < w[1]));
        IntervalLits::from_fn(positions.len() as u32, |a, b| {
            self.get(positions[a as usize - 1], positions[b as usize - 1])
        })
    }
}

/// Which group of clauses a clause of the block encoders belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClauseFamily {
    Direct,
    XEdges,
    YDefinition,
    YEdges,
    YOverBlock,
    SDefinition,
    SConflict,
    FDefinition,
    FConflict,
    Propagation,
    SPropagation,
    FPropagation,
    Middle,
}

impl ClauseFamily {
    /// Clauses that only define auxiliary variables and forbid nothing on
    /// their own.
    pub fn is_definition(self) -> bool {
        matches!(
            self,
            ClauseFamily::YDefinition | ClauseFamily::SDefinition | ClauseFamily::FDefinition | ClauseFamily::Propagation
        )
    }

    /// The edge class whose conflicts this family is responsible for.
    pub fn handles(self) -> Option<EdgeClass> {
        match self {
            ClauseFamily::XEdges => Some(EdgeClass::X),
            ClauseFamily::YEdges | ClauseFamily::YOverBlock => Some(EdgeClass::Y),
            ClauseFamily::SConflict | ClauseFamily::SPropagation => Some(EdgeClass::S),
            ClauseFamily::FConflict | ClauseFamily::FPropagation => Some(EdgeClass::F),
            ClauseFamily::Middle => Some(EdgeClass::M),
            _ => None,
        }
    }
}

impl fmt::Display for ClauseFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Clause collector that optionally remembers the top-level family of each
/// clause. Nested encodings inherit the family of the call that spawned them.
struct Sink {
    out: FormulaBuilder,
    tags: Option<Vec<(ClauseFamily, Clause)>>,
    family: ClauseFamily,
    depth: u32,
}

impl Sink {
    fn new(tagged: bool) -> Sink {
        Sink {
            out: FormulaBuilder::new(),
            tags: tagged.then(Vec::new),
            family: ClauseFamily::Direct,
            depth: 0,
        }
    }

    fn add(&mut self, lits: impl IntoIterator<Item = Lit>) -> Result<()> {
        let clause = Clause::new(lits)?;
        if let Some(tags) = &mut self.tags {
            tags.push((self.family, clause.clone()));
        }
        self.out.add_clause(clause);
        Ok(())
    }

    fn family(&mut self, family: ClauseFamily) {
        if self.depth == 0 {
            self.family = family;
        }
    }

    fn finish(mut self, pool: &VarMap) -> Attributed {
        self.out.declare_vars(pool.max_index());
        Attributed {
            formula: self.out.build(),
            clauses: self.tags.unwrap_or_default(),
        }
    }
}

/// An encoding together with the family of every emitted clause (before
/// deduplication).
#[derive(Clone, Debug)]
pub struct Attributed {
    pub formula: Formula,
    pub clauses: Vec<(ClauseFamily, Clause)>,
}

impl Attributed {
    /// The clauses whose family satisfies `keep`.
    pub fn select(&self, keep: impl Fn(ClauseFamily) -> bool) -> Formula {
        Formula::from_clauses(
            self.clauses.iter().filter(|(f, _)| keep(*f)).map(|(_, c)| c.clone()),
            self.formula.num_vars(),
        )
    }
}

fn direct_into(sink: &mut Sink, x: &IntervalLits, variant: IntervalVariant) -> Result<()> {
    let n = x.n();
    for (i1, j1) in intervals(n) {
        for i2 in i1..=n {
            if !variant.reaches(i2, j1) {
                break;
            }
            let from = if i2 == i1 { j1 + 1 } else { i2 + 1 };
            for j2 in from..=n {
                sink.add([!x.get(i1, j1), !x.get(i2, j2)])?;
            }
        }
    }
    Ok(())
}

/// `(¬x_a ∨ ¬x_b)` for every edge of `I_n` (or `I0_n`).
pub fn encode_interval_direct(x: &IntervalLits, variant: IntervalVariant) -> Result<Formula> {
    let mut sink = Sink::new(false);
    direct_into(&mut sink, x, variant)?;
    for l in x.lits() {
        sink.out.declare_vars(l.var().index());
    }
    Ok(sink.out.build())
}

/// Variables `x(i,j)`, `t(ℓ)` and `z(i,j)` of the interval propagation trick.
#[derive(Clone, Debug)]
pub struct IptInstance {
    x: IntervalLits,
    t: Vec<Lit>,
    z: IntervalLits,
}

impl IptInstance {
    /// Standalone instance on `[1, n]` with root-scoped names.
    pub fn new(n: u32, pool: &mut VarMap) -> Result<IptInstance> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!("propagation needs n >= 2, got {n}")));
        }
        let x = IntervalLits::allocate(n, pool)?;
        IptInstance::over(x, pool, &Scope::root())
    }

    /// Fresh `t` and `z` variables for existing interval literals.
    pub fn over(x: IntervalLits, pool: &mut VarMap, scope: &Scope) -> Result<IptInstance> {
        let n = x.n();
        if n < 2 {
            return Err(Error::InvalidArgument(format!("propagation needs n >= 2, got {n}")));
        }
        let t = (1..=n)
            .map(|l| Ok(pool.fresh(VarName::new("t", &[l]).scoped(scope))?.pos()))
            .collect::<Result<Vec<_>>>()?;
        let z = intervals(n)
            .map(|(i, j)| Ok(pool.fresh(VarName::new("z", &[i, j]).scoped(scope))?.pos()))
            .collect::<Result<Vec<_>>>()?;
        Ok(IptInstance {
            x,
            t,
            z: IntervalLits { n, lits: z },
        })
    }

    pub fn n(&self) -> u32 {
        self.x.n()
    }

    pub fn x(&self, i: u32, j: u32) -> Lit {
        self.x.get(i, j)
    }

    pub fn t(&self, l: u32) -> Lit {
        self.t[l as usize - 1]
    }

    pub fn z(&self, i: u32, j: u32) -> Lit {
        self.z.get(i, j)
    }

    pub fn x_vars(&self) -> Vec<Var> {
        self.x.vars()
    }

    pub fn t_vars(&self) -> Vec<Var> {
        self.t.iter().map(|l| l.var()).collect()
    }

    pub fn z_vars(&self) -> Vec<Var> {
        self.z.vars()
    }
}

fn coverage_into(sink: &mut Sink, inst: &IptInstance) -> Result<()> {
    let n = inst.n();
    for l in 1..=n {
        let covering = intervals(n).filter(|&(i, j)| i <= l && l <= j).map(|(i, j)| inst.x(i, j));
        sink.add(std::iter::once(!inst.t(l)).chain(covering))?;
    }
    Ok(())
}

fn ipt_into(sink: &mut Sink, inst: &IptInstance) -> Result<()> {
    let n = inst.n();
    coverage_into(sink, inst)?;
    for (i, j) in intervals(n) {
        sink.add([!inst.x(i, j), inst.z(i, j)])?;
        if j == i + 1 {
            sink.add([!inst.z(i, j), inst.t(i)])?;
            sink.add([!inst.z(i, j), inst.t(j)])?;
        } else {
            sink.add([!inst.z(i, j), inst.z(i + 1, j)])?;
            sink.add([!inst.z(i, j), inst.z(i, j - 1)])?;
        }
        let mut widen = vec![!inst.z(i, j), inst.x(i, j)];
        if i > 1 {
            widen.push(inst.z(i - 1, j));
        }
        if j < n {
            widen.push(inst.z(i, j + 1));
        }
        sink.add(widen)?;
    }
    Ok(())
}

/// The naive formula: `t_ℓ` implies a covering interval, and every interval
/// implies `t_ℓ` for each of its positions.
pub fn encode_nip(inst: &IptInstance) -> Result<Formula> {
    let mut sink = Sink::new(false);
    coverage_into(&mut sink, inst)?;
    for (i, j) in intervals(inst.n()) {
        for l in i..=j {
            sink.add([!inst.x(i, j), inst.t(l)])?;
        }
    }
    Ok(sink.out.build())
}

/// The coverage clauses plus the `z` ladder: `O(n²)` clauses with the same
/// meaning for `t` as [`encode_nip`].
pub fn encode_ipt(inst: &IptInstance) -> Result<Formula> {
    let mut sink = Sink::new(false);
    ipt_into(&mut sink, inst)?;
    Ok(sink.out.build())
}

pub const DEFAULT_RECURSION_BASE: u32 = 32;

/// `max(2, ⌊lg n⌋)`.
pub fn default_block_count(n: u32) -> u32 {
    if n == 0 {
        return 2;
    }
    (31 - n.leading_zeros()).max(2)
}

/// `⌈n^(2/3)⌉`, computed exactly.
pub fn block83_count(n: u32) -> u32 {
    let sq = n as u64 * n as u64;
    let mut k = (sq as f64).cbrt().floor() as u64;
    while k * k * k < sq {
        k += 1;
    }
    while k > 0 && (k - 1).pow(3) >= sq {
        k -= 1;
    }
    k as u32
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RecursiveParams {
    pub variant: IntervalVariant,
    /// Block count at the top level only; nested instances use the default.
    pub k: Option<u32>,
    /// Instances with at most this many positions use the direct encoding.
    pub recursion_base: u32,
}

impl RecursiveParams {
    pub fn new(variant: IntervalVariant) -> RecursiveParams {
        RecursiveParams {
            variant,
            k: None,
            recursion_base: DEFAULT_RECURSION_BASE,
        }
    }

    pub fn with_k(mut self, k: u32) -> RecursiveParams {
        self.k = Some(k);
        self
    }

    pub fn with_recursion_base(mut self, base: u32) -> RecursiveParams {
        self.recursion_base = base;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.recursion_base < 2 {
            return Err(Error::InvalidArgument(format!("recursion base must be >= 2, got {}", self.recursion_base)));
        }
        check_k(self.k)
    }
}

fn check_k(k: Option<u32>) -> Result<()> {
    match k {
        Some(k) if k < 2 => Err(Error::InvalidArgument(format!("block count must be >= 2, got {k}"))),
        _ => Ok(()),
    }
}

/// Block layout for one recursive call, or `None` when the direct encoding is
/// used: small instances, and layouts where a pair of blocks would not be
/// smaller than the instance itself.
fn recursive_layout(n: u32, k: Option<u32>, base: u32) -> Option<BlockParams> {
    if n <= base {
        return None;
    }
    let p = BlockParams::with_count(n, k.unwrap_or_else(|| default_block_count(n))).ok()?;
    (p.k >= 2 && 2 * p.b < n).then_some(p)
}

fn positions(p: &BlockParams, blocks: &[u32]) -> Vec<u32> {
    blocks
        .iter()
        .flat_map(|&d| {
            let (s, e) = p.range(d);
            s..=e
        })
        .collect()
}

/// `y(ℓ,r)` for block pairs `ℓ < r`, defined from the intervals going from
/// block `ℓ` to block `r`, as an instance on `k` positions.
fn y_layer(sink: &mut Sink, x: &IntervalLits, p: &BlockParams, pool: &mut VarMap, scope: &Scope) -> Result<IntervalLits> {
    sink.family(ClauseFamily::YDefinition);
    let lits = intervals(p.k)
        .map(|(l, r)| Ok(pool.fresh(VarName::new("y", &[l, r]).scoped(scope))?.pos()))
        .collect::<Result<Vec<_>>>()?;
    let y = IntervalLits::new(p.k, lits)?;
    let mut members: Vec<Vec<Lit>> = vec![Vec::new(); interval_count(p.k)];
    for (i, j) in intervals(x.n()) {
        let (l, r) = (p.block(i), p.block(j));
        if l < r {
            sink.add([!x.get(i, j), y.get(l, r)])?;
            members[interval_rank(p.k, l, r)].push(x.get(i, j));
        }
    }
    for ((l, r), xs) in intervals(p.k).zip(members) {
        sink.add(std::iter::once(!y.get(l, r)).chain(xs))?;
    }
    Ok(y)
}

/// The `s`, `f`, `t` and `m` machinery shared by both block encoders, plus
/// the conflicts between `y(ℓ,r)` and intervals inside a block `ℓ < d < r`.
fn boundary_into(
    sink: &mut Sink,
    x: &IntervalLits,
    y: &IntervalLits,
    variant: IntervalVariant,
    p: &BlockParams,
    pool: &mut VarMap,
    scope: &Scope,
) -> Result<()> {
    let n = x.n();
    let k = p.k;
    let strict = variant == IntervalVariant::HalfOpen;
    let blk = |i: u32| p.block(i);

    // s[i-1][r - B(i) - 1] and f[j-1][ℓ - 1]
    sink.family(ClauseFamily::SDefinition);
    let mut s: Vec<Vec<Lit>> = Vec::with_capacity(n as usize);
    for i in 1..=n {
        let mut row = Vec::new();
        for r in blk(i) + 1..=k {
            let var = pool.fresh(VarName::new("s", &[i, r]).scoped(scope))?;
            let (first, last) = p.range(r);
            let ends: Vec<Lit> = (first.max(i + 1)..=last).map(|j| x.get(i, j)).collect();
            for &xl in &ends {
                sink.add([!xl, var.pos()])?;
            }
            sink.add(std::iter::once(var.neg()).chain(ends))?;
            row.push(var.pos());
        }
        s.push(row);
    }
    let s_of = |i: u32, r: u32| s[i as usize - 1][(r - blk(i) - 1) as usize];

    sink.family(ClauseFamily::FDefinition);
    let mut f: Vec<Vec<Lit>> = Vec::with_capacity(n as usize);
    for j in 1..=n {
        let mut row = Vec::new();
        for l in 1..blk(j) {
            let var = pool.fresh(VarName::new("f", &[l, j]).scoped(scope))?;
            let (first, last) = p.range(l);
            let starts: Vec<Lit> = (first..=last.min(j - 1)).map(|i| x.get(i, j)).collect();
            for &xl in &starts {
                sink.add([!xl, var.pos()])?;
            }
            sink.add(std::iter::once(var.neg()).chain(starts))?;
            row.push(var.pos());
        }
        f.push(row);
    }
    let f_of = |l: u32, j: u32| f[j as usize - 1][l as usize - 1];

    sink.family(ClauseFamily::SConflict);
    for d in 1..=k {
        let (first, last) = p.range(d);
        for i1 in first..=last {
            for i2 in i1..=last {
                for r1 in d + 1..=k {
                    for r2 in d + 1..=k {
                        if r1 != r2 && (i1 < i2 || r1 < r2) {
                            sink.add([!s_of(i1, r1), !s_of(i2, r2)])?;
                        }
                    }
                }
            }
        }
    }

    sink.family(ClauseFamily::FConflict);
    for d in 1..=k {
        let (first, last) = p.range(d);
        for j1 in first..=last {
            for j2 in j1..=last {
                for l1 in 1..d {
                    for l2 in 1..d {
                        if l1 != l2 && (j1 < j2 || l1 < l2) {
                            sink.add([!f_of(l1, j1), !f_of(l2, j2)])?;
                        }
                    }
                }
            }
        }
    }

    for d in 1..=k {
        let (first, last) = p.range(d);
        if last == first {
            continue;
        }
        let inside: Vec<u32> = (first..=last).collect();
        sink.family(ClauseFamily::Propagation);
        let ipt = IptInstance::over(x.induced(&inside), pool, &scope.child(&format!("ipt{d}")))?;
        ipt_into(sink, &ipt)?;
        let t = |l: u32| ipt.t(l - first + 1);

        // every interval inside the block covers a position before its last
        sink.family(ClauseFamily::YOverBlock);
        for l in 1..d {
            for r in d + 1..=k {
                for pos in first..last {
                    sink.add([!t(pos), !y.get(l, r)])?;
                }
            }
        }

        sink.family(ClauseFamily::SPropagation);
        for i in first..=last {
            for l in (if strict { i + 1 } else { i })..=last {
                for r in d + 1..=k {
                    sink.add([!t(l), !s_of(i, r)])?;
                }
            }
        }
        sink.family(ClauseFamily::FPropagation);
        for j in first..=last {
            let upto = if strict { j.saturating_sub(1) } else { j };
            for l in first..=upto {
                for lb in 1..d {
                    sink.add([!t(l), !f_of(lb, j)])?;
                }
            }
        }
    }

    sink.family(ClauseFamily::Middle);
    for d in 2..k {
        let (first, last) = p.range(d);
        for j1 in first..=last {
            for i2 in first..=last {
                if i2 > j1 || (strict && i2 == j1) {
                    continue;
                }
                for l in 1..d {
                    for r in d + 1..=k {
                        sink.add([!f_of(l, j1), !s_of(i2, r)])?;
                    }
                }
            }
        }
    }
    Ok(())
}

fn recursive_into(
    sink: &mut Sink,
    x: &IntervalLits,
    variant: IntervalVariant,
    k: Option<u32>,
    base: u32,
    pool: &mut VarMap,
    scope: &Scope,
) -> Result<()> {
    let Some(p) = recursive_layout(x.n(), k, base) else {
        sink.family(ClauseFamily::Direct);
        return direct_into(sink, x, variant);
    };

    sink.family(ClauseFamily::XEdges);
    sink.depth += 1;
    for l in 1..=p.k {
        for r in l..=p.k {
            let (pos, name) = if l == r {
                (positions(&p, &[l]), format!("x{l}"))
            } else {
                (positions(&p, &[l, r]), format!("x{l}-{r}"))
            };
            if pos.len() >= 2 {
                recursive_into(sink, &x.induced(&pos), variant, None, base, pool, &scope.child(&name))?;
            }
        }
    }
    sink.depth -= 1;

    let y = y_layer(sink, x, &p, pool, scope)?;
    sink.family(ClauseFamily::YEdges);
    sink.depth += 1;
    recursive_into(sink, &y, IntervalVariant::HalfOpen, None, base, pool, &scope.child("y"))?;
    sink.depth -= 1;

    boundary_into(sink, x, &y, variant, &p, pool, scope)
}

/// Recursive block-decomposition encoding of the independent-set property
/// over the given interval literals.
pub fn encode_interval_isp_recursive(x: &IntervalLits, params: RecursiveParams, pool: &mut VarMap) -> Result<Formula> {
    encode_interval_isp_recursive_in(x, params, pool, &Scope::root())
}

/// As [`encode_interval_isp_recursive`], with auxiliary names under `scope` so
/// several instances can share one pool.
pub fn encode_interval_isp_recursive_in(
    x: &IntervalLits,
    params: RecursiveParams,
    pool: &mut VarMap,
    scope: &Scope,
) -> Result<Formula> {
    Ok(attribute_recursive_inner(x, params, pool, scope, false)?.formula)
}

/// [`encode_interval_isp_recursive`] with every clause tagged by the top-level
/// family that produced it.
pub fn attribute_recursive(x: &IntervalLits, params: RecursiveParams, pool: &mut VarMap) -> Result<Attributed> {
    attribute_recursive_inner(x, params, pool, &Scope::root(), true)
}

fn attribute_recursive_inner(
    x: &IntervalLits,
    params: RecursiveParams,
    pool: &mut VarMap,
    scope: &Scope,
    tagged: bool,
) -> Result<Attributed> {
    params.validate()?;
    let mut sink = Sink::new(tagged);
    recursive_into(&mut sink, x, params.variant, params.k, params.recursion_base, pool, scope)?;
    Ok(sink.finish(pool))
}

/// Smallest instance for which the one-level encoder splits into blocks by
/// default.
pub const BLOCK83_MIN_N: u32 = 8;

fn block83_into(
    sink: &mut Sink,
    x: &IntervalLits,
    variant: IntervalVariant,
    k: Option<u32>,
    pool: &mut VarMap,
    scope: &Scope,
) -> Result<()> {
    let n = x.n();
    let layout = match k {
        Some(k) => BlockParams::with_count(n.max(1), k).ok(),
        None if n >= BLOCK83_MIN_N => BlockParams::with_count(n, block83_count(n)).ok(),
        None => None,
    };
    let Some(p) = layout.filter(|p| p.k >= 2) else {
        sink.family(ClauseFamily::Direct);
        return direct_into(sink, x, variant);
    };

    sink.family(ClauseFamily::XEdges);
    for l in 1..=p.k {
        for r in l..=p.k {
            let group: Vec<(u32, u32)> = intervals(n).filter(|&(i, j)| p.block(i) == l && p.block(j) == r).collect();
            for (a, &u) in group.iter().enumerate() {
                for &v in &group[a + 1..] {
                    if variant.adjacent(u, v) {
                        sink.add([!x.get(u.0, u.1), !x.get(v.0, v.1)])?;
                    }
                }
            }
        }
    }

    let y = y_layer(sink, x, &p, pool, scope)?;
    sink.family(ClauseFamily::YEdges);
    direct_into(sink, &y, IntervalVariant::HalfOpen)?;

    boundary_into(sink, x, &y, variant, &p, pool, scope)
}

/// One-level block encoding with `k = ⌈n^(2/3)⌉` blocks (or `k` when given):
/// direct clauses for x- and y-edges, the shared boundary machinery for the
/// rest. Without an explicit `k`, instances below [`BLOCK83_MIN_N`] are
/// encoded directly.
pub fn encode_interval_isp_block83(
    x: &IntervalLits,
    variant: IntervalVariant,
    k: Option<u32>,
    pool: &mut VarMap,
) -> Result<Formula> {
    encode_interval_isp_block83_in(x, variant, k, pool, &Scope::root())
}

pub fn encode_interval_isp_block83_in(
    x: &IntervalLits,
    variant: IntervalVariant,
    k: Option<u32>,
    pool: &mut VarMap,
    scope: &Scope,
) -> Result<Formula> {
    check_k(k)?;
    let mut sink = Sink::new(false);
    block83_into(&mut sink, x, variant, k, pool, scope)?;
    Ok(sink.finish(pool).formula)
}
