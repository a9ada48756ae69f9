//! Idealized bounded variable addition: grid products, the replacement step,
//! a greedy re-encoder, and the constructive `3n - 6` at-most-one.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use crate::amo::pairwise_into;
use crate::cnf::{Clause, Formula, FormulaBuilder, Lit, Var};
use crate::error::{Error, Result};
use crate::varmap::VarMap;

/// `L ⋈ Γ = { γ ∪ {ℓ} : ℓ ∈ L, γ ∈ Γ }`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridProduct {
    pub l: Clause,
    pub gamma: Vec<Clause>,
}

impl GridProduct {
    pub fn new(l: impl IntoIterator<Item = Lit>, gamma: Vec<Clause>) -> Result<GridProduct> {
        let l = Clause::new(l).map_err(|e| Error::InvalidGridProduct(e.to_string()))?;
        let gp = GridProduct { l, gamma };
        gp.expand()?;
        Ok(gp)
    }

    /// The `|L|·|Γ|` clauses of the product; errors if one would be
    /// tautological or two would coincide.
    pub fn expand(&self) -> Result<Vec<Clause>> {
        let mut out = Vec::with_capacity(self.l.len() * self.gamma.len());
        let mut seen = HashSet::new();
        for lit in self.l.iter() {
            for g in &self.gamma {
                let c = Clause::new(g.iter().chain([lit]))
                    .map_err(|_| Error::InvalidGridProduct(format!("{g} ∪ {{{lit}}} is tautological")))?;
                if !seen.insert(c.clone()) {
                    return Err(Error::InvalidGridProduct(format!("{c} arises twice")));
                }
                out.push(c);
            }
        }
        Ok(out)
    }

    /// `|L|·|Γ| − |L| − |Γ|`, the size reduction of replacing the product.
    pub fn gain(&self) -> i64 {
        let (l, g) = (self.l.len() as i64, self.gamma.len() as i64);
        l * g - l - g
    }
}

/// One applied replacement, as reported in step logs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BvaStep {
    pub l_len: usize,
    pub gamma_len: usize,
    pub gain: i64,
    pub var: Var,
}

impl fmt::Display for BvaStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L={} Gamma={} gain={} var={}", self.l_len, self.gamma_len, self.gain, self.var)
    }
}

/// Replaces `L ⋈ Γ ⊆ F` by `(¬y ∨ ℓ)` for `ℓ ∈ L` and `(y ∨ γ)` for `γ ∈ Γ`,
/// with `y` fresh from `pool`.
pub fn bva_step(f: &Formula, gp: &GridProduct, pool: &mut VarMap) -> Result<(Formula, BvaStep)> {
    let product = gp.expand()?;
    if let Some(missing) = product.iter().find(|c| !f.contains(c)) {
        return Err(Error::InvalidGridProduct(format!("{missing} is not in the formula")));
    }
    if pool.max_index() < f.num_vars() {
        return Err(Error::InvalidArgument(format!(
            "variable pool ends at {} but the formula uses {}",
            pool.max_index(),
            f.num_vars()
        )));
    }
    let y = pool.fresh_numbered("bva");
    let removed: HashSet<&Clause> = product.iter().collect();
    let mut out = FormulaBuilder::new();
    out.declare_vars(f.num_vars().max(y.index()));
    for c in f.iter().filter(|c| !removed.contains(c)) {
        out.add_clause(c.clone());
    }
    for lit in gp.l.iter() {
        out.add([y.neg(), lit])?;
    }
    for g in &gp.gamma {
        out.add(g.iter().chain([y.pos()]))?;
    }
    let result = out.build();
    let expected = f.len() as i64 - gp.gain();
    assert_eq!(result.len() as i64, expected, "BVA size law violated");
    let step = BvaStep {
        l_len: gp.l.len(),
        gamma_len: gp.gamma.len(),
        gain: gp.gain(),
        var: y,
    };
    Ok((result, step))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BvaPolicy {
    pub max_steps: Option<usize>,
    pub min_gain: i64,
}

pub const STEP_CAP: usize = 1_000_000;

impl Default for BvaPolicy {
    fn default() -> Self {
        BvaPolicy {
            max_steps: None,
            min_gain: 1,
        }
    }
}

/// Greedy grid-product growth from a single literal: start from every clause
/// containing `lit`, then repeatedly add the literal `m` for which most of the
/// current clauses `C` also appear as `C - lit + m`, while the gain improves.
fn grow_from(lit: Lit, clauses: &BTreeSet<Clause>, occurs: &BTreeMap<Lit, Vec<Clause>>) -> Option<GridProduct> {
    let mut l = vec![lit];
    let mut matched: Vec<Clause> = occurs.get(&lit)?.clone();
    let gain = |l: usize, g: usize| (l * g) as i64 - l as i64 - g as i64;
    loop {
        let mut counts: BTreeMap<Lit, usize> = BTreeMap::new();
        for c in &matched {
            // candidates come from the clauses containing the literal of C with the fewest occurrences
            let rest: Vec<Lit> = c.iter().filter(|&x| x != lit).collect();
            let pivot = rest.iter().min_by_key(|x| occurs.get(x).map_or(0, Vec::len));
            let pool: &[Clause] = match pivot {
                Some(p) => occurs.get(p).map_or(&[], Vec::as_slice),
                None => &[],
            };
            for d in pool {
                if d.len() != c.len() {
                    continue;
                }
                let extra: Vec<Lit> = d.iter().filter(|x| !c.contains(*x)).collect();
                if extra.len() != 1 || l.contains(&extra[0]) {
                    continue;
                }
                let m = extra[0];
                if c.contains(!m) || rest.iter().any(|&x| !d.contains(x)) {
                    continue;
                }
                *counts.entry(m).or_default() += 1;
            }
            if rest.is_empty() {
                // unit clause (lit): partners are the other unit clauses
                for d in clauses.iter().filter(|d| d.len() == 1) {
                    let m = d.lits()[0];
                    if m != lit && m != !lit && !l.contains(&m) {
                        *counts.entry(m).or_default() += 1;
                    }
                }
            }
        }
        let current = gain(l.len(), matched.len());
        let best = counts
            .iter()
            .filter(|&(_, &cnt)| gain(l.len() + 1, cnt) > current)
            .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0)));
        let Some((&m, _)) = best else { break };
        matched.retain(|c| {
            let swapped = Clause::new(c.iter().filter(|&x| x != lit).chain([m]));
            swapped.is_ok_and(|s| clauses.contains(&s))
        });
        l.push(m);
    }
    if l.len() < 2 {
        return None;
    }
    let gamma: Vec<Clause> = matched
        .iter()
        .map(|c| Clause::new(c.iter().filter(|&x| x != lit)).expect("subclause of a clause"))
        .collect();
    GridProduct::new(l, gamma).ok()
}

/// The grid product with the largest gain found by growing from each literal
/// (literals in increasing order; first best wins).
pub fn find_grid_product(f: &Formula) -> Option<GridProduct> {
    let clauses: BTreeSet<Clause> = f.iter().cloned().collect();
    let mut occurs: BTreeMap<Lit, Vec<Clause>> = BTreeMap::new();
    for c in f.iter() {
        for lit in c.iter() {
            occurs.entry(lit).or_default().push(c.clone());
        }
    }
    let mut best: Option<GridProduct> = None;
    for &lit in occurs.keys() {
        if let Some(gp) = grow_from(lit, &clauses, &occurs) {
            if best.as_ref().is_none_or(|b| gp.gain() > b.gain()) {
                best = Some(gp);
            }
        }
    }
    best
}

/// Applies greedy BVA steps while the best detected gain reaches
/// `policy.min_gain` and the step budget lasts.
pub fn bva_reencode(f: &Formula, pool: &mut VarMap, policy: BvaPolicy) -> Result<(Formula, Vec<BvaStep>)> {
    let budget = policy.max_steps.unwrap_or(STEP_CAP).min(STEP_CAP);
    let mut current = f.clone();
    let mut log = Vec::new();
    while log.len() < budget {
        let Some(gp) = find_grid_product(&current) else { break };
        if gp.gain() < policy.min_gain {
            break;
        }
        let (next, step) = bva_step(&current, &gp, pool)?;
        current = next;
        log.push(step);
    }
    Ok((current, log))
}

fn amo_bva_into(out: &mut FormulaBuilder, pool: &mut VarMap, lits: &[Lit]) -> Result<()> {
    if lits.len() <= 4 {
        return pairwise_into(out, lits);
    }
    pairwise_into(out, &lits[..3])?;
    let y = pool.fresh_numbered("bva");
    for &x in &lits[..3] {
        out.add([y.neg(), !x])?;
    }
    let mut rest = vec![y.neg()];
    rest.extend_from_slice(&lits[3..]);
    amo_bva_into(out, pool, &rest)
}

/// At-most-one with exactly `3n - 6` clauses: replace the grid product
/// `{¬x1, ¬x2, ¬x3} ⋈ {¬x4, ..., ¬xn}` of the pairwise encoding and recurse
/// on `AMO(¬y, x4, ..., xn)`; `n ∈ {3, 4}` stays pairwise.
pub fn amo_bva_construct(lits: &[Lit], pool: &mut VarMap) -> Result<Formula> {
    if lits.len() < 3 {
        return Err(Error::InvalidArgument(format!("constructive AMO needs n >= 3, got {}", lits.len())));
    }
    let mut out = FormulaBuilder::new();
    amo_bva_into(&mut out, pool, lits)?;
    out.declare_vars(pool.max_index());
    Ok(out.build())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::amo::amo_pairwise;
    use crate::check::check_equisat;
    use crate::graph::Graph;
    use crate::isp::encode_direct;
    use crate::varmap::VarName;
    use proptest::prelude::*;

    fn base(pool: &mut VarMap, n: usize) -> Vec<Lit> {
        (1..=n as u32)
            .map(|v| pool.fresh(VarName::new("x", &[v])).unwrap().pos())
            .collect()
    }

    fn cl(lits: &[i32]) -> Clause {
        Clause::new(lits.iter().map(|&v| Lit::from_dimacs(v).unwrap())).unwrap()
    }

    /// x1 x2 p q r are variables 1..=5.
    fn example() -> GridProduct {
        GridProduct::new(
            [1, 2].map(|v| Lit::from_dimacs(v).unwrap()),
            vec![cl(&[3, 4]), cl(&[4, 5]), cl(&[-3, -5, -4])],
        )
        .unwrap()
    }

    #[test]
    fn example_grid_product() {
        let mut got = example().expand().unwrap();
        got.sort();
        let mut expected = vec![
            cl(&[1, 3, 4]),
            cl(&[1, 4, 5]),
            cl(&[1, -3, -5, -4]),
            cl(&[2, 3, 4]),
            cl(&[2, 4, 5]),
            cl(&[2, -3, -5, -4]),
        ];
        expected.sort();
        assert_eq!(got, expected);
        let single = GridProduct::new([Lit::from_dimacs(1).unwrap()], vec![cl(&[2])]).unwrap();
        assert_eq!(single.expand().unwrap(), vec![cl(&[1, 2])]);
        assert!(GridProduct::new([1, -1].map(|v| Lit::from_dimacs(v).unwrap()), vec![cl(&[2])]).is_err());
        assert!(GridProduct::new([Lit::from_dimacs(1).unwrap()], vec![cl(&[-1, 2])]).is_err());
    }

    #[test]
    fn example_step_matches_the_replacement() {
        let gp = example();
        let f = Formula::from_clauses(gp.expand().unwrap(), 5);
        let mut pool = VarMap::new();
        base(&mut pool, 5);
        let (g, step) = bva_step(&f, &gp, &mut pool).unwrap();
        assert_eq!(step.var, Var::new(6));
        let expected = Formula::from_dimacs_clauses(&[&[-6, 1], &[-6, 2], &[6, 3, 4], &[6, 4, 5], &[6, -3, -5, -4]]).unwrap();
        assert_eq!(g, expected);
        assert!(check_equisat(&f, &g, &(1..=5).map(Var::new).collect::<Vec<_>>()).unwrap().passed());
    }

    #[test]
    fn step_requires_the_product_in_the_formula() {
        let gp = example();
        let f = Formula::from_clauses(gp.expand().unwrap()[1..].to_vec(), 5);
        let mut pool = VarMap::new();
        base(&mut pool, 5);
        assert!(bva_step(&f, &gp, &mut pool).is_err());
        assert!(bva_step(&Formula::from_clauses(gp.expand().unwrap(), 5), &gp, &mut VarMap::new()).is_err());
    }

    #[test]
    fn small_products_may_grow_the_formula() {
        let gp = GridProduct::new([1, 2].map(|v| Lit::from_dimacs(v).unwrap()), vec![cl(&[3])]).unwrap();
        let f = Formula::from_clauses(gp.expand().unwrap(), 3);
        let mut pool = VarMap::new();
        base(&mut pool, 3);
        let (g, step) = bva_step(&f, &gp, &mut pool).unwrap();
        assert_eq!((f.len(), g.len(), step.gain), (2, 3, -1));
    }

    #[test]
    fn resolving_on_the_new_variable_restores_the_product() {
        let gp = example();
        let f = Formula::from_clauses(gp.expand().unwrap(), 5);
        let mut pool = VarMap::new();
        base(&mut pool, 5);
        let (g, step) = bva_step(&f, &gp, &mut pool).unwrap();
        let y = step.var;
        let pos: Vec<&Clause> = g.iter().filter(|c| c.contains(y.pos())).collect();
        let neg: Vec<&Clause> = g.iter().filter(|c| c.contains(y.neg())).collect();
        let mut resolvents: Vec<Clause> = pos
            .iter()
            .flat_map(|p| neg.iter().map(move |n| (p, n)))
            .map(|(p, n)| {
                Clause::new(p.iter().chain(n.iter()).filter(|l| l.var() != y)).unwrap()
            })
            .collect();
        resolvents.sort();
        let mut product = gp.expand().unwrap();
        product.sort();
        assert_eq!(resolvents, product);
    }

    #[test]
    fn reencode_biclique_pairwise() {
        let g = Graph::complete_bipartite(3, 3);
        let mut pool = VarMap::new();
        let f = encode_direct(&g, &mut pool).unwrap();
        assert_eq!(f.len(), 9);
        let (h, log) = bva_reencode(&f, &mut pool, BvaPolicy::default()).unwrap();
        assert_eq!(h.len(), 6);
        assert_eq!(log.len(), 1);
        assert_eq!((log[0].l_len, log[0].gamma_len, log[0].gain), (3, 3, 3));
        let shared: Vec<Var> = (1..=6).map(Var::new).collect();
        assert!(check_equisat(&f, &h, &shared).unwrap().passed());
    }

    #[test]
    fn reencode_fixpoint_and_random_graph() {
        let f = Formula::from_dimacs_clauses(&[&[1, 2], &[-1, 3]]).unwrap();
        let mut pool = VarMap::new();
        base(&mut pool, 3);
        let (h, log) = bva_reencode(&f, &mut pool, BvaPolicy::default()).unwrap();
        assert!(log.is_empty());
        assert_eq!(h, f);

        let g = Graph::random(24, 0.5, 11).unwrap();
        let mut pool = VarMap::new();
        let f = encode_direct(&g, &mut pool).unwrap();
        let (h, log) = bva_reencode(&f, &mut pool, BvaPolicy::default()).unwrap();
        assert!(h.len() < f.len(), "{} vs {}", h.len(), f.len());
        let mut size = f.len() as i64;
        for step in &log {
            assert!(step.gain >= 1);
            size -= step.gain;
        }
        assert_eq!(size, h.len() as i64);
    }

    #[test]
    fn max_steps_limits_the_rewrite() {
        let g = Graph::complete_bipartite(4, 4);
        let mut pool = VarMap::new();
        let f = encode_direct(&g, &mut pool).unwrap();
        let policy = BvaPolicy { max_steps: Some(0), min_gain: 1 };
        let (h, log) = bva_reencode(&f, &mut pool, policy).unwrap();
        assert!(log.is_empty());
        assert_eq!(h, f);
    }

    #[test]
    fn amo_construct_counts_and_semantics() {
        for n in 3..=200 {
            let mut pool = VarMap::new();
            let xs = base(&mut pool, n);
            assert_eq!(amo_bva_construct(&xs, &mut pool).unwrap().len(), 3 * n - 6);
        }
        for n in 3..=10 {
            let mut pool = VarMap::new();
            let xs = base(&mut pool, n);
            let f = amo_bva_construct(&xs, &mut pool).unwrap();
            let vars: Vec<Var> = xs.iter().map(|l| l.var()).collect();
            assert!(check_equisat(&amo_pairwise(&xs).unwrap(), &f, &vars).unwrap().passed());
        }
        assert!(amo_bva_construct(&base(&mut VarMap::new(), 2), &mut VarMap::new()).is_err());
    }

    fn arb_formula() -> impl Strategy<Value = Formula> {
        let clause = prop::collection::btree_map(1u32..=10, any::<bool>(), 1..4).prop_map(|m| {
            Clause::new(m.into_iter().map(|(v, b)| Lit::new(Var::new(v), b))).unwrap()
        });
        prop::collection::vec(clause, 0..30).prop_map(|cs| Formula::from_clauses(cs, 10))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn reencoding_preserves_projection(f in arb_formula()) {
            let mut pool = VarMap::new();
            for v in 1..=10 {
                pool.fresh(VarName::new("x", &[v])).unwrap();
            }
            let policy = BvaPolicy { max_steps: None, min_gain: 0 };
            let (g, log) = bva_reencode(&f, &mut pool, BvaPolicy { max_steps: Some(50), ..policy }).unwrap();
            let shared: Vec<Var> = (1..=10).map(Var::new).collect();
            prop_assert!(check_equisat(&f, &g, &shared).unwrap().passed());
            let total: i64 = log.iter().map(|s| s.gain).sum();
            prop_assert_eq!(f.len() as i64 - total, g.len() as i64);
        }
    }
}
