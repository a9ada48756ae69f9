//! At-most-one and exact cardinality constraints over literals.

use crate::cnf::{Formula, FormulaBuilder, Lit};
use crate::error::{Error, Result};
use crate::varmap::VarMap;

/// Largest request the product encoding hands straight to the pairwise one.
pub const PRODUCT_BASE: usize = 4;

fn check_request(lits: &[Lit]) -> Result<()> {
    let mut sorted = lits.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if let Some(w) = sorted.windows(2).find(|w| w[0].var() == w[1].var()) {
        return Err(Error::InvalidArgument(format!(
            "AMO request contains complementary literals on variable {}",
            w[0].var()
        )));
    }
    Ok(())
}

fn ceil_sqrt(n: usize) -> usize {
    let mut c = (n as f64).sqrt() as usize;
    while c * c < n {
        c += 1;
    }
    while c > 0 && (c - 1) * (c - 1) >= n {
        c -= 1;
    }
    c
}

pub(crate) fn pairwise_into(out: &mut FormulaBuilder, lits: &[Lit]) -> Result<()> {
    for (a, &x) in lits.iter().enumerate() {
        for &y in &lits[a + 1..] {
            out.add([!x, !y])?;
        }
    }
    Ok(())
}

pub(crate) fn product_into(out: &mut FormulaBuilder, pool: &mut VarMap, lits: &[Lit]) -> Result<()> {
    let n = lits.len();
    if n <= PRODUCT_BASE {
        return pairwise_into(out, lits);
    }
    let cols = ceil_sqrt(n);
    let rows = n.div_ceil(cols);
    let row_vars: Vec<Lit> = (0..rows).map(|_| pool.fresh_numbered("pe-row").pos()).collect();
    let col_vars: Vec<Lit> = (0..cols).map(|_| pool.fresh_numbered("pe-col").pos()).collect();
    for (t, &lit) in lits.iter().enumerate() {
        out.add([!lit, row_vars[t / cols]])?;
        out.add([!lit, col_vars[t % cols]])?;
    }
    product_into(out, pool, &row_vars)?;
    product_into(out, pool, &col_vars)
}

/// `(¬a ∨ ¬b)` for every pair of request literals.
pub fn amo_pairwise(lits: &[Lit]) -> Result<Formula> {
    check_request(lits)?;
    let mut out = FormulaBuilder::new();
    pairwise_into(&mut out, lits)?;
    Ok(out.build())
}

/// Chen's product encoding: literals are laid out row by row on a grid with
/// `ceil(sqrt(n))` columns, each literal implies its row and column selector,
/// and at-most-one is imposed recursively on the selectors. Requests of at
/// most [`PRODUCT_BASE`] literals use the pairwise encoding.
pub fn amo_product(lits: &[Lit], pool: &mut VarMap) -> Result<Formula> {
    check_request(lits)?;
    let mut out = FormulaBuilder::new();
    product_into(&mut out, pool, lits)?;
    out.declare_vars(pool.max_index());
    Ok(out.build())
}

pub(crate) fn exactly_k_into(
    out: &mut FormulaBuilder,
    pool: &mut VarMap,
    lits: &[Lit],
    k: usize,
) -> Result<()> {
    let n = lits.len();
    if k > n {
        return Err(Error::InvalidArgument(format!("cardinality {k} exceeds {n} literals")));
    }
    if k == 0 || k == n {
        for &x in lits {
            out.add([if k == 0 { !x } else { x }])?;
        }
        return Ok(());
    }
    // s[i][j]: at least j of the first i literals hold, for 1 <= j <= min(i, k + 1)
    let top = k + 1;
    let mut prev: Vec<Lit> = Vec::new();
    for (idx, &x) in lits.iter().enumerate() {
        let i = idx + 1;
        let width = i.min(top);
        let cur: Vec<Lit> = (0..width).map(|_| pool.fresh_numbered("card").pos()).collect();
        for j in 1..=width {
            let s = cur[j - 1];
            let below = (j <= prev.len()).then(|| prev[j - 1]);
            let diag = (j >= 2).then(|| prev[j - 2]);
            if let Some(b) = below {
                out.add([!b, s])?;
            }
            match diag {
                Some(d) => out.add([!x, !d, s])?,
                None => out.add([!x, s])?,
            }
            match below {
                Some(b) => out.add([!s, b, x])?,
                None => out.add([!s, x])?,
            }
            if let Some(d) = diag {
                match below {
                    Some(b) => out.add([!s, b, d])?,
                    None => out.add([!s, d])?,
                }
            }
        }
        prev = cur;
    }
    out.add([prev[k - 1]])?;
    if prev.len() > k {
        out.add([!prev[k]])?;
    }
    Ok(())
}

/// Exactly `k` of `lits` are true, via a sequential unary counter with
/// `O(n k)` clauses.
pub fn cardinality_equals_k(lits: &[Lit], k: usize, pool: &mut VarMap) -> Result<Formula> {
    check_request(lits)?;
    let mut out = FormulaBuilder::new();
    exactly_k_into(&mut out, pool, lits, k)?;
    out.declare_vars(pool.max_index());
    Ok(out.build())
}
