//! Base variables for graph vertices and the direct independent-set encoding.

use crate::cnf::{Formula, FormulaBuilder, Lit};
use crate::error::Result;
use crate::graph::Graph;
use crate::varmap::{VarMap, VarName};

/// `x(i,j)` for vertices with interval labels, `x(v)` otherwise.
pub fn vertex_name(g: &Graph, v: u32) -> VarName {
    match g.label(v) {
        Some((i, j)) => VarName::new("x", &[i, j]),
        None => VarName::new("x", &[v]),
    }
}

/// Interns one base variable per vertex, in vertex order, and returns their
/// positive literals.
pub fn allocate_vertex_vars(g: &Graph, pool: &mut VarMap) -> Result<Vec<Lit>> {
    (1..=g.num_vertices() as u32)
        .map(|v| Ok(pool.fresh(vertex_name(g, v))?.pos()))
        .collect()
}

/// Base literals for `g`, reusing variables already interned under the vertex
/// names and allocating the rest in vertex order.
pub fn ensure_vertex_vars(g: &Graph, pool: &mut VarMap) -> Result<Vec<Lit>> {
    (1..=g.num_vertices() as u32)
        .map(|v| {
            let name = vertex_name(g, v);
            match pool.get(&name) {
                Some(var) => Ok(var.pos()),
                None => Ok(pool.fresh(name)?.pos()),
            }
        })
        .collect()
}

pub(crate) fn direct_into(out: &mut FormulaBuilder, g: &Graph, lits: &[Lit]) -> Result<()> {
    for (u, v) in g.edges() {
        out.add([!lits[u as usize - 1], !lits[v as usize - 1]])?;
    }
    Ok(())
}

/// One clause `(¬x_u ∨ ¬x_v)` per edge.
pub fn encode_direct_over(g: &Graph, lits: &[Lit]) -> Result<Formula> {
    let mut out = FormulaBuilder::new();
    direct_into(&mut out, g, lits)?;
    for l in lits {
        out.declare_vars(l.var().index());
    }
    Ok(out.build())
}

/// Allocates base variables and emits the direct encoding.
pub fn encode_direct(g: &Graph, pool: &mut VarMap) -> Result<Formula> {
    let lits = allocate_vertex_vars(g, pool)?;
    encode_direct_over(g, &lits)
}
