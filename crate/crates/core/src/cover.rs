//! Clique and biclique coverings, the heuristics that find them, and the
//! covering-based independent-set encodings built from them.

use std::fmt::Write as _;

use crate::amo::product_into;
use crate::cnf::{Formula, FormulaBuilder, Lit};
use crate::error::{Error, Result};
use crate::graph::{interval_rank, intervals, Graph};
use crate::isp::ensure_vertex_vars;
use crate::varmap::VarMap;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CliqueCover {
    pub cliques: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BicliqueCover {
    pub bicliques: Vec<(Vec<u32>, Vec<u32>)>,
}

/// Tracks which edges of a graph are still uncovered.
struct Uncovered {
    n: usize,
    bits: Vec<bool>,
    left: usize,
}

impl Uncovered {
    fn new(g: &Graph) -> Uncovered {
        let n = g.num_vertices();
        let mut bits = vec![false; n * n];
        for (u, v) in g.edges() {
            bits[(u as usize - 1) * n + v as usize - 1] = true;
            bits[(v as usize - 1) * n + u as usize - 1] = true;
        }
        Uncovered { n, bits, left: g.num_edges() }
    }

    fn get(&self, u: u32, v: u32) -> bool {
        self.bits[(u as usize - 1) * self.n + v as usize - 1]
    }

    fn cover(&mut self, u: u32, v: u32) {
        if self.get(u, v) {
            self.bits[(u as usize - 1) * self.n + v as usize - 1] = false;
            self.bits[(v as usize - 1) * self.n + u as usize - 1] = false;
            self.left -= 1;
        }
    }

    fn first(&self) -> Option<(u32, u32)> {
        (1..=self.n as u32)
            .flat_map(|u| (u + 1..=self.n as u32).map(move |v| (u, v)))
            .find(|&(u, v)| self.get(u, v))
    }
}

fn check_vertices(g: &Graph, vs: &[u32]) -> Result<()> {
    let n = g.num_vertices() as u32;
    if let Some(v) = vs.iter().find(|&&v| v == 0 || v > n) {
        return Err(Error::InvalidCover(format!("vertex {v} is not in 1..={n}")));
    }
    let mut sorted = vs.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidCover(format!("repeated vertex in {vs:?}")));
    }
    Ok(())
}

impl CliqueCover {
    /// Every part must be a clique and every edge must lie inside some part.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let mut left = Uncovered::new(g);
        for c in &self.cliques {
            check_vertices(g, c)?;
            if !g.is_clique(c) {
                return Err(Error::InvalidCover(format!("{c:?} is not a clique")));
            }
            for (a, &u) in c.iter().enumerate() {
                for &v in &c[a + 1..] {
                    left.cover(u, v);
                }
            }
        }
        match left.first() {
            Some((u, v)) => Err(Error::InvalidCover(format!("edge {{{u}, {v}}} is not covered"))),
            None => Ok(()),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.cliques {
            out.push('c');
            for v in c {
                let _ = write!(out, " {v}");
            }
            out.push('\n');
        }
        out
    }
}

impl BicliqueCover {
    /// Parts must be disjoint and completely joined, and together they must
    /// cover every edge.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let mut left = Uncovered::new(g);
        for (a, b) in &self.bicliques {
            if a.is_empty() || b.is_empty() {
                return Err(Error::InvalidCover("biclique with an empty side".into()));
            }
            check_vertices(g, a)?;
            check_vertices(g, b)?;
            for &u in a {
                for &v in b {
                    if !g.has_edge(u, v) {
                        return Err(Error::InvalidCover(format!(
                            "{{{u}, {v}}} in biclique {a:?} x {b:?} is not an edge"
                        )));
                    }
                    left.cover(u, v);
                }
            }
        }
        match left.first() {
            Some((u, v)) => Err(Error::InvalidCover(format!("edge {{{u}, {v}}} is not covered"))),
            None => Ok(()),
        }
    }

    /// Sum of `|A| + |B|` over the bicliques.
    pub fn weight(&self) -> usize {
        self.bicliques.iter().map(|(a, b)| a.len() + b.len()).sum()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let join = |vs: &[u32]| vs.iter().map(u32::to_string).collect::<Vec<_>>().join(" ");
        for (a, b) in &self.bicliques {
            let _ = writeln!(out, "b | A: {} | B: {}", join(a), join(b));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cover {
    Clique(CliqueCover),
    Biclique(BicliqueCover),
}

impl Cover {
    pub fn to_text(&self) -> String {
        match self {
            Cover::Clique(c) => c.to_text(),
            Cover::Biclique(b) => b.to_text(),
        }
    }

    /// Parses `c v1 v2 ...` clique lines or `b | A: ... | B: ...` biclique
    /// lines; a file may not mix the two. An empty file is an empty clique
    /// cover.
    pub fn parse(text: &str) -> Result<Cover> {
        let mut cliques = Vec::new();
        let mut bicliques = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line_no = lineno + 1;
            let line = line.trim();
            let nums = |s: &str| -> Result<Vec<u32>> {
                s.split_whitespace()
                    .map(|t| t.parse().map_err(|_| Error::parse(line_no, format!("bad vertex `{t}`"))))
                    .collect()
            };
            if line.is_empty() {
                continue;
            } else if let Some(rest) = line.strip_prefix("b ") {
                let parts: Vec<&str> = rest.split('|').map(str::trim).collect();
                match parts.as_slice() {
                    ["", a, b] => {
                        let a = a.strip_prefix("A:").ok_or_else(|| Error::parse(line_no, "expected `A:`"))?;
                        let b = b.strip_prefix("B:").ok_or_else(|| Error::parse(line_no, "expected `B:`"))?;
                        bicliques.push((nums(a)?, nums(b)?));
                    }
                    _ => return Err(Error::parse(line_no, "expected `b | A: ... | B: ...`")),
                }
            } else if let Some(rest) = line.strip_prefix('c') {
                cliques.push(nums(rest)?);
            } else {
                return Err(Error::parse(line_no, format!("unrecognised line `{line}`")));
            }
        }
        match (cliques.is_empty(), bicliques.is_empty()) {
            (_, true) => Ok(Cover::Clique(CliqueCover { cliques })),
            (true, false) => Ok(Cover::Biclique(BicliqueCover { bicliques })),
            _ => Err(Error::parse(1, "cover mixes clique and biclique lines")),
        }
    }
}

/// Seeds a clique at the first uncovered edge and grows it to a maximal clique,
/// each time adding the common neighbour that covers most uncovered edges
/// (lowest index on ties). Repeats until every edge is covered.
pub fn greedy_clique_cover(g: &Graph) -> CliqueCover {
    let mut left = Uncovered::new(g);
    let mut cliques = Vec::new();
    while let Some((u, v)) = left.first() {
        let mut clique = vec![u, v];
        loop {
            let best = (1..=g.num_vertices() as u32)
                .filter(|&c| !clique.contains(&c) && clique.iter().all(|&m| g.has_edge(c, m)))
                .map(|c| (clique.iter().filter(|&&m| left.get(c, m)).count(), c))
                .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
            match best {
                Some((_, c)) => clique.push(c),
                None => break,
            }
        }
        clique.sort_unstable();
        for (a, &x) in clique.iter().enumerate() {
            for &y in &clique[a + 1..] {
                left.cover(x, y);
            }
        }
        cliques.push(clique);
    }
    CliqueCover { cliques }
}

/// Seeds `(A, B) = ({u}, {v})` at the first uncovered edge, then alternately
/// extends A and B by the vertex joined to the whole other side that covers
/// most uncovered edges (lowest index on ties), while that gain is positive.
pub fn greedy_biclique_cover(g: &Graph) -> BicliqueCover {
    let mut left = Uncovered::new(g);
    let mut bicliques = Vec::new();
    while let Some((u, v)) = left.first() {
        let (mut a, mut b) = (vec![u], vec![v]);
        let mut stuck = 0;
        let mut grow_a = true;
        while stuck < 2 {
            let (side, other) = if grow_a { (&mut a, &b) } else { (&mut b, &a) };
            let best = (1..=g.num_vertices() as u32)
                .filter(|&c| !side.contains(&c) && other.iter().all(|&w| g.has_edge(c, w)))
                .map(|c| (other.iter().filter(|&&w| left.get(c, w)).count(), c))
                .filter(|&(gain, _)| gain > 0)
                .max_by(|x, y| x.0.cmp(&y.0).then(y.1.cmp(&x.1)));
            match best {
                Some((_, c)) => {
                    side.push(c);
                    stuck = 0;
                }
                None => stuck += 1,
            }
            grow_a = !grow_a;
        }
        a.sort_unstable();
        b.sort_unstable();
        for &x in &a {
            for &y in &b {
                left.cover(x, y);
            }
        }
        bicliques.push((a, b));
    }
    BicliqueCover { bicliques }
}

/// Biclique cover of `K_n`: split `1..=n` into a first half of size
/// `ceil(n/2)` and the rest, join them, and recurse on both halves.
pub fn kn_recursive_biclique_cover(n: usize) -> Result<BicliqueCover> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("K_n cover needs n >= 2, got {n}")));
    }
    fn split(vs: &[u32], out: &mut Vec<(Vec<u32>, Vec<u32>)>) {
        if vs.len() < 2 {
            return;
        }
        let (l, r) = vs.split_at(vs.len().div_ceil(2));
        out.push((l.to_vec(), r.to_vec()));
        split(l, out);
        split(r, out);
    }
    let vs: Vec<u32> = (1..=n as u32).collect();
    let mut bicliques = Vec::new();
    split(&vs, &mut bicliques);
    Ok(BicliqueCover { bicliques })
}

/// The cliques `K_{∩k} = {[i, j] : i <= k <= j}` for `2 <= k <= n - 1`, over
/// the vertex numbering of [`Graph::interval`].
pub fn interval_clique_cover(n: u32) -> Result<CliqueCover> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("interval clique cover needs n >= 3, got {n}")));
    }
    let cliques = (2..n)
        .map(|k| {
            intervals(n)
                .filter(|&(i, j)| i <= k && k <= j)
                .map(|(i, j)| interval_rank(n, i, j) as u32 + 1)
                .collect()
        })
        .collect();
    Ok(CliqueCover { cliques })
}

pub(crate) fn cc_isp_into(
    out: &mut FormulaBuilder,
    pool: &mut VarMap,
    cover: &CliqueCover,
    lits: &[Lit],
) -> Result<()> {
    for c in &cover.cliques {
        let members: Vec<Lit> = c.iter().map(|&v| lits[v as usize - 1]).collect();
        product_into(out, pool, &members)?;
    }
    Ok(())
}

pub(crate) fn bc_isp_into(
    out: &mut FormulaBuilder,
    pool: &mut VarMap,
    cover: &BicliqueCover,
    lits: &[Lit],
) -> Result<()> {
    for (a, b) in &cover.bicliques {
        let (a, b) = if (a.len(), a) > (b.len(), b) { (b, a) } else { (a, b) };
        let lit = |v: &u32| lits[*v as usize - 1];
        if a.len() == 1 && b.len() == 1 {
            out.add([!lit(&a[0]), !lit(&b[0])])?;
            continue;
        }
        let side = pool.fresh_numbered("bc").pos();
        for v in a {
            out.add([!lit(v), side])?;
        }
        for w in b {
            out.add([!side, !lit(w)])?;
        }
    }
    Ok(())
}

/// Product-encoded at-most-one over every clique of the cover.
pub fn encode_cc_isp(g: &Graph, cover: &CliqueCover, pool: &mut VarMap) -> Result<Formula> {
    cover.validate(g)?;
    let lits = ensure_vertex_vars(g, pool)?;
    let mut out = FormulaBuilder::new();
    cc_isp_into(&mut out, pool, cover, &lits)?;
    out.declare_vars(pool.max_index());
    Ok(out.build())
}

/// One auxiliary `x_A` per biclique with `(¬x_v ∨ x_A)` for `v ∈ A` and
/// `(¬x_A ∨ ¬x_w)` for `w ∈ B`; a `K_{1,1}` becomes its single direct clause.
/// The smaller side plays the role of `A` (on equal sizes, the side that
/// compares lower).
pub fn encode_bc_isp(g: &Graph, cover: &BicliqueCover, pool: &mut VarMap) -> Result<Formula> {
    cover.validate(g)?;
    let lits = ensure_vertex_vars(g, pool)?;
    let mut out = FormulaBuilder::new();
    bc_isp_into(&mut out, pool, cover, &lits)?;
    out.declare_vars(pool.max_index());
    Ok(out.build())
}
