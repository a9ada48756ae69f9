//! Simple undirected graphs on vertices `1..=n`, the complete interval graph
//! families, and a line-oriented text format.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Which intersections make two intervals adjacent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IntervalVariant {
    /// `I_n`: adjacent when the intervals share at least one position.
    Closed,
    /// `I0_n`: adjacent when they share at least two positions, i.e. when the
    /// half-open intervals `[i, j)` intersect.
    HalfOpen,
}

impl IntervalVariant {
    pub fn min_overlap(self) -> u32 {
        match self {
            IntervalVariant::Closed => 1,
            IntervalVariant::HalfOpen => 2,
        }
    }

    pub fn adjacent(self, a: (u32, u32), b: (u32, u32)) -> bool {
        let lo = a.0.max(b.0);
        let hi = a.1.min(b.1);
        hi + 1 >= lo + self.min_overlap()
    }

    /// `i2 <= j1` for the closed variant, `i2 < j1` for the half-open one.
    pub fn reaches(self, i2: u32, j1: u32) -> bool {
        match self {
            IntervalVariant::Closed => i2 <= j1,
            IntervalVariant::HalfOpen => i2 < j1,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            IntervalVariant::Closed => "I",
            IntervalVariant::HalfOpen => "I0",
        }
    }

    pub fn parse(text: &str) -> Option<IntervalVariant> {
        match text {
            "I" => Some(IntervalVariant::Closed),
            "I0" => Some(IntervalVariant::HalfOpen),
            _ => None,
        }
    }
}

/// Number of intervals `[i, j]` with `1 <= i < j <= n`.
pub fn interval_count(n: u32) -> usize {
    let n = n as usize;
    n * n.saturating_sub(1) / 2
}

/// 0-based lexicographic rank of `[i, j]` among the intervals of `[1, n]`.
pub fn interval_rank(n: u32, i: u32, j: u32) -> usize {
    debug_assert!(1 <= i && i < j && j <= n);
    let (n, i, j) = (n as usize, i as usize, j as usize);
    // intervals starting before i: sum_{a<i} (n - a)
    (i - 1) * n - (i - 1) * i / 2 + (j - i - 1)
}

/// All intervals of `[1, n]` in lexicographic order.
pub fn intervals(n: u32) -> impl Iterator<Item = (u32, u32)> {
    (1..=n).flat_map(move |i| (i + 1..=n).map(move |j| (i, j)))
}

/// `|E(I_n)|` (or `|E(I0_n)|`) by counting, without building the graph.
pub fn interval_edge_count(n: u32, variant: IntervalVariant) -> u64 {
    let mut total = 0u64;
    for (i1, j1) in intervals(n) {
        // later intervals [i2, j2] (lexicographically) that reach [i1, j1]
        for i2 in i1..=n {
            if !variant.reaches(i2, j1) {
                break;
            }
            let from = if i2 == i1 { j1 + 1 } else { i2 + 1 };
            total += (n + 1).saturating_sub(from) as u64;
        }
    }
    total
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IntervalFamily {
    pub n: u32,
    pub variant: IntervalVariant,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    words: usize,
    adj: Vec<u64>,
    edges: usize,
    labels: Option<Vec<(u32, u32)>>,
    family: Option<IntervalFamily>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Graph {
        let words = n.div_ceil(64);
        Graph {
            n,
            words,
            adj: vec![0; n * words],
            edges: 0,
            labels: None,
            family: None,
        }
    }

    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Result<Graph> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for u in 1..=n as u32 {
            for v in u + 1..=n as u32 {
                g.insert(u, v);
            }
        }
        g
    }

    /// `K_{a,b}` with parts `1..=a` and `a+1..=a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        let mut g = Graph::new(a + b);
        for u in 1..=a as u32 {
            for v in a as u32 + 1..=(a + b) as u32 {
                g.insert(u, v);
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Graph {
        let mut g = Graph::new(n);
        if n >= 3 {
            for u in 1..=n as u32 {
                g.insert(u, u % n as u32 + 1);
            }
        } else if n == 2 {
            g.insert(1, 2);
        }
        g
    }

    /// Outer 5-cycle on 1..=5, inner pentagram on 6..=10, spokes `v -- v+5`.
    pub fn petersen() -> Graph {
        let mut g = Graph::new(10);
        for v in 0..5u32 {
            g.insert(v + 1, (v + 1) % 5 + 1);
            g.insert(v + 1, v + 6);
            g.insert(v + 6, (v + 2) % 5 + 6);
        }
        g
    }

    /// Erdős–Rényi `G(n, p)`; pairs are drawn in lexicographic order from a
    /// ChaCha8 stream seeded with `seed`.
    pub fn random(n: usize, p: f64, seed: u64) -> Result<Graph> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidArgument(format!("edge probability {p} not in [0, 1]")));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut g = Graph::new(n);
        for u in 1..=n as u32 {
            for v in u + 1..=n as u32 {
                if rng.gen_bool(p) {
                    g.insert(u, v);
                }
            }
        }
        Ok(g)
    }

    /// The complete interval graph over `[1, n]`: one vertex per interval in
    /// lexicographic order, labelled with its endpoints.
    pub fn interval(n: u32, variant: IntervalVariant) -> Result<Graph> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!("interval graphs need n >= 2, got {n}")));
        }
        let labels: Vec<(u32, u32)> = intervals(n).collect();
        let mut g = Graph::new(labels.len());
        for (a, &ia) in labels.iter().enumerate() {
            for (b, &ib) in labels.iter().enumerate().skip(a + 1) {
                if variant.adjacent(ia, ib) {
                    g.insert(a as u32 + 1, b as u32 + 1);
                }
            }
        }
        g.labels = Some(labels);
        g.family = Some(IntervalFamily { n, variant });
        Ok(g)
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::new(self.n);
        for u in 1..=self.n as u32 {
            for v in u + 1..=self.n as u32 {
                if !self.has_edge(u, v) {
                    g.insert(u, v);
                }
            }
        }
        g.labels = self.labels.clone();
        g
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.edges
    }

    fn bit(&self, u: u32, v: u32) -> (usize, u64) {
        let row = (u as usize - 1) * self.words;
        let col = v as usize - 1;
        (row + col / 64, 1u64 << (col % 64))
    }

    fn insert(&mut self, u: u32, v: u32) {
        let (w, m) = self.bit(u, v);
        if self.adj[w] & m == 0 {
            self.adj[w] |= m;
            let (w, m) = self.bit(v, u);
            self.adj[w] |= m;
            self.edges += 1;
        }
    }

    /// Adds `{u, v}`; adding an existing edge is a no-op.
    pub fn add_edge(&mut self, u: u32, v: u32) -> Result<()> {
        let n = self.n as u32;
        if u == v || u == 0 || v == 0 || u > n || v > n {
            return Err(Error::InvalidArgument(format!(
                "edge {{{u}, {v}}} is not a pair of distinct vertices in 1..={n}"
            )));
        }
        self.family = None;
        self.insert(u, v);
        Ok(())
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        if u == v || u == 0 || v == 0 || u as usize > self.n || v as usize > self.n {
            return false;
        }
        let (w, m) = self.bit(u, v);
        self.adj[w] & m != 0
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (1..=self.n as u32).flat_map(move |u| {
            self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v))
        })
    }

    pub fn neighbors(&self, u: u32) -> impl Iterator<Item = u32> + '_ {
        let row = &self.adj[(u as usize - 1) * self.words..u as usize * self.words];
        row.iter().enumerate().flat_map(|(w, &bits)| {
            let mut bits = bits;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let t = bits.trailing_zeros();
                bits &= bits - 1;
                Some((w * 64) as u32 + t + 1)
            })
        })
    }

    pub fn degree(&self, u: u32) -> usize {
        let row = &self.adj[(u as usize - 1) * self.words..u as usize * self.words];
        row.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_independent(&self, vertices: &[u32]) -> bool {
        vertices
            .iter()
            .enumerate()
            .all(|(a, &u)| vertices[a + 1..].iter().all(|&v| !self.has_edge(u, v)))
    }

    pub fn is_clique(&self, vertices: &[u32]) -> bool {
        vertices
            .iter()
            .enumerate()
            .all(|(a, &u)| vertices[a + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    /// Endpoint labels for interval graphs.
    pub fn label(&self, v: u32) -> Option<(u32, u32)> {
        self.labels.as_ref().map(|l| l[v as usize - 1])
    }

    pub fn labels(&self) -> Option<&[(u32, u32)]> {
        self.labels.as_deref()
    }

    pub fn set_labels(&mut self, labels: Vec<(u32, u32)>) -> Result<()> {
        if labels.len() != self.n {
            return Err(Error::InvalidArgument(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.n
            )));
        }
        self.labels = Some(labels);
        Ok(())
    }

    /// Set when the graph is exactly `I_n` or `I0_n` as built by [`Graph::interval`].
    pub fn interval_family(&self) -> Option<IntervalFamily> {
        self.family
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("p graph {} {}\n", self.n, self.edges);
        if let Some(f) = self.family {
            let _ = writeln!(out, "f interval {} {}", f.n, f.variant.tag());
        }
        if let Some(labels) = &self.labels {
            for (v, (i, j)) in labels.iter().enumerate() {
                let _ = writeln!(out, "l {} {i} {j}", v + 1);
            }
        }
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    /// Parses the format written by [`Graph::to_text`]: a `p graph n m`
    /// header, edge lines `u v`, optional label lines `l v i j`, an optional
    /// family line `f interval n I|I0`, and `c` comments.
    pub fn parse(text: &str) -> Result<Graph> {
        let mut graph: Option<Graph> = None;
        let mut declared_edges = 0;
        let mut labels: Vec<Option<(u32, u32)>> = Vec::new();
        let mut family = None;
        for (lineno, line) in text.lines().enumerate() {
            let line_no = lineno + 1;
            let fields: Vec<&str> = line.split_whitespace().collect();
            let num = |s: &str| -> Result<u32> {
                s.parse()
                    .map_err(|_| Error::parse(line_no, format!("expected a number, got `{s}`")))
            };
            match fields.as_slice() {
                [] => {}
                ["c", ..] => {}
                ["p", "graph", n, m] => {
                    if graph.is_some() {
                        return Err(Error::parse(line_no, "duplicate header"));
                    }
                    let n = num(n)? as usize;
                    declared_edges = num(m)? as usize;
                    graph = Some(Graph::new(n));
                    labels = vec![None; n];
                }
                ["f", "interval", n, variant] => {
                    let variant = IntervalVariant::parse(variant)
                        .ok_or_else(|| Error::parse(line_no, format!("unknown variant `{variant}`")))?;
                    family = Some(IntervalFamily { n: num(n)?, variant });
                }
                ["l", v, i, j] => {
                    let (v, i, j) = (num(v)?, num(i)?, num(j)?);
                    let slot = labels
                        .get_mut((v as usize).wrapping_sub(1))
                        .ok_or_else(|| Error::parse(line_no, format!("label for unknown vertex {v}")))?;
                    *slot = Some((i, j));
                }
                [u, v] => {
                    let g = graph
                        .as_mut()
                        .ok_or_else(|| Error::parse(line_no, "edge before header"))?;
                    let (u, v) = (num(u)?, num(v)?);
                    g.add_edge(u, v).map_err(|e| Error::parse(line_no, e.to_string()))?;
                }
                _ => return Err(Error::parse(line_no, format!("unrecognised line `{line}`"))),
            }
        }
        let mut g = graph.ok_or_else(|| Error::parse(1, "missing `p graph` header"))?;
        if g.edges != declared_edges {
            return Err(Error::parse(1, format!(
                "header declares {declared_edges} edges, found {}",
                g.edges
            )));
        }
        if labels.iter().any(Option::is_some) {
            let all: Option<Vec<_>> = labels.into_iter().collect();
            g.labels = Some(all.ok_or_else(|| Error::parse(1, "labels must cover every vertex"))?);
        }
        if let Some(f) = family {
            let expected = Graph::interval(f.n, f.variant)?;
            if expected.adj != g.adj || expected.labels != g.labels {
                return Err(Error::parse(1, "family line does not match the edges"));
            }
            g.family = Some(f);
        }
        Ok(g)
    }
}
