//! Block decomposition of `[1, n]` and the five-way classification of
//! interval-graph edges relative to it.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::IntervalVariant;

/// Positions `1..=n` split into `k = ceil(n / b)` consecutive blocks of size
/// `b` (the last one possibly shorter).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlockParams {
    pub n: u32,
    pub b: u32,
    pub k: u32,
}

impl BlockParams {
    pub fn new(n: u32, b: u32) -> Result<BlockParams> {
        if n == 0 || b == 0 {
            return Err(Error::InvalidArgument(format!("block parameters need n, b >= 1 (n={n}, b={b})")));
        }
        Ok(BlockParams { n, b, k: n.div_ceil(b) })
    }

    /// Block size for a requested block count: `b = ceil(n / k)`. The actual
    /// block count can come out below `k`.
    pub fn with_count(n: u32, k: u32) -> Result<BlockParams> {
        if k == 0 {
            return Err(Error::InvalidArgument("block count must be positive".into()));
        }
        BlockParams::new(n, n.div_ceil(k))
    }

    pub fn block(&self, i: u32) -> u32 {
        debug_assert!(1 <= i && i <= self.n);
        (i - 1) / self.b + 1
    }

    /// First and last position of block `d`.
    pub fn range(&self, d: u32) -> (u32, u32) {
        let start = (d - 1) * self.b + 1;
        (start, (d * self.b).min(self.n))
    }

    pub fn len(&self, d: u32) -> u32 {
        let (s, e) = self.range(d);
        e + 1 - s
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeClass {
    X,
    Y,
    S,
    F,
    M,
}

impl EdgeClass {
    pub const ALL: [EdgeClass; 5] = [EdgeClass::X, EdgeClass::Y, EdgeClass::S, EdgeClass::F, EdgeClass::M];
}

impl fmt::Display for EdgeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self {
            EdgeClass::X => "x",
            EdgeClass::Y => "y",
            EdgeClass::S => "s",
            EdgeClass::F => "f",
            EdgeClass::M => "m",
        };
        f.write_str(tag)
    }
}

/// Orders a pair so that `i1 <= i2`, ties broken by the right endpoint.
pub fn normalize(a: (u32, u32), b: (u32, u32)) -> ((u32, u32), (u32, u32)) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Classes whose defining conditions hold for `(i1, j1, i2, j2)`, assuming
/// `i1 <= i2`. Used to check that the classes are exhaustive and exclusive;
/// [`classify_edge`] is the decision-tree version.
pub fn matching_classes(
    (i1, j1): (u32, u32),
    (i2, j2): (u32, u32),
    p: &BlockParams,
    variant: IntervalVariant,
) -> Vec<EdgeClass> {
    let b = |x| p.block(x);
    let reach = variant.reaches(i2, j1);
    let mut out = Vec::new();
    if b(i1) == b(i2) && b(j1) == b(j2) && reach {
        out.push(EdgeClass::X);
    }
    if b(i1) < b(i2) && b(i2) < b(j1) {
        out.push(EdgeClass::Y);
    }
    if b(i1) == b(i2) && reach && b(j1) != b(j2) {
        out.push(EdgeClass::S);
    }
    if b(i1) < b(i2) && b(i2) == b(j1) && b(j1) == b(j2) && reach {
        out.push(EdgeClass::F);
    }
    if b(i1) < b(i2) && b(i2) == b(j1) && b(j1) != b(j2) && reach {
        out.push(EdgeClass::M);
    }
    out
}

/// Classifies an edge of `I_n` (or `I0_n`) with the decision tree: compare the
/// start blocks, then either the end blocks or the second start against the
/// first end. Errors if the pair is not an edge under `variant`.
pub fn classify_edge(
    a: (u32, u32),
    b: (u32, u32),
    p: &BlockParams,
    variant: IntervalVariant,
) -> Result<EdgeClass> {
    for &(i, j) in [&a, &b] {
        if !(1 <= i && i < j && j <= p.n) {
            return Err(Error::InvalidArgument(format!("[{i}, {j}] is not an interval of [1, {}]", p.n)));
        }
    }
    let ((i1, j1), (i2, j2)) = normalize(a, b);
    if a == b || !variant.adjacent((i1, j1), (i2, j2)) {
        return Err(Error::NotAnEdge(format!("{{[{i1}, {j1}], [{i2}, {j2}]}}")));
    }
    let blk = |x| p.block(x);
    let class = if blk(i1) == blk(i2) {
        if blk(j1) == blk(j2) {
            EdgeClass::X
        } else {
            EdgeClass::S
        }
    } else if blk(i2) < blk(j1) {
        EdgeClass::Y
    } else if blk(j1) == blk(j2) {
        EdgeClass::F
    } else {
        EdgeClass::M
    };
    Ok(class)
}
