//! Bidirectional map between structured variable names and DIMACS indices.
//!
//! Names follow the grammar `kind(arg1,arg2,...)` optionally followed by
//! `@scope`, where the scope records the recursion path of the encoder that
//! allocated an auxiliary variable. The sidecar format is one `index<TAB>name`
//! line per variable.

use std::borrow::Cow;
use std::collections::HashMap;
use std::fmt;
use std::io::{BufRead, Write};
use std::sync::Arc;

use smallvec::SmallVec;

use crate::cnf::Var;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarName {
    kind: Cow<'static, str>,
    args: SmallVec<[u32; 3]>,
    scope: Option<Arc<str>>,
}

impl VarName {
    pub fn new(kind: impl Into<Cow<'static, str>>, args: &[u32]) -> VarName {
        VarName {
            kind: kind.into(),
            args: args.iter().copied().collect(),
            scope: None,
        }
    }

    pub fn scoped(mut self, scope: &Scope) -> VarName {
        self.scope = scope.0.clone();
        self
    }

    pub fn kind(&self) -> &str {
        &self.kind
    }

    pub fn args(&self) -> &[u32] {
        &self.args
    }

    pub fn scope(&self) -> Option<&str> {
        self.scope.as_deref()
    }

    pub fn parse(text: &str) -> Option<VarName> {
        let (body, scope) = match text.split_once('@') {
            Some((b, s)) if !s.is_empty() && !s.contains(char::is_whitespace) => {
                (b, Some(Arc::from(s)))
            }
            Some(_) => return None,
            None => (text, None),
        };
        let open = body.find('(')?;
        let inner = body[open + 1..].strip_suffix(')')?;
        let kind = &body[..open];
        if kind.is_empty() || kind.contains(|c: char| c.is_whitespace() || ",()@".contains(c)) {
            return None;
        }
        let args = if inner.is_empty() {
            SmallVec::new()
        } else {
            inner
                .split(',')
                .map(|a| a.trim().parse::<u32>().ok())
                .collect::<Option<SmallVec<_>>>()?
        };
        Some(VarName {
            kind: Cow::Owned(kind.to_string()),
            args,
            scope,
        })
    }
}

impl fmt::Display for VarName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.kind)?;
        for (idx, a) in self.args.iter().enumerate() {
            if idx > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")?;
        if let Some(scope) = &self.scope {
            write!(f, "@{scope}")?;
        }
        Ok(())
    }
}

/// Recursion path used to keep auxiliary names unique across sub-encodings.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Scope(Option<Arc<str>>);

impl Scope {
    pub fn root() -> Scope {
        Scope(None)
    }

    pub fn child(&self, segment: &str) -> Scope {
        let path = match &self.0 {
            Some(p) => format!("{p}/{segment}"),
            None => segment.to_string(),
        };
        Scope(Some(Arc::from(path)))
    }

    pub fn as_str(&self) -> &str {
        self.0.as_deref().unwrap_or("")
    }
}

/// Variable pool. Indices are handed out contiguously from 1 in request order.
#[derive(Clone, Debug, Default)]
pub struct VarMap {
    names: Vec<VarName>,
    index: HashMap<VarName, Var>,
    counters: HashMap<Cow<'static, str>, u32>,
}

impl VarMap {
    pub fn new() -> VarMap {
        VarMap::default()
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn max_index(&self) -> u32 {
        self.names.len() as u32
    }

    /// Interns `name` as variable `len() + 1`.
    pub fn fresh(&mut self, name: VarName) -> Result<Var> {
        if self.index.contains_key(&name) {
            return Err(Error::DuplicateName(name.to_string()));
        }
        let var = Var::new(self.names.len() as u32 + 1);
        self.index.insert(name.clone(), var);
        self.names.push(name);
        Ok(var)
    }

    /// Allocates `kind(c)` for the next unused counter value `c`.
    pub fn fresh_numbered(&mut self, kind: &'static str) -> Var {
        loop {
            let counter = self.counters.entry(Cow::Borrowed(kind)).or_insert(0);
            *counter += 1;
            let name = VarName::new(kind, &[*counter]);
            if !self.index.contains_key(&name) {
                return self.fresh(name).expect("name checked to be free");
            }
        }
    }

    /// Auxiliary variable with an anonymous `aux(c)` name.
    pub fn fresh_aux(&mut self) -> Var {
        self.fresh_numbered("aux")
    }

    pub fn get(&self, name: &VarName) -> Option<Var> {
        self.index.get(name).copied()
    }

    pub fn name(&self, var: Var) -> Option<&VarName> {
        self.names.get(var.index() as usize - 1)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, &VarName)> + '_ {
        self.names
            .iter()
            .enumerate()
            .map(|(i, n)| (Var::new(i as u32 + 1), n))
    }

    pub fn write_sidecar<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        for (var, name) in self.iter() {
            writeln!(out, "{var}\t{name}")?;
        }
        Ok(())
    }

    pub fn to_sidecar(&self) -> String {
        let mut buf = Vec::new();
        self.write_sidecar(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("sidecar is ASCII")
    }

    /// Parses a sidecar. Indices must be contiguous from 1.
    pub fn parse_sidecar<R: BufRead>(input: R) -> Result<VarMap> {
        let mut map = VarMap::new();
        for (lineno, line) in input.lines().enumerate() {
            let line = line?;
            let line = line.trim_end();
            if line.is_empty() {
                continue;
            }
            let (idx, name) = line
                .split_once('\t')
                .ok_or_else(|| Error::parse(lineno + 1, "expected index<TAB>name"))?;
            let idx: u32 = idx
                .trim()
                .parse()
                .map_err(|_| Error::parse(lineno + 1, format!("bad index `{idx}`")))?;
            let name = VarName::parse(name)
                .ok_or_else(|| Error::parse(lineno + 1, format!("bad name `{name}`")))?;
            if idx != map.max_index() + 1 {
                return Err(Error::parse(
                    lineno + 1,
                    format!("index {idx} breaks contiguity (expected {})", map.max_index() + 1),
                ));
            }
            map.fresh(name)?;
        }
        Ok(map)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sequential_allocation() {
        let mut pool = VarMap::new();
        assert_eq!(pool.fresh(VarName::new("x", &[1, 2])).unwrap(), Var::new(1));
        for i in 0..4 {
            pool.fresh(VarName::new("a", &[i])).unwrap();
        }
        assert_eq!(pool.fresh(VarName::new("y", &[1, 3])).unwrap(), Var::new(6));
    }

    #[test]
    fn duplicate_name_is_an_error() {
        let mut pool = VarMap::new();
        pool.fresh(VarName::new("x", &[1, 2])).unwrap();
        assert!(matches!(
            pool.fresh(VarName::new("x", &[1, 2])),
            Err(Error::DuplicateName(n)) if n == "x(1,2)"
        ));
    }

    #[test]
    fn numbered_names_skip_taken_ones() {
        let mut pool = VarMap::new();
        pool.fresh(VarName::new("aux", &[1])).unwrap();
        let v = pool.fresh_aux();
        assert_eq!(pool.name(v).unwrap().to_string(), "aux(2)");
    }

    #[test]
    fn names_round_trip_through_text() {
        let scope = Scope::root().child("x1.3").child("y");
        let names = [
            VarName::new("x", &[1, 2]),
            VarName::new("sched-y", &[2, 3, 5]),
            VarName::new("s", &[4, 2]).scoped(&scope),
            VarName::new("k", &[]),
        ];
        for n in names {
            assert_eq!(VarName::parse(&n.to_string()), Some(n));
        }
        assert_eq!(
            VarName::new("s", &[4, 2]).scoped(&scope).to_string(),
            "s(4,2)@x1.3/y"
        );
        assert!(VarName::parse("x(1,").is_none());
        assert!(VarName::parse("(1)").is_none());
    }

    #[test]
    fn sidecar_round_trip() {
        let mut pool = VarMap::new();
        pool.fresh(VarName::new("x", &[1, 2])).unwrap();
        pool.fresh_aux();
        pool.fresh(VarName::new("t", &[3]).scoped(&Scope::root().child("m1")))
            .unwrap();
        let text = pool.to_sidecar();
        assert_eq!(text, "1\tx(1,2)\n2\taux(1)\n3\tt(3)@m1\n");
        let back = VarMap::parse_sidecar(text.as_bytes()).unwrap();
        assert_eq!(back.to_sidecar(), text);
        assert!(VarMap::parse_sidecar("2\tx(1)\n".as_bytes()).is_err());
    }
}
