use super::{FunctorExpr, VertexSet};
use crate::algebra::Algebra;
use crate::error::{Error, Result};

/// Parses `id`, `rad`, `soc`, `t{..}`, `x{..}`, `q(E)`, `F(E)`, `G(E)` and
/// `E.E` (outer.inner). Whitespace is ignored; set members are vertex labels,
/// optionally written `S<label>`.
pub fn parse_functor(text: &str, alg: &Algebra) -> Result<FunctorExpr> {
    let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut p = Parser { chars, pos: 0, alg };
    let e = p.expr()?;
    if p.pos != p.chars.len() {
        return Err(p.error("trailing input"));
    }
    e.validate_shape()?;
    Ok(e)
}

/// A set of simples written as vertex labels separated by commas or
/// whitespace, optionally braced or `S`-prefixed: `1,2`, `{S1, S3}`, `""`.
pub fn parse_vertex_set(text: &str, alg: &Algebra) -> Result<VertexSet> {
    let q = alg.quiver();
    text.trim()
        .trim_start_matches('{')
        .trim_end_matches('}')
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            q.vertex_index(t)
                .or_else(|| t.strip_prefix('S').and_then(|rest| q.vertex_index(rest)))
                .ok_or_else(|| Error::UnknownVertex(t.to_string()))
        })
        .collect()
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    alg: &'a Algebra,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::IllFormedExpr(format!("{msg} at position {}", self.pos))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, s: &str) -> bool {
        let n = s.chars().count();
        if self.chars.len() >= self.pos + n && self.chars[self.pos..self.pos + n].iter().copied().eq(s.chars()) {
            self.pos += n;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected `{c}`")))
        }
    }

    fn expr(&mut self) -> Result<FunctorExpr> {
        let mut parts = vec![self.term()?];
        while self.peek() == Some('.') {
            self.pos += 1;
            parts.push(self.term()?);
        }
        let mut e = parts.pop().expect("at least one term");
        while let Some(outer) = parts.pop() {
            e = outer.after(e);
        }
        Ok(e)
    }

    fn wrapped(&mut self) -> Result<Box<FunctorExpr>> {
        let e = self.expr()?;
        self.expect(')')?;
        Ok(Box::new(e))
    }

    fn term(&mut self) -> Result<FunctorExpr> {
        if self.eat("id") {
            Ok(FunctorExpr::Identity)
        } else if self.eat("rad") {
            Ok(FunctorExpr::Rad)
        } else if self.eat("soc") {
            Ok(FunctorExpr::Soc)
        } else if self.eat("t{") {
            Ok(FunctorExpr::TorsT(self.set()?))
        } else if self.eat("x{") {
            Ok(FunctorExpr::TorsX(self.set()?))
        } else if self.eat("q(") {
            Ok(FunctorExpr::QuotOf(self.wrapped()?))
        } else if self.eat("F(") {
            Ok(FunctorExpr::AlphaRad(self.wrapped()?))
        } else if self.eat("G(") {
            Ok(FunctorExpr::AlphaSocQuot(self.wrapped()?))
        } else if self.eat("(") {
            Ok(*self.wrapped()?)
        } else {
            Err(self.error("expected a functor"))
        }
    }

    fn set(&mut self) -> Result<VertexSet> {
        let mut set = VertexSet::new();
        if self.eat("}") {
            return Ok(set);
        }
        loop {
            let start = self.pos;
            while matches!(self.peek(), Some(c) if c != ',' && c != '}') {
                self.pos += 1;
            }
            let name: String = self.chars[start..self.pos].iter().collect();
            let q = self.alg.quiver();
            let v = q
                .vertex_index(&name)
                .or_else(|| name.strip_prefix('S').and_then(|rest| q.vertex_index(rest)))
                .ok_or_else(|| Error::UnknownVertex(name.clone()))?;
            set.insert(v);
            match self.peek() {
                Some(',') => self.pos += 1,
                Some('}') => {
                    self.pos += 1;
                    return Ok(set);
                }
                _ => return Err(self.error("unterminated simple set")),
            }
        }
    }
}

impl FunctorExpr {
    /// Quotients must be taken by subfunctors of Id.
    fn validate_shape(&self) -> Result<()> {
        match self {
            FunctorExpr::QuotOf(a) => {
                if !a.is_subfunctor() {
                    return Err(Error::IllFormedExpr("q(..) needs a subfunctor of id".into()));
                }
                a.validate_shape()
            }
            FunctorExpr::Compose(o, i) => {
                o.validate_shape()?;
                i.validate_shape()
            }
            FunctorExpr::AlphaRad(a) | FunctorExpr::AlphaSocQuot(a) => a.validate_shape(),
            _ => Ok(()),
        }
    }
}
