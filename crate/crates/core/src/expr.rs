//! Additive element expressions shared by every carrier with named
//! generators: `2a - b + [a, b]`, `-(a + b)`, `3*[a,b]`, `0`.
//!
//! ```text
//! expr := ['-'] term (('+' | '-') term)*
//! term := [int ['*']] atom | int
//! atom := name | '[' expr ',' expr ']' | '(' expr ')'
//! ```
//!
//! Sums are evaluated left to right in the target group, so `a + b - a`
//! and `b` differ in a nonabelian carrier. `k atom` means `atom` added `k`
//! times (negative `k` adds the inverse). The only integer allowed without
//! an atom is `0`.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("element expression, column {column}: {message}")]
pub struct ExprError {
    pub column: usize,
    pub message: String,
}

/// A group that expressions can be evaluated in.
pub trait ExprTarget {
    type Elem: Clone;
    fn zero(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn generator(&self, name: &str) -> Option<Self::Elem>;

    /// `[a, b] = −a − b + a + b`.
    fn commutator(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let l = self.add(&self.neg(a), &self.neg(b));
        let r = self.add(a, b);
        self.add(&l, &r)
    }

    /// `n·x` as repeated addition.
    fn times(&self, x: &Self::Elem, n: i64) -> Self::Elem {
        let base = if n < 0 { self.neg(x) } else { x.clone() };
        let mut acc = self.zero();
        let mut pow = base;
        let mut k = n.unsigned_abs();
        // Powers of one element commute, so square-and-multiply is exact.
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &pow);
            }
            pow = self.add(&pow, &pow);
            k >>= 1;
        }
        acc
    }
}

pub fn parse_element<G: ExprTarget>(target: &G, src: &str) -> Result<G::Elem, ExprError> {
    let mut p = Parser { src: src.as_bytes(), pos: 0, target };
    let v = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(v)
}

struct Parser<'a, G> {
    src: &'a [u8],
    pos: usize,
    target: &'a G,
}

impl<G: ExprTarget> Parser<'_, G> {
    fn err(&self, message: &str) -> ExprError {
        ExprError { column: self.pos + 1, message: message.to_string() }
    }

    fn peek(&mut self) -> Option<u8> {
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<G::Elem, ExprError> {
        let t = self.target;
        let mut acc = if self.peek() == Some(b'-') {
            self.pos += 1;
            let v = self.term()?;
            t.neg(&v)
        } else {
            self.term()?
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let v = self.term()?;
                    acc = t.add(&acc, &v);
                }
                Some(b'-') => {
                    self.pos += 1;
                    let v = self.term()?;
                    acc = t.add(&acc, &t.neg(&v));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<G::Elem, ExprError> {
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let start = self.pos;
            while self.src.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            let k: i64 = std::str::from_utf8(&self.src[start..self.pos])
                .unwrap()
                .parse()
                .map_err(|_| ExprError { column: start + 1, message: "integer too large".into() })?;
            if self.peek() == Some(b'*') {
                self.pos += 1;
            }
            return match self.peek() {
                Some(c) if c == b'[' || c == b'(' || c.is_ascii_alphabetic() => {
                    let a = self.atom()?;
                    Ok(self.target.times(&a, k))
                }
                _ if k == 0 => Ok(self.target.zero()),
                _ => Err(ExprError {
                    column: start + 1,
                    message: "only 0 may stand without a generator".into(),
                }),
            };
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<G::Elem, ExprError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(b')')?;
                Ok(v)
            }
            Some(b'[') => {
                self.pos += 1;
                let a = self.expr()?;
                self.expect(b',')?;
                let b = self.expr()?;
                self.expect(b']')?;
                Ok(self.target.commutator(&a, &b))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self
                    .src
                    .get(self.pos)
                    .is_some_and(|c| c.is_ascii_alphanumeric() || matches!(c, b'_' | b'.' | b':'))
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                self.target.generator(name).ok_or_else(|| ExprError {
                    column: start + 1,
                    message: format!("unknown generator '{name}'"),
                })
            }
            _ => Err(self.err("expected a generator, '(' or '['")),
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ExprError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }
}
