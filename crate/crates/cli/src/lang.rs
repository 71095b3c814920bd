//! Expressions over C₊(n): exact scalars, basis vectors `eᵢ`, the Sym~(n)
//! generators `tᵢ = (eᵢ − e_{i+1})/√2` and `w = −1`.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (['*'] factor)*
//! factor := atom ['^' ['-'] int]
//! atom   := rational | 'sqrt2' | 'e' int | 't' int | 'w' | '(' expr ')' | '-' atom
//! ```
//!
//! Juxtaposition is the product. Unary minus belongs to the atom, so
//! `-e1^2` is `(-e1)^2`. There is no division; `1/2` is a single literal.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use symtrack::pin::gen_t;
use symtrack::scalar::Scalar;
use symtrack::{Multivector, Q2};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Rational(BigRational),
    Sqrt2,
    Basis(usize),
    Gen(usize),
    Omega,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LangError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{0}")]
    Eval(String),
}

impl Expr {
    /// Dimension needed to evaluate: the largest `eᵢ` index, or `i + 1` for
    /// `tᵢ`, and at least 1.
    pub fn min_dim(&self) -> usize {
        match self {
            Expr::Basis(i) => *i,
            Expr::Gen(i) => i + 1,
            Expr::Rational(_) | Expr::Sqrt2 | Expr::Omega => 1,
            Expr::Neg(a) | Expr::Pow(a, _) => a.min_dim(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => a.min_dim().max(b.min_dim()),
        }
    }

    pub fn eval(&self, dim: usize) -> Result<Multivector, LangError> {
        let cl = |e: symtrack::CliffordError| LangError::Eval(e.to_string());
        Ok(match self {
            Expr::Rational(r) => Multivector::scalar(dim, Q2::from_rational(r.clone())).map_err(cl)?,
            Expr::Sqrt2 => Multivector::scalar(dim, Q2::sqrt2()).map_err(cl)?,
            Expr::Basis(i) => Multivector::basis(dim, *i).map_err(cl)?,
            Expr::Gen(i) => gen_t::<Q2>(*i, dim).map_err(|e| LangError::Eval(e.to_string()))?.multivector().clone(),
            Expr::Omega => Multivector::scalar(dim, -Q2::one()).map_err(cl)?,
            Expr::Neg(a) => a.eval(dim)?.neg(),
            Expr::Add(a, b) => a.eval(dim)?.checked_add(&b.eval(dim)?).map_err(cl)?,
            Expr::Sub(a, b) => a.eval(dim)?.checked_sub(&b.eval(dim)?).map_err(cl)?,
            Expr::Mul(a, b) => a.eval(dim)?.checked_mul(&b.eval(dim)?).map_err(cl)?,
            Expr::Pow(a, k) => {
                let base = a.eval(dim)?;
                let base = if *k < 0 { inverse(&base).ok_or_else(|| not_invertible(a))? } else { base };
                let k = u32::try_from(k.unsigned_abs()).map_err(|_| LangError::Eval(format!("exponent {k} too large")))?;
                base.pow(k)
            }
        })
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 0,
            Expr::Mul(..) => 1,
            Expr::Pow(..) => 2,
            _ => 3,
        }
    }

    fn fmt_at(&self, f: &mut fmt::Formatter<'_>, level: u8) -> fmt::Result {
        if self.precedence() < level {
            write!(f, "(")?;
            self.fmt_at(f, 0)?;
            return write!(f, ")");
        }
        match self {
            Expr::Rational(r) => write!(f, "{r}"),
            Expr::Sqrt2 => write!(f, "sqrt2"),
            Expr::Basis(i) => write!(f, "e{i}"),
            Expr::Gen(i) => write!(f, "t{i}"),
            Expr::Omega => write!(f, "w"),
            Expr::Neg(a) => {
                write!(f, "-")?;
                a.fmt_at(f, 3)
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                a.fmt_at(f, 0)?;
                write!(f, " {} ", if matches!(self, Expr::Add(..)) { '+' } else { '-' })?;
                b.fmt_at(f, 1)
            }
            Expr::Mul(a, b) => {
                a.fmt_at(f, 1)?;
                // A leading minus would read as subtraction.
                let sep = if b.starts_with_minus() { " * " } else { " " };
                write!(f, "{sep}")?;
                b.fmt_at(f, 2)
            }
            Expr::Pow(a, k) => {
                a.fmt_at(f, 3)?;
                write!(f, "^{k}")
            }
        }
    }

    fn starts_with_minus(&self) -> bool {
        match self {
            Expr::Neg(_) => true,
            Expr::Pow(a, _) | Expr::Mul(a, _) => a.starts_with_minus(),
            _ => false,
        }
    }
}

/// Canonical form: minimal parentheses, products by juxtaposition.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(f, 0)
    }
}

fn not_invertible(a: &Expr) -> LangError {
    LangError::Eval(format!("{a} is not invertible (x times its reversal is not a nonzero scalar)"))
}

/// `x̃ / (x x̃)` when `x x̃` is a nonzero scalar, which covers every versor.
pub fn inverse(x: &Multivector) -> Option<Multivector> {
    let r = x.reversal();
    let n = x.checked_mul(&r).ok()?.as_scalar()?;
    Some(r.scale(&n.checked_inv()?))
}

pub fn parse(src: &str) -> Result<Expr, LangError> {
    let tokens = lex(src)?;
    let mut p = Parser { tokens, pos: 0, end: end_position(src) };
    let e = p.expr()?;
    match p.tokens.get(p.pos) {
        Some(t) => Err(t.pos.error(format!("unexpected {}", t.kind))),
        None => Ok(e),
    }
}

/// Parses and rejects any index above `dim`, pointing at the offending atom.
pub fn parse_for_dim(src: &str, dim: usize) -> Result<Expr, LangError> {
    let e = parse(src)?;
    for t in lex(src)? {
        let need = match t.kind {
            Tok::Basis(i) => i,
            Tok::Gen(i) => i + 1,
            _ => continue,
        };
        if need > dim {
            return Err(t.pos.error(format!("{} needs dimension {need}, but --dim is {dim}", t.kind)));
        }
    }
    Ok(e)
}

#[derive(Debug, Clone, Copy)]
struct Pos {
    line: usize,
    column: usize,
}

impl Pos {
    fn error(self, message: String) -> LangError {
        LangError::Syntax { line: self.line, column: self.column, message }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigRational),
    Sqrt2,
    Basis(usize),
    Gen(usize),
    Omega,
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Num(r) => write!(f, "'{r}'"),
            Tok::Sqrt2 => write!(f, "'sqrt2'"),
            Tok::Basis(i) => write!(f, "'e{i}'"),
            Tok::Gen(i) => write!(f, "'t{i}'"),
            Tok::Omega => write!(f, "'w'"),
            Tok::Plus => write!(f, "'+'"),
            Tok::Minus => write!(f, "'-'"),
            Tok::Star => write!(f, "'*'"),
            Tok::Caret => write!(f, "'^'"),
            Tok::LParen => write!(f, "'('"),
            Tok::RParen => write!(f, "')'"),
        }
    }
}

struct Token {
    kind: Tok,
    pos: Pos,
}

fn end_position(src: &str) -> Pos {
    let line = src.lines().count().max(1);
    let column = src.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    Pos { line, column }
}

fn lex(src: &str) -> Result<Vec<Token>, LangError> {
    let chars: Vec<char> = src.chars().collect();
    let mut tokens = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let digits = |i: &mut usize, col: &mut usize| {
        let start = *i;
        while *i < chars.len() && chars[*i].is_ascii_digit() {
            *i += 1;
            *col += 1;
        }
        chars[start..*i].iter().collect::<String>()
    };
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, column: col };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(kind) = single {
            tokens.push(Token { kind, pos });
            i += 1;
            col += 1;
            continue;
        }
        let kind = if c.is_ascii_digit() {
            let num: BigInt = digits(&mut i, &mut col).parse().expect("digits");
            if chars.get(i) == Some(&'/') {
                i += 1;
                col += 1;
                let den = digits(&mut i, &mut col);
                if den.is_empty() {
                    return Err(Pos { line, column: col }.error("expected a denominator after '/'".into()));
                }
                let den: BigInt = den.parse().expect("digits");
                if den.is_zero() {
                    return Err(pos.error("zero denominator".into()));
                }
                Tok::Num(BigRational::new(num, den))
            } else {
                Tok::Num(BigRational::from_integer(num))
            }
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphabetic() {
                i += 1;
                col += 1;
            }
            let word: String = chars[start..i].iter().collect();
            match word.as_str() {
                "w" => Tok::Omega,
                "sqrt" if chars.get(i) == Some(&'2') => {
                    i += 1;
                    col += 1;
                    Tok::Sqrt2
                }
                "e" | "t" => {
                    let idx = digits(&mut i, &mut col);
                    if idx.is_empty() {
                        return Err(pos.error(format!("'{word}' must be followed by an index")));
                    }
                    let idx: usize =
                        idx.parse().map_err(|_| pos.error(format!("index {idx} is too large")))?;
                    if idx == 0 {
                        return Err(pos.error(format!("indices start at 1, got '{word}0'")));
                    }
                    if word == "e" {
                        Tok::Basis(idx)
                    } else {
                        Tok::Gen(idx)
                    }
                }
                _ => return Err(pos.error(format!("unknown name '{word}'"))),
            }
        } else {
            return Err(pos.error(format!("unexpected character '{c}'")));
        };
        tokens.push(Token { kind, pos });
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    end: Pos,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|t| &t.kind)
    }

    fn here(&self) -> Pos {
        self.tokens.get(self.pos).map_or(self.end, |t| t.pos)
    }

    fn eat(&mut self, kind: &Tok) -> bool {
        if self.peek() == Some(kind) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, LangError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(&Tok::Plus) {
                acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
            } else if self.eat(&Tok::Minus) {
                acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, LangError> {
        let mut acc = self.factor()?;
        loop {
            let next = if self.eat(&Tok::Star) {
                self.factor()?
            } else if matches!(
                self.peek(),
                Some(Tok::Num(_) | Tok::Sqrt2 | Tok::Basis(_) | Tok::Gen(_) | Tok::Omega | Tok::LParen)
            ) {
                self.factor()?
            } else {
                return Ok(acc);
            };
            acc = Expr::Mul(Box::new(acc), Box::new(next));
        }
    }

    fn factor(&mut self) -> Result<Expr, LangError> {
        let base = self.atom()?;
        if !self.eat(&Tok::Caret) {
            return Ok(base);
        }
        let at = self.here();
        let negative = self.eat(&Tok::Minus);
        match self.peek() {
            Some(Tok::Num(r)) if r.is_integer() => {
                let k = r.to_integer();
                self.pos += 1;
                let k = if negative { -k } else { k };
                let k: i64 = k.try_into().map_err(|_| at.error("exponent out of range".into()))?;
                Ok(Expr::Pow(Box::new(base), k))
            }
            _ => Err(self.here().error("expected an integer exponent after '^'".into())),
        }
    }

    fn atom(&mut self) -> Result<Expr, LangError> {
        let at = self.here();
        let Some(tok) = self.peek().cloned() else {
            return Err(at.error("unexpected end of input".into()));
        };
        self.pos += 1;
        match tok {
            Tok::Num(r) => Ok(Expr::Rational(r)),
            Tok::Sqrt2 => Ok(Expr::Sqrt2),
            Tok::Basis(i) => Ok(Expr::Basis(i)),
            Tok::Gen(i) => Ok(Expr::Gen(i)),
            Tok::Omega => Ok(Expr::Omega),
            Tok::Minus => Ok(Expr::Neg(Box::new(self.atom()?))),
            Tok::LParen => {
                let e = self.expr()?;
                if !self.eat(&Tok::RParen) {
                    return Err(self.here().error("expected ')'".into()));
                }
                Ok(e)
            }
            other => Err(at.error(format!("unexpected {other}"))),
        }
    }
}

/// Exact rational as printed by the canonical form; used by tests.
pub fn rational(p: i64, q: i64) -> Expr {
    let r = BigRational::new(p.into(), q.into());
    if r.is_negative() {
        Expr::Neg(Box::new(Expr::Rational(-r)))
    } else {
        Expr::Rational(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(e: Expr) -> Box<Expr> {
        Box::new(e)
    }

    #[test]
    fn juxtaposition_is_product() {
        let e = parse("t1 t3 t1 t3").unwrap();
        let g = |i| b(Expr::Gen(i));
        let want = Expr::Mul(b(Expr::Mul(b(Expr::Mul(g(1), g(3))), g(1))), g(3));
        assert_eq!(e, want);
        assert_eq!(e.to_string(), "t1 t3 t1 t3");
    }

    #[test]
    fn power_and_unary_minus() {
        assert_eq!(parse("e1 ^ 2").unwrap(), Expr::Pow(b(Expr::Basis(1)), 2));
        assert_eq!(parse("-e1^2").unwrap(), Expr::Pow(b(Expr::Neg(b(Expr::Basis(1)))), 2));
        assert_eq!(parse("t1^-1").unwrap(), Expr::Pow(b(Expr::Gen(1)), -1));
        assert_eq!(parse("e1 - e2").unwrap(), Expr::Sub(b(Expr::Basis(1)), b(Expr::Basis(2))));
        assert_eq!(parse("e1 * -e2").unwrap(), Expr::Mul(b(Expr::Basis(1)), b(Expr::Neg(b(Expr::Basis(2))))));
    }

    #[test]
    fn rational_literals() {
        let e = parse("(1/2) (e1-e2) (e1-e2)").unwrap();
        assert_eq!(e.eval(2).unwrap().to_string(), "1");
        assert_eq!(parse("2/4").unwrap(), rational(1, 2));
        assert!(parse("1/0").is_err());
    }

    #[test]
    fn error_positions() {
        let at = |src: &str| match parse(src) {
            Err(LangError::Syntax { line, column, .. }) => (line, column),
            other => panic!("{other:?}"),
        };
        assert_eq!(at("e1 + e0"), (1, 6));
        assert_eq!(at("e1 +\n  x2"), (2, 3));
        assert_eq!(at("(e1"), (1, 4));
        assert_eq!(at("e1 ^ e2"), (1, 6));
        assert_eq!(at("e1 / 2"), (1, 4));
        match parse_for_dim("e1 e4", 3) {
            Err(LangError::Syntax { column: 4, message, .. }) => assert!(message.contains("dimension 4")),
            other => panic!("{other:?}"),
        }
        assert!(parse_for_dim("t3", 3).is_err());
    }

    #[test]
    fn evaluation() {
        let v = |s: &str, n| parse(s).unwrap().eval(n).unwrap().to_string();
        assert_eq!(v("e1 e2 + e2 e1", 2), "0");
        assert_eq!(v("t1^2", 2), "1");
        assert_eq!(v("w t1 t1", 2), "-1");
        assert_eq!(v("sqrt2 t1", 2), "e1 - e2");
        assert_eq!(v("(t1 t2)^3", 3), "1");
        assert_eq!(v("(1 + e1 e2)^-1 (1 + e1 e2)", 2), "1");
        assert!(parse("(1 + e1)^-1").unwrap().eval(1).is_err());
    }
}
