//! Tokenizer, recursive-descent parser and generic evaluator for the
//! expression language shared by scalars, Lie-Rinehart elements and
//! enveloping-algebra elements.
//!
//! ```text
//! expr   := ['-'] term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := atom ('^' uint)?
//! atom   := uint | ident | '(' expr ')'
//! ```
//!
//! A rational literal `3/2` is read as the quotient of two integer atoms.

use num_bigint::BigInt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(BigInt),
    Ident(String, Pos),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>, Pos),
    Pow(Box<Expr>, u32, Pos),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(n) => format!("number `{n}`"),
        Tok::Ident(s) => format!("identifier `{s}`"),
        Tok::Plus => "`+`".into(),
        Tok::Minus => "`-`".into(),
        Tok::Star => "`*`".into(),
        Tok::Slash => "`/`".into(),
        Tok::Caret => "`^`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::End => "end of input".into(),
    }
}

fn tokenize(text: &str, line: usize, col_offset: usize) -> Result<Vec<(Tok, Pos)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let pos = |i: usize| Pos {
        line,
        column: col_offset + i + 1,
    };
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            Tok::Int(digits.parse().expect("ascii digits"))
        } else if c.is_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            Tok::Ident(chars[start..i].iter().collect())
        } else {
            i += 1;
            match c {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                _ => {
                    let p = pos(start);
                    return Err(Error::parse(
                        p.line,
                        p.column,
                        format!("unexpected character `{c}`"),
                    ));
                }
            }
        };
        out.push((tok, pos(start)));
    }
    out.push((Tok::End, pos(chars.len())));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn unexpected<T>(&self) -> Result<T> {
        let p = self.pos();
        Err(Error::parse(
            p.line,
            p.column,
            format!("unexpected {}", describe(self.peek())),
        ))
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = if *self.peek() == Tok::Minus {
            self.bump();
            Expr::Neg(Box::new(self.term()?))
        } else {
            self.term()?
        };
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                Tok::Slash => {
                    let (_, p) = self.bump();
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.factor()?), p);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        let (_, p) = self.bump();
        match self.peek().clone() {
            Tok::Int(n) => {
                let exp: u32 = n.try_into().map_err(|_| {
                    let q = self.pos();
                    Error::parse(q.line, q.column, "exponent too large")
                })?;
                self.bump();
                Ok(Expr::Pow(Box::new(base), exp, p))
            }
            _ => self.unexpected(),
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(Expr::Num(n))
            }
            Tok::Ident(s) => {
                let (_, p) = self.bump();
                Ok(Expr::Ident(s, p))
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return self.unexpected();
                }
                self.bump();
                Ok(e)
            }
            _ => self.unexpected(),
        }
    }
}

/// Parses a single expression; `line` and `col_offset` place error positions
/// inside a larger document (columns are 1-based).
pub fn parse_at(text: &str, line: usize, col_offset: usize) -> Result<Expr> {
    let mut p = Parser {
        toks: tokenize(text, line, col_offset)?,
        at: 0,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.unexpected();
    }
    Ok(e)
}

pub fn parse(text: &str) -> Result<Expr> {
    parse_at(text, 1, 0)
}

/// Interpretation of the expression operators in some algebra.
pub trait ExprAlgebra {
    type Value;

    fn number(&self, n: &BigInt) -> Result<Self::Value>;
    fn ident(&self, name: &str, pos: Pos) -> Result<Self::Value>;
    fn add(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value>;
    fn sub(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value>;
    fn neg(&self, a: Self::Value) -> Result<Self::Value>;
    fn mul(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value>;
    fn div(&self, a: Self::Value, b: Self::Value, pos: Pos) -> Result<Self::Value>;

    fn pow(&self, a: Self::Value, n: u32, _pos: Pos) -> Result<Self::Value>
    where
        Self::Value: Clone,
    {
        let mut acc = self.number(&BigInt::from(1))?;
        for _ in 0..n {
            acc = self.mul(acc, a.clone())?;
        }
        Ok(acc)
    }
}

pub fn evaluate<A>(e: &Expr, alg: &A) -> Result<A::Value>
where
    A: ExprAlgebra,
    A::Value: Clone,
{
    match e {
        Expr::Num(n) => alg.number(n),
        Expr::Ident(s, p) => alg.ident(s, *p),
        Expr::Neg(a) => alg.neg(evaluate(a, alg)?),
        Expr::Add(a, b) => alg.add(evaluate(a, alg)?, evaluate(b, alg)?),
        Expr::Sub(a, b) => alg.sub(evaluate(a, alg)?, evaluate(b, alg)?),
        Expr::Mul(a, b) => alg.mul(evaluate(a, alg)?, evaluate(b, alg)?),
        Expr::Div(a, b, p) => alg.div(evaluate(a, alg)?, evaluate(b, alg)?, *p),
        Expr::Pow(a, n, p) => alg.pow(evaluate(a, alg)?, *n, *p),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        let e = parse("-x^2*y + 3/2").unwrap();
        match e {
            Expr::Add(lhs, _) => assert!(matches!(*lhs, Expr::Neg(_))),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn trailing_operator_reports_end_column() {
        match parse("x + ") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (1, 5)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn bad_character_and_unbalanced_parens() {
        assert!(matches!(
            parse("x $ y"),
            Err(Error::Parse { column: 3, .. })
        ));
        assert!(matches!(
            parse("(x + 1"),
            Err(Error::Parse { column: 7, .. })
        ));
        assert!(matches!(parse(""), Err(Error::Parse { column: 1, .. })));
        assert!(matches!(parse("x^y"), Err(Error::Parse { column: 3, .. })));
    }

    #[test]
    fn offsets_apply() {
        match parse_at("1 +", 4, 10) {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (4, 14)),
            other => panic!("unexpected {other:?}"),
        }
    }
}
