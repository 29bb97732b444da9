//! A small expression grammar shared by every polynomial reader.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/')? unary)*      juxtaposition multiplies
//! unary   := '-' unary | power
//! power   := atom ('^' integer)?
//! atom    := integer | ident | '(' expr ')'
//! ident   := letter digit*
//! ```
//!
//! Which identifiers are meaningful depends on the target ring: `x` for
//! univariate polynomials, `T` and `g` for A and k, `t` for τ, `x1, x2, …`
//! for cluster variables.

use num_bigint::BigInt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(BigInt),
    Var { name: String, pos: usize },
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>, usize),
    Pow(Box<Expr>, u32),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn err(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse { pos, msg: msg.into() }
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<(usize, char)> = s.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().map(|x| x.1).collect();
            out.push((pos, Tok::Num(text.parse().expect("digits"))));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            i += 1;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            out.push((pos, Tok::Ident(chars[start..i].iter().map(|x| x.1).collect())));
        } else if "+-*/^()".contains(c) {
            out.push((pos, Tok::Op(c)));
            i += 1;
        } else {
            return Err(err(pos, format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    i: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.i).map_or(self.end, |t| t.0)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.peek() == Some(&Tok::Op('/')) {
                let pos = self.pos();
                self.i += 1;
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?), pos);
            } else if matches!(self.peek(), Some(Tok::Num(_) | Tok::Ident(_) | Tok::Op('('))) {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.eat('^') {
            let pos = self.pos();
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.i += 1;
                    let e: u32 = n.try_into().map_err(|_| err(pos, "exponent too large"))?;
                    Ok(Expr::Pow(Box::new(base), e))
                }
                _ => Err(err(pos, "expected a non-negative integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.i += 1;
                Ok(Expr::Num(n))
            }
            Some(Tok::Ident(name)) => {
                self.i += 1;
                Ok(Expr::Var { name, pos })
            }
            Some(Tok::Op('(')) => {
                self.i += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(err(self.pos(), "expected ')'"));
                }
                Ok(e)
            }
            Some(Tok::Op(c)) => Err(err(pos, format!("unexpected {c:?}"))),
            None => Err(err(pos, "unexpected end of input")),
        }
    }
}

/// Parse an expression into a syntax tree.
pub fn parse_expr(s: &str) -> Result<Expr> {
    let toks = lex(s)?;
    let mut p = Parser { toks, i: 0, end: s.len() };
    let e = p.expr()?;
    if p.i != p.toks.len() {
        return Err(err(p.pos(), "trailing input"));
    }
    Ok(e)
}

/// A target ring for [`Expr::eval`].
pub trait Ring {
    type Elem: Clone;
    fn from_int(&self, n: &BigInt) -> Result<Self::Elem>;
    fn var(&self, name: &str) -> Option<Self::Elem>;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
    fn neg(&self, a: &Self::Elem) -> Result<Self::Elem>;
    /// Division; rings without it return `None`.
    fn div(&self, _a: &Self::Elem, _b: &Self::Elem) -> Option<Result<Self::Elem>> {
        None
    }
    fn one(&self) -> Result<Self::Elem> {
        self.from_int(&BigInt::from(1))
    }
}

impl Expr {
    pub fn eval<R: Ring>(&self, ring: &R) -> Result<R::Elem> {
        match self {
            Expr::Num(n) => ring.from_int(n),
            Expr::Var { name, pos } => ring.var(name).ok_or_else(|| err(*pos, format!("unknown symbol {name:?}"))),
            Expr::Neg(a) => ring.neg(&a.eval(ring)?),
            Expr::Add(a, b) => ring.add(&a.eval(ring)?, &b.eval(ring)?),
            Expr::Sub(a, b) => ring.sub(&a.eval(ring)?, &b.eval(ring)?),
            Expr::Mul(a, b) => ring.mul(&a.eval(ring)?, &b.eval(ring)?),
            Expr::Div(a, b, pos) => ring
                .div(&a.eval(ring)?, &b.eval(ring)?)
                .unwrap_or_else(|| Err(err(*pos, "division is not available here"))),
            Expr::Pow(a, e) => {
                let base = a.eval(ring)?;
                let mut acc = ring.one()?;
                for _ in 0..*e {
                    acc = ring.mul(&acc, &base)?;
                }
                Ok(acc)
            }
        }
    }
}

/// Parse and evaluate in one step.
pub fn parse_in<R: Ring>(s: &str, ring: &R) -> Result<R::Elem> {
    parse_expr(s)?.eval(ring)
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Ints;
    impl Ring for Ints {
        type Elem = BigInt;
        fn from_int(&self, n: &BigInt) -> Result<BigInt> {
            Ok(n.clone())
        }
        fn var(&self, name: &str) -> Option<BigInt> {
            (name == "x").then(|| BigInt::from(3))
        }
        fn add(&self, a: &BigInt, b: &BigInt) -> Result<BigInt> {
            Ok(a + b)
        }
        fn sub(&self, a: &BigInt, b: &BigInt) -> Result<BigInt> {
            Ok(a - b)
        }
        fn mul(&self, a: &BigInt, b: &BigInt) -> Result<BigInt> {
            Ok(a * b)
        }
        fn neg(&self, a: &BigInt) -> Result<BigInt> {
            Ok(-a)
        }
    }

    fn ev(s: &str) -> Result<BigInt> {
        parse_in(s, &Ints)
    }

    #[test]
    fn precedence() {
        assert_eq!(ev("1+2*3").unwrap(), BigInt::from(7));
        assert_eq!(ev("-x^2").unwrap(), BigInt::from(-9));
        assert_eq!(ev("2x^2-x-1").unwrap(), BigInt::from(14));
        assert_eq!(ev("(x+1)(x-1)").unwrap(), BigInt::from(8));
        assert_eq!(ev("x^0").unwrap(), BigInt::from(1));
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(ev("1+").unwrap_err(), Error::Parse { pos: 2, msg: "unexpected end of input".into() });
        assert!(matches!(ev("1 + y"), Err(Error::Parse { pos: 4, .. })));
        assert!(matches!(ev("x/2"), Err(Error::Parse { pos: 1, .. })));
        assert!(matches!(ev("x^y"), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(ev("(x"), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(ev("x $"), Err(Error::Parse { pos: 2, .. })));
    }
}
