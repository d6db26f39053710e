//! Expression grammar shared by character polynomials and trace
//! expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' INT)?
//! atom   := INT ('/' INT)? | '(' expr ')'
//!         | 'loop(' WORD ')' | 'arc(' POINT ',' POINT ')'
//!         | 'X(' INT ')' | 'Xi(' INT ')' | 'Th(' INT ',' INT ')'
//!         | 'tr(' expr ')' | 'Id'
//! POINT  := WORD '.p' INT
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::charalg::{CharAlgebra, CharPoly};
use crate::error::{Error, ParseError, Result};
use crate::groupact::{default_generator_name, MarkedPoint, Word};
use crate::tracealg::{ConExpr, InvExpr, Letter};

type PResult<T> = std::result::Result<T, ParseError>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Ast {
    Num(BigRational),
    Loop(Word),
    Arc(MarkedPoint, MarkedPoint),
    Letter(Letter),
    Id,
    Tr(Box<Ast>),
    Neg(Box<Ast>),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Pow(Box<Ast>, u32),
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    resolve: &'a dyn Fn(&str) -> Option<u32>,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> PResult<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{c}'")))
        }
    }

    fn error(&self, msg: impl Into<String>) -> ParseError {
        ParseError::new(self.pos, msg)
    }

    fn integer(&mut self) -> PResult<BigInt> {
        self.skip_ws();
        let start = self.pos;
        let len = self.src[start..].chars().take_while(char::is_ascii_digit).count();
        if len == 0 {
            return Err(self.error("expected an integer"));
        }
        self.pos += len;
        Ok(self.src[start..self.pos].parse().expect("digits"))
    }

    fn small(&mut self) -> PResult<u32> {
        let start = self.pos;
        let v = self.integer()?;
        u32::try_from(v).map_err(|_| ParseError::new(start, "integer too large"))
    }

    fn ident(&mut self) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        let len = self.src[start..]
            .chars()
            .take_while(|c| c.is_ascii_alphanumeric() || *c == '_')
            .count();
        self.pos += len;
        &self.src[start..self.pos]
    }

    /// Raw text up to (not including) the next `stop` character.
    fn raw_until(&mut self, stops: &[char]) -> PResult<(usize, &'a str)> {
        let start = self.pos;
        match self.src[start..].find(stops) {
            Some(k) => {
                self.pos = start + k;
                Ok((start, &self.src[start..start + k]))
            }
            None => Err(ParseError::new(self.src.len(), format!("expected one of {stops:?}"))),
        }
    }

    fn word(&mut self, stops: &[char]) -> PResult<Word> {
        let (start, text) = self.raw_until(stops)?;
        Word::parse_with(text, start, self.resolve)
    }

    fn point(&mut self, stops: &[char]) -> PResult<MarkedPoint> {
        let (start, text) = self.raw_until(stops)?;
        let dot = text
            .find('.')
            .ok_or_else(|| ParseError::new(start, "expected a point WORD.pJ"))?;
        let prefix = Word::parse_with(&text[..dot], start, self.resolve)?;
        let label = &text[dot + 1..];
        let lead = label.len() - label.trim_start().len();
        let label = label.trim_start();
        let orbit_pos = start + dot + 1 + lead;
        let digits = label
            .strip_prefix('p')
            .map(|k| k.chars().take_while(char::is_ascii_digit).count())
            .unwrap_or(0);
        let orbit = label
            .get(1..1 + digits)
            .and_then(|k| k.parse::<u32>().ok())
            .filter(|&k| k >= 1)
            .ok_or_else(|| ParseError::new(orbit_pos, "expected an orbit label pJ with J ≥ 1"))?;
        let rest = &label[1 + digits..];
        if let Some(k) = rest.find(|c: char| !c.is_whitespace()) {
            return Err(ParseError::new(orbit_pos + 1 + digits + k, "unexpected text after point"));
        }
        Ok(MarkedPoint::new(prefix, orbit))
    }

    fn expr(&mut self) -> PResult<Ast> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Ast::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Ast::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> PResult<Ast> {
        let mut lhs = self.unary()?;
        while self.eat('*') {
            lhs = Ast::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> PResult<Ast> {
        if self.eat('-') {
            return Ok(Ast::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if self.eat('^') {
            let k = self.small()?;
            return Ok(Ast::Pow(Box::new(base), k));
        }
        Ok(base)
    }

    fn atom(&mut self) -> PResult<Ast> {
        match self.peek() {
            None => Err(self.error("unexpected end of input")),
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                let d = if self.eat('/') {
                    let at = self.pos;
                    let d = self.integer()?;
                    if d == BigInt::from(0) {
                        return Err(ParseError::new(at, "zero denominator"));
                    }
                    d
                } else {
                    BigInt::from(1)
                };
                Ok(Ast::Num(BigRational::new(n, d)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                let name = self.ident();
                if name == "Id" {
                    return Ok(Ast::Id);
                }
                self.expect('(')?;
                let ast = match name {
                    "loop" => Ast::Loop(self.word(&[')'])?),
                    "arc" => {
                        let p = self.point(&[',', ')'])?;
                        self.expect(',')?;
                        Ast::Arc(p, self.point(&[')'])?)
                    }
                    "X" | "Xi" => {
                        let i = self.index()?;
                        Ast::Letter(if name == "X" { Letter::X(i) } else { Letter::Xi(i) })
                    }
                    "Th" => {
                        let j = self.index()?;
                        self.expect(',')?;
                        Ast::Letter(Letter::Th(j, self.index()?))
                    }
                    "tr" => Ast::Tr(Box::new(self.expr()?)),
                    _ => return Err(ParseError::new(start, format!("unknown function {name:?}"))),
                };
                self.expect(')')?;
                Ok(ast)
            }
            Some(c) => Err(self.error(format!("unexpected character '{c}'"))),
        }
    }

    fn index(&mut self) -> PResult<u32> {
        self.skip_ws();
        let at = self.pos;
        match self.small()? {
            0 => Err(ParseError::new(at, "indices start at 1")),
            i => Ok(i),
        }
    }
}

/// Parse with a custom generator-name resolver.
pub fn parse_ast_with(s: &str, resolve: &dyn Fn(&str) -> Option<u32>) -> PResult<Ast> {
    let mut p = Parser { src: s, pos: 0, resolve };
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

pub fn parse_ast(s: &str) -> PResult<Ast> {
    parse_ast_with(s, &default_generator_name)
}

impl Ast {
    /// `(max generator index, max orbit index)` mentioned.
    pub fn arity(&self) -> (u32, u32) {
        let both = |a: &Ast, b: &Ast| {
            let (x, y) = (a.arity(), b.arity());
            (x.0.max(y.0), x.1.max(y.1))
        };
        match self {
            Ast::Num(_) | Ast::Id | Ast::Letter(_) => (0, 0),
            Ast::Loop(w) => (w.max_index(), 0),
            Ast::Arc(p, q) => (
                p.prefix.max_index().max(q.prefix.max_index()),
                p.orbit.max(q.orbit),
            ),
            Ast::Tr(a) | Ast::Neg(a) | Ast::Pow(a, _) => a.arity(),
            Ast::Add(a, b) | Ast::Sub(a, b) | Ast::Mul(a, b) => both(a, b),
        }
    }

    /// Lower to a character polynomial with symbols canonicalized by `alg`.
    pub fn to_char(&self, alg: &CharAlgebra) -> Result<CharPoly> {
        Ok(match self {
            Ast::Num(q) => CharPoly::constant(q.clone()),
            Ast::Loop(w) => alg.loop_(w),
            Ast::Arc(p, q) => alg.arc(p, q),
            Ast::Letter(_) | Ast::Id | Ast::Tr(_) => {
                return Err(Error::Invalid(
                    "trace-algebra syntax in a character expression".into(),
                ))
            }
            Ast::Neg(a) => a.to_char(alg)?.neg(),
            Ast::Add(a, b) => a.to_char(alg)?.add(&b.to_char(alg)?),
            Ast::Sub(a, b) => a.to_char(alg)?.sub(&b.to_char(alg)?),
            Ast::Mul(a, b) => a.to_char(alg)?.mul(&b.to_char(alg)?),
            Ast::Pow(a, k) => a.to_char(alg)?.pow(*k),
        })
    }

    /// Lower to a concomitant; scalars become multiples of `Id`.
    pub fn to_con(&self) -> Result<ConExpr> {
        Ok(match self {
            Ast::Num(q) => ConExpr::scalar(InvExpr::constant(q.clone())),
            Ast::Id => ConExpr::identity(),
            Ast::Letter(l) => ConExpr::letter(*l),
            Ast::Tr(a) => ConExpr::scalar(a.to_con()?.tr()),
            Ast::Loop(_) | Ast::Arc(..) => {
                return Err(Error::Invalid(
                    "character syntax in a trace-algebra expression".into(),
                ))
            }
            Ast::Neg(a) => a.to_con()?.neg(),
            Ast::Add(a, b) => a.to_con()?.add(&b.to_con()?),
            Ast::Sub(a, b) => a.to_con()?.sub(&b.to_con()?),
            Ast::Mul(a, b) => a.to_con()?.mul(&b.to_con()?),
            Ast::Pow(a, k) => {
                let base = a.to_con()?;
                (0..*k).fold(ConExpr::identity(), |acc, _| acc.mul(&base))
            }
        })
    }

    /// Lower to a scalar invariant; fails if the expression is matrix-valued.
    pub fn to_inv(&self) -> Result<InvExpr> {
        self.to_con()?.as_scalar().ok_or_else(|| {
            Error::Invalid("expression is matrix-valued; wrap it in tr(...)".into())
        })
    }
}

pub fn parse_char(s: &str, alg: &CharAlgebra) -> Result<CharPoly> {
    parse_ast(s)?.to_char(alg)
}

pub fn parse_con(s: &str) -> Result<ConExpr> {
    parse_ast(s)?.to_con()
}

pub fn parse_inv(s: &str) -> Result<InvExpr> {
    parse_ast(s)?.to_inv()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn character_expressions() {
        let alg = CharAlgebra::free(2, 2);
        let f = parse_char("loop(g1)*loop(g2) - 3/2*arc(e.p1, g1 g2^-1.p2)^2", &alg).unwrap();
        let expected = alg.loop_(&w("g1")).mul(&alg.loop_(&w("g2"))).sub(
            &alg.arc(&MarkedPoint::base(1), &MarkedPoint::new(w("g1 g2^-1"), 2))
                .pow(2)
                .scale(&BigRational::new(3.into(), 2.into())),
        );
        assert_eq!(f, expected);
        assert_eq!(parse_char("loop(e)", &alg).unwrap(), CharPoly::int(2));
        assert_eq!(parse_char("arc(e.p1,e.p1)", &alg).unwrap(), CharPoly::zero());
        assert_eq!(parse_char("-(1 - 4)", &alg).unwrap(), CharPoly::int(3));
        assert_eq!(parse_ast("loop(g3) * arc(g1.p4, e.p2)").unwrap().arity(), (3, 4));
    }

    #[test]
    fn trace_expressions() {
        let e = parse_inv("tr(X(1)*Th(1,2)) - 2*tr(Xi(2))").unwrap();
        assert_eq!(e.arity(), (2, 2));
        assert!(parse_inv("X(1)").is_err());
        let c = parse_con("X(1)*Xi(1) + Id").unwrap();
        assert_eq!(c.arity(), (1, 0));
    }

    #[test]
    fn error_positions() {
        let err = parse_ast("loop(g1) + loop(h2)").unwrap_err();
        assert_eq!(err.pos, 16);
        let err = parse_ast("loop(g1) +").unwrap_err();
        assert_eq!(err.pos, 10);
        let err = parse_ast("arc(e.q1, e.p2)").unwrap_err();
        assert_eq!(err.pos, 6);
        let err = parse_ast("1 2").unwrap_err();
        assert_eq!(err.pos, 2);
        let err = parse_ast("foo(1)").unwrap_err();
        assert_eq!(err.pos, 0);
        assert!(parse_ast("3/0").is_err());
    }
}
