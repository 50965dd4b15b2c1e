use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::ast::{ClosedSpec, Expr, ExprKind, IdArg, LitPoint, Literal};
use crate::diagram::Point;
use crate::error::{Error, Result};
use crate::exactlin::{Poly, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(String),
    Ident(String),
    Arrow,
    Colon,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Lt,
    Gt,
    Star,
    PlusPlus,
    Plus,
    Minus,
    Slash,
    Dot,
    Caret,
    Eof,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(s) | Tok::Ident(s) => format!("`{s}`"),
        Tok::Eof => "end of input".into(),
        other => format!("{other:?}"),
    }
}

fn lex(input: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = input.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            out.push((Tok::Int(chars[start..i].iter().collect()), start));
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), start));
            continue;
        }
        let next = chars.get(i + 1).copied();
        let (tok, width) = match (c, next) {
            ('-', Some('>')) => (Tok::Arrow, 2),
            ('+', Some('+')) => (Tok::PlusPlus, 2),
            ('+', _) => (Tok::Plus, 1),
            ('-', _) => (Tok::Minus, 1),
            (':', _) => (Tok::Colon, 1),
            ('(', _) => (Tok::LParen, 1),
            (')', _) => (Tok::RParen, 1),
            ('[', _) => (Tok::LBracket, 1),
            (']', _) => (Tok::RBracket, 1),
            ('<', _) => (Tok::Lt, 1),
            ('>', _) => (Tok::Gt, 1),
            ('*', _) => (Tok::Star, 1),
            ('/', _) => (Tok::Slash, 1),
            ('·', _) | ('.', _) => (Tok::Dot, 1),
            ('^', _) => (Tok::Caret, 1),
            _ => {
                return Err(Error::Parse {
                    pos: start,
                    msg: format!("unexpected character `{c}`"),
                })
            }
        };
        out.push((tok, start));
        i += width;
    }
    out.push((Tok::Eof, chars.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    i: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.i].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.i + k).min(self.toks.len() - 1)].0
    }

    fn pos(&self) -> usize {
        self.toks[self.i].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.i].0.clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == t {
            self.bump();
            true
        } else {
            false
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn expect(&mut self, t: &Tok) -> Result<()> {
        if self.eat(t) {
            Ok(())
        } else {
            self.err(format!("expected {}, found {}", describe(t), describe(self.peek())))
        }
    }

    fn int(&mut self) -> Result<BigInt> {
        match self.peek().clone() {
            Tok::Int(s) => {
                self.bump();
                Ok(s.parse().unwrap())
            }
            other => self.err(format!("expected a number, found {}", describe(&other))),
        }
    }

    fn small(&mut self) -> Result<usize> {
        let pos = self.pos();
        let v = self.int()?;
        usize::try_from(v).map_err(|_| Error::Parse {
            pos,
            msg: "number too large".into(),
        })
    }

    fn ident(&mut self) -> Result<String> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            other => self.err(format!("expected a name, found {}", describe(&other))),
        }
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            let pos = self.pos();
            if self.eat(&Tok::Plus) {
                let rhs = self.term()?;
                lhs = Expr {
                    kind: ExprKind::Sum(Box::new(lhs), Box::new(rhs)),
                    pos,
                };
            } else if self.eat(&Tok::Minus) {
                let rhs_pos = self.pos();
                let rhs = self.term()?;
                let neg = Expr {
                    kind: ExprKind::Scale(-Poly::one(), Box::new(rhs)),
                    pos: rhs_pos,
                };
                lhs = Expr {
                    kind: ExprKind::Sum(Box::new(lhs), Box::new(neg)),
                    pos,
                };
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let save = self.i;
        let pos = self.pos();
        if let Ok(c) = self.coefficient() {
            if self.eat(&Tok::Dot) {
                let x = self.comp()?;
                return Ok(Expr {
                    kind: ExprKind::Scale(c, Box::new(x)),
                    pos,
                });
            }
        }
        self.i = save;
        self.comp()
    }

    /// `3/2`, `t`, or a parenthesised polynomial such as `(t^2 - 1)`.
    fn coefficient(&mut self) -> Result<Poly> {
        match self.peek().clone() {
            Tok::Int(_) => Ok(Poly::constant(self.rational()?)),
            Tok::Ident(s) if s == "t" => {
                self.bump();
                Ok(Poly::t())
            }
            Tok::LParen => {
                self.bump();
                let p = self.polynomial()?;
                self.expect(&Tok::RParen)?;
                Ok(p)
            }
            _ => self.err("expected a coefficient"),
        }
    }

    fn rational(&mut self) -> Result<Rational> {
        let num = self.int()?;
        if self.eat(&Tok::Slash) {
            let pos = self.pos();
            let den = self.int()?;
            if den.is_zero() {
                return Err(Error::Parse {
                    pos,
                    msg: "zero denominator".into(),
                });
            }
            return Ok(Rational::new(num, den));
        }
        Ok(Rational::from_integer(num))
    }

    fn polynomial(&mut self) -> Result<Poly> {
        let mut negate = self.eat(&Tok::Minus);
        let mut acc = Poly::zero();
        loop {
            let term = self.poly_term()?;
            acc = if negate { acc - term } else { acc + term };
            if self.eat(&Tok::Plus) {
                negate = false;
            } else if self.eat(&Tok::Minus) {
                negate = true;
            } else {
                return Ok(acc);
            }
        }
    }

    fn poly_term(&mut self) -> Result<Poly> {
        let mut c = None;
        if matches!(self.peek(), Tok::Int(_)) {
            c = Some(self.rational()?);
        }
        let mut power = None;
        if matches!(self.peek(), Tok::Ident(s) if s == "t") {
            self.bump();
            power = Some(if self.eat(&Tok::Caret) { self.small()? } else { 1 });
        }
        match (c, power) {
            (None, None) => self.err("expected a polynomial term"),
            (c, k) => {
                let c = c.unwrap_or_else(Rational::one);
                let k = k.unwrap_or(0);
                let mut coeffs = vec![Rational::zero(); k + 1];
                coeffs[k] = c;
                Ok(Poly::new(coeffs))
            }
        }
    }

    fn comp(&mut self) -> Result<Expr> {
        let mut lhs = self.oplus()?;
        loop {
            let pos = self.pos();
            if !self.eat(&Tok::Star) {
                return Ok(lhs);
            }
            let rhs = self.oplus()?;
            lhs = Expr {
                kind: ExprKind::Compose(Box::new(lhs), Box::new(rhs)),
                pos,
            };
        }
    }

    fn oplus(&mut self) -> Result<Expr> {
        let mut lhs = self.atom()?;
        loop {
            let pos = self.pos();
            if !self.eat(&Tok::PlusPlus) {
                return Ok(lhs);
            }
            let rhs = self.atom()?;
            lhs = Expr {
                kind: ExprKind::Oplus(Box::new(lhs), Box::new(rhs)),
                pos,
            };
        }
    }

    fn colours(&mut self) -> Result<Option<Vec<String>>> {
        if !self.eat(&Tok::Lt) {
            return Ok(None);
        }
        let mut out = Vec::new();
        while !self.eat(&Tok::Gt) {
            out.push(self.ident()?);
        }
        Ok(Some(out))
    }

    fn atom(&mut self) -> Result<Expr> {
        let pos = self.pos();
        let kind = match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let e = self.sum()?;
                self.expect(&Tok::RParen)?;
                return Ok(e);
            }
            Tok::LBracket => {
                self.bump();
                let l = self.literal()?;
                self.expect(&Tok::RBracket)?;
                ExprKind::Literal(l)
            }
            Tok::Ident(name) => {
                self.bump();
                match name.as_str() {
                    "id" => {
                        if let Some(cs) = self.colours()? {
                            ExprKind::Id(IdArg::Colours(cs))
                        } else {
                            self.expect(&Tok::LParen)?;
                            let n = self.small()?;
                            self.expect(&Tok::RParen)?;
                            ExprKind::Id(IdArg::Count(n))
                        }
                    }
                    "cup" | "cap" => {
                        let c = match self.colours()? {
                            None => None,
                            Some(cs) if cs.len() == 1 => Some(cs[0].clone()),
                            Some(_) => return Err(Error::Parse {
                                pos,
                                msg: format!("{name} takes exactly one colour"),
                            }),
                        };
                        if name == "cup" {
                            ExprKind::Cup(c)
                        } else {
                            ExprKind::Cap(c)
                        }
                    }
                    "sym" => match self.colours()? {
                        None => ExprKind::Sym(None),
                        Some(cs) if cs.len() == 2 => {
                            ExprKind::Sym(Some((cs[0].clone(), cs[1].clone())))
                        }
                        Some(_) => {
                            return Err(Error::Parse {
                                pos,
                                msg: "sym takes exactly two colours".into(),
                            })
                        }
                    },
                    "perm" => ExprKind::Perm(self.cycles()?),
                    "e" | "ecoev" => {
                        self.expect(&Tok::LParen)?;
                        let k = self.small()?;
                        self.expect(&Tok::RParen)?;
                        if name == "e" {
                            ExprKind::Antisym(k)
                        } else {
                            ExprKind::CoevAntisym(k)
                        }
                    }
                    "loop" => ExprKind::Loop,
                    "t" => {
                        return Err(Error::Parse {
                            pos,
                            msg: "`t` is a coefficient and must be followed by `·`".into(),
                        })
                    }
                    _ => ExprKind::Name(name),
                }
            }
            Tok::Int(_) if *self.peek_at(1) == Tok::Arrow => {
                return self.err("diagram literals inside expressions go in brackets: [m->n : ...]")
            }
            other => return self.err(format!("expected a diagram, found {}", describe(&other))),
        };
        Ok(Expr { kind, pos })
    }

    fn cycles(&mut self) -> Result<Vec<Vec<usize>>> {
        self.expect(&Tok::LParen)?;
        let mut cycles = Vec::new();
        if matches!(self.peek(), Tok::LParen) {
            while self.eat(&Tok::LParen) {
                cycles.push(self.labels()?);
                self.expect(&Tok::RParen)?;
            }
        } else if matches!(self.peek(), Tok::Int(_)) {
            cycles.push(self.labels()?);
        }
        self.expect(&Tok::RParen)?;
        Ok(cycles)
    }

    fn labels(&mut self) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        while matches!(self.peek(), Tok::Int(_)) {
            let pos = self.pos();
            let a = self.small()?;
            if a == 0 {
                return Err(Error::Parse {
                    pos,
                    msg: "cycle labels start at 1".into(),
                });
            }
            out.push(a);
        }
        Ok(out)
    }

    fn literal(&mut self) -> Result<Literal> {
        let m = self.small()?;
        self.expect(&Tok::Arrow)?;
        let n = self.small()?;
        self.expect(&Tok::Colon)?;
        let mut pairs = Vec::new();
        while self.eat(&Tok::LParen) {
            let a = self.lit_point(m, n)?;
            let b = self.lit_point(m, n)?;
            self.expect(&Tok::RParen)?;
            pairs.push((a, b));
        }
        let mut closed = ClosedSpec::Count(0);
        if self.eat(&Tok::Plus) {
            if matches!(self.peek(), Tok::Int(_)) {
                closed = ClosedSpec::Count(self.small()?);
            } else {
                let mut orbits = Vec::new();
                while self.eat(&Tok::LBracket) {
                    orbits.push(self.ident()?);
                    self.expect(&Tok::RBracket)?;
                }
                if orbits.is_empty() {
                    return self.err("expected a loop count or coloured loops after `+`");
                }
                closed = ClosedSpec::Orbits(orbits);
            }
        }
        Ok(Literal {
            m,
            n,
            pairs,
            closed,
        })
    }

    fn lit_point(&mut self, m: usize, n: usize) -> Result<LitPoint> {
        let pos = self.pos();
        let name = self.ident()?;
        let bad = || Error::Parse {
            pos,
            msg: format!("`{name}` is not a boundary point of a {m}->{n} diagram"),
        };
        let (side, digits) = name.split_at(1);
        let k: usize = digits.parse().map_err(|_| bad())?;
        let point = match side {
            "s" if (1..=m).contains(&k) => Point::Source(k - 1),
            "t" if (1..=n).contains(&k) => Point::Target(k - 1),
            _ => return Err(bad()),
        };
        let colour = if self.eat(&Tok::Colon) {
            Some(self.ident()?)
        } else {
            None
        };
        Ok(LitPoint { point, colour })
    }
}

/// Parses an expression. A bare diagram literal is accepted when it is the
/// whole input.
pub fn parse(input: &str) -> Result<Expr> {
    let toks = lex(input)?;
    let mut p = Parser { toks, i: 0 };
    let e = if matches!(p.peek(), Tok::Int(_)) && *p.peek_at(1) == Tok::Arrow {
        let pos = p.pos();
        Expr {
            kind: ExprKind::Literal(p.literal()?),
            pos,
        }
    } else {
        p.sum()?
    };
    if *p.peek() != Tok::Eof {
        return p.err(format!("unexpected {}", describe(p.peek())));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn error_positions() {
        match parse("cup * ") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 6),
            other => panic!("{other:?}"),
        }
        match parse("cup ? cap") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        match parse("2->0 : (s1 s3)") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 11),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn precedence() {
        let e = parse("cap ++ id(1) * id(1) ++ cup").unwrap();
        assert!(matches!(e.kind, ExprKind::Compose(..)));
        let e = parse("3/2·cup + (-1)·cup").unwrap();
        assert!(matches!(e.kind, ExprKind::Sum(..)));
    }

    #[test]
    fn polynomial_coefficients() {
        let e = parse("(t^2 - 3/2t + 1)·id(1)").unwrap();
        match e.kind {
            ExprKind::Scale(p, _) => assert_eq!(p.to_string(), "t^2 - 3/2t + 1"),
            other => panic!("{other:?}"),
        }
    }
}
