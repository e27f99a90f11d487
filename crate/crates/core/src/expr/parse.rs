//! Recursive-descent parser.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := base ('^' '-'? integer)?
//! base   := integer | ident | ident '\''* '(' expr ')' | '(' expr ')'
//! ```

use num_bigint::BigInt;

use super::{Expr, ExprError, Rational, BUILTINS};
use crate::Chart;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String, u32),
    Op(char),
    End,
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl Lexer<'_> {
    fn next(&mut self) -> Result<(Tok, usize), ExprError> {
        let bytes = self.src.as_bytes();
        while self.pos < bytes.len() && bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        let start = self.pos;
        let Some(&c) = bytes.get(self.pos) else { return Ok((Tok::End, start)) };
        if c.is_ascii_digit() {
            while self.pos < bytes.len() && bytes[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let n: BigInt = self.src[start..self.pos].parse().expect("digits");
            return Ok((Tok::Int(n), start));
        }
        if c.is_ascii_alphabetic() || c == b'_' {
            while self.pos < bytes.len() && (bytes[self.pos].is_ascii_alphanumeric() || bytes[self.pos] == b'_') {
                self.pos += 1;
            }
            let name = self.src[start..self.pos].to_string();
            let mut primes = 0;
            while self.pos < bytes.len() && bytes[self.pos] == b'\'' {
                primes += 1;
                self.pos += 1;
            }
            return Ok((Tok::Ident(name, primes), start));
        }
        if b"+-*/^()".contains(&c) {
            self.pos += 1;
            return Ok((Tok::Op(c as char), start));
        }
        let ch = self.src[start..].chars().next().unwrap();
        Err(ExprError::Syntax { pos: start, message: format!("unexpected character `{ch}`") })
    }
}

struct Parser<'a> {
    lex: Lexer<'a>,
    tok: Tok,
    pos: usize,
    chart: &'a Chart,
}

pub(super) fn parse(text: &str, chart: &Chart) -> Result<Expr, ExprError> {
    let mut p = Parser { lex: Lexer { src: text, pos: 0 }, tok: Tok::End, pos: 0, chart };
    p.bump()?;
    if p.tok == Tok::End {
        return Err(ExprError::Syntax { pos: 0, message: "empty expression".into() });
    }
    let e = p.expr()?;
    if p.tok != Tok::End {
        return Err(p.unexpected());
    }
    Ok(e)
}

impl Parser<'_> {
    fn bump(&mut self) -> Result<(), ExprError> {
        let (t, pos) = self.lex.next()?;
        self.tok = t;
        self.pos = pos;
        Ok(())
    }

    fn unexpected(&self) -> ExprError {
        let message = match &self.tok {
            Tok::End => "unexpected end of input".to_string(),
            Tok::Int(n) => format!("unexpected number `{n}`"),
            Tok::Ident(s, _) => format!("unexpected identifier `{s}`"),
            Tok::Op(c) => format!("unexpected `{c}`"),
        };
        ExprError::Syntax { pos: self.pos, message }
    }

    fn expect(&mut self, c: char) -> Result<(), ExprError> {
        if self.tok == Tok::Op(c) {
            self.bump()
        } else {
            Err(self.unexpected())
        }
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut terms = vec![self.term()?];
        loop {
            match self.tok {
                Tok::Op('+') => {
                    self.bump()?;
                    terms.push(self.term()?);
                }
                Tok::Op('-') => {
                    self.bump()?;
                    terms.push(Expr::Neg(Box::new(self.term()?)));
                }
                _ => break,
            }
        }
        Ok(if terms.len() == 1 { terms.pop().unwrap() } else { Expr::Add(terms) })
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut acc = self.unary()?;
        loop {
            match self.tok {
                Tok::Op('*') => {
                    self.bump()?;
                    let rhs = self.unary()?;
                    acc = match acc {
                        Expr::Mul(mut xs) => {
                            xs.push(rhs);
                            Expr::Mul(xs)
                        }
                        other => Expr::Mul(vec![other, rhs]),
                    };
                }
                Tok::Op('/') => {
                    self.bump()?;
                    let at = self.pos;
                    let rhs = self.unary()?;
                    if rhs.is_literal_zero() {
                        return Err(ExprError::ZeroDenominatorLiteral { pos: at });
                    }
                    // fold integer literals into a rational literal
                    acc = match (acc, rhs) {
                        (Expr::Num(a), Expr::Num(b)) => Expr::Num(a / b),
                        (a, b) => Expr::Div(Box::new(a), Box::new(b)),
                    };
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Expr, ExprError> {
        if self.tok == Tok::Op('-') {
            self.bump()?;
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ExprError> {
        let base = self.base()?;
        if self.tok != Tok::Op('^') {
            return Ok(base);
        }
        self.bump()?;
        let negative = self.tok == Tok::Op('-');
        if negative {
            self.bump()?;
        }
        let Tok::Int(n) = &self.tok else { return Err(self.unexpected()) };
        let k: i64 = i64::try_from(n).map_err(|_| ExprError::ExponentTooLarge)?;
        if k > u32::MAX as i64 {
            return Err(ExprError::ExponentTooLarge);
        }
        self.bump()?;
        Ok(Expr::Pow(Box::new(base), if negative { -k } else { k }))
    }

    fn base(&mut self) -> Result<Expr, ExprError> {
        match self.tok.clone() {
            Tok::Int(n) => {
                self.bump()?;
                Ok(Expr::Num(Rational::from_integer(n)))
            }
            Tok::Op('(') => {
                self.bump()?;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Ident(name, primes) => {
                let at = self.pos;
                self.bump()?;
                let builtin = BUILTINS.contains(&name.as_str());
                let opaque = self.chart.is_opaque(&name);
                if primes > 0 && !opaque {
                    if builtin || self.chart.index_of(&name).is_some() {
                        return Err(ExprError::DerivativeOnNonOpaque { name, pos: at });
                    }
                    return Err(ExprError::UnknownIdentifier { name, pos: at });
                }
                if let Some(i) = self.chart.index_of(&name) {
                    if self.tok == Tok::Op('(') {
                        return Err(ExprError::NotAFunction { name, pos: at });
                    }
                    return Ok(Expr::Coord(i));
                }
                if !(builtin || opaque) {
                    return Err(ExprError::UnknownIdentifier { name, pos: at });
                }
                if self.tok != Tok::Op('(') {
                    return Err(ExprError::MissingArgument { name, pos: at });
                }
                self.bump()?;
                let arg = self.expr()?;
                self.expect(')')?;
                Ok(Expr::Apply { name, order: primes, arg: Box::new(arg) })
            }
            _ => Err(self.unexpected()),
        }
    }
}
