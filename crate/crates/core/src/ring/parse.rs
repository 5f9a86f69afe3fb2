//! Recursive-descent parser for ring element expressions.
//!
//! Grammar: `expr := term (('+'|'-') term)*`, `term := unary (('*'|'/') unary)*`,
//! `unary := '-' unary | power`, `power := atom ('^' integer)?`,
//! `atom := integer | identifier | '(' expr ')'`. Division is only allowed by
//! integer literals and must be exact in the target ring.

use num_bigint::BigInt;

use super::{Elem, Ring};
use crate::error::{Result, WittError};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let lit: String = chars[start..i].iter().collect();
            out.push(Token::Int(lit.parse().expect("digits")));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Token::Op(c));
            i += 1;
        } else {
            return Err(WittError::parse(format!("unexpected character {c:?} in {s:?}")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    ring: &'a Ring,
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn eat_op(&mut self, op: char) -> bool {
        if self.peek() == Some(&Token::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Elem> {
        let mut acc = self.term()?;
        loop {
            if self.eat_op('+') {
                acc = &acc + &self.term()?;
            } else if self.eat_op('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Elem> {
        let mut acc = self.unary()?;
        loop {
            if self.eat_op('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat_op('/') {
                match self.tokens.get(self.pos).cloned() {
                    Some(Token::Int(k)) => {
                        self.pos += 1;
                        acc = acc.exact_div_int(&k)?;
                    }
                    _ => return Err(WittError::parse("division is only supported by integer literals")),
                }
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Elem> {
        if self.eat_op('-') {
            Ok(-self.unary()?)
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Elem> {
        let base = self.atom()?;
        if self.eat_op('^') {
            match self.tokens.get(self.pos).cloned() {
                Some(Token::Int(k)) => {
                    self.pos += 1;
                    let k: u64 = k.try_into().map_err(|_| WittError::parse("exponent too large"))?;
                    Ok(base.pow(k))
                }
                _ => Err(WittError::parse("expected integer exponent after '^'")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Elem> {
        match self.tokens.get(self.pos).cloned() {
            Some(Token::Int(k)) => {
                self.pos += 1;
                Ok(self.ring.from_bigint(&k))
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                self.ring.var(&name).map_err(|_| WittError::parse(format!("unknown variable {name} in ring {}", self.ring)))
            }
            Some(Token::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat_op(')') {
                    return Err(WittError::parse("missing ')'"));
                }
                Ok(e)
            }
            other => Err(WittError::parse(format!("unexpected token {other:?}"))),
        }
    }
}

pub(super) fn parse_expr(ring: &Ring, s: &str) -> Result<Elem> {
    let tokens = tokenize(s)?;
    if tokens.is_empty() {
        return Err(WittError::parse("empty expression"));
    }
    let mut p = Parser { ring, tokens, pos: 0 };
    let e = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(WittError::parse(format!("trailing input in {s:?}")));
    }
    Ok(e)
}
