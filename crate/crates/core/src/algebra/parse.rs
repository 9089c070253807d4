//! A small expression parser for polynomials such as
//! `(x1-x2)^3(x1+x2)/16 - 3/2*q1*l2` or `x1^2x2 + q1x2`.
//!
//! Juxtaposition is multiplication. Division is only allowed by nonzero
//! constants. Identifiers are looked up in an [`Environment`]; underscores
//! inside identifiers are ignored, so `x_1` and `x1` are the same variable.

use std::collections::HashMap;

use num_bigint::BigInt;

use super::{Polynomial, Scalar};
use crate::error::{Error, Result};

/// Variable bindings for the parser.
#[derive(Clone, Debug)]
pub struct Environment {
    rank: usize,
    vars: HashMap<String, Polynomial>,
}

impl Environment {
    /// Binds `l1..ll` (also `λ1..`, `lambda1..`) and `q1..ql`.
    pub fn new(rank: usize) -> Self {
        let mut vars = HashMap::new();
        for i in 0..rank {
            let l = Polynomial::lambda(rank, i);
            vars.insert(format!("l{}", i + 1), l.clone());
            vars.insert(format!("λ{}", i + 1), l.clone());
            vars.insert(format!("lambda{}", i + 1), l);
            vars.insert(format!("q{}", i + 1), Polynomial::q(rank, i));
        }
        Environment { rank, vars }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn bind(&mut self, name: &str, value: Polynomial) -> Result<()> {
        if value.rank() != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: value.rank(),
            });
        }
        self.vars.insert(normalize(name), value);
        Ok(())
    }

    /// Binds every `name = expression` pair, each expression parsed in the
    /// environment as it stands before any of the new bindings.
    pub fn with_dictionary<'a, I>(mut self, dictionary: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        let base = self.clone();
        for (name, expr) in dictionary {
            let value = parse_polynomial(expr, &base)?;
            self.bind(name, value)?;
        }
        Ok(self)
    }
}

fn normalize(name: &str) -> String {
    name.chars().filter(|&c| c != '_').collect()
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
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
            let s: String = chars[start..i].iter().collect();
            out.push(Token::Num(s.parse().unwrap()));
        } else if c.is_alphabetic() || c == '_' {
            // Letters, then digits: `x1x2` is two identifiers.
            let start = i;
            while i < chars.len() && (chars[i].is_alphabetic() || chars[i] == '_') {
                i += 1;
            }
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '_') {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Token::Ident(normalize(&s)));
        } else if "+-*/^()".contains(c) {
            out.push(Token::Op(c));
            i += 1;
        } else if c == '−' {
            out.push(Token::Op('-'));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character `{c}` in `{text}`")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    env: &'a Environment,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Token::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc += &self.term()?;
            } else if self.eat('-') {
                acc -= &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(
            self.peek(),
            Some(Token::Num(_)) | Some(Token::Ident(_)) | Some(Token::Op('('))
        )
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat('/') {
                let d = self.unary()?;
                let c = d
                    .as_constant()
                    .filter(|c| !num_traits::Zero::is_zero(c))
                    .ok_or_else(|| Error::Parse("division by a non-constant or zero".into()))?;
                acc = acc.scale(&c.recip());
            } else if self.starts_atom() {
                acc = &acc * &self.power()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Polynomial> {
        if self.eat('-') {
            Ok(-self.unary()?)
        } else if self.eat('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Token::Num(n)) => {
                    self.pos += 1;
                    let e: u32 = n
                        .try_into()
                        .map_err(|_| Error::Parse("exponent too large".into()))?;
                    Ok(base.pow(e))
                }
                _ => Err(Error::Parse("expected a non-negative integer exponent".into())),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek().cloned() {
            Some(Token::Num(n)) => {
                self.pos += 1;
                Ok(Polynomial::constant(self.env.rank, Scalar::from_integer(n)))
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                self.env
                    .vars
                    .get(&name)
                    .cloned()
                    .ok_or_else(|| Error::Parse(format!("unknown variable `{name}`")))
            }
            Some(Token::Op('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse("missing `)`".into()));
                }
                Ok(inner)
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

/// Parses a polynomial expression in the given environment.
pub fn parse_polynomial(text: &str, env: &Environment) -> Result<Polynomial> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { tokens, pos: 0, env };
    let out = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(Error::Parse(format!("trailing input in `{text}`")));
    }
    Ok(out)
}
