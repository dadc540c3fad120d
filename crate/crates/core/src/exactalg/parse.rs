//! Recursive-descent parser for rational expressions in `x1 … xs`.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | variable | '(' expr ')'
//! ```
//!
//! Whitespace is ignored. Positions in errors are byte offsets.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::ratfun::RationalFunction;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Int(BigInt),
    Var(String),
    Op(char),
}

fn tokenize(text: &str) -> Result<Vec<(Token, usize)>> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&(_, d)) = chars.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                s.push(d);
                chars.next();
            }
            out.push((Token::Int(s.parse().expect("digits")), pos));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&(_, d)) = chars.peek() {
                if !(d.is_ascii_alphanumeric() || d == '_') {
                    break;
                }
                s.push(d);
                chars.next();
            }
            out.push((Token::Var(s), pos));
        } else if "+-*/^()".contains(c) {
            out.push((Token::Op(c), pos));
            chars.next();
        } else {
            return Err(Error::Syntax { pos, message: format!("unexpected character '{c}'") });
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(Token, usize)>,
    at: usize,
    end: usize,
    nvars: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.at).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.tokens.get(self.at).map_or(self.end, |(_, p)| *p)
    }

    fn eat_op(&mut self, c: char) -> bool {
        if self.peek() == Some(&Token::Op(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn syntax<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.pos(), message: message.into() })
    }

    fn expr(&mut self) -> Result<RationalFunction> {
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

    fn term(&mut self) -> Result<RationalFunction> {
        let mut acc = self.unary()?;
        loop {
            if self.eat_op('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat_op('/') {
                let pos = self.pos();
                let rhs = self.unary()?;
                acc = acc.checked_div(&rhs).map_err(|e| match e {
                    Error::DivisionByZero => Error::Syntax { pos, message: "division by the zero polynomial".into() },
                    other => other,
                })?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RationalFunction> {
        if self.eat_op('-') {
            return Ok(-&self.unary()?);
        }
        if self.eat_op('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<RationalFunction> {
        let base = self.atom()?;
        if !self.eat_op('^') {
            return Ok(base);
        }
        match self.peek().cloned() {
            Some(Token::Int(k)) => {
                let Ok(k) = u32::try_from(&k) else {
                    return self.syntax("exponent too large");
                };
                self.at += 1;
                Ok(base.pow(k))
            }
            _ => self.syntax("expected a nonnegative integer exponent"),
        }
    }

    fn atom(&mut self) -> Result<RationalFunction> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Token::Int(n)) => {
                self.at += 1;
                Ok(RationalFunction::constant(self.nvars, BigRational::from_integer(n)))
            }
            Some(Token::Var(name)) => {
                self.at += 1;
                let index = name
                    .strip_prefix('x')
                    .filter(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()) && !d.starts_with('0'))
                    .and_then(|d| d.parse::<usize>().ok())
                    .filter(|&i| i >= 1 && i <= self.nvars);
                match index {
                    Some(i) => Ok(RationalFunction::variable(self.nvars, i - 1)),
                    None => Err(Error::UnknownVariable { name, pos }),
                }
            }
            Some(Token::Op('(')) => {
                self.at += 1;
                let inner = self.expr()?;
                if !self.eat_op(')') {
                    return self.syntax("expected ')'");
                }
                Ok(inner)
            }
            Some(Token::Op(c)) => self.syntax(format!("unexpected '{c}'")),
            None => self.syntax("unexpected end of input"),
        }
    }
}

/// Parses `text` as a rational function in the variables `x1 … x{nvars}`.
pub fn parse(text: &str, nvars: usize) -> Result<RationalFunction> {
    let tokens = tokenize(text)?;
    let mut p = Parser { tokens, at: 0, end: text.len(), nvars };
    let f = p.expr()?;
    if p.at != p.tokens.len() {
        return p.syntax("unexpected trailing input");
    }
    Ok(f)
}
