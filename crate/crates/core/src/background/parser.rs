//! Recursive-descent parser for background-potential expressions.
//!
//! Grammar (explicit multiplication only):
//!   expr   := term (('+' | '-') term)*
//!   term   := unary ('*' unary)*
//!   unary  := ('+' | '-')* power
//!   power  := atom ('^' uint)?
//!   atom   := number | 'x' | 'y' | 'z' | '(' expr ')'

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::Polynomial;
use crate::error::Error;
use crate::Result;

/// Largest literal exponent accepted; the total-degree cap is checked after
/// expansion, this just keeps `pow` loops short.
const MAX_EXPONENT: u32 = 64;

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(f64),
    Var(usize),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push(Token::Plus);
                i += 1;
            }
            '-' => {
                out.push(Token::Minus);
                i += 1;
            }
            '*' => {
                out.push(Token::Star);
                i += 1;
            }
            '^' => {
                out.push(Token::Caret);
                i += 1;
            }
            '(' => {
                out.push(Token::LParen);
                i += 1;
            }
            ')' => {
                out.push(Token::RParen);
                i += 1;
            }
            'x' => {
                out.push(Token::Var(0));
                i += 1;
            }
            'y' => {
                out.push(Token::Var(1));
                i += 1;
            }
            'z' => {
                out.push(Token::Var(2));
                i += 1;
            }
            '0'..='9' | '.' => {
                let start = i;
                while i < bytes.len() && matches!(bytes[i] as char, '0'..='9' | '.') {
                    i += 1;
                }
                // Optional exponent part: e/E [+-] digits.
                if i < bytes.len() && matches!(bytes[i] as char, 'e' | 'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && matches!(bytes[j] as char, '+' | '-') {
                        j += 1;
                    }
                    if j < bytes.len() && (bytes[j] as char).is_ascii_digit() {
                        i = j;
                        while i < bytes.len() && (bytes[i] as char).is_ascii_digit() {
                            i += 1;
                        }
                    }
                }
                let lit = &text[start..i];
                let value: f64 = lit
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad numeric literal '{lit}'")))?;
                out.push(Token::Num(value));
            }
            other => return Err(Error::Parse(format!("unexpected character '{other}'"))),
        }
    }
    if out.is_empty() {
        return Err(Error::Parse(String::from("empty expression")));
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        while let Some(tok) = self.peek() {
            match tok {
                Token::Plus => {
                    self.next();
                    acc = acc.add(&self.term()?);
                }
                Token::Minus => {
                    self.next();
                    acc = acc.sub(&self.term()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        while let Some(Token::Star) = self.peek() {
            self.next();
            acc = acc.mul(&self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial> {
        let mut negate = false;
        while let Some(tok) = self.peek() {
            match tok {
                Token::Plus => {
                    self.next();
                }
                Token::Minus => {
                    negate = !negate;
                    self.next();
                }
                _ => break,
            }
        }
        let p = self.power()?;
        Ok(if negate { p.neg() } else { p })
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if let Some(Token::Caret) = self.peek() {
            self.next();
            match self.next() {
                Some(Token::Num(v)) => {
                    if v < 0.0 || v != libm::round(v) {
                        return Err(Error::Parse(format!(
                            "exponent must be a nonnegative integer, got {v}"
                        )));
                    }
                    let e = v as u32;
                    if e > MAX_EXPONENT {
                        return Err(Error::Parse(format!("exponent {e} exceeds {MAX_EXPONENT}")));
                    }
                    Ok(base.pow(e))
                }
                other => Err(Error::Parse(format!(
                    "expected integer exponent after '^', got {other:?}"
                ))),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.next() {
            Some(Token::Num(v)) => Ok(Polynomial::constant(v)),
            Some(Token::Var(axis)) => Ok(Polynomial::variable(axis)),
            Some(Token::LParen) => {
                let inner = self.expr()?;
                match self.next() {
                    Some(Token::RParen) => Ok(inner),
                    _ => Err(Error::Parse(String::from("missing closing parenthesis"))),
                }
            }
            other => Err(Error::Parse(format!("expected a value, got {other:?}"))),
        }
    }
}

/// Parse and fully expand an expression.
pub(super) fn parse(text: &str) -> Result<Polynomial> {
    let tokens = tokenize(text)?;
    let mut parser = Parser { tokens, pos: 0 };
    let poly = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(Error::Parse(format!(
            "trailing input at token {}",
            parser.pos
        )));
    }
    Ok(poly)
}
