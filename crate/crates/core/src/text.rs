//! Tokenizer and recursive-descent parser for the arithmetic expression syntax shared by
//! field elements (`1 + 2*z - z^2`) and polynomials (`3/4*x0^2*x1 - x2^3`).
//!
//! Expressions are evaluated directly into a target algebra through [`Algebra`].

use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at offset {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(offset: usize, message: impl Into<String>) -> Self {
        ParseError { offset, message: message.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Number(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(input: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            '+' => Token::Plus,
            '-' => Token::Minus,
            '*' => Token::Star,
            '/' => Token::Slash,
            '^' => Token::Caret,
            '(' => Token::LParen,
            ')' => Token::RParen,
            d if d.is_ascii_digit() => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Token::Number(input[start..i].parse().unwrap())));
                continue;
            }
            a if a.is_ascii_alphabetic() || a == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Token::Ident(input[start..i].to_string())));
                continue;
            }
            other => return Err(ParseError::new(i, format!("unexpected character '{other}'"))),
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

/// Target of expression evaluation.
pub trait Algebra {
    type Value: Clone;

    fn number(&self, n: &BigInt) -> Result<Self::Value, String>;
    fn symbol(&self, name: &str) -> Result<Self::Value, String>;
    fn add(&self, a: Self::Value, b: Self::Value) -> Self::Value;
    fn sub(&self, a: Self::Value, b: Self::Value) -> Self::Value;
    fn mul(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value, String>;
    fn div(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value, String>;
    fn neg(&self, a: Self::Value) -> Self::Value;
    fn pow(&self, a: Self::Value, e: u32) -> Result<Self::Value, String>;
}

struct Parser<'a, A: Algebra> {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
    alg: &'a A,
}

impl<'a, A: Algebra> Parser<'a, A> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map(|(o, _)| *o).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::new(self.offset(), msg))
    }

    fn lift<T>(&self, at: usize, r: Result<T, String>) -> Result<T, ParseError> {
        r.map_err(|m| ParseError::new(at, m))
    }

    fn expr(&mut self) -> Result<A::Value, ParseError> {
        let negate = match self.peek() {
            Some(Token::Minus) => {
                self.pos += 1;
                true
            }
            Some(Token::Plus) => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let mut acc = self.term()?;
        if negate {
            acc = self.alg.neg(acc);
        }
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = self.alg.add(acc, t);
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = self.alg.sub(acc, t);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<A::Value, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.pos += 1;
                    let at = self.offset();
                    let f = self.factor()?;
                    acc = self.lift(at, self.alg.mul(acc, f))?;
                }
                Some(Token::Slash) => {
                    self.pos += 1;
                    let at = self.offset();
                    let f = self.factor()?;
                    acc = self.lift(at, self.alg.div(acc, f))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<A::Value, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some(&Token::Caret) {
            self.pos += 1;
            let at = self.offset();
            match self.tokens.get(self.pos).map(|(_, t)| t.clone()) {
                Some(Token::Number(n)) => {
                    self.pos += 1;
                    let e: u32 = n
                        .try_into()
                        .map_err(|_| ParseError::new(at, "exponent out of range"))?;
                    self.lift(at, self.alg.pow(base, e))
                }
                _ => self.err("expected a nonnegative integer exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<A::Value, ParseError> {
        let at = self.offset();
        match self.tokens.get(self.pos).map(|(_, t)| t.clone()) {
            Some(Token::Number(n)) => {
                self.pos += 1;
                self.lift(at, self.alg.number(&n))
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                self.lift(at, self.alg.symbol(&name))
            }
            Some(Token::LParen) => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(&Token::RParen) {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(v)
            }
            Some(t) => self.err(format!("unexpected token {t:?}")),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses and evaluates `input` in `alg`. The whole input must be consumed.
pub fn parse_expression<A: Algebra>(input: &str, alg: &A) -> Result<A::Value, ParseError> {
    let tokens = tokenize(input)?;
    if tokens.is_empty() {
        return Err(ParseError::new(0, "empty expression"));
    }
    let mut p = Parser { tokens, pos: 0, end: input.len(), alg };
    let v = p.expr()?;
    if p.pos != p.tokens.len() {
        return p.err("trailing input");
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Ints;

    impl Algebra for Ints {
        type Value = i64;
        fn number(&self, n: &BigInt) -> Result<i64, String> {
            n.try_into().map_err(|_| "big".to_string())
        }
        fn symbol(&self, name: &str) -> Result<i64, String> {
            match name {
                "a" => Ok(2),
                _ => Err(format!("unknown symbol {name}")),
            }
        }
        fn add(&self, a: i64, b: i64) -> i64 {
            a + b
        }
        fn sub(&self, a: i64, b: i64) -> i64 {
            a - b
        }
        fn mul(&self, a: i64, b: i64) -> Result<i64, String> {
            Ok(a * b)
        }
        fn div(&self, a: i64, b: i64) -> Result<i64, String> {
            if b == 0 {
                Err("division by zero".into())
            } else {
                Ok(a / b)
            }
        }
        fn neg(&self, a: i64) -> i64 {
            -a
        }
        fn pow(&self, a: i64, e: u32) -> Result<i64, String> {
            Ok(a.pow(e))
        }
    }

    #[test]
    fn precedence_and_signs() {
        assert_eq!(parse_expression("1 + 2*a^3 - 4", &Ints).unwrap(), 13);
        assert_eq!(parse_expression("-(1 + a)^2", &Ints).unwrap(), -9);
        assert_eq!(parse_expression("8/a*3", &Ints).unwrap(), 12);
    }

    #[test]
    fn errors_carry_offsets() {
        let e = parse_expression("1 + b", &Ints).unwrap_err();
        assert_eq!(e.offset, 4);
        assert!(parse_expression("1 +", &Ints).is_err());
        assert!(parse_expression("(1", &Ints).is_err());
        assert!(parse_expression("1 $ 2", &Ints).is_err());
        assert!(parse_expression("", &Ints).is_err());
        assert!(parse_expression("1 2", &Ints).is_err());
    }
}
