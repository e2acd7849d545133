//! Lexer and recursive-descent parser for the coefficient grammar and the
//! operator-word syntax built on top of it.
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := '-'? atom
//! atom   := integer | 'q' ('^' '-'? integer)? | '(' expr ')'
//! ```
//!
//! `a/b` with integer operands is the rational literal; `/` also divides
//! arbitrary factors. Whitespace is insignificant. Columns in errors are
//! 1-based character offsets.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Largest accepted |exponent| on `q`.
const MAX_EXPONENT: i64 = 4096;

#[derive(Clone, Debug, PartialEq)]
pub(crate) enum Tok {
    Int(BigInt),
    Q,
    Caret,
    Star,
    Slash,
    Plus,
    Minus,
    LParen,
    RParen,
    /// `aK` (annihilator, false) or `AK` (creator, true).
    Op { creator: bool, index: usize },
    Epsilon,
}

#[derive(Clone, Debug)]
pub(crate) struct Token {
    pub tok: Tok,
    pub col: usize,
}

fn err(col: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        column: col,
        message: message.into(),
    }
}

pub(crate) fn lex(src: &str, allow_ops: bool) -> Result<Vec<Token>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let simple = match c {
            '^' => Some(Tok::Caret),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            'q' => Some(Tok::Q),
            'ε' if allow_ops => Some(Tok::Epsilon),
            _ => None,
        };
        if let Some(tok) = simple {
            out.push(Token { tok, col });
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push(Token {
                tok: Tok::Int(digits.parse().expect("ascii digits")),
                col,
            });
            continue;
        }
        if allow_ops && (c == 'a' || c == 'A') {
            let start = i + 1;
            let mut j = start;
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            if j == start {
                return Err(err(col, format!("expected an index after `{c}`")));
            }
            let digits: String = chars[start..j].iter().collect();
            let index: usize = digits
                .parse()
                .map_err(|_| err(col, "operator index too large"))?;
            if index == 0 {
                return Err(err(col, "operator indices start at 1"));
            }
            out.push(Token {
                tok: Tok::Op { creator: c == 'A', index },
                col,
            });
            i = j;
            continue;
        }
        return Err(err(col, format!("unexpected character `{c}`")));
    }
    Ok(out)
}

pub(crate) struct Parser<'a> {
    toks: &'a [Token],
    pos: usize,
    end_col: usize,
    allow_q: bool,
}

impl<'a> Parser<'a> {
    pub fn new(toks: &'a [Token], src: &str, allow_q: bool) -> Self {
        Parser {
            toks,
            pos: 0,
            end_col: src.chars().count() + 1,
            allow_q,
        }
    }

    pub fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    pub fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |t| t.col)
    }

    pub fn bump(&mut self) -> Option<&Token> {
        let t = self.toks.get(self.pos);
        self.pos += 1;
        t
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&want) {
            self.pos += 1;
            Ok(())
        } else {
            Err(err(self.col(), format!("expected {what}")))
        }
    }

    pub fn expr(&mut self) -> Result<Scalar> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    pub fn term(&mut self) -> Result<Scalar> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    // `2*A1` style coefficient prefixes stop before the operator
                    if matches!(self.toks.get(self.pos + 1).map(|t| &t.tok), Some(Tok::Op { .. } | Tok::Epsilon)) {
                        return Ok(acc);
                    }
                    self.pos += 1;
                    acc = acc.mul(&self.factor()?);
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let col = self.col();
                    let d = self.factor()?;
                    acc = acc.div(&d).map_err(|_| err(col, "division by zero"))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Scalar> {
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            return Ok(self.atom()?.neg());
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Scalar> {
        let col = self.col();
        match self.bump().map(|t| t.tok.clone()) {
            Some(Tok::Int(n)) => Ok(Scalar::from_rational(BigRational::from_integer(n))),
            Some(Tok::Q) => {
                if !self.allow_q {
                    return Err(err(col, "parameter `q` is not declared"));
                }
                if self.peek() != Some(&Tok::Caret) {
                    return Ok(Scalar::q());
                }
                self.pos += 1;
                let neg = if self.peek() == Some(&Tok::Minus) {
                    self.pos += 1;
                    true
                } else {
                    false
                };
                let ecol = self.col();
                match self.bump().map(|t| t.tok.clone()) {
                    Some(Tok::Int(n)) => {
                        let e = n
                            .to_i64()
                            .filter(|e| *e <= MAX_EXPONENT)
                            .ok_or_else(|| err(ecol, "exponent too large"))?;
                        Ok(Scalar::q_pow(if neg { -e } else { e }))
                    }
                    _ => Err(err(ecol, "expected an integer exponent")),
                }
            }
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            Some(_) => Err(err(col, "expected a number, `q` or `(`")),
            None => Err(err(col, "unexpected end of input")),
        }
    }
}

pub(crate) fn parse_scalar(src: &str, allow_q: bool) -> Result<Scalar> {
    let toks = lex(src, false)?;
    let mut p = Parser::new(&toks, src, allow_q);
    let v = p.expr()?;
    if !p.at_end() {
        return Err(err(p.col(), "unexpected trailing input"));
    }
    Ok(v)
}
