//! Recursive-descent parser for the scalar grammar:
//!
//! ```text
//! expr   := ['-'] term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := base ('^' exp)?
//! exp    := ['-'] int | '(' ['-'] int ')' | '(' ['-'] '1/2' ')'   -- half powers only on q
//! base   := int | 'i' | 'r' | 'q' | 'h' | 'zeta' | '(' expr ')'
//! ```
//!
//! `q` means `r^-4`, so `q^(1/2)` is `r^-2`. Whitespace is ignored.

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use super::{gauss_from_ints, ScalarExpr};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown identifier `{name}` at byte {pos}")]
    UnknownIdent { pos: usize, name: String },
    #[error("division by zero at byte {pos}")]
    DivByZero { pos: usize },
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && (bytes[i] as char).is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = text[start..i].parse().expect("digits");
            out.push((start, Tok::Int(n)));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_')
            {
                i += 1;
            }
            out.push((start, Tok::Ident(text[start..i].to_string())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(ParseError::Syntax {
                pos: i,
                msg: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

enum Exponent {
    Int(i32),
    Half(i32),
}

impl Parser {
    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|t| t.0).unwrap_or(self.end)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn peek_sym(&self, c: char) -> bool {
        matches!(self.peek(), Some(Tok::Sym(s)) if *s == c)
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if self.peek_sym(c) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected `{c}`")))
        }
    }

    fn err(&self, msg: String) -> ParseError {
        ParseError::Syntax { pos: self.pos(), msg }
    }

    fn expr(&mut self) -> Result<ScalarExpr, ParseError> {
        let negate = self.eat_sym('-');
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            if self.eat_sym('+') {
                acc = acc + self.term()?;
            } else if self.eat_sym('-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<ScalarExpr, ParseError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat_sym('*') {
                acc = acc * self.factor()?;
            } else if self.peek_sym('/') {
                let pos = self.pos();
                self.at += 1;
                let rhs = self.factor()?;
                acc = acc
                    .checked_div(&rhs)
                    .ok_or(ParseError::DivByZero { pos })?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn int_literal(&mut self) -> Result<i32, ParseError> {
        let neg = self.eat_sym('-');
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.at += 1;
                let v: i32 = i32::try_from(n).map_err(|_| self.err("exponent too large".into()))?;
                Ok(if neg { -v } else { v })
            }
            _ => Err(self.err("expected integer exponent".into())),
        }
    }

    fn exponent(&mut self) -> Result<Exponent, ParseError> {
        if self.eat_sym('(') {
            let n = self.int_literal()?;
            if self.eat_sym('/') {
                let d = self.int_literal()?;
                if d != 2 || n.abs() != 1 {
                    return Err(self.err("only exponents 1/2 and -1/2 are allowed".into()));
                }
                self.expect_sym(')')?;
                return Ok(Exponent::Half(n));
            }
            self.expect_sym(')')?;
            Ok(Exponent::Int(n))
        } else {
            Ok(Exponent::Int(self.int_literal()?))
        }
    }

    fn factor(&mut self) -> Result<ScalarExpr, ParseError> {
        let start = self.pos();
        let (base, is_q) = self.base()?;
        if !self.eat_sym('^') {
            return Ok(base);
        }
        match self.exponent()? {
            Exponent::Int(n) => {
                if n < 0 && base.is_zero() {
                    return Err(ParseError::DivByZero { pos: start });
                }
                Ok(base.powi(n))
            }
            Exponent::Half(n) if is_q => Ok(ScalarExpr::q_half_pow(n)),
            Exponent::Half(_) => Err(ParseError::Syntax {
                pos: start,
                msg: "half powers are only defined for q".into(),
            }),
        }
    }

    fn base(&mut self) -> Result<(ScalarExpr, bool), ParseError> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.at += 1;
                Ok((ScalarExpr::gauss(gauss_from_ints(&n, &BigInt::zero())), false))
            }
            Some(Tok::Ident(name)) => {
                self.at += 1;
                let v = match name.as_str() {
                    "i" => ScalarExpr::i(),
                    "r" => ScalarExpr::r(),
                    "q" => return Ok((ScalarExpr::q(), true)),
                    "h" => ScalarExpr::h(),
                    "zeta" => ScalarExpr::zeta(),
                    _ => return Err(ParseError::UnknownIdent { pos, name }),
                };
                Ok((v, false))
            }
            Some(Tok::Sym('(')) => {
                self.at += 1;
                let e = self.expr()?;
                self.expect_sym(')')?;
                Ok((e, false))
            }
            Some(_) => Err(self.err("expected a number, identifier or `(`".into())),
            None => Err(self.err("unexpected end of input".into())),
        }
    }
}

pub(super) fn parse(text: &str) -> Result<ScalarExpr, ParseError> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        at: 0,
        end: text.len(),
    };
    if p.peek().is_none() {
        return Err(p.err("empty expression".into()));
    }
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input".into()));
    }
    Ok(e)
}
