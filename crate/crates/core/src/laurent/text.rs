//! Text rendering and parsing: `x1^2*z^-1 - 3*x2`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{LaurentPoly, Monomial, RingError, Vars};

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms().rev().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            write_term(f, &self.vars, m, &c.abs())?;
        }
        Ok(())
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, vars: &Vars, m: &Monomial, c: &BigInt) -> fmt::Result {
    let mut first = true;
    if !c.is_one() || m.is_one() {
        write!(f, "{c}")?;
        first = false;
    }
    for (v, &e) in m.exps().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        f.write_str(vars.name(v))?;
        if e != 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
}

fn tokenize(text: &str) -> Result<Vec<Token>, RingError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let ch = chars[i];
        match ch {
            c if c.is_whitespace() => i += 1,
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
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push(Token::Int(s.parse().expect("digits parse as an integer")));
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Token::Ident(chars[start..i].iter().collect()));
            }
            other => return Err(RingError::Parse(format!("unexpected character {other:?}"))),
        }
    }
    Ok(out)
}

/// Variable names mentioned in a text polynomial, in order of first appearance.
pub fn variables_in(text: &str) -> Result<Vec<String>, RingError> {
    let mut names: Vec<String> = Vec::new();
    for t in tokenize(text)? {
        if let Token::Ident(name) = t {
            if !names.contains(&name) {
                names.push(name);
            }
        }
    }
    Ok(names)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    vars: &'a Vars,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<LaurentPoly, RingError> {
        let mut out = LaurentPoly::zero(self.vars);
        let mut sign = match self.peek() {
            Some(Token::Minus) => {
                self.pos += 1;
                -1
            }
            Some(Token::Plus) => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let (m, c) = self.term()?;
            out.add_term(m, c * sign);
            match self.next() {
                None => break,
                Some(Token::Plus) => sign = 1,
                Some(Token::Minus) => sign = -1,
                Some(t) => return Err(RingError::Parse(format!("unexpected token {t:?}"))),
            }
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<(Monomial, BigInt), RingError> {
        let mut coeff = BigInt::one();
        let mut m = Monomial::one(self.vars.len());
        loop {
            match self.next() {
                Some(Token::Int(k)) => coeff *= k,
                Some(Token::Ident(name)) => {
                    let v = self.vars.require(&name)?;
                    let e = if self.peek() == Some(&Token::Caret) {
                        self.pos += 1;
                        self.exponent()?
                    } else {
                        1
                    };
                    m.0[v] += e;
                }
                other => {
                    return Err(RingError::Parse(format!("expected a factor, found {other:?}")))
                }
            }
            if self.peek() == Some(&Token::Star) {
                self.pos += 1;
            } else {
                break;
            }
        }
        if coeff.is_zero() {
            m = Monomial::one(self.vars.len());
        }
        Ok((m, coeff))
    }

    fn exponent(&mut self) -> Result<i32, RingError> {
        let neg = if self.peek() == Some(&Token::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        match self.next() {
            Some(Token::Int(k)) => {
                let k: i32 = k
                    .try_into()
                    .map_err(|_| RingError::Parse("exponent out of range".into()))?;
                Ok(if neg { -k } else { k })
            }
            other => Err(RingError::Parse(format!("expected an exponent, found {other:?}"))),
        }
    }
}

pub(super) fn parse(text: &str, vars: &Vars) -> Result<LaurentPoly, RingError> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err(RingError::Parse("empty input".into()));
    }
    let mut p = Parser {
        tokens,
        pos: 0,
        vars,
    };
    p.expr()
}
