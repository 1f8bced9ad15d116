//! Text grammar for polynomials, shared by the library and the CLI.
//!
//! Terms are joined by `+` and `-`; a term is a `*`-separated list of factors,
//! each factor either a rational literal `p/q` (or integer) or `var^k`.
//! Variable names: `d x y l m s a b z`. Whitespace is insignificant.
//! Example: `x^2 + 1/2*d*x - s*d^2`.

use num::{BigInt, Zero};

use super::poly::{MPoly, Var};
use super::rat::Rat;
use crate::{Error, Result};

struct Lexer<'a> {
    chars: Vec<char>,
    pos: usize,
    src: &'a str,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            chars: src.chars().collect(),
            pos: 0,
            src,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    /// 1-based column of the next non-whitespace character.
    fn column(&mut self) -> usize {
        self.skip_ws();
        self.pos + 1
    }

    fn error(&mut self, msg: &str) -> Error {
        Error::Parse {
            col: self.column().min(self.src.chars().count() + 1),
            msg: msg.to_string(),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected digits"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| self.error("integer out of range"))
    }
}

/// Parse a polynomial in the shared text grammar.
pub fn parse_poly(src: &str) -> Result<MPoly> {
    let mut lx = Lexer::new(src);
    let mut acc = MPoly::zero();
    let mut first = true;
    loop {
        let sign = match lx.peek() {
            Some('+') => {
                lx.bump();
                false
            }
            Some('-') => {
                lx.bump();
                true
            }
            None if first => return Err(lx.error("empty expression")),
            None => return Err(lx.error("dangling operator")),
            Some(_) if first => false,
            Some(c) => {
                return Err(Error::Parse {
                    col: lx.column(),
                    msg: format!("expected '+' or '-', found '{c}'"),
                })
            }
        };
        let term = parse_term(&mut lx)?;
        if sign {
            acc -= term;
        } else {
            acc += term;
        }
        first = false;
        if lx.peek().is_none() {
            return Ok(acc);
        }
    }
}

fn parse_term(lx: &mut Lexer) -> Result<MPoly> {
    let mut term = parse_factor(lx)?;
    while let Some('*') = lx.peek() {
        lx.bump();
        let f = parse_factor(lx)?;
        term = &term * &f;
    }
    Ok(term)
}

fn parse_factor(lx: &mut Lexer) -> Result<MPoly> {
    match lx.peek() {
        Some(c) if c.is_ascii_digit() => {
            let num = lx.integer()?;
            if let Some('/') = lx.peek() {
                lx.bump();
                let den = lx.integer()?;
                if den.is_zero() {
                    return Err(lx.error("zero denominator"));
                }
                Ok(MPoly::constant(Rat::new(num, den)))
            } else {
                Ok(MPoly::constant(Rat::from_integer(num)))
            }
        }
        Some(c) => match Var::from_symbol(c) {
            Some(v) => {
                lx.bump();
                if let Some('^') = lx.peek() {
                    lx.bump();
                    let e = lx.integer()?;
                    let e: u16 = e
                        .try_into()
                        .ok()
                        .filter(|&e| e <= 4096)
                        .ok_or_else(|| Error::Parse {
                            col: lx.column(),
                            msg: "exponent out of range".to_string(),
                        })?;
                    Ok(MPoly::var(v).pow(e))
                } else {
                    Ok(MPoly::var(v))
                }
            }
            None => Err(Error::Parse {
                col: lx.column(),
                msg: format!("unexpected character '{c}'"),
            }),
        },
        None => Err(lx.error("expected a factor")),
    }
}

/// Parse a sigma-style argument: either a rational literal (possibly signed)
/// or a bare variable name. Used by the CLI for `--sigma s` vs `--sigma 3/2`.
pub fn parse_scalar_or_var(src: &str) -> Result<MPoly> {
    let t = src.trim();
    if t.chars().count() == 1 {
        if let Some(v) = Var::from_symbol(t.chars().next().unwrap()) {
            return Ok(MPoly::var(v));
        }
    }
    let (neg, rest) = match t.strip_prefix('-') {
        Some(r) => (true, r.trim()),
        None => (false, t),
    };
    let r = super::rat::parse_unsigned_rat(rest).ok_or_else(|| Error::Parse {
        col: 1,
        msg: format!("expected a rational or a variable name, found '{src}'"),
    })?;
    let mut p = MPoly::constant(r);
    if neg {
        p = -&p;
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar_examples() {
        let f = parse_poly("x^2 + 1/2*d*x").unwrap();
        assert_eq!(f.to_string(), "x^2 + 1/2*d*x");
        let g = parse_poly("x - s*d").unwrap();
        assert_eq!(g, parse_poly("x-s*d").unwrap());
        assert_eq!(parse_poly("  x ^ 2 ").unwrap(), parse_poly("x^2").unwrap());
    }

    #[test]
    fn error_positions() {
        match parse_poly("x^^2") {
            Err(Error::Parse { col, .. }) => assert_eq!(col, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
        match parse_poly("x + q") {
            Err(Error::Parse { col, .. }) => assert_eq!(col, 5),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(parse_poly("").is_err());
        assert!(parse_poly("1/0").is_err());
        assert!(parse_poly("x +").is_err());
    }

    #[test]
    fn scalar_or_var() {
        assert_eq!(parse_scalar_or_var("s").unwrap(), MPoly::var(Var::Sigma));
        assert_eq!(parse_scalar_or_var("3/2").unwrap().to_string(), "3/2");
        assert_eq!(parse_scalar_or_var("-2").unwrap().to_string(), "-2");
        assert!(parse_scalar_or_var("q").is_err());
    }
}
