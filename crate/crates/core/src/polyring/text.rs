//! Text rendering and parsing of polynomials.
//!
//! Grammar: a polynomial is a `+`/`-` separated list of terms; a term is a
//! `*`-separated list of factors; a factor is an integer or `p/q` rational
//! coefficient, or a variable token optionally raised with `^`. Rendering is
//! canonical: terms sorted descending under a term order, unit coefficients
//! suppressed, signs folded into the separators.

use std::fmt;
use std::sync::Arc;

use num::{BigInt, One, Signed, Zero};

use super::{Monomial, Poly, RingCtx, TermOrder};
use crate::qlinalg::Rat;

impl Poly {
    /// Canonical rendering with terms sorted descending under `ord`.
    pub fn to_string_ord(&self, ord: TermOrder) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.sorted_terms(ord).into_iter().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mag = c.abs();
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || m.is_one() {
                factors.push(render_rat(&mag));
            }
            for (v, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if e == 1 {
                    factors.push(self.ring().var_name(v).to_string());
                } else {
                    factors.push(format!("{}^{}", self.ring().var_name(v), e));
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

fn render_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_ord(TermOrder::DegRevLex))
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    Int(BigInt),
    Ident(String),
}

fn tokenize(src: &str) -> Result<Vec<Token>, String> {
    let mut out = Vec::new();
    let mut chars = src.char_indices().peekable();
    while let Some(&(pos, ch)) = chars.peek() {
        match ch {
            c if c.is_whitespace() => {
                chars.next();
            }
            '+' => {
                chars.next();
                out.push(Token::Plus);
            }
            '-' => {
                chars.next();
                out.push(Token::Minus);
            }
            '*' => {
                chars.next();
                out.push(Token::Star);
            }
            '^' => {
                chars.next();
                out.push(Token::Caret);
            }
            '/' => {
                chars.next();
                out.push(Token::Slash);
            }
            c if c.is_ascii_digit() => {
                let mut num = String::new();
                while let Some(&(_, d)) = chars.peek() {
                    if d.is_ascii_digit() {
                        num.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Token::Int(num.parse().unwrap()));
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut id = String::new();
                while let Some(&(_, d)) = chars.peek() {
                    if d.is_alphanumeric() || d == '_' {
                        id.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Token::Ident(id));
            }
            other => return Err(format!("unexpected character '{other}' at byte {pos}")),
        }
    }
    Ok(out)
}

/// Parses the polynomial grammar; errors are human-readable messages to be
/// wrapped with file/line context by the caller.
pub fn parse_poly(ring: &Arc<RingCtx>, src: &str) -> Result<Poly, String> {
    let tokens = tokenize(src)?;
    if tokens.is_empty() {
        return Err("empty polynomial".to_string());
    }
    let mut pos = 0;
    let mut acc = Poly::zero(ring);
    loop {
        let mut sign = 1i64;
        while let Some(tok) = tokens.get(pos) {
            match tok {
                Token::Plus => pos += 1,
                Token::Minus => {
                    sign = -sign;
                    pos += 1;
                }
                _ => break,
            }
        }
        if pos >= tokens.len() {
            return Err("dangling sign at end of input".to_string());
        }
        let (term, next) = parse_term(ring, &tokens, pos)?;
        acc = acc + term.scale(&Rat::from_integer(sign.into()));
        pos = next;
        match tokens.get(pos) {
            None => break,
            Some(Token::Plus) | Some(Token::Minus) => continue,
            Some(tok) => return Err(format!("unexpected token {tok:?} after term")),
        }
    }
    Ok(acc)
}

fn parse_term(
    ring: &Arc<RingCtx>,
    tokens: &[Token],
    mut pos: usize,
) -> Result<(Poly, usize), String> {
    let mut coeff = Rat::one();
    let mut exps = vec![0u32; ring.nvars()];
    loop {
        match tokens.get(pos) {
            Some(Token::Int(n)) => {
                pos += 1;
                let mut value = Rat::from_integer(n.clone());
                if let Some(Token::Slash) = tokens.get(pos) {
                    pos += 1;
                    match tokens.get(pos) {
                        Some(Token::Int(d)) if !d.is_zero() => {
                            value = Rat::new(n.clone(), d.clone());
                            pos += 1;
                        }
                        Some(Token::Int(_)) => return Err("zero denominator".to_string()),
                        _ => return Err("expected denominator after '/'".to_string()),
                    }
                }
                coeff *= value;
            }
            Some(Token::Ident(name)) => {
                let Some(idx) = ring.var_index(name) else {
                    return Err(format!("unknown variable '{name}'"));
                };
                pos += 1;
                let mut exp = 1u32;
                if let Some(Token::Caret) = tokens.get(pos) {
                    pos += 1;
                    match tokens.get(pos) {
                        Some(Token::Int(e)) => {
                            exp = u32::try_from(e.clone())
                                .map_err(|_| "exponent out of range".to_string())?;
                            pos += 1;
                        }
                        _ => return Err("expected integer exponent after '^'".to_string()),
                    }
                }
                exps[idx] += exp;
            }
            other => return Err(format!("expected coefficient or variable, found {other:?}")),
        }
        match tokens.get(pos) {
            Some(Token::Star) => pos += 1,
            _ => break,
        }
    }
    let exps_u16: Vec<u16> = exps
        .iter()
        .map(|&e| u16::try_from(e).map_err(|_| "exponent out of range".to_string()))
        .collect::<Result<_, _>>()?;
    let poly = Poly::from_terms(ring, [(Monomial::from_exps(exps_u16), coeff)]);
    Ok((poly, pos))
}
