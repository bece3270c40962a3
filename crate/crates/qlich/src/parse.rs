//! Text input: the polynomial expression grammar, tensor entry lines
//! `P[i,j,...] = <expr>`, and the canonical state syntax emitted by
//! [`crate::render::render_state`].
//!
//! Polynomial grammar: integers, rationals `p/q`, variables `x1..xn` (with
//! aliases `x, y, z` when n ≤ 3), `+`, `-`, `*`, `^`, parentheses.
//! Whitespace is insignificant. `/` appears only inside rational literals.

use crate::algebra::{Generator, Kind, State, Word};
use crate::coeff::{HbarPoly, Rat};
use crate::error::ParseError;
use crate::poly::Poly;
use num::{BigInt, One, Zero};

struct Cursor<'a> {
    text: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor {
            text: text.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(ParseError::new(
                self.pos,
                format!("expected '{}'", c as char),
            ))
        }
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(ParseError::new(start, "expected an integer"));
        }
        let s = std::str::from_utf8(&self.text[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.text.len()
    }
}

/// Parse a polynomial over x1..xn (aliases x, y, z for n ≤ 3).
pub fn parse_poly(text: &str, n: u8) -> Result<Poly, ParseError> {
    let mut cur = Cursor::new(text);
    let p = poly_expr(&mut cur, n)?;
    if !cur.at_end() {
        return Err(ParseError::new(cur.pos, "unexpected trailing input"));
    }
    Ok(p)
}

fn poly_expr(cur: &mut Cursor, n: u8) -> Result<Poly, ParseError> {
    let mut acc = if cur.eat(b'-') {
        poly_term(cur, n)?.neg()
    } else {
        poly_term(cur, n)?
    };
    loop {
        match cur.peek() {
            Some(b'+') => {
                cur.bump();
                acc = acc.add(&poly_term(cur, n)?);
            }
            Some(b'-') => {
                cur.bump();
                acc = acc.sub(&poly_term(cur, n)?);
            }
            _ => return Ok(acc),
        }
    }
}

fn poly_term(cur: &mut Cursor, n: u8) -> Result<Poly, ParseError> {
    let mut acc = poly_factor(cur, n)?;
    while cur.eat(b'*') {
        acc = acc.mul(&poly_factor(cur, n)?);
    }
    Ok(acc)
}

fn poly_factor(cur: &mut Cursor, n: u8) -> Result<Poly, ParseError> {
    let base = poly_atom(cur, n)?;
    if cur.eat(b'^') {
        let at = cur.pos;
        if cur.peek() == Some(b'-') {
            return Err(ParseError::new(at, "negative exponents are not allowed"));
        }
        let e = cur.integer()?;
        let e: u16 = e
            .try_into()
            .map_err(|_| ParseError::new(at, "exponent too large"))?;
        return Ok(base.pow(e));
    }
    Ok(base)
}

fn poly_atom(cur: &mut Cursor, n: u8) -> Result<Poly, ParseError> {
    match cur.peek() {
        Some(b'(') => {
            cur.bump();
            let p = poly_expr(cur, n)?;
            cur.expect(b')')?;
            Ok(p)
        }
        Some(c) if c.is_ascii_digit() => {
            let numer = cur.integer()?;
            if cur.eat(b'/') {
                let at = cur.pos;
                let denom = cur.integer()?;
                if denom.is_zero() {
                    return Err(ParseError::new(at, "zero denominator"));
                }
                Ok(Poly::constant(n, Rat::new(numer, denom)))
            } else {
                Ok(Poly::constant(n, Rat::from(numer)))
            }
        }
        Some(b'x') | Some(b'y') | Some(b'z') => {
            let at = cur.pos;
            let c = cur.bump().unwrap();
            // x followed by digits is an indexed variable; bare x/y/z are
            // aliases for x1/x2/x3 in low dimension
            if c == b'x' && matches!(cur.text.get(cur.pos), Some(d) if d.is_ascii_digit()) {
                let idx = cur.integer()?;
                let idx: u8 = idx
                    .try_into()
                    .map_err(|_| ParseError::new(at, "variable index too large"))?;
                if idx < 1 || idx > n {
                    return Err(ParseError::new(
                        at,
                        format!("unknown variable x{idx} in dimension {n}"),
                    ));
                }
                return Ok(Poly::var(n, idx));
            }
            let idx = match c {
                b'x' => 1,
                b'y' => 2,
                _ => 3,
            };
            if n > 3 || idx > n {
                return Err(ParseError::new(
                    at,
                    format!(
                        "alias '{}' is only available for dimensions up to 3 (n = {n})",
                        c as char
                    ),
                ));
            }
            Ok(Poly::var(n, idx))
        }
        Some(other) => Err(ParseError::new(
            cur.pos,
            format!("unexpected character '{}'", other as char),
        )),
        None => Err(ParseError::new(cur.pos, "unexpected end of input")),
    }
}

/// A parsed tensor entry line `P[i,j,...] = <polynomial>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorEntry {
    pub indices: Vec<u8>,
    pub value: Poly,
}

/// Parse one `P[i,j,...] = expr` entry; indices must be strictly increasing.
pub fn parse_entry(text: &str, n: u8) -> Result<TensorEntry, ParseError> {
    let mut cur = Cursor::new(text);
    cur.expect(b'P')?;
    cur.expect(b'[')?;
    let mut indices = Vec::new();
    loop {
        let at = cur.pos;
        let idx = cur.integer()?;
        let idx: u8 = idx
            .try_into()
            .map_err(|_| ParseError::new(at, "index too large"))?;
        if idx < 1 || idx > n {
            return Err(ParseError::new(
                at,
                format!("index {idx} out of range 1..={n}"),
            ));
        }
        indices.push(idx);
        if cur.eat(b',') {
            continue;
        }
        cur.expect(b']')?;
        break;
    }
    if !indices.windows(2).all(|w| w[0] < w[1]) {
        return Err(ParseError::new(
            0,
            format!("indices must be strictly increasing, got {indices:?}"),
        ));
    }
    cur.expect(b'=')?;
    let rest = std::str::from_utf8(&cur.text[cur.pos..]).unwrap();
    let value = parse_poly(rest, n).map_err(|e| ParseError {
        position: cur.pos + e.position,
        message: e.message,
    })?;
    Ok(TensorEntry { indices, value })
}

/// Parse a state in the canonical term syntax of [`crate::render::render_state`].
pub fn parse_state(text: &str) -> Result<State, ParseError> {
    let mut cur = Cursor::new(text);
    if cur.peek() == Some(b'0') {
        cur.bump();
        if cur.at_end() {
            return Ok(State::zero());
        }
        cur.pos -= 1;
    }
    let mut acc = State::zero();
    let mut negate = cur.eat(b'-');
    loop {
        let term = state_term(&mut cur, negate)?;
        acc = acc.add(&term);
        match cur.peek() {
            Some(b'+') => {
                cur.bump();
                negate = false;
            }
            Some(b'-') => {
                cur.bump();
                negate = true;
            }
            None => break,
            Some(other) => {
                return Err(ParseError::new(
                    cur.pos,
                    format!("unexpected character '{}'", other as char),
                ))
            }
        }
    }
    Ok(acc)
}

fn state_term(cur: &mut Cursor, negate: bool) -> Result<State, ParseError> {
    let mut coeff = Rat::one();
    let mut hbar = 0u32;
    let mut letters: Vec<Generator> = Vec::new();
    let mut saw_factor = false;
    loop {
        match cur.peek() {
            Some(c) if c.is_ascii_digit() => {
                let numer = cur.integer()?;
                let r = if cur.eat(b'/') {
                    let at = cur.pos;
                    let denom = cur.integer()?;
                    if denom.is_zero() {
                        return Err(ParseError::new(at, "zero denominator"));
                    }
                    Rat::new(numer, denom)
                } else {
                    Rat::from(numer)
                };
                coeff *= r;
            }
            Some(b'h') => {
                cur.bump();
                let k: u32 = if cur.eat(b'^') {
                    let at = cur.pos;
                    let e = cur.integer()?;
                    e.try_into()
                        .map_err(|_| ParseError::new(at, "h-power too large"))?
                } else {
                    1
                };
                hbar += k;
            }
            Some(b'D') => {
                cur.bump();
                let at = cur.pos;
                let k = cur.integer()?;
                let k: u8 = k
                    .try_into()
                    .map_err(|_| ParseError::new(at, "derivative order too large"))?;
                let g = state_letter(cur)?;
                letters.push(g.derived(k));
            }
            Some(b'b') | Some(b'c') | Some(b'B') | Some(b'g') => {
                letters.push(state_letter(cur)?);
            }
            Some(_) if saw_factor => break,
            Some(other) => {
                return Err(ParseError::new(
                    cur.pos,
                    format!("unexpected character '{}'", other as char),
                ))
            }
            None if saw_factor => break,
            None => return Err(ParseError::new(cur.pos, "unexpected end of input")),
        }
        saw_factor = true;
        if !cur.eat(b'*') {
            break;
        }
    }
    if negate {
        coeff = -coeff;
    }
    let (word, sign) = Word::normalize(&letters)
        .ok_or_else(|| ParseError::new(cur.pos, "word contains a repeated odd letter"))?;
    if sign < 0 {
        coeff = -coeff;
    }
    Ok(State::monomial(word, HbarPoly::hbar_term(coeff, hbar)))
}

fn state_letter(cur: &mut Cursor) -> Result<Generator, ParseError> {
    let at = cur.pos;
    let kind = match cur.bump() {
        Some(b'b') => Kind::B,
        Some(b'c') => Kind::C,
        Some(b'B') => Kind::Beta,
        Some(b'g') => Kind::Gamma,
        _ => return Err(ParseError::new(at, "expected a generator letter")),
    };
    let idx = cur.integer()?;
    let idx: u8 = idx
        .try_into()
        .map_err(|_| ParseError::new(at, "generator index too large"))?;
    Ok(Generator::new(kind, idx, 0))
}
