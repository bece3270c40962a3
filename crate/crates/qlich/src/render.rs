//! Canonical text rendering of states.
//!
//! Syntax: generators are `b1, c1, B1, g1` (B = β, g = γ) with a derivative
//! prefix `D<k> `, factors joined by `*`, ħ written `h`. One summand is
//! emitted per (ħ-degree, word) pair; summands are sorted by ħ-degree and
//! then by word, so output is stable under re-runs and `parse ∘ render` is
//! the identity on canonical states.
//!
//! Letters inside a word are displayed in the order γ, b, c, β (index, then
//! derivative order ascending). Only the even species move relative to the
//! canonical storage order, so the displayed monomial carries no hidden sign.

use crate::algebra::{Generator, Kind, State, Word};
use crate::coeff::Rat;
use num::{One, Signed};

fn display_rank(kind: Kind) -> u8 {
    match kind {
        Kind::Gamma => 0,
        Kind::B => 1,
        Kind::C => 2,
        Kind::Beta => 3,
    }
}

fn letter_token(g: &Generator) -> String {
    let name = match g.kind {
        Kind::B => "b",
        Kind::C => "c",
        Kind::Beta => "B",
        Kind::Gamma => "g",
    };
    if g.deriv == 0 {
        format!("{}{}", name, g.index)
    } else {
        format!("D{} {}{}", g.deriv, name, g.index)
    }
}

fn word_tokens(w: &Word) -> Vec<String> {
    let mut letters: Vec<Generator> = w.letters().to_vec();
    letters.sort_by_key(|g| (display_rank(g.kind), g.index, g.deriv));
    letters.iter().map(letter_token).collect()
}

fn rational_token(r: &Rat) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Render a state in the canonical term syntax.
pub fn render_state(s: &State) -> String {
    // split terms per ħ-degree so every summand has a plain rational coefficient
    let mut summands: Vec<(u32, &Word, Rat)> = Vec::new();
    for (word, coeff) in s.terms() {
        for (deg, r) in coeff.iter() {
            summands.push((deg, word, r.clone()));
        }
    }
    summands.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));

    if summands.is_empty() {
        return "0".to_string();
    }

    let mut out = String::new();
    for (i, (deg, word, r)) in summands.iter().enumerate() {
        let negative = r.is_negative();
        let magnitude = r.abs();

        if i == 0 {
            if negative {
                out.push('-');
            }
        } else if negative {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }

        let mut factors: Vec<String> = Vec::new();
        if !magnitude.is_one() {
            factors.push(rational_token(&magnitude));
        }
        match deg {
            0 => {}
            1 => factors.push("h".to_string()),
            k => factors.push(format!("h^{}", k)),
        }
        factors.extend(word_tokens(word));
        if factors.is_empty() {
            factors.push("1".to_string());
        }
        out.push_str(&factors.join("*"));
    }
    out
}
