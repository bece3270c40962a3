//! Wick-contraction operator product expansions of normally ordered words and
//! the residue bracket {∮A dz, −}, with ħ counting contractions.
//!
//! Both operands are normally ordered, so only cross contractions occur. One
//! contraction of ∂^p X(z) with ∂^q Y(w) contributes the kernel
//!
//! ```text
//!   s · ħ · (−1)^p · (p+q)! / (z−w)^{p+q+1}
//! ```
//!
//! where s is the convention sign of the conjugate pair (X, Y). Uncontracted
//! z-letters are Taylor-expanded around w, which is what produces the
//! derivative terms behind the higher-pole coefficients.
//!
//! Koszul bookkeeping: for each pairing, contracted z-letters move rightward
//! to the end of their word and contracted w-letters leftward to the front,
//! one −1 per odd-odd transposition; pairs are processed left to right.

use crate::algebra::{Generator, Kind, State, Word};
use crate::coeff::{rat, HbarPoly, Rat};
use crate::error::AlgebraError;
use num::{BigInt, BigRational};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Contraction sign table for the two OPE conventions used in the engine.
///
/// `Section2` is the standard free-field table b(z)c(w) ~ +ħ, c(z)b(w) ~ +ħ,
/// β(z)γ(w) ~ −ħ, γ(z)β(w) ~ +ħ. `Section4` flips the βγ pair.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize, Default)]
pub enum OpeConvention {
    #[default]
    Section2,
    Section4,
}

impl OpeConvention {
    /// Sign of the kernel for z-species `zk` against w-species `wk`.
    pub fn sign(self, zk: Kind, wk: Kind) -> i64 {
        match (self, zk, wk) {
            (_, Kind::B, Kind::C) => 1,
            (_, Kind::C, Kind::B) => 1,
            (OpeConvention::Section2, Kind::Beta, Kind::Gamma) => -1,
            (OpeConvention::Section2, Kind::Gamma, Kind::Beta) => 1,
            (OpeConvention::Section4, Kind::Beta, Kind::Gamma) => 1,
            (OpeConvention::Section4, Kind::Gamma, Kind::Beta) => -1,
            _ => 0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            OpeConvention::Section2 => "section2",
            OpeConvention::Section4 => "section4",
        }
    }
}

impl std::str::FromStr for OpeConvention {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "section2" => Ok(OpeConvention::Section2),
            "section4" => Ok(OpeConvention::Section4),
            other => Err(format!("unknown convention '{other}'")),
        }
    }
}

/// A single two-point kernel: coefficient of (z−w)^{−pole}, ħ-degree 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoleTerm {
    pub pole: u32,
    pub coeff: Rat,
}

/// Kernel of one contraction, or `None` for a non-conjugate pair.
pub fn contraction_kernel(x: Generator, y: Generator, conv: OpeConvention) -> Option<PoleTerm> {
    if x.kind.conjugate() != y.kind || x.index != y.index {
        return None;
    }
    let s = conv.sign(x.kind, y.kind);
    if s == 0 {
        return None;
    }
    let total = x.deriv as u32 + y.deriv as u32;
    let mut coeff = BigRational::from(BigInt::from(s));
    for k in 1..=total {
        coeff *= BigRational::from(BigInt::from(k));
    }
    if x.deriv % 2 == 1 {
        coeff = -coeff;
    }
    Some(PoleTerm {
        pole: total + 1,
        coeff,
    })
}

/// The singular part of A(z)B(w): pole order ≥ 1 mapped to the coefficient
/// state (fields at w). Every term's ħ-degree equals its contraction count.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct OpeExpansion {
    poles: BTreeMap<u32, State>,
}

impl OpeExpansion {
    pub fn is_empty(&self) -> bool {
        self.poles.is_empty()
    }

    pub fn pole(&self, order: u32) -> State {
        self.poles.get(&order).cloned().unwrap_or_default()
    }

    pub fn max_pole(&self) -> Option<u32> {
        self.poles.keys().next_back().copied()
    }

    pub fn poles(&self) -> impl Iterator<Item = (u32, &State)> {
        self.poles.iter().map(|(k, s)| (*k, s))
    }

    fn add(&mut self, order: u32, word: Word, coeff: HbarPoly) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.poles.entry(order).or_default();
        entry.add_term(word, coeff);
        if entry.is_zero() {
            self.poles.remove(&order);
        }
    }
}

/// Wick OPE of two normally ordered states.
pub fn ope(a: &State, b: &State, conv: OpeConvention) -> OpeExpansion {
    let mut out = OpeExpansion::default();
    for (wa, ca) in a.terms() {
        for (wb, cb) in b.terms() {
            let coeff = ca * cb;
            ope_words(wa, wb, &coeff, conv, &mut out);
        }
    }
    out
}

/// Wick OPE with an explicit ambient-dimension check.
pub fn ope_checked(
    a: &State,
    b: &State,
    n: u8,
    conv: OpeConvention,
) -> Result<OpeExpansion, AlgebraError> {
    let d = a.dimension().max(b.dimension());
    if d > n {
        return Err(AlgebraError::DimensionMismatch {
            expected: n,
            found: d,
        });
    }
    Ok(ope(a, b, conv))
}

fn ope_words(wa: &Word, wb: &Word, coeff: &HbarPoly, conv: OpeConvention, out: &mut OpeExpansion) {
    let za = wa.letters();
    let zb = wb.letters();
    // enumerate nonempty sets of disjoint conjugate cross pairs
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut used_b = vec![false; zb.len()];
    enumerate_pairings(za, zb, 0, &mut used_b, &mut pairs, &mut |pairing| {
        contract_pairing(za, zb, pairing, coeff, conv, out);
    });
}

fn enumerate_pairings(
    za: &[Generator],
    zb: &[Generator],
    from: usize,
    used_b: &mut Vec<bool>,
    pairs: &mut Vec<(usize, usize)>,
    emit: &mut impl FnMut(&[(usize, usize)]),
) {
    if !pairs.is_empty() {
        emit(pairs);
    }
    for i in from..za.len() {
        for j in 0..zb.len() {
            if used_b[j] {
                continue;
            }
            if za[i].kind.conjugate() == zb[j].kind && za[i].index == zb[j].index {
                used_b[j] = true;
                pairs.push((i, j));
                enumerate_pairings(za, zb, i + 1, used_b, pairs, emit);
                pairs.pop();
                used_b[j] = false;
            }
        }
    }
}

/// Contribution of one fixed pairing: Koszul sign, kernel product, Taylor
/// expansion of the remaining z-letters, and normalization of the rest.
fn contract_pairing(
    za: &[Generator],
    zb: &[Generator],
    pairing: &[(usize, usize)],
    coeff: &HbarPoly,
    conv: OpeConvention,
    out: &mut OpeExpansion,
) {
    let mut a_work: Vec<(usize, Generator)> = za.iter().copied().enumerate().collect();
    let mut b_work: Vec<(usize, Generator)> = zb.iter().copied().enumerate().collect();
    let mut sign = 1i64;
    let mut kernel_coeff = Rat::from(BigInt::from(1));
    let mut pole_total = 0u32;

    for &(ai, bj) in pairing {
        let apos = a_work.iter().position(|(orig, _)| *orig == ai).unwrap();
        let bpos = b_work.iter().position(|(orig, _)| *orig == bj).unwrap();
        let x = a_work[apos].1;
        let y = b_work[bpos].1;
        let Some(kernel) = contraction_kernel(x, y, conv) else {
            return;
        };
        if x.is_odd() {
            let crossings = a_work[apos + 1..]
                .iter()
                .filter(|(_, g)| g.is_odd())
                .count();
            if crossings % 2 == 1 {
                sign = -sign;
            }
        }
        if y.is_odd() {
            let crossings = b_work[..bpos].iter().filter(|(_, g)| g.is_odd()).count();
            if crossings % 2 == 1 {
                sign = -sign;
            }
        }
        a_work.remove(apos);
        b_work.remove(bpos);
        kernel_coeff *= kernel.coeff;
        pole_total += kernel.pole;
    }

    let base = coeff
        .scale(&(kernel_coeff * Rat::from(BigInt::from(sign))))
        .shift(pairing.len() as u32);
    if base.is_zero() {
        return;
    }

    // Taylor-expand each remaining z-letter: ∂^p X(z) = Σ_m (z−w)^m ∂^{p+m}X(w)/m!
    let a_rest: Vec<Generator> = a_work.into_iter().map(|(_, g)| g).collect();
    let b_rest: Vec<Generator> = b_work.into_iter().map(|(_, g)| g).collect();
    let budget = pole_total - 1; // only pole orders ≥ 1 are retained
    distribute_taylor(
        &a_rest,
        0,
        budget,
        Rat::from(BigInt::from(1)),
        &mut Vec::with_capacity(a_rest.len()),
        &mut |boosted, spent, factor| {
            let mut raw: Vec<Generator> = Vec::with_capacity(boosted.len() + b_rest.len());
            raw.extend_from_slice(boosted);
            raw.extend_from_slice(&b_rest);
            if let Some((word, nsign)) = Word::normalize(&raw) {
                let total = base.scale(&(factor * rat(nsign, 1)));
                out.add(pole_total - spent, word, total);
            }
        },
    );
}

fn distribute_taylor(
    rest: &[Generator],
    idx: usize,
    budget: u32,
    factor: Rat,
    acc: &mut Vec<Generator>,
    emit: &mut impl FnMut(&[Generator], u32, Rat),
) {
    if idx == rest.len() {
        let spent: u32 = acc
            .iter()
            .zip(rest.iter())
            .map(|(bg, g)| (bg.deriv - g.deriv) as u32)
            .sum();
        emit(acc, spent, factor);
        return;
    }
    let mut m = 0u32;
    let mut mfact = Rat::from(BigInt::from(1));
    loop {
        let spent_so_far: u32 = acc
            .iter()
            .zip(rest.iter())
            .map(|(bg, g)| (bg.deriv - g.deriv) as u32)
            .sum();
        if spent_so_far + m > budget {
            break;
        }
        acc.push(rest[idx].derived(m as u8));
        distribute_taylor(rest, idx + 1, budget, &factor / &mfact, acc, emit);
        acc.pop();
        m += 1;
        mfact *= Rat::from(BigInt::from(m));
    }
}

/// An integrated vertex operator ∮ J(z) dz acting by the residue bracket.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegratedOperator {
    pub density: State,
    pub convention: OpeConvention,
    pub dimension: u8,
}

impl IntegratedOperator {
    pub fn new(density: State, convention: OpeConvention, dimension: u8) -> Self {
        IntegratedOperator {
            density,
            convention,
            dimension,
        }
    }

    /// {∮J dz, s}: the (z−w)^{−1} coefficient of ope(J, s). Linear in s,
    /// ħ-graded with minimum ħ-degree 1.
    pub fn bracket_action(&self, s: &State) -> State {
        ope(&self.density, s, self.convention).pole(1)
    }

    pub fn bracket_action_checked(&self, s: &State) -> Result<State, AlgebraError> {
        let d = s.dimension().max(self.density.dimension());
        if d > self.dimension {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.dimension,
                found: d,
            });
        }
        Ok(self.bracket_action(s))
    }
}

/// The ħ^k-homogeneous part of a state with ħ^k divided out.
pub fn hbar_component(s: &State, k: u32) -> State {
    s.hbar_component(k)
}
