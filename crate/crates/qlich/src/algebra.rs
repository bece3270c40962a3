//! Canonical-form supercommutative algebra of normally ordered words in the
//! bc-βγ generators and their z-derivatives.
//!
//! States are exact ℚ[ħ]-linear combinations of canonically ordered words.
//! The gradings carried by a word are
//! - conformal weight: γ, c weigh 0, b, β weigh 1, each ∂ adds 1;
//! - fermion number: (#c) − (#b);
//! - letter count and maximal derivative order.
//!
//! Words are kept sorted in the fixed total order (kind b < c < β < γ, then
//! index, then derivative order); sorting an arbitrary word picks up the
//! Koszul sign, one −1 per transposition of two odd letters, and a word with
//! a repeated odd letter is zero.

use crate::coeff::{rat, HbarPoly, Rat};
use crate::error::AlgebraError;
use num::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// The four free-field species of the bc-βγ system.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash, Serialize, Deserialize)]
pub enum Kind {
    B,
    C,
    Beta,
    Gamma,
}

impl Kind {
    /// b and c are fermionic, β and γ are bosonic.
    pub fn is_odd(self) -> bool {
        matches!(self, Kind::B | Kind::C)
    }

    /// Weight of the underived field: 1 for b, β; 0 for c, γ.
    pub fn base_weight(self) -> u32 {
        match self {
            Kind::B | Kind::Beta => 1,
            Kind::C | Kind::Gamma => 0,
        }
    }

    /// The species this one contracts with (b↔c, β↔γ).
    pub fn conjugate(self) -> Kind {
        match self {
            Kind::B => Kind::C,
            Kind::C => Kind::B,
            Kind::Beta => Kind::Gamma,
            Kind::Gamma => Kind::Beta,
        }
    }

    pub fn fermion(self) -> i64 {
        match self {
            Kind::C => 1,
            Kind::B => -1,
            _ => 0,
        }
    }
}

/// One field letter ∂^d X with species, coordinate index (1-based) and
/// derivative order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash, Serialize, Deserialize)]
pub struct Generator {
    pub kind: Kind,
    pub index: u8,
    pub deriv: u8,
}

impl Generator {
    pub fn new(kind: Kind, index: u8, deriv: u8) -> Self {
        Generator { kind, index, deriv }
    }

    pub fn weight(&self) -> u32 {
        self.kind.base_weight() + self.deriv as u32
    }

    pub fn is_odd(&self) -> bool {
        self.kind.is_odd()
    }

    /// Same letter with the derivative order raised by `k`.
    pub fn derived(&self, k: u8) -> Self {
        Generator::new(self.kind, self.index, self.deriv + k)
    }
}

/// Shorthand constructors used pervasively in tests.
pub fn b(i: u8) -> Generator {
    Generator::new(Kind::B, i, 0)
}
pub fn c(i: u8) -> Generator {
    Generator::new(Kind::C, i, 0)
}
pub fn beta(i: u8) -> Generator {
    Generator::new(Kind::Beta, i, 0)
}
pub fn gamma(i: u8) -> Generator {
    Generator::new(Kind::Gamma, i, 0)
}

/// A canonically ordered word of generators.
///
/// Invariant: letters are sorted and no odd letter repeats. Construct through
/// [`Word::normalize`], which reports the Koszul sign of the sort.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash, Default)]
pub struct Word(Vec<Generator>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Generator] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Sort a raw letter sequence into canonical order.
    ///
    /// Returns the canonical word and the sign accumulated by moving odd
    /// letters past each other, or `None` when an odd letter repeats (the
    /// monomial is zero).
    pub fn normalize(raw: &[Generator]) -> Option<(Word, i64)> {
        let mut letters: Vec<Generator> = raw.to_vec();
        let mut sign = 1i64;
        // insertion sort, counting odd-odd transpositions
        for i in 1..letters.len() {
            let mut j = i;
            while j > 0 && letters[j] < letters[j - 1] {
                if letters[j].is_odd() && letters[j - 1].is_odd() {
                    sign = -sign;
                }
                letters.swap(j, j - 1);
                j -= 1;
            }
        }
        for pair in letters.windows(2) {
            if pair[0] == pair[1] && pair[0].is_odd() {
                return None;
            }
        }
        Some((Word(letters), sign))
    }

    /// Canonical word from letters already known to be sorted and repeat-free.
    pub fn from_sorted(letters: Vec<Generator>) -> Self {
        debug_assert!(letters.windows(2).all(|p| p[0] <= p[1]));
        Word(letters)
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().map(|g| g.weight()).sum()
    }

    pub fn fermion(&self) -> i64 {
        self.0.iter().map(|g| g.kind.fermion()).sum()
    }

    pub fn max_deriv(&self) -> u8 {
        self.0.iter().map(|g| g.deriv).max().unwrap_or(0)
    }

    pub fn parity(&self) -> bool {
        self.0.iter().filter(|g| g.is_odd()).count() % 2 == 1
    }

    /// Largest coordinate index appearing in the word (0 for the empty word).
    pub fn dimension(&self) -> u8 {
        self.0.iter().map(|g| g.index).max().unwrap_or(0)
    }

    /// Per-coordinate charge (#γ^i + #b^i − #β_i − #c_i), derivative-blind.
    /// Monomial Poisson structures shift it uniformly, which refines the
    /// graded cells.
    pub fn charge(&self, n: u8) -> Vec<i64> {
        let mut out = vec![0i64; n as usize];
        for g in &self.0 {
            let slot = (g.index - 1) as usize;
            match g.kind {
                Kind::Gamma | Kind::B => out[slot] += 1,
                Kind::Beta | Kind::C => out[slot] -= 1,
            }
        }
        out
    }
}

/// A finite-dimensional graded piece of the state space.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Bidegree {
    pub weight: u32,
    pub fermion: i64,
    pub letters: u32,
}

impl Bidegree {
    pub fn new(weight: u32, fermion: i64, letters: u32) -> Self {
        Bidegree {
            weight,
            fermion,
            letters,
        }
    }

    pub fn of_word(w: &Word) -> Self {
        Bidegree {
            weight: w.weight(),
            fermion: w.fermion(),
            letters: w.len() as u32,
        }
    }
}

/// Exact ℚ[ħ]-linear combination of canonical words: the working model of the
/// space 𝔻[b*, c*, γ*, β*].
///
/// Invariant: no term has zero coefficient; words are distinct.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct State {
    terms: BTreeMap<Word, HbarPoly>,
}

impl State {
    pub fn zero() -> Self {
        State::default()
    }

    pub fn one() -> Self {
        State::monomial(Word::empty(), HbarPoly::one())
    }

    pub fn monomial(word: Word, coeff: HbarPoly) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(word, coeff);
        }
        State { terms }
    }

    /// A single underived/derived letter with coefficient 1.
    pub fn generator(g: Generator) -> Self {
        State::monomial(Word::from_sorted(vec![g]), HbarPoly::one())
    }

    /// Normalize a raw letter sequence into a one-term state.
    pub fn from_raw(raw: &[Generator], coeff: HbarPoly) -> Self {
        match Word::normalize(raw) {
            None => State::zero(),
            Some((word, sign)) => State::monomial(word, coeff.scale(&rat(sign, 1))),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &HbarPoly)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, word: &Word) -> HbarPoly {
        self.terms.get(word).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, word: Word, coeff: HbarPoly) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(word).or_default();
        *entry += &coeff;
        if entry.is_zero() {
            let key = self
                .terms
                .iter()
                .find(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone());
            if let Some(k) = key {
                self.terms.remove(&k);
            }
        }
    }

    pub fn add(&self, other: &State) -> State {
        let mut out = self.clone();
        for (w, cf) in other.terms.iter() {
            out.add_term(w.clone(), cf.clone());
        }
        out
    }

    pub fn sub(&self, other: &State) -> State {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> State {
        State {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, r: &Rat) -> State {
        if r.is_zero() {
            return State::zero();
        }
        State {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), c.scale(r)))
                .collect(),
        }
    }

    pub fn scale_coeff(&self, f: &HbarPoly) -> State {
        let mut out = State::zero();
        for (w, c) in self.terms.iter() {
            out.add_term(w.clone(), c * f);
        }
        out
    }

    /// Supercommutative product; fails when the operands' ambient dimensions
    /// were declared and disagree at the call site (checked by callers that
    /// carry a dimension; the algebraic product itself is total).
    pub fn mul(&self, other: &State) -> State {
        let mut out = State::zero();
        for (wa, ca) in self.terms.iter() {
            for (wb, cb) in other.terms.iter() {
                let mut raw: Vec<Generator> = Vec::with_capacity(wa.len() + wb.len());
                raw.extend_from_slice(wa.letters());
                raw.extend_from_slice(wb.letters());
                if let Some((word, sign)) = Word::normalize(&raw) {
                    out.add_term(word, (ca * cb).scale(&rat(sign, 1)));
                }
            }
        }
        out
    }

    /// Supercommutative product with an explicit ambient-dimension check.
    pub fn mul_checked(&self, other: &State, n: u8) -> Result<State, AlgebraError> {
        let da = self.dimension();
        let db = other.dimension();
        if da > n || db > n {
            return Err(AlgebraError::DimensionMismatch {
                expected: n,
                found: da.max(db),
            });
        }
        Ok(self.mul(other))
    }

    /// Formal z-derivative: Leibniz over every letter of every word.
    pub fn d_z(&self) -> State {
        let mut out = State::zero();
        for (w, cf) in self.terms.iter() {
            for pos in 0..w.len() {
                let mut raw = w.letters().to_vec();
                raw[pos] = raw[pos].derived(1);
                // bumping one letter keeps parities, so normalize never flips
                // relative odd order except through identical-letter ties
                if let Some((word, sign)) = Word::normalize(&raw) {
                    out.add_term(word, cf.scale(&rat(sign, 1)));
                }
            }
        }
        out
    }

    /// Largest coordinate index appearing in any word.
    pub fn dimension(&self) -> u8 {
        self.terms.keys().map(|w| w.dimension()).max().unwrap_or(0)
    }

    /// The ħ^k part with ħ^k divided out.
    pub fn hbar_component(&self, k: u32) -> State {
        let mut out = State::zero();
        for (w, cf) in self.terms.iter() {
            let c = cf.component(k);
            if !c.is_zero() {
                out.add_term(w.clone(), HbarPoly::from_rat(c));
            }
        }
        out
    }

    /// ħ-degrees present across all terms, ascending and deduplicated.
    pub fn hbar_degrees(&self) -> Vec<u32> {
        let mut degs: Vec<u32> = self
            .terms
            .values()
            .flat_map(|c| c.degrees().collect::<Vec<_>>())
            .collect();
        degs.sort_unstable();
        degs.dedup();
        degs
    }

    /// Weight when every term agrees on it.
    pub fn homogeneous_weight(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|w| w.weight());
        let first = it.next()?;
        it.all(|w| w == first).then_some(first)
    }

    /// Fermion number when every term agrees on it.
    pub fn homogeneous_fermion(&self) -> Option<i64> {
        let mut it = self.terms.keys().map(|w| w.fermion());
        let first = it.next()?;
        it.all(|f| f == first).then_some(first)
    }

    /// Maximal derivative order over all letters (0 for derivative-free).
    pub fn vn_grade(&self) -> u8 {
        self.terms.keys().map(|w| w.max_deriv()).max().unwrap_or(0)
    }

    /// Charge vector when every term agrees on it.
    pub fn homogeneous_charge(&self, n: u8) -> Option<Vec<i64>> {
        let mut it = self.terms.keys().map(|w| w.charge(n));
        let first = it.next()?;
        it.all(|c| c == first).then_some(first)
    }

    /// Letter counts occurring among terms, ascending.
    pub fn letter_counts(&self) -> Vec<u32> {
        let mut ls: Vec<u32> = self.terms.keys().map(|w| w.len() as u32).collect();
        ls.sort_unstable();
        ls.dedup();
        ls
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::render::render_state(self))
    }
}

/// All canonical words of the given dimension with exactly the requested
/// weight, fermion number and letter count, in lexicographic order.
pub fn enumerate_basis(n: u8, bd: Bidegree) -> Vec<Word> {
    let mut universe: Vec<Generator> = Vec::new();
    for kind in [Kind::B, Kind::C, Kind::Beta, Kind::Gamma] {
        for index in 1..=n {
            let base = kind.base_weight();
            let mut d = 0u8;
            while base + d as u32 <= bd.weight {
                universe.push(Generator::new(kind, index, d));
                d += 1;
                if base == 0 && bd.weight == 0 {
                    break; // only deriv 0 fits in weight 0
                }
            }
        }
    }
    universe.sort();

    let mut out = Vec::new();
    let mut current: Vec<Generator> = Vec::new();
    fn recurse(
        universe: &[Generator],
        from: usize,
        weight_left: i64,
        fermion_left: i64,
        letters_left: u32,
        current: &mut Vec<Generator>,
        out: &mut Vec<Word>,
    ) {
        if letters_left == 0 {
            if weight_left == 0 && fermion_left == 0 {
                out.push(Word::from_sorted(current.clone()));
            }
            return;
        }
        if fermion_left.unsigned_abs() > letters_left as u64 {
            return;
        }
        for (i, g) in universe.iter().enumerate().skip(from) {
            let w = g.weight() as i64;
            if w > weight_left {
                continue;
            }
            // odd letters may not repeat: advance past g for odd
            let next_from = if g.is_odd() { i + 1 } else { i };
            current.push(*g);
            recurse(
                universe,
                next_from,
                weight_left - w,
                fermion_left - g.kind.fermion(),
                letters_left - 1,
                current,
                out,
            );
            current.pop();
        }
    }
    recurse(
        &universe,
        0,
        bd.weight as i64,
        bd.fermion,
        bd.letters,
        &mut current,
        &mut out,
    );
    out.sort();
    out
}

/// Decide whether a weight- and fermion-homogeneous state is a formal total
/// derivative, returning a preimage witness when it is.
pub fn is_total_derivative(s: &State) -> Result<Option<State>, AlgebraError> {
    if s.is_zero() {
        return Ok(Some(State::zero()));
    }
    let weight = s.homogeneous_weight().ok_or(AlgebraError::NotHomogeneous)?;
    let fermion = s
        .homogeneous_fermion()
        .ok_or(AlgebraError::NotHomogeneous)?;
    if weight == 0 {
        // d_z raises weight; only 0 is a total derivative at weight 0
        return Ok(None);
    }
    let n = s.dimension();
    // d_z preserves letter count, so preimages live at weight-1 with the same
    // letter counts as s
    let mut domain: Vec<Word> = Vec::new();
    for letters in s.letter_counts() {
        domain.extend(enumerate_basis(
            n,
            Bidegree::new(weight - 1, fermion, letters),
        ));
    }
    if domain.is_empty() {
        return Ok(None);
    }
    let images: Vec<State> = domain
        .iter()
        .map(|w| State::monomial(w.clone(), HbarPoly::one()).d_z())
        .collect();

    // solve Σ x_j · images_j = s, one rational system per ħ-degree
    let mut row_index: BTreeMap<Word, usize> = BTreeMap::new();
    for st in images.iter().chain(std::iter::once(s)) {
        for (w, _) in st.terms() {
            let next = row_index.len();
            row_index.entry(w.clone()).or_insert(next);
        }
    }
    let rows = row_index.len();
    let cols = domain.len();

    let mut witness = State::zero();
    for k in s.hbar_degrees() {
        let mut mat = crate::linalg::Mat::zeros(rows, cols + 1);
        for (j, img) in images.iter().enumerate() {
            for (w, cf) in img.terms() {
                // images have ħ-degree 0 coefficients
                mat.set(row_index[w], j, cf.component(0));
            }
        }
        for (w, cf) in s.terms() {
            mat.set(row_index[w], cols, cf.component(k));
        }
        match mat.solve_augmented() {
            None => return Ok(None),
            Some(x) => {
                for (j, coeff) in x.into_iter().enumerate() {
                    if !coeff.is_zero() {
                        witness.add_term(domain[j].clone(), HbarPoly::hbar_term(coeff, k));
                    }
                }
            }
        }
    }
    Ok(Some(witness))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::rat_int;

    fn word(raw: &[Generator]) -> State {
        State::from_raw(raw, HbarPoly::one())
    }

    #[test]
    fn normalize_orders_and_signs() {
        // c2 c1 -> -c1 c2: one odd transposition
        let (w, sign) = Word::normalize(&[c(2), c(1)]).unwrap();
        assert_eq!(w.letters(), &[c(1), c(2)]);
        assert_eq!(sign, -1);

        // odd square vanishes
        assert!(Word::normalize(&[c(1), c(1)]).is_none());

        // even letters commute without sign
        let (w, sign) = Word::normalize(&[gamma(2), gamma(1)]).unwrap();
        assert_eq!(w.letters(), &[gamma(1), gamma(2)]);
        assert_eq!(sign, 1);
    }

    #[test]
    fn normalize_is_idempotent() {
        let raw = [gamma(2), c(1), b(1), beta(2), c(2)];
        let (w, _) = Word::normalize(&raw).unwrap();
        let (w2, sign2) = Word::normalize(w.letters()).unwrap();
        assert_eq!(w, w2);
        assert_eq!(sign2, 1);
    }

    #[test]
    fn multiply_is_supercommutative() {
        let a = word(&[c(1)]);
        let bst = word(&[c(2)]);
        let ab = a.mul(&bst);
        let ba = bst.mul(&a);
        assert_eq!(ab, ba.neg());

        let g = word(&[gamma(1)]);
        assert_eq!(g.mul(&g), word(&[gamma(1), gamma(1)]));

        // (c1 c2) * b1 keeps the canonical-order sign
        let c1c2 = word(&[c(1), c(2)]);
        let prod = c1c2.mul(&word(&[b(1)]));
        let (expected_word, sign) = Word::normalize(&[c(1), c(2), b(1)]).unwrap();
        assert_eq!(sign, 1); // b1 moves left past two odd letters
        assert_eq!(prod.coeff(&expected_word), HbarPoly::one());

        // the checked product rejects letters beyond the ambient dimension
        assert!(c1c2.mul_checked(&word(&[gamma(3)]), 2).is_err());
        assert!(c1c2.mul_checked(&word(&[gamma(2)]), 2).is_ok());
    }

    #[test]
    fn d_z_leibniz_and_weight() {
        // γ¹ → ∂γ¹
        let g = word(&[gamma(1)]);
        assert_eq!(g.d_z(), word(&[gamma(1).derived(1)]));

        // c1c2 → ∂c1·c2 + c1·∂c2
        let c1c2 = word(&[c(1), c(2)]);
        let expected = word(&[c(1).derived(1), c(2)]).add(&word(&[c(1), c(2).derived(1)]));
        assert_eq!(c1c2.d_z(), expected);

        // constants die
        assert!(State::one().d_z().is_zero());

        // weight raises by exactly one on homogeneous input
        let s = word(&[b(1), gamma(2)]);
        assert_eq!(s.homogeneous_weight(), Some(1));
        assert_eq!(s.d_z().homogeneous_weight(), Some(2));
    }

    #[test]
    fn d_z_is_a_derivation_on_products() {
        let a = word(&[c(1), gamma(2)]);
        let bst = word(&[beta(1), c(2)]);
        let lhs = a.mul(&bst).d_z();
        let rhs = a.d_z().mul(&bst).add(&a.mul(&bst.d_z()));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn basis_enumeration_matches_expected_cells() {
        // n=2, (0,1,1) = {c1, c2}
        let cell = enumerate_basis(2, Bidegree::new(0, 1, 1));
        assert_eq!(
            cell,
            vec![Word::from_sorted(vec![c(1)]), Word::from_sorted(vec![c(2)])]
        );

        // n=2, (0,2,2) = {c1c2}
        let cell = enumerate_basis(2, Bidegree::new(0, 2, 2));
        assert_eq!(cell, vec![Word::from_sorted(vec![c(1), c(2)])]);

        // n=1, (1,-1,1) = {b1}
        let cell = enumerate_basis(1, Bidegree::new(1, -1, 1));
        assert_eq!(cell, vec![Word::from_sorted(vec![b(1)])]);
    }

    #[test]
    fn basis_enumeration_agrees_with_brute_force() {
        // brute force: all unordered letter multisets up to the letter bound
        let n = 2u8;
        for weight in 0..=2u32 {
            for fermion in -2..=2i64 {
                for letters in 0..=3u32 {
                    let bd = Bidegree::new(weight, fermion, letters);
                    let fast = enumerate_basis(n, bd);
                    // letters of weight ≤ weight bound
                    let mut alphabet = Vec::new();
                    for kind in [Kind::B, Kind::C, Kind::Beta, Kind::Gamma] {
                        for idx in 1..=n {
                            for d in 0..=weight as u8 {
                                let g = Generator::new(kind, idx, d);
                                if g.weight() <= weight {
                                    alphabet.push(g);
                                }
                            }
                        }
                    }
                    let mut slow: Vec<Word> = Vec::new();
                    let mut stack: Vec<(Vec<Generator>, usize)> = vec![(vec![], 0)];
                    while let Some((cur, from)) = stack.pop() {
                        if cur.len() == letters as usize {
                            let w = Word::from_sorted(cur.clone());
                            if w.weight() == weight && w.fermion() == fermion {
                                slow.push(w);
                            }
                            continue;
                        }
                        for (i, &g) in alphabet.iter().enumerate().skip(from) {
                            if g.is_odd() && cur.last() == Some(&g) {
                                continue;
                            }
                            let mut next = cur.clone();
                            next.push(g);
                            stack.push((next, i));
                        }
                    }
                    slow.sort();
                    slow.dedup();
                    assert_eq!(fast, slow, "cell {:?}", bd);
                }
            }
        }
    }

    #[test]
    fn total_derivative_witnesses() {
        // ∂γ¹ is d_z(γ¹)
        let s = word(&[gamma(1).derived(1)]);
        let witness = is_total_derivative(&s).unwrap().expect("expected witness");
        assert_eq!(witness.d_z(), s);

        // γ¹∂γ¹ = d_z(½ γ¹γ¹)
        let s = word(&[gamma(1), gamma(1).derived(1)]);
        let witness = is_total_derivative(&s).unwrap().expect("expected witness");
        assert_eq!(witness.d_z(), s);
        let half_sq = word(&[gamma(1), gamma(1)]).scale(&rat(1, 2));
        assert_eq!(witness, half_sq);

        // c₁∂c₁ is not a total derivative: the candidate preimage c₁c₁ is zero
        let s = word(&[c(1), c(1).derived(1)]);
        assert!(is_total_derivative(&s).unwrap().is_none());

        // non-homogeneous input is rejected
        let mix = word(&[gamma(1)]).add(&word(&[b(1)]));
        assert!(is_total_derivative(&mix).is_err());
    }

    #[test]
    fn total_derivative_agrees_with_brute_force_solve() {
        // every d_z image certifies as total derivative across a small cell
        for w in enumerate_basis(2, Bidegree::new(1, 1, 3)) {
            let img = State::monomial(w, HbarPoly::from_int(3)).d_z();
            if img.is_zero() {
                continue;
            }
            let witness = is_total_derivative(&img)
                .unwrap()
                .expect("image must certify");
            assert_eq!(witness.d_z(), img);
        }
    }

    #[test]
    fn grading_accessors() {
        let s = word(&[c(2), c(2).derived(1), c(2).derived(2)]);
        assert_eq!(s.vn_grade(), 2);
        assert_eq!(s.homogeneous_weight(), Some(3));
        assert_eq!(s.homogeneous_fermion(), Some(3));
        assert_eq!(State::one().vn_grade(), 0);
        assert_eq!(word(&[gamma(1), c(1)]).vn_grade(), 0);
    }

    #[test]
    fn hbar_components_split_and_divide() {
        let mut s = State::zero();
        s.add_term(
            Word::from_sorted(vec![c(1)]),
            HbarPoly::hbar_term(rat_int(1), 1),
        );
        s.add_term(
            Word::from_sorted(vec![gamma(1)]),
            HbarPoly::hbar_term(rat_int(1), 2),
        );
        assert_eq!(s.hbar_component(1), word(&[c(1)]));
        assert_eq!(s.hbar_component(2), word(&[gamma(1)]));
        assert!(State::zero().hbar_component(5).is_zero());
    }
}
