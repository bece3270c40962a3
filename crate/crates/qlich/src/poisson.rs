//! Polynomial multivector calculus on ℝⁿ: Jacobi identity, Schouten bracket,
//! the classical Lichnerowicz differential d_L = [[P, −]], and classical
//! Lichnerowicz–Poisson cohomology in graded pieces.
//!
//! Multivectors are represented in odd coordinates: a k-vector is a sum of
//! terms x-polynomial · ξ_{i₁}∧…∧ξ_{i_k} with ξ_i ↔ ∂_{x_i} odd. In these
//! coordinates the Schouten bracket is implemented as
//!
//! ```text
//!   [[A, B]] = Σ_k ( ∂_{x_k}A ∧ ∂^L_{ξ_k}B  −  ∂^R_{ξ_k}A ∧ ∂_{x_k}B )
//! ```
//!
//! The sign convention is fixed so that d_L = [[P, −]] matches the quantum
//! operator's ħ¹ page through the dictionary γ^i ↔ x_i, c_i ↔ ξ_i with no
//! extra sign. Consequences to be aware of: [[X, f]] = −X(f) on functions and
//! the degree-(1,1) bracket is the negative of the usual Lie bracket.

use crate::algebra::{Generator, Kind, State, Word};
use crate::coeff::{HbarPoly, Rat};
use crate::error::AlgebraError;
use crate::linalg::{normalize_primitive, SpanReducer};
use crate::poly::Poly;
use num::{One, Zero};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

/// Antisymmetric rank-2 contravariant tensor with polynomial coefficients,
/// stored strictly upper-triangular.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PoissonTensor {
    n: u8,
    entries: BTreeMap<(u8, u8), Poly>,
}

impl PoissonTensor {
    pub fn new(n: u8) -> Self {
        PoissonTensor {
            n,
            entries: BTreeMap::new(),
        }
    }

    pub fn dimension(&self) -> u8 {
        self.n
    }

    /// Set P^{ij} for i < j.
    pub fn set(&mut self, i: u8, j: u8, p: Poly) -> Result<(), AlgebraError> {
        if !(1 <= i && i < j && j <= self.n) {
            return Err(AlgebraError::Unsupported(format!(
                "entry indices must satisfy 1 ≤ i < j ≤ {}, got ({i},{j})",
                self.n
            )));
        }
        if p.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), p);
        }
        Ok(())
    }

    /// P^{ij} with the antisymmetry sign; zero on the diagonal.
    pub fn component(&self, i: u8, j: u8) -> Poly {
        if i == j {
            return Poly::zero(self.n);
        }
        if i < j {
            self.entries
                .get(&(i, j))
                .cloned()
                .unwrap_or_else(|| Poly::zero(self.n))
        } else {
            self.component(j, i).neg()
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(u8, u8), &Poly)> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Common total degree of all entries when they are homogeneous of the
    /// same degree; `None` otherwise (or for the zero tensor, degree 0).
    pub fn homogeneous_degree(&self) -> Option<u32> {
        if self.entries.is_empty() {
            return Some(0);
        }
        let mut deg = None;
        for p in self.entries.values() {
            if !p.is_homogeneous() {
                return None;
            }
            let d = p.degree()?;
            match deg {
                None => deg = Some(d),
                Some(existing) if existing != d => return None,
                _ => {}
            }
        }
        deg
    }

    /// When every entry is a single monomial c·x^a and all entries induce the
    /// same charge shift a − e_i − e_j, the quantum differential is
    /// charge-homogeneous with that shift.
    pub fn charge_shift(&self) -> Option<Vec<i64>> {
        let n = self.n as usize;
        let mut shift: Option<Vec<i64>> = None;
        if self.entries.is_empty() {
            return None;
        }
        for ((i, j), poly) in self.entries.iter() {
            if poly.num_terms() != 1 {
                return None;
            }
            let (exps, _) = poly.terms().next().unwrap();
            let mut s: Vec<i64> = exps.iter().map(|&e| e as i64).collect();
            s.resize(n, 0);
            s[(*i - 1) as usize] -= 1;
            s[(*j - 1) as usize] -= 1;
            match &shift {
                None => shift = Some(s),
                Some(existing) if *existing != s => return None,
                _ => {}
            }
        }
        shift
    }

    pub fn to_multivector(&self) -> Multivector {
        let mut mv = Multivector::zero(self.n);
        for ((i, j), p) in self.entries.iter() {
            mv.add_component(vec![*i, *j], p.clone());
        }
        mv
    }
}

/// A formal sum of multivector fields: strictly increasing ξ-index tuples
/// with polynomial coefficients; mixed degrees allowed.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Multivector {
    n: u8,
    comps: BTreeMap<Vec<u8>, Poly>,
}

impl Multivector {
    pub fn zero(n: u8) -> Self {
        Multivector {
            n,
            comps: BTreeMap::new(),
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        let n = p.vars();
        let mut mv = Multivector::zero(n);
        mv.add_component(vec![], p);
        mv
    }

    pub fn dimension(&self) -> u8 {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn components(&self) -> impl Iterator<Item = (&Vec<u8>, &Poly)> {
        self.comps.iter()
    }

    pub fn component(&self, indices: &[u8]) -> Poly {
        self.comps
            .get(indices)
            .cloned()
            .unwrap_or_else(|| Poly::zero(self.n))
    }

    pub fn add_component(&mut self, indices: Vec<u8>, p: Poly) {
        debug_assert!(indices.windows(2).all(|w| w[0] < w[1]));
        if p.is_zero() {
            return;
        }
        let entry = self
            .comps
            .entry(indices)
            .or_insert_with(|| Poly::zero(self.n));
        *entry = entry.add(&p);
        if entry.is_zero() {
            let key = self
                .comps
                .iter()
                .find(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone());
            if let Some(k) = key {
                self.comps.remove(&k);
            }
        }
    }

    pub fn add(&self, other: &Multivector) -> Multivector {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (idx, p) in other.comps.iter() {
            out.add_component(idx.clone(), p.clone());
        }
        out
    }

    pub fn sub(&self, other: &Multivector) -> Multivector {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Multivector {
        Multivector {
            n: self.n,
            comps: self
                .comps
                .iter()
                .map(|(i, p)| (i.clone(), p.neg()))
                .collect(),
        }
    }

    pub fn scale(&self, r: &Rat) -> Multivector {
        let mut out = Multivector::zero(self.n);
        for (idx, p) in self.comps.iter() {
            out.add_component(idx.clone(), p.scale(r));
        }
        out
    }

    /// Wedge product with the Koszul sign of interleaving the index tuples.
    pub fn wedge(&self, other: &Multivector) -> Multivector {
        assert_eq!(self.n, other.n);
        let mut out = Multivector::zero(self.n);
        for (ia, pa) in self.comps.iter() {
            for (ib, pb) in other.comps.iter() {
                if let Some((merged, sign)) = merge_tuples(ia, ib) {
                    let coeff = pa.mul(pb);
                    out.add_component(merged, if sign >= 0 { coeff } else { coeff.neg() });
                }
            }
        }
        out
    }

    /// ∂/∂x_k applied to every coefficient.
    pub fn diff_x(&self, k: u8) -> Multivector {
        let mut out = Multivector::zero(self.n);
        for (idx, p) in self.comps.iter() {
            out.add_component(idx.clone(), p.diff(k));
        }
        out
    }

    /// Left derivative with respect to ξ_k.
    pub fn diff_xi_left(&self, k: u8) -> Multivector {
        let mut out = Multivector::zero(self.n);
        for (idx, p) in self.comps.iter() {
            if let Some(t) = idx.iter().position(|&i| i == k) {
                let mut rest = idx.clone();
                rest.remove(t);
                let signed = if t % 2 == 0 { p.clone() } else { p.neg() };
                out.add_component(rest, signed);
            }
        }
        out
    }

    /// Right derivative with respect to ξ_k.
    pub fn diff_xi_right(&self, k: u8) -> Multivector {
        let mut out = Multivector::zero(self.n);
        for (idx, p) in self.comps.iter() {
            if let Some(t) = idx.iter().position(|&i| i == k) {
                let mut rest = idx.clone();
                rest.remove(t);
                let from_right = idx.len() - 1 - t;
                let signed = if from_right % 2 == 0 {
                    p.clone()
                } else {
                    p.neg()
                };
                out.add_component(rest, signed);
            }
        }
        out
    }

    /// Common multivector degree when homogeneous.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut it = self.comps.keys().map(|i| i.len());
        let first = it.next()?;
        it.all(|l| l == first).then_some(first)
    }

    /// Dictionary image in the state algebra: x_i ↦ γ^i, ξ_i ↦ c_i.
    pub fn to_state(&self) -> State {
        let mut out = State::zero();
        for (idx, p) in self.comps.iter() {
            let gamma_part = p.to_gamma_state();
            let mut letters: Vec<Generator> =
                idx.iter().map(|&i| Generator::new(Kind::C, i, 0)).collect();
            letters.sort();
            let c_word = State::monomial(Word::from_sorted(letters), HbarPoly::one());
            out = out.add(&gamma_part.mul(&c_word));
        }
        out
    }

    /// Inverse dictionary: a derivative-free weight-0 state in c, γ letters.
    pub fn from_state(s: &State, n: u8) -> Result<Multivector, AlgebraError> {
        let mut out = Multivector::zero(n);
        for (word, coeff) in s.terms() {
            let mut exps = vec![0u16; n as usize];
            let mut xi: Vec<u8> = Vec::new();
            for g in word.letters() {
                if g.deriv != 0 {
                    return Err(AlgebraError::Unsupported(
                        "dictionary applies to derivative-free words only".into(),
                    ));
                }
                match g.kind {
                    Kind::Gamma => exps[(g.index - 1) as usize] += 1,
                    Kind::C => xi.push(g.index),
                    _ => {
                        return Err(AlgebraError::Unsupported(
                            "dictionary applies to words in c and γ only".into(),
                        ))
                    }
                }
            }
            if coeff.max_degree().unwrap_or(0) != 0 {
                return Err(AlgebraError::Unsupported(
                    "dictionary applies to ħ-free coefficients only".into(),
                ));
            }
            let mut p = Poly::zero(n);
            p.add_term(exps, coeff.component(0));
            // c-letters in a canonical word are already ascending
            let mut mv_term = Multivector::zero(n);
            mv_term.add_component(xi, p);
            out = out.add(&mv_term);
        }
        Ok(out)
    }
}

fn merge_tuples(a: &[u8], b: &[u8]) -> Option<(Vec<u8>, i8)> {
    let mut merged = Vec::with_capacity(a.len() + b.len());
    let mut sign = 1i8;
    let (mut i, mut j) = (0usize, 0usize);
    while i < a.len() && j < b.len() {
        if a[i] == b[j] {
            return None;
        }
        if a[i] < b[j] {
            merged.push(a[i]);
            i += 1;
        } else {
            // b[j] jumps over the remaining letters of a
            if (a.len() - i) % 2 == 1 {
                sign = -sign;
            }
            merged.push(b[j]);
            j += 1;
        }
    }
    merged.extend_from_slice(&a[i..]);
    merged.extend_from_slice(&b[j..]);
    Some((merged, sign))
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (idx, p) in self.comps.iter() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if idx.is_empty() {
                write!(f, "({})", p)?;
            } else {
                let xs: Vec<String> = idx.iter().map(|i| format!("d{}", i)).collect();
                write!(f, "({})*{}", p, xs.join("^"))?;
            }
        }
        Ok(())
    }
}

/// Evaluate the Jacobi identity residual Σ_l (P^{lj}∂_l P^{ik} + P^{li}∂_l
/// P^{kj} + P^{lk}∂_l P^{ji}) for all i<j<k; the tensor is Poisson iff the
/// residual vanishes.
pub fn jacobi_check(p: &PoissonTensor) -> (bool, Multivector) {
    let n = p.dimension();
    let mut residual = Multivector::zero(n);
    for i in 1..=n {
        for j in (i + 1)..=n {
            for k in (j + 1)..=n {
                let mut acc = Poly::zero(n);
                for l in 1..=n {
                    acc = acc
                        .add(&p.component(l, j).mul(&p.component(i, k).diff(l)))
                        .add(&p.component(l, i).mul(&p.component(k, j).diff(l)))
                        .add(&p.component(l, k).mul(&p.component(j, i).diff(l)));
                }
                residual.add_component(vec![i, j, k], acc);
            }
        }
    }
    (residual.is_zero(), residual)
}

/// The Schouten–Nijenhuis bracket in the convention documented at module
/// level: [[A,B]] = Σ_k (∂_{x_k}A ∧ ∂^L_{ξ_k}B − ∂^R_{ξ_k}A ∧ ∂_{x_k}B).
pub fn schouten(a: &Multivector, b: &Multivector) -> Result<Multivector, AlgebraError> {
    if a.dimension() != b.dimension() {
        return Err(AlgebraError::DimensionMismatch {
            expected: a.dimension(),
            found: b.dimension(),
        });
    }
    let n = a.dimension();
    let mut out = Multivector::zero(n);
    for k in 1..=n {
        out = out
            .add(&a.diff_x(k).wedge(&b.diff_xi_left(k)))
            .sub(&a.diff_xi_right(k).wedge(&b.diff_x(k)));
    }
    Ok(out)
}

/// d_L(A) = [[P, A]]; squares to zero exactly when P satisfies Jacobi.
pub fn lichnerowicz_d(p: &PoissonTensor, a: &Multivector) -> Multivector {
    schouten(&p.to_multivector(), a).expect("tensor and argument share a dimension")
}

/// One graded cell of a classical cohomology computation.
#[derive(Clone, Debug, Serialize)]
pub struct ClassicalCell {
    pub multivector_degree: usize,
    pub poly_degree: u32,
    pub dim_space: usize,
    pub dim_closed: usize,
    pub dim_exact: usize,
    pub dim_cohomology: usize,
    /// Representatives rendered through the dictionary x→γ, ξ→c.
    pub representatives: Vec<String>,
    /// True when the polynomial-degree cutoff may truncate the image.
    pub truncated: bool,
}

/// Classical LP cohomology per (multivector degree, polynomial degree) cell.
#[derive(Clone, Debug, Serialize)]
pub struct ClassicalCohomology {
    pub max_poly_degree: u32,
    pub homogeneous_degree: Option<u32>,
    pub cells: Vec<ClassicalCell>,
}

impl ClassicalCohomology {
    /// Total cohomology dimension in multivector degree k across all bands.
    pub fn total_dim(&self, k: usize) -> usize {
        self.cells
            .iter()
            .filter(|c| c.multivector_degree == k)
            .map(|c| c.dim_cohomology)
            .sum()
    }

    /// All representatives in multivector degree k (dictionary-rendered).
    pub fn representatives(&self, k: usize) -> Vec<String> {
        self.cells
            .iter()
            .filter(|c| c.multivector_degree == k)
            .flat_map(|c| c.representatives.iter().cloned())
            .collect()
    }
}

fn enumerate_monomials(n: u8, degree: u32) -> Vec<Vec<u16>> {
    let mut out = Vec::new();
    let mut current = vec![0u16; n as usize];
    fn rec(pos: usize, left: u32, current: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        if pos + 1 == current.len() {
            current[pos] = left as u16;
            out.push(current.clone());
            return;
        }
        for d in 0..=left {
            current[pos] = d as u16;
            rec(pos + 1, left - d, current, out);
        }
    }
    if n == 0 {
        if degree == 0 {
            out.push(vec![]);
        }
        return out;
    }
    rec(0, degree, &mut current, &mut out);
    out.sort();
    out
}

fn enumerate_tuples(n: u8, k: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut current: Vec<u8> = Vec::new();
    fn rec(n: u8, k: usize, from: u8, current: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in from..=n {
            current.push(i);
            rec(n, k, i + 1, current, out);
            current.pop();
        }
    }
    rec(n, k, 1, &mut current, &mut out);
    out
}

/// Basis of the (k, m) cell: strictly increasing ξ-tuples of length k times
/// degree-m monomials, in deterministic order.
fn classical_cell_basis(n: u8, k: usize, m: u32) -> Vec<(Vec<u8>, Vec<u16>)> {
    let mut out = Vec::new();
    for tup in enumerate_tuples(n, k) {
        for mono in enumerate_monomials(n, m) {
            out.push((tup.clone(), mono));
        }
    }
    out
}

fn basis_multivector(n: u8, b: &(Vec<u8>, Vec<u16>)) -> Multivector {
    let mut p = Poly::zero(n);
    p.add_term(b.1.clone(), Rat::one());
    let mut mv = Multivector::zero(n);
    mv.add_component(b.0.clone(), p);
    mv
}

/// Coordinates of `mv` over the union of its own support; rows discovered.
fn mv_coordinates(
    mv: &Multivector,
    row_index: &mut BTreeMap<(Vec<u8>, Vec<u16>), usize>,
) -> Vec<(usize, Rat)> {
    let mut out = Vec::new();
    for (idx, p) in mv.components() {
        for (e, c) in p.terms() {
            let key = (idx.clone(), e.clone());
            let next = row_index.len();
            let row = *row_index.entry(key).or_insert(next);
            out.push((row, c.clone()));
        }
    }
    out
}

/// Classical LP cohomology of `p` in cells up to the polynomial-degree bound.
///
/// For a tensor with homogeneous entries of one common degree d the
/// differential maps cell (k, m) to (k+1, m+d−1) and every reported cell is
/// exact. Otherwise cells are banded by polynomial degree and cells whose
/// image could receive contributions from beyond the cutoff are flagged.
pub fn lp_cohomology(
    p: &PoissonTensor,
    max_poly_degree: u32,
) -> Result<ClassicalCohomology, AlgebraError> {
    let (ok, _) = jacobi_check(p);
    if !ok {
        return Err(AlgebraError::Unsupported(
            "tensor does not satisfy the Jacobi identity".into(),
        ));
    }
    let n = p.dimension();
    let homogeneous = p.homogeneous_degree();
    let mut cells = Vec::new();

    match homogeneous {
        Some(d) => {
            let shift = d as i64 - 1;
            for k in 0..=(n as usize) {
                for m in 0..=max_poly_degree {
                    let cell = solve_classical_cell(p, n, k, m, shift);
                    cells.push(cell);
                }
            }
        }
        None => {
            // banded computation, image may be cut off near the boundary
            let dmin = p
                .entries()
                .flat_map(|(_, poly)| {
                    poly.terms()
                        .map(|(e, _)| e.iter().map(|&x| x as u32).sum::<u32>())
                })
                .min()
                .unwrap_or(0);
            for k in 0..=(n as usize) {
                let banded = solve_classical_band(p, n, k, max_poly_degree, dmin);
                cells.extend(banded);
            }
        }
    }
    Ok(ClassicalCohomology {
        max_poly_degree,
        homogeneous_degree: homogeneous,
        cells,
    })
}

fn solve_classical_cell(p: &PoissonTensor, n: u8, k: usize, m: u32, shift: i64) -> ClassicalCell {
    let domain = classical_cell_basis(n, k, m);
    let dim_space = domain.len();

    // kernel of d on this cell
    let mut row_index: BTreeMap<(Vec<u8>, Vec<u16>), usize> = BTreeMap::new();
    let images: Vec<Vec<(usize, Rat)>> = domain
        .iter()
        .map(|b| mv_coordinates(&lichnerowicz_d(p, &basis_multivector(n, b)), &mut row_index))
        .collect();
    let kernel = kernel_from_sparse(&images);

    // image from the cell below
    let mut image_span = SpanReducer::new(dim_space);
    if k >= 1 {
        let below_m = m as i64 - shift;
        if below_m >= 0 {
            let below = classical_cell_basis(n, k - 1, below_m as u32);
            let col_index: BTreeMap<(Vec<u8>, Vec<u16>), usize> = domain
                .iter()
                .cloned()
                .enumerate()
                .map(|(i, b)| (b, i))
                .collect();
            for b in &below {
                let img = lichnerowicz_d(p, &basis_multivector(n, b));
                let mut vecr = vec![Rat::zero(); dim_space];
                let mut in_cell = true;
                for (idx, poly) in img.components() {
                    for (e, c) in poly.terms() {
                        match col_index.get(&(idx.clone(), e.clone())) {
                            Some(&col) => vecr[col] = c.clone(),
                            None => in_cell = false,
                        }
                    }
                }
                debug_assert!(in_cell, "homogeneous differential must stay in its cell");
                image_span.insert(vecr);
            }
        }
    }
    let dim_exact = image_span.rank();

    let (dim_cohomology, representatives) =
        quotient_representatives(&kernel, &mut image_span, |v| {
            render_classical_vector(n, &domain, v)
        });

    ClassicalCell {
        multivector_degree: k,
        poly_degree: m,
        dim_space,
        dim_closed: kernel.len(),
        dim_exact,
        dim_cohomology,
        representatives,
        truncated: false,
    }
}

fn solve_classical_band(
    p: &PoissonTensor,
    n: u8,
    k: usize,
    max_m: u32,
    dmin: u32,
) -> Vec<ClassicalCell> {
    // domain: all (k, m ≤ max_m); kernel exact, image possibly cut off
    let mut domain: Vec<(Vec<u8>, Vec<u16>)> = Vec::new();
    for m in 0..=max_m {
        domain.extend(classical_cell_basis(n, k, m));
    }
    let dim_space = domain.len();
    let mut row_index: BTreeMap<(Vec<u8>, Vec<u16>), usize> = BTreeMap::new();
    let images: Vec<Vec<(usize, Rat)>> = domain
        .iter()
        .map(|b| mv_coordinates(&lichnerowicz_d(p, &basis_multivector(n, b)), &mut row_index))
        .collect();
    let kernel = kernel_from_sparse(&images);

    let mut image_span = SpanReducer::new(dim_space);
    if k >= 1 {
        let col_index: BTreeMap<(Vec<u8>, Vec<u16>), usize> = domain
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, b)| (b, i))
            .collect();
        let mut below: Vec<(Vec<u8>, Vec<u16>)> = Vec::new();
        for m in 0..=max_m {
            below.extend(classical_cell_basis(n, k - 1, m));
        }
        for b in &below {
            let img = lichnerowicz_d(p, &basis_multivector(n, b));
            let mut vecr = vec![Rat::zero(); dim_space];
            let mut inside = true;
            for (idx, poly) in img.components() {
                for (e, c) in poly.terms() {
                    match col_index.get(&(idx.clone(), e.clone())) {
                        Some(&col) => vecr[col] = c.clone(),
                        None => inside = false,
                    }
                }
            }
            if inside {
                image_span.insert(vecr);
            }
        }
    }
    let dim_exact = image_span.rank();
    let (dim_cohomology, representatives) =
        quotient_representatives(&kernel, &mut image_span, |v| {
            render_classical_vector(n, &domain, v)
        });
    // the whole band is one reported cell; flag image truncation when the
    // lowest homogeneous layer of P could pull preimages from beyond the band
    vec![ClassicalCell {
        multivector_degree: k,
        poly_degree: max_m,
        dim_space,
        dim_closed: kernel.len(),
        dim_exact,
        dim_cohomology,
        representatives,
        truncated: dmin == 0,
    }]
}

fn kernel_from_sparse(images: &[Vec<(usize, Rat)>]) -> Vec<Vec<Rat>> {
    let columns: Vec<crate::linalg::SparseVec> = images
        .iter()
        .map(|v| {
            let mut col = v.clone();
            col.sort_by_key(|(i, _)| *i);
            col
        })
        .collect();
    crate::linalg::sparse_kernel(&columns)
}

fn quotient_representatives(
    kernel: &[Vec<Rat>],
    image_span: &mut SpanReducer,
    render: impl Fn(&[Rat]) -> String,
) -> (usize, Vec<String>) {
    let mut reps = Vec::new();
    for v in kernel {
        if let Some(reduced) = image_span.insert(v.clone()) {
            reps.push(render(&normalize_primitive(&reduced)));
        }
    }
    (reps.len(), reps)
}

fn render_classical_vector(n: u8, basis: &[(Vec<u8>, Vec<u16>)], v: &[Rat]) -> String {
    let mut mv = Multivector::zero(n);
    for (b, c) in basis.iter().zip(v.iter()) {
        if !c.is_zero() {
            let mut p = Poly::zero(n);
            p.add_term(b.1.clone(), c.clone());
            mv.add_component(b.0.clone(), p);
        }
    }
    crate::render::render_state(&mv.to_state())
}
