//! Sparse exact-rational polynomials in x₁..x_n.

use crate::algebra::{Generator, Kind, State, Word};
use crate::coeff::{HbarPoly, Rat};
use num::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// A polynomial in canonical sparse monomial form: exponent vector → nonzero
/// rational coefficient.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    n: u8,
    terms: BTreeMap<Vec<u16>, Rat>,
}

impl Poly {
    pub fn zero(n: u8) -> Self {
        Poly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: u8, r: Rat) -> Self {
        let mut p = Poly::zero(n);
        p.add_term(vec![0; n as usize], r);
        p
    }

    pub fn one(n: u8) -> Self {
        Poly::constant(n, Rat::one())
    }

    /// The coordinate x_i (1-based).
    pub fn var(n: u8, i: u8) -> Self {
        assert!(i >= 1 && i <= n);
        let mut exps = vec![0u16; n as usize];
        exps[(i - 1) as usize] = 1;
        let mut p = Poly::zero(n);
        p.add_term(exps, Rat::one());
        p
    }

    pub fn vars(&self) -> u8 {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u16>, &Rat)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, exps: Vec<u16>, coeff: Rat) {
        debug_assert_eq!(exps.len(), self.n as usize);
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps).or_insert_with(Rat::zero);
        *entry += coeff;
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

    pub fn add(&self, other: &Poly) -> Poly {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (e, c) in other.terms.iter() {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, r: &Rat) -> Poly {
        if r.is_zero() {
            return Poly::zero(self.n);
        }
        Poly {
            n: self.n,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * r)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert_eq!(self.n, other.n);
        let mut out = Poly::zero(self.n);
        for (ea, ca) in self.terms.iter() {
            for (eb, cb) in other.terms.iter() {
                let exps: Vec<u16> = ea.iter().zip(eb.iter()).map(|(a, b)| a + b).collect();
                out.add_term(exps, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, k: u16) -> Poly {
        let mut out = Poly::one(self.n);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Partial derivative ∂/∂x_i (1-based).
    pub fn diff(&self, i: u8) -> Poly {
        let idx = (i - 1) as usize;
        let mut out = Poly::zero(self.n);
        for (e, c) in self.terms.iter() {
            if e[idx] == 0 {
                continue;
            }
            let mut exps = e.clone();
            exps[idx] -= 1;
            out.add_term(exps, c * Rat::from(num::BigInt::from(e[idx] as i64)));
        }
        out
    }

    /// Total degree of the polynomial, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as u32).sum())
            .max()
    }

    /// True when all monomials share the same total degree.
    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(|e| e.iter().sum::<u16>());
        match it.next() {
            None => true,
            Some(d) => it.all(|x| x == d),
        }
    }

    /// The homogeneous part of the given total degree.
    pub fn homogeneous_part(&self, d: u32) -> Poly {
        let mut out = Poly::zero(self.n);
        for (e, c) in self.terms.iter() {
            if e.iter().map(|&x| x as u32).sum::<u32>() == d {
                out.add_term(e.clone(), c.clone());
            }
        }
        out
    }

    /// Substitute x_m ↦ γ^m, producing a state whose words are γ-multisets.
    pub fn to_gamma_state(&self) -> State {
        let mut out = State::zero();
        for (e, c) in self.terms.iter() {
            let mut letters = Vec::new();
            for (i, &exp) in e.iter().enumerate() {
                for _ in 0..exp {
                    letters.push(Generator::new(Kind::Gamma, (i + 1) as u8, 0));
                }
            }
            out.add_term(Word::from_sorted(letters), HbarPoly::from_rat(c.clone()));
        }
        out
    }

    /// Evaluate at a rational point (used by randomized identity checks).
    pub fn eval(&self, point: &[Rat]) -> Rat {
        let mut acc = Rat::zero();
        for (e, c) in self.terms.iter() {
            let mut term = c.clone();
            for (i, &exp) in e.iter().enumerate() {
                for _ in 0..exp {
                    term *= &point[i];
                }
            }
            acc += term;
        }
        acc
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // graded-lexicographic, highest degree first
        let mut ordered: Vec<(&Vec<u16>, &Rat)> = self.terms.iter().collect();
        ordered.sort_by(|(ea, _), (eb, _)| {
            let da: u32 = ea.iter().map(|&x| x as u32).sum();
            let db: u32 = eb.iter().map(|&x| x as u32).sum();
            db.cmp(&da).then_with(|| eb.cmp(ea))
        });
        let mut first = true;
        for (e, c) in ordered {
            let negative = c.is_negative();
            let mag = c.abs();
            if first {
                if negative {
                    write!(f, "-")?;
                }
                first = false;
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || e.iter().all(|&x| x == 0) {
                if mag.denom().is_one() {
                    factors.push(format!("{}", mag.numer()));
                } else {
                    factors.push(format!("{}/{}", mag.numer(), mag.denom()));
                }
            }
            for (i, &exp) in e.iter().enumerate() {
                match exp {
                    0 => {}
                    1 => factors.push(format!("x{}", i + 1)),
                    k => factors.push(format!("x{}^{}", i + 1, k)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}
