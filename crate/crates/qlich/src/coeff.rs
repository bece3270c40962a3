//! Exact coefficients: rational polynomials in the central even indeterminate ħ.
//!
//! Every contraction in the OPE engine contributes one power of ħ, so state
//! coefficients live in ℚ[ħ]. The ħ-grading is what slices the quantum
//! differential into its spectral-sequence pages.

use num::{BigInt, BigRational, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

/// Exact rational scalar.
pub type Rat = BigRational;

/// Build a rational from an integer pair.
pub fn rat(num: i64, den: i64) -> Rat {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Build a rational from an integer.
pub fn rat_int(num: i64) -> Rat {
    BigRational::from(BigInt::from(num))
}

/// An element of ℚ[ħ], stored sparsely by ħ-degree with no zero entries.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct HbarPoly {
    terms: BTreeMap<u32, Rat>,
}

impl HbarPoly {
    pub fn zero() -> Self {
        HbarPoly::default()
    }

    pub fn one() -> Self {
        HbarPoly::from_rat(rat_int(1))
    }

    pub fn from_rat(r: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(0, r);
        }
        HbarPoly { terms }
    }

    pub fn from_int(n: i64) -> Self {
        HbarPoly::from_rat(rat_int(n))
    }

    /// `r · ħ^k`.
    pub fn hbar_term(r: Rat, k: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(k, r);
        }
        HbarPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of ħ^k.
    pub fn component(&self, k: u32) -> Rat {
        self.terms.get(&k).cloned().unwrap_or_else(Rat::zero)
    }

    /// Degrees with nonzero coefficient, ascending.
    pub fn degrees(&self) -> impl Iterator<Item = u32> + '_ {
        self.terms.keys().copied()
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    /// True when the polynomial is a single power of ħ (or zero).
    pub fn is_hbar_homogeneous(&self) -> bool {
        self.terms.len() <= 1
    }

    /// Multiply by ħ^k.
    pub fn shift(&self, k: u32) -> Self {
        HbarPoly {
            terms: self.terms.iter().map(|(d, c)| (d + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, r: &Rat) -> Self {
        if r.is_zero() {
            return HbarPoly::zero();
        }
        HbarPoly {
            terms: self.terms.iter().map(|(d, c)| (*d, c * r)).collect(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &Rat)> {
        self.terms.iter().map(|(d, c)| (*d, c))
    }

    fn insert_add(&mut self, deg: u32, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(deg).or_insert_with(Rat::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&deg);
        }
    }
}

impl Add for &HbarPoly {
    type Output = HbarPoly;
    fn add(self, rhs: &HbarPoly) -> HbarPoly {
        let mut out = self.clone();
        for (d, c) in rhs.terms.iter() {
            out.insert_add(*d, c.clone());
        }
        out
    }
}

impl AddAssign<&HbarPoly> for HbarPoly {
    fn add_assign(&mut self, rhs: &HbarPoly) {
        for (d, c) in rhs.terms.iter() {
            self.insert_add(*d, c.clone());
        }
    }
}

impl Sub for &HbarPoly {
    type Output = HbarPoly;
    fn sub(self, rhs: &HbarPoly) -> HbarPoly {
        let mut out = self.clone();
        for (d, c) in rhs.terms.iter() {
            out.insert_add(*d, -c.clone());
        }
        out
    }
}

impl Mul for &HbarPoly {
    type Output = HbarPoly;
    fn mul(self, rhs: &HbarPoly) -> HbarPoly {
        let mut out = HbarPoly::zero();
        for (da, ca) in self.terms.iter() {
            for (db, cb) in rhs.terms.iter() {
                out.insert_add(da + db, ca * cb);
            }
        }
        out
    }
}

impl Neg for &HbarPoly {
    type Output = HbarPoly;
    fn neg(self) -> HbarPoly {
        HbarPoly {
            terms: self.terms.iter().map(|(d, c)| (*d, -c.clone())).collect(),
        }
    }
}

impl fmt::Display for HbarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.terms.iter() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match d {
                0 => write!(f, "{}", c)?,
                1 => write!(f, "{}*h", c)?,
                _ => write!(f, "{}*h^{}", c, d)?,
            }
        }
        Ok(())
    }
}
