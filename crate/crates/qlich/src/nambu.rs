//! n-ary Nambu-Poisson brackets: Jacobian determinant evaluation, Leibniz and
//! Filippov–Jacobi identity checks, the Takhtajan tensor conditions, inductive
//! argument-fixing, and the even-order bridge to the quantum operator.

use crate::algebra::{Generator, Kind, State};
use crate::coeff::HbarPoly;
use crate::error::AlgebraError;
use crate::ope::{IntegratedOperator, OpeConvention};
use crate::poisson::{schouten, Multivector, PoissonTensor};
use crate::poly::Poly;
use crate::quantum::{build_generator, QuantumGenerator};
use rand::Rng;

/// A totally antisymmetric polynomial-coefficient r-vector field on ℝⁿ,
/// stored on strictly increasing index tuples.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NambuTensor {
    n: u8,
    order: u8,
    comps: std::collections::BTreeMap<Vec<u8>, Poly>,
}

impl NambuTensor {
    pub fn new(n: u8, order: u8) -> Result<Self, AlgebraError> {
        if order < 2 {
            return Err(AlgebraError::OrderTooSmall {
                min: 2,
                found: order,
            });
        }
        Ok(NambuTensor {
            n,
            order,
            comps: std::collections::BTreeMap::new(),
        })
    }

    pub fn dimension(&self) -> u8 {
        self.n
    }

    pub fn order(&self) -> u8 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    /// Set the component on a strictly increasing index tuple.
    pub fn set(&mut self, indices: &[u8], p: Poly) -> Result<(), AlgebraError> {
        if indices.len() != self.order as usize
            || !indices.windows(2).all(|w| w[0] < w[1])
            || indices.iter().any(|&i| i < 1 || i > self.n)
        {
            return Err(AlgebraError::Unsupported(format!(
                "component indices must be strictly increasing in 1..={}, got {:?}",
                self.n, indices
            )));
        }
        if p.is_zero() {
            self.comps.remove(indices);
        } else {
            self.comps.insert(indices.to_vec(), p);
        }
        Ok(())
    }

    /// Fully antisymmetric component accessor for arbitrary index tuples.
    pub fn component(&self, indices: &[u8]) -> Poly {
        debug_assert_eq!(indices.len(), self.order as usize);
        let mut sorted: Vec<u8> = indices.to_vec();
        // count inversions: every transposition flips the sign
        let mut sign = 1i64;
        for i in 1..sorted.len() {
            let mut j = i;
            while j > 0 && sorted[j] < sorted[j - 1] {
                sorted.swap(j, j - 1);
                sign = -sign;
                j -= 1;
            }
        }
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Poly::zero(self.n);
        }
        let base = self
            .comps
            .get(&sorted)
            .cloned()
            .unwrap_or_else(|| Poly::zero(self.n));
        if sign >= 0 {
            base
        } else {
            base.neg()
        }
    }

    pub fn components(&self) -> impl Iterator<Item = (&Vec<u8>, &Poly)> {
        self.comps.iter()
    }

    pub fn to_multivector(&self) -> Multivector {
        let mut mv = Multivector::zero(self.n);
        for (idx, p) in self.comps.iter() {
            mv.add_component(idx.clone(), p.clone());
        }
        mv
    }

    pub fn from_poisson(p: &PoissonTensor) -> Self {
        let mut t = NambuTensor::new(p.dimension(), 2).expect("order 2 is valid");
        for ((i, j), poly) in p.entries() {
            t.set(&[*i, *j], poly.clone()).unwrap();
        }
        t
    }

    pub fn to_poisson(&self) -> Result<PoissonTensor, AlgebraError> {
        if self.order != 2 {
            return Err(AlgebraError::Unsupported(format!(
                "only order-2 tensors convert to Poisson tensors, got order {}",
                self.order
            )));
        }
        let mut p = PoissonTensor::new(self.n);
        for (idx, poly) in self.comps.iter() {
            p.set(idx[0], idx[1], poly.clone())?;
        }
        Ok(p)
    }

    /// The induced bracket {f₁,…,f_r} = P(df₁,…,df_r).
    pub fn bracket(&self, fs: &[Poly]) -> Result<Poly, AlgebraError> {
        if fs.len() != self.order as usize {
            return Err(AlgebraError::Unsupported(format!(
                "bracket arity {} does not match tensor order {}",
                fs.len(),
                self.order
            )));
        }
        let mut acc = Poly::zero(self.n);
        for (idx, p) in self.comps.iter() {
            let det = jacobian_minor(fs, idx, self.n)?;
            acc = acc.add(&p.mul(&det));
        }
        Ok(acc)
    }

    /// Fix the first argument to `f`: the (r−1)-tensor {f, −, …, −}.
    pub fn fix_argument(&self, f: &Poly) -> Result<NambuTensor, AlgebraError> {
        if self.order < 3 {
            return Err(AlgebraError::OrderTooSmall {
                min: 3,
                found: self.order,
            });
        }
        let mut out = NambuTensor::new(self.n, self.order - 1)?;
        let rest = enumerate_increasing(self.n, (self.order - 1) as usize);
        for tail in rest {
            let mut acc = Poly::zero(self.n);
            for u in 1..=self.n {
                let mut idx = Vec::with_capacity(self.order as usize);
                idx.push(u);
                idx.extend_from_slice(&tail);
                acc = acc.add(&f.diff(u).mul(&self.component(&idx)));
            }
            out.set(&tail, acc)?;
        }
        Ok(out)
    }
}

fn enumerate_increasing(n: u8, k: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut cur: Vec<u8> = Vec::new();
    fn rec(n: u8, k: usize, from: u8, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in from..=n {
            cur.push(i);
            rec(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(n, k, 1, &mut cur, &mut out);
    out
}

/// Determinant of [∂_{rows[a]} f_b] by permutation expansion.
fn jacobian_minor(fs: &[Poly], rows: &[u8], n: u8) -> Result<Poly, AlgebraError> {
    let r = fs.len();
    debug_assert_eq!(rows.len(), r);
    let partials: Vec<Vec<Poly>> = fs
        .iter()
        .map(|f| rows.iter().map(|&i| f.diff(i)).collect())
        .collect();
    let mut acc = Poly::zero(n);
    permute(r, &mut |perm, sign| {
        let mut prod = Poly::one(n);
        for (b, &a) in perm.iter().enumerate() {
            prod = prod.mul(&partials[b][a]);
        }
        if sign < 0 {
            prod = prod.neg();
        }
        acc = acc.add(&prod);
    });
    Ok(acc)
}

fn permute(r: usize, visit: &mut impl FnMut(&[usize], i64)) {
    fn heap(
        k: usize,
        items: &mut Vec<usize>,
        sign: &mut i64,
        visit: &mut impl FnMut(&[usize], i64),
    ) {
        if k == 1 {
            visit(items, *sign);
            return;
        }
        for i in 0..k {
            heap(k - 1, items, sign, visit);
            if i < k - 1 {
                if k.is_multiple_of(2) {
                    items.swap(i, k - 1);
                } else {
                    items.swap(0, k - 1);
                }
                *sign = -*sign;
            }
        }
    }
    let mut items: Vec<usize> = (0..r).collect();
    if r == 0 {
        visit(&items, 1);
        return;
    }
    let mut sign = 1i64;
    heap(r, &mut items, &mut sign, visit);
}

/// The Jacobian determinant bracket ∂(f₁,…,f_n)/∂(x₁,…,x_n).
pub fn jacobian_bracket(fs: &[Poly], n: u8) -> Result<Poly, AlgebraError> {
    if fs.len() != n as usize {
        return Err(AlgebraError::Unsupported(format!(
            "the Jacobian bracket on ℝ^{} takes {} arguments, got {}",
            n,
            n,
            fs.len()
        )));
    }
    let rows: Vec<u8> = (1..=n).collect();
    jacobian_minor(fs, &rows, n)
}

/// Residual of the Leibniz rule {gh, rest} − g{h, rest} − h{g, rest}.
pub fn leibniz_check(bracket: &dyn Fn(&[Poly]) -> Poly, g: &Poly, h: &Poly, rest: &[Poly]) -> Poly {
    let mut args: Vec<Poly> = Vec::with_capacity(rest.len() + 1);
    args.push(g.mul(h));
    args.extend_from_slice(rest);
    let full = bracket(&args);
    args[0] = h.clone();
    let with_h = bracket(&args);
    args[0] = g.clone();
    let with_g = bracket(&args);
    full.sub(&g.mul(&with_h)).sub(&h.mul(&with_g))
}

/// Residual of the ternary Filippov–Jacobi identity
/// {g,h,{f₁,f₂,f₃}} − {{g,h,f₁},f₂,f₃} − {f₁,{g,h,f₂},f₃} − {f₁,f₂,{g,h,f₃}}.
pub fn filippov_check(
    bracket: &dyn Fn(&[Poly]) -> Poly,
    g: &Poly,
    h: &Poly,
    f1: &Poly,
    f2: &Poly,
    f3: &Poly,
) -> Poly {
    let inner = bracket(&[f1.clone(), f2.clone(), f3.clone()]);
    let lhs = bracket(&[g.clone(), h.clone(), inner]);
    let t1 = bracket(&[
        bracket(&[g.clone(), h.clone(), f1.clone()]),
        f2.clone(),
        f3.clone(),
    ]);
    let t2 = bracket(&[
        f1.clone(),
        bracket(&[g.clone(), h.clone(), f2.clone()]),
        f3.clone(),
    ]);
    let t3 = bracket(&[
        f1.clone(),
        f2.clone(),
        bracket(&[g.clone(), h.clone(), f3.clone()]),
    ]);
    lhs.sub(&t1).sub(&t2).sub(&t3)
}

/// Nonzero residuals of the two Takhtajan condition families, keyed by the
/// free index tuple that produced them.
#[derive(Clone, Debug, Default)]
pub struct TakhtajanReport {
    pub algebraic_residuals: Vec<(Vec<u8>, Poly)>,
    pub differential_residuals: Vec<(Vec<u8>, Poly)>,
}

impl TakhtajanReport {
    pub fn passed(&self) -> bool {
        self.algebraic_residuals.is_empty() && self.differential_residuals.is_empty()
    }
}

/// Both Takhtajan families over all index tuples; order ≥ 3.
pub fn takhtajan_check(p: &NambuTensor) -> Result<TakhtajanReport, AlgebraError> {
    if p.order() < 3 {
        return Err(AlgebraError::OrderTooSmall {
            min: 3,
            found: p.order(),
        });
    }
    Ok(TakhtajanReport {
        algebraic_residuals: algebraic_condition_residuals(p),
        differential_residuals: differential_condition_residuals(p),
    })
}

/// Σ_k [P^{b…u…b} P^{v a… b_k} + P^{b…v…b} P^{u a… b_k}] over all free
/// tuples (u, v, a₂..a_{r−1}, b₁..b_r); nonzero residuals only.
pub fn algebraic_condition_residuals(p: &NambuTensor) -> Vec<(Vec<u8>, Poly)> {
    let n = p.dimension();
    let r = p.order() as usize;
    let mut out = Vec::new();
    let frees = 2 + (r - 2) + r; // u, v, a₂..a_{r−1}, b₁..b_r
    let mut tuple = vec![1u8; frees];
    loop {
        let (u, v) = (tuple[0], tuple[1]);
        let a = &tuple[2..r]; // r−2 entries
        let bs = &tuple[r..];
        let mut acc = Poly::zero(n);
        for k in 0..r {
            for (x, y) in [(u, v), (v, u)] {
                let mut left = bs.to_vec();
                left[k] = x;
                let mut right = Vec::with_capacity(r);
                right.push(y);
                right.extend_from_slice(a);
                right.push(bs[k]);
                acc = acc.add(&p.component(&left).mul(&p.component(&right)));
            }
        }
        if !acc.is_zero() {
            out.push((tuple.clone(), acc));
        }
        if !advance(&mut tuple, n) {
            break;
        }
    }
    out
}

/// Σ_u [P^{a₁…a_{r−1}u} ∂_u P^{b₁…b_r} − Σ_k P^{b…u…b} ∂_u P^{a… b_k}] over
/// all free tuples (a₁..a_{r−1}, b₁..b_r); defined for order ≥ 2, where at
/// order 2 it reduces to the Jacobi identity.
pub fn differential_condition_residuals(p: &NambuTensor) -> Vec<(Vec<u8>, Poly)> {
    let n = p.dimension();
    let r = p.order() as usize;
    let mut out = Vec::new();
    let mut tuple = vec![1u8; (r - 1) + r];
    loop {
        let a = &tuple[..r - 1];
        let bs = &tuple[r - 1..];
        let mut acc = Poly::zero(n);
        for u in 1..=n {
            let mut first_idx = a.to_vec();
            first_idx.push(u);
            acc = acc.add(&p.component(&first_idx).mul(&p.component(bs).diff(u)));
            for k in 0..r {
                let mut left = bs.to_vec();
                left[k] = u;
                let mut right = a.to_vec();
                right.push(bs[k]);
                acc = acc.sub(&p.component(&left).mul(&p.component(&right).diff(u)));
            }
        }
        if !acc.is_zero() {
            out.push((tuple.clone(), acc));
        }
        if !advance(&mut tuple, n) {
            break;
        }
    }
    out
}

fn advance(tuple: &mut [u8], n: u8) -> bool {
    for slot in tuple.iter_mut().rev() {
        if *slot < n {
            *slot += 1;
            return true;
        }
        *slot = 1;
    }
    false
}

/// Why the even-order bridge declined to build an operator.
#[derive(Debug, Clone)]
pub enum BridgeError {
    OddOrder(u8),
    /// [[P, P]] ≠ 0; the obstruction is returned for diagnostics.
    SchoutenObstruction(Multivector),
}

impl std::fmt::Display for BridgeError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BridgeError::OddOrder(r) => write!(f, "tensor order {r} is odd"),
            BridgeError::SchoutenObstruction(_) => write!(f, "[[P, P]] ≠ 0"),
        }
    }
}

/// The experimental arity-2k generator built by the bridge.
#[derive(Clone, Debug)]
pub struct EvenOrderBridge {
    pub operator: IntegratedOperator,
}

/// Check [[P,P]] = 0 and, if it holds, build the integrated operator whose
/// density generalizes the order-2 expansion: for each increasing tuple, the
/// coefficient polynomial in γ times the alternating sum of one-β placements
/// among the θ-slots, plus the single-∂, all-c, one-b correction term.
///
/// The density is an extrapolation to be tested, not an established formula;
/// every claim about it must go through an explicit nilpotency run.
pub fn even_order_bridge(
    p: &NambuTensor,
    conv: OpeConvention,
) -> Result<EvenOrderBridge, BridgeError> {
    let r = p.order();
    if !r.is_multiple_of(2) {
        return Err(BridgeError::OddOrder(r));
    }
    let mv = p.to_multivector();
    let sq = schouten(&mv, &mv).expect("tensor squares in its own dimension");
    if !sq.is_zero() {
        return Err(BridgeError::SchoutenObstruction(sq));
    }
    Ok(EvenOrderBridge {
        operator: even_order_operator(p, conv),
    })
}

fn even_order_operator(p: &NambuTensor, conv: OpeConvention) -> IntegratedOperator {
    let n = p.dimension();
    let r = p.order() as usize;
    let mut density = State::zero();
    for (idx, poly) in p.components() {
        let coeff = poly.to_gamma_state();
        // alternating β placements: Σ_t (−1)^t c…β_{i_t}…c (t 1-based)
        for t in 0..r {
            let mut raw: Vec<Generator> = Vec::with_capacity(r);
            for (slot, &i) in idx.iter().enumerate() {
                raw.push(if slot == t {
                    Generator::new(Kind::Beta, i, 0)
                } else {
                    Generator::new(Kind::C, i, 0)
                });
            }
            let sign = if (t + 1) % 2 == 0 { 1 } else { -1 };
            density = density.add(&coeff.mul(&State::from_raw(&raw, HbarPoly::from_int(sign))));
        }
        // Σ_m ∂_m P^I(γ) c_{i₁}…c_{i_r} b^m
        for m in 1..=n {
            let d = poly.diff(m);
            if d.is_zero() {
                continue;
            }
            let mut raw: Vec<Generator> =
                idx.iter().map(|&i| Generator::new(Kind::C, i, 0)).collect();
            raw.push(Generator::new(Kind::B, m, 0));
            density = density.add(
                &d.to_gamma_state()
                    .mul(&State::from_raw(&raw, HbarPoly::one())),
            );
        }
    }
    IntegratedOperator::new(density, conv, n)
}

/// Order-2 consistency probe: the bridge density next to build_generator's.
pub fn bridge_matches_order_two(
    p: &PoissonTensor,
    conv: OpeConvention,
) -> (State, QuantumGenerator) {
    let nambu = NambuTensor::from_poisson(p);
    let op = even_order_operator(&nambu, conv);
    (op.density, build_generator(p, conv))
}

/// Random polynomial with integer coefficients in [−bound, bound] and total
/// degree ≤ max_degree; used by the seeded identity trials.
pub fn random_poly(rng: &mut impl Rng, n: u8, max_degree: u32, bound: i64) -> Poly {
    let mut p = Poly::zero(n);
    for e in all_monomials_up_to(n, max_degree) {
        let c = rng.gen_range(-bound..=bound);
        if c != 0 {
            p.add_term(e, crate::coeff::rat_int(c));
        }
    }
    p
}

fn all_monomials_up_to(n: u8, max_degree: u32) -> Vec<Vec<u16>> {
    let mut out = Vec::new();
    let mut cur = vec![0u16; n as usize];
    fn rec(pos: usize, left: u32, cur: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        if pos == cur.len() {
            out.push(cur.clone());
            return;
        }
        for d in 0..=left {
            cur[pos] = d as u16;
            rec(pos + 1, left - d, cur, out);
        }
        cur[pos] = 0;
    }
    rec(0, max_degree, &mut cur, &mut out);
    out
}
