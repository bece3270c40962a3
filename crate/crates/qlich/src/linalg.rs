//! Exact linear algebra over ℚ for the cohomology cells: sparse Gaussian
//! elimination for spans and kernels, plus a small dense solver.
//!
//! Differential images of basis words have few terms, so all rank, span and
//! kernel computations run on sorted sparse vectors; everything is
//! deterministic.

use crate::coeff::Rat;
use num::{One, Signed, Zero};

/// Sorted (index, nonzero coefficient) pairs.
pub type SparseVec = Vec<(usize, Rat)>;

pub fn sparse_from_dense(v: &[Rat]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

pub fn dense_from_sparse(v: &SparseVec, dim: usize) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); dim];
    for (i, c) in v {
        out[*i] = c.clone();
    }
    out
}

/// target -= factor · row, both sorted sparse.
fn axpy_sub(target: &SparseVec, factor: &Rat, row: &SparseVec) -> SparseVec {
    let mut out = SparseVec::with_capacity(target.len() + row.len());
    let (mut i, mut j) = (0usize, 0usize);
    while i < target.len() || j < row.len() {
        match (target.get(i), row.get(j)) {
            (Some((ti, tc)), Some((rj, rc))) => {
                if ti < rj {
                    out.push((*ti, tc.clone()));
                    i += 1;
                } else if rj < ti {
                    let v = -(factor * rc);
                    if !v.is_zero() {
                        out.push((*rj, v));
                    }
                    j += 1;
                } else {
                    let v = tc - &(factor * rc);
                    if !v.is_zero() {
                        out.push((*ti, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
            (Some((ti, tc)), None) => {
                out.push((*ti, tc.clone()));
                i += 1;
            }
            (None, Some((rj, rc))) => {
                let v = -(factor * rc);
                if !v.is_zero() {
                    out.push((*rj, v));
                }
                j += 1;
            }
            (None, None) => break,
        }
    }
    out
}

fn scale_sparse(v: &SparseVec, factor: &Rat) -> SparseVec {
    v.iter().map(|(i, c)| (*i, c * factor)).collect()
}

/// Incremental row-space reducer over sparse vectors: maintains a forward
/// echelon basis of the span of everything inserted so far. Each stored row
/// is normalized so its leading entry (the pivot) is 1, and row supports
/// start at their pivots, so one ascending sweep fully reduces a candidate.
#[derive(Clone, Debug, Default)]
pub struct SpanReducer {
    rows: std::collections::BTreeMap<usize, SparseVec>,
    dim: usize,
}

impl SpanReducer {
    pub fn new(dim: usize) -> Self {
        SpanReducer {
            rows: Default::default(),
            dim,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn reduce_sparse(&self, mut v: SparseVec) -> SparseVec {
        let mut cursor = 0usize;
        loop {
            let Some(&(idx, _)) = v.get(cursor) else {
                return v;
            };
            match self.rows.get(&idx) {
                Some(row) => {
                    let factor = v[cursor].1.clone();
                    v = axpy_sub(&v, &factor, row);
                    // entries before the cursor are untouched (row starts at idx)
                }
                None => cursor += 1,
            }
        }
    }

    /// Insert a vector; returns the normalized reduced row when it enlarged
    /// the span.
    pub fn insert_sparse(&mut self, v: SparseVec) -> Option<SparseVec> {
        let reduced = self.reduce_sparse(v);
        let (pivot, lead) = reduced.first()?.clone();
        let inv = Rat::one() / lead;
        let normalized = scale_sparse(&reduced, &inv);
        self.rows.insert(pivot, normalized.clone());
        Some(normalized)
    }

    pub fn contains_sparse(&self, v: SparseVec) -> bool {
        self.reduce_sparse(v).is_empty()
    }

    pub fn reduce(&self, v: Vec<Rat>) -> Vec<Rat> {
        let dim = v.len().max(self.dim);
        dense_from_sparse(&self.reduce_sparse(sparse_from_dense(&v)), dim)
    }

    pub fn insert(&mut self, v: Vec<Rat>) -> Option<Vec<Rat>> {
        let dim = v.len().max(self.dim);
        self.insert_sparse(sparse_from_dense(&v))
            .map(|r| dense_from_sparse(&r, dim))
    }

    pub fn contains(&self, v: Vec<Rat>) -> bool {
        self.contains_sparse(sparse_from_dense(&v))
    }
}

/// Kernel of the linear map whose columns are given sparsely: elimination
/// with history, returning one dense coefficient vector per kernel basis
/// element, in deterministic column order.
pub fn sparse_kernel(columns: &[SparseVec]) -> Vec<Vec<Rat>> {
    // rows: pivot -> (reduced column, history over original columns)
    let mut rows: std::collections::BTreeMap<usize, (SparseVec, SparseVec)> = Default::default();
    let mut kernel: Vec<Vec<Rat>> = Vec::new();
    for (j, col) in columns.iter().enumerate() {
        let mut v = col.clone();
        let mut history: SparseVec = vec![(j, Rat::one())];
        let mut cursor = 0usize;
        while let Some(&(idx, _)) = v.get(cursor) {
            match rows.get(&idx) {
                Some((row, row_hist)) => {
                    let factor = v[cursor].1.clone();
                    v = axpy_sub(&v, &factor, row);
                    history = axpy_sub(&history, &factor, row_hist);
                }
                None => cursor += 1,
            }
        }
        if v.is_empty() {
            kernel.push(dense_from_sparse(&history, columns.len()));
        } else {
            let (pivot, lead) = v[0].clone();
            let inv = Rat::one() / lead;
            rows.insert(
                pivot,
                (scale_sparse(&v, &inv), scale_sparse(&history, &inv)),
            );
        }
    }
    kernel
}

/// Rank of a sparsely given column family.
pub fn sparse_rank(columns: &[SparseVec]) -> usize {
    let mut span = SpanReducer::new(0);
    let mut rank = 0usize;
    for col in columns {
        if span.insert_sparse(col.clone()).is_some() {
            rank += 1;
        }
    }
    rank
}

/// A dense rows×cols rational matrix; used for small solves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Rat>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn get(&self, r: usize, c: usize) -> &Rat {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        self.data[r * self.cols + c] = v;
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0usize;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let mut pivot_row = None;
            for r in row..self.rows {
                if !self.get(r, col).is_zero() {
                    pivot_row = Some(r);
                    break;
                }
            }
            let Some(p) = pivot_row else { continue };
            self.swap_rows(row, p);
            let inv = self.get(row, col).clone();
            for c in col..self.cols {
                let v = self.get(row, c) / &inv;
                self.set(row, c, v);
            }
            for r in 0..self.rows {
                if r != row && !self.get(r, col).is_zero() {
                    let factor = self.get(r, col).clone();
                    for c in col..self.cols {
                        let v = self.get(r, c) - &factor * self.get(row, c);
                        self.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right kernel (columns = unknowns), deterministic order.
    pub fn kernel_basis(&self) -> Vec<Vec<Rat>> {
        let columns: Vec<SparseVec> = (0..self.cols)
            .map(|c| {
                (0..self.rows)
                    .filter(|&r| !self.get(r, c).is_zero())
                    .map(|r| (r, self.get(r, c).clone()))
                    .collect()
            })
            .collect();
        sparse_kernel(&columns)
    }

    /// Treat the last column as a right-hand side and solve; free unknowns are
    /// set to zero. Returns `None` when the system is inconsistent.
    pub fn solve_augmented(&self) -> Option<Vec<Rat>> {
        let unknowns = self.cols - 1;
        let mut m = self.clone();
        let pivots = m.rref();
        if pivots.contains(&unknowns) {
            return None; // pivot in the rhs column
        }
        let mut x = vec![Rat::zero(); unknowns];
        for (prow, &pcol) in pivots.iter().enumerate() {
            x[pcol] = m.get(prow, unknowns).clone();
        }
        Some(x)
    }
}

/// Scale a rational vector to a primitive integer vector with positive
/// leading entry; used to present cohomology representatives cleanly.
pub fn normalize_primitive(v: &[Rat]) -> Vec<Rat> {
    use num::BigInt;
    let mut lcm = BigInt::one();
    for x in v {
        if !x.is_zero() {
            lcm = num::integer::lcm(lcm, x.denom().clone());
        }
    }
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * Rat::from(lcm.clone())).to_integer())
        .collect();
    let mut gcd = BigInt::zero();
    for x in &ints {
        gcd = num::integer::gcd(gcd, x.clone());
    }
    if gcd.is_zero() {
        return v.to_vec();
    }
    let mut out: Vec<Rat> = ints.into_iter().map(|x| Rat::from(x / &gcd)).collect();
    if let Some(first) = out.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in out.iter_mut() {
                *x = -x.clone();
            }
        }
    }
    out
}
