//! Sparse rows over a `Coeffs` field, for kernel computations whose column
//! count (edge functions on a window) dwarfs the constraint count.
//!
//! A `SparseVec` keeps (index, value) pairs sorted by index with no zero
//! values stored.

use crate::field::Coeffs;
use std::collections::BTreeMap;

pub type SparseVec<T> = Vec<(usize, T)>;

pub fn sv_normalize<C: Coeffs>(f: &C, mut v: SparseVec<C::El>) -> SparseVec<C::El> {
    v.sort_by_key(|e| e.0);
    let mut out: SparseVec<C::El> = Vec::with_capacity(v.len());
    for (i, x) in v {
        match out.last_mut() {
            Some((j, acc)) if *j == i => {
                *acc = f.add(acc, &x);
            }
            _ => out.push((i, x)),
        }
    }
    out.retain(|(_, x)| !f.is_zero(x));
    out
}

/// a + c*b
pub fn sv_axpy<C: Coeffs>(
    f: &C,
    a: &SparseVec<C::El>,
    c: &C::El,
    b: &SparseVec<C::El>,
) -> SparseVec<C::El> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            let v = f.mul(c, &b[j].1);
            if !f.is_zero(&v) {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = f.add(&a[i].1, &f.mul(c, &b[j].1));
            if !f.is_zero(&v) {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn sv_scale<C: Coeffs>(f: &C, c: &C::El, v: &SparseVec<C::El>) -> SparseVec<C::El> {
    if f.is_zero(c) {
        return Vec::new();
    }
    v.iter().map(|(i, x)| (*i, f.mul(c, x))).collect()
}

pub fn sv_get<'a, C: Coeffs>(v: &'a SparseVec<C::El>, idx: usize) -> Option<&'a C::El> {
    v.binary_search_by_key(&idx, |e| e.0).ok().map(|k| &v[k].1)
}

pub fn sv_dot<C: Coeffs>(f: &C, a: &SparseVec<C::El>, b: &SparseVec<C::El>) -> C::El {
    let mut acc = f.zero();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i].0 < b[j].0 {
            i += 1;
        } else if b[j].0 < a[i].0 {
            j += 1;
        } else {
            acc = f.add(&acc, &f.mul(&a[i].1, &b[j].1));
            i += 1;
            j += 1;
        }
    }
    acc
}

#[derive(Clone, Debug)]
pub struct SpMat<C: Coeffs> {
    pub nrows: usize,
    pub ncols: usize,
    pub rows: Vec<SparseVec<C::El>>,
}

impl<C: Coeffs> SpMat<C> {
    pub fn new(ncols: usize) -> Self {
        SpMat {
            nrows: 0,
            ncols,
            rows: Vec::new(),
        }
    }

    pub fn push_row(&mut self, f: &C, row: SparseVec<C::El>) {
        debug_assert!(row.iter().all(|(i, _)| *i < self.ncols));
        self.rows.push(sv_normalize(f, row));
        self.nrows += 1;
    }

    pub fn apply_sparse(&self, f: &C, v: &SparseVec<C::El>) -> SparseVec<C::El> {
        let mut out = Vec::new();
        for (r, row) in self.rows.iter().enumerate() {
            let d = sv_dot(f, row, v);
            if !f.is_zero(&d) {
                out.push((r, d));
            }
        }
        out
    }

    pub fn vanishes_on(&self, f: &C, v: &SparseVec<C::El>) -> bool {
        self.rows.iter().all(|row| f.is_zero(&sv_dot(f, row, v)))
    }
}

/// Reduced echelon of the row space, built incrementally. Pivot rows are
/// kept fully back-reduced, so the final row set is canonical for the
/// row space whatever the insertion order.
pub struct SparseRref<C: Coeffs> {
    pub ncols: usize,
    /// pivot column -> reduced row with leading 1 there
    pub pivots: BTreeMap<usize, SparseVec<C::El>>,
}

impl<C: Coeffs> SparseRref<C> {
    pub fn new(ncols: usize) -> Self {
        SparseRref {
            ncols,
            pivots: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// reduce v against the current pivots (no insertion)
    pub fn reduce(&self, f: &C, v: SparseVec<C::El>) -> SparseVec<C::El> {
        let mut v = v;
        loop {
            let Some(&(col, ref c)) = v.first() else {
                return v;
            };
            let c = c.clone();
            match self.pivots.get(&col) {
                Some(row) => {
                    v = sv_axpy(f, &v, &f.neg(&c), row);
                }
                None => {
                    // leading column has no pivot; later columns may still reduce
                    return self.reduce_tail(f, v);
                }
            }
        }
    }

    fn reduce_tail(&self, f: &C, v: SparseVec<C::El>) -> SparseVec<C::El> {
        let mut v = v;
        let mut k = 1;
        while k < v.len() {
            let (col, c) = v[k].clone();
            if let Some(row) = self.pivots.get(&col) {
                v = sv_axpy(f, &v, &f.neg(&c), row);
                // position k now holds a different column; re-scan from k
            } else {
                k += 1;
            }
        }
        v
    }

    /// insert a row; returns true if the rank grew
    pub fn insert(&mut self, f: &C, v: SparseVec<C::El>) -> bool {
        let v = self.reduce(f, sv_normalize(f, v));
        let Some((col, c)) = v.first().cloned() else {
            return false;
        };
        let inv = f.inv(&c);
        let v = sv_scale(f, &inv, &v);
        // back-reduce existing pivot rows
        let cols: Vec<usize> = self.pivots.keys().cloned().collect();
        for pc in cols {
            let row = self.pivots.get(&pc).unwrap();
            if let Some(coef) = sv_get::<C>(row, col) {
                let coef = coef.clone();
                let newrow = sv_axpy(f, row, &f.neg(&coef), &v);
                self.pivots.insert(pc, newrow);
            }
        }
        self.pivots.insert(col, v);
        true
    }

    pub fn insert_all(&mut self, f: &C, m: &SpMat<C>) {
        for row in &m.rows {
            self.insert(f, row.clone());
        }
    }

    /// canonical kernel basis of {v : M v = 0} where M is the matrix whose
    /// row space this echelon represents, one vector per free column
    pub fn kernel_basis(&self, f: &C) -> Vec<SparseVec<C::El>> {
        let mut out = Vec::new();
        for free in 0..self.ncols {
            if self.pivots.contains_key(&free) {
                continue;
            }
            let mut v: SparseVec<C::El> = vec![(free, f.one())];
            for (&pc, row) in &self.pivots {
                if let Some(c) = sv_get::<C>(row, free) {
                    v.push((pc, f.neg(c)));
                }
            }
            out.push(sv_normalize(f, v));
        }
        out
    }

    pub fn kernel_dim(&self) -> usize {
        self.ncols - self.pivots.len()
    }
}
