//! Dense matrices over a `Coeffs` field; sizes here stay in the thousands.

use crate::field::Coeffs;

#[derive(Clone, Debug, PartialEq)]
pub struct DMat<C: Coeffs> {
    pub nrows: usize,
    pub ncols: usize,
    pub data: Vec<C::El>,
}

impl<C: Coeffs> DMat<C> {
    pub fn zero(f: &C, nrows: usize, ncols: usize) -> Self {
        DMat {
            nrows,
            ncols,
            data: vec![f.zero(); nrows * ncols],
        }
    }

    pub fn identity(f: &C, n: usize) -> Self {
        let mut m = Self::zero(f, n, n);
        for i in 0..n {
            m.data[i * n + i] = f.one();
        }
        m
    }

    pub fn from_rows(f: &C, rows: Vec<Vec<C::El>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(nrows * ncols);
        for r in rows {
            assert_eq!(r.len(), ncols);
            data.extend(r);
        }
        let _ = f;
        DMat { nrows, ncols, data }
    }

    pub fn at(&self, i: usize, j: usize) -> &C::El {
        &self.data[i * self.ncols + j]
    }
    pub fn set(&mut self, i: usize, j: usize, v: C::El) {
        self.data[i * self.ncols + j] = v;
    }
    pub fn row(&self, i: usize) -> &[C::El] {
        &self.data[i * self.ncols..(i + 1) * self.ncols]
    }

    pub fn mul(&self, f: &C, other: &Self) -> Self {
        assert_eq!(self.ncols, other.nrows);
        let mut out = Self::zero(f, self.nrows, other.ncols);
        for i in 0..self.nrows {
            for k in 0..self.ncols {
                let a = self.at(i, k).clone();
                if f.is_zero(&a) {
                    continue;
                }
                for j in 0..other.ncols {
                    let v = f.add(out.at(i, j), &f.mul(&a, other.at(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn apply(&self, f: &C, v: &[C::El]) -> Vec<C::El> {
        assert_eq!(self.ncols, v.len());
        (0..self.nrows)
            .map(|i| {
                let mut acc = f.zero();
                for j in 0..self.ncols {
                    acc = f.add(&acc, &f.mul(self.at(i, j), &v[j]));
                }
                acc
            })
            .collect()
    }

    pub fn sub(&self, f: &C, other: &Self) -> Self {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols));
        DMat {
            nrows: self.nrows,
            ncols: self.ncols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f.sub(a, b))
                .collect(),
        }
    }

    pub fn is_zero(&self, f: &C) -> bool {
        self.data.iter().all(|x| f.is_zero(x))
    }

    pub fn transpose(&self, _f: &C) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.ncols {
            for i in 0..self.nrows {
                data.push(self.at(i, j).clone());
            }
        }
        DMat {
            nrows: self.ncols,
            ncols: self.nrows,
            data,
        }
    }

    /// vertical stack: self on top of other
    pub fn stack(&self, f: &C, other: &Self) -> Self {
        assert_eq!(self.ncols, other.ncols);
        let _ = f;
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        DMat {
            nrows: self.nrows + other.nrows,
            ncols: self.ncols,
            data,
        }
    }

    /// in-place reduced row echelon form; returns pivot columns
    pub fn rref(&mut self, f: &C) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.ncols {
            if r == self.nrows {
                break;
            }
            let Some(pr) = (r..self.nrows).find(|&i| !f.is_zero(self.at(i, c))) else {
                continue;
            };
            if pr != r {
                for j in 0..self.ncols {
                    self.data.swap(r * self.ncols + j, pr * self.ncols + j);
                }
            }
            let inv = f.inv(self.at(r, c));
            for j in c..self.ncols {
                let v = f.mul(self.at(r, j), &inv);
                self.set(r, j, v);
            }
            for i in 0..self.nrows {
                if i == r || f.is_zero(self.at(i, c)) {
                    continue;
                }
                let factor = self.at(i, c).clone();
                for j in c..self.ncols {
                    let v = f.sub(self.at(i, j), &f.mul(&factor, self.at(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, f: &C) -> usize {
        let mut m = self.clone();
        m.rref(f).len()
    }

    /// canonical basis (reduced echelon, one vector per free column) of
    /// {v : M v = 0}
    pub fn kernel_basis(&self, f: &C) -> Vec<Vec<C::El>> {
        let mut r = self.clone();
        let pivots = r.rref(f);
        let n = self.ncols;
        let mut is_pivot = vec![false; n];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut out = Vec::new();
        for free in 0..n {
            if is_pivot[free] {
                continue;
            }
            let mut v = vec![f.zero(); n];
            v[free] = f.one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(r.at(row, free));
            }
            out.push(v);
        }
        out
    }
}
