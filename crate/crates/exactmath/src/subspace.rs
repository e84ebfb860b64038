//! Row-echelon linear algebra over a `FiniteField` and the canonical
//! `Subspace` representation (unique reduced row-echelon basis).

use crate::error::{MathError, Result};
use crate::fq::{FiniteField, Fq, FQ_ONE, FQ_ZERO};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FqMat {
    pub nrows: usize,
    pub ncols: usize,
    pub data: Vec<Fq>,
}

impl FqMat {
    pub fn zero(nrows: usize, ncols: usize) -> FqMat {
        FqMat {
            nrows,
            ncols,
            data: vec![FQ_ZERO; nrows * ncols],
        }
    }

    pub fn identity(n: usize) -> FqMat {
        let mut m = FqMat::zero(n, n);
        for i in 0..n {
            m.data[i * n + i] = FQ_ONE;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Fq>>) -> FqMat {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(nrows * ncols);
        for r in rows {
            assert_eq!(r.len(), ncols);
            data.extend(r);
        }
        FqMat { nrows, ncols, data }
    }

    pub fn at(&self, i: usize, j: usize) -> Fq {
        self.data[i * self.ncols + j]
    }
    pub fn set(&mut self, i: usize, j: usize, v: Fq) {
        self.data[i * self.ncols + j] = v;
    }
    pub fn row(&self, i: usize) -> &[Fq] {
        &self.data[i * self.ncols..(i + 1) * self.ncols]
    }

    pub fn mul(&self, f: &FiniteField, other: &FqMat) -> FqMat {
        assert_eq!(self.ncols, other.nrows);
        let mut out = FqMat::zero(self.nrows, other.ncols);
        for i in 0..self.nrows {
            for k in 0..self.ncols {
                let a = self.at(i, k);
                if a == FQ_ZERO {
                    continue;
                }
                for j in 0..other.ncols {
                    let cur = out.at(i, j);
                    out.set(i, j, f.add(cur, f.mul(a, other.at(k, j))));
                }
            }
        }
        out
    }

    pub fn apply(&self, f: &FiniteField, v: &[Fq]) -> Vec<Fq> {
        assert_eq!(self.ncols, v.len());
        (0..self.nrows)
            .map(|i| {
                let mut acc = FQ_ZERO;
                for j in 0..self.ncols {
                    acc = f.add(acc, f.mul(self.at(i, j), v[j]));
                }
                acc
            })
            .collect()
    }

    /// entrywise Frobenius, the coordinate twist used for semilinear maps
    pub fn frobenius(&self, f: &FiniteField) -> FqMat {
        FqMat {
            nrows: self.nrows,
            ncols: self.ncols,
            data: self.data.iter().map(|&x| f.frobenius(x)).collect(),
        }
    }

    /// in-place reduced row echelon form; returns pivot columns
    pub fn rref(&mut self, f: &FiniteField) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.ncols {
            if r == self.nrows {
                break;
            }
            let Some(pr) = (r..self.nrows).find(|&i| self.at(i, c) != FQ_ZERO) else {
                continue;
            };
            self.data.swap_chunks(r, pr, self.ncols);
            let inv = f.inv(self.at(r, c)).unwrap();
            for j in c..self.ncols {
                self.set(r, j, f.mul(self.at(r, j), inv));
            }
            for i in 0..self.nrows {
                if i == r {
                    continue;
                }
                let factor = self.at(i, c);
                if factor == FQ_ZERO {
                    continue;
                }
                for j in c..self.ncols {
                    let v = f.sub(self.at(i, j), f.mul(factor, self.at(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, f: &FiniteField) -> usize {
        let mut m = self.clone();
        m.rref(f).len()
    }
}

trait SwapChunks {
    fn swap_chunks(&mut self, a: usize, b: usize, w: usize);
}
impl SwapChunks for Vec<Fq> {
    fn swap_chunks(&mut self, a: usize, b: usize, w: usize) {
        if a == b {
            return;
        }
        for j in 0..w {
            self.swap(a * w + j, b * w + j);
        }
    }
}

/// Canonical subspace of F_q^n: rows form the unique reduced row-echelon basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    pub ambient: usize,
    pub basis: FqMat,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: FqMat::zero(0, ambient),
        }
    }

    pub fn full(ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: FqMat::identity(ambient),
        }
    }

    pub fn from_generators(f: &FiniteField, ambient: usize, gens: &[Vec<Fq>]) -> Subspace {
        let mut m = FqMat::from_rows(gens.to_vec());
        if gens.is_empty() {
            return Subspace::zero(ambient);
        }
        assert_eq!(m.ncols, ambient);
        let pivots = m.rref(f);
        let rank = pivots.len();
        m.data.truncate(rank * ambient);
        m.nrows = rank;
        Subspace { ambient, basis: m }
    }

    pub fn dim(&self) -> usize {
        self.basis.nrows
    }

    pub fn contains_vec(&self, f: &FiniteField, v: &[Fq]) -> bool {
        assert_eq!(v.len(), self.ambient);
        let mut v = v.to_vec();
        for i in 0..self.basis.nrows {
            let pc = (0..self.ambient)
                .find(|&j| self.basis.at(i, j) != FQ_ZERO)
                .unwrap();
            let c = v[pc];
            if c != FQ_ZERO {
                for j in 0..self.ambient {
                    v[j] = f.sub(v[j], f.mul(c, self.basis.at(i, j)));
                }
            }
        }
        v.iter().all(|&x| x == FQ_ZERO)
    }

    pub fn contains(&self, f: &FiniteField, other: &Subspace) -> bool {
        (0..other.basis.nrows).all(|i| self.contains_vec(f, other.basis.row(i)))
    }

    pub fn sum(&self, f: &FiniteField, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let mut gens: Vec<Vec<Fq>> = Vec::new();
        for i in 0..self.basis.nrows {
            gens.push(self.basis.row(i).to_vec());
        }
        for i in 0..other.basis.nrows {
            gens.push(other.basis.row(i).to_vec());
        }
        Subspace::from_generators(f, self.ambient, &gens)
    }

    /// orthogonal complement for the standard dot product; an auxiliary
    /// involution used to route intersections through sums
    pub fn perp(&self, f: &FiniteField) -> Subspace {
        let m = FqMat {
            nrows: self.basis.nrows,
            ncols: self.ambient,
            data: self.basis.data.clone(),
        };
        kernel(f, &m)
    }

    pub fn intersect(&self, f: &FiniteField, other: &Subspace) -> Subspace {
        self.perp(f).sum(f, &other.perp(f)).perp(f)
    }

    /// image under v -> M v^sigma-style maps is assembled by callers; this is
    /// the plain image of the basis under a matrix acting on coordinates
    pub fn apply_matrix(&self, f: &FiniteField, m: &FqMat) -> Subspace {
        let gens: Vec<Vec<Fq>> = (0..self.basis.nrows)
            .map(|i| m.apply(f, self.basis.row(i)))
            .collect();
        Subspace::from_generators(f, m.nrows, &gens)
    }

    /// coordinatewise Frobenius twist of the subspace
    pub fn frobenius(&self, f: &FiniteField) -> Subspace {
        let gens: Vec<Vec<Fq>> = (0..self.basis.nrows)
            .map(|i| self.basis.row(i).iter().map(|&x| f.frobenius(x)).collect())
            .collect();
        Subspace::from_generators(f, self.ambient, &gens)
    }
}

/// Canonical basis of {v : M v = 0}, v a column vector.
pub fn kernel(f: &FiniteField, m: &FqMat) -> Subspace {
    let mut r = m.clone();
    let pivots = r.rref(f);
    let n = m.ncols;
    let piv_set: Vec<Option<usize>> = {
        let mut v = vec![None; n];
        for (row, &c) in pivots.iter().enumerate() {
            v[c] = Some(row);
        }
        v
    };
    let mut gens = Vec::new();
    for free in 0..n {
        if piv_set[free].is_some() {
            continue;
        }
        let mut v = vec![FQ_ZERO; n];
        v[free] = FQ_ONE;
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = f.neg(r.at(row, free));
        }
        gens.push(v);
    }
    Subspace::from_generators(f, n, &gens)
}

/// Solve M x = b (column conventions); returns one solution if consistent.
pub fn solve(f: &FiniteField, m: &FqMat, b: &[Fq]) -> Result<Vec<Fq>> {
    assert_eq!(m.nrows, b.len());
    let mut aug = FqMat::zero(m.nrows, m.ncols + 1);
    for i in 0..m.nrows {
        for j in 0..m.ncols {
            aug.set(i, j, m.at(i, j));
        }
        aug.set(i, m.ncols, b[i]);
    }
    let pivots = aug.rref(f);
    if pivots.contains(&m.ncols) {
        return Err(MathError::Shape("inconsistent system".into()));
    }
    let mut x = vec![FQ_ZERO; m.ncols];
    for (row, &c) in pivots.iter().enumerate() {
        x[c] = aug.at(row, m.ncols);
    }
    Ok(x)
}
