use dieudonne::WittDieudonne;
use exactmath::lattice::WRow;
use exactmath::{WittElem, WittLattice, WittRing};

use crate::polygon::NewtonPolygon;
use crate::{NewtonError, Result};

pub type WMat = Vec<WRow>;

/// basis label e_{summand,pos} of a rank-2n module split in two summands
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Label {
    pub summand: u8,
    pub pos: usize,
}

impl Label {
    pub fn from_index(n: usize, idx: usize) -> Label {
        if idx < n {
            Label {
                summand: 1,
                pos: idx + 1,
            }
        } else {
            Label {
                summand: 2,
                pos: idx - n + 1,
            }
        }
    }

    pub fn index(&self, n: usize) -> usize {
        match self.summand {
            1 => self.pos - 1,
            _ => n + self.pos - 1,
        }
    }
}

impl std::fmt::Display for Label {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "e_{{{},{}}}", self.summand, self.pos)
    }
}

/// sigma^twist-linear map sending e_j to p^{vals[j]} e_{perm[j]}.
///
/// Valuations stay <= 1 so that p F^{-1} is integral; negative valuations are
/// allowed (the map then only acts on the ambient isocrystal, not on the
/// standard lattice).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialIsocrystal {
    n: usize,
    perm: Vec<usize>,
    vals: Vec<i64>,
    twist: u32,
}

impl MonomialIsocrystal {
    pub fn new(n: usize, perm: Vec<usize>, vals: Vec<i64>, twist: u32) -> Result<Self> {
        if n < 1 {
            return Err(NewtonError::RankRange);
        }
        let size = 2 * n;
        if perm.len() != size || vals.len() != size {
            return Err(NewtonError::Shape);
        }
        let mut seen = vec![false; size];
        for &t in &perm {
            if t >= size || seen[t] {
                return Err(NewtonError::Shape);
            }
            seen[t] = true;
        }
        if vals.iter().any(|&v| v > 1) {
            return Err(NewtonError::NonIntegralDual);
        }
        Ok(MonomialIsocrystal {
            n,
            perm,
            vals,
            twist: twist % 2,
        })
    }

    /// monomial lift of the reduced module labelled (a, b): entries 1 where
    /// the reduced table is nonzero and p where it vanishes, rerouted so that
    /// the map stays bijective on the isocrystal
    pub fn canonical_lift(n: usize, a: usize, b: usize) -> Result<Self> {
        if n < 2 {
            return Err(NewtonError::RankRange);
        }
        if a < 1 || a > n || b < 1 || b > n {
            return Err(NewtonError::ParamRange);
        }
        let size = 2 * n;
        let mut perm = vec![0usize; size];
        let mut vals = vec![0i64; size];
        let e1 = |i: usize| i - 1;
        let e2 = |i: usize| n + i - 1;
        for i in 1..=n {
            let (tgt, v) = if i <= a - 1 {
                (e2(i), 0)
            } else if i == a {
                (e2(n), 1)
            } else {
                (e2(i - 1), 0)
            };
            perm[e1(i)] = tgt;
            vals[e1(i)] = v;
        }
        for i in 1..=n {
            let (tgt, v) = if i <= b.saturating_sub(1) {
                (e1(i + 1), 1)
            } else if i == b {
                (e1(1), 0)
            } else {
                (e1(i), 1)
            };
            perm[e2(i)] = tgt;
            vals[e2(i)] = v;
        }
        MonomialIsocrystal::new(n, perm, vals, 1)
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn size(&self) -> usize {
        2 * self.n
    }
    pub fn twist(&self) -> u32 {
        self.twist
    }
    pub fn perm(&self) -> &[usize] {
        &self.perm
    }
    pub fn vals(&self) -> &[i64] {
        &self.vals
    }
    pub fn label(&self, idx: usize) -> Label {
        Label::from_index(self.n, idx)
    }

    /// image of the basis vector e_j as (target index, valuation)
    pub fn image(&self, j: usize) -> (usize, i64) {
        (self.perm[j], self.vals[j])
    }

    /// p F^{-1}; integral precisely because valuations are <= 1
    pub fn dual(&self) -> Result<Self> {
        if self.vals.iter().any(|&v| v < 0) {
            return Err(NewtonError::NonIntegral);
        }
        let size = self.size();
        let mut perm = vec![0usize; size];
        let mut vals = vec![0i64; size];
        for j in 0..size {
            perm[self.perm[j]] = j;
            vals[self.perm[j]] = 1 - self.vals[j];
        }
        MonomialIsocrystal::new(self.n, perm, vals, self.twist)
    }

    /// cycles of the underlying permutation, each starting at its least index
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let size = self.size();
        let mut seen = vec![false; size];
        let mut out = Vec::new();
        for start in 0..size {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                cycle.push(j);
                j = self.perm[j];
            }
            out.push(cycle);
        }
        out
    }

    /// Newton polygon read off cycle by cycle: a cycle of length L and total
    /// valuation S is isoclinic of slope S/L with multiplicity L. Valuations
    /// of the coefficients are twist-invariant, so this is exact.
    pub fn exact_slopes(&self) -> NewtonPolygon {
        let pairs: Vec<(num_rational::Ratio<i64>, usize)> = self
            .cycles()
            .into_iter()
            .map(|c| {
                let s: i64 = c.iter().map(|&j| self.vals[j]).sum();
                (
                    num_rational::Ratio::new(s, c.len() as i64),
                    c.len(),
                )
            })
            .collect();
        NewtonPolygon::new(pairs).expect("cycle decomposition spans all labels")
    }

    /// matrix of F over the truncated Witt ring, columns indexed by sources
    pub fn f_matrix(&self, ring: &WittRing) -> Result<WMat> {
        if self.vals.iter().any(|&v| v < 0) {
            return Err(NewtonError::NonIntegral);
        }
        let size = self.size();
        let mut mat = vec![vec![ring.zero(); size]; size];
        for j in 0..size {
            mat[self.perm[j]][j] = WittElem {
                a0: ring.p_pow(self.vals[j] as u32),
                a1: 0,
            };
        }
        Ok(mat)
    }

    pub fn v_matrix(&self, ring: &WittRing) -> Result<WMat> {
        self.dual()?.f_matrix(ring)
    }

    /// block decomposition as a Dieudonne lift; requires the permutation to
    /// swap the two summands
    pub fn to_witt_dieudonne(&self, ring: &WittRing) -> Result<WittDieudonne> {
        if self.vals.iter().any(|&v| v < 0) {
            return Err(NewtonError::NonIntegral);
        }
        let n = self.n;
        let dual = self.dual()?;
        let zero = || vec![vec![ring.zero(); n]; n];
        let (mut f1, mut f2, mut v1, mut v2) = (zero(), zero(), zero(), zero());
        for j in 0..2 * n {
            let pe = |v: i64| WittElem {
                a0: ring.p_pow(v as u32),
                a1: 0,
            };
            let (ft, fv) = self.image(j);
            let (vt, vv) = dual.image(j);
            if j < n {
                if ft < n || vt < n {
                    return Err(NewtonError::Shape);
                }
                f1[ft - n][j] = pe(fv);
                v1[vt - n][j] = pe(vv);
            } else {
                if ft >= n || vt >= n {
                    return Err(NewtonError::Shape);
                }
                f2[ft][j - n] = pe(fv);
                v2[vt][j - n] = pe(vv);
            }
        }
        Ok(WittDieudonne::new(ring.clone(), n, f1, f2, v1, v2)?)
    }

    /// image lattice under the monomial map, in the same window. A negative
    /// valuation can push the image outside the window; that surfaces as a
    /// math error which callers treat as leaving the window.
    pub fn apply_to_lattice(&self, lat: &WittLattice) -> Result<WittLattice> {
        if lat.rank() != self.size() {
            return Err(NewtonError::Shape);
        }
        let ring = lat.ring().clone();
        let size = self.size();
        let mut rows = Vec::with_capacity(size);
        for row in lat.shifted_rows() {
            let mut out = vec![ring.zero(); size];
            for (j, &x) in row.iter().enumerate() {
                if ring.is_zero(x) {
                    continue;
                }
                let tx = if self.twist % 2 == 1 { ring.sigma(x) } else { x };
                out[self.perm[j]] = if self.vals[j] >= 0 {
                    ring.times_p_pow(tx, self.vals[j] as u32)
                } else {
                    ring.div_p_pow(tx, (-self.vals[j]) as u32)?
                };
            }
            rows.push(out);
        }
        Ok(WittLattice::from_shifted_rows(
            &ring,
            size,
            lat.radius(),
            rows,
        )?)
    }
}
