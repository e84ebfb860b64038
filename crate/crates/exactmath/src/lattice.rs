//! Lattices over W(F_{p^2})/p^s in Howell canonical form.
//!
//! A `WittLattice` L with window radius r satisfies p^r std <= L <= p^{-r} std.
//! Internally we store the Howell basis of the integral module p^r L inside
//! R^n, so pivot valuations live in [0, 2r]. Full rank plus the window bound
//! force the Howell matrix to be n x n upper triangular with p-power pivots
//! on the diagonal.

use crate::error::{MathError, Result};
use crate::fq::{FiniteField, Fq};
use crate::witt::{WittElem, WittRing};

pub type WRow = Vec<WittElem>;

fn row_is_zero(ring: &WittRing, row: &[WittElem]) -> bool {
    row.iter().all(|&x| ring.is_zero(x))
}

fn row_scale(ring: &WittRing, c: WittElem, row: &[WittElem]) -> WRow {
    row.iter().map(|&x| ring.mul(c, x)).collect()
}

fn row_sub_mul(ring: &WittRing, a: &[WittElem], c: WittElem, b: &[WittElem]) -> WRow {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| ring.sub(x, ring.mul(c, y)))
        .collect()
}

fn leading_col(ring: &WittRing, row: &[WittElem]) -> Option<usize> {
    row.iter().position(|&x| !ring.is_zero(x))
}

/// Howell canonical form of the row span, processing the first `ncols`
/// columns. Rows may be longer than `ncols` (augmented columns ride along
/// untouched by pivot selection); canonical reduction then only applies to
/// square unaugmented use, so augmented callers take the raw echelon.
fn howell_engine(
    ring: &WittRing,
    ncols: usize,
    rows: Vec<WRow>,
    canonicalize: bool,
) -> (Vec<WRow>, Vec<WRow>) {
    let s = ring.precision();
    let mut work: Vec<WRow> = rows
        .into_iter()
        .filter(|r| !row_is_zero(ring, r))
        .collect();
    let mut result: Vec<WRow> = Vec::new();
    let mut pivcols: Vec<usize> = Vec::new();

    for col in 0..ncols {
        let mut best: Option<(usize, u32)> = None;
        for (i, row) in work.iter().enumerate() {
            if ring.is_zero(row[col]) {
                continue;
            }
            let v = ring.val(row[col]);
            if best.map_or(true, |(_, bv)| v < bv) {
                best = Some((i, v));
            }
        }
        let Some((idx, v)) = best else {
            continue;
        };
        let mut piv = work.swap_remove(idx);
        let unit = ring.div_p_pow(piv[col], v).unwrap();
        let uinv = ring.inv(unit).unwrap();
        piv = row_scale(ring, uinv, &piv);
        for w in work.iter_mut() {
            if ring.is_zero(w[col]) {
                continue;
            }
            let f = ring.div_p_pow(w[col], v).unwrap();
            *w = row_sub_mul(ring, w, f, &piv);
        }
        work.retain(|r| !row_is_zero(ring, r));
        if v > 0 {
            let shadow: WRow = piv
                .iter()
                .map(|&x| ring.times_p_pow(x, s - v))
                .collect();
            if !row_is_zero(ring, &shadow) {
                work.push(shadow);
            }
        }
        pivcols.push(col);
        result.push(piv);
    }

    if canonicalize {
        for j in 0..result.len() {
            let cj = pivcols[j];
            let ej = ring.val(result[j][cj]);
            for i in 0..j {
                let entry = result[i][cj];
                let rem = ring.rem_p_pow(entry, ej);
                let diff = ring.sub(entry, rem);
                if ring.is_zero(diff) {
                    continue;
                }
                let q = ring.div_p_pow(diff, ej).unwrap();
                result[i] = row_sub_mul(ring, &result[i], q, &result[j]);
            }
        }
    }
    (result, work)
}

pub fn howell_rows(ring: &WittRing, ncols: usize, rows: Vec<WRow>) -> Vec<WRow> {
    let (result, _) = howell_engine(ring, ncols, rows, true);
    result
}

/// Canonical generators of {x in R^m : x A = 0} for the m-row matrix A.
pub fn kernel_mod(ring: &WittRing, ncols: usize, rows: &[WRow]) -> Vec<WRow> {
    let m = rows.len();
    let mut aug: Vec<WRow> = Vec::with_capacity(m);
    for (i, r) in rows.iter().enumerate() {
        let mut row = r.clone();
        assert_eq!(row.len(), ncols);
        row.extend((0..m).map(|j| if i == j { ring.one() } else { ring.zero() }));
        aug.push(row);
    }
    let (_, work) = howell_engine(ring, ncols, aug, false);
    let tails: Vec<WRow> = work
        .into_iter()
        .map(|r| {
            debug_assert!(r[..ncols].iter().all(|&x| ring.is_zero(x)));
            r[ncols..].to_vec()
        })
        .collect();
    howell_rows(ring, m, tails)
}

/// Valuations of the diagonal in a Smith-style reduction; ascending.
pub fn smith_vals(ring: &WittRing, mat: &[WRow]) -> Vec<u32> {
    let s = ring.precision();
    let mut m: Vec<WRow> = mat.to_vec();
    let nrows = m.len();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut vals = Vec::new();
    let mut top = 0usize;
    let mut left = 0usize;
    while top < nrows && left < ncols {
        let mut best: Option<(usize, usize, u32)> = None;
        for i in top..nrows {
            for j in left..ncols {
                if ring.is_zero(m[i][j]) {
                    continue;
                }
                let v = ring.val(m[i][j]);
                if best.map_or(true, |(_, _, bv)| v < bv) {
                    best = Some((i, j, v));
                }
            }
        }
        let Some((bi, bj, v)) = best else {
            break;
        };
        m.swap(top, bi);
        for row in m.iter_mut() {
            row.swap(left, bj);
        }
        let unit = ring.div_p_pow(m[top][left], v).unwrap();
        let uinv = ring.inv(unit).unwrap();
        m[top] = row_scale(ring, uinv, &m[top]);
        for i in top + 1..nrows {
            if ring.is_zero(m[i][left]) {
                continue;
            }
            let f = ring.div_p_pow(m[i][left], v).unwrap();
            m[i] = row_sub_mul(ring, &m[i], f, &m[top].clone());
        }
        // column elimination: entries right of the pivot in the pivot row
        for j in left + 1..ncols {
            if ring.is_zero(m[top][j]) {
                continue;
            }
            let f = ring.div_p_pow(m[top][j], v).unwrap();
            for i in top..nrows {
                let sub = ring.mul(f, m[i][left]);
                m[i][j] = ring.sub(m[i][j], sub);
            }
        }
        vals.push(v);
        top += 1;
        left += 1;
    }
    while vals.len() < nrows.min(ncols) {
        vals.push(s);
    }
    vals
}

#[derive(Clone)]
pub struct WittLattice {
    ring: WittRing,
    n: usize,
    r: u32,
    /// Howell basis of p^r L, upper triangular n x n
    mat: Vec<WRow>,
}

impl PartialEq for WittLattice {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.n == other.n && self.r == other.r && self.mat == other.mat
    }
}
impl Eq for WittLattice {}

impl std::hash::Hash for WittLattice {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.r.hash(state);
        for row in &self.mat {
            for e in row {
                e.a0.hash(state);
                e.a1.hash(state);
            }
        }
    }
}

impl std::fmt::Debug for WittLattice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "WittLattice(n={}, r={})", self.n, self.r)?;
        for row in &self.mat {
            let coords: Vec<String> = row.iter().map(|e| format!("{}+{}t", e.a0, e.a1)).collect();
            writeln!(f, "  [{}]", coords.join(", "))?;
        }
        Ok(())
    }
}

impl WittLattice {
    pub fn standard(ring: &WittRing, n: usize, r: u32) -> Result<WittLattice> {
        if r >= ring.precision() || 2 * r >= ring.precision() {
            return Err(MathError::WindowRadius {
                r,
                s: ring.precision(),
            });
        }
        let mut mat = vec![vec![ring.zero(); n]; n];
        for (i, row) in mat.iter_mut().enumerate() {
            row[i] = WittElem {
                a0: ring.p_pow(r),
                a1: 0,
            };
        }
        Ok(WittLattice {
            ring: ring.clone(),
            n,
            r,
            mat,
        })
    }

    /// Build from generators of the shifted module p^r L. Errors if the span
    /// leaves the window, i.e. does not contain p^{2r} R^n.
    pub fn from_shifted_rows(
        ring: &WittRing,
        n: usize,
        r: u32,
        rows: Vec<WRow>,
    ) -> Result<WittLattice> {
        if 2 * r >= ring.precision() {
            return Err(MathError::WindowRadius {
                r,
                s: ring.precision(),
            });
        }
        let mat = howell_rows(ring, n, rows);
        if mat.len() != n {
            return Err(MathError::WindowOverflow {
                r,
                s: ring.precision(),
                what: "generators do not span a full-rank lattice".into(),
            });
        }
        let lat = WittLattice {
            ring: ring.clone(),
            n,
            r,
            mat,
        };
        for i in 0..n {
            let piv = lat.mat[i][i];
            let v = ring.val(piv);
            if leading_col(ring, &lat.mat[i]) != Some(i) || v > 2 * r {
                return Err(MathError::WindowOverflow {
                    r,
                    s: ring.precision(),
                    what: format!("pivot valuation {v} at column {i} exceeds 2r"),
                });
            }
        }
        // pivots p^{v_i} with v_i <= 2r make p^{2r} e_i reducible, so the
        // window containment holds exactly when the triangular check passes
        if !lat.contains_shifted_scaled_std(2 * r) {
            return Err(MathError::WindowOverflow {
                r,
                s: ring.precision(),
                what: "lattice does not contain p^r std".into(),
            });
        }
        Ok(lat)
    }

    /// diag(p^{a_1}, ..., p^{a_n}) with |a_i| <= r
    pub fn from_diag_powers(ring: &WittRing, r: u32, exps: &[i32]) -> Result<WittLattice> {
        let n = exps.len();
        let mut rows = vec![vec![ring.zero(); n]; n];
        for (i, &a) in exps.iter().enumerate() {
            if a.unsigned_abs() > r {
                return Err(MathError::WindowOverflow {
                    r,
                    s: ring.precision(),
                    what: format!("diagonal exponent {a} outside [-r, r]"),
                });
            }
            rows[i][i] = WittElem {
                a0: ring.p_pow((a + r as i32) as u32),
                a1: 0,
            };
        }
        WittLattice::from_shifted_rows(ring, n, r, rows)
    }

    fn contains_shifted_scaled_std(&self, k: u32) -> bool {
        (0..self.n).all(|j| {
            let mut v = vec![self.ring.zero(); self.n];
            v[j] = WittElem {
                a0: self.ring.p_pow(k),
                a1: 0,
            };
            self.reduces_to_zero(&v)
        })
    }

    fn reduces_to_zero(&self, vec: &[WittElem]) -> bool {
        let mut v = vec.to_vec();
        for i in 0..self.n {
            if self.ring.is_zero(v[i]) {
                continue;
            }
            let piv = self.mat[i][i];
            let pv = self.ring.val(piv);
            if self.ring.val(v[i]) < pv {
                return false;
            }
            let f = self.ring.div_p_pow(v[i], pv).unwrap();
            v = row_sub_mul(&self.ring, &v, f, &self.mat[i]);
        }
        row_is_zero(&self.ring, &v)
    }

    /// membership test for a vector given in shifted coordinates (p^r * v)
    pub fn contains_shifted(&self, vec: &[WittElem]) -> bool {
        vec.len() == self.n && self.reduces_to_zero(vec)
    }

    /// coordinates of a shifted vector in the triangular shifted basis
    pub fn shifted_coords(&self, vec: &[WittElem]) -> Result<WRow> {
        if vec.len() != self.n {
            return Err(MathError::Shape("coordinate vector length".into()));
        }
        let mut c = vec![self.ring.zero(); self.n];
        let mut v = vec.to_vec();
        for j in 0..self.n {
            if self.ring.is_zero(v[j]) {
                continue;
            }
            let pv = self.ring.val(self.mat[j][j]);
            let f = self
                .ring
                .div_p_pow(v[j], pv)
                .map_err(|_| MathError::NotContained)?;
            c[j] = f;
            v = row_sub_mul(&self.ring, &v, f, &self.mat[j]);
        }
        if !row_is_zero(&self.ring, &v) {
            return Err(MathError::NotContained);
        }
        Ok(c)
    }

    pub fn ring(&self) -> &WittRing {
        &self.ring
    }
    pub fn rank(&self) -> usize {
        self.n
    }
    pub fn radius(&self) -> u32 {
        self.r
    }
    pub fn shifted_rows(&self) -> &[WRow] {
        &self.mat
    }
    /// pivot valuations of the shifted module, index i at column i
    pub fn pivot_vals(&self) -> Vec<u32> {
        (0..self.n).map(|i| self.ring.val(self.mat[i][i])).collect()
    }

    fn check_compatible(&self, other: &WittLattice) -> Result<()> {
        if self.ring != other.ring || self.n != other.n || self.r != other.r {
            return Err(MathError::IncompatibleAmbient);
        }
        Ok(())
    }

    pub fn contains(&self, other: &WittLattice) -> Result<bool> {
        self.check_compatible(other)?;
        Ok(other.mat.iter().all(|row| self.reduces_to_zero(row)))
    }

    pub fn sum(&self, other: &WittLattice) -> Result<WittLattice> {
        self.check_compatible(other)?;
        let mut rows = self.mat.clone();
        rows.extend(other.mat.iter().cloned());
        WittLattice::from_shifted_rows(&self.ring, self.n, self.r, rows)
    }

    pub fn intersection(&self, other: &WittLattice) -> Result<WittLattice> {
        self.check_compatible(other)?;
        let mut stacked = self.mat.clone();
        stacked.extend(other.mat.iter().cloned());
        let ker = kernel_mod(&self.ring, self.n, &stacked);
        let mut gens: Vec<WRow> = Vec::new();
        for z in ker {
            // z = (x | y) with x of length n; the common vector is x * G_L
            let mut g = vec![self.ring.zero(); self.n];
            for (i, &c) in z[..self.n].iter().enumerate() {
                for j in 0..self.n {
                    g[j] = self.ring.add(g[j], self.ring.mul(c, self.mat[i][j]));
                }
            }
            gens.push(g);
        }
        WittLattice::from_shifted_rows(&self.ring, self.n, self.r, gens)
    }

    /// length of M/L over the residue field, requires self <= M
    pub fn colength_in(&self, m: &WittLattice) -> Result<u32> {
        self.check_compatible(m)?;
        if !m.contains(self)? {
            return Err(MathError::NotContained);
        }
        let a: u32 = self.pivot_vals().iter().sum();
        let b: u32 = m.pivot_vals().iter().sum();
        Ok(a - b)
    }

    /// multiset of exponents k for the divisors p^k of the inclusion self <= M
    pub fn elementary_divisors_in(&self, m: &WittLattice) -> Result<Vec<u32>> {
        self.check_compatible(m)?;
        if !m.contains(self)? {
            return Err(MathError::NotContained);
        }
        // coordinates of our rows in M's triangular basis
        let mut c = vec![vec![self.ring.zero(); self.n]; self.n];
        for (i, row) in self.mat.iter().enumerate() {
            let mut v = row.clone();
            for j in 0..self.n {
                if self.ring.is_zero(v[j]) {
                    continue;
                }
                let pv = self.ring.val(m.mat[j][j]);
                let f = self
                    .ring
                    .div_p_pow(v[j], pv)
                    .map_err(|_| MathError::NotContained)?;
                c[i][j] = f;
                v = row_sub_mul(&self.ring, &v, f, &m.mat[j]);
            }
            debug_assert!(row_is_zero(&self.ring, &v));
        }
        let vals = smith_vals(&self.ring, &c);
        if vals.iter().any(|&v| v >= self.ring.precision()) {
            return Err(MathError::WindowOverflow {
                r: self.r,
                s: self.ring.precision(),
                what: "elementary divisor vanishes at working precision".into(),
            });
        }
        let mut sorted = vals;
        sorted.sort_unstable();
        Ok(sorted)
    }

    /// p^k L
    pub fn scale(&self, k: i32) -> Result<WittLattice> {
        let mut rows = self.mat.clone();
        if k >= 0 {
            for row in rows.iter_mut() {
                for e in row.iter_mut() {
                    *e = self.ring.times_p_pow(*e, k as u32);
                }
            }
        } else {
            for row in rows.iter_mut() {
                for e in row.iter_mut() {
                    *e = self.ring.div_p_pow(*e, (-k) as u32).map_err(|_| {
                        MathError::WindowOverflow {
                            r: self.r,
                            s: self.ring.precision(),
                            what: format!("scaling by p^{k} leaves the window"),
                        }
                    })?;
                }
            }
        }
        WittLattice::from_shifted_rows(&self.ring, self.n, self.r, rows)
    }

    /// colength-1 superlattices inside the window, one per line of L'/L
    pub fn colength_one_superlattices(&self, field: &FiniteField) -> Vec<WittLattice> {
        let mut out = Vec::new();
        for rep in projective_reps_n(field, self.n) {
            // candidate generator sum c_i g_i must be divisible by p for
            // (sum c_i g_i)/p to stay integral; otherwise the superlattice
            // leaves the window and is skipped
            let mut w = vec![self.ring.zero(); self.n];
            for (i, &c) in rep.iter().enumerate() {
                let digits = field.coeffs(c);
                let lift = WittElem {
                    a0: digits[0] as u128,
                    a1: digits[1] as u128,
                };
                if self.ring.is_zero(lift) {
                    continue;
                }
                for j in 0..self.n {
                    w[j] = self.ring.add(w[j], self.ring.mul(lift, self.mat[i][j]));
                }
            }
            let divisible = w.iter().all(|&x| self.ring.is_zero(x) || self.ring.val(x) >= 1);
            if !divisible {
                continue;
            }
            let g: WRow = w
                .iter()
                .map(|&x| self.ring.div_p_pow(x, 1).unwrap())
                .collect();
            let mut rows = self.mat.clone();
            rows.push(g);
            if let Ok(lat) = WittLattice::from_shifted_rows(&self.ring, self.n, self.r, rows) {
                if lat.pivot_vals().iter().sum::<u32>() + 1
                    == self.pivot_vals().iter().sum::<u32>()
                {
                    out.push(lat);
                }
            }
        }
        dedup_lattices(&mut out);
        out
    }

    /// maximal sublattices still inside the window, one per hyperplane of L/pL
    pub fn maximal_sublattices(&self, field: &FiniteField) -> Vec<WittLattice> {
        let mut out = Vec::new();
        for hyper in hyperplane_bases(field, self.n) {
            let mut rows: Vec<WRow> = Vec::new();
            for coeffs in &hyper {
                let mut g = vec![self.ring.zero(); self.n];
                for (i, &c) in coeffs.iter().enumerate() {
                    let digits = field.coeffs(c);
                    let lift = WittElem {
                        a0: digits[0] as u128,
                        a1: digits[1] as u128,
                    };
                    if self.ring.is_zero(lift) {
                        continue;
                    }
                    for j in 0..self.n {
                        g[j] = self.ring.add(g[j], self.ring.mul(lift, self.mat[i][j]));
                    }
                }
                rows.push(g);
            }
            for row in &self.mat {
                rows.push(row.iter().map(|&x| self.ring.times_p_pow(x, 1)).collect());
            }
            if let Ok(lat) = WittLattice::from_shifted_rows(&self.ring, self.n, self.r, rows) {
                if lat.pivot_vals().iter().sum::<u32>()
                    == self.pivot_vals().iter().sum::<u32>() + 1
                {
                    out.push(lat);
                }
            }
        }
        dedup_lattices(&mut out);
        out
    }
}

fn dedup_lattices(v: &mut Vec<WittLattice>) {
    let mut seen = std::collections::HashSet::new();
    v.retain(|l| {
        let key: Vec<(u128, u128)> = l
            .mat
            .iter()
            .flat_map(|row| row.iter().map(|e| (e.a0, e.a1)))
            .collect();
        seen.insert(key)
    });
}

/// canonical representatives of lines in F_q^n: first nonzero coordinate 1
pub fn projective_reps_n(field: &FiniteField, n: usize) -> Vec<Vec<Fq>> {
    let q = field.order();
    let mut out = Vec::new();
    for lead in 0..n {
        // coordinates before `lead` are zero, coordinate `lead` is one
        let free = n - lead - 1;
        let mut idx = vec![0usize; free];
        loop {
            let mut v = vec![field.zero(); n];
            v[lead] = field.one();
            for (k, &i) in idx.iter().enumerate() {
                v[lead + 1 + k] = Fq(i as u16);
            }
            out.push(v);
            let mut carry = true;
            for slot in idx.iter_mut() {
                *slot += 1;
                if *slot == q {
                    *slot = 0;
                } else {
                    carry = false;
                    break;
                }
            }
            if carry {
                break;
            }
        }
    }
    out
}

/// RREF bases of the hyperplanes of F_q^n
fn hyperplane_bases(field: &FiniteField, n: usize) -> Vec<Vec<Vec<Fq>>> {
    use crate::subspace::{kernel, FqMat};
    let mut out = Vec::new();
    for normal in projective_reps_n(field, n) {
        let m = FqMat::from_rows(vec![normal]);
        let ker = kernel(field, &m);
        let rows: Vec<Vec<Fq>> = (0..ker.basis.nrows)
            .map(|i| ker.basis.row(i).to_vec())
            .collect();
        out.push(rows);
    }
    out
}
