use std::sync::Arc;

use exactmath::lattice::WRow;
use exactmath::{FqMat, WittElem, WittLattice, WittRing};

use crate::module::{EOSignature, ModPDieudonne};
use crate::{DieudonneError, Result};

type WMat = Vec<WRow>;

fn wmat_zero(ring: &WittRing, n: usize) -> WMat {
    vec![vec![ring.zero(); n]; n]
}

/// mat . sigma(v); the coefficient involution is its own inverse, so the
/// same twist serves F and V
fn apply_twisted(ring: &WittRing, mat: &WMat, v: &[WittElem]) -> WRow {
    let n = mat.len();
    let mut out = vec![ring.zero(); n];
    for (j, &x) in v.iter().enumerate() {
        let sx = ring.sigma(x);
        if ring.is_zero(sx) {
            continue;
        }
        for i in 0..n {
            out[i] = ring.add(out[i], ring.mul(mat[i][j], sx));
        }
    }
    out
}

fn mat_twisted_product(ring: &WittRing, a: &WMat, b: &WMat) -> WMat {
    let n = a.len();
    let mut out = wmat_zero(ring, n);
    for j in 0..n {
        // a acts on sigma(column of b)
        let col: Vec<WittElem> = (0..n).map(|i| b[i][j]).collect();
        let img = apply_twisted(ring, a, &col);
        for i in 0..n {
            out[i][j] = img[i];
        }
    }
    out
}

fn is_p_identity(ring: &WittRing, m: &WMat) -> bool {
    let p = ring.scalar(ring.p() as i64);
    let n = m.len();
    (0..n).all(|i| {
        (0..n).all(|j| {
            let want = if i == j { p } else { ring.zero() };
            m[i][j] == want
        })
    })
}

/// lift of a reduced module to the truncated Witt ring with F V = V F = p
#[derive(Debug, Clone)]
pub struct WittDieudonne {
    pub ring: WittRing,
    pub n: usize,
    pub f1: WMat,
    pub f2: WMat,
    pub v1: WMat,
    pub v2: WMat,
}

impl WittDieudonne {
    pub fn new(ring: WittRing, n: usize, f1: WMat, f2: WMat, v1: WMat, v2: WMat) -> Result<Self> {
        for m in [&f1, &f2, &v1, &v2] {
            if m.len() != n || m.iter().any(|r| r.len() != n) {
                return Err(DieudonneError::Shape);
            }
        }
        Ok(WittDieudonne {
            ring,
            n,
            f1,
            f2,
            v1,
            v2,
        })
    }

    /// F V = V F = p on both summands
    pub fn validate(&self) -> bool {
        let r = &self.ring;
        is_p_identity(r, &mat_twisted_product(r, &self.f2, &self.v1))
            && is_p_identity(r, &mat_twisted_product(r, &self.f1, &self.v2))
            && is_p_identity(r, &mat_twisted_product(r, &self.v2, &self.f1))
            && is_p_identity(r, &mat_twisted_product(r, &self.v1, &self.f2))
    }

    /// standard lift of the label (a, b): the reduced tables with the killed
    /// basis vectors re-routed through p so that F V = p exactly
    pub fn standard_lift(ring: &WittRing, n: usize, a: usize, b: usize) -> Result<Self> {
        if n < 2 {
            return Err(DieudonneError::RankRange);
        }
        if a < 1 || a > n || b < 1 || b > n {
            return Err(DieudonneError::ParamRange);
        }
        let one = ring.one();
        let p = ring.scalar(ring.p() as i64);
        let mut f1 = wmat_zero(ring, n);
        let mut f2 = wmat_zero(ring, n);
        let mut v1 = wmat_zero(ring, n);
        let mut v2 = wmat_zero(ring, n);
        for j in 1..=n {
            if j <= a - 1 {
                f1[j - 1][j - 1] = one;
            } else if j == a {
                f1[n - 1][j - 1] = p;
            } else {
                f1[j - 2][j - 1] = one;
            }
            if j <= b - 1 {
                f2[j][j - 1] = p;
            } else if j == b {
                f2[0][j - 1] = one;
            } else {
                f2[j - 1][j - 1] = p;
            }
            if j == 1 {
                v1[b - 1][j - 1] = p;
            } else if j <= b {
                v1[j - 2][j - 1] = one;
            } else {
                v1[j - 1][j - 1] = one;
            }
            if j <= a - 1 {
                v2[j - 1][j - 1] = p;
            } else if j <= n - 1 {
                v2[j][j - 1] = p;
            } else {
                v2[a - 1][j - 1] = one;
            }
        }
        WittDieudonne::new(ring.clone(), n, f1, f2, v1, v2)
    }

    pub fn reduce(&self) -> Result<ModPDieudonne> {
        let field = Arc::new(self.ring.residue_field()?);
        let red = |m: &WMat| {
            let mut out = FqMat::zero(self.n, self.n);
            for i in 0..self.n {
                for j in 0..self.n {
                    out.set(i, j, self.ring.reduce_mod_p(m[i][j], &field));
                }
            }
            out
        };
        ModPDieudonne::new(
            field.clone(),
            self.n,
            red(&self.f1),
            red(&self.f2),
            red(&self.v1),
            red(&self.v2),
        )
    }
}

/// restrict the module structure to a stable lattice pair inside the
/// standard one and account for the change of Hodge ranks
pub fn modify(
    m: &WittDieudonne,
    e1: &WittLattice,
    e2: &WittLattice,
) -> Result<(ModPDieudonne, EOSignature)> {
    let ring = &m.ring;
    if e1.rank() != m.n || e2.rank() != m.n || e1.ring() != ring || e2.ring() != ring {
        return Err(DieudonneError::Shape);
    }
    let std = WittLattice::standard(ring, m.n, e1.radius())?;
    if !std.contains(e1)? || !std.contains(e2)? {
        return Err(DieudonneError::Unstable);
    }
    for row in e1.shifted_rows() {
        if !e2.contains_shifted(&apply_twisted(ring, &m.f1, row))
            || !e2.contains_shifted(&apply_twisted(ring, &m.v1, row))
        {
            return Err(DieudonneError::Unstable);
        }
    }
    for row in e2.shifted_rows() {
        if !e1.contains_shifted(&apply_twisted(ring, &m.f2, row))
            || !e1.contains_shifted(&apply_twisted(ring, &m.v2, row))
        {
            return Err(DieudonneError::Unstable);
        }
    }
    let l1 = e1.colength_in(&std)? as i64;
    let l2 = e2.colength_in(&std)? as i64;

    // rows of C express the images of the source basis in the target basis;
    // the new matrix acts on twisted coordinates, hence the transpose
    let induced = |mat: &WMat, src: &WittLattice, dst: &WittLattice| -> Result<WMat> {
        let mut c = Vec::with_capacity(m.n);
        for row in src.shifted_rows() {
            c.push(dst.shifted_coords(&apply_twisted(ring, mat, row))?);
        }
        let mut t = wmat_zero(ring, m.n);
        for i in 0..m.n {
            for j in 0..m.n {
                t[i][j] = c[j][i];
            }
        }
        Ok(t)
    };
    let new = WittDieudonne::new(
        ring.clone(),
        m.n,
        induced(&m.f1, e1, e2)?,
        induced(&m.f2, e2, e1)?,
        induced(&m.v1, e1, e2)?,
        induced(&m.v2, e2, e1)?,
    )?;
    let reduced = new.reduce()?;

    let before = m.reduce()?.signature();
    let a1 = before.a1 as i64 + l1 - l2;
    let a2 = before.a2 as i64 + l2 - l1;
    if a1 < 0 || a2 < 0 || a1 > m.n as i64 || a2 > m.n as i64 {
        return Err(DieudonneError::SignatureRange);
    }
    Ok((
        reduced,
        EOSignature {
            a1: a1 as usize,
            a2: a2 as usize,
        },
    ))
}
