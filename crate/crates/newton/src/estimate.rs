use dieudonne::WittDieudonne;
use exactmath::lattice::WRow;
use exactmath::{WittLattice, WittRing};
use num_rational::Ratio;

use crate::isocrystal::{MonomialIsocrystal, WMat};
use crate::{NewtonError, Result};

/// a . sigma^twist(b), the matrix of the composite of two twisted maps
fn twisted_mul(ring: &WittRing, a: &[WRow], b: &[WRow], twist: u32) -> WMat {
    let n = a.len();
    let mut out = vec![vec![ring.zero(); n]; n];
    for j in 0..n {
        for k in 0..n {
            let x = if twist % 2 == 1 {
                ring.sigma(b[k][j])
            } else {
                b[k][j]
            };
            if ring.is_zero(x) {
                continue;
            }
            for i in 0..n {
                out[i][j] = ring.add(out[i][j], ring.mul(a[i][k], x));
            }
        }
    }
    out
}

/// largest k with image of the depth-fold iterate inside p^k times the
/// standard lattice; errors once the answer is indistinguishable from the
/// working precision
fn iterate_min_val(ring: &WittRing, mat: &[WRow], twist: u32, depth: u32) -> Result<u32> {
    if depth < 1 {
        return Err(NewtonError::ParamRange);
    }
    let n = mat.len();
    if n == 0 || mat.iter().any(|r| r.len() != n) {
        return Err(NewtonError::Shape);
    }
    let mut acc: WMat = mat.to_vec();
    for _ in 1..depth {
        acc = twisted_mul(ring, mat, &acc, twist);
    }
    let k = acc
        .iter()
        .flat_map(|r| r.iter())
        .map(|&x| ring.val(x))
        .min()
        .unwrap();
    if k >= ring.precision() {
        return Err(NewtonError::Precision);
    }
    Ok(k)
}

/// truncated slope reading with its certified half width
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SlopeEstimate {
    pub value: Ratio<i64>,
    pub error_bound: Ratio<i64>,
    pub depth: u32,
}

/// lower bound for the least slope: (1/m) max{k : F^m D <= p^k D}. The
/// iterate valuations are superadditive, so every depth already gives a
/// valid lower bound, within rank/m of the limit.
pub fn lambda_min(ring: &WittRing, f_mat: &[WRow], twist: u32, depth: u32) -> Result<SlopeEstimate> {
    let k = iterate_min_val(ring, f_mat, twist, depth)?;
    Ok(SlopeEstimate {
        value: Ratio::new(k as i64, depth as i64),
        error_bound: Ratio::new(f_mat.len() as i64, depth as i64),
        depth,
    })
}

/// upper bound for the largest slope, read from the dual map: the least
/// slope of p F^{-1} is one minus the largest slope of F
pub fn lambda_max(ring: &WittRing, v_mat: &[WRow], twist: u32, depth: u32) -> Result<SlopeEstimate> {
    let k = iterate_min_val(ring, v_mat, twist, depth)?;
    Ok(SlopeEstimate {
        value: Ratio::from_integer(1) - Ratio::new(k as i64, depth as i64),
        error_bound: Ratio::new(v_mat.len() as i64, depth as i64),
        depth,
    })
}

impl MonomialIsocrystal {
    pub fn lambda_min_estimate(&self, ring: &WittRing, depth: u32) -> Result<SlopeEstimate> {
        lambda_min(ring, &self.f_matrix(ring)?, self.twist(), depth)
    }

    pub fn lambda_max_estimate(&self, ring: &WittRing, depth: u32) -> Result<SlopeEstimate> {
        lambda_max(ring, &self.v_matrix(ring)?, self.twist(), depth)
    }
}

/// the two slope-window inclusions; both failing picks out the open stratum
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HasseCriteria {
    /// F^2 of the second summand lands in V of the first: least slope >= 1/4
    pub minge_quarter: bool,
    /// V^2 of the second summand lands in F of the first: largest slope <= 3/4
    pub maxle_threequarters: bool,
}

impl HasseCriteria {
    /// both divisibility sections nonvanishing
    pub fn is_mu_ordinary(&self) -> bool {
        !self.minge_quarter && !self.maxle_threequarters
    }
}

/// column span as a lattice in the radius-1 window around the standard one
fn column_lattice(ring: &WittRing, mat: &[WRow]) -> Result<WittLattice> {
    let n = mat.len();
    let rows: Vec<WRow> = (0..n)
        .map(|j| (0..n).map(|i| ring.times_p_pow(mat[i][j], 1)).collect())
        .collect();
    Ok(WittLattice::from_shifted_rows(ring, n, 1, rows)?)
}

fn columns_inside(ring: &WittRing, mat: &[WRow], lat: &WittLattice) -> bool {
    let n = mat.len();
    (0..n).all(|j| {
        let col: WRow = (0..n).map(|i| ring.times_p_pow(mat[i][j], 1)).collect();
        lat.contains_shifted(&col)
    })
}

/// both Hasse inclusions for a lifted module; needs three p-digits since the
/// composites involved carry valuations up to two
pub fn hasse_criteria(m: &WittDieudonne) -> Result<HasseCriteria> {
    let ring = &m.ring;
    if ring.precision() < 3 {
        return Err(NewtonError::Precision);
    }
    let f_sq = twisted_mul(ring, &m.f1, &m.f2, 1);
    let v_sq = twisted_mul(ring, &m.v1, &m.v2, 1);
    let v1_span = column_lattice(ring, &m.v1)?;
    let f1_span = column_lattice(ring, &m.f1)?;
    Ok(HasseCriteria {
        minge_quarter: columns_inside(ring, &f_sq, &v1_span),
        maxle_threequarters: columns_inside(ring, &v_sq, &f1_span),
    })
}
