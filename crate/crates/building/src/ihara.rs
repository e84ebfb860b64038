//! The two block matrices of the rank-two sequence: alpha maps a pair of
//! vertex functions (s, t) into four vertex blocks and one edge block, and
//! beta maps those five blocks onto two edge blocks. Scaling enters through
//! the model's sp maps (identity on file-loaded models), and rows whose
//! scaling image leaves the window are masked out rather than guessed.

use exactmath::sparse::{sv_axpy, sv_normalize, SparseVec, SpMat, SparseRref};
use exactmath::Coeffs;

use crate::model::{check_coeff, CoeffChar, ToyModel};
use crate::{BuildingError, Result};

#[derive(Clone, Debug)]
pub struct IharaMatrices<C: Coeffs> {
    pub field: C,
    pub num_vertices: usize,
    pub num_edges: usize,
    /// rows: blocks x, y, z, w (vertex-indexed) then r (edge-indexed);
    /// columns: s then t
    pub alpha: SpMat<C>,
    pub alpha_defined: Vec<bool>,
    /// rows: two edge blocks; columns: x, y, z, w, r
    pub beta: SpMat<C>,
    pub beta_defined: Vec<bool>,
}

pub fn ihara_n2_matrices<C: CoeffChar>(model: &ToyModel, coeff: &C) -> Result<IharaMatrices<C>> {
    check_coeff(coeff, model.n, model.p)?;
    if model.n != 2 {
        return Err(BuildingError::NotRankTwo(model.n));
    }
    let nv = model.num_vertices();
    let ne = model.num_edges();
    let s_col = |v: u32| v as usize;
    let t_col = |v: u32| nv + v as usize;

    let mut alpha = SpMat::new(2 * nv);
    let mut alpha_defined = Vec::with_capacity(4 * nv + ne);
    // x = -(s after scaling)
    for v in 0..nv {
        match model.sp_of_vertex(v) {
            Some(pv) => {
                alpha.push_row(coeff, vec![(s_col(pv), coeff.from_int(-1))]);
                alpha_defined.push(true);
            }
            None => {
                alpha.push_row(coeff, Vec::new());
                alpha_defined.push(false);
            }
        }
    }
    // y = -s
    for v in 0..nv {
        alpha.push_row(coeff, vec![(s_col(v as u32), coeff.from_int(-1))]);
        alpha_defined.push(true);
    }
    // z = t and w = t
    for _ in 0..2 {
        for v in 0..nv {
            alpha.push_row(coeff, vec![(t_col(v as u32), coeff.one())]);
            alpha_defined.push(true);
        }
    }
    // r = -pl^* s + pr^* t
    for e in 0..ne {
        alpha.push_row(
            coeff,
            vec![
                (s_col(model.pl(e)), coeff.from_int(-1)),
                (t_col(model.pr(e)), coeff.one()),
            ],
        );
        alpha_defined.push(true);
    }

    let x_col = |v: u32| v as usize;
    let y_col = |v: u32| nv + v as usize;
    let z_col = |v: u32| 2 * nv + v as usize;
    let w_col = |v: u32| 3 * nv + v as usize;
    let r_col = |e: u32| 4 * nv + e as usize;

    let mut beta = SpMat::new(4 * nv + ne);
    let mut beta_defined = Vec::with_capacity(2 * ne);
    // pl^* x + pr^* (z after scaling) - (r after scaling)
    for e in 0..ne {
        let pr_scaled = model.sp_of_vertex(model.pr(e) as usize);
        let e_scaled = model.sp_of_edge(e);
        match (pr_scaled, e_scaled) {
            (Some(pv), Some(pe)) => {
                beta.push_row(
                    coeff,
                    vec![
                        (x_col(model.pl(e)), coeff.one()),
                        (z_col(pv), coeff.one()),
                        (r_col(pe), coeff.from_int(-1)),
                    ],
                );
                beta_defined.push(true);
            }
            _ => {
                beta.push_row(coeff, Vec::new());
                beta_defined.push(false);
            }
        }
    }
    // pl^* y + pr^* w - r
    for e in 0..ne {
        beta.push_row(
            coeff,
            vec![
                (y_col(model.pl(e)), coeff.one()),
                (w_col(model.pr(e)), coeff.one()),
                (r_col(e as u32), coeff.from_int(-1)),
            ],
        );
        beta_defined.push(true);
    }

    Ok(IharaMatrices {
        field: coeff.clone(),
        num_vertices: nv,
        num_edges: ne,
        alpha,
        alpha_defined,
        beta,
        beta_defined,
    })
}

impl<C: Coeffs> IharaMatrices<C> {
    /// rows of beta(alpha(.)) whose every factor is inside the window;
    /// returns how many were checked and whether all of them vanished
    pub fn composite_zero(&self) -> (usize, bool) {
        let f = &self.field;
        let mut checked = 0;
        let mut all_zero = true;
        for (i, brow) in self.beta.rows.iter().enumerate() {
            if !self.beta_defined[i] {
                continue;
            }
            if brow
                .iter()
                .any(|(k, _)| !self.alpha_defined[*k])
            {
                continue;
            }
            let mut acc: SparseVec<C::El> = Vec::new();
            for (k, c) in brow {
                acc = sv_axpy(f, &acc, c, &self.alpha.rows[*k]);
            }
            checked += 1;
            if !sv_normalize(f, acc).is_empty() {
                all_zero = false;
            }
        }
        (checked, all_zero)
    }

    /// rank of alpha on its defined rows; 2V means injective
    pub fn alpha_rank(&self) -> usize {
        let mut ech = SparseRref::new(self.alpha.ncols);
        for (i, row) in self.alpha.rows.iter().enumerate() {
            if self.alpha_defined[i] {
                ech.insert(&self.field, row.clone());
            }
        }
        ech.rank()
    }

    pub fn beta_rank(&self) -> usize {
        let mut ech = SparseRref::new(self.beta.ncols);
        for (i, row) in self.beta.rows.iter().enumerate() {
            if self.beta_defined[i] {
                ech.insert(&self.field, row.clone());
            }
        }
        ech.rank()
    }

    /// dim ker beta - rank alpha on the defined rows
    pub fn homology_dim(&self) -> i64 {
        let ker_beta = self.beta.ncols as i64 - self.beta_rank() as i64;
        ker_beta - self.alpha_rank() as i64
    }
}
