//! The block map psi on edge functions and two independent kernel solvers:
//! a direct echelon kernel of psi, and the leveled divisor-constraint
//! system whose recorded first-level projection must span the same
//! subspace. Constraint rows are kept only where the window holds the full
//! fan they sum over, tracked by the model's completeness masks.

use exactmath::sparse::{SparseVec, SpMat, SparseRref};
use exactmath::Coeffs;

use crate::model::{check_coeff, CoeffChar, EdgeFunction, ToyModel, VertexFunction};
use crate::{BuildingError, Result};

/// (pl_* f)(v) = sum of f over edges with pl(e) = v
pub fn pl_star<C: Coeffs>(model: &ToyModel, f: &EdgeFunction<C>) -> VertexFunction<C> {
    let fld = &f.field;
    let vals = model
        .out_edges
        .iter()
        .map(|es| {
            let mut acc = fld.zero();
            for &e in es {
                acc = fld.add(&acc, &f.vals[e as usize]);
            }
            acc
        })
        .collect();
    VertexFunction {
        field: fld.clone(),
        vals,
    }
}

/// (pr_* f)(v) = sum of f over edges with pr(e) = v
pub fn pr_star<C: Coeffs>(model: &ToyModel, f: &EdgeFunction<C>) -> VertexFunction<C> {
    let fld = &f.field;
    let vals = model
        .in_edges
        .iter()
        .map(|es| {
            let mut acc = fld.zero();
            for &e in es {
                acc = fld.add(&acc, &f.vals[e as usize]);
            }
            acc
        })
        .collect();
    VertexFunction {
        field: fld.clone(),
        vals,
    }
}

/// (A f)(e) = sum of f over the ascent continuations of e
pub fn a_pull<C: Coeffs>(model: &ToyModel, f: &EdgeFunction<C>) -> EdgeFunction<C> {
    let fld = &f.field;
    let vals = model
        .a_next
        .iter()
        .map(|fs| {
            let mut acc = fld.zero();
            for &g in fs {
                acc = fld.add(&acc, &f.vals[g as usize]);
            }
            acc
        })
        .collect();
    EdgeFunction {
        field: fld.clone(),
        vals,
    }
}

/// transpose of a_pull: (A' f)(g) = sum of f over edges e with g in A(e)
pub fn a_push<C: Coeffs>(model: &ToyModel, f: &EdgeFunction<C>) -> EdgeFunction<C> {
    let fld = &f.field;
    let mut vals = vec![fld.zero(); model.num_edges()];
    for (e, fs) in model.a_next.iter().enumerate() {
        for &g in fs {
            vals[g as usize] = fld.add(&vals[g as usize], &f.vals[e]);
        }
    }
    EdgeFunction {
        field: fld.clone(),
        vals,
    }
}

#[derive(Clone, Debug)]
pub struct PsiMatrix<C: Coeffs> {
    pub field: C,
    pub num_vertices: usize,
    pub num_edges: usize,
    /// block count n: pl_*, then pr_* A^j for j = 0..n-2
    pub blocks: usize,
    /// row block*V + v
    pub mat: SpMat<C>,
    pub kept: Vec<bool>,
}

impl<C: Coeffs> PsiMatrix<C> {
    pub fn kept_matrix(&self) -> SpMat<C> {
        let mut m = SpMat::new(self.num_edges);
        for (i, row) in self.mat.rows.iter().enumerate() {
            if self.kept[i] {
                m.rows.push(row.clone());
                m.nrows += 1;
            }
        }
        m
    }

    pub fn kept_rows(&self) -> usize {
        self.kept.iter().filter(|&&k| k).count()
    }
}

pub fn psi_matrix<C: CoeffChar>(model: &ToyModel, coeff: &C) -> Result<PsiMatrix<C>> {
    check_coeff(coeff, model.n, model.p)?;
    let n = model.n;
    if n < 2 {
        return Err(BuildingError::ParamRange(
            "psi needs rank at least 2".into(),
        ));
    }
    let nv = model.num_vertices();
    let ne = model.num_edges();
    let mut mat = SpMat::new(ne);
    let mut kept = Vec::with_capacity(n * nv);
    for v in 0..nv {
        let row: SparseVec<C::El> = model.out_edges[v]
            .iter()
            .map(|&e| (e as usize, coeff.one()))
            .collect();
        mat.push_row(coeff, row);
        kept.push(model.t_row_complete[v]);
    }
    for j in 0..n - 1 {
        for v in 0..nv {
            // counts of depth-j ascent paths from the pr-fan of v
            let mut cur: Vec<(u32, u64)> =
                model.in_edges[v].iter().map(|&e| (e, 1)).collect();
            for _ in 0..j {
                let mut next = std::collections::HashMap::new();
                for &(e, c) in &cur {
                    for &f in &model.a_next[e as usize] {
                        *next.entry(f).or_insert(0u64) += c;
                    }
                }
                cur = next.into_iter().collect();
            }
            let row: SparseVec<C::El> = cur
                .into_iter()
                .map(|(e, c)| (e as usize, coeff.from_int(c as i64)))
                .collect();
            mat.push_row(coeff, row);
            kept.push(
                model.pr_row_complete[v]
                    && model.in_edges[v]
                        .iter()
                        .all(|&e| model.a_chain_complete(e as usize, j)),
            );
        }
    }
    Ok(PsiMatrix {
        field: coeff.clone(),
        num_vertices: nv,
        num_edges: ne,
        blocks: n,
        mat,
        kept,
    })
}

#[derive(Clone, Debug)]
pub struct ChowKernel<C: Coeffs> {
    pub rank: usize,
    pub dim: usize,
    pub kept_rows: usize,
    /// canonical reduced basis of ker psi on the kept rows
    pub basis: Vec<SparseVec<C::El>>,
}

pub fn chow_kernel_matrix<C: CoeffChar>(model: &ToyModel, coeff: &C) -> Result<ChowKernel<C>> {
    let psi = psi_matrix(model, coeff)?;
    let kept = psi.kept_matrix();
    let mut ech = SparseRref::new(psi.num_edges);
    ech.insert_all(coeff, &kept);
    Ok(ChowKernel {
        rank: ech.rank(),
        dim: ech.kernel_dim(),
        kept_rows: kept.nrows,
        basis: ech.kernel_basis(coeff),
    })
}

#[derive(Clone, Debug)]
pub struct DivisorSolution<C: Coeffs> {
    pub levels: usize,
    pub num_edges: usize,
    /// column of u_i(e) is (levels - i) * num_edges + e: deeper levels come
    /// first so their coupled coordinates take the pivots
    pub u1_offset: usize,
    pub system: SpMat<C>,
    pub rank: usize,
    pub dim: usize,
    /// canonical basis of the full solution space
    pub basis: Vec<SparseVec<C::El>>,
    /// the recorded projections (u_1, ..., u_{n-1}) -> u_1, zero ones dropped
    pub u1_basis: Vec<SparseVec<C::El>>,
}

pub fn chow_kernel_divisor<C: CoeffChar>(
    model: &ToyModel,
    coeff: &C,
) -> Result<DivisorSolution<C>> {
    check_coeff(coeff, model.n, model.p)?;
    let n = model.n;
    if n < 2 {
        return Err(BuildingError::ParamRange(
            "divisor system needs rank at least 2".into(),
        ));
    }
    let nv = model.num_vertices();
    let ne = model.num_edges();
    let levels = n - 1;
    let ncols = levels * ne;
    let col = |i: usize, e: usize| (levels - i) * ne + e;
    let mut sys = SpMat::new(ncols);

    // level one vanishes on each full pl-fan
    for v in 0..nv {
        if !model.t_row_complete[v] {
            continue;
        }
        let row: SparseVec<C::El> = model.out_edges[v]
            .iter()
            .map(|&e| (col(1, e as usize), coeff.one()))
            .collect();
        sys.push_row(coeff, row);
    }
    // u_i continues u_{i-1} up the ascent fan, scaled by p^(i+1-n)
    for i in 2..=levels {
        let scale = coeff.p_pow(model.p, i as i64 + 1 - n as i64);
        for e in 0..ne {
            if !model.a_edge_complete[e] {
                continue;
            }
            let mut row: SparseVec<C::El> = vec![(col(i, e), coeff.one())];
            for &f in &model.a_next[e] {
                row.push((col(i - 1, f as usize), coeff.neg(&scale)));
            }
            sys.push_row(coeff, row);
        }
    }
    // pr-fan sums vanish at the middle levels
    for i in 2..=levels {
        for v in 0..nv {
            if !model.pr_row_complete[v] {
                continue;
            }
            let row: SparseVec<C::El> = model.in_edges[v]
                .iter()
                .map(|&e| (col(i - 1, e as usize), coeff.one()))
                .collect();
            sys.push_row(coeff, row);
        }
    }
    // terminal pr-fan sum on the top level, where every summand is coupled
    // all the way down
    for v in 0..nv {
        if !(model.pr_row_complete[v]
            && model.in_edges[v]
                .iter()
                .all(|&e| model.a_chain_complete(e as usize, n - 2)))
        {
            continue;
        }
        let row: SparseVec<C::El> = model.in_edges[v]
            .iter()
            .map(|&e| (col(levels, e as usize), coeff.one()))
            .collect();
        sys.push_row(coeff, row);
    }

    let mut ech = SparseRref::new(ncols);
    ech.insert_all(coeff, &sys);
    let basis = ech.kernel_basis(coeff);
    let u1_offset = (levels - 1) * ne;
    let mut u1_basis = Vec::new();
    for vec in &basis {
        let proj: SparseVec<C::El> = vec
            .iter()
            .filter(|(c, _)| *c >= u1_offset)
            .map(|(c, x)| (c - u1_offset, x.clone()))
            .collect();
        if !proj.is_empty() {
            u1_basis.push(proj);
        }
    }
    Ok(DivisorSolution {
        levels,
        num_edges: ne,
        u1_offset,
        rank: ech.rank(),
        dim: ech.kernel_dim(),
        basis,
        u1_basis,
        system: sys,
    })
}

#[derive(Clone, Debug)]
pub struct AgreementReport {
    pub psi_rank: usize,
    pub psi_kept_rows: usize,
    pub matrix_dim: usize,
    pub divisor_total_dim: usize,
    pub u1_dim: usize,
    pub projections_in_kernel: bool,
    pub projections_independent: bool,
    pub subspace_equal: bool,
}

/// Certifies that the two solvers cut out the same subspace of edge
/// functions: every recorded projection lies in ker psi, the projections
/// are independent, and they are as many as dim ker psi.
pub fn solvers_agree<C: CoeffChar>(model: &ToyModel, coeff: &C) -> Result<AgreementReport> {
    let psi = psi_matrix(model, coeff)?;
    let kept = psi.kept_matrix();
    let mut ech = SparseRref::new(psi.num_edges);
    ech.insert_all(coeff, &kept);
    let matrix_dim = ech.kernel_dim();
    let psi_rank = ech.rank();

    let div = chow_kernel_divisor(model, coeff)?;
    let mut membership = true;
    for v in &div.u1_basis {
        if !kept.vanishes_on(coeff, v) {
            membership = false;
            break;
        }
    }
    let mut indep = SparseRref::new(psi.num_edges);
    let mut independent = true;
    for v in &div.u1_basis {
        if !indep.insert(coeff, v.clone()) {
            independent = false;
            break;
        }
    }
    let u1_dim = div.u1_basis.len();
    Ok(AgreementReport {
        psi_rank,
        psi_kept_rows: kept.nrows,
        matrix_dim,
        divisor_total_dim: div.dim,
        u1_dim,
        projections_in_kernel: membership,
        projections_independent: independent,
        subspace_equal: membership && independent && u1_dim == matrix_dim,
    })
}
