//! Abstract correspondence models: a vertex set, directed edges with the
//! two endpoint maps, and the ascent relation on edges. Models come from a
//! window (carrying honest completeness masks and scaling maps) or from a
//! JSON file (every mask full, scaling acting as the identity).

use std::collections::HashMap;

use exactmath::{Coeffs, FlField, QField};
use serde::{Deserialize, Serialize};

use crate::window::{projective_count, BuildingWindow};
use crate::{BuildingError, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct ToyModel {
    pub n: usize,
    pub p: u64,
    /// external vertex ids, position = internal index
    pub ids: Vec<u64>,
    /// (pl, pr) as internal indices; pr plays the sublattice end
    pub edges: Vec<(u32, u32)>,
    /// ascent continuations per edge
    pub a_next: Vec<Vec<u32>>,
    pub out_edges: Vec<Vec<u32>>,
    pub in_edges: Vec<Vec<u32>>,
    /// per vertex: the pl-side fan is full (no window truncation)
    pub t_row_complete: Vec<bool>,
    /// per vertex: the pr-side fan is full
    pub pr_row_complete: Vec<bool>,
    /// per edge: the A-fan is full
    pub a_edge_complete: Vec<bool>,
    /// v -> pv where defined; None on the whole field means scaling = id
    pub sp_vertex: Option<Vec<Option<u32>>>,
    pub sp_edge: Option<Vec<Option<u32>>>,
}

#[derive(Serialize, Deserialize)]
struct RawModel {
    n: usize,
    p: u64,
    vertices: Vec<u64>,
    t_edges: Vec<(u64, u64)>,
    a_pairs: Vec<(u32, u32)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Regularity {
    /// every vertex has pl-degree (p^2n - 1)/(p^2 - 1)
    pub t_regular: bool,
    /// every edge has |A(e)| = (p^(2n-2) - 1)/(p^2 - 1)
    pub a_regular: bool,
}

impl ToyModel {
    pub fn from_window(w: &BuildingWindow) -> ToyModel {
        let nv = w.num_vertices();
        let ne = w.num_edges();
        ToyModel {
            n: w.n(),
            p: w.p(),
            ids: (0..nv as u64).collect(),
            edges: w.edges().to_vec(),
            a_next: (0..ne).map(|e| w.a_next(e).to_vec()).collect(),
            out_edges: (0..nv).map(|v| w.out_edges(v).to_vec()).collect(),
            in_edges: (0..nv).map(|v| w.in_edges(v).to_vec()).collect(),
            t_row_complete: (0..nv).map(|v| w.t_complete(v)).collect(),
            pr_row_complete: (0..nv).map(|v| w.up_complete(v)).collect(),
            a_edge_complete: (0..ne).map(|e| w.a_complete(e)).collect(),
            sp_vertex: Some((0..nv).map(|v| w.sp_vertex(v)).collect()),
            sp_edge: Some((0..ne).map(|e| w.sp_edge(e)).collect()),
        }
    }

    pub fn parse_json(text: &str) -> Result<ToyModel> {
        let raw: RawModel =
            serde_json::from_str(text).map_err(|e| BuildingError::Model(e.to_string()))?;
        if raw.n == 0 {
            return Err(BuildingError::Model("n must be positive".into()));
        }
        if raw.p < 2 {
            return Err(BuildingError::Model("p must be at least 2".into()));
        }
        let mut pos: HashMap<u64, u32> = HashMap::with_capacity(raw.vertices.len());
        for (i, &id) in raw.vertices.iter().enumerate() {
            if pos.insert(id, i as u32).is_some() {
                return Err(BuildingError::Model(format!("duplicate vertex id {id}")));
            }
        }
        let nv = raw.vertices.len();
        let mut edges = Vec::with_capacity(raw.t_edges.len());
        let mut out_edges = vec![Vec::new(); nv];
        let mut in_edges = vec![Vec::new(); nv];
        for (k, &(from, to)) in raw.t_edges.iter().enumerate() {
            let pl = *pos
                .get(&from)
                .ok_or_else(|| BuildingError::Model(format!("edge endpoint {from} unknown")))?;
            let pr = *pos
                .get(&to)
                .ok_or_else(|| BuildingError::Model(format!("edge endpoint {to} unknown")))?;
            edges.push((pl, pr));
            out_edges[pl as usize].push(k as u32);
            in_edges[pr as usize].push(k as u32);
        }
        let ne = edges.len();
        let mut a_next = vec![Vec::new(); ne];
        for &(e, f) in &raw.a_pairs {
            if e as usize >= ne || f as usize >= ne {
                return Err(BuildingError::Model(format!(
                    "a_pairs entry ({e}, {f}) out of range, {ne} edges"
                )));
            }
            a_next[e as usize].push(f);
        }
        for v in a_next.iter_mut() {
            v.sort_unstable();
            v.dedup();
        }
        Ok(ToyModel {
            n: raw.n,
            p: raw.p,
            ids: raw.vertices,
            edges,
            a_next,
            out_edges,
            in_edges,
            t_row_complete: vec![true; nv],
            pr_row_complete: vec![true; nv],
            a_edge_complete: vec![true; ne],
            sp_vertex: None,
            sp_edge: None,
        })
    }

    pub fn to_json(&self) -> String {
        let raw = RawModel {
            n: self.n,
            p: self.p,
            vertices: self.ids.clone(),
            t_edges: self
                .edges
                .iter()
                .map(|&(pl, pr)| (self.ids[pl as usize], self.ids[pr as usize]))
                .collect(),
            a_pairs: self
                .a_next
                .iter()
                .enumerate()
                .flat_map(|(e, fs)| fs.iter().map(move |&f| (e as u32, f)))
                .collect(),
        };
        serde_json::to_string_pretty(&raw).expect("model serialization")
    }

    pub fn num_vertices(&self) -> usize {
        self.ids.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn pl(&self, e: usize) -> u32 {
        self.edges[e].0
    }

    pub fn pr(&self, e: usize) -> u32 {
        self.edges[e].1
    }

    /// scaling image of a vertex; identity on file-loaded models
    pub fn sp_of_vertex(&self, v: usize) -> Option<u32> {
        match &self.sp_vertex {
            Some(m) => m[v],
            None => Some(v as u32),
        }
    }

    pub fn sp_of_edge(&self, e: usize) -> Option<u32> {
        match &self.sp_edge {
            Some(m) => m[e],
            None => Some(e as u32),
        }
    }

    pub fn regularity(&self) -> Regularity {
        let deg_t = projective_count(self.p, self.n);
        let deg_a = if self.n >= 2 {
            projective_count(self.p, self.n - 1)
        } else {
            0
        };
        Regularity {
            t_regular: self.out_edges.iter().all(|o| o.len() as u64 == deg_t),
            a_regular: self.a_next.iter().all(|a| a.len() as u64 == deg_a),
        }
    }

    /// all depth-long A-chains from e are complete
    pub fn a_chain_complete(&self, e: usize, depth: usize) -> bool {
        if depth == 0 {
            return true;
        }
        self.a_edge_complete[e]
            && self.a_next[e]
                .iter()
                .all(|&f| self.a_chain_complete(f as usize, depth - 1))
    }
}

/// characteristic access for coefficient legality checks
pub trait CoeffChar: Coeffs {
    fn characteristic(&self) -> u64;
}

impl CoeffChar for QField {
    fn characteristic(&self) -> u64 {
        0
    }
}

impl CoeffChar for FlField {
    fn characteristic(&self) -> u64 {
        self.l
    }
}

fn is_prime(m: u64) -> bool {
    if m < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// p^(2n-2) - 1; the primes dividing p or this number are inadmissible
fn forbidden_order(n: usize, p: u64) -> u128 {
    (p as u128).pow(2 * n as u32 - 2) - 1
}

pub(crate) fn check_coeff<C: CoeffChar>(coeff: &C, n: usize, p: u64) -> Result<()> {
    let l = coeff.characteristic();
    if l == 0 {
        return Ok(());
    }
    if !is_prime(l) || l == p || forbidden_order(n, p) % l as u128 == 0 {
        return Err(BuildingError::BadCoefficient { l, n, p });
    }
    Ok(())
}

/// F_l with the admissibility constraint for rank-n models at p
pub fn fl_field(n: usize, p: u64, l: u64) -> Result<FlField> {
    if n == 0 {
        return Err(BuildingError::ParamRange("n must be positive".into()));
    }
    if l < 2 {
        return Err(BuildingError::BadCoefficient { l, n, p });
    }
    let f = FlField::new(l);
    check_coeff(&f, n, p)?;
    Ok(f)
}

#[derive(Clone, Debug)]
pub struct EdgeFunction<C: Coeffs> {
    pub field: C,
    pub vals: Vec<C::El>,
}

#[derive(Clone, Debug)]
pub struct VertexFunction<C: Coeffs> {
    pub field: C,
    pub vals: Vec<C::El>,
}

impl<C: CoeffChar> EdgeFunction<C> {
    pub fn zero(model: &ToyModel, field: &C) -> Result<EdgeFunction<C>> {
        check_coeff(field, model.n, model.p)?;
        Ok(EdgeFunction {
            field: field.clone(),
            vals: vec![field.zero(); model.num_edges()],
        })
    }

    pub fn constant(model: &ToyModel, field: &C, c: C::El) -> Result<EdgeFunction<C>> {
        check_coeff(field, model.n, model.p)?;
        Ok(EdgeFunction {
            field: field.clone(),
            vals: vec![c; model.num_edges()],
        })
    }
}

impl<C: CoeffChar> VertexFunction<C> {
    pub fn zero(model: &ToyModel, field: &C) -> Result<VertexFunction<C>> {
        check_coeff(field, model.n, model.p)?;
        Ok(VertexFunction {
            field: field.clone(),
            vals: vec![field.zero(); model.num_vertices()],
        })
    }

    pub fn constant(model: &ToyModel, field: &C, c: C::El) -> Result<VertexFunction<C>> {
        check_coeff(field, model.n, model.p)?;
        Ok(VertexFunction {
            field: field.clone(),
            vals: vec![c; model.num_vertices()],
        })
    }
}
