//! Window enumeration: all lattices L with p^r L0 <= L <= p^-r L0, their
//! colength-one containments as directed edges (pl = the larger lattice,
//! pr = the sublattice), the ascent relation A on edges, and the scaling
//! maps v -> pv where the image stays inside the window.

use std::collections::{HashMap, VecDeque};

use exactmath::lattice::WittLattice;
use exactmath::{smith_vals, FiniteField, WittRing};

use crate::{BuildingError, Result};

pub const GUARD_N: usize = 3;
pub const GUARD_P: u64 = 3;
pub const GUARD_R: u32 = 2;

/// Elementary-divisor type of a Hecke move: the diag(p^e1, ..., p^en)
/// exponents sorted descending. T^(i) = (1 x i, 0...), R^(a,b) =
/// (2 x a, 1 x b, 0...), and the global scaling S_p = (1, ..., 1) = T^(n).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Signature(Vec<u32>);

impl Signature {
    pub fn new(mut exps: Vec<u32>) -> Result<Signature> {
        if exps.is_empty() {
            return Err(BuildingError::ParamRange("empty signature".into()));
        }
        exps.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Signature(exps))
    }

    /// type (p,...,p,1,...,1) with i entries p
    pub fn t(n: usize, i: usize) -> Result<Signature> {
        if n == 0 || i > n {
            return Err(BuildingError::ParamRange(format!(
                "T^({i}) needs 0 <= i <= n = {n}"
            )));
        }
        let mut v = vec![1u32; i];
        v.extend(std::iter::repeat(0).take(n - i));
        Signature::new_allow_zero(v)
    }

    /// type (p^2 x a, p x b, 1 x rest)
    pub fn r(n: usize, a: usize, b: usize) -> Result<Signature> {
        if a + b > n {
            return Err(BuildingError::ParamRange(format!(
                "R^({a},{b}) needs a + b <= n = {n}"
            )));
        }
        let mut v = vec![2u32; a];
        v.extend(std::iter::repeat(1).take(b));
        v.extend(std::iter::repeat(0).take(n - a - b));
        Signature::new_allow_zero(v)
    }

    /// global scaling L -> pL, the type with every exponent 1
    pub fn s_p(n: usize) -> Result<Signature> {
        Signature::t(n, n)
    }

    fn new_allow_zero(exps: Vec<u32>) -> Result<Signature> {
        if exps.is_empty() {
            return Err(BuildingError::ParamRange("empty signature".into()));
        }
        Ok(Signature(exps))
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn colength(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn max_exp(&self) -> u32 {
        self.0.first().copied().unwrap_or(0)
    }

    /// ascending copy, the order elementary_divisors_in reports
    pub fn sorted_asc(&self) -> Vec<u32> {
        let mut v = self.0.clone();
        v.sort_unstable();
        v
    }
}

pub(crate) fn lat_key(l: &WittLattice) -> Vec<(u128, u128)> {
    l.shifted_rows()
        .iter()
        .flat_map(|row| row.iter().map(|e| (e.a0, e.a1)))
        .collect()
}

/// (q^n - 1)/(q - 1) with q = p^2: lines of F_q^n, also its hyperplanes
pub(crate) fn projective_count(p: u64, n: usize) -> u64 {
    let q = (p * p) as u128;
    let num = q.pow(n as u32) - 1;
    ((num) / (q - 1)) as u64
}

#[derive(Clone)]
pub struct BuildingWindow {
    n: usize,
    p: u64,
    r: u32,
    ring: WittRing,
    field: FiniteField,
    vertices: Vec<WittLattice>,
    index: HashMap<Vec<(u128, u128)>, u32>,
    /// sorted ascending exponents of each vertex relative to L0
    exps: Vec<Vec<i32>>,
    /// (pl, pr) with pr a colength-one sublattice of pl
    edges: Vec<(u32, u32)>,
    edge_index: HashMap<(u32, u32), u32>,
    out_edges: Vec<Vec<u32>>,
    in_edges: Vec<Vec<u32>>,
    a_next: Vec<Vec<u32>>,
    sp_vertex: Vec<Option<u32>>,
    sp_edge: Vec<Option<u32>>,
    t_complete: Vec<bool>,
    up_complete: Vec<bool>,
    a_complete: Vec<bool>,
}

pub fn build_window(n: usize, p: u64, r: u32) -> Result<BuildingWindow> {
    if n > GUARD_N || p > GUARD_P || r > GUARD_R {
        return Err(BuildingError::SizeGuard);
    }
    build_window_unguarded(n, p, r)
}

pub fn build_window_unguarded(n: usize, p: u64, r: u32) -> Result<BuildingWindow> {
    if n == 0 {
        return Err(BuildingError::ParamRange("n must be positive".into()));
    }
    let ring = WittRing::new(p, 2 * r + 2)?;
    let field = FiniteField::new(p, 2)?;
    let std = WittLattice::standard(&ring, n, r)?;

    // closure under colength-one moves in both directions reaches every
    // window lattice: the intermediates of L0 >= L0 cap M <= M are squeezed
    // between p^r L0 and p^-r L0 themselves
    let mut vertices = vec![std.clone()];
    let mut seen: HashMap<Vec<(u128, u128)>, ()> = HashMap::new();
    seen.insert(lat_key(&std), ());
    let mut queue = VecDeque::new();
    queue.push_back(std);
    while let Some(l) = queue.pop_front() {
        let mut moves = l.maximal_sublattices(&field);
        moves.extend(l.colength_one_superlattices(&field));
        for m in moves {
            let k = lat_key(&m);
            if seen.contains_key(&k) {
                continue;
            }
            seen.insert(k, ());
            vertices.push(m.clone());
            queue.push_back(m);
        }
    }
    vertices.sort_by_key(lat_key);

    let mut index = HashMap::with_capacity(vertices.len());
    for (i, l) in vertices.iter().enumerate() {
        index.insert(lat_key(l), i as u32);
    }

    let exps: Vec<Vec<i32>> = vertices
        .iter()
        .map(|l| {
            let mut v: Vec<i32> = smith_vals(&ring, l.shifted_rows())
                .into_iter()
                .map(|s| s as i32 - r as i32)
                .collect();
            v.sort_unstable();
            v
        })
        .collect();

    let nv = vertices.len();
    let mut edges = Vec::new();
    let mut out_edges = vec![Vec::new(); nv];
    let mut in_edges = vec![Vec::new(); nv];
    for (v, l) in vertices.iter().enumerate() {
        let mut subs: Vec<u32> = l
            .maximal_sublattices(&field)
            .iter()
            .map(|m| index[&lat_key(m)])
            .collect();
        subs.sort_unstable();
        for w in subs {
            let ei = edges.len() as u32;
            edges.push((v as u32, w));
            out_edges[v].push(ei);
            in_edges[w as usize].push(ei);
        }
    }
    let mut edge_index = HashMap::with_capacity(edges.len());
    for (i, &e) in edges.iter().enumerate() {
        edge_index.insert(e, i as u32);
    }

    // f in A(e) for e = (L2 > L1), f = (L4 > L2) iff L4/L1 is p-torsion of
    // length two; tested through the divisor exponents of L1 <= L4 to stay
    // clear of the window floor
    let deg_a = if n >= 2 { projective_count(p, n - 1) } else { 0 };
    let mut torsion2 = vec![0u32; n];
    if n >= 2 {
        torsion2[n - 2] = 1;
        torsion2[n - 1] = 1;
    }
    let mut a_next = vec![Vec::new(); edges.len()];
    let mut a_complete = vec![false; edges.len()];
    for (ei, &(pl, pr)) in edges.iter().enumerate() {
        let l1 = &vertices[pr as usize];
        for &fi in &in_edges[pl as usize] {
            let l4 = &vertices[edges[fi as usize].0 as usize];
            if l1.elementary_divisors_in(l4)? == torsion2 {
                a_next[ei].push(fi);
            }
        }
        a_next[ei].sort_unstable();
        a_complete[ei] = a_next[ei].len() as u64 == deg_a;
    }

    let sp_vertex: Vec<Option<u32>> = vertices
        .iter()
        .map(|l| l.scale(1).ok().map(|m| index[&lat_key(&m)]))
        .collect();
    let sp_edge: Vec<Option<u32>> = edges
        .iter()
        .map(|&(pl, pr)| {
            match (sp_vertex[pl as usize], sp_vertex[pr as usize]) {
                (Some(a), Some(b)) => Some(edge_index[&(a, b)]),
                _ => None,
            }
        })
        .collect();

    let deg_t = projective_count(p, n);
    let t_complete: Vec<bool> = (0..nv)
        .map(|v| out_edges[v].len() as u64 == deg_t)
        .collect();
    let up_complete: Vec<bool> = (0..nv)
        .map(|v| in_edges[v].len() as u64 == deg_t)
        .collect();

    Ok(BuildingWindow {
        n,
        p,
        r,
        ring,
        field,
        vertices,
        index,
        exps,
        edges,
        edge_index,
        out_edges,
        in_edges,
        a_next,
        sp_vertex,
        sp_edge,
        t_complete,
        up_complete,
        a_complete,
    })
}

impl BuildingWindow {
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn r(&self) -> u32 {
        self.r
    }
    pub fn ring(&self) -> &WittRing {
        &self.ring
    }
    pub fn field(&self) -> &FiniteField {
        &self.field
    }
    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }
    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }
    pub fn vertex(&self, v: usize) -> &WittLattice {
        &self.vertices[v]
    }
    pub fn vertex_index(&self, l: &WittLattice) -> Option<u32> {
        self.index.get(&lat_key(l)).copied()
    }
    /// sorted ascending exponents of vertex v relative to the standard lattice
    pub fn vertex_exps(&self, v: usize) -> &[i32] {
        &self.exps[v]
    }
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }
    pub fn edge_index(&self, pl: u32, pr: u32) -> Option<u32> {
        self.edge_index.get(&(pl, pr)).copied()
    }
    pub fn pl(&self, e: usize) -> u32 {
        self.edges[e].0
    }
    pub fn pr(&self, e: usize) -> u32 {
        self.edges[e].1
    }
    pub fn out_edges(&self, v: usize) -> &[u32] {
        &self.out_edges[v]
    }
    pub fn in_edges(&self, v: usize) -> &[u32] {
        &self.in_edges[v]
    }
    pub fn a_next(&self, e: usize) -> &[u32] {
        &self.a_next[e]
    }
    pub fn sp_vertex(&self, v: usize) -> Option<u32> {
        self.sp_vertex[v]
    }
    pub fn sp_edge(&self, e: usize) -> Option<u32> {
        self.sp_edge[e]
    }
    /// in-window sublattice fan of v has the full building degree
    pub fn t_complete(&self, v: usize) -> bool {
        self.t_complete[v]
    }
    /// in-window superlattice fan of v has the full building degree
    pub fn up_complete(&self, v: usize) -> bool {
        self.up_complete[v]
    }
    pub fn a_complete(&self, e: usize) -> bool {
        self.a_complete[e]
    }

    /// vertices all of whose exponents lie in [-(r-d), r-d]
    pub fn is_interior(&self, v: usize, d: u32) -> bool {
        if d > self.r {
            return false;
        }
        let bound = (self.r - d) as i32;
        self.exps[v].iter().all(|&e| e.abs() <= bound)
    }

    pub fn interior(&self, d: u32) -> Vec<bool> {
        (0..self.num_vertices())
            .map(|v| self.is_interior(v, d))
            .collect()
    }

    /// all depth-long A-chains from e stay complete in the window
    pub fn a_chain_complete(&self, e: usize, depth: usize) -> bool {
        if depth == 0 {
            return true;
        }
        self.a_complete[e]
            && self.a_next[e]
                .iter()
                .all(|&f| self.a_chain_complete(f as usize, depth - 1))
    }
}

/// Number of sublattices of a fixed lattice with the given quotient type in
/// the full building: enumerated in a private window wide enough that no
/// fan truncates. Every sublattice of colength c sits under a colength c-1
/// intermediate, so level-by-level descent reaches them all.
pub fn full_degree(n: usize, p: u64, sig: &Signature) -> Result<u64> {
    if sig.len() != n {
        return Err(BuildingError::ParamRange(format!(
            "signature has {} entries, model rank is {n}",
            sig.len()
        )));
    }
    let depth = sig.colength();
    if depth == 0 {
        return Ok(1);
    }
    let rad = sig.max_exp();
    let ring = WittRing::new(p, 2 * rad + 2)?;
    let field = FiniteField::new(p, 2)?;
    let std = WittLattice::standard(&ring, n, rad)?;
    let mut level: HashMap<Vec<(u128, u128)>, WittLattice> = HashMap::new();
    level.insert(lat_key(&std), std.clone());
    for _ in 0..depth {
        let mut next = HashMap::new();
        for l in level.values() {
            for m in l.maximal_sublattices(&field) {
                next.entry(lat_key(&m)).or_insert(m);
            }
        }
        level = next;
    }
    let want = sig.sorted_asc();
    let mut count = 0u64;
    for m in level.values() {
        if m.elementary_divisors_in(&std)? == want {
            count += 1;
        }
    }
    Ok(count)
}
