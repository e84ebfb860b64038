//! Point enumeration for the three Deligne-Lusztig presentations Z, Z~, Z^
//! of the rank-i locus inside a fixed n-dimensional hermitian space.
//!
//! Points are flags (H1, H2) with dim H1 = i, dim H2 = i - 1, subject to
//! twisted containments that depend on the presentation.  Enumeration runs
//! over H2 first: every presentation pins H1 between a lower bound built
//! from Frobenius translates of H2 and the ambient space, so the fibre over
//! H2 is the set of i-dimensional overspaces of that bound.

use std::fmt;
use std::str::FromStr;

use exactmath::{FiniteField, Fq, FqMat, Subspace};

use crate::{DlError, Result};

pub const GUARD_N: usize = 4;
pub const GUARD_P: u64 = 3;
pub const GUARD_K: u32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    Z,
    Tilde,
    Hat,
}

impl Variant {
    pub fn all() -> [Variant; 3] {
        [Variant::Z, Variant::Tilde, Variant::Hat]
    }

    /// Twisted containments defining the presentation, checked on an
    /// arbitrary pair of subspaces.
    pub fn conditions_hold(self, f: &FiniteField, h1: &Subspace, h2: &Subspace) -> bool {
        match self {
            Variant::Z => {
                h1.frobenius(f).contains(f, h2) && h1.contains(f, &h2.frobenius(f))
            }
            Variant::Tilde => {
                h1.contains(f, h2) && frob_pow(f, h1, 2).contains(f, h2)
            }
            Variant::Hat => {
                h1.contains(f, h2) && h1.contains(f, &frob_pow(f, h2, 2))
            }
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, w: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variant::Z => write!(w, "z"),
            Variant::Tilde => write!(w, "ztilde"),
            Variant::Hat => write!(w, "zhat"),
        }
    }
}

impl FromStr for Variant {
    type Err = DlError;

    fn from_str(s: &str) -> Result<Variant> {
        match s.to_ascii_lowercase().as_str() {
            "z" => Ok(Variant::Z),
            "ztilde" | "tilde" => Ok(Variant::Tilde),
            "zhat" | "hat" => Ok(Variant::Hat),
            other => Err(DlError::Parse(format!("unknown variant {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DLVarietyId {
    pub n: usize,
    pub i: usize,
    pub variant: Variant,
}

impl DLVarietyId {
    pub fn new(n: usize, i: usize, variant: Variant) -> Result<DLVarietyId> {
        if n == 0 || i == 0 || i > n {
            return Err(DlError::ParamRange);
        }
        Ok(DLVarietyId { n, i, variant })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DLPoint {
    pub h1: Subspace,
    pub h2: Subspace,
}

impl DLPoint {
    /// Coordinatewise q -> q^p on both members of the flag.
    pub fn frobenius(&self, f: &FiniteField) -> DLPoint {
        DLPoint {
            h1: self.h1.frobenius(f),
            h2: self.h2.frobenius(f),
        }
    }

    pub fn satisfies(&self, f: &FiniteField, variant: Variant) -> bool {
        variant.conditions_hold(f, &self.h1, &self.h2)
    }

    /// Full membership check: ambient, ranks, and the twisted containments.
    pub fn lies_on(&self, f: &FiniteField, id: DLVarietyId) -> bool {
        self.h1.ambient == id.n
            && self.h2.ambient == id.n
            && self.h1.dim() == id.i
            && self.h2.dim() == id.i - 1
            && self.satisfies(f, id.variant)
    }
}

pub fn frob_pow(f: &FiniteField, s: &Subspace, k: u32) -> Subspace {
    let mut out = s.clone();
    for _ in 0..(k % f.m()) {
        out = out.frobenius(f);
    }
    out
}

/// Visits every d-dimensional subspace of F_q^n exactly once, in a fixed
/// order: pivot-column sets lexicographically, free entries odometer-style.
/// Emitted bases are already reduced row echelon forms.
pub fn for_each_subspace(
    f: &FiniteField,
    n: usize,
    d: usize,
    emit: &mut dyn FnMut(Subspace),
) {
    if d > n {
        return;
    }
    if d == 0 {
        emit(Subspace::zero(n));
        return;
    }
    let mut pivots: Vec<usize> = (0..d).collect();
    'combos: loop {
        emit_with_pivots(f, n, &pivots, emit);
        let mut idx = d;
        loop {
            if idx == 0 {
                break 'combos;
            }
            idx -= 1;
            if pivots[idx] < idx + n - d {
                pivots[idx] += 1;
                for j in idx + 1..d {
                    pivots[j] = pivots[j - 1] + 1;
                }
                continue 'combos;
            }
        }
    }
}

fn emit_with_pivots(
    f: &FiniteField,
    n: usize,
    pivots: &[usize],
    emit: &mut dyn FnMut(Subspace),
) {
    let d = pivots.len();
    let mut is_pivot = vec![false; n];
    for &c in pivots {
        is_pivot[c] = true;
    }
    // positions free in reduced echelon form: right of the row's pivot and
    // not above another pivot
    let mut free: Vec<(usize, usize)> = Vec::new();
    for (r, &pc) in pivots.iter().enumerate() {
        for c in pc + 1..n {
            if !is_pivot[c] {
                free.push((r, c));
            }
        }
    }
    let q = f.order() as u16;
    let mut vals = vec![0u16; free.len()];
    loop {
        let mut mat = FqMat::zero(d, n);
        for (r, &pc) in pivots.iter().enumerate() {
            mat.set(r, pc, f.one());
        }
        for (t, &(r, c)) in free.iter().enumerate() {
            mat.set(r, c, Fq(vals[t]));
        }
        emit(Subspace {
            ambient: n,
            basis: mat,
        });
        let mut t = 0;
        loop {
            if t == free.len() {
                return;
            }
            vals[t] += 1;
            if vals[t] < q {
                break;
            }
            vals[t] = 0;
            t += 1;
        }
    }
}

/// Visits every dim-dimensional subspace containing u, via subspaces of the
/// quotient: non-pivot coordinates of u's echelon basis give a section.
pub fn for_each_superspace(
    f: &FiniteField,
    u: &Subspace,
    dim: usize,
    emit: &mut dyn FnMut(Subspace),
) {
    let n = u.ambient;
    let ud = u.dim();
    if dim < ud || dim > n {
        return;
    }
    if dim == ud {
        emit(u.clone());
        return;
    }
    let mut is_pivot = vec![false; n];
    for r in 0..ud {
        if let Some(c) = (0..n).find(|&c| u.basis.at(r, c) != f.zero()) {
            is_pivot[c] = true;
        }
    }
    let nonpivot: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
    for_each_subspace(f, n - ud, dim - ud, &mut |wbar| {
        let mut gens: Vec<Vec<Fq>> = (0..ud).map(|r| u.basis.row(r).to_vec()).collect();
        for r in 0..wbar.dim() {
            let mut v = vec![f.zero(); n];
            for (c, &col) in nonpivot.iter().enumerate() {
                v[col] = wbar.basis.at(r, c);
            }
            gens.push(v);
        }
        emit(Subspace::from_generators(f, n, &gens));
    });
}

/// Lower bound on H1 imposed by the presentation, as a function of H2.
fn forced_subspace(f: &FiniteField, variant: Variant, h2: &Subspace) -> Subspace {
    let m = f.m();
    match variant {
        Variant::Z => frob_pow(f, h2, 1).sum(f, &frob_pow(f, h2, m - 1)),
        Variant::Tilde => h2.sum(f, &frob_pow(f, h2, m - 2)),
        Variant::Hat => h2.sum(f, &frob_pow(f, h2, 2)),
    }
}

/// Streams the points of the variety over f (a field of even degree over
/// its prime field, playing the role of F_{p^{2k}}).
pub fn for_each_point(
    f: &FiniteField,
    id: DLVarietyId,
    emit: &mut dyn FnMut(DLPoint),
) -> Result<()> {
    if f.m() % 2 != 0 {
        return Err(DlError::ParamRange);
    }
    for_each_subspace(f, id.n, id.i - 1, &mut |h2| {
        let u = forced_subspace(f, id.variant, &h2);
        if u.dim() > id.i {
            return;
        }
        for_each_superspace(f, &u, id.i, &mut |h1| {
            emit(DLPoint {
                h1,
                h2: h2.clone(),
            });
        });
    });
    Ok(())
}

pub fn count_points(f: &FiniteField, id: DLVarietyId) -> Result<u64> {
    let mut count = 0u64;
    for_each_point(f, id, &mut |_| count += 1)?;
    Ok(count)
}

pub fn enumerate_points_in(f: &FiniteField, id: DLVarietyId) -> Result<Vec<DLPoint>> {
    let mut out = Vec::new();
    for_each_point(f, id, &mut |pt| out.push(pt))?;
    Ok(out)
}

pub fn dl_field(p: u64, k: u32) -> Result<FiniteField> {
    Ok(FiniteField::new(p, 2 * k)?)
}

pub fn enumerate_points(id: DLVarietyId, p: u64, k: u32) -> Result<Vec<DLPoint>> {
    if id.n > GUARD_N || p > GUARD_P || k > GUARD_K {
        return Err(DlError::SizeGuard);
    }
    enumerate_points_unguarded(id, p, k)
}

pub fn enumerate_points_unguarded(id: DLVarietyId, p: u64, k: u32) -> Result<Vec<DLPoint>> {
    let f = dl_field(p, k)?;
    enumerate_points_in(&f, id)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpecialDivisor {
    /// Locus H1 inside the hyperplane with this normal vector; defined for
    /// i < n and isomorphic to the rank-i locus of the hyperplane.
    Hyperplane(Vec<Fq>),
    /// Locus H2 containing the span of this vector; defined for i > 1 and
    /// isomorphic to the rank-(i-1) locus of the quotient.
    Line(Vec<Fq>),
}

fn check_locus_vector(f: &FiniteField, n: usize, v: &[Fq]) -> Result<()> {
    if v.len() != n || v.iter().all(|&c| c == f.zero()) {
        return Err(DlError::BadVector);
    }
    // rationality over the quadratic subfield: the span must be stable
    // under the square of Frobenius
    let span = Subspace::from_generators(f, n, &[v.to_vec()]);
    let twisted: Vec<Fq> = v.iter().map(|&c| f.frobenius(f.frobenius(c))).collect();
    if !span.contains_vec(f, &twisted) {
        return Err(DlError::NotRational);
    }
    Ok(())
}

pub fn special_divisor_points(
    f: &FiniteField,
    id: DLVarietyId,
    divisor: &SpecialDivisor,
) -> Result<Vec<DLPoint>> {
    let mut out = Vec::new();
    match divisor {
        SpecialDivisor::Hyperplane(normal) => {
            if id.i >= id.n {
                return Err(DlError::RankRange);
            }
            check_locus_vector(f, id.n, normal)?;
            let hyper = exactmath::kernel(f, &FqMat::from_rows(vec![normal.clone()]));
            for_each_point(f, id, &mut |pt| {
                if hyper.contains(f, &pt.h1) {
                    out.push(pt);
                }
            })?;
        }
        SpecialDivisor::Line(span) => {
            if id.i <= 1 {
                return Err(DlError::RankRange);
            }
            check_locus_vector(f, id.n, span)?;
            for_each_point(f, id, &mut |pt| {
                if pt.h2.contains_vec(f, span) {
                    out.push(pt);
                }
            })?;
        }
    }
    Ok(out)
}
