use std::collections::HashSet;
use std::sync::Arc;

use exactmath::{FiniteField, FqMat, Subspace};

use crate::semilinear::{frob_pow_mat, invert_mat, Semilinear};
use crate::{DieudonneError, Result};

/// ranks of the Hodge filtration on the two summands
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EOSignature {
    pub a1: usize,
    pub a2: usize,
}

/// reduced module with two summands swapped by F and V;
/// F is frobenius-semilinear, V is inverse-frobenius-semilinear
#[derive(Debug, Clone)]
pub struct ModPDieudonne {
    pub field: Arc<FiniteField>,
    pub n: usize,
    /// D1 -> D2
    pub f1: Semilinear,
    /// D2 -> D1
    pub f2: Semilinear,
    /// D1 -> D2
    pub v1: Semilinear,
    /// D2 -> D1
    pub v2: Semilinear,
}

impl ModPDieudonne {
    pub fn new(
        field: Arc<FiniteField>,
        n: usize,
        f1: FqMat,
        f2: FqMat,
        v1: FqMat,
        v2: FqMat,
    ) -> Result<ModPDieudonne> {
        for m in [&f1, &f2, &v1, &v2] {
            if m.nrows != n || m.ncols != n {
                return Err(DieudonneError::Shape);
            }
        }
        let vtw = field.m() - 1;
        Ok(ModPDieudonne {
            f1: Semilinear::new(&field, f1, 1),
            f2: Semilinear::new(&field, f2, 1),
            v1: Semilinear::new(&field, v1, vtw),
            v2: Semilinear::new(&field, v2, vtw),
            field,
            n,
        })
    }

    pub fn validate(&self) -> bool {
        let f = &*self.field;
        let legs = [
            self.f2.compose(f, &self.v1),
            self.f1.compose(f, &self.v2),
            self.v2.compose(f, &self.f1),
            self.v1.compose(f, &self.f2),
        ];
        legs.iter().all(|m| m.is_zero())
            && self.f1.rank(f) + self.v2.rank(f) == self.n
            && self.f2.rank(f) + self.v1.rank(f) == self.n
    }

    /// (dim V(D2), dim V(D1))
    pub fn signature(&self) -> EOSignature {
        EOSignature {
            a1: self.v2.rank(&self.field),
            a2: self.v1.rank(&self.field),
        }
    }

    /// base change by g1 on D1 and g2 on D2 (columns of g_i are the new basis)
    pub fn conjugate(&self, g1: &FqMat, g2: &FqMat) -> Result<ModPDieudonne> {
        let f = &*self.field;
        let g1i = invert_mat(f, g1)?;
        let g2i = invert_mat(f, g2)?;
        let tw = |m: &Semilinear, gi: &FqMat, g: &FqMat| {
            gi.mul(f, &m.mat).mul(f, &frob_pow_mat(f, g, m.twist))
        };
        ModPDieudonne::new(
            self.field.clone(),
            self.n,
            tw(&self.f1, &g2i, g1),
            tw(&self.f2, &g1i, g2),
            tw(&self.v1, &g2i, g1),
            tw(&self.v2, &g1i, g2),
        )
    }
}

/// F and V tables of the module attached to the label (a, b)
pub fn standard_module_over(
    field: Arc<FiniteField>,
    n: usize,
    a: usize,
    b: usize,
) -> Result<ModPDieudonne> {
    if n < 2 {
        return Err(DieudonneError::RankRange);
    }
    if a < 1 || a > n || b < 1 || b > n {
        return Err(DieudonneError::ParamRange);
    }
    let one = field.one();
    let mut f1 = FqMat::zero(n, n);
    let mut f2 = FqMat::zero(n, n);
    let mut v1 = FqMat::zero(n, n);
    let mut v2 = FqMat::zero(n, n);
    for j in 1..=n {
        // F kills e_{1,a}; the rest map to consecutive basis vectors
        if j <= a - 1 {
            f1.set(j - 1, j - 1, one);
        } else if j >= a + 1 {
            f1.set(j - 2, j - 1, one);
        }
        // F on D2 survives only at e_{2,b}
        if j == b {
            f2.set(0, j - 1, one);
        }
        // V kills e_{1,1}
        if (2..=b).contains(&j) {
            v1.set(j - 2, j - 1, one);
        } else if j >= b + 1 {
            v1.set(j - 1, j - 1, one);
        }
        // V on D2 survives only at e_{2,n}
        if j == n {
            v2.set(a - 1, j - 1, one);
        }
    }
    ModPDieudonne::new(field, n, f1, f2, v1, v2)
}

pub fn standard_module(n: usize, a: usize, b: usize) -> Result<ModPDieudonne> {
    let field = Arc::new(FiniteField::new(2, 2)?);
    standard_module_over(field, n, a, b)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GradedSubspace {
    pub s1: Subspace,
    pub s2: Subspace,
}

impl GradedSubspace {
    pub fn dims(&self) -> (usize, usize) {
        (self.s1.dim(), self.s2.dim())
    }
}

/// smallest set of graded subspaces containing 0, D1, D2 and closed under
/// the image of F and the preimage of V
pub fn canonical_filtration(m: &ModPDieudonne) -> Vec<GradedSubspace> {
    let f = &*m.field;
    let n = m.n;
    let seed = [
        GradedSubspace {
            s1: Subspace::zero(n),
            s2: Subspace::zero(n),
        },
        GradedSubspace {
            s1: Subspace::full(n),
            s2: Subspace::zero(n),
        },
        GradedSubspace {
            s1: Subspace::zero(n),
            s2: Subspace::full(n),
        },
    ];
    let mut seen: HashSet<GradedSubspace> = HashSet::new();
    let mut work: Vec<GradedSubspace> = seed.to_vec();
    while let Some(x) = work.pop() {
        if !seen.insert(x.clone()) {
            continue;
        }
        assert!(seen.len() <= 1 << 12, "filtration failed to stabilize");
        work.push(GradedSubspace {
            s1: m.f2.image_of(f, &x.s2),
            s2: m.f1.image_of(f, &x.s1),
        });
        work.push(GradedSubspace {
            s1: m.v1.preimage_of(f, &x.s2),
            s2: m.v2.preimage_of(f, &x.s1),
        });
    }
    let mut flag: Vec<GradedSubspace> = seen.into_iter().collect();
    flag.sort_by_key(|x| {
        let (d1, d2) = x.dims();
        let bytes: Vec<u16> = x
            .s1
            .basis
            .data
            .iter()
            .chain(x.s2.basis.data.iter())
            .map(|q| q.0)
            .collect();
        (d1 + d2, d1, d2, bytes)
    });
    flag
}

/// per member: its graded dims and the dims of its F- and V-images
pub fn filtration_invariant(m: &ModPDieudonne) -> Vec<[usize; 6]> {
    let f = &*m.field;
    let mut inv: Vec<[usize; 6]> = canonical_filtration(m)
        .iter()
        .map(|x| {
            [
                x.s1.dim(),
                x.s2.dim(),
                m.f1.image_of(f, &x.s1).dim(),
                m.f2.image_of(f, &x.s2).dim(),
                m.v1.image_of(f, &x.s1).dim(),
                m.v2.image_of(f, &x.s2).dim(),
            ]
        })
        .collect();
    inv.sort_unstable();
    inv
}

/// match the filtration invariant against the standard family
pub fn eo_classify(m: &ModPDieudonne) -> Result<(usize, usize)> {
    let inv = filtration_invariant(m);
    let mut hit = None;
    for a in 1..=m.n {
        for b in 1..=m.n {
            let std = standard_module_over(m.field.clone(), m.n, a, b)?;
            if filtration_invariant(&std) == inv {
                if hit.is_some() {
                    return Err(DieudonneError::Unclassifiable);
                }
                hit = Some((a, b));
            }
        }
    }
    hit.ok_or(DieudonneError::Unclassifiable)
}

fn column_supports(m: &FqMat) -> Vec<u32> {
    (0..m.ncols)
        .map(|j| {
            let mut mask = 0u32;
            for i in 0..m.nrows {
                if m.at(i, j) != exactmath::Fq(0) {
                    mask |= 1 << i;
                }
            }
            mask
        })
        .collect()
}

/// search for a basis-subset pair (E1 of dim i, E2 of dim i-1) swapped into
/// itself by F and V; complete on standard modules, a semi-decision in general
pub fn supersingular_chain_exists(m: &ModPDieudonne, i: usize) -> bool {
    let n = m.n;
    if i < 1 || i > n || n > 16 {
        return false;
    }
    let sf1 = column_supports(&m.f1.mat);
    let sf2 = column_supports(&m.f2.mat);
    let sv1 = column_supports(&m.v1.mat);
    let sv2 = column_supports(&m.v2.mat);
    let inside = |supports: &[Vec<u32>; 2], src: u32, dst: u32| -> bool {
        (0..n).all(|j| {
            src & (1 << j) == 0 || (supports[0][j] | supports[1][j]) & !dst == 0
        })
    };
    let d1maps = [sf1, sv1];
    let d2maps = [sf2, sv2];
    for s1 in 0u32..(1 << n) {
        if s1.count_ones() as usize != i {
            continue;
        }
        for s2 in 0u32..(1 << n) {
            if s2.count_ones() as usize != i - 1 {
                continue;
            }
            if inside(&d1maps, s1, s2) && inside(&d2maps, s2, s1) {
                return true;
            }
        }
    }
    false
}
