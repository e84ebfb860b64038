use exactmath::{kernel, solve, FiniteField, Fq, FqMat, Subspace};

use crate::{DieudonneError, Result};

/// map x -> mat . frob^twist(x); the twist is applied to coordinates first,
/// so the matrix columns are the images of the standard basis vectors
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Semilinear {
    pub mat: FqMat,
    pub twist: u32,
}

pub fn frob_pow_vec(f: &FiniteField, v: &[Fq], k: u32) -> Vec<Fq> {
    let k = k % f.m();
    v.iter()
        .map(|&x| {
            let mut y = x;
            for _ in 0..k {
                y = f.frobenius(y);
            }
            y
        })
        .collect()
}

pub fn frob_pow_mat(f: &FiniteField, m: &FqMat, k: u32) -> FqMat {
    let k = k % f.m();
    let mut out = m.clone();
    for _ in 0..k {
        out = out.frobenius(f);
    }
    out
}

fn frob_pow_space(f: &FiniteField, s: &Subspace, k: u32) -> Subspace {
    let k = k % f.m();
    let mut out = s.clone();
    for _ in 0..k {
        out = out.frobenius(f);
    }
    out
}

/// {w : mat.w lies in s}
pub fn linear_preimage(f: &FiniteField, mat: &FqMat, s: &Subspace) -> Subspace {
    let perp = s.perp(f);
    if perp.dim() == 0 {
        return Subspace::full(mat.ncols);
    }
    let cond = perp.basis.mul(f, mat);
    kernel(f, &cond)
}

impl Semilinear {
    pub fn new(f: &FiniteField, mat: FqMat, twist: u32) -> Semilinear {
        Semilinear {
            mat,
            twist: twist % f.m(),
        }
    }

    pub fn apply(&self, f: &FiniteField, v: &[Fq]) -> Vec<Fq> {
        self.mat.apply(f, &frob_pow_vec(f, v, self.twist))
    }

    pub fn rank(&self, f: &FiniteField) -> usize {
        self.mat.rank(f)
    }

    pub fn image(&self, f: &FiniteField) -> Subspace {
        let cols: Vec<Vec<Fq>> = (0..self.mat.ncols)
            .map(|j| (0..self.mat.nrows).map(|i| self.mat.at(i, j)).collect())
            .collect();
        Subspace::from_generators(f, self.mat.nrows, &cols)
    }

    pub fn image_of(&self, f: &FiniteField, s: &Subspace) -> Subspace {
        frob_pow_space(f, s, self.twist).apply_matrix(f, &self.mat)
    }

    pub fn preimage_of(&self, f: &FiniteField, s: &Subspace) -> Subspace {
        let lin = linear_preimage(f, &self.mat, s);
        frob_pow_space(f, &lin, f.m() - self.twist % f.m())
    }

    pub fn kernel(&self, f: &FiniteField) -> Subspace {
        self.preimage_of(f, &Subspace::zero(self.mat.nrows))
    }

    /// self after other, twists add
    pub fn compose(&self, f: &FiniteField, other: &Semilinear) -> Semilinear {
        let mat = self.mat.mul(f, &frob_pow_mat(f, &other.mat, self.twist));
        Semilinear::new(f, mat, self.twist + other.twist)
    }

    pub fn is_zero(&self) -> bool {
        self.mat.data.iter().all(|&x| x == Fq(0))
    }
}

pub fn invert_mat(f: &FiniteField, m: &FqMat) -> Result<FqMat> {
    if m.nrows != m.ncols {
        return Err(DieudonneError::Shape);
    }
    let n = m.nrows;
    let mut inv = FqMat::zero(n, n);
    for j in 0..n {
        let mut e = vec![Fq(0); n];
        e[j] = f.one();
        let col = solve(f, m, &e).map_err(|_| DieudonneError::Singular)?;
        for i in 0..n {
            inv.set(i, j, col[i]);
        }
    }
    Ok(inv)
}
