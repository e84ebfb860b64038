//! Ekedahl-Oort strata combinatorics for the signature (1,n-1) x (n-1,1)
//! moduli: the coset set JW inside S_n x S_n, Bruhat order, the twisted
//! order behind stratum closures, and the supersingular criterion.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum WeylError {
    #[error("rank must be at least 2, got {0}")]
    RankTooSmall(usize),
    #[error("labels live in different ranks {0} and {1}")]
    RankMismatch(usize, usize),
}

/// permutation of {1..n} in one-line notation, perm[i] = image of i+1
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(pub Vec<u8>);

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm((1..=n as u8).collect())
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i - 1] as usize
    }

    /// (self * other)(i) = self(other(i))
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&i| self.0[i as usize - 1]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u8; self.n()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v as usize - 1] = (i + 1) as u8;
        }
        Perm(inv)
    }

    pub fn longest(n: usize) -> Perm {
        Perm((1..=n as u8).rev().collect())
    }

    /// inversion count
    pub fn length(&self) -> usize {
        let v = &self.0;
        let mut l = 0;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                if v[i] > v[j] {
                    l += 1;
                }
            }
        }
        l
    }

    /// rank matrix entry #{k <= i : perm(k) <= j}, 1-based i, j
    fn rank_at(&self, i: usize, j: usize) -> usize {
        self.0[..i].iter().filter(|&&v| v as usize <= j).count()
    }

    /// Bruhat order by the dominance criterion on rank matrices
    pub fn bruhat_leq(&self, other: &Perm) -> bool {
        let n = self.n();
        assert_eq!(n, other.n());
        for i in 1..n {
            for j in 1..n {
                if self.rank_at(i, j) < other.rank_at(i, j) {
                    return false;
                }
            }
        }
        true
    }
}

/// all permutations of {1..n} fixing every point outside lo..=hi
fn perms_supported_on(n: usize, lo: usize, hi: usize) -> Vec<Perm> {
    let window: Vec<u8> = (lo as u8..=hi as u8).collect();
    let mut out = Vec::new();
    let mut current = window.clone();
    permute(&mut current, 0, &mut |arr| {
        let mut v: Vec<u8> = (1..=n as u8).collect();
        for (k, &val) in arr.iter().enumerate() {
            v[lo - 1 + k] = val;
        }
        out.push(Perm(v));
    });
    let _ = window;
    out
}

fn permute(arr: &mut Vec<u8>, k: usize, f: &mut impl FnMut(&[u8])) {
    if k == arr.len() {
        f(arr);
        return;
    }
    for i in k..arr.len() {
        arr.swap(k, i);
        permute(arr, k + 1, f);
        arr.swap(k, i);
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PermPair {
    pub w1: Perm,
    pub w2: Perm,
}

impl PermPair {
    pub fn n(&self) -> usize {
        self.w1.n()
    }
    pub fn length(&self) -> usize {
        self.w1.length() + self.w2.length()
    }
    pub fn bruhat_leq(&self, other: &PermPair) -> bool {
        self.w1.bruhat_leq(&other.w1) && self.w2.bruhat_leq(&other.w2)
    }
}

/// EO stratum label: the JW coset representative with w1^{-1}(1) = a,
/// w2^{-1}(n) = b and the remaining preimages increasing
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EOLabel {
    pub n: usize,
    pub a: usize,
    pub b: usize,
}

impl EOLabel {
    pub fn new(n: usize, a: usize, b: usize) -> Result<EOLabel, WeylError> {
        if n < 2 {
            return Err(WeylError::RankTooSmall(n));
        }
        assert!((1..=n).contains(&a) && (1..=n).contains(&b));
        Ok(EOLabel { n, a, b })
    }

    /// w1 = [2, 3, ..., a, 1, a+1, ...] in value terms: position a holds 1
    pub fn w1(&self) -> Perm {
        let mut v = vec![0u8; self.n];
        for i in 1..=self.n {
            v[i - 1] = if i < self.a {
                (i + 1) as u8
            } else if i == self.a {
                1
            } else {
                i as u8
            };
        }
        Perm(v)
    }

    /// position b holds n, the rest stay sorted
    pub fn w2(&self) -> Perm {
        let mut v = vec![0u8; self.n];
        for i in 1..=self.n {
            v[i - 1] = if i < self.b {
                i as u8
            } else if i == self.b {
                self.n as u8
            } else {
                (i - 1) as u8
            };
        }
        Perm(v)
    }

    pub fn pair(&self) -> PermPair {
        PermPair {
            w1: self.w1(),
            w2: self.w2(),
        }
    }

    /// stratum dimension a - b + n - 1
    pub fn dim(&self) -> usize {
        self.a + self.n - 1 - self.b
    }

    pub fn is_mu_ordinary(&self) -> bool {
        self.a == self.n && self.b == 1
    }

    pub fn is_core(&self) -> bool {
        self.a == 1 && self.b == self.n
    }
}

pub fn enumerate_jw(n: usize) -> Result<Vec<EOLabel>, WeylError> {
    if n < 2 {
        return Err(WeylError::RankTooSmall(n));
    }
    let mut out = Vec::with_capacity(n * n);
    for a in 1..=n {
        for b in 1..=n {
            out.push(EOLabel { n, a, b });
        }
    }
    Ok(out)
}

pub fn bruhat_leq(u: &PermPair, v: &PermPair) -> bool {
    u.bruhat_leq(v)
}

/// the twist x = w0 * w0_{Psi(J)}, componentwise; Psi swaps components, so
/// Psi(J) picks S_{n-1} acting on 1..n-1 in slot one and on 2..n in slot two
fn twist_x(n: usize) -> PermPair {
    let w0 = Perm::longest(n);
    let rev_low = {
        // reverses 1..n-1, fixes n
        let mut v: Vec<u8> = (1..n as u8).rev().collect();
        v.push(n as u8);
        Perm(v)
    };
    let rev_high = {
        // fixes 1, reverses 2..n
        let mut v: Vec<u8> = vec![1];
        v.extend((2..=n as u8).rev());
        Perm(v)
    };
    PermPair {
        w1: w0.compose(&rev_low),
        w2: w0.compose(&rev_high),
    }
}

/// W_J = (perms fixing 1) x (perms fixing n)
fn enumerate_wj(n: usize) -> Vec<(Perm, Perm)> {
    let first = perms_supported_on(n, 2, n);
    let second = perms_supported_on(n, 1, n - 1);
    let mut out = Vec::with_capacity(first.len() * second.len());
    for y1 in &first {
        for y2 in &second {
            out.push((y1.clone(), y2.clone()));
        }
    }
    out
}

/// u <= v in the twisted order: some y in W_J has y u x Psi(y^{-1}) x^{-1}
/// Bruhat-below v
pub fn psi_order_leq(u: &EOLabel, v: &EOLabel) -> Result<bool, WeylError> {
    if u.n != v.n {
        return Err(WeylError::RankMismatch(u.n, v.n));
    }
    let n = u.n;
    let x = twist_x(n);
    let xinv = PermPair {
        w1: x.w1.inverse(),
        w2: x.w2.inverse(),
    };
    let up = u.pair();
    let vp = v.pair();
    for (y1, y2) in enumerate_wj(n) {
        // Psi(y^{-1}) = (y2^{-1}, y1^{-1})
        let z1 = y1
            .compose(&up.w1)
            .compose(&x.w1)
            .compose(&y2.inverse())
            .compose(&xinv.w1);
        let z2 = y2
            .compose(&up.w2)
            .compose(&x.w2)
            .compose(&y1.inverse())
            .compose(&xinv.w2);
        let z = PermPair { w1: z1, w2: z2 };
        if z.bruhat_leq(&vp) {
            return Ok(true);
        }
    }
    Ok(false)
}

pub fn closure(u: &EOLabel) -> Result<Vec<EOLabel>, WeylError> {
    let mut out = Vec::new();
    for cand in enumerate_jw(u.n)? {
        if psi_order_leq(&cand, u)? {
            out.push(cand);
        }
    }
    Ok(out)
}

/// the stratum meets the supersingular locus exactly when a <= b
pub fn is_supersingular(u: &EOLabel) -> bool {
    u.a <= u.b
}
