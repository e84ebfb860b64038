//! Small finite fields F_{p^m} with table-backed arithmetic.
//!
//! Elements are indices into a fixed enumeration: the element with
//! polynomial coordinates (c_0, ..., c_{m-1}) in the generator t has index
//! sum c_i p^i. Index 0 is zero, index 1 is one, index p is t itself.

use crate::error::{MathError, Result};

/// Element of a `FiniteField`, valid only together with the field it came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fq(pub u16);

pub const FQ_ZERO: Fq = Fq(0);
pub const FQ_ONE: Fq = Fq(1);

#[derive(Clone)]
pub struct FiniteField {
    p: u64,
    m: u32,
    q: usize,
    /// monic modulus, little-endian, length m+1, leading coefficient 1
    modulus: Vec<u64>,
    add_t: Vec<u16>,
    mul_t: Vec<u16>,
    inv_t: Vec<u16>,
    frob_t: Vec<u16>,
    neg_t: Vec<u16>,
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m && self.modulus == other.modulus
    }
}
impl Eq for FiniteField {}

impl std::fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "F_{}^{}", self.p, self.m)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Fixed moduli so canonical element indices are stable across runs.
fn modulus_table(p: u64, m: u32) -> Option<Vec<u64>> {
    let v: &[u64] = match (p, m) {
        (2, 2) => &[1, 1, 1],
        (3, 2) => &[1, 0, 1],
        (5, 2) => &[2, 0, 1],
        (7, 2) => &[1, 0, 1],
        (2, 4) => &[1, 1, 0, 0, 1],
        (3, 4) => &[2, 1, 0, 0, 1],
        (5, 4) => &[2, 0, 0, 0, 1],
        (7, 4) => &[1, 1, 1, 1, 1],
        _ => return None,
    };
    Some(v.to_vec())
}

fn poly_mul_mod(a: &[u64], b: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    let m = modulus.len() - 1;
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai * bj) % p;
        }
    }
    // reduce: x^m = -(modulus minus leading term)
    for d in (m..prod.len()).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        prod[d] = 0;
        for k in 0..m {
            let sub = (c * modulus[k]) % p;
            prod[d - m + k] = (prod[d - m + k] + p - sub) % p;
        }
    }
    prod.truncate(m);
    prod
}

fn poly_rem(num: &[u64], den: &[u64], p: u64) -> Vec<u64> {
    // den monic
    let mut r: Vec<u64> = num.to_vec();
    let dd = den.len() - 1;
    while r.len() > dd {
        let lead = *r.last().unwrap();
        let deg = r.len() - 1;
        if lead != 0 {
            for k in 0..den.len() {
                let sub = (lead * den[k]) % p;
                r[deg - dd + k] = (r[deg - dd + k] + p - sub) % p;
            }
        }
        r.pop();
    }
    while r.len() > 1 && *r.last().unwrap() == 0 {
        r.pop();
    }
    r
}

fn check_irreducible(modulus: &[u64], p: u64) -> Result<()> {
    let m = modulus.len() - 1;
    let eval = |x: u64| -> u64 {
        let mut acc = 0u64;
        for &c in modulus.iter().rev() {
            acc = (acc * x + c) % p;
        }
        acc
    };
    for x in 0..p {
        if eval(x) == 0 {
            return Err(MathError::ReducibleModulus {
                p,
                reason: format!("root at {x}"),
            });
        }
    }
    if m == 4 {
        // degree-2 factors; linear ones are already excluded by the root scan
        for b in 0..p {
            for c in 0..p {
                let den = [c, b, 1];
                let r = poly_rem(modulus, &den, p);
                if r.iter().all(|&x| x == 0) {
                    return Err(MathError::ReducibleModulus {
                        p,
                        reason: format!("quadratic factor x^2+{b}x+{c}"),
                    });
                }
            }
        }
    }
    Ok(())
}

impl FiniteField {
    pub fn new(p: u64, m: u32) -> Result<FiniteField> {
        if !is_prime(p) {
            return Err(MathError::NotPrime(p));
        }
        if m != 2 && m != 4 {
            return Err(MathError::UnsupportedDegree(m));
        }
        let modulus = modulus_table(p, m).ok_or(MathError::NoModulus { p, m })?;
        check_irreducible(&modulus, p)?;
        let q = (p as usize).pow(m);
        debug_assert!(q <= u16::MAX as usize);

        let decode = |idx: usize| -> Vec<u64> {
            let mut digits = vec![0u64; m as usize];
            let mut r = idx as u64;
            for d in digits.iter_mut() {
                *d = r % p;
                r /= p;
            }
            digits
        };
        let encode = |digits: &[u64]| -> u16 {
            let mut acc = 0u64;
            for &d in digits.iter().rev() {
                acc = acc * p + d;
            }
            acc as u16
        };

        let mut add_t = vec![0u16; q * q];
        let mut mul_t = vec![0u16; q * q];
        let mut neg_t = vec![0u16; q];
        for a in 0..q {
            let da = decode(a);
            let neg: Vec<u64> = da.iter().map(|&x| (p - x) % p).collect();
            neg_t[a] = encode(&neg);
            for b in a..q {
                let db = decode(b);
                let sum: Vec<u64> = da.iter().zip(&db).map(|(&x, &y)| (x + y) % p).collect();
                let s = encode(&sum);
                add_t[a * q + b] = s;
                add_t[b * q + a] = s;
                let prod = poly_mul_mod(&da, &db, &modulus, p);
                let pr = encode(&prod);
                mul_t[a * q + b] = pr;
                mul_t[b * q + a] = pr;
            }
        }

        let mut f = FiniteField {
            p,
            m,
            q,
            modulus,
            add_t,
            mul_t,
            inv_t: vec![0; q],
            frob_t: vec![0; q],
            neg_t,
        };
        for a in 1..q {
            f.inv_t[a] = f.pow(Fq(a as u16), (q - 2) as u64).0;
            f.frob_t[a] = f.pow(Fq(a as u16), p).0;
        }
        f.frob_t[0] = 0;
        Ok(f)
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn m(&self) -> u32 {
        self.m
    }
    pub fn order(&self) -> usize {
        self.q
    }
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> Fq {
        FQ_ZERO
    }
    pub fn one(&self) -> Fq {
        FQ_ONE
    }
    /// the generator t of the polynomial representation
    pub fn gen(&self) -> Fq {
        Fq(self.p as u16)
    }

    pub fn elements(&self) -> impl Iterator<Item = Fq> {
        (0..self.q as u16).map(Fq)
    }

    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        Fq(self.add_t[a.0 as usize * self.q + b.0 as usize])
    }
    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        Fq(self.mul_t[a.0 as usize * self.q + b.0 as usize])
    }
    pub fn neg(&self, a: Fq) -> Fq {
        Fq(self.neg_t[a.0 as usize])
    }
    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }
    pub fn inv(&self, a: Fq) -> Result<Fq> {
        if a.0 == 0 {
            return Err(MathError::NonUnit(0));
        }
        Ok(Fq(self.inv_t[a.0 as usize]))
    }
    pub fn div(&self, a: Fq, b: Fq) -> Result<Fq> {
        Ok(self.mul(a, self.inv(b)?))
    }
    /// x -> x^p
    pub fn frobenius(&self, a: Fq) -> Fq {
        Fq(self.frob_t[a.0 as usize])
    }
    pub fn pow(&self, a: Fq, mut e: u64) -> Fq {
        let mut base = a;
        let mut acc = FQ_ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// element from polynomial coordinates in t (little-endian, any length)
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Fq {
        let mut acc = FQ_ZERO;
        let mut tp = FQ_ONE;
        let t = self.gen();
        for &c in coeffs {
            let scalar = Fq((c % self.p) as u16);
            acc = self.add(acc, self.mul(scalar, tp));
            tp = self.mul(tp, t);
        }
        acc
    }

    pub fn coeffs(&self, a: Fq) -> Vec<u64> {
        let mut digits = vec![0u64; self.m as usize];
        let mut r = a.0 as u64;
        for d in digits.iter_mut() {
            *d = r % self.p;
            r /= self.p;
        }
        digits
    }

    pub fn from_int(&self, c: i64) -> Fq {
        let c = c.rem_euclid(self.p as i64) as u16;
        Fq(c)
    }

    /// Embedding table into an extension with the same p and m dividing sup.m.
    /// The generator goes to the smallest root of our modulus in `sup`;
    /// result[i] is the image of element index i.
    pub fn embedding_into(&self, sup: &FiniteField) -> Result<Vec<Fq>> {
        if sup.p != self.p || sup.m % self.m != 0 {
            return Err(MathError::Shape("no field embedding".into()));
        }
        if sup == self {
            return Ok((0..self.q as u16).map(Fq).collect());
        }
        let mut alpha = None;
        for cand in sup.elements() {
            let mut acc = sup.zero();
            let mut powc = sup.one();
            for &c in &self.modulus {
                acc = sup.add(acc, sup.mul(sup.from_int(c as i64), powc));
                powc = sup.mul(powc, cand);
            }
            if acc == sup.zero() {
                alpha = Some(cand);
                break;
            }
        }
        let alpha = alpha.ok_or_else(|| MathError::Shape("modulus has no root upstairs".into()))?;
        let mut table = Vec::with_capacity(self.q);
        for idx in 0..self.q {
            let digits = self.coeffs(Fq(idx as u16));
            let mut acc = sup.zero();
            let mut ap = sup.one();
            for &d in &digits {
                acc = sup.add(acc, sup.mul(sup.from_int(d as i64), ap));
                ap = sup.mul(ap, alpha);
            }
            table.push(acc);
        }
        Ok(table)
    }
}
