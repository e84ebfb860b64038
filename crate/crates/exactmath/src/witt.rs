//! W(F_{p^2})/p^s realized as (Z/p^s)[x]/(q) for the fixed quadratic q
//! lifting the F_{p^2} modulus coefficientwise.
//!
//! sigma sends x to the other root of q, so sigma^2 = id holds exactly and
//! sigma reduces to the p-power Frobenius mod p (the two roots of q mod p
//! are conjugate). Coefficients stay below 2^63 so products fit in u128.

use crate::error::{MathError, Result};
use crate::fq::{FiniteField, Fq};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WittElem {
    pub a0: u128,
    pub a1: u128,
}

#[derive(Clone)]
pub struct WittRing {
    p: u64,
    s: u32,
    ps: u128,
    /// modulus x^2 + b x + c
    b: u128,
    c: u128,
}

impl PartialEq for WittRing {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.s == other.s && self.b == other.b && self.c == other.c
    }
}
impl Eq for WittRing {}

impl std::fmt::Debug for WittRing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "W(F_{}^2)/p^{}", self.p, self.s)
    }
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

impl WittRing {
    pub fn new(p: u64, s: u32) -> Result<WittRing> {
        let field = FiniteField::new(p, 2)?;
        let modulus = field.modulus().to_vec();
        if s < 1 {
            return Err(MathError::WindowRadius { r: 0, s });
        }
        let mut ps: u128 = 1;
        for _ in 0..s {
            ps = ps.checked_mul(p as u128).ok_or(MathError::PrecisionBudget { p, s })?;
            if ps >= 1u128 << 63 {
                return Err(MathError::PrecisionBudget { p, s });
            }
        }
        Ok(WittRing {
            p,
            s,
            ps,
            b: modulus[1] as u128,
            c: modulus[0] as u128,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn precision(&self) -> u32 {
        self.s
    }
    pub fn modulus_int(&self) -> u128 {
        self.ps
    }

    pub fn zero(&self) -> WittElem {
        WittElem { a0: 0, a1: 0 }
    }
    pub fn one(&self) -> WittElem {
        WittElem { a0: 1, a1: 0 }
    }
    pub fn from_pair(&self, a0: i64, a1: i64) -> WittElem {
        let m = self.ps as i128;
        WittElem {
            a0: ((a0 as i128 % m + m) % m) as u128,
            a1: ((a1 as i128 % m + m) % m) as u128,
        }
    }

    pub fn is_zero(&self, x: WittElem) -> bool {
        x.a0 == 0 && x.a1 == 0
    }

    pub fn add(&self, x: WittElem, y: WittElem) -> WittElem {
        WittElem {
            a0: (x.a0 + y.a0) % self.ps,
            a1: (x.a1 + y.a1) % self.ps,
        }
    }
    pub fn neg(&self, x: WittElem) -> WittElem {
        WittElem {
            a0: (self.ps - x.a0) % self.ps,
            a1: (self.ps - x.a1) % self.ps,
        }
    }
    pub fn sub(&self, x: WittElem, y: WittElem) -> WittElem {
        self.add(x, self.neg(y))
    }
    pub fn mul(&self, x: WittElem, y: WittElem) -> WittElem {
        // x^2 = -b x - c
        let t2 = (x.a1 * y.a1) % self.ps;
        let a0 = ((x.a0 * y.a0) % self.ps + self.ps - (t2 * self.c) % self.ps) % self.ps;
        let cross = ((x.a0 * y.a1) % self.ps + (x.a1 * y.a0) % self.ps) % self.ps;
        let a1 = (cross + self.ps - (t2 * self.b) % self.ps) % self.ps;
        WittElem { a0, a1 }
    }

    /// ring involution lifting Frobenius: x -> -b - x
    pub fn sigma(&self, x: WittElem) -> WittElem {
        let a0 = (x.a0 + self.ps - (x.a1 * self.b) % self.ps) % self.ps;
        WittElem {
            a0,
            a1: (self.ps - x.a1) % self.ps,
        }
    }

    /// p-adic valuation, capped at s for zero
    pub fn val(&self, x: WittElem) -> u32 {
        if self.is_zero(x) {
            return self.s;
        }
        let p = self.p as u128;
        let mut v = 0;
        let (mut a0, mut a1) = (x.a0, x.a1);
        while a0 % p == 0 && a1 % p == 0 {
            a0 /= p;
            a1 /= p;
            v += 1;
        }
        v
    }

    /// p^k as a coefficient, zero once k reaches the precision
    pub fn p_pow(&self, k: u32) -> u128 {
        if k >= self.s {
            return 0;
        }
        let mut acc: u128 = 1;
        for _ in 0..k {
            acc *= self.p as u128;
        }
        acc
    }

    pub fn times_p_pow(&self, x: WittElem, k: u32) -> WittElem {
        if k >= self.s {
            return self.zero();
        }
        let f = self.p_pow(k);
        WittElem {
            a0: (x.a0 * f) % self.ps,
            a1: (x.a1 * f) % self.ps,
        }
    }

    pub fn div_p_pow(&self, x: WittElem, k: u32) -> Result<WittElem> {
        let f = self.p_pow(k);
        if k >= self.s || x.a0 % f != 0 || x.a1 % f != 0 {
            return Err(MathError::InexactDivision(k));
        }
        Ok(WittElem {
            a0: x.a0 / f,
            a1: x.a1 / f,
        })
    }

    fn int_inv(&self, a: u128) -> Result<u128> {
        let (g, x, _) = ext_gcd(a as i128, self.ps as i128);
        if g != 1 && g != -1 {
            return Err(MathError::NonUnit(self.val(WittElem { a0: a, a1: 0 })));
        }
        let m = self.ps as i128;
        Ok(((x % m + m) % m) as u128)
    }

    /// units only (valuation 0); inverse via the norm x * sigma(x)
    pub fn inv(&self, x: WittElem) -> Result<WittElem> {
        let v = self.val(x);
        if v > 0 {
            return Err(MathError::NonUnit(v));
        }
        let n = self.mul(x, self.sigma(x));
        debug_assert_eq!(n.a1, 0);
        let ninv = self.int_inv(n.a0)?;
        let s = self.sigma(x);
        Ok(WittElem {
            a0: (s.a0 * ninv) % self.ps,
            a1: (s.a1 * ninv) % self.ps,
        })
    }

    /// canonical remainder with both coordinates reduced mod p^k
    pub fn rem_p_pow(&self, x: WittElem, k: u32) -> WittElem {
        if k >= self.s {
            return x;
        }
        let f = self.p_pow(k);
        WittElem {
            a0: x.a0 % f,
            a1: x.a1 % f,
        }
    }

    pub fn scalar(&self, c: i64) -> WittElem {
        let m = self.ps as i128;
        WittElem {
            a0: ((c as i128 % m + m) % m) as u128,
            a1: 0,
        }
    }

    pub fn residue_field(&self) -> Result<FiniteField> {
        FiniteField::new(self.p, 2)
    }

    pub fn reduce_mod_p(&self, x: WittElem, field: &FiniteField) -> Fq {
        field.from_coeffs(&[(x.a0 % self.p as u128) as u64, (x.a1 % self.p as u128) as u64])
    }
}
