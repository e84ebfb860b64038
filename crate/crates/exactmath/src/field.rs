//! Coefficient fields for kernel computations: exact rationals and prime
//! fields F_l. Field objects carry the context (the prime for F_l); element
//! types are plain data.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Rat = BigRational;

pub fn rat_int(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

/// p^k for k of either sign
pub fn rat_p_pow(p: u64, k: i64) -> Rat {
    let base = BigRational::from_integer(BigInt::from(p));
    let mut acc = BigRational::one();
    for _ in 0..k.unsigned_abs() {
        acc *= &base;
    }
    if k < 0 {
        acc.recip()
    } else {
        acc
    }
}

pub trait Coeffs: Clone + std::fmt::Debug {
    type El: Clone + PartialEq + std::fmt::Debug;
    fn zero(&self) -> Self::El;
    fn one(&self) -> Self::El;
    fn is_zero(&self, a: &Self::El) -> bool;
    fn add(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn neg(&self, a: &Self::El) -> Self::El;
    fn mul(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn inv(&self, a: &Self::El) -> Self::El;
    fn from_int(&self, n: i64) -> Self::El;
    /// p^k in the coefficient field; the F_l case requires l coprime to p
    fn p_pow(&self, p: u64, k: i64) -> Self::El;

    fn sub(&self, a: &Self::El, b: &Self::El) -> Self::El {
        self.add(a, &self.neg(b))
    }
    fn describe(&self) -> String;
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QField;

impl Coeffs for QField {
    type El = Rat;
    fn zero(&self) -> Rat {
        Rat::zero()
    }
    fn one(&self) -> Rat {
        Rat::one()
    }
    fn is_zero(&self, a: &Rat) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Rat, b: &Rat) -> Rat {
        a + b
    }
    fn neg(&self, a: &Rat) -> Rat {
        -a
    }
    fn mul(&self, a: &Rat, b: &Rat) -> Rat {
        a * b
    }
    fn inv(&self, a: &Rat) -> Rat {
        assert!(!a.is_zero());
        a.recip()
    }
    fn from_int(&self, n: i64) -> Rat {
        rat_int(n)
    }
    fn p_pow(&self, p: u64, k: i64) -> Rat {
        rat_p_pow(p, k)
    }
    fn describe(&self) -> String {
        "Q".into()
    }
}

/// F_l for a prime l, elements reduced to 0..l
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlField {
    pub l: u64,
}

impl FlField {
    pub fn new(l: u64) -> FlField {
        assert!(l >= 2);
        FlField { l }
    }
    fn pow(&self, mut b: u64, mut e: u64) -> u64 {
        let mut acc: u64 = 1;
        b %= self.l;
        while e > 0 {
            if e & 1 == 1 {
                acc = (acc as u128 * b as u128 % self.l as u128) as u64;
            }
            b = (b as u128 * b as u128 % self.l as u128) as u64;
            e >>= 1;
        }
        acc
    }
}

impl Coeffs for FlField {
    type El = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.l
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.l
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.l - a % self.l) % self.l
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        (*a as u128 * *b as u128 % self.l as u128) as u64
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a % self.l != 0);
        self.pow(*a, self.l - 2)
    }
    fn from_int(&self, n: i64) -> u64 {
        n.rem_euclid(self.l as i64) as u64
    }
    fn p_pow(&self, p: u64, k: i64) -> u64 {
        let base = self.pow(p, k.unsigned_abs());
        if k < 0 {
            self.inv(&base)
        } else {
            base
        }
    }
    fn describe(&self) -> String {
        format!("F{}", self.l)
    }
}
