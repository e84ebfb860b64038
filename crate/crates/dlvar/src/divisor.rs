//! Rational divisors on the rank-one locus: line and hyperplane multiples
//! with exact rational coefficients, and the two equivalent principality
//! criteria relating the two kinds of coefficient through incidence sums.

use std::collections::BTreeMap;

use exactmath::{projective_reps_n, rat_p_pow, FiniteField, Fq, Rat};
use num_traits::Zero;

use crate::{DlError, Result};

/// Σ line_j * normal_j = 0, the incidence pairing over the quadratic field.
pub fn line_in_hyperplane(f: &FiniteField, line: &[Fq], normal: &[Fq]) -> bool {
    let mut acc = f.zero();
    for (&a, &b) in line.iter().zip(normal) {
        acc = f.add(acc, f.mul(a, b));
    }
    acc == f.zero()
}

/// Finitely supported formal sum of line classes (a) and hyperplane classes
/// (b) on the rank-i locus of an n-space, both indexed by canonical
/// projective representatives over F_{p^2} (first nonzero coordinate one).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalDivisor {
    n: usize,
    i: usize,
    p: u64,
    a: BTreeMap<Vec<u16>, Rat>,
    b: BTreeMap<Vec<u16>, Rat>,
}

impl RationalDivisor {
    pub fn new(n: usize, i: usize, p: u64) -> Result<RationalDivisor> {
        if n == 0 || i == 0 || i > n || p < 2 {
            return Err(DlError::ParamRange);
        }
        Ok(RationalDivisor {
            n,
            i,
            p,
            a: BTreeMap::new(),
            b: BTreeMap::new(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn i(&self) -> usize {
        self.i
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn field(&self) -> Result<FiniteField> {
        Ok(FiniteField::new(self.p, 2)?)
    }

    fn normalize(&self, f: &FiniteField, v: &[Fq]) -> Result<Vec<u16>> {
        if v.len() != self.n {
            return Err(DlError::BadVector);
        }
        let lead = v
            .iter()
            .position(|&c| c != f.zero())
            .ok_or(DlError::BadVector)?;
        let scale = f.inv(v[lead])?;
        Ok(v.iter().map(|&c| f.mul(c, scale).0).collect())
    }

    pub fn add_line(&mut self, f: &FiniteField, v: &[Fq], coeff: Rat) -> Result<()> {
        let key = self.normalize(f, v)?;
        bump(&mut self.a, key, coeff);
        Ok(())
    }

    pub fn add_hyperplane(&mut self, f: &FiniteField, normal: &[Fq], coeff: Rat) -> Result<()> {
        let key = self.normalize(f, normal)?;
        bump(&mut self.b, key, coeff);
        Ok(())
    }

    pub fn a_coeff(&self, key: &[u16]) -> Rat {
        self.a.get(key).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn b_coeff(&self, key: &[u16]) -> Rat {
        self.b.get(key).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn a_support(&self) -> impl Iterator<Item = (&Vec<u16>, &Rat)> {
        self.a.iter()
    }

    pub fn b_support(&self) -> impl Iterator<Item = (&Vec<u16>, &Rat)> {
        self.b.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_empty() && self.b.is_empty()
    }

    pub fn scaled(&self, c: &Rat) -> RationalDivisor {
        let mut out = self.clone();
        if c.is_zero() {
            out.a.clear();
            out.b.clear();
            return out;
        }
        for v in out.a.values_mut() {
            *v *= c;
        }
        for v in out.b.values_mut() {
            *v *= c;
        }
        out
    }

    pub fn plus(&self, other: &RationalDivisor) -> Result<RationalDivisor> {
        if (self.n, self.i, self.p) != (other.n, other.i, other.p) {
            return Err(DlError::ContextMismatch);
        }
        let mut out = self.clone();
        for (k, v) in &other.a {
            bump(&mut out.a, k.clone(), v.clone());
        }
        for (k, v) in &other.b {
            bump(&mut out.b, k.clone(), v.clone());
        }
        Ok(out)
    }

    /// Text form, one entry per line:
    ///   context <n> <i> <p>
    ///   A <c0,...,c_{n-1}> <rational>
    ///   B <c0,...,c_{n-1}> <rational>
    /// Vector entries are element indices in F_{p^2}, i.e. c0 + c1*p for
    /// the element c0 + c1*x.  Blank lines and lines starting with # are
    /// skipped.
    pub fn parse(text: &str) -> Result<RationalDivisor> {
        let mut div: Option<(RationalDivisor, FiniteField)> = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut words = line.split_whitespace();
            let tag = words.next().unwrap();
            let bad = |msg: &str| DlError::Parse(format!("line {}: {msg}", lineno + 1));
            match tag {
                "context" => {
                    if div.is_some() {
                        return Err(bad("duplicate context line"));
                    }
                    let mut next_num = |name: &str| -> Result<u64> {
                        words
                            .next()
                            .and_then(|w| w.parse().ok())
                            .ok_or_else(|| bad(&format!("expected {name}")))
                    };
                    let n = next_num("n")? as usize;
                    let i = next_num("i")? as usize;
                    let p = next_num("p")?;
                    let d = RationalDivisor::new(n, i, p)?;
                    let f = d.field()?;
                    div = Some((d, f));
                }
                "A" | "B" => {
                    let (d, f) = div
                        .as_mut()
                        .ok_or_else(|| bad("entry before context line"))?;
                    let vec_word = words.next().ok_or_else(|| bad("expected vector"))?;
                    let coeff_word = words.next().ok_or_else(|| bad("expected coefficient"))?;
                    let mut v = Vec::new();
                    for piece in vec_word.split(',') {
                        let idx: u16 = piece
                            .parse()
                            .map_err(|_| bad("bad vector entry"))?;
                        if idx as usize >= f.order() {
                            return Err(bad("vector entry exceeds field order"));
                        }
                        v.push(Fq(idx));
                    }
                    let coeff: Rat = coeff_word
                        .parse()
                        .map_err(|_| bad("bad rational coefficient"))?;
                    if tag == "A" {
                        d.add_line(f, &v, coeff)?;
                    } else {
                        d.add_hyperplane(f, &v, coeff)?;
                    }
                }
                other => {
                    return Err(bad(&format!("unknown tag {other:?}")));
                }
            }
        }
        div.map(|(d, _)| d)
            .ok_or_else(|| DlError::Parse("missing context line".into()))
    }
}

fn bump(map: &mut BTreeMap<Vec<u16>, Rat>, key: Vec<u16>, coeff: Rat) {
    if coeff.is_zero() {
        return;
    }
    let entry = map.entry(key);
    match entry {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(coeff);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += coeff;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

fn as_fq(key: &[u16]) -> Vec<Fq> {
    key.iter().map(|&c| Fq(c)).collect()
}

/// Line-side criterion with the default constant p^(i+1-n): the line
/// coefficients sum to zero and every hyperplane coefficient equals that
/// constant times the sum of line coefficients it contains.
pub fn is_principal(d: &RationalDivisor) -> Result<bool> {
    is_principal_with_exponent(d, d.i as i64 + 1 - d.n as i64)
}

pub fn is_principal_with_exponent(d: &RationalDivisor, e: i64) -> Result<bool> {
    if d.i + 1 > d.n {
        return Err(DlError::ParamRange);
    }
    let f = d.field()?;
    let total: Rat = d.a.values().sum();
    if !total.is_zero() {
        return Ok(false);
    }
    let factor = rat_p_pow(d.p, e);
    let lines: Vec<(Vec<Fq>, &Rat)> = d.a.iter().map(|(k, v)| (as_fq(k), v)).collect();
    for h in projective_reps_n(&f, d.n) {
        let mut s = Rat::zero();
        for (l, c) in &lines {
            if line_in_hyperplane(&f, l, &h) {
                s += *c;
            }
        }
        let key: Vec<u16> = h.iter().map(|&c| c.0).collect();
        if d.b_coeff(&key) != &factor * s {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Hyperplane-side criterion with the constant p^(3-n-i) matching the
/// line-side one under the incidence count q^(n-2) = p^(2n-4).
pub fn dual_principal(d: &RationalDivisor) -> Result<bool> {
    dual_principal_with_exponent(d, 3 - d.n as i64 - d.i as i64)
}

pub fn dual_principal_with_exponent(d: &RationalDivisor, e: i64) -> Result<bool> {
    if d.i + 1 > d.n {
        return Err(DlError::ParamRange);
    }
    let f = d.field()?;
    let total: Rat = d.b.values().sum();
    if !total.is_zero() {
        return Ok(false);
    }
    let factor = rat_p_pow(d.p, e);
    let hypers: Vec<(Vec<Fq>, &Rat)> = d.b.iter().map(|(k, v)| (as_fq(k), v)).collect();
    for l in projective_reps_n(&f, d.n) {
        let mut s = Rat::zero();
        for (h, c) in &hypers {
            if line_in_hyperplane(&f, &l, h) {
                s += *c;
            }
        }
        let key: Vec<u16> = l.iter().map(|&c| c.0).collect();
        if d.a_coeff(&key) != &factor * s {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The two criteria, with their matched constants, agree on this divisor.
pub fn principal_form_equivalence(d: &RationalDivisor) -> Result<bool> {
    Ok(is_principal(d)? == dual_principal(d)?)
}
