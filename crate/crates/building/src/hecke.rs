//! Hecke operators on window vertex functions. A row of the sparse operator
//! is stored only where the full fan of the prescribed relative position
//! fits inside the window, so every stored row carries the true building
//! degree; applying an operator with any missing row is a margin violation.

use std::collections::HashMap;

use exactmath::Coeffs;

use crate::model::VertexFunction;
use crate::window::{full_degree, lat_key, BuildingWindow, Signature};
use crate::{BuildingError, Result};

#[derive(Clone, Debug)]
pub struct HeckeOperator {
    pub sig: Signature,
    pub expected_degree: u64,
    /// rows[v] = the vertices in the prescribed relative position to v,
    /// present only when the in-window fan is complete
    pub rows: Vec<Option<Vec<u32>>>,
}

pub fn hecke_operator(w: &BuildingWindow, sig: &Signature) -> Result<HeckeOperator> {
    if sig.len() != w.n() {
        return Err(BuildingError::ParamRange(format!(
            "signature has {} entries, window rank is {}",
            sig.len(),
            w.n()
        )));
    }
    let expected = full_degree(w.n(), w.p(), sig)?;
    let depth = sig.colength();
    let uniform = sig.exps().iter().all(|&e| e == sig.exps()[0]);
    let nv = w.num_vertices();
    let mut rows: Vec<Option<Vec<u32>>> = Vec::with_capacity(nv);
    for v in 0..nv {
        if uniform {
            // diag(p^k, ..., p^k) moves to the unique scaled lattice
            let k = sig.exps()[0];
            let mut cur = Some(v as u32);
            for _ in 0..k {
                cur = cur.and_then(|x| w.sp_vertex(x as usize));
            }
            rows.push(cur.map(|x| vec![x]));
            continue;
        }
        rows.push(fan_row(w, v, sig, depth, expected)?);
    }
    Ok(HeckeOperator {
        sig: sig.clone(),
        expected_degree: expected,
        rows,
    })
}

fn fan_row(
    w: &BuildingWindow,
    v: usize,
    sig: &Signature,
    depth: u32,
    expected: u64,
) -> Result<Option<Vec<u32>>> {
    let want = sig.sorted_asc();
    let top = w.vertex(v);
    let mut level = HashMap::new();
    level.insert(lat_key(top), top.clone());
    for _ in 0..depth {
        let mut next = HashMap::new();
        for l in level.values() {
            for m in l.maximal_sublattices(w.field()) {
                next.entry(lat_key(&m)).or_insert(m);
            }
        }
        level = next;
    }
    let mut out = Vec::new();
    for m in level.values() {
        if m.elementary_divisors_in(top)? == want {
            out.push(w.vertex_index(m).expect("window closed under containment"));
        }
    }
    if out.len() as u64 != expected {
        return Ok(None);
    }
    out.sort_unstable();
    Ok(Some(out))
}

impl HeckeOperator {
    pub fn num_vertices(&self) -> usize {
        self.rows.len()
    }

    pub fn row(&self, v: usize) -> Option<&[u32]> {
        self.rows[v].as_deref()
    }

    pub fn complete_rows(&self) -> usize {
        self.rows.iter().filter(|r| r.is_some()).count()
    }

    /// total application; errors unless every fan fits the window
    pub fn apply<C: Coeffs>(&self, f: &VertexFunction<C>) -> Result<VertexFunction<C>> {
        if f.vals.len() != self.rows.len() {
            return Err(BuildingError::ParamRange(
                "function length does not match operator".into(),
            ));
        }
        let fld = &f.field;
        let mut vals = Vec::with_capacity(self.rows.len());
        for (v, row) in self.rows.iter().enumerate() {
            let Some(targets) = row else {
                return Err(BuildingError::MarginViolation(format!(
                    "fan of vertex {v} truncated; restrict to a deeper interior"
                )));
            };
            let mut acc = fld.zero();
            for &t in targets {
                acc = fld.add(&acc, &f.vals[t as usize]);
            }
            vals.push(acc);
        }
        Ok(VertexFunction {
            field: fld.clone(),
            vals,
        })
    }

    /// one step of self followed by one step of `inner`, defined where
    /// every reached fan is itself complete; entries carry multiplicities
    pub fn composed_with(&self, inner: &HeckeOperator) -> ComposedOperator {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let targets = row.as_ref()?;
                let mut acc: HashMap<u32, u64> = HashMap::new();
                for &t in targets {
                    let next = inner.rows[t as usize].as_ref()?;
                    for &u in next {
                        *acc.entry(u).or_insert(0) += 1;
                    }
                }
                let mut entries: Vec<(u32, u64)> = acc.into_iter().collect();
                entries.sort_unstable();
                Some(entries)
            })
            .collect();
        ComposedOperator { rows }
    }

    pub fn commutes_with(&self, other: &HeckeOperator) -> CommutationReport {
        let ab = self.composed_with(other);
        let ba = other.composed_with(self);
        let mut comparable = 0;
        let mut equal = true;
        for (x, y) in ab.rows.iter().zip(&ba.rows) {
            if let (Some(x), Some(y)) = (x, y) {
                comparable += 1;
                if x != y {
                    equal = false;
                }
            }
        }
        CommutationReport { comparable, equal }
    }
}

#[derive(Clone, Debug)]
pub struct ComposedOperator {
    pub rows: Vec<Option<Vec<(u32, u64)>>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CommutationReport {
    /// rows on which both composition orders are fully inside the window
    pub comparable: usize,
    pub equal: bool,
}
