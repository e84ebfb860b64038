use exactmath::WittLattice;

use crate::isocrystal::MonomialIsocrystal;
use crate::{NewtonError, Result};

/// reading a window-arithmetic failure as the chain escaping the window
fn windowed<T>(r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        NewtonError::Math(_) => NewtonError::NonStabilizing,
        other => other,
    })
}

/// a lattice carried inside a fixed monomial ambient map
#[derive(Debug, Clone)]
pub struct SlopeZeroLattice {
    ambient: MonomialIsocrystal,
    lattice: WittLattice,
}

impl SlopeZeroLattice {
    pub fn new(ambient: MonomialIsocrystal, lattice: WittLattice) -> Result<Self> {
        if ambient.size() != lattice.rank() {
            return Err(NewtonError::Shape);
        }
        Ok(SlopeZeroLattice { ambient, lattice })
    }

    pub fn ambient(&self) -> &MonomialIsocrystal {
        &self.ambient
    }

    pub fn lattice(&self) -> &WittLattice {
        &self.lattice
    }

    pub fn f_image(&self) -> Result<WittLattice> {
        self.ambient.apply_to_lattice(&self.lattice)
    }

    /// both colengths against the image agree and are at most one
    pub fn in_lat1(&self) -> Result<bool> {
        let fh = self.f_image()?;
        let meet = self.lattice.intersection(&fh)?;
        let up = meet.colength_in(&self.lattice)?;
        let down = meet.colength_in(&fh)?;
        Ok(up == down && up <= 1)
    }

    /// runs both stabilizing chains; lattices that keep growing or keep
    /// shrinking eventually leave the working window, which is reported
    /// rather than looped on
    pub fn calculus(&self) -> Result<SlopeZeroCalculus> {
        let in_lat1 = windowed(self.in_lat1())?;
        let mut s_chain = vec![self.lattice.clone()];
        let mut fpow = self.lattice.clone();
        loop {
            fpow = windowed(self.ambient.apply_to_lattice(&fpow))?;
            let cur = s_chain.last().unwrap();
            let next = windowed(cur.sum(&fpow).map_err(NewtonError::from))?;
            if &next == cur {
                break;
            }
            s_chain.push(next);
        }
        let mut t_chain = vec![self.lattice.clone()];
        let mut fpow = self.lattice.clone();
        loop {
            fpow = windowed(self.ambient.apply_to_lattice(&fpow))?;
            let cur = t_chain.last().unwrap();
            let next = windowed(cur.intersection(&fpow).map_err(NewtonError::from))?;
            if &next == cur {
                break;
            }
            t_chain.push(next);
        }
        let s = s_chain.len() - 1;
        let t = t_chain.len() - 1;
        Ok(SlopeZeroCalculus {
            s_chain,
            t_chain,
            s,
            t,
            in_lat1,
        })
    }
}

/// the saturated sum and intersection chains of a lattice under iteration
/// of the ambient map, with their stabilization indices
#[derive(Debug, Clone)]
pub struct SlopeZeroCalculus {
    /// partial sums H + F(H) + .. + F^i(H) for i = 0..=s
    pub s_chain: Vec<WittLattice>,
    /// partial intersections for i = 0..=t
    pub t_chain: Vec<WittLattice>,
    pub s: usize,
    pub t: usize,
    pub in_lat1: bool,
}

impl SlopeZeroCalculus {
    /// i-th partial sum, constant beyond the stabilization index
    pub fn s_i(&self, i: usize) -> &WittLattice {
        &self.s_chain[i.min(self.s)]
    }

    pub fn t_i(&self, i: usize) -> &WittLattice {
        &self.t_chain[i.min(self.t)]
    }

    pub fn s_infty(&self) -> &WittLattice {
        &self.s_chain[self.s]
    }

    pub fn t_infty(&self) -> &WittLattice {
        &self.t_chain[self.t]
    }
}
